"""Two-spin operator algebra.

Operators are plain ``(4, 4)`` complex numpy arrays in the basis
``|00>, |01>, |10>, |11>`` with spin A as the left (most significant) label
and index 0 meaning spin "up".  Spin-1/2 operators are ``I_k = sigma_k / 2``.

Product-operator labels::

    "1"                         identity
    "Ix_A", "Iy_A", "Iz_A"      single-spin operators on A
    "Ix_B", "Iy_B", "Iz_B"      single-spin operators on B
    "2IxIz", "2IyIx", ...       2 I_a^A I_b^B
    "Ep_A", "Em_A", ...         idempotents (1 +/- 2 I_z) / 2
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_PAULI_HALF = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex) / 2,
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex) / 2,
    "z": np.array([[1, 0], [0, -1]], dtype=complex) / 2,
}
_ID2 = np.eye(2, dtype=complex)

PRODUCT_LABELS: tuple[str, ...] = (
    "1",
    "Ix_A", "Iy_A", "Iz_A",
    "Ix_B", "Iy_B", "Iz_B",
    *(f"2I{a}I{b}" for a in "xyz" for b in "xyz"),
)
IDEMPOTENT_LABELS: tuple[str, ...] = ("Ep_A", "Em_A", "Ep_B", "Em_B")

IDENTITY = np.eye(4, dtype=complex)
CNOT = np.eye(4, dtype=complex)[[0, 3, 2, 1]]
"""Controlled-NOT with control B and target A; flips A when B is down."""


@dataclass(frozen=True)
class Tolerances:
    eq_tol: float = 1e-10
    phase_tol: float = 1e-10

    def __post_init__(self):
        if not (self.eq_tol > 0 and self.phase_tol > 0):
            raise ValueError("tolerances must be strictly positive")


@lru_cache(maxsize=None)
def _basis_cached(label: str) -> np.ndarray:
    m = _build_basis(label)
    m.flags.writeable = False
    return m


def _build_basis(label: str) -> np.ndarray:
    if label == "1":
        return IDENTITY.copy()
    if label in IDEMPOTENT_LABELS:
        sign = 1 if label[1] == "p" else -1
        one = _ID2 / 2 + sign * _PAULI_HALF["z"]
        return np.kron(one, _ID2) if label.endswith("A") else np.kron(_ID2, one)
    if len(label) == 4 and label[0] == "I" and label[2] == "_":
        k, spin = label[1], label[3]
        if k in _PAULI_HALF and spin in "AB":
            s = _PAULI_HALF[k]
            return np.kron(s, _ID2) if spin == "A" else np.kron(_ID2, s)
    if len(label) == 5 and label.startswith("2I") and label[3] == "I":
        a, b = label[2], label[4]
        if a in _PAULI_HALF and b in _PAULI_HALF:
            return 2 * np.kron(_PAULI_HALF[a], _PAULI_HALF[b])
    raise ValueError(f"unknown product-operator label {label!r}")


def basis_op(label: str) -> np.ndarray:
    """Matrix of a named product operator (fresh copy, safe to mutate)."""
    return _basis_cached(label).copy()


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def dagger(x: np.ndarray) -> np.ndarray:
    return x.conj().T


def scalar_part(x: np.ndarray) -> complex:
    """Normalized trace ``tr(X) / 4`` (equal to 1 for the identity)."""
    return complex(np.trace(x)) / 4


def ga_norm(x: np.ndarray) -> float:
    """``sqrt(<X X^dagger>)``; equals 1 for any unitary and Frobenius/2 in general."""
    return float(np.sqrt(max(scalar_part(x @ dagger(x)).real, 0.0)))


def is_hermitian(x: np.ndarray, atol: float = 1e-14) -> bool:
    scale = max(1.0, float(np.abs(x).max(initial=0.0)))
    return bool(np.allclose(x, dagger(x), rtol=0.0, atol=atol * scale))


def is_unitary(x: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(np.linalg.norm(x @ dagger(x) - IDENTITY) < atol)


def phase_insensitive_distance(u1: np.ndarray, u2: np.ndarray) -> float:
    """``1 - |tr(U1 U2^dagger) / 4|^2``; zero iff the two differ by a global phase."""
    if not (is_unitary(u1, 1e-10) and is_unitary(u2, 1e-10)):
        raise ValueError("phase_insensitive_distance requires unitary inputs")
    overlap = np.trace(u1 @ dagger(u2)) / 4
    return float(1.0 - abs(overlap) ** 2)


def expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i t H)`` by eigendecomposition of the Hermitian generator ``H``."""
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h, 1e-12):
        raise ValueError("expm_hermitian requires a Hermitian generator")
    w, v = np.linalg.eigh((h + dagger(h)) / 2)
    return (v * np.exp(-1j * t * w)) @ dagger(v)


def rotor(g: np.ndarray, angle: float) -> np.ndarray:
    """Closed-form ``exp(-i angle G)`` for ``G`` with ``G^2 = P/4``, ``P`` a projector.

    Covers ``I_k``, ``2 I_a I_b`` and conditional operators such as
    ``E_+^A I_y^B``: ``exp(-i a G) = (1 - P) + P cos(a/2) - 2i G sin(a/2)``.
    """
    p = 4 * (g @ g)
    if not np.allclose(p @ p, p, atol=1e-13):
        raise ValueError("rotor requires G^2 to be a quarter-projector")
    return IDENTITY - p + p * np.cos(angle / 2) - 2j * g * np.sin(angle / 2)


def decompose(x: np.ndarray) -> dict[str, complex]:
    """Coefficients of ``X`` on the 16 product operators.

    The coefficient of basis element ``P`` is ``tr(P^dagger X) / tr(P^dagger P)``.
    """
    out = {}
    for label in PRODUCT_LABELS:
        p = _basis_cached(label)
        out[label] = complex(np.trace(dagger(p) @ x) / np.trace(dagger(p) @ p).real)
    return out


def recompose(coeffs: dict[str, complex]) -> np.ndarray:
    out = np.zeros((4, 4), dtype=complex)
    for label, c in coeffs.items():
        out += c * _basis_cached(label)
    return out
