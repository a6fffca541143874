"""Closed-form propagators and two selective-irradiation c-NOT constructions.

The transition propagator takes a dimensionless gate time (the multiplier of
``pi I_x^A E_-^B``); everything built from ``SpinSystem``/``RfPulse`` takes
physical seconds.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .hamiltonians import (
    ReducedParams,
    RfPulse,
    SpinSystem,
    drop_offres_term,
    rotating_frame_hamiltonian,
)
from .operators import (
    CNOT,
    IDENTITY,
    Tolerances,
    basis_op,
    expm_hermitian,
    ga_norm,
    rotor,
)

IX_A, IY_A, IZ_A = basis_op("Ix_A"), basis_op("Iy_A"), basis_op("Iz_A")
IZ_B = basis_op("Iz_B")
EP_B, EM_B = basis_op("Ep_B"), basis_op("Em_B")
H_TRN = math.pi * IX_A @ EM_B


@dataclass(frozen=True)
class PhaseDiag:
    phases: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        if any(abs(abs(p) - 1) > 1e-13 for p in self.phases):
            raise ValueError("conditional phases must have unit modulus")

    @classmethod
    def from_matrix(cls, d: np.ndarray) -> "PhaseDiag":
        return cls(tuple(complex(x) for x in np.diag(d)))

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(np.array(self.phases, dtype=complex))

    def aligned(self, other: "PhaseDiag") -> "PhaseDiag":
        """This diagonal with its global phase rotated onto ``other``'s."""
        a = np.array(self.phases)
        b = np.array(other.phases)
        g = np.vdot(a, b)
        return PhaseDiag(tuple(complex(x) for x in a * g / abs(g)))

    def to_json(self) -> list[list[float]]:
        return [[p.real, p.imag] for p in self.phases]


@dataclass(frozen=True)
class CnotVerdict:
    is_cnot_up_to_phases: bool
    residual: float
    extracted_phases: PhaseDiag | None = None

    def to_json(self) -> dict:
        return {
            "is_cnot_up_to_phases": self.is_cnot_up_to_phases,
            "residual": self.residual,
            "extracted_phases": (self.extracted_phases.to_json()
                                 if self.extracted_phases else None),
        }


def transition_propagator(t: float) -> np.ndarray:
    """``exp(-i t H_trn)`` with ``H_trn = pi I_x^A E_-^B`` (dimensionless ``t``)."""
    return EP_B + rotor(IX_A, math.pi * t) @ EM_B


def onres_split_propagator(sys: SpinSystem, pulse: RfPulse, t: float) -> np.ndarray:
    """``exp(-i t H0)`` on resonance as the product of three commuting factors."""
    if pulse.placement != "on_resonance_A":
        raise ValueError("onres_split_propagator needs an on-resonance pulse")
    p = ReducedParams.of(sys, pulse)
    w1t = pulse.omega1 * t
    root = math.sqrt(1 + p.c1 ** 2)
    c, s = math.cos(0.5 * w1t * root), math.sin(0.5 * w1t * root)

    def branch(sign: int, proj: np.ndarray, other: np.ndarray) -> np.ndarray:
        gen = IX_A + sign * p.c1 * IZ_A
        return other + (c * IDENTITY - 2j * gen / root * s) @ proj

    minus = branch(-1, EM_B, EP_B)
    plus = branch(+1, EP_B, EM_B)
    return minus @ plus @ rotor(IZ_B, w1t * p.c2)


def onres_eq13_form(c2: float) -> np.ndarray:
    """Factored on-resonance propagator at ``omega1 = pi J``, ``t = pi/(sqrt2 omega1)``."""
    return (rotor(IY_A, math.pi / 2) @ rotor(IX_A @ EM_B, math.pi)
            @ rotor(IZ_A @ EP_B, math.pi) @ rotor(IZ_B, math.pi * c2 / math.sqrt(2)))


def ontrn_split(sys: SpinSystem, pulse: RfPulse) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(P, Q+, Q-)`` with ``(pi/omega1) H0 = P + Q+ E_+^B + Q- E_-^B``."""
    if pulse.placement != "on_transition_A_minus":
        raise ValueError("ontrn_split needs an on-transition pulse")
    p = ReducedParams.of(sys, pulse)
    big_p = math.pi * (p.c1 + p.c2) * IZ_B
    q_plus = math.pi * (2 * p.c1 * IZ_A + IX_A)
    q_minus = math.pi * IX_A
    return big_p, q_plus, q_minus


def qplus_tilt(c1: float) -> float:
    """Angle ``theta = arctan(1 / (2 c1))`` that rotates ``Q+`` onto ``I_z^A``."""
    return math.atan2(1.0, 2 * c1)


def ontrn_phases(c1: float, c2: float) -> PhaseDiag:
    """``exp(-i pi (c1+c2) I_z^B) exp(-i pi sqrt(1+4c1^2) I_z^A E_+^B)``."""
    root = math.sqrt(1 + 4 * c1 ** 2)
    d = rotor(IZ_B, math.pi * (c1 + c2)) @ rotor(IZ_A @ EP_B, math.pi * root)
    return PhaseDiag.from_matrix(d)


def ontrn_defect_closed_form(c1: float) -> float:
    """``sin^2(pi/2 sqrt(1+4c1^2)) (1 - 2 c1 / sqrt(1+4c1^2))``."""
    root = math.sqrt(1 + 4 * c1 ** 2)
    return math.sin(math.pi / 2 * root) ** 2 * (1 - 2 * c1 / root)


def ontrn_defect_bound(c1: float) -> float:
    return 1.0 / (4 * c1 ** 2)


def ontrn_phase_factorization(sys: SpinSystem, pulse: RfPulse
                              ) -> tuple[np.ndarray, PhaseDiag, float]:
    """Approximate on-transition factorization ``exp(-i H_trn) * phases`` at ``t = pi/omega1``.

    Returns ``(U_trn, phases, defect)`` where ``defect`` is the squared
    distance ``||U - U_trn phases||^2`` between the exact dropped-term
    propagator and the factorization.
    """
    if pulse.placement != "on_transition_A_minus":
        raise ValueError("needs an on-transition pulse")
    p = ReducedParams.of(sys, pulse)
    h0 = drop_offres_term(rotating_frame_hamiltonian(sys, pulse), pulse)
    exact = expm_hermitian(h0, math.pi / pulse.omega1)
    u_trn = transition_propagator(1.0)
    phases = ontrn_phases(p.c1, p.c2)
    defect = ga_norm(exact - u_trn @ phases.matrix) ** 2
    return u_trn, phases, defect


def conjugation_defect(c1: float, c2: float = 0.0) -> float:
    """Squared distance between ``exp(-i pi H0/omega1)`` and its ``theta``-conjugate.

    The conjugation is by ``exp(-i theta I_y^A E_+^B)``, which rotates
    ``Q+ E_+^B`` onto the diagonal.  Brute-force matrix route.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sys = SpinSystem.from_reduced(c1, c2, 1.0)
    pulse = RfPulse(1.0, placement="on_transition_A_minus")
    h0 = drop_offres_term(rotating_frame_hamiltonian(sys, pulse), pulse)
    u = expm_hermitian(h0, math.pi)
    r = rotor(IY_A @ EP_B, qplus_tilt(c1))
    conj = r.conj().T @ u @ r
    return ga_norm(u - conj) ** 2


def exact_cnot_params(n: int, J: float) -> tuple[float, float]:
    """RF amplitude (rad/s) and duration (s) giving an exact on-transition c-NOT."""
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    if J == 0:
        raise ValueError("J must be non-zero")
    root = math.sqrt(4 * n * n - 1)
    omega1 = 2 * math.pi * abs(J) / root
    return omega1, math.pi / omega1


def soft_y_pulse(angle: float) -> np.ndarray:
    """Ideal instantaneous rotation of spin A about y by ``angle``."""
    return rotor(IY_A, angle)


def cnot_sequence_onres(sys: SpinSystem,
                        variant: Literal["post_minus_y", "pre_plus_y"] = "post_minus_y",
                        drop_offres: bool = True) -> np.ndarray:
    """On-resonance pulse at ``omega1 = pi |J|`` combined with a soft pi/2 y-pulse on A."""
    if sys.J < 0:
        warnings.warn("negative J: phase bookkeeping is only validated for J > 0",
                      stacklevel=2)
    omega1 = math.pi * abs(sys.J)
    pulse = RfPulse(omega1, math.pi / (math.sqrt(2) * omega1), "on_resonance_A")
    h = rotating_frame_hamiltonian(sys, pulse)
    if drop_offres:
        h = drop_offres_term(h, pulse)
    u = expm_hermitian(h, pulse.duration)
    if variant == "post_minus_y":
        return soft_y_pulse(-math.pi / 2) @ u
    if variant == "pre_plus_y":
        return u @ soft_y_pulse(math.pi / 2)
    raise ValueError(f"unknown variant {variant!r}")


def predicted_phases_onres(c2: float) -> PhaseDiag:
    """Diagonal of ``exp(-i pi (Iz^A/2 + (c2 sqrt2 - 1) Iz^B / 2 + Iz^A Iz^B))``."""
    gen = IZ_A / 2 + (c2 * math.sqrt(2) - 1) * IZ_B / 2 + IZ_A @ IZ_B
    return PhaseDiag(tuple(complex(np.exp(-1j * math.pi * g)) for g in np.diag(gen).real))


def verify_cnot(u: np.ndarray, tol: Tolerances = Tolerances(), strict: bool = False
                ) -> CnotVerdict:
    """Check that ``u = D @ CNOT`` for some diagonal unitary ``D``.

    ``residual`` is the ``ga_norm`` of whatever lies outside the c-NOT pattern.
    With ``strict`` the diagonal must also be a global phase.
    """
    d = np.diag(np.diag(u @ CNOT.T))
    residual = ga_norm(u - d @ CNOT)
    if residual >= tol.eq_tol:
        return CnotVerdict(False, residual)
    diag = np.diag(d)
    if np.any(np.abs(np.abs(diag) - 1) > tol.phase_tol):
        return CnotVerdict(False, residual)
    phases = PhaseDiag(tuple(complex(x / abs(x)) for x in diag))
    if strict:
        spread = float(np.abs(diag - diag[0]).max())
        if spread >= tol.phase_tol:
            return CnotVerdict(False, max(residual, spread))
    return CnotVerdict(True, residual, phases)
