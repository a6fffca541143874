"""Analytic diagonalization of the on-resonance effective Hamiltonian.

Works on the reduced generator

    H(alpha) / omega1 = 2 c1 Iz^A Iz^B + Ix^A + c2 Iz^B + alpha Ix^B

through the rotation sequence ``exp(i mu Iy^B)``, ``exp(i nu 2Iy^A Iz^B)`` and
the conditional rotation ``K``, after which it reads
``2 lambda+ E+^A Iz^B - 2 lambda- E-^A Iz^B``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .operators import basis_op, dagger, rotor

IX_A, IZ_A = basis_op("Ix_A"), basis_op("Iz_A")
IX_B, IY_B, IZ_B = basis_op("Ix_B"), basis_op("Iy_B"), basis_op("Iz_B")
EP_A, EM_A = basis_op("Ep_A"), basis_op("Em_A")
YZ = basis_op("2IyIz")  # 2 Iy^A Iz^B


@dataclass(frozen=True)
class DiagFactorization:
    mu: float
    nu: float
    kappa_plus: float
    kappa_minus: float
    lambda_plus: float
    lambda_minus: float
    c1_prime: float
    c2_prime: float

    def to_json(self) -> dict:
        return asdict(self)


def reduced_onres_hamiltonian(c1: float, c2: float, alpha: float = 1.0) -> np.ndarray:
    return 2 * c1 * IZ_A @ IZ_B + IX_A + c2 * IZ_B + alpha * IX_B


def char_eigenvalues(c1: float, c2: float, alpha: float = 1.0) -> tuple[float, float]:
    """Roots ``lambda+ >= lambda- >= 0`` of the characteristic quadratic in ``lambda^2``.

    ``lambda-^2`` is formed as a product-over-sum so it keeps full precision
    when it is tiny compared with ``lambda+^2``.
    """
    s = 1 + alpha ** 2 + c1 ** 2 + c2 ** 2
    r = 2 * math.sqrt(alpha ** 2 + c2 ** 2 * (1 + c1 ** 2))
    lp2 = (s + r) / 4
    # s^2 - r^2 rewritten as a sum of squares
    diff = (1 + c1 ** 2 - alpha ** 2 - c2 ** 2) ** 2 + 4 * alpha ** 2 * c1 ** 2
    lm2 = diff / (4 * (s + r)) if s + r > 0 else 0.0
    return math.sqrt(lp2), math.sqrt(lm2)


def diag_angles(c1: float, c2: float, alpha: float = 1.0) -> DiagFactorization:
    """Rotation angles and eigenvalues of the analytic diagonalization.

    Angles come from two-argument arctangents so that the rotated fields keep
    their orientation; ``c2 = 0`` gives ``mu = pi/2`` and ``cos(mu) = 0`` gives
    ``nu = pi/2``.
    """
    if c1 == 0 and c2 == 0:
        raise ValueError("degenerate parameters: c1 = c2 = 0 leaves nothing to diagonalize")
    mu = math.atan2(alpha, c2)
    c2p = math.hypot(alpha, c2)
    cos_mu = c2 / c2p if c2p > 0 else 1.0
    sin_mu = alpha / c2p if c2p > 0 else 0.0
    c1p = math.sqrt(1 + (c1 * cos_mu) ** 2)
    nu = math.atan2(1.0, c1 * cos_mu)
    transverse = c1 * sin_mu
    kp = math.atan2(transverse, c1p + c2p)
    km = math.atan2(transverse, c1p - c2p)
    lp = 0.5 * math.hypot(c1p + c2p, transverse)
    lm = 0.5 * math.hypot(c1p - c2p, transverse)
    return DiagFactorization(mu, nu, kp, km, lp, lm, c1p, c2p)


def _k_rotation(f: DiagFactorization) -> np.ndarray:
    return rotor(EP_A @ IY_B, f.kappa_plus) @ rotor(EM_A @ IY_B, f.kappa_minus)


def diag_transform(c1: float, c2: float, alpha: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``(V, D)`` with ``V (H/omega1) V^dagger = D`` diagonal.

    ``D`` has diagonal ``(lambda+, -lambda+, -lambda-, lambda-)``.
    """
    f = diag_angles(c1, c2, alpha)
    v = _k_rotation(f) @ rotor(YZ, -f.nu) @ rotor(IY_B, -f.mu)
    d = np.diag([f.lambda_plus, -f.lambda_plus, -f.lambda_minus, f.lambda_minus]).astype(complex)
    return v, d


def factored_propagator(c1: float, c2: float, alpha: float, omega1: float, t: float
                        ) -> np.ndarray:
    """``exp(-i t H(alpha))`` as a ten-factor product of elementary rotations."""
    f = diag_angles(c1, c2, alpha)
    w = omega1 * t
    factors = [
        rotor(IY_B, f.mu),
        rotor(YZ, f.nu),
        rotor(EP_A @ IY_B, -f.kappa_plus),
        rotor(EM_A @ IY_B, -f.kappa_minus),
        rotor(EP_A @ IZ_B, 2 * w * f.lambda_plus),
        rotor(EM_A @ IZ_B, -2 * w * f.lambda_minus),
        rotor(EM_A @ IY_B, f.kappa_minus),
        rotor(EP_A @ IY_B, f.kappa_plus),
        rotor(YZ, -f.nu),
        rotor(IY_B, -f.mu),
    ]
    out = factors[0]
    for m in factors[1:]:
        out = out @ m
    return out


def reconstruct(v: np.ndarray, d: np.ndarray) -> np.ndarray:
    """``V^dagger D V``."""
    return dagger(v) @ d @ v
