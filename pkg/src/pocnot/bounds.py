"""Off-resonance error bounds for the dropped ``I_x^B`` term.

``f(alpha) = 1/2 ||exp(-i t H(alpha)) - exp(-i t H(0))||^2`` measures how far
switching on a fraction ``alpha`` of the B-spin RF term moves the propagator.
Two analytic bounds on ``f(1)`` are checked here against direct evaluation:
the term-by-term derivative bound ``g(c2)`` for the on-resonance pulse and the
commutator-series bound ``sqrt(8) / (|c2| - 2|c1|)`` for the on-transition one.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .diag import diag_angles
from .hamiltonians import RfPulse, SpinSystem, perturbed_hamiltonian
from .operators import (
    basis_op,
    commutator,
    dagger,
    expm_hermitian,
    ga_norm,
    scalar_part,
)

SQRT2 = math.sqrt(2.0)
IX_B = basis_op("Ix_B")
EP_A, EM_A = basis_op("Ep_A"), basis_op("Em_A")

FD_STEP = 1e-5
SERIES_TERMS = 30


@dataclass(frozen=True)
class BoundReport:
    case: str
    c1: float
    c2: float
    omega1_t: float
    f1: float
    bound: float

    @property
    def satisfied(self) -> bool:
        return self.f1 <= self.bound + 1e-12

    def to_json(self) -> dict:
        return {**asdict(self), "satisfied": self.satisfied}


@dataclass(frozen=True)
class DerivativeTerms:
    """The six contributions to ``|f'(alpha)|``, one per rotation angle."""
    mu: float
    nu: float
    kappa_plus: float
    kappa_minus: float
    lambda_plus: float
    lambda_minus: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.mu, self.nu, self.kappa_plus, self.kappa_minus,
                self.lambda_plus, self.lambda_minus)

    @property
    def total(self) -> float:
        return math.fsum(self.as_tuple())


def reduced_system(c1: float, c2: float, placement: str) -> tuple[SpinSystem, RfPulse]:
    """Unit-amplitude pulse (``omega1 = 1``) on a system with the given ratios."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sys = SpinSystem.from_reduced(c1, c2, 1.0)
    return sys, RfPulse(1.0, placement=placement)


def f_alpha(sys: SpinSystem, pulse: RfPulse, t: float, alpha: float) -> float:
    """``1/2 ||U(alpha) - U(0)||^2`` from the matrix-exponential oracle."""
    ua = expm_hermitian(perturbed_hamiltonian(sys, pulse, alpha), t)
    u0 = expm_hermitian(perturbed_hamiltonian(sys, pulse, 0.0), t)
    return 0.5 * ga_norm(ua - u0) ** 2


def f_alpha_overlap(sys: SpinSystem, pulse: RfPulse, t: float, alpha: float) -> float:
    """Same quantity as ``f_alpha`` written as ``1 - Re <U(alpha) U(0)^dagger>``."""
    ua = expm_hermitian(perturbed_hamiltonian(sys, pulse, alpha), t)
    u0 = expm_hermitian(perturbed_hamiltonian(sys, pulse, 0.0), t)
    return 1.0 - scalar_part(ua @ dagger(u0)).real


def g_c2(c2: float) -> float:
    """Bound on ``max |f'(alpha)|`` on resonance with ``|c1| = 1``, ``omega1 t <= pi/sqrt2``."""
    a = abs(c2)
    if a <= SQRT2:
        raise ValueError("g(c2) requires |c2| > sqrt(2)")
    return (1 / a + 1 / a ** 2 + 1 / (SQRT2 * a ** 2) + 1 / (SQRT2 * a * (a - SQRT2))
            + math.pi / (8 * a) + (math.pi / SQRT2) / (4 * (a - SQRT2)))


def _check_assumptions(c1: float, c2: float) -> None:
    if not 2 <= 1 + c1 ** 2 <= c2 ** 2:
        raise ValueError(f"bounds assume 2 <= 1 + c1^2 <= c2^2 (c1={c1}, c2={c2})")
    if abs(c2) <= SQRT2 * abs(c1):
        raise ValueError("bounds assume |c2| > sqrt(2) |c1|")


def derivative_term_bounds(c1: float, c2: float,
                           omega1_t: float = math.pi / SQRT2) -> DerivativeTerms:
    _check_assumptions(c1, c2)
    a1, a2 = abs(c1), abs(c2)
    return DerivativeTerms(
        mu=1 / a2,
        nu=1 / (a1 * c2 ** 2),
        kappa_plus=a1 / (SQRT2 * c2 ** 2),
        kappa_minus=a1 / (SQRT2 * a2 * (a2 - SQRT2 * a1)),
        lambda_plus=omega1_t / (4 * SQRT2 * a2),
        lambda_minus=omega1_t / (4 * (a2 - SQRT2 * a1)),
    )


def _wrapped_slope(lo: float, hi: float, step: float) -> float:
    # angles are only defined modulo pi as tangents
    d = (hi - lo + math.pi / 2) % math.pi - math.pi / 2
    return d / (2 * step)


def derivative_terms_measured(c1: float, c2: float, alpha: float,
                              omega1_t: float = math.pi / SQRT2,
                              step: float = FD_STEP) -> DerivativeTerms:
    """Central finite differences of the diagonalization angles, weighted by operator norms."""
    lo = diag_angles(c1, c2, alpha - step)
    hi = diag_angles(c1, c2, alpha + step)
    slope = lambda name: abs(_wrapped_slope(getattr(lo, name), getattr(hi, name), step))  # noqa: E731
    w = omega1_t / (2 * SQRT2)
    return DerivativeTerms(
        mu=slope("mu"),
        nu=slope("nu"),
        kappa_plus=slope("kappa_plus") / SQRT2,
        kappa_minus=slope("kappa_minus") / SQRT2,
        lambda_plus=w * abs(hi.lambda_plus - lo.lambda_plus) / (2 * step),
        lambda_minus=w * abs(hi.lambda_minus - lo.lambda_minus) / (2 * step),
    )


def commutator_power(x: np.ndarray, y: np.ndarray, k: int) -> np.ndarray:
    """Nested commutator ``[...[[X, Y], Y]..., Y]`` with ``k`` brackets."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = x
    for _ in range(k):
        out = commutator(out, y)
    return out


def sinch_series(h: np.ndarray, x: np.ndarray, t: float, terms: int = SERIES_TERMS
                 ) -> np.ndarray:
    """Inner sum ``sum_k (-1)^k {X, (t H / 2)^{2k}} / (2k+1)!`` truncated to ``terms``.

    Each bracket pair scales by at most ``r^2`` with ``r = (t/2)(max eig - min eig)``.
    With the default 30 terms the truncation stays below 1e-9 relative for
    ``r`` up to about 13; beyond that raise ``terms`` or split ``t``.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    y = 0.5 * t * h
    acc = np.zeros_like(x, dtype=complex)
    cur = np.asarray(x, dtype=complex)
    for k in range(terms):
        acc = acc + ((-1) ** k / math.factorial(2 * k + 1)) * cur
        cur = commutator(commutator(cur, y), y)
    return acc


def sinch_directional_derivative(h: np.ndarray, x: np.ndarray, t: float,
                                 terms: int = SERIES_TERMS) -> np.ndarray:
    """``X . grad exp(-i t H)`` via the symmetric commutator series.

    Equals ``(i / t) d/ds exp(-i t (H + s X))`` at ``s = 0``.
    """
    half = expm_hermitian(h, t / 2)
    return half @ sinch_series(h, x, t, terms) @ half


def fd_directional_derivative(h0: np.ndarray, x: np.ndarray, t: float, scale: float = 1.0,
                              alpha: float = 0.5, step: float = FD_STEP) -> np.ndarray:
    """Central-difference ``(i / (t scale)) d/dalpha exp(-i t (H0 + alpha scale X))``."""
    up = expm_hermitian(h0 + (alpha + step) * scale * x, t)
    down = expm_hermitian(h0 + (alpha - step) * scale * x, t)
    return 1j / (t * scale) * (up - down) / (2 * step)


def sinc_closed_form(c1: float, c2: float, omega1: float, t: float) -> np.ndarray:
    """Scalar-function form of the inner series for the on-transition generator.

    ``sinc(omega1 t (2 c1 + c2) / 2) E+^A Ix^B + sinc(omega1 t c2 / 2) E-^A Ix^B``.
    Exact for the diagonal part of ``H0`` (``H0 - omega1 Ix^A``).  With the
    ``Ix^A`` drive included the nested commutators no longer stay inside the
    ``E+/-^A Ix^B`` span, so for the full ``H0`` this is an approximation.
    """
    sinc = lambda z: np.sinc(z / math.pi)  # noqa: E731
    return (sinc(omega1 * t * (2 * c1 + c2) / 2) * EP_A @ IX_B
            + sinc(omega1 * t * c2 / 2) * EM_A @ IX_B)


def ontrn_offres_bound(c1: float, c2: float) -> float:
    if abs(c2) <= 2 * abs(c1):
        raise ValueError("on-transition bound requires |c2| > 2 |c1|")
    return math.sqrt(8) / (abs(c2) - 2 * abs(c1))


def onres_bound_report(c2: float, omega1_t: float = math.pi / SQRT2) -> BoundReport:
    """Measured ``f(1)`` against ``g(c2)`` for an on-resonance pulse with ``c1 = 1``."""
    sys, pulse = reduced_system(1.0, c2, "on_resonance_A")
    return BoundReport("on_resonance", 1.0, c2, omega1_t,
                       f_alpha(sys, pulse, omega1_t, 1.0), g_c2(c2))


def ontrn_bound_report(c1: float, c2: float, omega1_t: float = math.pi) -> BoundReport:
    """Measured ``f(1)`` against ``sqrt(8)/(|c2| - 2|c1|)`` for an on-transition pulse."""
    sys, pulse = reduced_system(c1, c2, "on_transition_A_minus")
    return BoundReport("on_transition", c1, c2, omega1_t,
                       f_alpha(sys, pulse, omega1_t, 1.0), ontrn_offres_bound(c1, c2))


def bound_grid(c2_values, omega1_t_fractions=(1.0,), ontrn_c1: float = 0.5,
               workers: int = 1) -> list[BoundReport]:
    """On-resonance and on-transition reports over a ``c2`` grid, in a fixed order."""
    jobs = []
    for c2 in c2_values:
        for frac in omega1_t_fractions:
            jobs.append((onres_bound_report, (c2, frac * math.pi / SQRT2)))
        jobs.append((ontrn_bound_report, (ontrn_c1, c2)))
    if workers <= 1:
        return [fn(*args) for fn, args in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: job[0](*job[1]), jobs))
