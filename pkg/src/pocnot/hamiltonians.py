"""Lab-frame and rotating-frame Hamiltonians of a weakly coupled spin pair.

Frequencies are angular (rad/s) everywhere except the scalar coupling ``J``,
which is kept in Hz as quoted by spectroscopists.  ``SpinSystem.coupling``
is the single place where it is converted to ``2 pi J`` rad/s.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .operators import basis_op

CouplingModel = Literal["weak", "strong"]
Placement = Literal["on_resonance_A", "on_transition_A_minus", "explicit"]

IZ_A = basis_op("Iz_A")
IZ_B = basis_op("Iz_B")
IX_A = basis_op("Ix_A")
IX_B = basis_op("Ix_B")
ZZ = basis_op("2IzIz") / 2          # I_z^A I_z^B
FLIP_FLOP = (basis_op("2IxIx") + basis_op("2IyIy")) / 2  # IxIx + IyIy


@dataclass(frozen=True)
class SpinSystem:
    omega0_A: float
    omega0_B: float
    J: float
    coupling_model: CouplingModel = "weak"

    def __post_init__(self):
        if self.coupling_model not in ("weak", "strong"):
            raise ValueError(f"unknown coupling model {self.coupling_model!r}")
        if abs(self.omega0_A - self.omega0_B) <= abs(self.coupling):
            warnings.warn(
                "|omega0_A - omega0_B| <= 2 pi |J|: weak-coupling approximation is "
                "not justified for these frequencies",
                stacklevel=2,
            )

    @property
    def coupling(self) -> float:
        """Scalar coupling ``2 pi J`` in rad/s."""
        return 2 * math.pi * self.J

    @property
    def delta(self) -> float:
        """Chemical-shift difference ``omega0_A - omega0_B`` (rad/s)."""
        return self.omega0_A - self.omega0_B

    @classmethod
    def alanine(cls, coupling_model: CouplingModel = "weak") -> "SpinSystem":
        """Carboxyl (A) / alpha (B) carbons of 13C alanine at 9.4 T.

        J = 54 Hz; the shift difference is taken as 12 kHz.
        """
        base = 2 * math.pi * 100.6e6
        return cls(base + 2 * math.pi * 12e3, base, 54.0, coupling_model)

    @classmethod
    def from_reduced(cls, c1: float, c2: float, omega1: float,
                     coupling_model: CouplingModel = "weak") -> "SpinSystem":
        """System whose pulse of amplitude ``omega1`` has the given ``c1``, ``c2``.

        ``omega0_B`` is pinned to 0; only differences enter the rotating frame.
        """
        return cls(c2 * omega1, 0.0, c1 * omega1 / math.pi, coupling_model)


@dataclass(frozen=True)
class RfPulse:
    omega1: float
    duration: float = 0.0
    placement: Placement = "on_resonance_A"
    omega2: float | None = None

    def __post_init__(self):
        if not self.omega1 > 0:
            raise ValueError("omega1 must be positive")
        if self.duration < 0:
            raise ValueError("duration must be non-negative")
        if self.placement not in ("on_resonance_A", "on_transition_A_minus", "explicit"):
            raise ValueError(f"unknown placement {self.placement!r}")
        if (self.placement == "explicit") != (self.omega2 is not None):
            raise ValueError("omega2 is given iff placement is 'explicit'")

    def carrier(self, sys: SpinSystem) -> float:
        if self.placement == "on_resonance_A":
            return sys.omega0_A
        if self.placement == "on_transition_A_minus":
            return sys.omega0_A + math.pi * sys.J
        return self.omega2

    def offsets(self, sys: SpinSystem) -> tuple[float, float]:
        """``(omega0_A - omega2, omega0_B - omega2)`` without cancelling large numbers."""
        if self.placement == "on_resonance_A":
            return 0.0, -sys.delta
        if self.placement == "on_transition_A_minus":
            pj = math.pi * sys.J
            return -pj, -sys.delta - pj
        return sys.omega0_A - self.omega2, sys.omega0_B - self.omega2


@dataclass(frozen=True)
class ReducedParams:
    c1: float
    c2: float
    alpha: float = 1.0

    @classmethod
    def of(cls, sys: SpinSystem, pulse: RfPulse, alpha: float = 1.0) -> "ReducedParams":
        return cls(math.pi * sys.J / pulse.omega1, sys.delta / pulse.omega1, alpha)


@dataclass(frozen=True)
class EffectiveField:
    subpopulation: str
    vector: tuple[float, float, float]

    @property
    def magnitude(self) -> float:
        return math.hypot(self.vector[0], self.vector[2])

    @property
    def tilt(self) -> float:
        """Signed angle between the field and the z axis, in (-pi/2, pi/2]."""
        x, _, z = self.vector
        if z == 0:
            return math.pi / 2
        return math.atan(x / z)


def _coupling_term(sys: SpinSystem) -> np.ndarray:
    term = sys.coupling * ZZ
    if sys.coupling_model == "strong":
        term = term + sys.coupling * FLIP_FLOP
    return term


def lab_hamiltonian(sys: SpinSystem) -> np.ndarray:
    return -sys.omega0_A * IZ_A - sys.omega0_B * IZ_B + _coupling_term(sys)


def frame_generator(omega2: float) -> np.ndarray:
    """``G = omega2 (I_z^A + I_z^B)``."""
    return omega2 * (IZ_A + IZ_B)


def rotating_frame_hamiltonian(sys: SpinSystem, pulse: RfPulse) -> np.ndarray:
    """Time-independent effective Hamiltonian ``H' + G`` in the carrier frame."""
    off_a, off_b = pulse.offsets(sys)
    return -off_a * IZ_A - off_b * IZ_B + _coupling_term(sys) + pulse.omega1 * (IX_A + IX_B)


def drop_offres_term(h_eff: np.ndarray, pulse: RfPulse) -> np.ndarray:
    """Remove the RF term acting on the unobserved spin B."""
    return h_eff - pulse.omega1 * IX_B


def perturbed_hamiltonian(sys: SpinSystem, pulse: RfPulse, alpha: float) -> np.ndarray:
    """``H0 + alpha omega1 I_x^B``, interpolating between the dropped and full forms."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    h0 = drop_offres_term(rotating_frame_hamiltonian(sys, pulse), pulse)
    return h0 + alpha * pulse.omega1 * IX_B


def effective_fields(sys: SpinSystem, pulse: RfPulse,
                     observed_spin: str = "A") -> list[EffectiveField]:
    """Per-subpopulation rotating-frame fields acting on ``observed_spin``.

    The z component is the coefficient of ``I_z`` of the observed spin once the
    partner is frozen in its up/down state.
    """
    if sys.coupling_model != "weak":
        raise ValueError("effective fields are defined for weak coupling only")
    if observed_spin not in ("A", "B"):
        raise ValueError("observed_spin must be 'A' or 'B'")
    off_a, off_b = pulse.offsets(sys)
    offset = off_a if observed_spin == "A" else off_b
    partner = "B" if observed_spin == "A" else "A"
    fields = []
    for label, m in (("up", 0.5), ("down", -0.5)):
        z = -offset + sys.coupling * m
        fields.append(EffectiveField(f"{partner}_{label}", (pulse.omega1, 0.0, z)))
    return fields


def rotation_time(field: EffectiveField, angle: float) -> float:
    """Time for ``field`` to nutate a spin through ``angle`` radians."""
    mag = field.magnitude
    if mag == 0:
        raise ValueError("zero effective field never rotates")
    return angle / mag
