"""Product-operator time series for the three selective-pulse experiments.

States are traceless deviation operators.  The equilibrium state is
``Iz^A + Iz^B``; series components are its evolved coefficients on the six
A-spin observables, scaled so the initial ``Iz^A`` coefficient is 1.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .hamiltonians import (
    RfPulse,
    SpinSystem,
    drop_offres_term,
    rotating_frame_hamiltonian,
)
from .operators import basis_op, dagger, decompose, expm_hermitian

Variant = Literal["effective_full", "effective_dropped", "transition"]
PresetId = Literal["i", "ii", "iii", "custom"]

SERIES_COMPONENTS: tuple[str, ...] = ("Ix_A", "Iy_A", "2IxIz", "2IyIz", "Iz_A", "2IzIz")
VARIANTS: tuple[str, ...] = ("effective_full", "effective_dropped", "transition")

_IX_A_EM_B = basis_op("Ix_A") @ basis_op("Em_B")


def equilibrium_state() -> np.ndarray:
    return basis_op("Iz_A") + basis_op("Iz_B")


@dataclass(frozen=True)
class ExperimentPreset:
    id: PresetId
    pulse: RfPulse
    t_max: float
    n_points: int = 16
    hamiltonian_variant: Variant = "effective_full"

    def __post_init__(self):
        if self.hamiltonian_variant not in VARIANTS:
            raise ValueError(f"unknown Hamiltonian variant {self.hamiltonian_variant!r}")
        if self.n_points < 1:
            raise ValueError("n_points must be >= 1")
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if (self.hamiltonian_variant == "transition"
                and self.pulse.placement != "on_transition_A_minus"):
            raise ValueError("the transition Hamiltonian models on-transition irradiation only")

    @classmethod
    def standard(cls, preset_id: str, sys: SpinSystem,
                 variant: Variant = "effective_full", n_points: int = 16) -> "ExperimentPreset":
        """Presets (i), (ii), (iii) for the coupling of ``sys``."""
        j = abs(sys.J)
        if preset_id == "i":
            w1 = math.pi * j
            return cls("i", RfPulse(w1, math.sqrt(2) / j, "on_resonance_A"),
                       math.sqrt(2) / j, n_points, variant)
        if preset_id == "ii":
            w1 = 2 * math.pi * j
            return cls("ii", RfPulse(w1, 1 / j, "on_transition_A_minus"),
                       1 / j, n_points, variant)
        if preset_id == "iii":
            # quoted as 4 pi rad/s and 1/2 s; note pi / (4 pi) is 1/4 s
            w1, t_max = 4 * math.pi, 0.5
            return cls("iii", RfPulse(w1, t_max, "on_transition_A_minus"),
                       t_max, n_points, variant)
        raise ValueError(f"unknown preset {preset_id!r}; expected one of i, ii, iii")

    def times(self) -> np.ndarray:
        """``t_max/n, 2 t_max/n, ..., t_max``."""
        return self.t_max * np.arange(1, self.n_points + 1) / self.n_points

    def metadata(self) -> dict:
        return {
            "preset": self.id,
            "placement": self.pulse.placement,
            "omega1_rad_s": self.pulse.omega1,
            "t_max_s": self.t_max,
            "n_points": self.n_points,
            "variant": self.hamiltonian_variant,
        }


@dataclass(frozen=True)
class TimeSeries:
    times: tuple[float, ...]
    components: dict[str, tuple[float, ...]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def column(self, label: str) -> np.ndarray:
        return np.array(self.components[label])

    def rows(self) -> list[tuple[float, ...]]:
        cols = [self.components[c] for c in SERIES_COMPONENTS]
        return [(t, *(c[k] for c in cols)) for k, t in enumerate(self.times)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("t_seconds", *SERIES_COMPONENTS))
        for row in self.rows():
            w.writerow([format_float(x) for x in row])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"meta": self.meta, "times": list(self.times),
                "components": {k: list(v) for k, v in self.components.items()}}


def format_float(x: float) -> str:
    """Round-trip-safe decimal with 17 significant digits."""
    return f"{float(x):.17g}"


def series_hamiltonian(sys: SpinSystem, preset: ExperimentPreset) -> np.ndarray:
    pulse = preset.pulse
    if preset.hamiltonian_variant == "transition":
        return pulse.omega1 * _IX_A_EM_B
    h = rotating_frame_hamiltonian(sys, pulse)
    if preset.hamiltonian_variant == "effective_dropped":
        h = drop_offres_term(h, pulse)
    return h


def evolve_components(h: np.ndarray, rho0: np.ndarray, times, labels=SERIES_COMPONENTS
                      ) -> dict[str, np.ndarray]:
    """Product-operator coefficients of ``U(t) rho0 U(t)^dagger`` at each time."""
    out = {lab: np.empty(len(times)) for lab in labels}
    for k, t in enumerate(times):
        u = expm_hermitian(h, float(t))
        coeffs = decompose(u @ rho0 @ dagger(u))
        for lab in labels:
            out[lab][k] = coeffs[lab].real
    return out


def simulate_series(sys: SpinSystem, preset: ExperimentPreset, times=None) -> TimeSeries:
    """Evolve equilibrium under the preset's Hamiltonian.

    ``times`` overrides the preset's evenly spaced grid (e.g. for fine sampling).
    """
    rho0 = equilibrium_state()
    scale = 1.0 / decompose(rho0)["Iz_A"].real
    ts = preset.times() if times is None else np.asarray(times, dtype=float)
    comps = evolve_components(series_hamiltonian(sys, preset), rho0, ts)
    meta = {**preset.metadata(), "J_hz": sys.J, "omega0_A": sys.omega0_A,
            "omega0_B": sys.omega0_B, "coupling_model": sys.coupling_model}
    return TimeSeries(tuple(float(t) for t in ts),
                      {k: tuple(float(x) * scale for x in v) for k, v in comps.items()},
                      meta)


def band_energy(values, dt: float, center_hz: float, half_band_hz: float) -> float:
    """Energy of a sampled signal within ``center +/- half_band`` (Hann-windowed, mean removed)."""
    x = np.asarray(values, dtype=float)
    x = (x - x.mean()) * np.hanning(len(x))
    power = np.abs(np.fft.rfft(x)) ** 2
    freqs = np.fft.rfftfreq(len(x), dt)
    mask = np.abs(freqs - center_hz) <= half_band_hz
    return float(power[mask].sum())


def series_json(series: TimeSeries) -> str:
    return json.dumps(series.to_json(), sort_keys=True, indent=2)
