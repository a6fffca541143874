"""Doublet lineshape synthesis, FID generation and linear component fitting.

Conventions
-----------
* ``half_width`` is the Lorentzian half-width at half maximum ``w`` (Hz).
  Absorptive ``A = w^2 / (w^2 + d^2)``, dispersive ``D = w d / (w^2 + d^2)``
  with ``d = f - f_line``.
* A line with complex amplitude ``m = a + i b`` contributes ``m (A - i D)``
  to the window, so its real part is ``a A + b D``.
* The doublet lines sit at ``center + J/2`` (partner up) and ``center - J/2``
  (partner down).  In-phase shapes add the two lines, anti-phase shapes
  subtract the lower one.
* The FID is ``sum m exp(2 pi i f_line t - 2 pi w t)``; its transform scaled by
  ``2 pi w * dwell`` approaches the window as the acquisition grows.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass

import numpy as np

COEFF_NAMES: tuple[str, ...] = (
    "absorptive_inphase", "absorptive_antiphase", "dispersive_antiphase", "dispersive_inphase",
)
# series component feeding each coefficient
COMPONENT_OF: dict[str, str] = {
    "absorptive_inphase": "Ix_A",
    "absorptive_antiphase": "2IxIz",
    "dispersive_antiphase": "2IyIz",
    "dispersive_inphase": "Iy_A",
}


@dataclass(frozen=True)
class Acquisition:
    n_samples: int = 24576
    acq_time: float = 0.59
    zero_fill: int = 49152

    def __post_init__(self):
        if self.n_samples < 1 or self.zero_fill < self.n_samples:
            raise ValueError("need 1 <= n_samples <= zero_fill")
        if not self.acq_time > 0:
            raise ValueError("acq_time must be positive")

    @property
    def dwell(self) -> float:
        return self.acq_time / self.n_samples

    @property
    def resolution(self) -> float:
        """Frequency spacing of the zero-filled transform (Hz)."""
        return 1.0 / (self.zero_fill * self.dwell)


@dataclass(frozen=True)
class SpectrumModel:
    J: float
    half_width: float
    center: float
    grid: tuple[float, ...]
    window: int = 128

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        g = np.asarray(self.grid)
        if g.ndim != 1 or len(g) < 1 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be a strictly increasing 1-D sequence")

    @classmethod
    def on_fft_bins(cls, J: float = 54.0, half_width: float = 0.85, center: float = 0.0,
                    acq: Acquisition = Acquisition(), window: int = 128) -> "SpectrumModel":
        """Window of ``window`` transform bins centered on the doublet."""
        df = acq.resolution
        k0 = round(center / df) - window // 2
        grid = tuple(float((k0 + k) * df) for k in range(window))
        return cls(J, half_width, center, grid, window)

    @property
    def freqs(self) -> np.ndarray:
        return np.asarray(self.grid, dtype=float)

    @property
    def line_positions(self) -> tuple[float, float]:
        return self.center + self.J / 2, self.center - self.J / 2


@dataclass(frozen=True)
class FitResult:
    absorptive_inphase: float
    absorptive_antiphase: float
    dispersive_antiphase: float
    dispersive_inphase: float
    residual_norm: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in COEFF_NAMES])

    @classmethod
    def from_components(cls, comps: dict) -> "FitResult":
        return cls(*(float(comps[COMPONENT_OF[n]]) for n in COEFF_NAMES))

    def to_json(self) -> dict:
        return asdict(self)


def lorentz_line(freqs: np.ndarray, f0: float, w: float) -> np.ndarray:
    """Complex line ``A - i D`` (peak value 1 at ``f0``)."""
    d = freqs - f0
    return (w * w - 1j * w * d) / (w * w + d * d)


def line_amplitudes(coeffs) -> tuple[complex, complex]:
    """Complex amplitudes of the upper and lower doublet lines."""
    a_in, a_anti, d_anti, d_in = _coeff_vector(coeffs)
    return complex(a_in + a_anti, d_in + d_anti), complex(a_in - a_anti, d_in - d_anti)


def _coeff_vector(coeffs) -> np.ndarray:
    if isinstance(coeffs, FitResult):
        return coeffs.as_array()
    if isinstance(coeffs, dict):
        return np.array([float(coeffs[n]) for n in COEFF_NAMES])
    v = np.asarray(coeffs, dtype=float)
    if v.shape != (4,):
        raise ValueError("expected four coefficients")
    return v


def design_matrix(model: SpectrumModel) -> np.ndarray:
    """Complex model shapes, one column per coefficient in ``COEFF_NAMES`` order."""
    f = model.freqs
    up, down = (lorentz_line(f, p, model.half_width) for p in model.line_positions)
    return np.stack([up + down, up - down, 1j * (up - down), 1j * (up + down)], axis=1)


def synth_window(coeffs, model: SpectrumModel) -> np.ndarray:
    return design_matrix(model) @ _coeff_vector(coeffs).astype(complex)


def fit_components(window: np.ndarray, model: SpectrumModel, rcond: float = 1e-10) -> FitResult:
    """Real linear least squares on the stacked real and imaginary parts."""
    window = np.asarray(window, dtype=complex)
    if window.shape != (len(model.grid),):
        raise ValueError("window length does not match the model grid")
    m = design_matrix(model)
    real_design = np.vstack([m.real, m.imag])
    rhs = np.concatenate([window.real, window.imag])
    sv = np.linalg.svd(real_design, compute_uv=False)
    if sv[-1] <= rcond * sv[0]:
        raise ValueError(
            f"rank-deficient design (condition {sv[0] / max(sv[-1], 1e-300):.3g}); "
            "in-phase and anti-phase shapes are not separable for this model "
            f"(J={model.J})")
    sol, *_ = np.linalg.lstsq(real_design, rhs, rcond=None)
    resid = float(np.linalg.norm(real_design @ sol - rhs))
    return FitResult(*(float(x) for x in sol), residual_norm=resid)


def design_condition(model: SpectrumModel) -> float:
    m = design_matrix(model)
    return float(np.linalg.cond(np.vstack([m.real, m.imag])))


def synth_fid(series_point, model: SpectrumModel, n_samples: int, dwell: float) -> np.ndarray:
    """Damped two-line FID for a map of series components (or four coefficients)."""
    if isinstance(series_point, dict) and "Ix_A" in series_point:
        coeffs = FitResult.from_components(series_point)
    else:
        coeffs = series_point
    t = dwell * np.arange(n_samples)
    decay = np.exp(-2 * math.pi * model.half_width * t)
    out = np.zeros(n_samples, dtype=complex)
    for amp, pos in zip(line_amplitudes(coeffs), model.line_positions):
        out += amp * np.exp(2j * math.pi * pos * t) * decay
    return out


def fid_window(fid: np.ndarray, model: SpectrumModel, acq: Acquisition) -> np.ndarray:
    """Zero-filled transform of ``fid`` sampled on the model grid, in window units."""
    spectrum = np.fft.fft(fid, n=acq.zero_fill) * acq.dwell * 2 * math.pi * model.half_width
    bins = np.rint(model.freqs / acq.resolution).astype(int) % acq.zero_fill
    if not np.allclose(((bins + acq.zero_fill // 2) % acq.zero_fill - acq.zero_fill // 2)
                       * acq.resolution, model.freqs, rtol=0, atol=1e-9 * acq.resolution):
        raise ValueError("model grid does not coincide with transform bins")
    return spectrum[bins]


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    """``||a - b|| / ||b||``."""
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def window_csv(model: SpectrumModel, window: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("freq_hz", "re", "im"))
    for f, z in zip(model.grid, window):
        w.writerow((f"{f:.17g}", f"{z.real:.17g}", f"{z.imag:.17g}"))
    return buf.getvalue()
