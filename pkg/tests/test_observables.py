import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pocnot.gates import exact_cnot_params
from pocnot.hamiltonians import RfPulse, SpinSystem
from pocnot.observables import (
    SERIES_COMPONENTS,
    ExperimentPreset,
    band_energy,
    equilibrium_state,
    evolve_components,
    format_float,
    series_hamiltonian,
    series_json,
    simulate_series,
)
from pocnot.operators import PRODUCT_LABELS, basis_op, decompose, expm_hermitian, is_hermitian

ALANINE = SpinSystem.alanine()


def test_equilibrium_state():
    rho = equilibrium_state()
    c = decompose(rho)
    assert c["Iz_A"] == 1 and c["Iz_B"] == 1
    assert sum(abs(v) for k, v in c.items() if k not in ("Iz_A", "Iz_B")) == 0
    assert is_hermitian(rho) and np.trace(rho) == 0
    diag_h = 3.0 * basis_op("Iz_A") - 2.0 * basis_op("2IzIz")
    u = expm_hermitian(diag_h, 0.83)
    assert np.allclose(u @ rho @ u.conj().T, rho, atol=1e-15)


def test_preset_invariants():
    j = ALANINE.J
    i = ExperimentPreset.standard("i", ALANINE)
    assert i.pulse.placement == "on_resonance_A"
    assert i.pulse.omega1 == pytest.approx(math.pi * j) and i.t_max == pytest.approx(math.sqrt(2) / j)
    ii = ExperimentPreset.standard("ii", ALANINE)
    assert ii.pulse.placement == "on_transition_A_minus"
    assert ii.pulse.omega1 == pytest.approx(2 * math.pi * j) and ii.t_max == pytest.approx(1 / j)
    iii = ExperimentPreset.standard("iii", ALANINE)
    assert iii.pulse.omega1 == 4 * math.pi and iii.t_max == 0.5
    assert i.n_points == 16 and len(i.times()) == 16 and i.times()[-1] == i.t_max


def test_preset_iii_duration_is_a_pi_rotation():
    # stated as an invariant alongside t_max = 1/2 s; pi / (4 pi) is 1/4 s
    iii = ExperimentPreset.standard("iii", ALANINE)
    assert iii.t_max == pytest.approx(math.pi / iii.pulse.omega1, abs=1e-15)


def test_preset_validation():
    with pytest.raises(ValueError):
        ExperimentPreset.standard("iv", ALANINE)
    with pytest.raises(ValueError):
        ExperimentPreset.standard("i", ALANINE, "transition")
    with pytest.raises(ValueError):
        ExperimentPreset("custom", RfPulse(1.0), 1.0, 0)
    with pytest.raises(ValueError):
        ExperimentPreset("custom", RfPulse(1.0), -1.0)
    with pytest.raises(ValueError):
        ExperimentPreset("custom", RfPulse(1.0), 1.0, 4, "nope")


def test_preset_i_antiphase_at_half_time():
    p = ExperimentPreset.standard("i", ALANINE, "effective_dropped")
    s = simulate_series(ALANINE, p)
    assert s.times[7] == pytest.approx(1 / (math.sqrt(2) * ALANINE.J))
    assert abs(s.column("2IxIz")[7]) >= 1 - 1e-10


def test_transition_variant_is_selective_inversion():
    p = ExperimentPreset.standard("ii", ALANINE, "transition")
    s = simulate_series(ALANINE, p, [0.5 / ALANINE.J / 2, 1 / ALANINE.J / 2])
    # pi rotation of the B-down line moves half of Iz^A into 2IzIz
    assert s.column("Iz_A")[1] == pytest.approx(0.0, abs=1e-12)
    assert s.column("2IzIz")[1] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test_exact_params_map_iz_a_to_zz(n):
    w1, t = exact_cnot_params(n, ALANINE.J)
    p = ExperimentPreset("custom", RfPulse(w1, t, "on_transition_A_minus"), t, 4,
                         "effective_dropped")
    end = {k: v[-1] for k, v in simulate_series(ALANINE, p).components.items()}
    assert end["2IzIz"] == pytest.approx(1.0, abs=1e-10)
    for other in ("Ix_A", "Iy_A", "2IxIz", "2IyIz", "Iz_A"):
        assert abs(end[other]) < 1e-10


def full_norm(h, rho, times):
    comps = evolve_components(h, rho, times, PRODUCT_LABELS)
    return np.sqrt(sum(np.abs(v) ** 2 for v in comps.values()))


@pytest.mark.parametrize("preset_id", ["i", "ii", "iii"])
@pytest.mark.parametrize("variant", ["effective_full", "effective_dropped"])
def test_unitarity_preserves_component_norm(preset_id, variant):
    p = ExperimentPreset.standard(preset_id, ALANINE, variant)
    norms = full_norm(series_hamiltonian(ALANINE, p), equilibrium_state(), p.times())
    assert np.ptp(norms) < 1e-12
    assert norms[0] == pytest.approx(math.sqrt(2), abs=1e-12)


@given(st.floats(0.2, 3), st.floats(0, 1))
def test_onres_dropped_periodicity(c1, t0):
    w1 = 10.0
    s = SpinSystem(5000.0, 1000.0, c1 * w1 / math.pi)
    p = ExperimentPreset("custom", RfPulse(w1), 1.0, 1, "effective_dropped")
    period = 2 * math.pi / (w1 * math.sqrt(1 + c1 * c1))
    a = simulate_series(s, p, [t0, t0 + period])
    for lab in SERIES_COMPONENTS:
        assert abs(a.column(lab)[0] - a.column(lab)[1]) < 1e-10


def test_high_frequency_content_only_in_full_series():
    p_full = ExperimentPreset.standard("ii", ALANINE, "effective_full")
    p_trn = ExperimentPreset.standard("ii", ALANINE, "transition")
    times = p_full.t_max * np.arange(1024) / 1024
    dt = times[1]
    delta_hz = abs(ALANINE.delta) / (2 * math.pi)
    ratios = []
    for lab in SERIES_COMPONENTS:
        full = simulate_series(ALANINE, p_full, times).column(lab)
        trn = simulate_series(ALANINE, p_trn, times).column(lab)
        ratios.append((band_energy(full, dt, delta_hz, 0.1 * delta_hz),
                       band_energy(trn, dt, delta_hz, 0.1 * delta_hz)))
    full_e = sum(r[0] for r in ratios)
    trn_e = sum(r[1] for r in ratios)
    assert full_e > 10 * trn_e


def test_band_energy_picks_tone():
    dt = 1e-3
    t = dt * np.arange(1000)
    x = np.sin(2 * math.pi * 100 * t)
    assert band_energy(x, dt, 100, 10) > 1e3 * band_energy(x, dt, 300, 10)
    assert band_energy(np.ones(1000), dt, 0, 5) == pytest.approx(0, abs=1e-20)


def test_csv_and_json_formats():
    p = ExperimentPreset.standard("i", ALANINE, "effective_dropped")
    s = simulate_series(ALANINE, p)
    rows = list(csv.reader(io.StringIO(s.to_csv())))
    assert rows[0] == ["t_seconds", "Ix_A", "Iy_A", "2IxIz", "2IyIz", "Iz_A", "2IzIz"]
    assert len(rows) == 17
    assert float(rows[1][0]) == s.times[0]
    for row, ref in zip(rows[1:], s.rows()):
        assert tuple(float(x) for x in row) == ref
    doc = json.loads(series_json(s))
    assert doc["meta"]["preset"] == "i" and len(doc["times"]) == 16


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_float_roundtrips(x):
    assert float(format_float(x)) == x
