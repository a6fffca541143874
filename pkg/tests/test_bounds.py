import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pocnot.bounds import (
    IX_B,
    SQRT2,
    BoundReport,
    bound_grid,
    commutator_power,
    derivative_term_bounds,
    derivative_terms_measured,
    f_alpha,
    f_alpha_overlap,
    fd_directional_derivative,
    g_c2,
    onres_bound_report,
    ontrn_bound_report,
    ontrn_offres_bound,
    reduced_system,
    sinc_closed_form,
    sinch_directional_derivative,
    sinch_series,
)
from pocnot.hamiltonians import perturbed_hamiltonian
from pocnot.operators import basis_op, expm_hermitian, ga_norm

ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)
FD_RTOL = 1e-6  # central-difference truncation on the measured side


def g_reference(c2):
    a = abs(c2)
    terms = [1 / a, 1 / a ** 2, 1 / (SQRT2 * a ** 2), 1 / (SQRT2 * a * (a - SQRT2)),
             math.pi / (8 * a), (math.pi / SQRT2) / (4 * (a - SQRT2))]
    return math.fsum(terms)


def ontrn_h0(c1, c2):
    s, p = reduced_system(c1, c2, "on_transition_A_minus")
    return perturbed_hamiltonian(s, p, 0.0), s, p


# ---------------------------------------------------------------- f(alpha)

def test_f_zero_at_alpha_zero():
    s, p = reduced_system(1.0, 10.0, "on_resonance_A")
    assert f_alpha(s, p, 2.0, 0.0) == 0.0


@given(st.floats(0.1, 3), st.floats(2, 200), st.floats(0.01, 10), st.floats(0, 1),
       st.sampled_from(["on_resonance_A", "on_transition_A_minus"]))
def test_f_range_and_overlap_form(c1, c2, w1t, alpha, placement):
    s, p = reduced_system(c1, c2, placement)
    f = f_alpha(s, p, w1t, alpha)
    assert 0.0 <= f <= 2.0
    assert abs(f - f_alpha_overlap(s, p, w1t, alpha)) < 1e-13


def test_f_continuous_in_alpha():
    s, p = reduced_system(1.0, 10.0, "on_resonance_A")
    h = 1e-3
    grid = np.arange(0, 1 + h / 2, h)
    vals = np.array([f_alpha(s, p, math.pi / SQRT2, a) for a in grid])
    # no jumps: consecutive samples differ by at most a small multiple of the step
    assert np.abs(np.diff(vals)).max() < 0.1 * h


# ---------------------------------------------------------------- g(c2)

def test_g_values():
    assert g_c2(10.0) == pytest.approx(0.2293, abs=5e-5)
    assert g_c2(10.0) == pytest.approx(g_reference(10.0), rel=1e-15)
    # the six terms at c2 = 100 sum to about 0.0198
    assert g_c2(100.0) == pytest.approx(g_reference(100.0), rel=1e-15)
    assert g_c2(100.0) == pytest.approx(0.019803, abs=1e-6)
    assert g_c2(-10.0) == g_c2(10.0)


def test_g_large_c2_decays_like_inverse():
    assert g_c2(1e8) * 1e8 == pytest.approx(1 + math.pi / 8 + math.pi / (4 * SQRT2), rel=1e-6)


def test_g_rejects_small_c2():
    for c2 in (0.0, 1.0, SQRT2):
        with pytest.raises(ValueError):
            g_c2(c2)


def test_g_strictly_decreasing():
    vals = [g_c2(c) for c in np.linspace(5, 500, 200)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("c2", [5.0, 10.0, 50.0, 100.0, 500.0])
@pytest.mark.parametrize("frac", [0.25, 0.5, 0.75, 1.0])
def test_onres_bound_holds(c2, frac):
    r = onres_bound_report(c2, frac * math.pi / SQRT2)
    assert r.satisfied and 0 <= r.f1 <= 2


def test_f_one_below_g_for_physical_units():
    J = 54.0
    from pocnot.hamiltonians import RfPulse, SpinSystem
    s = SpinSystem(100.0 * math.pi * J, 0.0, J)
    p = RfPulse(math.pi * J)
    t = math.pi / (SQRT2 * p.omega1)
    assert f_alpha(s, p, t, 1.0) < g_c2(100.0)


# ---------------------------------------------------------------- term bounds

def test_term_bound_examples():
    b = derivative_term_bounds(1.0, 10.0)
    assert b.mu == pytest.approx(0.1)
    assert b.kappa_minus == pytest.approx(1 / (SQRT2 * 10 * (10 - SQRT2)), rel=1e-15)


@given(st.floats(2.0, 1e4))
def test_term_bounds_sum_to_g(c2):
    assert abs(derivative_term_bounds(1.0, c2, math.pi / SQRT2).total - g_c2(c2)) < 1e-14


@pytest.mark.parametrize("c1,c2", [(0.5, 1.0), (1.0, 1.2), (3.0, 2.0), (0.0, 5.0)])
def test_term_bounds_reject_violated_assumptions(c1, c2):
    with pytest.raises(ValueError):
        derivative_term_bounds(c1, c2)


def test_mu_slope_matches_arctangent_derivative():
    for a in ALPHAS:
        m = derivative_terms_measured(1.0, 10.0, a)
        assert m.mu == pytest.approx(10.0 / (a * a + 100.0), rel=1e-9)
        assert m.mu <= 0.1 * (1 + FD_RTOL)


@pytest.mark.parametrize("c1,c2", [(1.0, 3.0), (1.0, 10.0), (1.0, 100.0), (2.5, 10.0),
                                   (1.5, 40.0)])
def test_measured_terms_within_bounds(c1, c2):
    bounds = derivative_term_bounds(c1, c2)
    for a in ALPHAS:
        measured = derivative_terms_measured(c1, c2, a)
        for got, cap in zip(measured.as_tuple(), bounds.as_tuple()):
            assert got <= cap * (1 + FD_RTOL)


# ---------------------------------------------------------------- commutator series

def test_commutator_power_basics():
    x = basis_op("Ix_B")
    y = basis_op("Iz_A") + 0.3 * basis_op("2IzIz")
    assert np.array_equal(commutator_power(x, y, 0), x)
    z = basis_op("Iz_B")
    for k in (1, 2, 3):
        assert np.abs(commutator_power(z, y, k)).max() == 0
    with pytest.raises(ValueError):
        commutator_power(x, y, -1)


def test_commutator_power_squared_prefactor_on_diagonal_part():
    c1, c2, t = 0.7, 4.0, 0.9
    h0, _, _ = ontrn_h0(c1, c2)
    diag_part = h0 - basis_op("Ix_A")
    scalar = (c1 + c2) * np.eye(4) + 2 * c1 * basis_op("Iz_A")
    expected = (t / 2) ** 2 * scalar @ scalar @ IX_B
    assert np.allclose(commutator_power(IX_B, t / 2 * diag_part, 2), expected, atol=1e-13)


def test_commutator_power_leaves_span_with_drive():
    # with the Ix^A drive present the k = 2 bracket is no longer a multiple of E+/-^A Ix^B
    h0, _, _ = ontrn_h0(0.7, 4.0)
    k2 = commutator_power(IX_B, 0.45 * h0, 2)
    span = [basis_op("Ep_A") @ IX_B, basis_op("Em_A") @ IX_B]
    coeffs, *_ = np.linalg.lstsq(np.stack([m.ravel() for m in span], 1), k2.ravel(),
                                 rcond=None)
    resid = k2 - sum(c * m for c, m in zip(coeffs, span))
    assert ga_norm(resid) > 1e-3


def test_alpha_independence_first_bracket_only():
    h = {a: perturbed_hamiltonian(*reduced_system(0.8, 6.0, "on_transition_A_minus"), a)
         for a in (0.0, 0.5, 1.0)}
    t = 0.7
    for k in (0, 1):
        ref = commutator_power(IX_B, t / 2 * h[0.0], k)
        for a in (0.5, 1.0):
            assert np.abs(commutator_power(IX_B, t / 2 * h[a], k) - ref).max() < 1e-13
    k2 = [commutator_power(IX_B, t / 2 * h[a], 2) for a in (0.0, 1.0)]
    assert np.abs(k2[0] - k2[1]).max() > 1e-3


def test_sinch_for_commuting_perturbation():
    h = 2.0 * basis_op("Iz_A") + 0.5 * basis_op("2IzIz")
    x = basis_op("Iz_B")
    t = 1.3
    assert np.allclose(sinch_series(h, x, t), x)
    assert np.allclose(sinch_directional_derivative(h, x, t), x @ expm_hermitian(h, t))


def test_sinch_rejects_zero_terms():
    with pytest.raises(ValueError):
        sinch_series(np.eye(4), IX_B, 1.0, terms=0)


@given(st.floats(0.1, 2), st.floats(0, 10), st.floats(0.1, 1.5), st.floats(0.5, 5))
def test_sinch_matches_finite_difference(c1, c2, w1t, omega1):
    s, p = reduced_system(c1, c2, "on_transition_A_minus")
    # rescale to a physical amplitude: H scales with omega1, t with 1/omega1
    h0 = omega1 * perturbed_hamiltonian(s, p, 0.0)
    t = w1t / omega1
    h_half = h0 + 0.5 * omega1 * IX_B
    series = sinch_directional_derivative(h_half, IX_B, t)
    fd = fd_directional_derivative(h0, IX_B, t, scale=omega1)
    assert np.linalg.norm(series - fd) / np.linalg.norm(fd) < 1e-6


@given(st.floats(0.1, 2), st.floats(0, 10), st.floats(0.1, 3))
def test_sinc_closed_form_exact_for_diagonal_part(c1, c2, w1t):
    h0, _, _ = ontrn_h0(c1, c2)
    diag_part = h0 - basis_op("Ix_A")
    assert np.abs(sinch_series(diag_part, IX_B, w1t) - sinc_closed_form(c1, c2, 1.0, w1t)
                  ).max() < 1e-12


def test_sinc_closed_form_is_approximate_with_drive():
    h0, _, _ = ontrn_h0(1.0, 5.0)
    err = np.abs(sinch_series(h0, IX_B, 1.2) - sinc_closed_form(1.0, 5.0, 1.0, 1.2)).max()
    assert err > 1e-4


# ---------------------------------------------------------------- on-transition bound

def test_ontrn_bound_value_and_rejection():
    assert ontrn_offres_bound(0.5, 100.0) == pytest.approx(math.sqrt(8) / 99)
    assert ontrn_offres_bound(0.5, 1e9) < 1e-8
    with pytest.raises(ValueError):
        ontrn_offres_bound(1.0, 2.0)
    assert ontrn_offres_bound(1.0, 2.0 + 1e-9) > 1e8


@pytest.mark.parametrize("c1,c2", [(0.5, 100.0), (1.0, 100.0), (1.0, 500.0), (0.5, 5.0),
                                   (0.5, 10.0), (0.5, 50.0), (0.5, 500.0)])
def test_ontrn_bound_holds(c1, c2):
    assert ontrn_bound_report(c1, c2).satisfied


def test_bound_report_semantics():
    r = BoundReport("x", 1.0, 10.0, 1.0, 0.5, 0.5 - 1e-13)
    assert r.satisfied
    r = BoundReport("x", 1.0, 10.0, 1.0, 0.5, 0.4)
    assert not r.satisfied and r.to_json()["satisfied"] is False


def test_parallel_grid_bitwise_identical():
    seq = bound_grid([5.0, 10.0, 50.0], (0.5, 1.0), workers=1)
    par = bound_grid([5.0, 10.0, 50.0], (0.5, 1.0), workers=4)
    assert [r.to_json() for r in seq] == [r.to_json() for r in par]
