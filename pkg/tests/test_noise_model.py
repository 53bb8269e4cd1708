import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from cliffordt.errors import DomainError
from cliffordt.noise_model import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    average_channel_mc,
    closed_form_weights,
    depolarize_map,
    depolarizing_p_effective,
    energy_error_bounds,
    eps_tot_bound,
    mc_ptm_with_stats,
    noise_params_from_eps,
    sample_unitary_noise,
    triangle_bound,
    validate_noise_report,
    variance_trace_norm,
    variance_trace_norm_mc,
)


def region_integral(delta, f):
    # the constraint |phi/2 + a| <= delta and |phi/2 - a| <= delta
    # is exactly |phi/2| <= delta - |a|
    val, _ = dblquad(
        f,
        -delta,
        delta,
        lambda a: -2 * (delta - abs(a)),
        lambda a: 2 * (delta - abs(a)),
        epsabs=1e-13,
        epsrel=1e-13,
    )
    return val


# ---------------------------------------------------------------- parameters


def test_noise_params_frozen():
    z = noise_params_from_eps(0.0)
    assert z.delta == 0.0 and z.p == 0.0
    full = noise_params_from_eps(2.0)
    assert full.delta == pytest.approx(math.pi, rel=1e-12)
    assert full.p == pytest.approx(8 * math.pi**2 / 15, rel=1e-12)
    assert full.p == pytest.approx(5.2638, abs=1e-4)
    tiny = noise_params_from_eps(1e-3)
    assert tiny.p == pytest.approx(8e-6 / 15, rel=1e-3)
    assert tiny.small_eps_valid


def test_noise_params_domain():
    with pytest.raises(DomainError):
        noise_params_from_eps(2.5)
    with pytest.raises(DomainError):
        noise_params_from_eps(-0.1)


def test_p_over_eps_squared_limit():
    for eps, rtol in ((1e-2, 1e-3), (1e-3, 1e-5), (1e-4, 1e-7)):
        ratio = noise_params_from_eps(eps).p / eps**2
        assert ratio == pytest.approx(8 / 15, rel=rtol)


# ------------------------------------------------------------- closed forms


def test_quadrature_reproduces_closed_forms():
    for d in (0.05, 0.1, 0.2, 0.4):
        i1 = region_integral(d, lambda phi, a: math.sin(phi / 2) ** 2 * math.cos(phi / 2) ** 2)
        i2 = region_integral(d, lambda phi, a: math.sin(phi / 2) ** 4)
        nrm = region_integral(d, lambda phi, a: math.sin(phi / 2) ** 2)
        assert i1 == pytest.approx((8 * d**2 + math.cos(4 * d) - 1) / 16, abs=1e-10)
        assert i2 == pytest.approx(
            (24 * d**2 + 16 * math.cos(2 * d) - math.cos(4 * d) - 15) / 16, abs=1e-10
        )
        assert nrm == pytest.approx(2 * d**2 + math.cos(2 * d) - 1, abs=1e-10)
        w_keep, w_flip = closed_form_weights(d)
        assert w_keep == pytest.approx(i1 / nrm, abs=1e-10)
        assert w_flip == pytest.approx(i2 / nrm, abs=1e-10)


def test_weights_sum_and_limit():
    assert closed_form_weights(0.0) == (1.0, 0.0)
    for d in (1e-6, 1e-3, 0.05, 0.3, 1.0, math.pi):
        wk, wf = closed_form_weights(d)
        assert wk + wf == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DomainError):
        closed_form_weights(-0.1)


def test_weights_taylor():
    d = 0.3
    _, wf = closed_form_weights(d)
    assert abs(2 * d**2 / 5 - wf) <= d**4
    d = 1e-4
    wk, wf = closed_form_weights(d)
    assert wk == pytest.approx(1 - 2 * d**2 / 5, abs=1e-14)
    assert wf == pytest.approx(2 * d**2 / 5, rel=1e-6)


def test_normalizer_positive_small_delta():
    d = 0.1
    assert 2 * d**2 + math.cos(2 * d) - 1 > 0


# ------------------------------------------------------------------ sampler


def test_sampler_region_and_axes():
    d = 0.1
    samples = sample_unitary_noise(d, 2000, seed=3)
    for s in samples:
        assert abs(s.phi / 2 + s.alpha) <= d + 1e-15
        assert abs(s.phi / 2 - s.alpha) <= d + 1e-15
        assert abs(s.phi) <= 2 * d + 1e-15 and abs(s.alpha) <= d + 1e-15
        assert sum(c * c for c in s.axis) == pytest.approx(1.0, abs=1e-12)


def test_sampler_determinism_and_rate():
    a = sample_unitary_noise(0.2, 50, seed=7)
    b = sample_unitary_noise(0.2, 50, seed=7)
    assert a == b
    _, rate = sample_unitary_noise(0.2, 500, seed=7, with_stats=True)
    assert 0 < rate <= 1


def test_sampler_domain():
    with pytest.raises(DomainError):
        sample_unitary_noise(0.0, 10, seed=0)
    with pytest.raises(ValueError):
        sample_unitary_noise(0.1, 0, seed=0)


def test_sampler_phi_moment_matches_quadrature():
    d = math.pi
    n = 10**5
    samples = sample_unitary_noise(d, n, seed=11)
    vals = np.array([math.sin(s.phi / 2) ** 2 for s in samples])
    nrm = region_integral(d, lambda phi, a: math.sin(phi / 2) ** 2)
    target = region_integral(d, lambda phi, a: math.sin(phi / 2) ** 4) / nrm
    sigma = vals.std() / math.sqrt(n)
    assert abs(vals.mean() - target) <= 3 * sigma


def test_sampler_axis_symmetry():
    samples = sample_unitary_noise(0.05, 10**4, seed=13)
    nz = np.array([s.axis[2] for s in samples])
    assert abs(nz.mean()) <= 3 * nz.std() / math.sqrt(nz.size)


# ------------------------------------------------------------------ channel


def test_average_channel_identity_exact():
    for d in (0.1, 0.7):
        out = average_channel_mc(d, np.eye(2), 500, seed=1)
        assert np.allclose(out, np.eye(2), atol=1e-12)


def test_average_channel_delta_zero_is_identity_map():
    A = np.array([[0.3, 1j], [2, -1]], dtype=complex)
    assert np.array_equal(average_channel_mc(0.0, A, 10, seed=0), A)


def test_average_channel_sigma_z():
    d = 0.1
    n = 2 * 10**5
    out = average_channel_mc(d, SIGMA_Z, n, seed=5)
    scale = 1 - depolarizing_p_effective(d)
    # traceless input: depolarizing just rescales; MC error ~ 1/sqrt(n)
    assert np.linalg.norm(out - scale * SIGMA_Z) <= 5 / math.sqrt(n)
    assert scale == pytest.approx(1 - 0.005333, abs=2e-4)


def test_average_channel_projector():
    d = 0.2
    n = 2 * 10**5
    proj = np.array([[1, 0], [0, 0]], dtype=complex)
    out = average_channel_mc(d, proj, n, seed=6)
    p = 8 * d**2 / 15
    assert np.linalg.norm(out - depolarize_map(proj, p)) <= max(5 / math.sqrt(n), 2 * d**4)


def test_average_channel_batch_invariance():
    A = np.array([[0.2, 0.5 - 0.25j], [0.5 + 0.25j, 0.8]])
    a = average_channel_mc(0.3, A, 3000, seed=9, batch=1000)
    b1 = average_channel_mc(0.3, A, 1000, seed=9, batch=1000)
    # batch 0 alone must match the first batch of the 3-batch run
    rng_a = average_channel_mc(0.3, A, 1000, seed=9, batch=2000)
    assert np.allclose(b1, rng_a)
    assert a.shape == (2, 2)


def test_mc_ptm_matches_depolarizing():
    d = 0.2
    ptm, se = mc_ptm_with_stats(d, 10**5, seed=21)
    p_eff = depolarizing_p_effective(d)
    target = np.diag([1.0, 1 - p_eff, 1 - p_eff, 1 - p_eff])
    sigma = math.sqrt(float((se * se).sum()))
    assert np.linalg.norm(ptm - target) <= max(3 * sigma, 2 * d**4)
    # trace preservation and unitality: first row and column exact/clean
    assert np.allclose(ptm[0], [1, 0, 0, 0], atol=1e-12)
    assert np.allclose(ptm[1:, 0], 0, atol=3 * se[1:, 0].max() + 1e-12)


def test_validate_noise_report():
    rep = validate_noise_report(0.1, 5 * 10**4, seed=2)
    assert set(rep) >= {
        "delta",
        "p_formula",
        "p_fitted_from_mc",
        "ptm_distance",
        "samples",
    }
    assert rep["p_fitted_from_mc"] == pytest.approx(rep["p_formula"], abs=0.01)
    assert rep["ptm_distance"] <= max(3 * rep["ptm_sigma"], 2 * 0.1**4)


# ------------------------------------------------------------------- bounds


def test_eps_tot_bound_frozen():
    assert eps_tot_bound(0.0, 10**6) == 0.0
    assert eps_tot_bound(1.0, 1) == 2.0
    assert eps_tot_bound(0.01, 100) == pytest.approx(1.267937, abs=1e-5)


def test_triangle_bound_frozen():
    assert triangle_bound(0.0, 1000) == (0.0, 0.0)
    assert triangle_bound(0.1, 1) == (0.2, 0.2)
    clamped, raw = triangle_bound(1e-3, 1000)
    assert clamped == 2.0 and raw == 2.0
    clamped, raw = triangle_bound(0.01, 1000)
    assert clamped == 2.0 and raw == 20.0


def test_energy_error_bounds_frozen():
    assert energy_error_bounds(0.0, 100, 5.0) == (0.0, 0.0)
    averaged, naive = energy_error_bounds(1e-3, 1000, 1.0)
    assert naive == pytest.approx(2.0)
    assert averaged == pytest.approx(1.066e-3, rel=1e-2)


def test_energy_bounds_averaged_below_naive():
    rng = np.random.default_rng(0)
    for _ in range(200):
        eps = rng.uniform(1e-6, 0.5)
        L = int(rng.integers(1, 10**6))
        averaged, naive = energy_error_bounds(eps, L, 1.0)
        assert averaged <= naive + 1e-12


# ----------------------------------------------------------------- variance


def test_variance_trace_norm_frozen():
    assert variance_trace_norm(0.0, np.eye(2)) == 0.0
    assert variance_trace_norm(0.1, np.eye(2)) == pytest.approx(0.0, abs=1e-14)
    assert variance_trace_norm(0.1, SIGMA_X) == pytest.approx(0.38, abs=1e-12)


@pytest.mark.parametrize(
    "name,A",
    [
        ("identity", np.eye(2, dtype=complex)),
        ("sigma_x", SIGMA_X),
        ("projector", np.array([[1, 0], [0, 0]], dtype=complex)),
        (
            "random",
            np.array(
                [[0.3 + 0.1j, -0.7 + 0.2j], [0.4 - 0.6j, 0.9 + 0.05j]], dtype=complex
            ),
        ),
    ],
)
def test_variance_mc_within_three_sigma(name, A):
    p = 0.1
    target = variance_trace_norm(p, A)
    runs = np.array(
        [variance_trace_norm_mc(p, A, 2 * 10**4, seed=s) for s in range(8)]
    )
    sigma = runs.std(ddof=1) / math.sqrt(len(runs))
    assert abs(runs.mean() - target) <= 3 * sigma + 1e-9, name
