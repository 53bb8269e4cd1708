import itertools
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffordt.grid import EpsRegionQuery, enumerate_u_candidates, solve_interval_grid
from cliffordt.rings import SQRT2, DOmega, ZOmega, ZRootTwo


def grid_brute_force(int_a, int_b, bound=60):
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            z = ZRootTwo(a, b)
            if (
                z.cmp_fraction(Fraction(int_a[0])) >= 0
                and z.cmp_fraction(Fraction(int_a[1])) <= 0
                and z.conj_sq2().cmp_fraction(Fraction(int_b[0])) >= 0
                and z.conj_sq2().cmp_fraction(Fraction(int_b[1])) <= 0
            ):
                out.append(z)
    return sorted(out, key=lambda z: z.to_float())


def test_grid_unit_square():
    assert list(solve_interval_grid((0, 1), (0, 1))) == [ZRootTwo(0, 0), ZRootTwo(1, 0)]


def test_grid_sqrt2_window():
    assert list(solve_interval_grid((1.3, 1.5), (-1.5, -1.3))) == [ZRootTwo(0, 1)]


def test_grid_incompatible_conjugate():
    assert list(solve_interval_grid((0, 0), (5, 6))) == []


@given(
    st.floats(-20, 20),
    st.floats(0.01, 10),
    st.floats(-20, 20),
    st.floats(0.01, 10),
)
@settings(max_examples=60, deadline=None)
def test_grid_matches_brute_force(a0, wa, b0, wb):
    int_a, int_b = (a0, a0 + wa), (b0, b0 + wb)
    got = list(solve_interval_grid(int_a, int_b))
    assert got == grid_brute_force(int_a, int_b)


def test_grid_unbalanced_intervals():
    # widths differ by orders of magnitude; λ-rescaling must keep this fast
    int_a, int_b = (0.0, 0.001), (-50.0, 50.0)
    got = list(solve_interval_grid(int_a, int_b))
    assert got == grid_brute_force(int_a, int_b)
    for z in got:
        assert 0 <= z.to_float() <= 0.001
        assert -50 <= z.conj_sq2().to_float() <= 50


def region_brute_force(theta, k, eps_tilde, tol=1e-12):
    """Exhaustive scan over numerator coefficients in [−2^{k+1}, 2^{k+1}]."""
    bound = 2 ** (k + 1)
    h = 1 - eps_tilde**2 / 2
    phase = complex(math.cos(theta / 2), math.sin(theta / 2))
    out = set()
    for a, b, c, d in itertools.product(range(-bound, bound + 1), repeat=4):
        w = ZOmega(a, b, c, d)
        if w.norm_cc().cmp_fraction(Fraction(2**k)) > 0:
            continue
        if w.conj_sq2().norm_cc().cmp_fraction(Fraction(2**k)) > 0:
            continue
        u = w.to_complex() / SQRT2**k
        if (u * phase).real >= h - tol:
            out.add(DOmega(w, k))
    return out


@pytest.mark.parametrize(
    "theta,k,eps_tilde",
    [
        (0.0, 1, 0.5),
        (math.pi / 2, 1, 0.5),
        (0.7, 2, 0.8),
        (2.1, 3, 0.6),
        (5.9, 3, 1.2),
        (0.3, 4, 0.4),
    ],
)
def test_candidates_match_brute_force(theta, k, eps_tilde):
    got = set(enumerate_u_candidates(EpsRegionQuery(theta, k, eps_tilde)))
    want = region_brute_force(theta, k, eps_tilde)
    assert want - got == set()
    assert got - want == set()


def test_candidate_identity_present():
    cands = enumerate_u_candidates(EpsRegionQuery(0.0, 1, 0.1))
    assert DOmega.from_int(1) in cands


def test_candidate_exact_quarter_rotation():
    # e^{−iπ/4} = (1 − ω²)/√2 lies exactly in the region for θ = π/2
    cands = enumerate_u_candidates(EpsRegionQuery(math.pi / 2, 1, 0.1))
    target = complex(math.cos(math.pi / 4), -math.sin(math.pi / 4))
    assert any(abs(u.to_complex() - target) < 1e-12 for u in cands)


def test_candidate_empty_for_tight_tolerance():
    assert enumerate_u_candidates(EpsRegionQuery(0.01, 3, 1e-6)) == []


def test_candidate_monotone_in_eps_tilde():
    small = set(enumerate_u_candidates(EpsRegionQuery(0.9, 3, 0.3)))
    large = set(enumerate_u_candidates(EpsRegionQuery(0.9, 3, 0.6)))
    assert small <= large


def test_candidate_soundness_high_precision():
    q = EpsRegionQuery(1.234, 6, 0.2)
    cands = enumerate_u_candidates(q)
    assert cands
    with mpmath.workdps(50):
        phase = mpmath.exp(1j * mpmath.mpf(q.theta) / 2)
        for u in cands:
            assert u.norm_cc().cmp_fraction(Fraction(1)) <= 0
            re = (u.to_mpc() * phase).real
            assert re >= 1 - q.eps_tilde**2 / 2 - 2 * q.tol


def test_candidate_determinism():
    q = EpsRegionQuery(2.345, 7, 0.15)
    assert enumerate_u_candidates(q) == enumerate_u_candidates(q)
