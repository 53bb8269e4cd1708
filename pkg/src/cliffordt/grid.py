"""Grid enumeration: candidate upper-left entries u for a budgeted synthesis.

A candidate is u = w/√2^k with w ∈ Z[ω], constrained to the region
Re(u·e^{iθ/2}) ≥ 1 − ε̃²/2 (u approximates e^{−iθ/2}, the upper-left entry
of Rz(θ)), |u| ≤ 1, together with |u•| ≤ 1 for the
√2-conjugate (required for the norm equation tt† = 1 − uu† to admit a
solution, and what makes the candidate set finite).

Lattice decomposition: writing w = aω³ + bω² + cω + d, the pair
x := √2·Re(w) = (c−a) + d√2 and y := √2·Im(w) = (c+a) + b√2 ranges over
{(x, y) ∈ Z[√2]² : x₁ ≡ y₁ (mod 2)}, and conjugation acts componentwise.
We therefore enumerate x by a one-dimensional grid problem over the region's
real-axis projection, then solve a second one-dimensional grid problem for y
on each x-slice, filtering the parity constraint on reconstruction.

Interval bounds are floating with a guard-band widening, so rounding can only
admit borderline lattice points; every candidate is then re-verified with
exact ring arithmetic (the two disc constraints) and high-precision
evaluation (the Re-constraint) before being emitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import mpmath

from .errors import CandidateLimitExceeded
from .rings import LAMBDA, LAMBDA_INV, SQRT2, DOmega, ZOmega, ZRootTwo

_LOG_LAMBDA = math.log(1 + SQRT2)


@dataclass(frozen=True)
class EpsRegionQuery:
    """Region query for angle theta at denominator exponent k = ⌊N_T/2⌋+1."""

    theta: float
    k: int
    eps_tilde: float
    tol: float = 1e-12
    max_candidates: int = 10**6

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("denominator exponent must be >= 1")
        if not 0 < self.eps_tilde <= 2:
            raise ValueError("eps_tilde must lie in (0, 2]")


def _to_fraction(x: float | int | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _grid_points(
    a_lo: Fraction, a_hi: Fraction, b_lo: Fraction, b_hi: Fraction
) -> Iterator[ZRootTwo]:
    """All β ∈ Z[√2] with β ∈ [a_lo, a_hi] and β• ∈ [b_lo, b_hi], unsorted.

    The iteration ranges are derived in floating point after rescaling by a
    power of the fundamental unit λ = 1+√2 (which balances the two interval
    widths and keeps the ranges short), widened by a safety margin; exact
    membership is checked per point, so the float step cannot overreport.
    """
    if a_hi < a_lo or b_hi < b_lo:
        return
    wa = float(a_hi - a_lo)
    wb = float(b_hi - b_lo)
    # balance widths: scaling A by λ^m multiplies wa by λ^m and wb by λ^{-m}
    m = round(math.log(max(wb, 1e-300) / max(wa, 1e-300)) / (2 * _LOG_LAMBDA))
    m = max(-512, min(512, m))
    lam_m = (1 + SQRT2) ** m
    sa_lo, sa_hi = float(a_lo) * lam_m, float(a_hi) * lam_m
    # λ• = −1/λ flips interval orientation for odd m
    sb_lo, sb_hi = float(b_lo) / lam_m, float(b_hi) / lam_m
    if m % 2:
        sb_lo, sb_hi = -sb_hi, -sb_lo
    unscale = LAMBDA_INV**m if m >= 0 else LAMBDA ** (-m)

    pad = 2.0 + 1e-9 * max(abs(sa_lo), abs(sa_hi), abs(sb_lo), abs(sb_hi))
    b_min = math.floor((sa_lo - sb_hi) / (2 * SQRT2) - pad)
    b_max = math.ceil((sa_hi - sb_lo) / (2 * SQRT2) + pad)
    for b in range(b_min, b_max + 1):
        t = b * SQRT2
        lo = max(sa_lo - t, sb_lo + t) - pad
        hi = min(sa_hi - t, sb_hi + t) + pad
        for a in range(math.ceil(lo), math.floor(hi) + 1):
            beta = ZRootTwo(a, b) * unscale
            if (
                beta.cmp_fraction(a_lo) >= 0
                and beta.cmp_fraction(a_hi) <= 0
                and beta.conj_sq2().cmp_fraction(b_lo) >= 0
                and beta.conj_sq2().cmp_fraction(b_hi) <= 0
            ):
                yield beta


def solve_interval_grid(
    int_a: tuple[float | Fraction, float | Fraction],
    int_b: tuple[float | Fraction, float | Fraction],
) -> Iterator[ZRootTwo]:
    """Yield every β ∈ Z[√2] with β ∈ int_a and β• ∈ int_b, ascending in β."""
    a_lo, a_hi = (_to_fraction(v) for v in int_a)
    b_lo, b_hi = (_to_fraction(v) for v in int_b)
    yield from sorted(
        _grid_points(a_lo, a_hi, b_lo, b_hi), key=lambda z: z.to_float()
    )


def _x_projection(theta_half: float, h: float) -> tuple[float, float]:
    """Range of Re(u) over the region {|u| ≤ 1, Re(u e^{−iθ/2}) ≥ h}."""
    if h <= -1:
        return -1.0, 1.0
    phi_m = math.acos(min(1.0, max(-1.0, h)))
    lo_ang, hi_ang = theta_half - phi_m, theta_half + phi_m
    # X is extremal at the arc endpoints or where the arc crosses angle 0 / π;
    # the chord interior is linear in X so it adds nothing
    xs = [math.cos(lo_ang), math.cos(hi_ang)]
    for target in (0.0, math.pi, -math.pi, 2 * math.pi, -2 * math.pi):
        if lo_ang <= target <= hi_ang:
            xs.append(math.cos(target))
    return min(xs), max(xs)


def enumerate_u_candidates(q: EpsRegionQuery) -> list[DOmega]:
    """All u = w/√2^k in the ε̃-region with |u| ≤ 1 and |u•| ≤ 1.

    Deterministic order: ascending numerator coefficient tuple (a, b, c, d).
    """
    k = q.k
    scale = SQRT2 ** (k + 1)  # x = scale·Re(u), y = scale·Im(u)
    scale_sq = 2 ** (k + 1)
    # region center is the target phase e^{−iθ/2}
    theta_half = -q.theta / 2
    h = 1 - q.eps_tilde**2 / 2
    c_t, s_t = math.cos(theta_half), math.sin(theta_half)
    guard = q.tol * scale + 1e-9

    x_lo_u, x_hi_u = _x_projection(theta_half, h)
    # clamp to the disc with the guard kept, so boundary lattice points
    # (e.g. exact units, whose conjugates sit exactly on |u•| = 1) survive
    # float rounding; the exact disc checks below prune any overreach
    ax = (
        Fraction(max(-scale - guard, x_lo_u * scale - guard)),
        Fraction(min(scale + guard, x_hi_u * scale + guard)),
    )
    bx = (Fraction(-scale - guard), Fraction(scale + guard))

    one = Fraction(1)
    with mpmath.workdps(40):
        phase = mpmath.exp(-1j * mpmath.mpf(theta_half))
        h_mp = mpmath.mpf(1) - mpmath.mpf(q.eps_tilde) ** 2 / 2
        inv_scale_mp = mpmath.mpf(2) ** (-mpmath.mpf(k) / 2)
        out: list[DOmega] = []
        examined = 0
        for x in _grid_points(*ax, *bx):
            xv = x.to_float()
            xc = x.conj_sq2().to_float()
            # circle slice |Im u| ≤ √(1 − Re²), same for the conjugate
            rad_sq = scale_sq - xv * xv
            rad_c_sq = scale_sq - xc * xc
            if rad_sq < -guard or rad_c_sq < -guard:
                continue
            rad = math.sqrt(max(0.0, rad_sq)) + guard
            rad_c = math.sqrt(max(0.0, rad_c_sq)) + guard
            y_lo, y_hi = -rad, rad
            # half-plane constraint X·cos + Y·sin ≥ h, in scaled units
            if abs(s_t) > 1e-9:
                bound = (h * scale - xv * c_t) / s_t
                if s_t > 0:
                    y_lo = max(y_lo, bound - guard)
                else:
                    y_hi = min(y_hi, bound + guard)
            elif xv * c_t < h * scale - guard:
                continue
            for y in _grid_points(
                Fraction(y_lo), Fraction(y_hi), Fraction(-rad_c), Fraction(rad_c)
            ):
                if (x.a - y.a) % 2:
                    continue  # parity class outside the Z[ω] image
                w = ZOmega((y.a - x.a) // 2, y.b, (y.a + x.a) // 2, x.b)
                examined += 1
                if examined > q.max_candidates:
                    raise CandidateLimitExceeded(
                        f"more than {q.max_candidates} grid candidates"
                    )
                # exact disc membership for the value and its conjugate
                if w.norm_cc().cmp_fraction(Fraction(scale_sq // 2)) > 0:
                    continue
                if w.conj_sq2().norm_cc().cmp_fraction(Fraction(scale_sq // 2)) > 0:
                    continue
                re_u = (w.to_mpc() * phase).real * inv_scale_mp
                if re_u < h_mp - q.tol:
                    continue
                out.append(DOmega(w, k))
    out.sort(key=lambda u: (u.numerator_at(k).a, u.numerator_at(k).b,
                            u.numerator_at(k).c, u.numerator_at(k).d))
    return out
