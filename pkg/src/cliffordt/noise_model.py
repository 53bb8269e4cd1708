"""Averaging of z-rotation decomposition error into depolarizing noise.

A gate error of operator norm ε confines the unitary noise e^{iα}R_n(φ) to
the region |φ/2 ± α| ≤ δ with δ = arccos(1 − ε²/2). Averaging R_n(φ)·A·R_n†(φ)
over that region (weight sin²(φ/2), axis uniform on the sphere) yields a
depolarizing channel; the closed-form channel weights, the depolarizing
probability p = 8δ²/15, total-error and energy bounds, and the variance
operator's trace norm are implemented here together with their Monte-Carlo
estimators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
_ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class NoiseParams:
    eps: float
    delta: float
    p: float
    p_small_eps: float
    small_eps_valid: bool


@dataclass(frozen=True)
class UnitaryNoiseSample:
    alpha: float
    phi: float
    axis: tuple[float, float, float]


def noise_params_from_eps(eps: float) -> NoiseParams:
    """δ = arccos(1 − ε²/2) and depolarizing probability p = 8δ²/15."""
    if not 0 <= eps <= 2:
        raise DomainError("eps must lie in [0, 2]")
    delta = math.acos(max(-1.0, 1 - eps * eps / 2))
    p = 8 * delta * delta / 15
    p_small = 8 * eps * eps / 15
    valid = eps == 0 or abs(delta - eps) / eps < 0.05
    return NoiseParams(eps=eps, delta=delta, p=p, p_small_eps=p_small, small_eps_valid=valid)


def closed_form_weights(delta: float) -> tuple[float, float]:
    """(w_keep, w_flip): the two normalized averaging integrals.

    w_keep = (8δ² + cos4δ − 1)/(16(2δ² + cos2δ − 1)),
    w_flip = (24δ² + 16cos2δ − cos4δ − 15)/(16(2δ² + cos2δ − 1)).
    The δ → 0 limit (1, 0) is returned at δ = 0.
    """
    if not 0 <= delta <= math.pi:
        raise DomainError("delta must lie in [0, pi]")
    if delta == 0:
        return 1.0, 0.0
    # high precision kills the O(δ⁴)/O(δ⁴) cancellation at small δ
    with mpmath.workdps(50):
        d = mpmath.mpf(delta)
        norm = 2 * d**2 + mpmath.cos(2 * d) - 1
        i1 = (8 * d**2 + mpmath.cos(4 * d) - 1) / 16
        i2 = (24 * d**2 + 16 * mpmath.cos(2 * d) - mpmath.cos(4 * d) - 15) / 16
        return float(i1 / norm), float(i2 / norm)


def sample_unitary_noise(
    delta: float, count: int, seed: int, with_stats: bool = False
):
    """Draw (α, φ, axis) with density ∝ sin²(φ/2) on |φ/2 ± α| ≤ δ.

    With ``with_stats=True`` returns (samples, acceptance_rate) where the
    rate is accepted/proposed for the box rejection sampler.
    """
    if not 0 < delta <= math.pi:
        raise DomainError("delta must lie in (0, pi]")
    if count < 1:
        raise ValueError("count must be >= 1")
    a, p, n, rate = _sample_arrays(delta, count, np.random.default_rng(seed))
    samples = [
        UnitaryNoiseSample(float(a[i]), float(p[i]), tuple(map(float, n[i])))
        for i in range(count)
    ]
    return (samples, rate) if with_stats else samples


def _sample_arrays(
    delta: float, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Vectorized rejection sampler: (alpha, phi, axis[count, 3], accept rate)."""
    w_max = 1.0 if delta > math.pi / 2 else math.sin(delta) ** 2
    alphas = np.empty(0)
    phis = np.empty(0)
    proposed = 0
    while alphas.size < count:
        m = max(4 * (count - alphas.size), 1024)
        proposed += m
        a = rng.uniform(-delta, delta, m)
        f = rng.uniform(-2 * delta, 2 * delta, m)
        u = rng.uniform(0, w_max, m)
        keep = (
            (np.abs(f / 2 + a) <= delta)
            & (np.abs(f / 2 - a) <= delta)
            & (u < np.sin(f / 2) ** 2)
        )
        alphas = np.concatenate([alphas, a[keep]])
        phis = np.concatenate([phis, f[keep]])
    accepted = alphas.size
    alphas, phis = alphas[:count], phis[:count]
    axes = rng.normal(size=(count, 3))
    axes /= np.linalg.norm(axes, axis=1, keepdims=True)
    return alphas, phis, axes, accepted / proposed


def _rotation_matrices(phis: np.ndarray, axes: np.ndarray) -> np.ndarray:
    """R_n(φ) = cos(φ/2)·I − i·sin(φ/2)·(n·σ), stacked."""
    c = np.cos(phis / 2)[:, None, None]
    s = np.sin(phis / 2)[:, None, None]
    ns = (
        axes[:, 0, None, None] * SIGMA_X
        + axes[:, 1, None, None] * SIGMA_Y
        + axes[:, 2, None, None] * SIGMA_Z
    )
    return c * _ID2 - 1j * s * ns


def average_channel_mc(
    delta: float, A: np.ndarray, count: int, seed: int, batch: int = 100_000
) -> np.ndarray:
    """Monte-Carlo average of R_n(φ)·A·R_n†(φ) over the noise region.

    Batches use seeds derived from (seed, batch_index), so the aggregate is
    deterministic and independent of how batches are scheduled.
    """
    if delta == 0:
        return np.array(A, dtype=complex)
    A = np.asarray(A, dtype=complex)
    total = np.zeros((2, 2), dtype=complex)
    done = 0
    index = 0
    while done < count:
        m = min(batch, count - done)
        rng = np.random.default_rng([seed, index])
        _, phis, axes, _ = _sample_arrays(delta, m, rng)
        R = _rotation_matrices(phis, axes)
        total += np.einsum("nab,bc,ndc->ad", R, A, R.conj())
        done += m
        index += 1
    return total / count


def depolarizing_p_effective(delta: float) -> float:
    """p with (1−w)A + (w/3)ΣσAσ rewritten as (1−p)A + p·tr(A)I/2: p = 4w_flip/3."""
    return 4 * closed_form_weights(delta)[1] / 3


def mc_ptm_with_stats(
    delta: float, count: int, seed: int, batch: int = 100_000
) -> tuple[np.ndarray, np.ndarray]:
    """Pauli transfer matrix of the Monte-Carlo averaged channel.

    Returns (ptm, standard_error) where each entry's standard error is the
    empirical per-sample deviation / √count, for 3σ acceptance checks.
    """
    basis = (_ID2,) + _PAULIS
    mean = np.zeros((4, 4))
    sq = np.zeros((4, 4))
    done = 0
    index = 0
    while done < count:
        m = min(batch, count - done)
        rng = np.random.default_rng([seed, index])
        _, phis, axes, _ = _sample_arrays(delta, m, rng)
        R = _rotation_matrices(phis, axes)
        for j, sj in enumerate(basis):
            img = np.einsum("nab,bc,ndc->nad", R, sj, R.conj())
            for i, si in enumerate(basis):
                vals = np.einsum("ab,nba->n", si, img).real / 2
                mean[i, j] += vals.sum()
                sq[i, j] += (vals * vals).sum()
        done += m
        index += 1
    mean /= count
    var = np.maximum(sq / count - mean * mean, 0.0)
    return mean, np.sqrt(var / count)


def validate_noise_report(delta: float, count: int, seed: int) -> dict:
    """Compare the MC-averaged channel against the depolarizing model."""
    ptm, se = mc_ptm_with_stats(delta, count, seed)
    p_eff = depolarizing_p_effective(delta)
    target = np.diag([1.0, 1 - p_eff, 1 - p_eff, 1 - p_eff])
    dist = float(np.linalg.norm(ptm - target))
    p_fit = float(1 - (ptm[1, 1] + ptm[2, 2] + ptm[3, 3]) / 3)
    return {
        "delta": delta,
        "p_formula": 8 * delta * delta / 15,
        "p_effective": p_eff,
        "p_fitted_from_mc": p_fit,
        "ptm_distance": dist,
        "ptm_sigma": float(np.sqrt((se * se).sum())),
        "samples": count,
    }


def depolarize_map(A: np.ndarray, p: float) -> np.ndarray:
    """A ↦ (1−p)A + p·tr(A)·I/2."""
    A = np.asarray(A, dtype=complex)
    return (1 - p) * A + p * np.trace(A) * _ID2 / 2


def channel_ptm(channel) -> np.ndarray:
    """Pauli transfer matrix R_ij = tr(σ_i·E(σ_j))/2 over (I, X, Y, Z)."""
    basis = (_ID2,) + _PAULIS
    out = np.empty((4, 4))
    for j, sj in enumerate(basis):
        img = channel(sj)
        for i, si in enumerate(basis):
            out[i, j] = np.trace(si @ img).real / 2
    return out


def eps_tot_bound(p: float, L: int) -> float:
    """Averaged-model trace-distance bound 2(1 − (1−p)^L)."""
    return 2 * (1 - (1 - p) ** L)


def triangle_bound(eps: float, L: int) -> tuple[float, float]:
    """Naive accumulation 2Lε as (clamped to the trace-distance max 2, raw)."""
    raw = 2 * L * eps
    return min(2.0, raw), raw


def energy_error_bounds(eps: float, L: int, h_norm: float) -> tuple[float, float]:
    """(averaged, naive) energy-error bounds 2‖H‖(1−(1−p)^L) and 2‖H‖Lε."""
    p = noise_params_from_eps(eps).p
    averaged = 2 * h_norm * (1 - (1 - p) ** L)
    naive = 2 * h_norm * L * eps
    return averaged, naive


def variance_trace_norm(p: float, A: np.ndarray) -> float:
    """Closed form p((2−p)·tr(A†A) + (p/2 − 1)·|tr A|²)."""
    A = np.asarray(A, dtype=complex)
    tr_aa = np.trace(A.conj().T @ A).real
    tr_a = abs(np.trace(A)) ** 2
    return p * ((2 - p) * tr_aa + (p / 2 - 1) * tr_a)


def variance_trace_norm_mc(
    p: float, A: np.ndarray, count: int, seed: int
) -> float:
    """Trace norm of the sampled variance operator of the depolarizing map.

    The per-shot realization applies a uniform random Pauli with total
    probability 3p/4 (the random-Pauli unraveling whose mean is the
    depolarizing channel with probability p).
    """
    A = np.asarray(A, dtype=complex)
    rng = np.random.default_rng(seed)
    q = 3 * p / 4
    picks = rng.choice(4, size=count, p=[1 - q, q / 3, q / 3, q / 3])
    realizations = [A] + [s @ A @ s for s in _PAULIS]
    mean = np.zeros((2, 2), dtype=complex)
    second = np.zeros((2, 2), dtype=complex)
    for which, times in zip(*np.unique(picks, return_counts=True)):
        B = realizations[which]
        mean += times * B
        second += times * (B @ B.conj().T)
    mean /= count
    second /= count
    var_op = second - mean @ mean.conj().T
    return float(np.sum(np.linalg.svd(var_op, compute_uv=False)))
