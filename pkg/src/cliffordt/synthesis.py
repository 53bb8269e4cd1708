"""Best Clifford+T approximation of Rz(θ) within a fixed T-gate budget N_T.

The loop enumerates candidate entries u at denominator exponent
k = ⌊N_T/2⌋ + 1 inside the ε̃-region, solves the norm equation
tt† = 1 − uu† for each in ascending order of achieved error, and keeps the
first success (= the minimum-error decomposition); an empty or fully
unsolvable round doubles ε̃ and retries.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import mpmath

from .diophantine import solve_norm_equation
from .errors import BudgetInfeasible
from .exact_synthesis import decompose_best, t_count
from .grid import EpsRegionQuery, enumerate_u_candidates
from .rings import OMEGA_POWERS, DOmega, DReal

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class SynthesisRequest:
    theta: float
    n_t: int
    eps_tilde_init: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_t < 1:
            raise ValueError("T budget must be >= 1")

    @property
    def eps_tilde_start(self) -> float:
        if self.eps_tilde_init is not None:
            return self.eps_tilde_init
        return min(2.0, 4 * 10 ** (-self.n_t / 10))


@dataclass(frozen=True)
class SynthesisResult:
    theta: float
    n_t: int
    u: DOmega
    t: DOmega
    gates: str
    eps: float
    t_count: int
    eps_tilde_final: float
    candidates_examined: int

    def to_json_dict(self) -> dict:
        return {
            "theta": self.theta,
            "n_t": self.n_t,
            "eps": self.eps,
            "t_count": self.t_count,
            "gates": self.gates,
            "u": str(self.u),
            "t": str(self.t),
            "eps_tilde_final": self.eps_tilde_final,
            "candidates_examined": self.candidates_examined,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def single_gate_error(u: DOmega, theta: float) -> float:
    """Operator-norm distance ‖U(t,u) − Rz(θ)‖ = √(2 − 2·Re(u·e^{iθ/2}))."""
    with mpmath.workdps(40):
        re = (u.to_mpc() * mpmath.exp(1j * mpmath.mpf(theta) / 2)).real
        val = 2 * (1 - re)
        # below double resolution of the angle itself: exact approximant
        if val < 1e-30:
            return 0.0
        return float(mpmath.sqrt(val))


def synthesize_budgeted(req: SynthesisRequest) -> SynthesisResult:
    """Algorithm: enumerate candidates, solve the norm equation, keep min ε."""
    theta = req.theta % (2 * TWO_PI)  # Rz matrix is 4π-periodic
    k = req.n_t // 2 + 1
    # units ω^j realize the eight special angles exactly with zero T gates;
    # return immediately so budget size cannot perturb an exact answer
    for j in range(8):
        u = DOmega.from_zomega(OMEGA_POWERS[j])
        if single_gate_error(u, theta) == 0.0:
            t = DOmega.from_int(0)
            gates, t = decompose_best(u, t)
            return SynthesisResult(
                theta=req.theta,
                n_t=req.n_t,
                u=u,
                t=t,
                gates=gates,
                eps=0.0,
                t_count=t_count(gates),
                eps_tilde_final=req.eps_tilde_start,
                candidates_examined=8,
            )
    eps_tilde = req.eps_tilde_start
    examined = 0
    while True:
        cands = enumerate_u_candidates(EpsRegionQuery(theta, k, eps_tilde))
        scored = sorted(
            ((single_gate_error(u, theta), str(u), u) for u in cands),
            key=lambda x: (x[0], x[1]),
        )
        solved: list[tuple[float, str, DOmega, DOmega]] = []
        for eps, key, u in scored:
            if solved and eps > solved[0][0] + 1e-14:
                break  # sorted: nothing later can beat the current best
            examined += 1
            xi = DReal.from_int(1) - u.norm_cc()
            t = solve_norm_equation(xi, k, seed=req.seed)
            if t is not None:
                solved.append((eps, key, u, t))
        if solved:
            # ties within 1e-14 break on the lexicographically least u
            eps, _, u, t = min(solved, key=lambda x: (x[1],))
            gates, t = decompose_best(u, t)
            return SynthesisResult(
                theta=req.theta,
                n_t=req.n_t,
                u=u,
                t=t,
                gates=gates,
                eps=eps,
                t_count=t_count(gates),
                eps_tilde_final=eps_tilde,
                candidates_examined=examined,
            )
        if eps_tilde >= 2:
            # unreachable in practice: u = ω^j is always a solvable candidate
            raise BudgetInfeasible(
                f"no decomposition for theta={req.theta}, n_t={req.n_t}"
            )
        eps_tilde = min(2.0, 2 * eps_tilde)


def synth_cache(
    angles: list[float], n_t: int, seed: int = 0
) -> dict[float, SynthesisResult]:
    """Synthesize each distinct angle once; results match individual calls."""
    out: dict[float, SynthesisResult] = {}
    for theta in angles:
        if theta not in out:
            out[theta] = synthesize_budgeted(SynthesisRequest(theta, n_t, seed=seed))
    return out
