"""Sweep/fit/threshold experiment protocol over the molecular fixtures.

For each T-budget N_T the fixture's Trotterized coupled-cluster circuit is
decomposed gate-by-gate into Clifford+T strings, simulated, and compared
against the un-approximated circuit and the exact ground state. On top of
the sweeps: a one-parameter depolarizing-model energy fit, fidelity
thresholds, the quartic T-count regression, and bound comparisons.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .circuits import (
    Circuit,
    Hamiltonian,
    approximate_circuit,
    basis_state,
    build_trotter_ucc,
    expectation,
    fidelity,
    ground_state,
    load_generators,
    load_hamiltonian,
    run_statevector,
)
from .errors import FixtureError, InsufficientData
from .noise_model import noise_params_from_eps

PACKAGED_SYSTEMS = ("h2", "h4", "h6")

SWEEP_COLUMNS = (
    "system",
    "n_qubits",
    "L",
    "n_t",
    "eps_max",
    "eps_mean",
    "total_t_count",
    "energy",
    "fidelity",
    "wall_time_s",
)

BOUNDS_COLUMNS = (
    "system",
    "n_t",
    "eps_max",
    "measured_energy_error",
    "averaged_bound",
    "naive_bound",
)


def format_float(x: float) -> str:
    """Floats rendered with 17 significant digits (round-trip exact)."""
    return format(float(x), ".17g")


def derive_seed(seed: int, n_t: int) -> int:
    """Per-row seed derived deterministically from (seed, N_T)."""
    return int(np.random.SeedSequence([seed, n_t]).generate_state(1)[0])


@dataclass(frozen=True)
class SweepRow:
    system: str
    n_qubits: int
    L: int
    n_t: int
    eps_max: float
    eps_mean: float
    total_t_count: int
    energy: float
    fidelity: float
    wall_time_s: float

    def __post_init__(self) -> None:
        if not (self.eps_max >= self.eps_mean >= 0):
            raise ValueError("eps_max >= eps_mean >= 0 violated")
        if not 0 <= self.fidelity <= 1 + 1e-12:
            raise ValueError("fidelity outside [0, 1]")


@dataclass(frozen=True)
class EnergyFit:
    c: float
    e_ideal: float
    L: int
    residual: float
    n_points: int


@dataclass(frozen=True)
class System:
    name: str
    hamiltonian: Hamiltonian
    generators: list
    meta: dict
    circuit: Circuit = field(compare=False)
    hf_index: int

    @property
    def n_qubits(self) -> int:
        return self.hamiltonian.n_qubits


def _fixture_paths(spec: str) -> tuple[Path, Path]:
    """Resolve --fixture: packaged name, base path, or either fixture file."""
    if spec in PACKAGED_SYSTEMS:
        root = resources.files("cliffordt") / "fixtures"
        return (
            Path(str(root / f"{spec}_hamiltonian.json")),
            Path(str(root / f"{spec}_generators.json")),
        )
    p = str(spec)
    if p.endswith("_hamiltonian.json"):
        base = p[: -len("_hamiltonian.json")]
    elif p.endswith("_generators.json"):
        base = p[: -len("_generators.json")]
    else:
        base = p
    return Path(base + "_hamiltonian.json"), Path(base + "_generators.json")


def load_system(spec: str) -> System:
    ham_path, gen_path = _fixture_paths(spec)
    if not ham_path.exists() or not gen_path.exists():
        raise FixtureError(f"fixture files not found for {spec!r}")
    ham = load_hamiltonian(ham_path)
    n, gens, meta = load_generators(gen_path)
    if n != ham.n_qubits:
        raise FixtureError("Hamiltonian/generator qubit counts differ")
    n_elec = meta.get("n_electrons")
    if not isinstance(n_elec, int) or not 0 < n_elec <= n:
        raise FixtureError("fixture meta lacks a valid n_electrons")
    # reference state: the first n_electrons modes occupied
    hf_index = int("1" * n_elec + "0" * (n - n_elec), 2)
    name = str(meta.get("system", Path(str(gen_path)).stem)).lower()
    return System(
        name=name,
        hamiltonian=ham,
        generators=gens,
        meta=meta,
        circuit=build_trotter_ucc(gens),
        hf_index=hf_index,
    )


def ideal_reference(system: System) -> tuple[float, float, np.ndarray]:
    """(E_ideal, F_ideal, ψ_ideal) of the un-approximated ansatz circuit."""
    psi0 = basis_state(system.n_qubits, system.hf_index)
    psi = run_statevector(system.circuit, psi0)
    e_ideal = expectation(psi, system.hamiltonian)
    _, gs = ground_state(system.hamiltonian)
    return e_ideal, fidelity(psi, gs), psi


def run_sweep(system: System, nt_values: list[int], seed: int = 0) -> list[SweepRow]:
    """One SweepRow per N_T; rows are independent given (seed, N_T)."""
    _, gs = ground_state(system.hamiltonian)
    psi0 = basis_state(system.n_qubits, system.hf_index)
    rows = []
    for n_t in nt_values:
        start = time.perf_counter()
        rep = approximate_circuit(system.circuit, n_t, seed=derive_seed(seed, n_t))
        psi = run_statevector(rep.circuit, psi0)
        energy = expectation(psi, system.hamiltonian)
        fid = min(1.0, fidelity(psi, gs))
        rows.append(
            SweepRow(
                system=system.name,
                n_qubits=system.n_qubits,
                L=system.circuit.L,
                n_t=n_t,
                eps_max=rep.eps_max,
                eps_mean=rep.eps_mean,
                total_t_count=rep.total_t_count,
                energy=energy,
                fidelity=fid,
                wall_time_s=time.perf_counter() - start,
            )
        )
    return rows


def sweep_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.system,
                r.n_qubits,
                r.L,
                r.n_t,
                format_float(r.eps_max),
                format_float(r.eps_mean),
                r.total_t_count,
                format_float(r.energy),
                format_float(r.fidelity),
                format_float(r.wall_time_s),
            ]
        )
    return buf.getvalue()


def rows_from_csv(text: str) -> list[SweepRow]:
    reader = csv.DictReader(io.StringIO(text))
    missing = set(SWEEP_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise FixtureError(f"sweep CSV missing columns {sorted(missing)}")
    rows = []
    for rec in reader:
        rows.append(
            SweepRow(
                system=rec["system"],
                n_qubits=int(rec["n_qubits"]),
                L=int(rec["L"]),
                n_t=int(rec["n_t"]),
                eps_max=float(rec["eps_max"]),
                eps_mean=float(rec["eps_mean"]),
                total_t_count=int(rec["total_t_count"]),
                energy=float(rec["energy"]),
                fidelity=float(rec["fidelity"]),
                wall_time_s=float(rec["wall_time_s"]),
            )
        )
    return sorted(rows, key=lambda r: r.n_t)


# -------------------------------------------------------------- fitting


def model_energy(n_t: float, c: float, e_ideal: float, L: int,
                 abs_model: bool = False) -> float:
    """E_ideal + 2·E_ideal·(1 − (1 − c·ε(N_T)²)^L) with ε(N_T) = 10^{−N_T/10}."""
    eps_sq = 10 ** (-n_t / 5)
    scale = abs(e_ideal) if abs_model else e_ideal
    return e_ideal + 2 * scale * (1 - (1 - c * eps_sq) ** L)


def fit_energy(
    points: list[tuple[int, float]],
    e_ideal: float,
    L: int,
    nt_fit_min: int = 32,
    abs_model: bool = False,
) -> EnergyFit:
    """Golden-section minimization of the RMS residual over log10(c)."""
    fit_pts = [(n_t, e) for n_t, e in points if n_t >= nt_fit_min]
    if len(fit_pts) < 4:
        raise InsufficientData(
            f"{len(fit_pts)} points with N_T >= {nt_fit_min}; need >= 4"
        )

    def rms(log_c: float) -> float:
        c = 10**log_c
        sq = [
            (model_energy(n_t, c, e_ideal, L, abs_model) - e) ** 2
            for n_t, e in fit_pts
        ]
        return math.sqrt(sum(sq) / len(sq))

    lo, hi = -4.0, 4.0
    inv_phi = (math.sqrt(5) - 1) / 2
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = rms(x1), rms(x2)
    while hi - lo > 1e-6:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = rms(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = rms(x2)
    log_c = (lo + hi) / 2
    c = 10**log_c
    return EnergyFit(c=c, e_ideal=e_ideal, L=L, residual=rms(log_c),
                     n_points=len(fit_pts))


def threshold_nt(
    points: list[tuple[int, float]], f_ideal: float, rel_tol: float = 1e-4
) -> tuple[int | None, int | None]:
    """(stable, first_crossing) N_T with δ_rel = |F − F_ideal|/F_ideal < tol.

    first_crossing: smallest sampled N_T meeting the criterion. stable:
    smallest sampled N_T such that it and every larger sampled N_T meet it.
    """
    if f_ideal <= 0:
        raise InsufficientData("F_ideal must be positive")
    pts = sorted(points)
    ok = [abs(f - f_ideal) / f_ideal < rel_tol for _, f in pts]
    first = next((pts[i][0] for i in range(len(pts)) if ok[i]), None)
    stable = None
    for i in range(len(pts)):
        if all(ok[i:]):
            stable = pts[i][0]
            break
    return stable, first


def quartic_fit(points: list[tuple[int, float]]) -> float:
    """Least-squares a for y = a·n⁴: a = Σn⁴y / Σn⁸."""
    if len(points) < 2:
        raise InsufficientData("need >= 2 points for the quartic fit")
    num = sum(n**4 * y for n, y in points)
    den = sum(n**8 for n, y in points)
    return num / den


def quartic_extrapolate(a: float, n: int) -> float:
    return a * n**4


# ---------------------------------------------------------------- bounds


def compare_bounds(
    system: System, nt_values: list[int], seed: int = 0
) -> list[dict]:
    """Per N_T: measured |ΔE| vs averaged and naive (triangle) energy bounds."""
    e_ideal, _, _ = ideal_reference(system)
    psi0 = basis_state(system.n_qubits, system.hf_index)
    h_norm = system.hamiltonian.h_norm_bound
    L = system.circuit.L
    out = []
    for n_t in nt_values:
        rep = approximate_circuit(system.circuit, n_t, seed=derive_seed(seed, n_t))
        psi = run_statevector(rep.circuit, psi0)
        energy = expectation(psi, system.hamiltonian)
        eps = rep.eps_max
        p = noise_params_from_eps(eps).p
        out.append(
            {
                "system": system.name,
                "n_t": n_t,
                "eps_max": eps,
                "measured_energy_error": abs(energy - e_ideal),
                "averaged_bound": 2 * h_norm * (1 - (1 - p) ** L),
                "naive_bound": 2 * h_norm * L * eps,
            }
        )
    return out


def bounds_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BOUNDS_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r["system"],
                r["n_t"],
                format_float(r["eps_max"]),
                format_float(r["measured_energy_error"]),
                format_float(r["averaged_bound"]),
                format_float(r["naive_bound"]),
            ]
        )
    return buf.getvalue()


def log_slope(points: list[tuple[int, float]]) -> float:
    """Least-squares slope of log10(y) versus x (zero/negative y skipped)."""
    xs = [x for x, y in points if y > 0]
    ys = [math.log10(y) for _, y in points if y > 0]
    if len(xs) < 2:
        raise InsufficientData("need >= 2 positive points for a log slope")
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    denom = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / denom
