"""n-qubit circuits: Pauli-rotation compilation, dense simulation, energies.

Conventions (pinned by tests):
- Rz(θ) = diag(e^{−iθ/2}, e^{+iθ/2}); a fragment for exp(i·a·P) therefore
  contains Rz(−2a).
- Qubit 0 is the leftmost character of a PauliString label and the most
  significant bit of the amplitude index.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    FixtureError,
    IdentityPauli,
    NonUnitaryEvent,
    TooManyQubits,
)
from .exact_synthesis import gate_string_to_matrix, t_count
from .synthesis import SynthesisRequest, SynthesisResult, synthesize_budgeted

MAX_STATEVECTOR_QUBITS = 20
MAX_DENSITY_QUBITS = 10
MAX_GROUND_STATE_QUBITS = 12

_PAULI_CHARS = "IXYZ"


@dataclass(frozen=True)
class PauliString:
    label: str

    def __post_init__(self) -> None:
        if not self.label or any(c not in _PAULI_CHARS for c in self.label):
            raise DomainError(f"bad Pauli label {self.label!r}")

    @property
    def n_qubits(self) -> int:
        return len(self.label)

    @property
    def is_identity(self) -> bool:
        return set(self.label) == {"I"}


@dataclass(frozen=True)
class Hamiltonian:
    n_qubits: int
    terms: tuple[tuple[PauliString, float], ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        for p, _ in self.terms:
            if p.n_qubits != self.n_qubits:
                raise DimensionMismatch(
                    f"term {p.label} does not act on {self.n_qubits} qubits"
                )

    @property
    def h_norm_bound(self) -> float:
        """Operator-norm upper bound Σ|coeff| (triangle inequality)."""
        return float(sum(abs(c) for _, c in self.terms))


# ------------------------------------------------------------- gate events


@dataclass(frozen=True)
class NamedClifford:
    name: str  # H | S | Sdg | X | Y | Z | CNOT
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class Rz:
    qubit: int
    angle: float


@dataclass(frozen=True)
class GateStringGate:
    qubit: int
    gates: str


@dataclass(frozen=True)
class Depolarize:
    qubit: int
    p: float


Event = NamedClifford | Rz | GateStringGate | Depolarize


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    events: tuple[Event, ...]

    def __post_init__(self) -> None:
        for ev in self.events:
            qubits = ev.qubits if isinstance(ev, NamedClifford) else (ev.qubit,)
            for q in qubits:
                if not 0 <= q < self.n_qubits:
                    raise DimensionMismatch(f"qubit {q} out of range in {ev}")

    @property
    def L(self) -> int:
        """Number of parametrized z-rotations."""
        return sum(isinstance(ev, Rz) for ev in self.events)

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.n_qubits != other.n_qubits:
            raise DimensionMismatch("qubit counts differ")
        return Circuit(self.n_qubits, self.events + other.events)


# ------------------------------------------------------------- compilation


def compile_pauli_rotation(pauli: PauliString, angle: float) -> Circuit:
    """Circuit fragment implementing exp(i·angle·P) exactly.

    Basis changes map each local X/Y to Z, a CNOT chain folds parities onto
    the last active qubit, and one Rz(−2·angle) carries the rotation.
    """
    if pauli.is_identity:
        raise IdentityPauli(pauli.label)
    n = pauli.n_qubits
    active = [q for q, c in enumerate(pauli.label) if c != "I"]
    pre: list[Event] = []
    for q in active:
        c = pauli.label[q]
        if c == "X":
            pre.append(NamedClifford("H", (q,)))
        elif c == "Y":
            # Sdg then H conjugates Y to Z
            pre.append(NamedClifford("Sdg", (q,)))
            pre.append(NamedClifford("H", (q,)))
    ladder = [
        NamedClifford("CNOT", (active[i], active[i + 1]))
        for i in range(len(active) - 1)
    ]
    post: list[Event] = []
    for q in reversed(active):
        c = pauli.label[q]
        if c == "X":
            post.append(NamedClifford("H", (q,)))
        elif c == "Y":
            post.append(NamedClifford("H", (q,)))
            post.append(NamedClifford("S", (q,)))
    events = pre + ladder + [Rz(active[-1], -2 * angle)] + ladder[::-1] + post
    return Circuit(n, tuple(events))


def build_trotter_ucc(generators: list[tuple[PauliString, float]]) -> Circuit:
    """First-order Trotter product of exp(i·θ·P) factors, in the given order."""
    if not generators:
        return Circuit(1, ())
    n = generators[0][0].n_qubits
    circ = Circuit(n, ())
    for pauli, theta in generators:
        circ = circ + compile_pauli_rotation(pauli, theta)
    return circ


@dataclass(frozen=True)
class ApproximationReport:
    circuit: Circuit
    total_t_count: int
    eps_max: float
    eps_mean: float
    per_angle: dict[float, SynthesisResult] = field(compare=False)


def approximate_circuit(c: Circuit, n_t: int, seed: int = 0) -> ApproximationReport:
    """Replace each Rz by its best T-budget gate-string approximation."""
    for ev in c.events:
        if isinstance(ev, (Depolarize, GateStringGate)):
            raise DomainError(f"cannot approximate circuit containing {ev}")
    cache: dict[float, SynthesisResult] = {}
    events: list[Event] = []
    eps_list: list[float] = []
    total = 0
    for ev in c.events:
        if isinstance(ev, Rz):
            if ev.angle not in cache:
                cache[ev.angle] = synthesize_budgeted(
                    SynthesisRequest(ev.angle, n_t, seed=seed)
                )
            res = cache[ev.angle]
            events.append(GateStringGate(ev.qubit, res.gates))
            eps_list.append(res.eps)
            total += res.t_count
        else:
            events.append(ev)
    eps_max = max(eps_list, default=0.0)
    eps_mean = sum(eps_list) / len(eps_list) if eps_list else 0.0
    return ApproximationReport(
        circuit=Circuit(c.n_qubits, tuple(events)),
        total_t_count=total,
        eps_max=eps_max,
        eps_mean=eps_mean,
        per_angle=cache,
    )


def depolarized_model_circuit(c: Circuit, p: float) -> Circuit:
    """Insert a depolarizing channel after every z-rotation."""
    events: list[Event] = []
    for ev in c.events:
        events.append(ev)
        if isinstance(ev, Rz):
            events.append(Depolarize(ev.qubit, p))
    return Circuit(c.n_qubits, tuple(events))


# -------------------------------------------------------------- simulation

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_1Q_GATES = {
    "H": _H,
    "S": _S,
    "Sdg": _S.conj(),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
}
_CNOT = np.eye(4, dtype=complex)[[0, 1, 3, 2]]


def _rz_matrix(angle: float) -> np.ndarray:
    return np.diag([cmath.exp(-1j * angle / 2), cmath.exp(1j * angle / 2)])


def _gate_string_matrix(gates: str) -> np.ndarray:
    m = gate_string_to_matrix(gates)
    return np.array(
        [[m[0].to_complex(), m[1].to_complex()], [m[2].to_complex(), m[3].to_complex()]]
    )


def _apply_1q(state: np.ndarray, U: np.ndarray, q: int, n: int) -> np.ndarray:
    t = state.reshape((2,) * n)
    t = np.moveaxis(np.tensordot(U, t, axes=([1], [q])), 0, q)
    return t.reshape(state.shape)


def _apply_2q(state: np.ndarray, U4: np.ndarray, q0: int, q1: int, n: int) -> np.ndarray:
    t = state.reshape((2,) * n)
    U = U4.reshape(2, 2, 2, 2)
    t = np.tensordot(U, t, axes=([2, 3], [q0, q1]))
    t = np.moveaxis(t, [0, 1], [q0, q1])
    return t.reshape(state.shape)


def _event_unitary(ev: Event) -> tuple[np.ndarray, tuple[int, ...]]:
    if isinstance(ev, NamedClifford):
        if ev.name == "CNOT":
            return _CNOT, ev.qubits
        return _1Q_GATES[ev.name], ev.qubits
    if isinstance(ev, Rz):
        return _rz_matrix(ev.angle), (ev.qubit,)
    if isinstance(ev, GateStringGate):
        return _gate_string_matrix(ev.gates), (ev.qubit,)
    raise NonUnitaryEvent(str(ev))


def run_statevector(c: Circuit, initial: np.ndarray) -> np.ndarray:
    """Apply all (unitary) events to a dense statevector."""
    if c.n_qubits > MAX_STATEVECTOR_QUBITS:
        raise TooManyQubits(f"{c.n_qubits} > {MAX_STATEVECTOR_QUBITS}")
    state = np.asarray(initial, dtype=complex)
    if state.size != 2**c.n_qubits:
        raise DimensionMismatch("statevector size mismatch")
    for ev in c.events:
        U, qs = _event_unitary(ev)
        if len(qs) == 1:
            state = _apply_1q(state, U, qs[0], c.n_qubits)
        else:
            state = _apply_2q(state, U, qs[0], qs[1], c.n_qubits)
    return state


def run_density(c: Circuit, initial: np.ndarray) -> np.ndarray:
    """Apply events to a density matrix; Depolarize acts as a Pauli twirl.

    ρ ↦ (1−p)ρ + p·tr_q(ρ)⊗I/2 equals the uniform-Pauli mixture with
    per-Pauli weight p/4 ⊕ keep weight 1−3p/4, which is how it is applied.
    """
    if c.n_qubits > MAX_DENSITY_QUBITS:
        raise TooManyQubits(f"{c.n_qubits} > {MAX_DENSITY_QUBITS}")
    n = c.n_qubits
    dim = 2**n
    rho = np.asarray(initial, dtype=complex)
    if rho.shape != (dim, dim):
        raise DimensionMismatch("density matrix shape mismatch")

    def _tensor_apply(t, U, axes):
        # contract U (inputs last half of its axes) against the given axes
        k = len(axes)
        t = np.tensordot(U.reshape((2,) * (2 * k)), t, axes=(range(k, 2 * k), axes))
        return np.moveaxis(t, range(k), axes)

    def conj_apply(r, U, qs):
        t = r.reshape((2,) * (2 * n))
        t = _tensor_apply(t, U, list(qs))
        t = _tensor_apply(t, U.conj(), [n + q for q in qs])
        return t.reshape(dim, dim)

    for ev in c.events:
        if isinstance(ev, Depolarize):
            q = ev.qubit
            mix = (1 - 3 * ev.p / 4) * rho
            for name in ("X", "Y", "Z"):
                mix += (ev.p / 4) * conj_apply(rho, _1Q_GATES[name], (q,))
            rho = mix
        else:
            U, qs = _event_unitary(ev)
            rho = conj_apply(rho, U, qs)
    return rho


# ------------------------------------------------------------ observables


def _pauli_masks(label: str) -> tuple[int, int, int]:
    """(flip mask, phase mask, #Y) with qubit 0 the most significant bit."""
    n = len(label)
    flip = phase = n_y = 0
    for q, ch in enumerate(label):
        bit = 1 << (n - 1 - q)
        if ch in "XY":
            flip |= bit
        if ch in "ZY":
            phase |= bit
        if ch == "Y":
            n_y += 1
    return flip, phase, n_y


def _parity(values: np.ndarray) -> np.ndarray:
    out = values.copy()
    shift = 1
    while shift < out.itemsize * 8:
        out ^= out >> shift
        shift <<= 1
    return out & 1


def apply_pauli(label: str, state: np.ndarray) -> np.ndarray:
    """P|ψ⟩ via index permutation: P|x⟩ = i^{#Y}(−1)^{x·phase}|x⊕flip⟩."""
    flip, phase, n_y = _pauli_masks(label)
    idx = np.arange(state.size, dtype=np.int64)
    signs = 1.0 - 2.0 * _parity(idx & phase)
    out = np.empty_like(state, dtype=complex)
    out[idx ^ flip] = (1j**n_y) * signs * state
    return out


def expectation(state: np.ndarray, ham: Hamiltonian) -> float:
    """⟨H⟩ for a statevector or a density matrix; asserts a real result."""
    state = np.asarray(state, dtype=complex)
    dim = 2**ham.n_qubits
    total = 0j
    if state.ndim == 1:
        if state.size != dim:
            raise DimensionMismatch("state size mismatch")
        for p, coeff in ham.terms:
            total += coeff * np.vdot(state, apply_pauli(p.label, state))
    elif state.shape == (dim, dim):
        idx = np.arange(dim, dtype=np.int64)
        for p, coeff in ham.terms:
            flip, phase, n_y = _pauli_masks(p.label)
            signs = 1.0 - 2.0 * _parity((idx ^ flip) & phase)
            total += coeff * ((1j**n_y) * signs * state[idx ^ flip, idx]).sum()
    else:
        raise DimensionMismatch("state shape mismatch")
    if abs(total.imag) > 1e-10 * max(1.0, abs(total.real)):
        raise DomainError(f"non-real expectation {total}")
    return float(total.real)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch("statevector shapes differ")
    return float(abs(np.vdot(a, b)) ** 2)


def hamiltonian_matrix(ham: Hamiltonian) -> np.ndarray:
    dim = 2**ham.n_qubits
    idx = np.arange(dim, dtype=np.int64)
    mat = np.zeros((dim, dim), dtype=complex)
    for p, coeff in ham.terms:
        flip, phase, n_y = _pauli_masks(p.label)
        signs = 1.0 - 2.0 * _parity(idx & phase)
        mat[idx ^ flip, idx] += coeff * (1j**n_y) * signs
    return mat


def ground_state(ham: Hamiltonian) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and eigenvector of the dense Hamiltonian."""
    if ham.n_qubits > MAX_GROUND_STATE_QUBITS:
        raise TooManyQubits(f"{ham.n_qubits} > {MAX_GROUND_STATE_QUBITS}")
    mat = hamiltonian_matrix(ham)
    vals, vecs = np.linalg.eigh(mat)
    return float(vals[0]), vecs[:, 0]


def basis_state(n_qubits: int, index: int = 0) -> np.ndarray:
    state = np.zeros(2**n_qubits, dtype=complex)
    state[index] = 1.0
    return state


# ------------------------------------------------------------ fixture I/O


def load_hamiltonian(path) -> Hamiltonian:
    """{"n_qubits": int, "terms": [{"pauli": str, "coeff": float}], "meta": {}}"""
    try:
        with open(path) as fh:
            data = json.load(fh)
        terms = tuple(
            (PauliString(t["pauli"]), float(t["coeff"])) for t in data["terms"]
        )
        return Hamiltonian(int(data["n_qubits"]), terms, data.get("meta", {}))
    except (OSError, KeyError, TypeError, ValueError, DomainError) as exc:
        raise FixtureError(f"bad Hamiltonian fixture {path}: {exc}") from exc


def load_generators(path) -> tuple[int, list[tuple[PauliString, float]], dict]:
    """{"n_qubits": int, "generators": [{"pauli": str, "angle": float}], "meta": {}}"""
    try:
        with open(path) as fh:
            data = json.load(fh)
        gens = [
            (PauliString(g["pauli"]), float(g["angle"])) for g in data["generators"]
        ]
        n = int(data["n_qubits"])
        for p, _ in gens:
            if p.n_qubits != n:
                raise DimensionMismatch(p.label)
        return n, gens, data.get("meta", {})
    except (OSError, KeyError, TypeError, ValueError, DomainError) as exc:
        raise FixtureError(f"bad generator fixture {path}: {exc}") from exc
