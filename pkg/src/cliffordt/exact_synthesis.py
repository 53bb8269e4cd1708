"""Exact decomposition of a representable 2×2 unitary into H/S/T/X/Z/W gates.

The input is U(t,u) = [[u, −t†], [t, u†]] with tt† + uu† = 1 over D[ω].
Reduction repeatedly left-multiplies by H·T^{−j} (j ∈ 0..3), each step
lowering the denominator exponent of |u₀₀|² by one; the emitted syllable is
the inverse factor T^j·H written over the alphabet (T³ = S·T, T² = S).  The
remainder then has denominator exponent 0 (a monomial matrix) or 2 (all
entries ω^j/√2) and is peeled analytically into W/Z/S/T/X/H symbols.

Matrix equality is literal, not projective: the global phase is tracked with
explicit W = ω·I symbols, and gate_string_to_matrix(decomposition) equals
the input matrix with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedUnitary
from .rings import OMEGA, OMEGA_POWERS, DOmega, DReal, ZOmega

ALPHABET = "HSTXZW"

Mat = tuple[DOmega, DOmega, DOmega, DOmega]  # row-major 2×2

_ZERO = DOmega.from_int(0)
_ONE = DOmega.from_int(1)
_HALF_SQRT2 = DOmega(ZOmega.from_int(1), 1)  # 1/√2

GATE_MATRICES: dict[str, Mat] = {
    "H": (_HALF_SQRT2, _HALF_SQRT2, _HALF_SQRT2, -_HALF_SQRT2),
    "S": (_ONE, _ZERO, _ZERO, DOmega.from_zomega(OMEGA_POWERS[2])),
    "T": (_ONE, _ZERO, _ZERO, DOmega.from_zomega(OMEGA)),
    "X": (_ZERO, _ONE, _ONE, _ZERO),
    "Z": (_ONE, _ZERO, _ZERO, -_ONE),
    "W": (
        DOmega.from_zomega(OMEGA),
        _ZERO,
        _ZERO,
        DOmega.from_zomega(OMEGA),
    ),
}

_IDENTITY: Mat = (_ONE, _ZERO, _ZERO, _ONE)


def mat_mul(a: Mat, b: Mat) -> Mat:
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def gate_string_to_matrix(g: str) -> Mat:
    """Exact product of the named gates; leftmost symbol is applied last."""
    out = _IDENTITY
    for ch in g:
        if ch not in GATE_MATRICES:
            raise ValueError(f"unknown gate symbol {ch!r}")
        out = mat_mul(out, GATE_MATRICES[ch])
    return out


def t_count(g: str) -> int:
    return g.count("T")


@dataclass(frozen=True)
class ExactUnitary:
    """U(t,u) = [[u, −t†], [t, u†]] with tt† + uu† = 1 exactly."""

    u: DOmega
    t: DOmega

    def __post_init__(self) -> None:
        if not (self.u.norm_cc() + self.t.norm_cc()) == DReal.from_int(1):
            raise MalformedUnitary("tt† + uu† != 1")

    def matrix(self) -> Mat:
        return (self.u, -self.t.conj(), self.t, self.u.conj())


# left-multipliers H·T^{−j} and the matching emitted syllables T^j·H
_T_INV: Mat = (_ONE, _ZERO, _ZERO, DOmega.from_zomega(-OMEGA_POWERS[3]))
_H = GATE_MATRICES["H"]
_REDUCERS: list[tuple[Mat, str]] = []
_acc = _IDENTITY
for _j, _syll in enumerate(("H", "TH", "SH", "STH")):
    _REDUCERS.append((mat_mul(_H, _acc), _syll))
    _acc = mat_mul(_acc, _T_INV)
del _acc, _j, _syll


def _sde(m: Mat) -> int:
    """Denominator exponent of |m₀₀|² in D[√2]."""
    return m[0].norm_cc().lde()


def _unit_power(x: DOmega) -> int | None:
    """a with x = ω^a, or None when x is not a unit of Z[ω]."""
    for a in range(8):
        if x == DOmega.from_zomega(OMEGA_POWERS[a]):
            return a
    return None


def _diag_word(a: int, c: int) -> str:
    """Word for diag(ω^a, ω^c) over W/Z/S/T."""
    word = "W" * (a % 8)
    j = (c - a) % 8
    if j >= 4:
        word += "Z"
        j -= 4
    if j >= 2:
        word += "S"
        j -= 2
    if j:
        word += "T"
    return word


def _remainder_word(m: Mat) -> str:
    """Peel a denominator-exponent ≤ 2 remainder into an exact word."""
    sde = _sde(m)
    if sde == 0:
        if m[1] == _ZERO:  # diagonal monomial
            a, c = _unit_power(m[0]), _unit_power(m[3])
            if a is not None and c is not None:
                return _diag_word(a, c)
        elif m[0] == _ZERO:  # antidiagonal: X·diag picks up the off entries
            b, c = _unit_power(m[1]), _unit_power(m[2])
            if b is not None and c is not None:
                return "X" + _diag_word(c, b)
    elif sde == 2:
        # every entry is ω^j/√2: m = diag(ω^a, ω^c)·H·diag(1, ω^{b−a})
        pows = [_unit_power(x * ROOT_TWO_D) for x in m]
        if None not in pows:
            a, b, c, _ = pows
            return _diag_word(a, c) + "H" + _diag_word(0, (b - a) % 8)
    raise MalformedUnitary("irreducible remainder has unexpected shape")


ROOT_TWO_D = DOmega.from_zomega(OMEGA - OMEGA_POWERS[3])


def exact_decompose(U: ExactUnitary) -> str:
    """Gate string whose exact matrix product equals U's matrix."""
    m = U.matrix()
    out: list[str] = []
    sde = _sde(m)
    while sde > 2:
        for reducer, syllable in _REDUCERS:
            cand = mat_mul(reducer, m)
            if _sde(cand) == sde - 1:
                out.append(syllable)
                m = cand
                sde -= 1
                break
        else:
            raise MalformedUnitary("denominator exponent reduction stalled")
    word = _remainder_word(m)
    if gate_string_to_matrix(word) != m:
        raise MalformedUnitary("remainder peeling produced a mismatch")
    out.append(word)
    return "".join(out)


def decompose_best(u: DOmega, t: DOmega) -> tuple[str, DOmega]:
    """Decompose U(t·ω^j, u) over the free unit phase of t, minimizing T-count.

    The norm equation fixes t only up to a unit, and the choice of phase
    changes the T-count of the completion; the minimum over the eight phases
    attains 2·lde(u) − 2 (or 0 for lde 0). Ties break on the smallest j for
    determinism. Returns the gate string and the adjusted t.
    """
    best: tuple[int, int, str, DOmega] | None = None
    for j in range(8):
        tj = t.mul_by_omega_power(j)
        g = exact_decompose(ExactUnitary(u, tj))
        key = (t_count(g), j)
        if best is None or key < best[:2]:
            best = (key[0], j, g, tj)
    assert best is not None
    return best[2], best[3]
