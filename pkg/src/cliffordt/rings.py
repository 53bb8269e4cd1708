"""Exact arithmetic over the rings Z[√2], Z[ω], D[√2] and D[ω] (ω = e^{iπ/4}).

These four rings are the number system of the synthesis engine: every gate
matrix entry, every candidate and every norm-equation solution is represented
exactly.  Values are immutable; all operations are pure functions.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property

import mpmath

SQRT2 = 1.4142135623730951


def _ntz(n: int) -> int:
    """Number of trailing zero bits of a nonzero integer."""
    return (n & -n).bit_length() - 1


def _rounddiv(p: int, q: int) -> int:
    """Nearest-integer division (ties toward +inf), exact for big ints."""
    if q < 0:
        p, q = -p, -q
    return (2 * p + q) // (2 * q)


class ZRootTwo:
    """Element a + b√2 of the real quadratic ring Z[√2]."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int) -> None:
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ZRootTwo is immutable")

    def __repr__(self) -> str:
        return f"ZRootTwo({self.a}, {self.b})"

    @classmethod
    def from_int(cls, x: int) -> ZRootTwo:
        return cls(x, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if isinstance(other, ZRootTwo):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __add__(self, other: int | ZRootTwo) -> ZRootTwo:
        if isinstance(other, int):
            return ZRootTwo(self.a + other, self.b)
        return ZRootTwo(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: int | ZRootTwo) -> ZRootTwo:
        return self + (-other)

    def __rsub__(self, other: int | ZRootTwo) -> ZRootTwo:
        return (-self) + other

    def __neg__(self) -> ZRootTwo:
        return ZRootTwo(-self.a, -self.b)

    def __mul__(self, other: int | ZRootTwo) -> ZRootTwo:
        if isinstance(other, int):
            return ZRootTwo(self.a * other, self.b * other)
        return ZRootTwo(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ZRootTwo:
        if n < 0:
            return self.inverse() ** (-n)
        out = ZRootTwo(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> ZRootTwo:
        nrm = self.norm()
        if nrm == 1:
            return self.conj_sq2()
        if nrm == -1:
            return -self.conj_sq2()
        raise ZeroDivisionError("not a unit of Z[√2]")

    def conj_sq2(self) -> ZRootTwo:
        """Galois conjugate √2 ↦ −√2."""
        return ZRootTwo(self.a, -self.b)

    def norm(self) -> int:
        """Field norm a² − 2b² (value times its Galois conjugate)."""
        return self.a * self.a - 2 * self.b * self.b

    def __divmod__(self, other: int | ZRootTwo) -> tuple[ZRootTwo, ZRootTwo]:
        if isinstance(other, int):
            other = ZRootTwo(other, 0)
        p = self * other.conj_sq2()
        k = other.norm()
        q = ZRootTwo(_rounddiv(p.a, k), _rounddiv(p.b, k))
        return q, self - other * q

    def __floordiv__(self, other: int | ZRootTwo) -> ZRootTwo:
        return divmod(self, other)[0]

    def __mod__(self, other: int | ZRootTwo) -> ZRootTwo:
        return divmod(self, other)[1]

    def divides(self, other: ZRootTwo) -> bool:
        return divmod(other, self)[1] == ZROOTTWO_ZERO

    def to_float(self) -> float:
        return self.a + SQRT2 * self.b

    def to_mpf(self) -> mpmath.mpf:
        return self.a + mpmath.sqrt(2) * self.b

    def cmp_fraction(self, q: Fraction) -> int:
        """Exact sign of (a + b√2) − q for rational q."""
        s = Fraction(self.a) - q
        b = self.b
        if b == 0:
            return (s > 0) - (s < 0)
        if s >= 0 and b > 0:
            return 1
        if s <= 0 and b < 0:
            return -1
        # opposite signs: compare s² with 2b²
        d = s * s - 2 * b * b
        if s > 0:  # b < 0: value = s - |b|√2
            return (d > 0) - (d < 0)
        return (d < 0) - (d > 0)

    def signum(self) -> int:
        return self.cmp_fraction(Fraction(0))


ZROOTTWO_ZERO = ZRootTwo(0, 0)
ZROOTTWO_ONE = ZRootTwo(1, 0)
ROOT_TWO = ZRootTwo(0, 1)
# fundamental unit of Z[√2]; its inverse is √2 − 1
LAMBDA = ZRootTwo(1, 1)
LAMBDA_INV = ZRootTwo(-1, 1)


def zroottwo_gcd(x: ZRootTwo, y: ZRootTwo) -> ZRootTwo:
    """Euclidean gcd in the norm-Euclidean ring Z[√2] (up to a unit)."""
    while not (y == ZROOTTWO_ZERO):
        x, y = y, x % y
    return x


class ZOmega:
    """Element aω³ + bω² + cω + d of the cyclotomic ring Z[ω], ω = e^{iπ/4}."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int) -> None:
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ZOmega is immutable")

    def __repr__(self) -> str:
        return f"ZOmega({self.a}, {self.b}, {self.c}, {self.d})"

    @classmethod
    def from_int(cls, x: int) -> ZOmega:
        return cls(0, 0, 0, x)

    @classmethod
    def from_zroottwo(cls, x: ZRootTwo) -> ZOmega:
        # √2 = ω − ω³
        return cls(-x.b, 0, x.b, x.a)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == ZOmega.from_int(other)
        if isinstance(other, ZOmega):
            return (
                self.a == other.a
                and self.b == other.b
                and self.c == other.c
                and self.d == other.d
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __add__(self, other: int | ZRootTwo | ZOmega) -> ZOmega:
        other = _as_zomega(other)
        return ZOmega(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other: int | ZRootTwo | ZOmega) -> ZOmega:
        return self + (-_as_zomega(other))

    def __rsub__(self, other: int | ZRootTwo | ZOmega) -> ZOmega:
        return (-self) + other

    def __neg__(self) -> ZOmega:
        return ZOmega(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: int | ZRootTwo | ZOmega) -> ZOmega:
        if isinstance(other, int):
            return ZOmega(self.a * other, self.b * other, self.c * other, self.d * other)
        other = _as_zomega(other)
        # (aω³+bω²+cω+d)(a'ω³+b'ω²+c'ω+d') with ω⁴ = −1
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return ZOmega(
            a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2,
            b1 * d2 + c1 * c2 + d1 * b2 - a1 * a2,
            c1 * d2 + d1 * c2 - a1 * b2 - b1 * a2,
            d1 * d2 - a1 * c2 - b1 * b2 - c1 * a2,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ZOmega:
        if n < 0:
            raise ValueError("negative powers not supported in Z[ω]")
        out = ZOmega(0, 0, 0, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> ZOmega:
        """Complex conjugate (an involutive automorphism fixing the reals)."""
        return ZOmega(-self.c, -self.b, -self.a, self.d)

    def conj_sq2(self) -> ZOmega:
        """Galois conjugate √2 ↦ −√2, i.e. ω ↦ −ω."""
        return ZOmega(-self.a, self.b, -self.c, self.d)

    def mul_by_omega(self) -> ZOmega:
        return ZOmega(self.b, self.c, self.d, -self.a)

    def mul_by_omega_power(self, n: int) -> ZOmega:
        out = self
        for _ in range(n & 7):
            out = out.mul_by_omega()
        return out

    def norm_cc(self) -> ZRootTwo:
        """Product with the complex conjugate, as an element of Z[√2]."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return ZRootTwo(
            a * a + b * b + c * c + d * d,
            a * b + b * c + c * d - d * a,
        )

    def norm(self) -> int:
        """Absolute integer norm |N_{Z[ω]/Z}| component: norm_cc times its conjugate."""
        return self.norm_cc().norm()

    def divisible_by_sqrt2(self) -> bool:
        return (self.a + self.c) % 2 == 0 and (self.b + self.d) % 2 == 0

    def div_sqrt2(self) -> ZOmega:
        """Exact division by √2; caller must check divisible_by_sqrt2 first."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return ZOmega((b - d) >> 1, (c + a) >> 1, (b + d) >> 1, (c - a) >> 1)

    def sqrt2_valuation(self) -> int:
        """Largest e with value/√2^e in Z[ω]; the zero element reports 0."""
        if self == ZOMEGA_ZERO:
            return 0
        e = 0
        w = self
        while w.divisible_by_sqrt2():
            w = w.div_sqrt2()
            e += 1
        return e

    def to_zroottwo(self) -> ZRootTwo:
        """Reinterpret a real element (b = 0, a = −c) as member of Z[√2]."""
        if self.b != 0 or self.a != -self.c:
            raise ValueError(f"{self!r} is not real")
        return ZRootTwo(self.d, self.c)

    def is_real(self) -> bool:
        return self.b == 0 and self.a == -self.c

    def to_complex(self) -> complex:
        re = self.d + (self.c - self.a) / 2 * SQRT2
        im = self.b + (self.c + self.a) / 2 * SQRT2
        return complex(re, im)

    def to_mpc(self) -> mpmath.mpc:
        h = mpmath.sqrt(2) / 2
        return mpmath.mpc(
            self.d + (self.c - self.a) * h, self.b + (self.c + self.a) * h
        )

    def __divmod__(self, other: int | ZRootTwo | ZOmega) -> tuple[ZOmega, ZOmega]:
        other = _as_zomega(other)
        # multiply by the three nontrivial Galois conjugates, divide by the norm
        p = self * other.conj() * other.conj_sq2() * other.conj().conj_sq2()
        k = other.norm()
        q = ZOmega(
            _rounddiv(p.a, k), _rounddiv(p.b, k), _rounddiv(p.c, k), _rounddiv(p.d, k)
        )
        return q, self - other * q

    def __floordiv__(self, other: int | ZRootTwo | ZOmega) -> ZOmega:
        return divmod(self, other)[0]

    def __mod__(self, other: int | ZRootTwo | ZOmega) -> ZOmega:
        return divmod(self, other)[1]

    def divides(self, other: ZOmega) -> bool:
        return divmod(other, self)[1] == ZOMEGA_ZERO


def _as_zomega(x: int | ZRootTwo | ZOmega) -> ZOmega:
    if isinstance(x, ZOmega):
        return x
    if isinstance(x, ZRootTwo):
        return ZOmega.from_zroottwo(x)
    return ZOmega.from_int(x)


ZOMEGA_ZERO = ZOmega(0, 0, 0, 0)
ZOMEGA_ONE = ZOmega(0, 0, 0, 1)
OMEGA = ZOmega(0, 0, 1, 0)
OMEGA_POWERS = tuple(OMEGA**j for j in range(8))


def zomega_gcd(x: ZOmega, y: ZOmega) -> ZOmega:
    """Euclidean gcd in the norm-Euclidean ring Z[ω] (up to a unit)."""
    while not (y == ZOMEGA_ZERO):
        x, y = y, x % y
    return x


class DOmega:
    """Element of D[ω]: a Z[ω] numerator over a power of √2, kept canonical.

    The constructor eagerly reduces the denominator exponent, so two equal
    values always compare equal componentwise and ``k`` is the least
    denominator exponent.
    """

    __slots__ = ("num", "k")

    def __init__(self, num: ZOmega, k: int) -> None:
        if k < 0:
            raise ValueError("denominator exponent must be >= 0")
        if num == ZOMEGA_ZERO:
            k = 0
        else:
            while k > 0 and num.divisible_by_sqrt2():
                num = num.div_sqrt2()
                k -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "k", k)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("DOmega is immutable")

    def __repr__(self) -> str:
        return f"DOmega({self.num!r}, {self.k})"

    def __str__(self) -> str:
        n = self.num
        return f"({n.a},{n.b},{n.c},{n.d})/√2^{self.k}"

    @classmethod
    def parse(cls, s: str) -> DOmega:
        m = re.fullmatch(
            r"\((-?\d+),(-?\d+),(-?\d+),(-?\d+)\)/(?:√2|sqrt2)\^(\d+)", s.strip()
        )
        if m is None:
            raise ValueError(f"not a DOmega literal: {s!r}")
        a, b, c, d, k = (int(g) for g in m.groups())
        return cls(ZOmega(a, b, c, d), k)

    @classmethod
    def from_int(cls, x: int) -> DOmega:
        return cls(ZOmega.from_int(x), 0)

    @classmethod
    def from_zomega(cls, x: ZOmega) -> DOmega:
        return cls(x, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, ZOmega)):
            other = DOmega(_as_zomega(other), 0)
        if isinstance(other, DOmega):
            return self.k == other.k and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.k))

    def numerator_at(self, k: int) -> ZOmega:
        """Numerator when written over √2^k (k must be >= the stored lde)."""
        d = k - self.k
        if d < 0:
            raise ValueError(f"{self} has no denominator exponent {k}")
        num = self.num
        for _ in range(d // 2):
            num = num * 2
        if d % 2:
            num = num * ROOT_TWO_ZOMEGA
        return num

    def __add__(self, other: int | ZOmega | DOmega) -> DOmega:
        if not isinstance(other, DOmega):
            other = DOmega(_as_zomega(other), 0)
        k = max(self.k, other.k)
        return DOmega(self.numerator_at(k) + other.numerator_at(k), k)

    __radd__ = __add__

    def __sub__(self, other: int | ZOmega | DOmega) -> DOmega:
        return self + (-other if isinstance(other, DOmega) else -_as_zomega(other))

    def __rsub__(self, other: int | ZOmega | DOmega) -> DOmega:
        return (-self) + other

    def __neg__(self) -> DOmega:
        return DOmega(-self.num, self.k)

    def __mul__(self, other: int | ZRootTwo | ZOmega | DOmega) -> DOmega:
        if not isinstance(other, DOmega):
            return DOmega(self.num * _as_zomega(other), self.k)
        return DOmega(self.num * other.num, self.k + other.k)

    __rmul__ = __mul__

    def conj(self) -> DOmega:
        return DOmega(self.num.conj(), self.k)

    def conj_sq2(self) -> DOmega:
        num = self.num.conj_sq2()
        return DOmega(-num if self.k & 1 else num, self.k)

    def mul_by_omega_power(self, n: int) -> DOmega:
        return DOmega(self.num.mul_by_omega_power(n), self.k)

    def norm_cc(self) -> DReal:
        """Value times complex conjugate, an element of D[√2]."""
        return DReal(self.num.norm_cc(), 2 * self.k)

    def lde(self) -> int:
        return self.k

    def to_complex(self) -> complex:
        return self.num.to_complex() / SQRT2**self.k

    def to_mpc(self) -> mpmath.mpc:
        return self.num.to_mpc() / mpmath.sqrt(2) ** self.k


ROOT_TWO_ZOMEGA = ZOmega.from_zroottwo(ROOT_TWO)
DOMEGA_ZERO = DOmega.from_int(0)
DOMEGA_ONE = DOmega.from_int(1)


class DReal:
    """Element of D[√2]: a Z[√2] numerator over a power of √2, kept canonical.

    Plain dyadic fractions a/2^m arise as the b = 0, even-k case.
    """

    __slots__ = ("num", "k")

    def __init__(self, num: ZRootTwo, k: int) -> None:
        if k < 0:
            raise ValueError("denominator exponent must be >= 0")
        if num == ZROOTTWO_ZERO:
            k = 0
        else:
            while k > 0 and num.a % 2 == 0:
                num = ZRootTwo(num.b, num.a >> 1)
                k -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "k", k)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("DReal is immutable")

    def __repr__(self) -> str:
        return f"DReal({self.num!r}, {self.k})"

    @classmethod
    def from_int(cls, x: int) -> DReal:
        return cls(ZRootTwo.from_int(x), 0)

    @classmethod
    def from_zroottwo(cls, x: ZRootTwo) -> DReal:
        return cls(x, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = DReal.from_int(other)
        elif isinstance(other, ZRootTwo):
            other = DReal.from_zroottwo(other)
        if isinstance(other, DReal):
            return self.k == other.k and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.k))

    def numerator_at(self, k: int) -> ZRootTwo:
        d = k - self.k
        if d < 0:
            raise ValueError(f"{self!r} has no denominator exponent {k}")
        num = self.num * (1 << (d // 2))
        if d % 2:
            num = num * ROOT_TWO
        return num

    def __add__(self, other: int | ZRootTwo | DReal) -> DReal:
        if not isinstance(other, DReal):
            other = DReal.from_zroottwo(other if isinstance(other, ZRootTwo) else ZRootTwo.from_int(other))
        k = max(self.k, other.k)
        return DReal(self.numerator_at(k) + other.numerator_at(k), k)

    __radd__ = __add__

    def __sub__(self, other: int | ZRootTwo | DReal) -> DReal:
        return self + (-(other if isinstance(other, DReal) else DReal.from_zroottwo(
            other if isinstance(other, ZRootTwo) else ZRootTwo.from_int(other))))

    def __rsub__(self, other: int | ZRootTwo | DReal) -> DReal:
        return (-self) + other

    def __neg__(self) -> DReal:
        return DReal(-self.num, self.k)

    def __mul__(self, other: int | ZRootTwo | DReal) -> DReal:
        if not isinstance(other, DReal):
            return DReal(self.num * other, self.k)
        return DReal(self.num * other.num, self.k + other.k)

    __rmul__ = __mul__

    def conj_sq2(self) -> DReal:
        num = self.num.conj_sq2()
        return DReal(-num if self.k & 1 else num, self.k)

    def lde(self) -> int:
        return self.k

    def to_float(self) -> float:
        return self.num.to_float() / SQRT2**self.k

    def to_mpf(self) -> mpmath.mpf:
        return self.num.to_mpf() / mpmath.sqrt(2) ** self.k

    def cmp_fraction(self, q: Fraction) -> int:
        """Exact sign of self − q for rational q."""
        # self = num / √2^k; scale q by √2^k instead (k even: integer scale,
        # k odd: compare num with q·√2^k = (q·2^{(k-1)/2})·√2).
        if self.k % 2 == 0:
            return self.num.cmp_fraction(q * (1 << (self.k // 2)))
        qs = q * (1 << ((self.k - 1) // 2))
        # sign of (a + b√2) − qs·√2 = a + (b − qs)√2
        a = Fraction(self.num.a)
        b = Fraction(self.num.b) - qs
        if b == 0:
            return (a > 0) - (a < 0)
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        d = a * a - 2 * b * b
        if a > 0:
            return (d > 0) - (d < 0)
        return (d < 0) - (d > 0)

    def signum(self) -> int:
        return self.cmp_fraction(Fraction(0))


def embed(x: ZRootTwo | ZOmega | DReal | DOmega) -> tuple[complex, complex]:
    """Floating image of a ring element and of its √2-conjugate.

    Relative error is ≤ 2⁻⁵⁰ for coefficients below 2⁵⁰; for larger
    coefficients the error grows with the cancellation between the integer
    and √2 parts (callers needing guarantees should use the ``to_mpf`` /
    ``to_mpc`` methods at a suitable precision instead).
    """
    if isinstance(x, ZRootTwo):
        return complex(x.to_float()), complex(x.conj_sq2().to_float())
    if isinstance(x, ZOmega):
        return x.to_complex(), x.conj_sq2().to_complex()
    if isinstance(x, DReal):
        return complex(x.to_float()), complex(x.conj_sq2().to_float())
    if isinstance(x, DOmega):
        return x.to_complex(), x.conj_sq2().to_complex()
    raise TypeError(f"unsupported ring element {x!r}")
