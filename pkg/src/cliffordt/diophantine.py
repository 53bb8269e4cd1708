"""Relative norm equation tt† = ξ over Z[ω]/Z[√2].

Given ξ = 1 − uu† ∈ D[√2] with ξ ≥ 0 and ξ• ≥ 0, find t ∈ D[ω] with
tt† = ξ. Scaling by √2^{2k} reduces to ττ† = ν over Z[ω] for a totally
positive ν ∈ Z[√2], solved by factoring |N(ν)| and splitting each rational
prime according to its class mod 8:

  √2-factors   → (1+ω), since (1+ω)(1+ω)† = √2·(1+√2)
  p ≡ 1 (mod 8) → p splits in Z[√2]; each factor π splits further in Z[ω]
                  via gcd(π, y − ω²) with y² ≡ −1 (mod p)
  p ≡ 5 (mod 8) → p inert in Z[√2]; split via gcd(p, y − ω²), y² ≡ −1
  p ≡ 3 (mod 8) → p inert in Z[√2]; split via gcd(p, y − (ω+ω³)), y² ≡ −2
  p ≡ 7 (mod 8) → π is not a relative norm; its multiplicity must be even

A final unit adjustment by a power of the fundamental unit λ = 1+√2 makes
the product match ν exactly. Every returned t is verified by exact ring
arithmetic, so the randomized pieces can never produce a wrong answer.
"""

from __future__ import annotations

import math
import random

from .errors import FactorTimeout
from .rings import (
    LAMBDA,
    LAMBDA_INV,
    OMEGA,
    DOmega,
    DReal,
    ZOmega,
    ZRootTwo,
    zomega_gcd,
)

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set, deterministic below 3.3·10²⁴."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random, budget: int) -> int | None:
    """One Brent-cycle factor hunt; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        spent += r
        if spent > budget:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def factorize(n: int, work_budget: int = 10**7, seed: int = 0) -> list[int]:
    """Prime factorization with multiplicity, sorted ascending.

    Trial division by small primes, then Miller-Rabin plus Pollard-Brent.
    Raises FactorTimeout when the Brent work budget is exhausted; callers
    treat that as "skip this candidate".
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: list[int] = []
    for p in range(2, 10**4):
        if p * p > n:
            break
        while n % p == 0:
            out.append(p)
            n //= p
    rng = random.Random(seed ^ n)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out.append(m)
            continue
        g = None
        for _ in range(16):
            g = _pollard_brent(m, rng, work_budget)
            if g is not None:
                break
        if g is None:
            raise FactorTimeout(f"could not factor {m}")
        stack.extend([g, m // g])
    return sorted(out)


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root of a modulo an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p − 1 = q·2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


_SQRT2_OMEGA = OMEGA - OMEGA**3  # √2 inside Z[ω]
_I_OMEGA = OMEGA**2
_ISQRT2_OMEGA = OMEGA + OMEGA**3  # i√2 inside Z[ω]


def _zroottwo_exact_div(x: ZRootTwo, y: ZRootTwo) -> ZRootTwo | None:
    q, r = divmod(x, y)
    return q if r == ZRootTwo(0, 0) else None


def _valuation(x: ZRootTwo, pi: ZRootTwo) -> tuple[int, ZRootTwo]:
    v = 0
    while True:
        q = _zroottwo_exact_div(x, pi)
        if q is None:
            return v, x
        x = q
        v += 1


def _split_prime(p: int, pi: ZRootTwo) -> ZOmega | None:
    """s ∈ Z[ω] with ss† an associate of pi (a Z[√2]-prime above p)."""
    if p % 8 == 7:
        return None  # not a relative norm
    if p % 8 == 3:
        y = sqrt_mod(p - 2, p)
        target = ZOmega.from_int(y) - _ISQRT2_OMEGA
    else:
        y = sqrt_mod(p - 1, p)
        target = ZOmega.from_int(y) - _I_OMEGA
    if y is None:
        return None
    s = zomega_gcd(ZOmega.from_zroottwo(pi), target)
    n = s.norm_cc()
    # ss† must be a genuine prime factor, not a unit
    if abs(n.norm()) == 1:
        return None
    return s


def _as_unit_power(q: ZRootTwo) -> int | None:
    """Exponent j with q = λ^j for totally positive unit q, else None."""
    if abs(q.norm()) != 1:
        return None
    j = 0
    while q.to_float() > 1.25:
        q = q * LAMBDA_INV
        j += 1
    while q.to_float() < 0.75:
        q = q * LAMBDA
        j -= 1
    return j if q == ZRootTwo(1, 0) else None


def _solve_totally_positive(nu: ZRootTwo, seed: int, retries: int) -> ZOmega | None:
    """τ ∈ Z[ω] with ττ† = ν, for totally positive ν ∈ Z[√2], or None."""
    if nu == ZRootTwo(0, 0):
        return ZOmega.from_int(0)
    e, nu1 = 0, nu
    while nu1.a % 2 == 0:  # divisible by √2
        nu1 = ZRootTwo(nu1.b, nu1.a // 2)
        e += 1
    tau = (ZOmega.from_int(1) + OMEGA) ** e
    n1 = abs(nu1.norm())
    for attempt in range(max(1, retries)):
        try:
            primes = factorize(n1, seed=seed + attempt)
        except FactorTimeout:
            return None
        ok = True
        t = tau
        rem = nu1
        seen: dict[int, int] = {}
        for p in primes:
            seen[p] = seen.get(p, 0) + 1
        for p, mult in seen.items():
            if p % 8 == 1:
                r = sqrt_mod(2, p)
                pi = ZRootTwo(p, 0)
                pi = _zroottwo_gcd_prim(pi, ZRootTwo(r, -1))
                for cand in (pi, pi.conj_sq2()):
                    v, rem = _valuation(rem, cand)
                    if v:
                        s = _split_prime(p, cand)
                        if s is None:
                            ok = False
                            break
                        t = t * s**v
                if not ok:
                    break
            elif p % 8 == 7:
                r = sqrt_mod(2, p)
                pi = _zroottwo_gcd_prim(ZRootTwo(p, 0), ZRootTwo(r, -1))
                for cand in (pi, pi.conj_sq2()):
                    v, rem = _valuation(rem, cand)
                    if v % 2:
                        ok = False
                        break
                    t = t * ZOmega.from_zroottwo(cand) ** (v // 2)
                if not ok:
                    break
            else:  # p inert in Z[√2], multiplicity in |N| is 2·valuation
                v, rem = _valuation(rem, ZRootTwo(p, 0))
                if v:
                    s = _split_prime(p, ZRootTwo(p, 0))
                    if s is None:
                        ok = False
                        break
                    t = t * s**v
        if not ok:
            return None
        tt = (t * t.conj()).to_zroottwo()
        q = _zroottwo_exact_div(nu, tt)
        if q is None:
            continue  # inconsistent split; retry with fresh randomness
        j = _as_unit_power(q)
        if j is None or j % 2:
            return None
        half = LAMBDA ** (j // 2) if j >= 0 else LAMBDA_INV ** (-j // 2)
        t = t * ZOmega.from_zroottwo(half)
        if (t * t.conj()).to_zroottwo() == nu:
            return t
    return None


def _zroottwo_gcd_prim(x: ZRootTwo, y: ZRootTwo) -> ZRootTwo:
    from .rings import zroottwo_gcd

    return zroottwo_gcd(x, y)


def solve_norm_equation(
    xi: DReal, k: int, seed: int = 0, retries: int = 64
) -> DOmega | None:
    """t ∈ D[ω] with tt† = xi and denominator exponent ≤ k, or None.

    None means no solution exists or the randomized machinery gave up within
    its budget; a non-None answer is always exactly verified.
    """
    if 2 * k < xi.k:
        raise ValueError("xi cannot be written over the requested exponent")
    if xi.signum() < 0 or xi.conj_sq2().signum() < 0:
        return None
    nu = xi.numerator_at(2 * k)
    tau = _solve_totally_positive(nu, seed, retries)
    if tau is None:
        return None
    t = DOmega(tau, k)
    if not t.norm_cc() == xi:
        return None
    return t
