"""Arbitrary-precision prime-field and tower-extension arithmetic.

Field elements are plain Python ints reduced to [0, p).  Elements of the
intermediate field F_{p^{k/2}} are coefficient tuples (little-endian) over a
monic irreducible f(u); elements of F_{p^k} are pairs a0 + a1*alpha with
alpha^2 = delta for a fixed non-square delta of the intermediate field.

Every counted operation goes through a context method; internal subfield
work inside an extension-field multiplication is deliberately *not* tallied,
so one call to ``ext_mul`` costs exactly one M.
"""

from __future__ import annotations

import random
from typing import NamedTuple

from .opcount import OpCounter

Sub = tuple[int, ...]


class Ext(NamedTuple):
    """Element a0 + a1*alpha of F_{p^k} over the quadratic subfield."""

    a0: Sub
    a1: Sub


# ---------------------------------------------------------------------------
# primality


def is_probable_prime(n: int, rounds: int = 64) -> bool:
    """Miller-Rabin with deterministically seeded bases (error < 4^-rounds)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Square root of a modulo an odd prime p, or None for non-squares."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


# ---------------------------------------------------------------------------
# base field


class PrimeFieldCtx:
    """F_p arithmetic with an owned operation counter.

    ``strict_squares=True`` makes ``mul`` reject equal operands so that
    formulas are forced to route squarings through ``sqr``; it is off by
    default because distinct operands can legitimately collide in value.
    """

    def __init__(self, p: int, *, check_prime: bool = True, mr_rounds: int = 64,
                 strict_squares: bool = False):
        if check_prime and (p % 2 == 0 or not is_probable_prime(p, mr_rounds)):
            raise ValueError("modulus must be an odd prime")
        self.p = p
        self.counter = OpCounter()
        self.strict_squares = strict_squares

    # counted entry points -------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        if self.strict_squares and x == y:
            raise ArithmeticError("squaring routed through the mul() entry point")
        self.counter.m += 1
        return x * y % self.p

    def sqr(self, x: int) -> int:
        self.counter.s += 1
        return x * x % self.p

    def mul_const(self, c: int, x: int, kind: str) -> int:
        """Multiplication by a stored curve constant; skipped and uncounted for c=1."""
        if c == 1:
            return x
        if kind == "a":
            self.counter.m_a += 1
        elif kind == "d":
            self.counter.m_d += 1
        else:
            raise ValueError(f"unknown constant kind {kind!r}")
        return c * x % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        self.counter.inv += 1
        return pow(x, self.p - 2, self.p)

    # free operations ------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    # counter handling -----------------------------------------------------

    def snapshot(self) -> OpCounter:
        return self.counter.copy()

    def reset(self) -> None:
        self.counter.reset()


# ---------------------------------------------------------------------------
# tower


def _poly_trim(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    num = list(num)
    dlead = pow(den[-1], p - 2, p)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 0)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i] * dlead % p
        if c:
            quot[i - deg_d] = c
            for j, dj in enumerate(den):
                num[i - deg_d + j] = (num[i - deg_d + j] - c * dj) % p
    return quot, _poly_trim(num)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b, p)
        a, b = b, r
    return a


def find_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of the form u^degree + c1*u + c0.

    Scans c1 = 1, 2, ... and, inside each c1, c0 = 1, 2, ... and returns the
    first irreducible hit, i.e. the lexicographically smallest candidate when
    coefficients are read from the leading term down.  Degree 1 returns u.
    """
    if degree == 1:
        return (0, 1)
    for c1 in range(1, p):
        for c0 in range(1, min(p, 100_000)):
            f = tuple([c0] + [c1] + [0] * (degree - 2) + [1])
            if poly_is_irreducible(f, p):
                return f
    raise ValueError("no irreducible polynomial of the requested shape")


def poly_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Frobenius/gcd irreducibility test for a monic f of degree >= 2."""
    h = len(f) - 1
    # u^{p^j} mod f for j = 1..h
    powers = []
    t = [0, 1]  # u
    for _ in range(h):
        t = _polymod_pow(t, p, f, p)
        powers.append(t)
    u = [0, 1]
    if _poly_trim(list(_poly_sub(powers[-1], u, p))):
        return False
    for q in _prime_divisors(h):
        g = _poly_gcd(_poly_sub(powers[h // q - 1], u, p), list(f), p)
        if len(g) - 1 != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
            for i in range(n)]


def _polymod_mul(a: list[int], b: list[int], f: tuple[int, ...], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    _, r = _poly_divmod(prod, list(f), p)
    return r


def _polymod_pow(base: list[int], e: int, f: tuple[int, ...], p: int) -> list[int]:
    result = [1]
    acc = _poly_trim(list(base))
    while e:
        if e & 1:
            result = _polymod_mul(result, acc, f, p)
        acc = _polymod_mul(acc, acc, f, p)
        e >>= 1
    return result


class TowerCtx:
    """F_p -> F_{p^{k/2}} -> F_{p^k} tower for an even embedding degree k.

    If the defining data are not supplied, f(u) is the deterministic monic
    irreducible from :func:`find_irreducible` and delta is the first
    non-square among u, u+1, u+2, ...
    """

    def __init__(self, base: PrimeFieldCtx, k: int, f: Sub | None = None,
                 delta: Sub | None = None, check: bool = True):
        if k % 2 != 0 or k < 2:
            raise ValueError("embedding degree must be even and >= 2")
        self.base = base
        self.p = base.p
        self.k = k
        self.half = k // 2
        self.q_sub = self.p ** self.half
        self.f: tuple[int, ...] = tuple(f) if f is not None else find_irreducible(self.p, self.half)
        if len(self.f) != self.half + 1 or self.f[-1] != 1:
            raise ValueError("f must be monic of degree k/2")
        if check and self.half > 1 and not poly_is_irreducible(self.f, self.p):
            raise ValueError("f is not irreducible over F_p")
        if delta is not None:
            self.delta = tuple(x % self.p for x in delta)
            if check and self.s_is_square(self.delta):
                raise ValueError("delta must be a non-square in the subfield")
        else:
            self.delta = self._find_nonsquare()

    # subfield helpers (uncounted) ------------------------------------------

    def s_zero(self) -> Sub:
        return (0,) * self.half

    def s_one(self) -> Sub:
        return (1,) + (0,) * (self.half - 1)

    def embed(self, c: int) -> Sub:
        """Embed an F_p element into the subfield."""
        return (c % self.p,) + (0,) * (self.half - 1)

    def s_is_zero(self, v: Sub) -> bool:
        return all(x == 0 for x in v)

    def s_add(self, v: Sub, w: Sub) -> Sub:
        p = self.p
        return tuple((a + b) % p for a, b in zip(v, w))

    def s_sub(self, v: Sub, w: Sub) -> Sub:
        p = self.p
        return tuple((a - b) % p for a, b in zip(v, w))

    def s_neg(self, v: Sub) -> Sub:
        p = self.p
        return tuple(-a % p for a in v)

    def s_mul(self, v: Sub, w: Sub) -> Sub:
        p, h = self.p, self.half
        prod = [0] * (2 * h - 1)
        for i, a in enumerate(v):
            if a:
                for j, b in enumerate(w):
                    prod[i + j] = (prod[i + j] + a * b) % p
        # fold u^h = -(f - u^h) repeatedly (f monic)
        fred = self.f[:-1]
        for i in range(2 * h - 2, h - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, fj in enumerate(fred):
                    if fj:
                        prod[i - h + j] = (prod[i - h + j] - c * fj) % p
        return tuple(prod[:h])

    def s_sqr(self, v: Sub) -> Sub:
        return self.s_mul(v, v)

    def s_pow(self, v: Sub, e: int) -> Sub:
        result = self.s_one()
        acc = v
        while e:
            if e & 1:
                result = self.s_mul(result, acc)
            acc = self.s_mul(acc, acc)
            e >>= 1
        return result

    def s_inv(self, v: Sub) -> Sub:
        if self.s_is_zero(v):
            raise ZeroDivisionError("inverse of zero in the subfield")
        p = self.p
        # extended Euclid over F_p[u] modulo f
        r0, r1 = list(self.f), _poly_trim(list(v))
        t0, t1 = [0], [1]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            qt = _polymod_mul(q, t1, self.f, p) if q else [0]
            t0, t1 = t1, _poly_trim(_poly_sub(t0, qt, p))
        # r1 is a nonzero constant
        c_inv = pow(r1[0], p - 2, p)
        out = [x * c_inv % p for x in t1]
        out += [0] * (self.half - len(out))
        return tuple(out[: self.half])

    def s_is_square(self, v: Sub) -> bool:
        if self.s_is_zero(v):
            return True
        return self.s_pow(v, (self.q_sub - 1) // 2) == self.s_one()

    def s_sqrt(self, v: Sub) -> Sub | None:
        """Tonelli-Shanks in the subfield, using delta as the non-residue."""
        if self.s_is_zero(v):
            return self.s_zero()
        if not self.s_is_square(v):
            return None
        q = self.q_sub - 1
        s = 0
        while q % 2 == 0:
            q //= 2
            s += 1
        one = self.s_one()
        m, c = s, self.s_pow(self.delta, q)
        t, r = self.s_pow(v, q), self.s_pow(v, (q + 1) // 2)
        while t != one:
            i, tt = 0, t
            while tt != one:
                tt = self.s_mul(tt, tt)
                i += 1
            b = self.s_pow(c, 1 << (m - i - 1))
            m, c = i, self.s_mul(b, b)
            t = self.s_mul(t, c)
            r = self.s_mul(r, b)
        return r

    def _find_nonsquare(self) -> Sub:
        h = self.half
        for c in range(0, 100_000):
            cand = [c % self.p] + ([1] if h > 1 else []) + [0] * max(h - 2, 0)
            v = tuple(cand[:h]) if h > 1 else (c % self.p,)
            if not self.s_is_zero(v) and not self.s_is_square(v):
                return v
        raise ValueError("no non-square found in the subfield")

    # counted subfield scaling ----------------------------------------------

    def scale(self, c: int, v: Sub) -> Sub:
        """Multiply a subfield element by an F_p element: costs k/2 m."""
        self.base.counter.m += self.half
        p = self.p
        return tuple(c * x % p for x in v)

    # extension field ---------------------------------------------------------

    def ext_zero(self) -> Ext:
        return Ext(self.s_zero(), self.s_zero())

    def ext_one(self) -> Ext:
        return Ext(self.s_one(), self.s_zero())

    def ext_from_sub(self, v: Sub) -> Ext:
        return Ext(v, self.s_zero())

    def ext_from_base(self, c: int) -> Ext:
        return Ext(self.embed(c), self.s_zero())

    def ext_is_zero(self, x: Ext) -> bool:
        return self.s_is_zero(x.a0) and self.s_is_zero(x.a1)

    def ext_add(self, x: Ext, y: Ext) -> Ext:
        return Ext(self.s_add(x.a0, y.a0), self.s_add(x.a1, y.a1))

    def ext_sub(self, x: Ext, y: Ext) -> Ext:
        return Ext(self.s_sub(x.a0, y.a0), self.s_sub(x.a1, y.a1))

    def ext_neg(self, x: Ext) -> Ext:
        return Ext(self.s_neg(x.a0), self.s_neg(x.a1))

    def _ext_mul_raw(self, x: Ext, y: Ext) -> Ext:
        t0 = self.s_mul(x.a0, y.a0)
        t1 = self.s_mul(x.a1, y.a1)
        t2 = self.s_mul(self.s_add(x.a0, x.a1), self.s_add(y.a0, y.a1))
        return Ext(self.s_add(t0, self.s_mul(self.delta, t1)),
                   self.s_sub(self.s_sub(t2, t0), t1))

    def _ext_sqr_raw(self, x: Ext) -> Ext:
        t0 = self.s_mul(x.a0, x.a0)
        t1 = self.s_mul(x.a1, x.a1)
        t2 = self.s_mul(x.a0, x.a1)
        return Ext(self.s_add(t0, self.s_mul(self.delta, t1)),
                   self.s_add(t2, t2))

    def ext_mul(self, x: Ext, y: Ext) -> Ext:
        """Extension multiplication: one opaque M, internals untallied."""
        self.base.counter.M += 1
        return self._ext_mul_raw(x, y)

    def ext_sqr(self, x: Ext) -> Ext:
        self.base.counter.S += 1
        return self._ext_sqr_raw(x)

    def ext_inv(self, x: Ext) -> Ext:
        # (a0 - a1*alpha) / (a0^2 - delta*a1^2); uncounted (oracle/normalization use)
        norm = self.s_sub(self.s_mul(x.a0, x.a0),
                          self.s_mul(self.delta, self.s_mul(x.a1, x.a1)))
        ninv = self.s_inv(norm)
        return Ext(self.s_mul(x.a0, ninv), self.s_neg(self.s_mul(x.a1, ninv)))

    def ext_pow(self, x: Ext, e: int) -> Ext:
        """Left-to-right square and multiply; counts its M/S."""
        if e < 0:
            raise ValueError("exponent must be non-negative")
        if e == 0:
            return self.ext_one()
        result = x
        for bit in bin(e)[3:]:
            result = self.ext_sqr(result)
            if bit == "1":
                result = self.ext_mul(result, x)
        return result

    def _ext_pow_raw(self, x: Ext, e: int) -> Ext:
        if e == 0:
            return self.ext_one()
        result = x
        for bit in bin(e)[3:]:
            result = self._ext_sqr_raw(result)
            if bit == "1":
                result = self._ext_mul_raw(result, x)
        return result

    # convenience ------------------------------------------------------------

    def snapshot(self) -> OpCounter:
        return self.base.counter.copy()

    def reset(self) -> None:
        self.base.counter.reset()


# ---------------------------------------------------------------------------
# uncounted generic field adapters (oracles, bridges, validation)


class PrimeOps:
    """Plain F_p arithmetic with no counting; elements are ints."""

    def __init__(self, p: int):
        self.p = p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, c: int) -> int:
        return c % self.p

    def is_zero(self, x: int) -> bool:
        return x % self.p == 0

    def eq(self, x: int, y: int) -> bool:
        return (x - y) % self.p == 0

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def sqr(self, x: int) -> int:
        return x * x % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)


class SubOps:
    """Uncounted arithmetic in F_{p^{k/2}}; elements are coefficient tuples."""

    def __init__(self, tower: TowerCtx):
        self.t = tower

    def zero(self) -> Sub:
        return self.t.s_zero()

    def one(self) -> Sub:
        return self.t.s_one()

    def from_int(self, c: int) -> Sub:
        return self.t.embed(c)

    def is_zero(self, x: Sub) -> bool:
        return self.t.s_is_zero(x)

    def eq(self, x: Sub, y: Sub) -> bool:
        return x == y

    def add(self, x: Sub, y: Sub) -> Sub:
        return self.t.s_add(x, y)

    def sub(self, x: Sub, y: Sub) -> Sub:
        return self.t.s_sub(x, y)

    def neg(self, x: Sub) -> Sub:
        return self.t.s_neg(x)

    def mul(self, x: Sub, y: Sub) -> Sub:
        return self.t.s_mul(x, y)

    def sqr(self, x: Sub) -> Sub:
        return self.t.s_mul(x, x)

    def inv(self, x: Sub) -> Sub:
        return self.t.s_inv(x)


class ExtOps:
    """Uncounted arithmetic in F_{p^k}; elements are Ext pairs."""

    def __init__(self, tower: TowerCtx):
        self.t = tower

    def zero(self) -> Ext:
        return self.t.ext_zero()

    def one(self) -> Ext:
        return self.t.ext_one()

    def from_int(self, c: int) -> Ext:
        return self.t.ext_from_base(c)

    def is_zero(self, x: Ext) -> bool:
        return self.t.ext_is_zero(x)

    def eq(self, x: Ext, y: Ext) -> bool:
        return x == y

    def add(self, x: Ext, y: Ext) -> Ext:
        return self.t.ext_add(x, y)

    def sub(self, x: Ext, y: Ext) -> Ext:
        return self.t.ext_sub(x, y)

    def neg(self, x: Ext) -> Ext:
        return self.t.ext_neg(x)

    def mul(self, x: Ext, y: Ext) -> Ext:
        return self.t._ext_mul_raw(x, y)

    def sqr(self, x: Ext) -> Ext:
        return self.t._ext_sqr_raw(x)

    def inv(self, x: Ext) -> Ext:
        return self.t.ext_inv(x)
