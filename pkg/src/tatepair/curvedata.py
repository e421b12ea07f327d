"""Curve records: the bundled pairing-friendly Edwards curves, a small
``key = value`` file format, parameter validation, desk-scale curve
derivation, and the birational Edwards <-> Weierstrass bridge.

Conventions: an Edwards record describes a*x^2 + y^2 = 1 + d*x^2*y^2 over
F_p with #E(F_p) = 4*h*n; a Weierstrass record describes
y^2 = x^3 + a4*x + a6 with #E(F_p) = h*n.  n is an odd prime and k the
exact embedding degree (n | p^k - 1 and no smaller power works).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from importlib import resources

from .bigfield import (Ext, ExtOps, PrimeFieldCtx, PrimeOps, SubOps, TowerCtx,
                       is_probable_prime, sqrt_mod_p)
from . import edwards as ed
from . import weierstrass as wz
from .miller import naive_miller_oracle, tate_pairing_edwards


# ---------------------------------------------------------------------------
# records and file format


EDWARDS = "edwards"
WEIERSTRASS = "weierstrass"

_KEY_ORDER = ("name", "form", "p", "n", "h", "k", "D", "a", "d", "a4", "a6")


@dataclass(frozen=True)
class CurveRecord:
    name: str
    form: str            # "edwards" | "weierstrass"
    p: int
    n: int
    h: int
    k: int
    a: int | None = None
    d: int | None = None
    a4: int | None = None
    a6: int | None = None
    D: int | None = None          # CM discriminant, informational
    h_factored: str | None = None  # e.g. "7·733·2230663"

    def __post_init__(self):
        if self.form == EDWARDS:
            if self.a is None or self.d is None:
                raise ValueError("edwards record needs a and d")
        elif self.form == WEIERSTRASS:
            if self.a4 is None or self.a6 is None:
                raise ValueError("weierstrass record needs a4 and a6")
        else:
            raise ValueError(f"unknown form {self.form!r}")
        if self.k % 2 != 0:
            raise ValueError("only even embedding degrees are supported")

    @property
    def cofactor_multiplier(self) -> int:
        """#E(F_p) = cofactor_multiplier * h * n."""
        return 4 if self.form == EDWARDS else 1

    @property
    def group_order(self) -> int:
        return self.cofactor_multiplier * self.h * self.n

    @property
    def rho(self) -> float:
        """log(p)/log(n) with ceiled bit sizes, rounded to two decimals."""
        return round(self.p.bit_length() / self.n.bit_length(), 2)


def parse_cofactor(text: str) -> tuple[int, str | None]:
    """Parse an integer or a factored product like '2^4·70199^4·7831391^4'."""
    s = text.strip().replace("*", "·").replace(" ", "")
    if "·" not in s and "^" not in s:
        return int(s), None
    value = 1
    for part in s.split("·"):
        base, _, exp = part.partition("^")
        value *= int(base) ** (int(exp) if exp else 1)
    return value, s


def parse_curve_text(text: str) -> CurveRecord:
    entries: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed line (expected key = value): {raw!r}")
        key = key.strip()
        if key in entries:
            raise ValueError(f"duplicate key {key!r}")
        entries[key] = value.strip()
    unknown = set(entries) - set(_KEY_ORDER)
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    try:
        name = entries["name"]
        form = entries["form"]
        h, h_factored = parse_cofactor(entries["h"])
        rec = CurveRecord(
            name=name, form=form,
            p=int(entries["p"]), n=int(entries["n"]), h=h,
            k=int(entries["k"]),
            D=int(entries["D"]) if "D" in entries else None,
            a=int(entries["a"]) if "a" in entries else None,
            d=int(entries["d"]) if "d" in entries else None,
            a4=int(entries["a4"]) if "a4" in entries else None,
            a6=int(entries["a6"]) if "a6" in entries else None,
            h_factored=h_factored,
        )
    except KeyError as exc:
        raise ValueError(f"missing required key {exc.args[0]!r}") from None
    return rec


def serialize_curve(rec: CurveRecord) -> str:
    lines = [f"name = {rec.name}", f"form = {rec.form}",
             f"p = {rec.p}", f"n = {rec.n}",
             f"h = {rec.h_factored if rec.h_factored else rec.h}",
             f"k = {rec.k}"]
    if rec.D is not None:
        lines.append(f"D = {rec.D}")
    if rec.form == EDWARDS:
        lines.append(f"a = {rec.a}")
        lines.append(f"d = {rec.d}")
    else:
        lines.append(f"a4 = {rec.a4}")
        lines.append(f"a6 = {rec.a6}")
    return "\n".join(lines) + "\n"


def load_curve(path) -> CurveRecord:
    with open(path, encoding="utf-8") as fh:
        return parse_curve_text(fh.read())


BUNDLED_CURVES = ("ed-80", "ed-96", "ed-112", "ed-128", "ed-160", "ed-256")


def bundled_curve(name: str) -> CurveRecord:
    res = resources.files("tatepair").joinpath("curves", f"{name}.curve")
    try:
        return parse_curve_text(res.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise KeyError(f"no bundled curve {name!r} "
                       f"(available: {', '.join(BUNDLED_CURVES)})") from None


# ---------------------------------------------------------------------------
# arithmetic object construction


def to_edwards_curve(rec: CurveRecord) -> ed.TwistedEdwardsCurve:
    if rec.form != EDWARDS:
        raise ValueError("record is not an Edwards curve")
    return ed.TwistedEdwardsCurve(p=rec.p, a=rec.a, d=rec.d,
                                  n=rec.n, h=rec.h, k=rec.k)


def to_weierstrass_curve(rec: CurveRecord) -> wz.WeierstrassCurve:
    if rec.form != WEIERSTRASS:
        raise ValueError("record is not a Weierstrass curve")
    return wz.WeierstrassCurve(p=rec.p, a4=rec.a4, a6=rec.a6,
                               n=rec.n, h=rec.h, k=rec.k)


def make_tower(rec: CurveRecord, *, check_prime: bool = False) -> TowerCtx:
    return TowerCtx(PrimeFieldCtx(rec.p, check_prime=check_prime), rec.k)


# ---------------------------------------------------------------------------
# point sampling


def find_curve_point(rec: CurveRecord, rng: random.Random) -> tuple[int, int]:
    """A uniform-ish random affine point on the curve over F_p."""
    p = rec.p
    while True:
        x = rng.randrange(p)
        if rec.form == EDWARDS:
            num = (1 - rec.a * x * x) % p
            den = (1 - rec.d * x * x) % p
            if den == 0:
                continue
            y2 = num * pow(den, p - 2, p) % p
        else:
            y2 = (x * x * x + rec.a4 * x + rec.a6) % p
        y = sqrt_mod_p(y2, p)
        if y is None:
            continue
        if rng.randrange(2):
            y = (-y) % p
        return (x, y)


def find_order_n_point(rec: CurveRecord, rng: random.Random) -> tuple[int, int]:
    """An affine point of order exactly n (cofactor-cleared)."""
    cof = rec.group_order // rec.n
    while True:
        pt = find_curve_point(rec, rng)
        if rec.form == EDWARDS:
            P = ed.ed_scalar_mul_raw(rec.p, rec.a, rec.d, pt, cof)
            if P != (0, 1):
                return P
        else:
            P = wz.w_scalar_mul_raw(rec.p, rec.a4, pt, cof)
            if P is not None:
                return P


def twist_group_order(rec: CurveRecord) -> int:
    """#E'(F_q) for the quadratic twist over q = p^(k/2), via the trace
    recurrence t_m = t_1*t_{m-1} - p*t_{m-2}."""
    p, half = rec.p, rec.k // 2
    t_prev, t_cur = 2, p + 1 - rec.group_order
    for _ in range(half - 1):
        t_prev, t_cur = t_cur, t_cur * (p + 1 - rec.group_order) - p * t_prev
    q = p ** half
    return q + 1 + t_cur


def find_twist_point(tower: TowerCtx, rec: CurveRecord,
                     rng: random.Random) -> tuple:
    """An order-n point Q' on the quadratic twist over F_{p^(k/2)}.

    Edwards: Q' = (x0, y0) on a*delta*x^2 + y^2 = 1 + d*delta*x^2*y^2, so
    Q = (x0*alpha, y0) lies on the full curve over F_{p^k}.
    Weierstrass: Q' = (x_q, y_q) with delta*y_q^2 = x_q^3 + a4*x_q + a6, so
    Q = (x_q, y_q*alpha) lies on the full curve.
    """
    t = tower
    sops = SubOps(t)
    order = twist_group_order(rec)
    if order % rec.n != 0:
        raise ValueError("twist order not divisible by n")
    cof = order // rec.n

    if rec.form == EDWARDS:
        ad = t.s_mul(t.embed(rec.a), t.delta)
        dd = t.s_mul(t.embed(rec.d), t.delta)
        while True:
            x = _random_sub(t, rng)
            x2 = t.s_mul(x, x)
            den = t.s_sub(t.s_one(), t.s_mul(dd, x2))
            if t.s_is_zero(den):
                continue
            y2 = t.s_mul(t.s_sub(t.s_one(), t.s_mul(ad, x2)), t.s_inv(den))
            y = t.s_sqrt(y2)
            if y is None:
                continue
            try:
                Q = ed.edwards_affine_scalar_mul(sops, ad, dd, (x, y), cof)
            except ZeroDivisionError:
                continue
            if not t.s_is_zero(Q[0]):
                return Q
    else:
        # sample on the isomorphic subfield model
        # Y^2 = X^3 + a4*delta^2*X + a6*delta^3, then (x_q, y_q) = (X/d, Y/d^2)
        d2 = t.s_mul(t.delta, t.delta)
        A = t.s_mul(t.embed(rec.a4), d2)
        B = t.s_mul(t.embed(rec.a6), t.s_mul(d2, t.delta))
        dinv = t.s_inv(t.delta)
        d2inv = t.s_mul(dinv, dinv)
        while True:
            X = _random_sub(t, rng)
            y2 = t.s_add(t.s_add(t.s_mul(t.s_mul(X, X), X), t.s_mul(A, X)), B)
            Y = t.s_sqrt(y2)
            if Y is None:
                continue
            Q = wz.weierstrass_affine_scalar_mul(sops, A, (X, Y), cof)
            if Q is not None:
                return (t.s_mul(Q[0], dinv), t.s_mul(Q[1], d2inv))


def _random_sub(t: TowerCtx, rng: random.Random):
    return tuple(rng.randrange(t.p) for _ in range(t.half))


# ---------------------------------------------------------------------------
# validation


EFFORT_LEVELS = {"fast": (16, 2), "standard": (64, 5), "thorough": (128, 8)}


@dataclass
class ValidationReport:
    curve: str
    checks: list = field(default_factory=list)   # (name, ok, detail)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def validate_curve(rec: CurveRecord, *, effort: str = "standard",
                   seed: int = 0) -> ValidationReport:
    """Check every claim a record makes about itself."""
    if effort not in EFFORT_LEVELS:
        raise ValueError(f"effort must be one of {sorted(EFFORT_LEVELS)}")
    mr_rounds, n_points = EFFORT_LEVELS[effort]
    rng = random.Random(seed)
    rep = ValidationReport(curve=rec.name)
    p, n, k = rec.p, rec.n, rec.k

    rep.record("p-prime", is_probable_prime(p, mr_rounds),
               f"Miller-Rabin, {mr_rounds} rounds")
    rep.record("n-prime", is_probable_prime(n, mr_rounds),
               f"Miller-Rabin, {mr_rounds} rounds")
    rep.record("n-odd", n % 2 == 1, "")
    if rec.h_factored is not None:
        val, _ = parse_cofactor(rec.h_factored)
        rep.record("h-factored-consistent", val == rec.h, rec.h_factored)

    order = rec.group_order
    t = p + 1 - order
    rep.record("hasse", t * t <= 4 * p, f"trace {t}")
    rep.record("n-divides-pk-1", pow(p, k, n) == 1, f"k = {k}")
    proper = [i for i in range(1, k) if k % i == 0]
    rep.record("embedding-degree-exact",
               all(pow(p, i, n) != 1 for i in proper),
               f"checked i in {proper}")
    rep.record("n-not-dividing-p-1", (p - 1) % n != 0, "subgroup security")

    # group-order check on random points
    all_ok = True
    for _ in range(n_points):
        pt = find_curve_point(rec, rng)
        if rec.form == EDWARDS:
            all_ok &= ed.ed_scalar_mul_raw(p, rec.a, rec.d, pt, order) == (0, 1)
        else:
            all_ok &= wz.w_scalar_mul_raw(p, rec.a4, pt, order) is None
    rep.record("order-kills-points", all_ok, f"{n_points} random points")

    P = find_order_n_point(rec, rng)
    if rec.form == EDWARDS:
        has_n = ed.ed_scalar_mul_raw(p, rec.a, rec.d, P, n) == (0, 1)
    else:
        has_n = wz.w_scalar_mul_raw(p, rec.a4, P, n) is None
    rep.record("order-n-subgroup", has_n, "cofactor-cleared point killed by n")

    if rec.form == EDWARDS:
        d_nonsquare = pow(rec.d % p, (p - 1) // 2, p) == p - 1
        rep.record("d-nonsquare (informational)", True,
                   "nonsquare" if d_nonsquare else "square")
    rep.record("rho", True, f"{rec.rho:.2f}")
    return rep


# ---------------------------------------------------------------------------
# desk-scale curve derivation


_DESK_P_LO, _DESK_P_HI = 1 << 16, 1 << 17
_DESK_N_START = 2053


def _primes_in(lo: int, hi: int) -> list[int]:
    sieve = bytearray([1]) * (hi + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(sieve[i * i:: i]))
    return [i for i in range(lo, hi + 1) if sieve[i]]


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _element_order(a: int, n: int, n1_factors: dict[int, int]) -> int:
    order = n - 1
    for q in n1_factors:
        while order % q == 0 and pow(a, order // q, n) == 1:
            order //= q
    return order


def _kth_root_residues(n: int, k: int) -> set[int]:
    """Residues r mod n of multiplicative order exactly k."""
    fac = _factorize(n - 1)
    g = 2
    while _element_order(g, n, fac) != n - 1:
        g += 1
    root = pow(g, (n - 1) // k, n)
    return {pow(root, j, n) for j in range(1, k) if math.gcd(j, k) == 1}


def _unique_multiple(lo: int, hi: int, m: int) -> int | None:
    c = lo + (-lo) % m
    if c > hi:
        return None
    if c + m <= hi:
        return None  # not unique; caller wants a forced group order
    return c


def _point_order(rec_like, M_factors: dict[int, int], M: int, pt,
                 mul) -> int:
    order = M
    for q in M_factors:
        while order % q == 0 and mul(pt, order // q):
            order //= q
    return order


def _confirm_group_order(form: str, p: int, a_or_a4: int, d_or_a6: int,
                         M: int, rng: random.Random, tries: int = 10) -> bool:
    """Exact order check: the Hasse interval holds a unique multiple of the
    exponent lcm once the lcm is wide enough, and that multiple must be M."""
    fac = _factorize(M)
    s = math.isqrt(4 * p)
    lo, hi = p + 1 - s, p + 1 + s

    if form == EDWARDS:
        def kills(pt, m):
            try:
                return ed.ed_scalar_mul_raw(p, a_or_a4, d_or_a6, pt, m) == (0, 1)
            except ZeroDivisionError:
                return False

        def sample():
            while True:
                x = rng.randrange(p)
                den = (1 - d_or_a6 * x * x) % p
                if den == 0:
                    continue
                y2 = (1 - a_or_a4 * x * x) * pow(den, p - 2, p) % p
                y = sqrt_mod_p(y2, p)
                if y is not None:
                    return (x, y)
    else:
        def kills(pt, m):
            return wz.w_scalar_mul_raw(p, a_or_a4, pt, m) is None

        def sample():
            while True:
                x = rng.randrange(p)
                y = sqrt_mod_p((x * x * x + a_or_a4 * x + d_or_a6) % p, p)
                if y is not None:
                    return (x, y)

    lcm = 1
    for _ in range(tries):
        pt = sample()
        if not kills(pt, M):
            return False
        ordpt = _point_order(None, fac, M, pt, kills)
        lcm = lcm * ordpt // math.gcd(lcm, ordpt)
        if lcm > hi - lo:
            mult = _unique_multiple(lo, hi, lcm)
            return mult == M
    return False


def _legendre(a: int, p: int) -> int:
    return pow(a % p, (p - 1) // 2, p)


def _derive_desk_edwards(a: int, k: int, rng: random.Random,
                         name: str) -> CurveRecord:
    primes = _primes_in(_DESK_P_LO, _DESK_P_HI)
    n = _DESK_N_START - 1
    while n < 10 ** 6:
        n += 1
        while not is_probable_prime(n) or (n - 1) % k != 0:
            n += 1
        residues = _kth_root_residues(n, k)
        for p in primes:
            if p % n not in residues:
                continue
            s = math.isqrt(4 * p)
            M = _unique_multiple(p + 1 - s, p + 1 + s, 4 * n)
            if M is None:
                continue
            if a % p == 0:
                continue
            # curves with the forced order thin out as 1/sqrt(p); cap the
            # constant scan and fall through to the next candidate prime
            for d in range(2, min(p, 20000)):
                if d == a or _legendre(d, p) != p - 1:
                    continue
                if _confirm_group_order(EDWARDS, p, a, d, M, rng):
                    return CurveRecord(name=name, form=EDWARDS, p=p, n=n,
                                       h=M // (4 * n), k=k, a=a, d=d)
    raise RuntimeError("desk-scale Edwards search exhausted")


def _derive_desk_w_a0(rng: random.Random, name: str) -> CurveRecord:
    """j = 0 curve (a4 = 0) with exact embedding degree 6, via the CM norm
    equation 4p = t^2 + 3v^2.

    The order and residue conditions pin t and v mod n: with p = zeta mod n
    (zeta a primitive 6th root of unity, i.e. a root of x^2 - x + 1) we need
    t = zeta + 1 and v = +-(zeta - 1)/sqrt(-3); then n | p + 1 - t holds by
    construction and the a6 scan only has to pick the right sextic twist.
    """
    k = 6
    p_lo, p_hi = _DESK_P_LO, 1 << 22
    t_max = math.isqrt(4 * p_hi)
    n = 1030
    while n < 10 ** 6:
        n += 1
        while not is_probable_prime(n) or (n - 1) % 6 != 0:
            n += 1
        s = sqrt_mod_p((-3) % n, n)
        if s is None:
            continue
        inv2 = pow(2, n - 2, n)
        for zeta in ((1 + s) * inv2 % n, (1 - s) * inv2 % n):
            tau = (zeta + 1) % n
            v0 = (zeta - 1) * pow(s, n - 2, n) % n
            for t in range(tau if tau else n, t_max + 1, n):
                for vr in (v0, n - v0):
                    for v in range(vr if vr else n, t_max + 1, n):
                        if (t * t + 3 * v * v) % 4 != 0:
                            continue
                        p = (t * t + 3 * v * v) // 4
                        if not (p_lo <= p <= p_hi) or p % 3 != 1:
                            continue
                        if not is_probable_prime(p):
                            continue
                        M = p + 1 - t
                        if M % n != 0 or M <= 0:
                            continue
                        if any(pow(p, i, n) == 1 for i in (1, 2, 3)):
                            continue
                        for a6 in range(1, 256):
                            if _confirm_group_order(WEIERSTRASS, p, 0, a6,
                                                    M, rng):
                                return CurveRecord(name=name, form=WEIERSTRASS,
                                                   p=p, n=n, h=M // n, k=k,
                                                   a4=0, a6=a6, D=3)
    raise RuntimeError("desk-scale j = 0 search exhausted")


def _derive_desk_weierstrass(a4_kind: str, k: int, rng: random.Random,
                             name: str) -> CurveRecord:
    if a4_kind == "zero":
        return _derive_desk_w_a0(rng, name)
    primes = _primes_in(_DESK_P_LO, _DESK_P_HI)
    n = _DESK_N_START - 1
    while n < 10 ** 6:
        n += 1
        while not is_probable_prime(n) or (n - 1) % k != 0:
            n += 1
        residues = _kth_root_residues(n, k)
        for p in primes:
            if p % n not in residues:
                continue
            if a4_kind == "zero" and p % 3 != 1:
                continue  # ordinary j = 0 curves need p = 1 mod 3
            s = math.isqrt(4 * p)
            M = _unique_multiple(p + 1 - s, p + 1 + s, n)
            if M is None:
                continue
            a4 = (-3) % p if a4_kind == "minus3" else 0
            # j = 0 curves realize only six orders across all a6 (one per
            # sextic twist class), so a short scan already covers them all
            cap = 256 if a4_kind == "zero" else 20000
            for a6 in range(1, min(p, cap)):
                if (4 * a4 ** 3 + 27 * a6 * a6) % p == 0:
                    continue
                if _confirm_group_order(WEIERSTRASS, p, a4, a6, M, rng):
                    return CurveRecord(name=name, form=WEIERSTRASS, p=p, n=n,
                                       h=M // n, k=k,
                                       a4=a4 if a4_kind != "minus3" else -3,
                                       a6=a6)
    raise RuntimeError("desk-scale Weierstrass search exhausted")


def derive_desk_curves(seed: int = 0) -> dict[str, CurveRecord]:
    """Four small test curves, one per fused-formula family.

    The scan order is fixed, so the returned parameters are deterministic;
    the seed only drives the order-confirmation sampling.
    """
    rng = random.Random(seed)
    return {
        "desk-ed-a1-k6": _derive_desk_edwards(1, 6, rng, "desk-ed-a1-k6"),
        "desk-ed-a2-k4": _derive_desk_edwards(2, 4, rng, "desk-ed-a2-k4"),
        "desk-w-am3-k4": _derive_desk_weierstrass("minus3", 4, rng, "desk-w-am3-k4"),
        "desk-w-a0-k6": _derive_desk_weierstrass("zero", 6, rng, "desk-w-a0-k6"),
    }


# ---------------------------------------------------------------------------
# birational bridge


@dataclass(frozen=True)
class BirationalBridge:
    """Edwards(a, d) <-> short Weierstrass, through the Montgomery model
    B*v^2 = u^3 + A*u^2 + u with A = 2(a+d)/(a-d), B = 4/(a-d)."""
    rec: CurveRecord
    A: int
    B: int
    a4: int
    a6: int

    def weierstrass_curve(self) -> wz.WeierstrassCurve:
        return wz.WeierstrassCurve(p=self.rec.p, a4=self.a4, a6=self.a6,
                                   n=self.rec.n, h=4 * self.rec.h,
                                   k=self.rec.k)

    def two_torsion_x(self, ops):
        """x-coordinate of the image of (0, -1), the Edwards 2-torsion point."""
        third = ops.inv(ops.from_int(3))
        return ops.mul(ops.mul(ops.from_int(self.A), third),
                       ops.inv(ops.from_int(self.B)))

    def forward(self, ops, pt):
        """Edwards affine (x, y) -> Weierstrass affine (x, y) or None (infinity)."""
        x, y = pt
        one = ops.one()
        if ops.is_zero(x):
            if ops.eq(y, one):
                return None
            if ops.eq(y, ops.neg(one)):
                return (self.two_torsion_x(ops), ops.zero())
            raise ValueError("x = 0 point is not on the curve")
        if ops.eq(y, one):
            raise ValueError("exceptional point with y = 1")
        u = ops.mul(ops.add(one, y), ops.inv(ops.sub(one, y)))
        v = ops.mul(u, ops.inv(x))
        Binv = ops.inv(ops.from_int(self.B))
        third = ops.inv(ops.from_int(3))
        xw = ops.mul(ops.add(u, ops.mul(ops.from_int(self.A), third)), Binv)
        yw = ops.mul(v, Binv)
        return (xw, yw)

    def inverse(self, ops, pt):
        """Weierstrass affine (x, y) or None -> Edwards affine (x, y)."""
        one = ops.one()
        if pt is None:
            return (ops.zero(), one)
        xw, yw = pt
        third = ops.inv(ops.from_int(3))
        u = ops.sub(ops.mul(ops.from_int(self.B), xw),
                    ops.mul(ops.from_int(self.A), third))
        v = ops.mul(ops.from_int(self.B), yw)
        if ops.is_zero(v):
            if ops.is_zero(u):
                return (ops.zero(), ops.neg(one))
            raise ValueError("2-torsion point with no Edwards image")
        den = ops.add(u, one)
        if ops.is_zero(den):
            raise ValueError("exceptional point with u = -1")
        x = ops.mul(u, ops.inv(v))
        y = ops.mul(ops.sub(u, one), ops.inv(den))
        return (x, y)


def bridge_build(rec: CurveRecord) -> BirationalBridge:
    if rec.form != EDWARDS:
        raise ValueError("the bridge starts from an Edwards record")
    p = rec.p
    diff = (rec.a - rec.d) % p
    if diff == 0:
        raise ValueError("a = d is singular")
    dinv = pow(diff, p - 2, p)
    A = 2 * (rec.a + rec.d) % p * dinv % p
    B = 4 * dinv % p
    binv2 = pow(B * B % p, p - 2, p)
    a4 = (3 - A * A) % p * pow(3, p - 2, p) % p * binv2 % p
    a6 = (2 * A * A % p * A - 9 * A) % p * pow(27 * B % p, p - 2, p) % p * binv2 % p
    return BirationalBridge(rec=rec, A=A, B=B, a4=a4, a6=a6)


# ---------------------------------------------------------------------------
# cross-form consistency


def cross_form_pairing_check(rec: CurveRecord, *, trials: int = 2,
                             seed: int = 0,
                             tower: TowerCtx | None = None) -> bool:
    """Dual-route check: the conic-based Edwards pairing must agree with a
    textbook Miller evaluation on the birationally equivalent Weierstrass
    model (same points, mapped through the bridge)."""
    if rec.form != EDWARDS:
        raise ValueError("cross-form check starts from an Edwards record")
    t = tower if tower is not None else make_tower(rec)
    curve = to_edwards_curve(rec)
    bridge = bridge_build(rec)
    rng = random.Random(seed)
    pops = PrimeOps(rec.p)
    eops = ExtOps(t)
    for _ in range(trials):
        P = find_order_n_point(rec, rng)
        Q = find_twist_point(t, rec, rng)
        res = tate_pairing_edwards(t, curve, P, Q)

        Pw = bridge.forward(pops, P)
        ctx = ed.EdwardsPairingCtx(t, curve, Q[0], Q[1])
        Qw = bridge.forward(eops, ctx.untwisted_affine())
        ref = naive_miller_oracle(t, bridge.a4, bridge.a6, Pw, Qw, rec.n)
        if res.value != ref:
            return False
        if res.value == t.ext_one():
            return False  # degenerate pairing would make the check vacuous
    return True
