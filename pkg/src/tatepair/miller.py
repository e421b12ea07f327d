"""Miller's algorithm, final exponentiation, pairing front-ends for both
curve forms, and an independent naive affine oracle.

The loop walks the bits of the odd prime n below the leading one.  Because
n is odd, the very last addition would compute R + P = O; its function has
divisor (P) + (-P) - 2(O) and evaluates into a proper subfield at the
twisted argument, so that step is skipped entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigfield import Ext, ExtOps, PrimeFieldCtx, PrimeOps, TowerCtx
from .opcount import OpCounter
from . import edwards as ed
from . import weierstrass as wz


class OracleDegenerateError(ArithmeticError):
    """A line hit a zero/pole at Q; the caller should re-randomize Q."""


@dataclass
class PairingResult:
    value: Ext      # reduced pairing, an n-th root of unity
    raw: Ext        # Miller value before final exponentiation
    counts: OpCounter  # operations of the Miller loop only


# ---------------------------------------------------------------------------
# step adapters


class EdwardsStepAdapter:
    """Fused conic steps on a twisted Edwards curve."""

    def __init__(self, fp: PrimeFieldCtx, curve: ed.TwistedEdwardsCurve,
                 ctx: ed.EdwardsPairingCtx, base: ed.ExtendedEdwardsPoint):
        self.fp = fp
        self.curve = curve
        self.ctx = ctx
        self.base = base
        self.start = base

    def dbl(self, R):
        R3, conic = ed.ed_dbl_step(self.fp, self.curve, R)
        return R3, ed.ed_eval_conic(self.ctx, conic)

    def add(self, R):
        R3, conic = ed.ed_add_step(self.fp, self.curve, R, self.base)
        return R3, ed.ed_eval_conic(self.ctx, conic)

    def at_minus_base(self, R) -> bool:
        p = self.fp.p
        return ed.ed_equal(p, R, ed.ed_mirror(self.base, p))


class WeierstrassStepAdapter:
    """Fused Jacobian steps; the doubling flavor is selected by the curve."""

    def __init__(self, ctx: wz.WeierstrassPairingCtx):
        flavor = ctx.curve.flavor
        if flavor == wz.FLAVOR_AM3:
            self._dbl = wz.w_dbl_step_am3
        elif flavor == wz.FLAVOR_A0:
            self._dbl = wz.w_dbl_step_a0
        else:
            raise ValueError("no fused doubling for generic a4 (use the naive path)")
        self.ctx = ctx
        self.start = ctx.base

    def dbl(self, R):
        return self._dbl(self.ctx, R)

    def add(self, R):
        if self.ctx.mixed:
            return wz.w_madd_step(self.ctx, R)
        return wz.w_add_step(self.ctx, R)

    def at_minus_base(self, R) -> bool:
        p = self.ctx.fp.p
        ra = wz.jac_to_affine(R, p)
        ba = wz.jac_to_affine(self.ctx.base, p)
        return ra is not None and ra[0] == ba[0] and ra[1] == (-ba[1]) % p


# ---------------------------------------------------------------------------
# the loop


def miller_loop(tower: TowerCtx, adapter, n: int) -> tuple[Ext, object]:
    """Run Miller's algorithm for an odd prime n; returns (f, final R).

    Updates cost 1M + 1S per doubling step and 1M per executed addition
    step.  The last addition (which would produce O) is skipped, so the
    returned R satisfies R = -P for an order-n input.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd prime >= 3")
    bits = bin(n)[2:]
    f = tower.ext_one()
    R = adapter.start
    last = len(bits) - 1
    for i, bit in enumerate(bits[1:], start=1):
        f = tower.ext_sqr(f)
        R, g = adapter.dbl(R)
        f = tower.ext_mul(f, g)
        if bit == "1" and i != last:
            R, g = adapter.add(R)
            f = tower.ext_mul(f, g)
    return f, R


def final_exponentiation(tower: TowerCtx, f: Ext, n: int) -> Ext:
    """f^((p^k - 1)/n), mapping the Miller value into mu_n."""
    if tower.ext_is_zero(f):
        raise ZeroDivisionError("zero Miller value (upstream degeneracy)")
    order = tower.p ** tower.k - 1
    if order % n != 0:
        raise ValueError("n does not divide p^k - 1")
    return tower._ext_pow_raw(f, order // n)


# ---------------------------------------------------------------------------
# front-ends


def tate_pairing_edwards(tower: TowerCtx, curve: ed.TwistedEdwardsCurve,
                         P: tuple[int, int], Qprime: tuple,
                         *, mixed: bool = True, base_z: int = 2,
                         check_order: bool = True) -> PairingResult:
    """Reduced Tate pairing of an order-n point P and a twist point Q'.

    P is affine over F_p; Qprime is (X0, Y0) or (X0, Y0, Z0) with subfield
    coordinates.  With mixed=False the base point is rescaled so every
    addition step is a full addition.
    """
    p = tower.p
    n = curve.n
    Pext = ed.ed_from_affine(P[0], P[1], p)
    if not ed.ed_on_curve(curve, Pext):
        raise ValueError("P is not on the curve")
    if check_order and ed.ed_scalar_mul_raw(p, curve.a, curve.d, (P[0], P[1]), n) != (0, 1):
        raise ValueError("P does not have order n")
    ctx = ed.EdwardsPairingCtx(tower, curve, Qprime[0], Qprime[1],
                               Qprime[2] if len(Qprime) > 2 else None)
    base = Pext
    if not mixed:
        lam = base_z % p
        base = ed.ExtendedEdwardsPoint(base.X * lam % p, base.Y * lam % p,
                                       lam, base.T * lam % p)
    adapter = EdwardsStepAdapter(tower.base, curve, ctx, base)
    before = tower.snapshot()
    f, R = miller_loop(tower, adapter, n)
    counts = tower.snapshot() - before
    if not adapter.at_minus_base(R):
        raise ValueError("Miller trajectory violation: P is not of order n")
    value = final_exponentiation(tower, f, n)
    return PairingResult(value=value, raw=f, counts=counts)


def tate_pairing_weierstrass(tower: TowerCtx, curve: wz.WeierstrassCurve,
                             P: tuple[int, int], Qprime: tuple,
                             *, mixed: bool = True, base_z: int = 2,
                             check_order: bool = True) -> PairingResult:
    """Reduced Tate pairing with the fused Jacobian steps.

    Qprime = (x_Q, y_Q) subfield coordinates of the twisted argument.
    Generic-a4 curves take the naive affine path (not count-certified).
    """
    p = tower.p
    n = curve.n
    if check_order and wz.w_scalar_mul_raw(p, curve.a4, P, n) is not None:
        raise ValueError("P does not have order n")
    if curve.flavor == wz.FLAVOR_GENERIC:
        return _tate_weierstrass_naive_path(tower, curve, P, Qprime)
    base = wz.jac_from_affine(P[0], P[1], p, z=1 if mixed else base_z)
    ctx = wz.WeierstrassPairingCtx(tower, curve, base, Qprime[0], Qprime[1])
    adapter = WeierstrassStepAdapter(ctx)
    before = tower.snapshot()
    f, R = miller_loop(tower, adapter, n)
    counts = tower.snapshot() - before
    if not adapter.at_minus_base(R):
        raise ValueError("Miller trajectory violation: P is not of order n")
    value = final_exponentiation(tower, f, n)
    return PairingResult(value=value, raw=f, counts=counts)


class _NaiveTwistAdapter:
    """Affine chord/tangent steps with denominator elimination for twisted Q."""

    def __init__(self, tower: TowerCtx, curve: wz.WeierstrassCurve,
                 P: tuple[int, int], x_q, y_q):
        self.t = tower
        self.ops = PrimeOps(tower.p)
        self.curve = curve
        self.base = P
        self.x_q, self.y_q = x_q, y_q
        self.start = P

    def _line(self, R, lam):
        # y_Q*alpha - y_R - lam*(x_Q - x_R), with x_Q, y_Q in the subfield
        t = self.t
        xr, yr = R
        xdiff = t.s_sub(self.x_q, t.embed(xr))
        a0 = t.s_sub(t.s_neg(t.embed(yr)), t.scale(lam, xdiff))
        return Ext(a0, self.y_q)

    def dbl(self, R):
        ops = self.ops
        xr, yr = R
        lam = ops.mul(ops.add(ops.mul(3, ops.sqr(xr)), self.curve.a4),
                      ops.inv(ops.add(yr, yr)))
        g = self._line(R, lam)
        R3 = wz.weierstrass_affine_add(ops, self.curve.a4, R, R)
        return R3, g

    def add(self, R):
        ops = self.ops
        xr, yr = R
        x2, y2 = self.base
        lam = ops.mul(ops.sub(y2, yr), ops.inv(ops.sub(x2, xr)))
        g = self._line(R, lam)
        R3 = wz.weierstrass_affine_add(ops, self.curve.a4, R, self.base)
        return R3, g

    def at_minus_base(self, R) -> bool:
        return (R is not None and R[0] == self.base[0]
                and R[1] == (-self.base[1]) % self.t.p)


def _tate_weierstrass_naive_path(tower, curve, P, Qprime) -> PairingResult:
    adapter = _NaiveTwistAdapter(tower, curve, P, Qprime[0], Qprime[1])
    before = tower.snapshot()
    f, R = miller_loop(tower, adapter, curve.n)
    counts = tower.snapshot() - before
    if not adapter.at_minus_base(R):
        raise ValueError("Miller trajectory violation: P is not of order n")
    value = final_exponentiation(tower, f, curve.n)
    return PairingResult(value=value, raw=f, counts=counts)


# ---------------------------------------------------------------------------
# independent oracle


def naive_miller_oracle(tower: TowerCtx, a4: int, a6: int,
                        P: tuple[int, int], Q: tuple[Ext, Ext],
                        n: int) -> Ext:
    """Textbook reduced Tate pairing; ground truth for every optimized path.

    All point arithmetic is affine over F_p with explicit inversions; the
    full function value (numerator over denominator) is evaluated at a
    general Q in E(F_{p^k}).  No denominator elimination, no fused formulas.
    """
    eops = ExtOps(tower)
    pops = PrimeOps(tower.p)
    x_q, y_q = Q

    def line_value(R, S):
        """g_{R,S}(Q) for affine R, S (vertical-line case when R + S = O)."""
        xr, yr = R
        if S is None or R is None:
            raise OracleDegenerateError("line through the point at infinity")
        RS = wz.weierstrass_affine_add(pops, a4, R, S)
        if RS is None:
            # vertical line x - x_R, divisor (R) + (S) - 2(O)
            v = eops.sub(x_q, eops.from_int(xr))
            if eops.is_zero(v):
                raise OracleDegenerateError("Q on a vertical line")
            return v, RS
        if R == S:
            lam = pops.mul(pops.add(pops.mul(3, pops.sqr(xr)), a4),
                           pops.inv(pops.add(yr, yr)))
        else:
            lam = pops.mul(pops.sub(S[1], yr), pops.inv(pops.sub(S[0], xr)))
        num = eops.sub(eops.sub(y_q, eops.from_int(yr)),
                       eops.mul(eops.from_int(lam),
                                eops.sub(x_q, eops.from_int(xr))))
        den = eops.sub(x_q, eops.from_int(RS[0]))
        if eops.is_zero(num) or eops.is_zero(den):
            raise OracleDegenerateError("Q on a line zero/pole")
        return eops.mul(num, eops.inv(den)), RS

    f = eops.one()
    R = P
    for bit in bin(n)[3:]:
        g, R2 = line_value(R, R)
        f = eops.mul(eops.sqr(f), g)
        R = R2
        if bit == "1":
            g, R2 = line_value(R, P)
            f = eops.mul(f, g)
            R = R2
    if R is not None:
        raise ValueError("P does not have order n")
    order = tower.p ** tower.k - 1
    return tower._ext_pow_raw(f, order // n)
