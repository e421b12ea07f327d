"""Jacobian-coordinate arithmetic on y^2 = x^3 + a4*x + a6 and the fused
Miller-step formulas (point update plus line evaluation at the twisted
second argument) for the a4 = -3 and a4 = 0 curve families.

Points carry a cached fourth coordinate T = Z^2; the affine point is
(X/Z^2, Y/Z^3), and the point at infinity is encoded as (1 : 1 : 0 : 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .bigfield import Ext, PrimeFieldCtx, Sub, TowerCtx

FLAVOR_AM3 = "a4_minus3"
FLAVOR_A0 = "a4_zero"
FLAVOR_GENERIC = "generic"


@dataclass(frozen=True)
class WeierstrassCurve:
    p: int
    a4: int
    a6: int
    n: int
    h: int
    k: int

    def __post_init__(self):
        p = self.p
        disc = (4 * pow(self.a4, 3, p) + 27 * self.a6 * self.a6) % p
        if disc == 0:
            raise ValueError("singular curve: 4*a4^3 + 27*a6^2 = 0")

    @property
    def flavor(self) -> str:
        if self.a4 % self.p == self.p - 3:
            return FLAVOR_AM3
        if self.a4 % self.p == 0:
            return FLAVOR_A0
        return FLAVOR_GENERIC


class JacobianPointT(NamedTuple):
    X: int
    Y: int
    Z: int
    T: int


JAC_INF = JacobianPointT(1, 1, 0, 0)


def jac_from_affine(x: int, y: int, p: int, z: int = 1) -> JacobianPointT:
    """Jacobian representative with the chosen z (z != 1 exercises full adds)."""
    z %= p
    if z == 0:
        raise ValueError("z must be nonzero")
    t = z * z % p
    return JacobianPointT(x * t % p, y * t % p * z % p, z, t)


def jac_to_affine(pt: JacobianPointT, p: int) -> tuple[int, int] | None:
    if pt.Z % p == 0:
        return None
    zi = pow(pt.Z, p - 2, p)
    zi2 = zi * zi % p
    return (pt.X * zi2 % p, pt.Y * zi2 % p * zi % p)


def jac_on_curve(curve: WeierstrassCurve, pt: JacobianPointT) -> bool:
    p = curve.p
    X, Y, Z, T = pt
    if (T - Z * Z) % p != 0:
        return False
    if Z % p == 0:
        return True
    lhs = Y * Y % p
    rhs = (X ** 3 + curve.a4 * X * T * T + curve.a6 * pow(T, 3, p)) % p
    return lhs == rhs


# ---------------------------------------------------------------------------
# pairing context


class WeierstrassPairingCtx:
    """Caches for a fixed Jacobian base point P and twisted argument Q.

    Q = (x_Q : y_Q*alpha : 1) with x_Q, y_Q in F_{p^{k/2}} (i.e. Q' on the
    quadratic twist).  Per base point P = (X2:Y2:Z2:T2) the context stores
    R2 = Y2^2, S2 = T2*Z2 and the folded line constants
    x'_Q = 2*(x_Q*Z2^2 - X2)*Z2 and y'_Q = 2*y_Q*Z2^3 (alpha part).
    """

    def __init__(self, tower: TowerCtx, curve: WeierstrassCurve,
                 base: JacobianPointT, x_q: Sub, y_q: Sub):
        t = tower
        p = t.p
        if (base.T - base.Z * base.Z) % p != 0 or base.Z % p == 0:
            raise ValueError("base point must be affine-representable with T = Z^2")
        if not jac_on_curve(curve, base):
            raise ValueError("base point is not on the curve")
        # untwist check: (y_q*alpha)^2 = x_q^3 + a4*x_q + a6
        rhs = t.s_add(t.s_add(t.s_mul(t.s_mul(x_q, x_q), x_q),
                              t.s_mul(t.embed(curve.a4), x_q)),
                      t.embed(curve.a6))
        if t.s_mul(t.delta, t.s_mul(y_q, y_q)) != rhs:
            raise ValueError("Q does not lie on the curve after untwisting")
        self.tower = t
        self.fp = t.base
        self.curve = curve
        self.base = base
        self.x_q, self.y_q = x_q, y_q
        X2, Y2, Z2, T2 = base
        self.R2 = Y2 * Y2 % p
        self.S2 = T2 * Z2 % p
        xz = t.s_sub(t.s_mul(x_q, t.embed(T2)), t.embed(X2))
        self.xq_p = tuple(2 * Z2 * c % p for c in xz)
        self.yq_p = tuple(2 * self.S2 * c % p for c in y_q)
        self.mixed = base.Z % p == 1

    def q_untwisted_affine(self) -> tuple[Ext, Ext]:
        t = self.tower
        return (t.ext_from_sub(self.x_q), Ext(t.s_zero(), self.y_q))


def _require_affine(R: JacobianPointT, p: int) -> None:
    if R.Z % p == 0:
        raise ValueError("step applied to the point at infinity")


# ---------------------------------------------------------------------------
# doubling steps


def w_dbl_step_am3(ctx: WeierstrassPairingCtx, R: JacobianPointT
                   ) -> tuple[JacobianPointT, Ext]:
    """Doubling step for a4 = -3: (k+6)m + 5s."""
    fp, t = ctx.fp, ctx.tower
    _require_affine(R, fp.p)
    X1, Y1, Z1, T1 = R
    A = fp.sqr(Y1)
    B = fp.mul(X1, A)
    C = fp.mul(fp.sub(X1, T1), fp.add(X1, T1))
    C = fp.add(fp.add(C, C), C)
    B4 = fp.add(B, B)
    B4 = fp.add(B4, B4)
    X3 = fp.sub(fp.sqr(C), fp.add(B4, B4))
    Z3 = fp.sub(fp.sub(fp.sqr(fp.add(Y1, Z1)), A), T1)
    A2 = fp.sqr(A)
    A8 = fp.add(fp.add(A2, A2), fp.add(A2, A2))
    Y3 = fp.sub(fp.mul(C, fp.sub(B4, X3)), fp.add(A8, A8))
    ZT = fp.mul(Z3, T1)
    CT = fp.mul(C, T1)
    l_a1 = t.scale(ZT, ctx.y_q)
    l_a0 = t.s_sub(t.embed(fp.sub(fp.mul(X1, C), fp.add(A, A))),
                   t.scale(CT, ctx.x_q))
    T3 = fp.sqr(Z3)
    return (JacobianPointT(X3, Y3, Z3, T3), Ext(l_a0, l_a1))


def w_dbl_step_a0(ctx: WeierstrassPairingCtx, R: JacobianPointT
                  ) -> tuple[JacobianPointT, Ext]:
    """Doubling step for a4 = 0: (k+3)m + 8s."""
    fp, t = ctx.fp, ctx.tower
    _require_affine(R, fp.p)
    X1, Y1, Z1, T1 = R
    A = fp.sqr(X1)
    B = fp.sqr(Y1)
    C = fp.sqr(B)
    D = fp.sub(fp.sub(fp.sqr(fp.add(X1, B)), A), C)
    D = fp.add(D, D)
    E = fp.add(fp.add(A, A), A)
    G = fp.sqr(E)
    X3 = fp.sub(G, fp.add(D, D))
    C8 = fp.add(fp.add(C, C), fp.add(C, C))
    Y3 = fp.sub(fp.mul(E, fp.sub(D, X3)), fp.add(C8, C8))
    Z3 = fp.sub(fp.sub(fp.sqr(fp.add(Y1, Z1)), B), T1)
    ZT = fp.mul(Z3, T1)
    ET = fp.mul(E, T1)
    l_a1 = t.scale(fp.add(ZT, ZT), ctx.y_q)
    base_part = fp.sub(fp.sub(fp.sqr(fp.add(X1, E)), A), G)
    base_part = fp.sub(base_part, fp.add(fp.add(B, B), fp.add(B, B)))
    l_a0 = t.s_sub(t.embed(base_part), t.scale(fp.add(ET, ET), ctx.x_q))
    T3 = fp.sqr(Z3)
    return (JacobianPointT(X3, Y3, Z3, T3), Ext(l_a0, l_a1))


# ---------------------------------------------------------------------------
# addition steps


def w_add_step(ctx: WeierstrassPairingCtx, R: JacobianPointT
               ) -> tuple[JacobianPointT, Ext]:
    """Full addition step R + P with cached R2, S2, x'_Q, y'_Q: (k+9)m + 6s."""
    fp, t = ctx.fp, ctx.tower
    _require_affine(R, fp.p)
    X1, Y1, Z1, T1 = R
    X2, Y2, Z2, T2 = ctx.base
    A = fp.mul(X1, T2)
    B = fp.mul(X2, T1)
    C = fp.mul(Y1, ctx.S2)
    C = fp.add(C, C)
    D = fp.mul(fp.sub(fp.sub(fp.sqr(fp.add(Y2, Z1)), ctx.R2), T1), T1)
    H = fp.sub(B, A)
    if H == 0:
        raise ValueError("degenerate addition: R = +/-P")
    H2 = fp.add(H, H)
    I = fp.sqr(H2)
    J = fp.mul(H, I)
    L1 = fp.sub(D, C)
    V = fp.mul(A, I)
    X3 = fp.sub(fp.sub(fp.sqr(L1), J), fp.add(V, V))
    Y3 = fp.sub(fp.mul(L1, fp.sub(V, X3)), fp.mul(C, J))
    Z3 = fp.mul(fp.sub(fp.sub(fp.sqr(fp.add(Z1, Z2)), T1), T2), H)
    T3 = fp.sqr(Z3)
    l_a1 = t.scale(Z3, ctx.yq_p)
    base_part = fp.add(fp.add(fp.neg(fp.sqr(fp.add(Y2, Z3))), ctx.R2), T3)
    l_a0 = t.s_sub(t.embed(base_part), t.scale(L1, ctx.xq_p))
    return (JacobianPointT(X3, Y3, Z3, T3), Ext(l_a0, l_a1))


def w_madd_step(ctx: WeierstrassPairingCtx, R: JacobianPointT
                ) -> tuple[JacobianPointT, Ext]:
    """Mixed addition step (base point affine, Z2 = 1): (k+6)m + 6s."""
    fp, t = ctx.fp, ctx.tower
    _require_affine(R, fp.p)
    if not ctx.mixed:
        raise ValueError("context base point is not affine")
    X1, Y1, Z1, T1 = R
    x2, y2 = ctx.base.X, ctx.base.Y
    B = fp.mul(x2, T1)
    D = fp.mul(fp.sub(fp.sub(fp.sqr(fp.add(y2, Z1)), ctx.R2), T1), T1)
    H = fp.sub(B, X1)
    if H == 0:
        raise ValueError("degenerate addition: R = +/-P")
    I = fp.sqr(H)
    E = fp.add(fp.add(I, I), fp.add(I, I))
    J = fp.mul(H, E)
    L1 = fp.sub(D, fp.add(Y1, Y1))
    V = fp.mul(X1, E)
    X3 = fp.sub(fp.sub(fp.sqr(L1), J), fp.add(V, V))
    YJ = fp.mul(Y1, J)
    Y3 = fp.sub(fp.mul(L1, fp.sub(V, X3)), fp.add(YJ, YJ))
    Z3 = fp.sub(fp.sub(fp.sqr(fp.add(Z1, H)), T1), I)
    T3 = fp.sqr(Z3)
    l_a1 = t.scale(fp.add(Z3, Z3), ctx.y_q)
    base_part = fp.add(fp.add(fp.neg(fp.sqr(fp.add(y2, Z3))), ctx.R2), T3)
    xdiff = t.s_sub(ctx.x_q, t.embed(x2))
    l_a0 = t.s_sub(t.embed(base_part), t.scale(fp.add(L1, L1), xdiff))
    return (JacobianPointT(X3, Y3, Z3, T3), Ext(l_a0, l_a1))


# ---------------------------------------------------------------------------
# affine group law over generic field ops (oracle, bridge, validation)


def weierstrass_affine_add(ops, a4, p1, p2):
    """Chord-and-tangent addition; points are (x, y) pairs or None (infinity)."""
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if ops.eq(x1, x2):
        if ops.eq(y1, ops.neg(y2)):
            return None
        lam = ops.mul(ops.add(ops.mul(ops.from_int(3), ops.sqr(x1)), a4),
                      ops.inv(ops.add(y1, y1)))
    else:
        lam = ops.mul(ops.sub(y2, y1), ops.inv(ops.sub(x2, x1)))
    x3 = ops.sub(ops.sub(ops.sqr(lam), x1), x2)
    y3 = ops.sub(ops.mul(lam, ops.sub(x1, x3)), y1)
    return (x3, y3)


def weierstrass_affine_scalar_mul(ops, a4, pt, e: int):
    acc = None
    add = pt
    while e:
        if e & 1:
            acc = weierstrass_affine_add(ops, a4, acc, add)
        e >>= 1
        if e:
            add = weierstrass_affine_add(ops, a4, add, add)
    return acc


def w_scalar_mul_raw(p: int, a4: int, pt: tuple[int, int] | None,
                     e: int) -> tuple[int, int] | None:
    """Fast uncounted affine scalar multiple via Jacobian coordinates."""
    if pt is None or e == 0:
        return None

    def dbl(P):
        X1, Y1, Z1 = P
        if Z1 == 0 or Y1 == 0:
            return (1, 1, 0)
        A = X1 * X1 % p
        B = Y1 * Y1 % p
        C = B * B % p
        D = 2 * ((X1 + B) ** 2 - A - C) % p
        E = (3 * A + a4 * pow(Z1, 4, p)) % p
        X3 = (E * E - 2 * D) % p
        Y3 = (E * (D - X3) - 8 * C) % p
        Z3 = 2 * Y1 * Z1 % p
        return (X3, Y3, Z3)

    def add(P, Q2):
        # Q2 affine (x2, y2)
        X1, Y1, Z1 = P
        if Z1 == 0:
            x2, y2 = Q2
            return (x2, y2, 1)
        x2, y2 = Q2
        Z1Z1 = Z1 * Z1 % p
        U2 = x2 * Z1Z1 % p
        S2 = y2 * Z1 % p * Z1Z1 % p
        H = (U2 - X1) % p
        r = (S2 - Y1) % p
        if H == 0:
            if r == 0:
                return dbl(P)
            return (1, 1, 0)
        HH = H * H % p
        HHH = H * HH % p
        V = X1 * HH % p
        X3 = (r * r - HHH - 2 * V) % p
        Y3 = (r * (V - X3) - Y1 * HHH) % p
        Z3 = Z1 * H % p
        return (X3, Y3, Z3)

    acc = (1, 1, 0)
    for bit in bin(e)[2:]:
        acc = dbl(acc)
        if bit == "1":
            acc = add(acc, pt)
    if acc[2] == 0:
        return None
    zi = pow(acc[2], p - 2, p)
    zi2 = zi * zi % p
    return (acc[0] * zi2 % p, acc[1] * zi2 % p * zi % p)
