"""Twisted Edwards arithmetic in extended coordinates and the conic-section
group-law functions consumed by the Miller loop.

A point (X:Y:Z:T) with Z != 0 and T = XY/Z represents the affine point
(X/Z, Y/Z) on ax^2 + y^2 = 1 + dx^2y^2.  The conic through the two singular
points at infinity, the order-2 point (0,-1) and a pair of curve points
replaces the Weierstrass line in each pairing step; its coefficients are the
projective triple (c_Z2 : c_XY : c_XZ) of

    c_Z2*(Z^2 + Y*Z) + c_XY*X*Y + c_XZ*X*Z = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .bigfield import Ext, PrimeFieldCtx, Sub, TowerCtx


@dataclass(frozen=True)
class TwistedEdwardsCurve:
    p: int
    a: int
    d: int
    n: int
    h: int
    k: int

    def __post_init__(self):
        a, d = self.a % self.p, self.d % self.p
        if a == 0 or d == 0 or a == d:
            raise ValueError("require a != 0, d != 0 and a != d")


class ExtendedEdwardsPoint(NamedTuple):
    X: int
    Y: int
    Z: int
    T: int


class ConicCoefficients(NamedTuple):
    cZ2: int
    cXY: int
    cXZ: int


def ed_neutral() -> ExtendedEdwardsPoint:
    return ExtendedEdwardsPoint(0, 1, 1, 0)


def ed_from_affine(x: int, y: int, p: int) -> ExtendedEdwardsPoint:
    x, y = x % p, y % p
    return ExtendedEdwardsPoint(x, y, 1, x * y % p)


def ed_to_affine(pt: ExtendedEdwardsPoint, p: int) -> tuple[int, int]:
    zi = pow(pt.Z, p - 2, p)
    return (pt.X * zi % p, pt.Y * zi % p)


def ed_on_curve(curve: TwistedEdwardsCurve, pt: ExtendedEdwardsPoint) -> bool:
    p = curve.p
    X, Y, Z, T = pt
    if Z % p == 0:
        return False
    if (X * Y - Z * T) % p != 0:
        return False
    lhs = (curve.a * X * X + Y * Y) * Z * Z % p
    rhs = (Z ** 4 + curve.d * X * X * Y * Y) % p
    return lhs == rhs


def ed_mirror(pt: ExtendedEdwardsPoint, p: int) -> ExtendedEdwardsPoint:
    """Negation (x, y) -> (-x, y); an involution fixing the neutral point."""
    return ExtendedEdwardsPoint(-pt.X % p, pt.Y, pt.Z, -pt.T % p)


def ed_equal(p: int, a: ExtendedEdwardsPoint, b: ExtendedEdwardsPoint) -> bool:
    return ((a.X * b.Z - b.X * a.Z) % p == 0
            and (a.Y * b.Z - b.Y * a.Z) % p == 0)


# ---------------------------------------------------------------------------
# Theorem-form conic coefficients (literal, uncounted; geometry tests)


def conic_add_distinct(p: int, P1: ExtendedEdwardsPoint,
                       P2: ExtendedEdwardsPoint) -> ConicCoefficients:
    """Conic through two distinct affine points, neither equal to (0,-1)."""
    X1, Y1, Z1 = P1.X, P1.Y, P1.Z
    X2, Y2, Z2 = P2.X, P2.Y, P2.Z
    if ed_equal(p, P1, P2):
        raise ValueError("points must be distinct (use conic_double)")
    oprime = ExtendedEdwardsPoint(0, -1, 1, 0)
    if ed_equal(p, P1, oprime) or ed_equal(p, P2, oprime):
        raise ValueError("neither point may be the order-2 point (0,-1)")
    cZ2 = X1 * X2 % p * (Y1 * Z2 - Y2 * Z1) % p
    cXY = Z1 * Z2 % p * (X1 * Z2 - X2 * Z1 + X1 * Y2 - X2 * Y1) % p
    cXZ = (X2 * Y2 % p * (Z1 * Z1 % p) - X1 * Y1 % p * (Z2 * Z2 % p)
           + Y1 * Y2 % p * (X2 * Z1 - X1 * Z2)) % p
    return ConicCoefficients(cZ2, cXY, cXZ)


def conic_add_oprime(p: int, P1: ExtendedEdwardsPoint) -> ConicCoefficients:
    """Conic through P1 and (doubly) the order-2 point (0,-1)."""
    if ed_equal(p, P1, ExtendedEdwardsPoint(0, -1, 1, 0)):
        raise ValueError("P1 must differ from (0,-1)")
    return ConicCoefficients(-P1.X % p, P1.Z % p, P1.Z % p)


def conic_double(curve: TwistedEdwardsCurve,
                 P1: ExtendedEdwardsPoint) -> ConicCoefficients:
    """Conic tangent to the curve at the affine point P1."""
    p = curve.p
    X1, Y1, Z1 = P1.X, P1.Y, P1.Z
    cZ2 = X1 * Z1 % p * (Z1 - Y1) % p
    cXY = (curve.d * X1 * X1 % p * Y1 - Z1 ** 3) % p
    cXZ = Z1 * (Z1 * Y1 - curve.a * X1 * X1) % p
    return ConicCoefficients(cZ2, cXY, cXZ)


def conic_eval(p: int, c: ConicCoefficients, X: int, Y: int, Z: int) -> int:
    """Evaluate the conic polynomial at a projective point (incidence oracle)."""
    return (c.cZ2 * (Z * Z + Y * Z) + c.cXY * X * Y + c.cXZ * X * Z) % p


# ---------------------------------------------------------------------------
# fused Miller steps (counted)


def ed_add_step(fp: PrimeFieldCtx, curve: TwistedEdwardsCurve,
                P1: ExtendedEdwardsPoint, P2: ExtendedEdwardsPoint
                ) -> tuple[ExtendedEdwardsPoint, ConicCoefficients]:
    """Distinct-point addition with conic coefficients scaled by 1/(Z1*Z2).

    Costs 14m + 1m_a, or 12m + 1m_a when Z2 = 1 (mixed addition).
    """
    X1, Y1, Z1, T1 = P1
    X2, Y2, Z2, T2 = P2
    mixed = Z2 == 1
    A = fp.mul(X1, X2)
    B = fp.mul(Y1, Y2)
    C = fp.mul(Z1, T2)
    D = T1 if mixed else fp.mul(T1, Z2)
    E = fp.add(D, C)
    F = fp.add(fp.mul(fp.sub(X1, Y1), fp.add(X2, Y2)), fp.sub(B, A))
    G = fp.add(B, fp.mul_const(curve.a, A, "a"))
    H = fp.sub(D, C)
    I = fp.mul(T1, T2)
    cZ2 = fp.add(fp.sub(fp.mul(fp.sub(T1, X1), fp.add(T2, X2)), I), A)
    x1z2 = X1 if mixed else fp.mul(X1, Z2)
    cXY = fp.add(fp.sub(x1z2, fp.mul(X2, Z1)), F)
    cXZ = fp.sub(fp.add(fp.sub(fp.mul(fp.sub(Y1, T1), fp.add(Y2, T2)), B), I), H)
    X3 = fp.mul(E, F)
    Y3 = fp.mul(G, H)
    T3 = fp.mul(E, H)
    Z3 = fp.mul(F, G)
    if Z3 == 0:
        raise ValueError("degenerate addition (equal or bad-order inputs)")
    return (ExtendedEdwardsPoint(X3, Y3, Z3, T3), ConicCoefficients(cZ2, cXY, cXZ))


def ed_dbl_step(fp: PrimeFieldCtx, curve: TwistedEdwardsCurve,
                P1: ExtendedEdwardsPoint
                ) -> tuple[ExtendedEdwardsPoint, ConicCoefficients]:
    """Doubling with conic coefficients scaled by -2*Y1/Z1^2.

    Costs 6m + 5s + 2m_a (the m_a vanish for a = 1).
    """
    X1, Y1, Z1, T1 = P1
    A = fp.sqr(X1)
    B = fp.sqr(Y1)
    C = fp.sqr(Z1)
    D = fp.sqr(fp.add(X1, Y1))
    E = fp.sqr(fp.add(Y1, Z1))
    F = fp.sub(D, fp.add(A, B))
    G = fp.sub(E, fp.add(B, C))
    H = fp.mul_const(curve.a, A, "a")
    I = fp.add(H, B)
    J = fp.sub(C, I)
    K = fp.add(J, C)
    cZ2 = fp.mul(Y1, fp.sub(T1, X1))
    cZ2 = fp.add(cZ2, cZ2)
    cXY = fp.add(fp.add(J, J), G)
    cXZ = fp.sub(fp.mul(fp.mul_const(curve.a, X1, "a"), T1), B)
    cXZ = fp.add(cXZ, cXZ)
    BH = fp.sub(B, H)
    X3 = fp.mul(F, K)
    Y3 = fp.mul(I, BH)
    Z3 = fp.mul(I, K)
    T3 = fp.mul(F, BH)
    return (ExtendedEdwardsPoint(X3, Y3, Z3, T3), ConicCoefficients(cZ2, cXY, cXZ))


# ---------------------------------------------------------------------------
# evaluation at the twisted second argument


class EdwardsPairingCtx:
    """Precomputed conic-evaluation data for a fixed twisted second argument.

    Q' = (X0 : Y0 : Z0) lives on the quadratic twist E_{a*delta, d*delta} over
    F_{p^{k/2}}; the pairing argument is Q = (X0*alpha : Y0 : Z0).  The
    constants eta = (Z0+Y0)/(X0*delta) and y0 = Y0/Z0 are fixed for the whole
    Miller loop.
    """

    def __init__(self, tower: TowerCtx, curve: TwistedEdwardsCurve,
                 X0: Sub, Y0: Sub, Z0: Sub | None = None):
        t = tower
        Z0 = Z0 if Z0 is not None else t.s_one()
        if t.s_is_zero(Z0):
            raise ValueError("Q' must be affine")
        if t.s_is_zero(X0):
            raise ValueError("Q' with X0 = 0 rejected (eta undefined)")
        ad = t.s_mul(t.embed(curve.a), t.delta)
        dd = t.s_mul(t.embed(curve.d), t.delta)
        zi = t.s_inv(Z0)
        x0, y0 = t.s_mul(X0, zi), t.s_mul(Y0, zi)
        x2, y2 = t.s_mul(x0, x0), t.s_mul(y0, y0)
        lhs = t.s_add(t.s_mul(ad, x2), y2)
        rhs = t.s_add(t.s_one(), t.s_mul(dd, t.s_mul(x2, y2)))
        if lhs != rhs:
            raise ValueError("Q' is not on the quadratic twist")
        self.tower = t
        self.curve = curve
        self.x0, self.y0 = x0, y0
        self.eta = t.s_mul(t.s_add(t.embed(1), y0), t.s_inv(t.s_mul(x0, t.delta)))

    def untwisted_affine(self) -> tuple[Ext, Ext]:
        """Q = (x0*alpha, y0) as affine coordinates over F_{p^k}."""
        t = self.tower
        return (Ext(t.s_zero(), self.x0), t.ext_from_sub(self.y0))


def ed_eval_conic(ctx: EdwardsPairingCtx, c: ConicCoefficients) -> Ext:
    """Conic value at Q up to F_{p^{k/2}}^* factors: costs exactly k m."""
    t = ctx.tower
    a0 = t.s_add(t.scale(c.cXY, ctx.y0), t.embed(c.cXZ))
    a1 = t.scale(c.cZ2, ctx.eta)
    return Ext(a0, a1)


# ---------------------------------------------------------------------------
# affine group law over a generic field (oracle and scalar multiplication)


def edwards_affine_add(ops, a, d, p1, p2):
    """Textbook twisted Edwards addition on affine pairs over any field ops."""
    x1, y1 = p1
    x2, y2 = p2
    t = ops.mul(ops.mul(d, ops.mul(x1, x2)), ops.mul(y1, y2))
    den_x = ops.add(ops.one(), t)
    den_y = ops.sub(ops.one(), t)
    if ops.is_zero(den_x) or ops.is_zero(den_y):
        raise ZeroDivisionError("exceptional pair for the affine addition law")
    num_x = ops.add(ops.mul(x1, y2), ops.mul(y1, x2))
    num_y = ops.sub(ops.mul(y1, y2), ops.mul(a, ops.mul(x1, x2)))
    return (ops.mul(num_x, ops.inv(den_x)), ops.mul(num_y, ops.inv(den_y)))


def edwards_affine_scalar_mul(ops, a, d, pt, e: int):
    """Double-and-add over the affine law; e >= 0."""
    acc = (ops.zero(), ops.one())
    add = pt
    while e:
        if e & 1:
            acc = edwards_affine_add(ops, a, d, acc, add)
        e >>= 1
        if e:
            add = edwards_affine_add(ops, a, d, add, add)
    return acc


def ed_scalar_mul_raw(p: int, a: int, d: int, pt: tuple[int, int],
                      e: int) -> tuple[int, int]:
    """Fast uncounted scalar multiple of an affine point, returned affine.

    Uses extended projective coordinates internally (single final inversion).
    """
    X, Y, Z, T = pt[0] % p, pt[1] % p, 1, pt[0] * pt[1] % p

    def dbl(P):
        X1, Y1, Z1, _ = P
        A = X1 * X1 % p
        B = Y1 * Y1 % p
        C = Z1 * Z1 % p
        F = ((X1 + Y1) ** 2 - A - B) % p
        H = a * A % p
        I = (H + B) % p
        K = (2 * C - I) % p
        BH = (B - H) % p
        return (F * K % p, I * BH % p, I * K % p, F * BH % p)

    def add(P, Q):
        X1, Y1, Z1, T1 = P
        X2, Y2, Z2, T2 = Q
        A = X1 * X2 % p
        B = Y1 * Y2 % p
        C = d * T1 % p * T2 % p
        D = Z1 * Z2 % p
        E = ((X1 + Y1) * (X2 + Y2) - A - B) % p
        F = (D - C) % p
        G = (D + C) % p
        H = (B - a * A) % p
        return (E * F % p, G * H % p, F * G % p, E * H % p)

    acc = (0, 1, 1, 0)
    base = (X, Y, Z, T)
    if e:
        for bit in bin(e)[2:]:
            acc = dbl(acc)
            if bit == "1":
                acc = add(acc, base)
    if acc[2] % p == 0:
        raise ZeroDivisionError("projective ladder hit an exceptional point")
    zi = pow(acc[2], p - 2, p)
    return (acc[0] * zi % p, acc[1] * zi % p)
