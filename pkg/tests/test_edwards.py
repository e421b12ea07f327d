"""Twisted Edwards arithmetic: fused Miller steps against the affine
group law, conic geometry (incidence, tangency, mirror-of-sum), and the
exact per-step operation counts."""

import random

import pytest

from tatepair.bigfield import PrimeFieldCtx, PrimeOps
from tatepair.curvedata import (find_order_n_point, find_twist_point,
                                make_tower, to_edwards_curve)
from tatepair import edwards as ed


def _rand_ext_point(rec, rng, scaled=True):
    """A random projective representative of an order-n point."""
    p = rec.p
    x, y = find_order_n_point(rec, rng)
    lam = rng.randrange(2, p) if scaled else 1
    return ed.ExtendedEdwardsPoint(x * lam % p, y * lam % p, lam,
                                   x * y % p * lam % p)


def _affine(rec, pt):
    return ed.ed_to_affine(pt, rec.p)


# ---------------------------------------------------------------------------
# fused steps against the affine oracle


@pytest.mark.parametrize("name", ["desk-ed-a1-k6", "desk-ed-a2-k4"])
def test_dbl_step_matches_affine_law(desk, name):
    rec = desk[name]
    curve = to_edwards_curve(rec)
    fp = PrimeFieldCtx(rec.p, check_prime=False)
    pops = PrimeOps(rec.p)
    rng = random.Random(21)
    for _ in range(50):
        P1 = _rand_ext_point(rec, rng)
        aff = _affine(rec, P1)
        R3, _ = ed.ed_dbl_step(fp, curve, P1)
        want = ed.edwards_affine_add(pops, rec.a, rec.d, aff, aff)
        assert _affine(rec, R3) == want
        assert (R3.T * R3.Z - R3.X * R3.Y) % rec.p == 0   # extended invariant


@pytest.mark.parametrize("name", ["desk-ed-a1-k6", "desk-ed-a2-k4"])
@pytest.mark.parametrize("mixed", [True, False])
def test_add_step_matches_affine_law(desk, name, mixed):
    rec = desk[name]
    curve = to_edwards_curve(rec)
    fp = PrimeFieldCtx(rec.p, check_prime=False)
    pops = PrimeOps(rec.p)
    rng = random.Random(22)
    for _ in range(50):
        P1 = _rand_ext_point(rec, rng)
        P2 = _rand_ext_point(rec, rng, scaled=not mixed)
        a1, a2 = _affine(rec, P1), _affine(rec, P2)
        if a1 == a2:
            continue
        R3, _ = ed.ed_add_step(fp, curve, P1, P2)
        want = ed.edwards_affine_add(pops, rec.a, rec.d, a1, a2)
        assert _affine(rec, R3) == want
        assert (R3.T * R3.Z - R3.X * R3.Y) % rec.p == 0


def test_add_step_rejects_equal_points(desk):
    rec = desk["desk-ed-a1-k6"]
    curve = to_edwards_curve(rec)
    fp = PrimeFieldCtx(rec.p, check_prime=False)
    rng = random.Random(23)
    P1 = _rand_ext_point(rec, rng)
    mu = rng.randrange(2, rec.p)
    P2 = ed.ExtendedEdwardsPoint(*(c * mu % rec.p for c in P1))
    with pytest.raises(ValueError):
        ed.ed_add_step(fp, curve, P1, P2)


# ---------------------------------------------------------------------------
# exact step counts


def _step_counts(fp, fn, *args):
    before = fp.snapshot()
    fn(*args)
    after = fp.snapshot()
    return after - before


@pytest.mark.parametrize("name,want_ma", [("desk-ed-a1-k6", 0),
                                          ("desk-ed-a2-k4", 2)])
def test_dbl_step_cost(desk, name, want_ma):
    rec = desk[name]
    curve = to_edwards_curve(rec)
    fp = PrimeFieldCtx(rec.p, check_prime=False)
    rng = random.Random(24)
    c = _step_counts(fp, ed.ed_dbl_step, fp, curve, _rand_ext_point(rec, rng))
    assert (c.m, c.s, c.m_a, c.m_d) == (6, 5, want_ma, 0)


@pytest.mark.parametrize("name,want_ma", [("desk-ed-a1-k6", 0),
                                          ("desk-ed-a2-k4", 1)])
@pytest.mark.parametrize("mixed,want_m", [(True, 12), (False, 14)])
def test_add_step_cost(desk, name, want_ma, mixed, want_m):
    rec = desk[name]
    curve = to_edwards_curve(rec)
    fp = PrimeFieldCtx(rec.p, check_prime=False)
    rng = random.Random(25)
    P1 = _rand_ext_point(rec, rng)
    P2 = _rand_ext_point(rec, rng, scaled=not mixed)
    c = _step_counts(fp, ed.ed_add_step, fp, curve, P1, P2)
    assert (c.m, c.s, c.m_a, c.m_d) == (want_m, 0, want_ma, 0)


def test_fused_steps_route_squarings_through_sqr(desk):
    """Under the strict mul/sqr guard the fused formulas still run, i.e.
    no squaring sneaks through the generic multiplication entry point."""
    rec = desk["desk-ed-a2-k4"]
    curve = to_edwards_curve(rec)
    fp = PrimeFieldCtx(rec.p, check_prime=False, strict_squares=True)
    rng = random.Random(20)
    P1 = _rand_ext_point(rec, rng)
    P2 = _rand_ext_point(rec, rng)
    ed.ed_dbl_step(fp, curve, P1)
    if _affine(rec, P1) != _affine(rec, P2):
        ed.ed_add_step(fp, curve, P1, P2)


def test_conic_eval_costs_k_base_muls(desk):
    for name in ("desk-ed-a1-k6", "desk-ed-a2-k4"):
        rec = desk[name]
        tower = make_tower(rec)
        rng = random.Random(26)
        Q = find_twist_point(tower, rec, rng)
        ctx = ed.EdwardsPairingCtx(tower, to_edwards_curve(rec), Q[0], Q[1])
        before = tower.snapshot()
        ed.ed_eval_conic(ctx, ed.ConicCoefficients(3, 5, 7))
        c = tower.snapshot() - before
        assert c.as_tuple() == (rec.k, 0, 0, 0, 0, 0)


# ---------------------------------------------------------------------------
# conic proportionality: fused coefficients vs theorem-literal coefficients


def test_dbl_conic_proportional_to_literal(desk):
    for name in ("desk-ed-a1-k6", "desk-ed-a2-k4"):
        rec = desk[name]
        p = rec.p
        curve = to_edwards_curve(rec)
        fp = PrimeFieldCtx(p, check_prime=False)
        rng = random.Random(27)
        for _ in range(30):
            P1 = _rand_ext_point(rec, rng)
            _, fused = ed.ed_dbl_step(fp, curve, P1)
            lit = ed.conic_double(curve, P1)
            # fused = (-2*Y1 / Z1^2) * literal
            factor = -2 * P1.Y % p * pow(P1.Z * P1.Z % p, p - 2, p) % p
            assert fused == ed.ConicCoefficients(*(factor * c % p for c in lit))


def test_add_conic_proportional_to_literal(desk):
    for name in ("desk-ed-a1-k6", "desk-ed-a2-k4"):
        rec = desk[name]
        p = rec.p
        curve = to_edwards_curve(rec)
        fp = PrimeFieldCtx(p, check_prime=False)
        rng = random.Random(28)
        for _ in range(30):
            P1 = _rand_ext_point(rec, rng)
            P2 = _rand_ext_point(rec, rng)
            if ed.ed_equal(p, P1, P2):
                continue
            _, fused = ed.ed_add_step(fp, curve, P1, P2)
            lit = ed.conic_add_distinct(p, P1, P2)
            # fused = literal / (Z1*Z2)
            factor = pow(P1.Z * P2.Z % p, p - 2, p)
            assert fused == ed.ConicCoefficients(*(factor * c % p for c in lit))


# ---------------------------------------------------------------------------
# conic geometry over >= 200 samples per curve


def _curve_grad(curve, pt):
    """Gradient of a*X^2*Z^2 + Y^2*Z^2 - Z^4 - d*X^2*Y^2 at pt."""
    p, a, d = curve.p, curve.a, curve.d
    X, Y, Z = pt.X, pt.Y, pt.Z
    gx = (2 * a * X * Z * Z - 2 * d * X * Y * Y) % p
    gy = (2 * Y * Z * Z - 2 * d * X * X * Y) % p
    gz = (2 * a * X * X * Z + 2 * Y * Y * Z - 4 * Z ** 3) % p
    return (gx, gy, gz)


def _conic_grad(p, c, pt):
    """Gradient of cZ2*(Z^2+Y*Z) + cXY*X*Y + cXZ*X*Z at pt."""
    X, Y, Z = pt.X, pt.Y, pt.Z
    gx = (c.cXY * Y + c.cXZ * Z) % p
    gy = (c.cZ2 * Z + c.cXY * X) % p
    gz = (c.cZ2 * (2 * Z + Y) + c.cXZ * X) % p
    return (gx, gy, gz)


def _parallel(p, u, v):
    return all((u[i] * v[j] - u[j] * v[i]) % p == 0
               for i in range(3) for j in range(i + 1, 3))


def test_conic_geometry_suite(desk):
    oprime = ed.ExtendedEdwardsPoint(0, -1, 1, 0)
    for name in ("desk-ed-a1-k6", "desk-ed-a2-k4"):
        rec = desk[name]
        p = rec.p
        curve = to_edwards_curve(rec)
        pops = PrimeOps(p)
        rng = random.Random(29)
        for _ in range(200):
            P1 = _rand_ext_point(rec, rng)
            P2 = _rand_ext_point(rec, rng)
            if ed.ed_equal(p, P1, P2):
                continue
            # incidence: the chord conic vanishes at P1, P2 and (0,-1)
            c = ed.conic_add_distinct(p, P1, P2)
            for pt in (P1, P2, oprime):
                assert ed.conic_eval(p, c, pt.X, pt.Y, pt.Z) == 0
            # mirror-of-sum incidence: the conic also passes through -(P1+P2)
            s = ed.edwards_affine_add(pops, rec.a, rec.d,
                                      _affine(rec, P1), _affine(rec, P2))
            assert ed.conic_eval(p, c, -s[0] % p, s[1], 1) == 0
            # tangency at P1 for the doubling conic: parallel gradients
            cd2 = ed.conic_double(curve, P1)
            assert ed.conic_eval(p, cd2, P1.X, P1.Y, P1.Z) == 0
            assert _parallel(p, _conic_grad(p, cd2, P1), _curve_grad(curve, P1))
            # doubling conic passes through (0,-1) and -(2*P1)
            assert ed.conic_eval(p, cd2, 0, -1, 1) == 0
            dbl = ed.edwards_affine_add(pops, rec.a, rec.d,
                                        _affine(rec, P1), _affine(rec, P1))
            assert ed.conic_eval(p, cd2, -dbl[0] % p, dbl[1], 1) == 0


def test_conic_through_oprime_shape(desk):
    rec = desk["desk-ed-a1-k6"]
    p = rec.p
    rng = random.Random(30)
    P1 = _rand_ext_point(rec, rng)
    c = ed.conic_add_oprime(p, P1)
    assert c == ed.ConicCoefficients(-P1.X % p, P1.Z, P1.Z)
    assert ed.conic_eval(p, c, P1.X, P1.Y, P1.Z) == 0
    assert ed.conic_eval(p, c, 0, -1, 1) == 0


# ---------------------------------------------------------------------------
# pairing context validation


def test_pairing_ctx_rejects_bad_inputs(desk):
    rec = desk["desk-ed-a1-k6"]
    tower = make_tower(rec)
    curve = to_edwards_curve(rec)
    rng = random.Random(31)
    Q = find_twist_point(tower, rec, rng)
    ed.EdwardsPairingCtx(tower, curve, Q[0], Q[1])    # valid
    with pytest.raises(ValueError):
        ed.EdwardsPairingCtx(tower, curve, tower.s_zero(), Q[1])
    bad = tower.s_add(Q[1], tower.s_one())
    with pytest.raises(ValueError):
        ed.EdwardsPairingCtx(tower, curve, Q[0], bad)


def test_scalar_mul_raw_matches_affine_law(desk):
    rec = desk["desk-ed-a2-k4"]
    pops = PrimeOps(rec.p)
    rng = random.Random(32)
    P = find_order_n_point(rec, rng)
    for e in (1, 2, 3, 17, rec.n - 1, rec.n):
        want = ed.edwards_affine_scalar_mul(pops, rec.a, rec.d, P, e)
        assert ed.ed_scalar_mul_raw(rec.p, rec.a, rec.d, P, e) == want
    assert ed.ed_scalar_mul_raw(rec.p, rec.a, rec.d, P, rec.n) == (0, 1)
