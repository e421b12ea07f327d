"""Jacobian fused Miller steps: point updates against the affine chord-
and-tangent law, line values against independently computed lines, the
T = Z^2 cache invariant, and the exact per-step operation counts."""

import random

import pytest

from tatepair.bigfield import PrimeOps
from tatepair.curvedata import (find_order_n_point, find_twist_point,
                                make_tower, to_weierstrass_curve)
from tatepair import weierstrass as wz

W_NAMES = ["desk-w-am3-k4", "desk-w-a0-k6"]


def _setup(desk, name, seed, mixed=True):
    rec = desk[name]
    tower = make_tower(rec)
    curve = to_weierstrass_curve(rec)
    rng = random.Random(seed)
    P = find_order_n_point(rec, rng)
    Q = find_twist_point(tower, rec, rng)
    z = 1 if mixed else rng.randrange(2, rec.p)
    base = wz.jac_from_affine(P[0], P[1], rec.p, z=z)
    ctx = wz.WeierstrassPairingCtx(tower, curve, base, Q[0], Q[1])
    return rec, tower, curve, ctx, P, rng


def _rand_running_point(rec, curve, P, rng):
    m = rng.randrange(2, rec.n)
    x, y = wz.w_scalar_mul_raw(rec.p, curve.a4, P, m)
    lam = rng.randrange(2, rec.p)
    return wz.jac_from_affine(x, y, rec.p, z=lam), (x, y), m


def _dbl_for(curve):
    return wz.w_dbl_step_am3 if curve.flavor == wz.FLAVOR_AM3 else wz.w_dbl_step_a0


# ---------------------------------------------------------------------------
# point updates


@pytest.mark.parametrize("name", W_NAMES)
def test_dbl_step_matches_affine_law(desk, name):
    rec, tower, curve, ctx, P, rng = _setup(desk, name, 41)
    pops = PrimeOps(rec.p)
    a4 = curve.a4 % rec.p
    for _ in range(50):
        R, aff, _ = _rand_running_point(rec, curve, P, rng)
        R3, _ = _dbl_for(curve)(ctx, R)
        want = wz.weierstrass_affine_add(pops, a4, aff, aff)
        assert wz.jac_to_affine(R3, rec.p) == want
        assert (R3.T - R3.Z * R3.Z) % rec.p == 0


@pytest.mark.parametrize("name", W_NAMES)
@pytest.mark.parametrize("mixed", [True, False])
def test_add_step_matches_affine_law(desk, name, mixed):
    rec, tower, curve, ctx, P, rng = _setup(desk, name, 42, mixed=mixed)
    pops = PrimeOps(rec.p)
    a4 = curve.a4 % rec.p
    step = wz.w_madd_step if mixed else wz.w_add_step
    for _ in range(50):
        R, aff, m = _rand_running_point(rec, curve, P, rng)
        if m in (1, rec.n - 1):
            continue
        R3, _ = step(ctx, R)
        want = wz.weierstrass_affine_add(pops, a4, aff, P)
        assert wz.jac_to_affine(R3, rec.p) == want
        assert (R3.T - R3.Z * R3.Z) % rec.p == 0


def test_add_step_rejects_same_x(desk):
    rec, tower, curve, ctx, P, rng = _setup(desk, W_NAMES[0], 43)
    lam = rng.randrange(2, rec.p)
    R = wz.jac_from_affine(P[0], P[1], rec.p, z=lam)
    with pytest.raises(ValueError):
        wz.w_madd_step(ctx, R)
    neg = wz.jac_from_affine(P[0], (-P[1]) % rec.p, rec.p, z=lam)
    with pytest.raises(ValueError):
        wz.w_madd_step(ctx, neg)


def test_madd_requires_affine_base(desk):
    rec, tower, curve, ctx, P, rng = _setup(desk, W_NAMES[0], 44, mixed=False)
    R, _, _ = _rand_running_point(rec, curve, P, rng)
    with pytest.raises(ValueError):
        wz.w_madd_step(ctx, R)


# ---------------------------------------------------------------------------
# exact step costs (line evaluation included: k more m)


@pytest.mark.parametrize("name,dbl_m,dbl_s", [("desk-w-am3-k4", 6, 5),
                                              ("desk-w-a0-k6", 3, 8)])
def test_dbl_step_cost(desk, name, dbl_m, dbl_s):
    rec, tower, curve, ctx, P, rng = _setup(desk, name, 45)
    R, _, _ = _rand_running_point(rec, curve, P, rng)
    before = tower.snapshot()
    _dbl_for(curve)(ctx, R)
    c = tower.snapshot() - before
    assert (c.m, c.s, c.m_a, c.m_d) == (dbl_m + rec.k, dbl_s, 0, 0)


@pytest.mark.parametrize("name", W_NAMES)
@pytest.mark.parametrize("mixed,add_m", [(True, 6), (False, 9)])
def test_add_step_cost(desk, name, mixed, add_m):
    rec, tower, curve, ctx, P, rng = _setup(desk, name, 46, mixed=mixed)
    step = wz.w_madd_step if mixed else wz.w_add_step
    R, _, _ = _rand_running_point(rec, curve, P, rng)
    before = tower.snapshot()
    step(ctx, R)
    c = tower.snapshot() - before
    assert (c.m, c.s, c.m_a, c.m_d) == (add_m + rec.k, 6, 0, 0)


# ---------------------------------------------------------------------------
# line values against an independent affine line


def _naive_line_at_q(tower, curve, ctx, R_aff, S_aff):
    """g_{R,S}(Q) for the untwisted Q, computed from the affine slope."""
    t = tower
    p = t.p
    pops = PrimeOps(p)
    a4 = curve.a4 % p
    xr, yr = R_aff
    if R_aff == S_aff:
        lam = pops.mul(pops.add(pops.mul(3, pops.sqr(xr)), a4),
                       pops.inv(pops.add(yr, yr)))
    else:
        lam = pops.mul(pops.sub(S_aff[1], yr), pops.inv(pops.sub(S_aff[0], xr)))
    # y_Q*alpha - y_R - lam*(x_Q - x_R): alpha part y_q, subfield part below
    xdiff = t.s_sub(ctx.x_q, t.embed(xr))
    a0 = t.s_sub(t.s_neg(t.embed(yr)), t.s_mul(t.embed(lam), xdiff))
    return a0, ctx.y_q


@pytest.mark.parametrize("name", W_NAMES)
def test_fused_lines_proportional_to_naive_lines(desk, name):
    """Fused line values differ from the textbook line only by a factor in
    the subfield F_{p^(k/2)}, which the final exponentiation kills; check
    proportionality by cross-multiplication."""
    rec, tower, curve, ctx, P, rng = _setup(desk, name, 47)
    t = tower
    for _ in range(30):
        R, aff, m = _rand_running_point(rec, curve, P, rng)
        if m in (1, rec.n - 1):
            continue
        _, g = _dbl_for(curve)(ctx, R)
        n0, n1 = _naive_line_at_q(t, curve, ctx, aff, aff)
        assert t.s_mul(g.a0, n1) == t.s_mul(g.a1, n0)
        assert not t.s_is_zero(g.a1)
        _, g = wz.w_madd_step(ctx, R)
        n0, n1 = _naive_line_at_q(t, curve, ctx, aff, P)
        assert t.s_mul(g.a0, n1) == t.s_mul(g.a1, n0)


def test_ctx_rejects_off_twist_q(desk):
    rec = desk[W_NAMES[0]]
    tower = make_tower(rec)
    curve = to_weierstrass_curve(rec)
    rng = random.Random(48)
    P = find_order_n_point(rec, rng)
    Q = find_twist_point(tower, rec, rng)
    base = wz.jac_from_affine(P[0], P[1], rec.p)
    wz.WeierstrassPairingCtx(tower, curve, base, Q[0], Q[1])   # valid
    bad = tower.s_add(Q[0], tower.s_one())
    with pytest.raises(ValueError):
        wz.WeierstrassPairingCtx(tower, curve, base, bad, Q[1])


def test_scalar_mul_raw_matches_affine_law(desk):
    rec = desk[W_NAMES[1]]
    curve = to_weierstrass_curve(rec)
    pops = PrimeOps(rec.p)
    rng = random.Random(49)
    P = find_order_n_point(rec, rng)
    a4 = curve.a4 % rec.p
    for e in (1, 2, 3, 17, rec.n - 1):
        want = wz.weierstrass_affine_scalar_mul(pops, a4, P, e)
        assert wz.w_scalar_mul_raw(rec.p, curve.a4, P, e) == want
    assert wz.w_scalar_mul_raw(rec.p, curve.a4, P, rec.n) is None
