"""Command-line front end.

Subcommands: pair, opcount, validate-curve, bench, derive-desk.
Exit codes: 0 ok, 1 internal error, 2 bad input, 3 validation failure,
4 operation-count mismatch.

Point syntax: coordinates are separated by ';', vector components of a
subfield element by ','.  P is "x;y" (decimal, over F_p); Q' is
"x0,x1,...;y0,y1,..." with little-endian polynomial-basis components over
F_{p^(k/2)}.  Extension-field values print as a flat coefficient list over
F_p in the basis (1, u, ..., u^(k/2-1), alpha, alpha*u, ...).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import statistics
import sys
import time

from .bigfield import Ext
from . import edwards as ed
from . import weierstrass as wz
from . import curvedata as cd
from .miller import (naive_miller_oracle, tate_pairing_edwards,
                     tate_pairing_weierstrass)
from .opcount import OpCounter

EXIT_OK, EXIT_INTERNAL, EXIT_BAD_INPUT = 0, 1, 2
EXIT_VALIDATION, EXIT_COUNT_MISMATCH = 3, 4

DEFAULT_SEED = 1


class BadInput(Exception):
    pass


def _load_record(selector: str) -> cd.CurveRecord:
    if os.path.exists(selector):
        try:
            return cd.load_curve(selector)
        except ValueError as exc:
            raise BadInput(f"cannot parse curve file {selector}: {exc}")
    try:
        return cd.bundled_curve(selector)
    except KeyError:
        pass
    desk = _desk_records()
    if selector in desk:
        return desk[selector]
    raise BadInput(f"unknown curve {selector!r}; bundled: "
                   f"{', '.join(cd.BUNDLED_CURVES)}; desk: "
                   f"{', '.join(sorted(desk))}")


_DESK_CACHE: dict[str, cd.CurveRecord] | None = None


def _desk_records() -> dict[str, cd.CurveRecord]:
    global _DESK_CACHE
    if _DESK_CACHE is None:
        _DESK_CACHE = cd.derive_desk_curves(0)
    return _DESK_CACHE


def _parse_point(text: str) -> tuple:
    parts = text.split(";")
    if len(parts) != 2:
        raise BadInput(f"point must be 'x;y', got {text!r}")
    return tuple(tuple(int(c) for c in part.split(",")) for part in parts)


def _ext_coeffs(x: Ext) -> list[int]:
    return list(x.a0) + list(x.a1)


def _emit(args, obj: dict) -> None:
    if args.format == "json-lines":
        print(json.dumps(obj, sort_keys=True))
    else:
        for key, val in obj.items():
            print(f"{key} = {val}")


def _counts_str(c: OpCounter) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# pair


def cmd_pair(args) -> int:
    rec = _load_record(args.curve)
    tower = cd.make_tower(rec)
    rng = random.Random(args.seed)

    if args.random:
        P = cd.find_order_n_point(rec, rng)
        Q = cd.find_twist_point(tower, rec, rng)
    else:
        if args.P is None or args.Q is None:
            raise BadInput("give P and Q' or pass --random")
        praw = _parse_point(args.P)
        if len(praw[0]) != 1 or len(praw[1]) != 1:
            raise BadInput("P must have scalar coordinates 'x;y'")
        P = (praw[0][0], praw[1][0])
        qraw = _parse_point(args.Q)
        half = rec.k // 2
        if len(qraw[0]) != half or len(qraw[1]) != half:
            raise BadInput(f"Q' coordinates need {half} components each")
        Q = qraw

    try:
        if args.oracle:
            value = _oracle_value(tower, rec, P, Q)
            counts = None
        elif rec.form == cd.EDWARDS:
            res = tate_pairing_edwards(tower, cd.to_edwards_curve(rec), P, Q)
            value, counts = res.value, res.counts
        else:
            res = tate_pairing_weierstrass(tower, cd.to_weierstrass_curve(rec),
                                           P, Q)
            value, counts = res.value, res.counts
    except (ValueError, ZeroDivisionError) as exc:
        raise BadInput(str(exc))

    mu_n = tower._ext_pow_raw(value, rec.n) == tower.ext_one()
    out = {
        "curve": rec.name,
        "P": f"{P[0]};{P[1]}",
        "Qprime": ",".join(map(str, Q[0])) + ";" + ",".join(map(str, Q[1])),
        "value": _ext_coeffs(value),
        "basis": "1,u,...,u^(k/2-1),alpha,alpha*u,...",
        "mu_n": mu_n,
    }
    if counts is not None:
        out["counts"] = _counts_str(counts)
    _emit(args, out)
    return EXIT_OK if mu_n else EXIT_VALIDATION


def _oracle_value(tower, rec, P, Q) -> Ext:
    if rec.form == cd.EDWARDS:
        bridge = cd.bridge_build(rec)
        from .bigfield import ExtOps, PrimeOps
        pops, eops = PrimeOps(rec.p), ExtOps(tower)
        Pw = bridge.forward(pops, P)
        ctx = ed.EdwardsPairingCtx(tower, cd.to_edwards_curve(rec), Q[0], Q[1])
        Qw = bridge.forward(eops, ctx.untwisted_affine())
        return naive_miller_oracle(tower, bridge.a4, bridge.a6, Pw, Qw, rec.n)
    curve = cd.to_weierstrass_curve(rec)
    ctx = wz.WeierstrassPairingCtx(tower, curve,
                                   wz.jac_from_affine(P[0], P[1], rec.p),
                                   Q[0], Q[1])
    return naive_miller_oracle(tower, curve.a4 % rec.p, curve.a6 % rec.p,
                               P, ctx.q_untwisted_affine(), rec.n)


# ---------------------------------------------------------------------------
# opcount


_FLAVOR_CURVES = {
    ("edwards", 6): "desk-ed-a1-k6",
    ("edwards", 4): "desk-ed-a2-k4",
    ("w-am3", 4): "desk-w-am3-k4",
    ("w-a0", 6): "desk-w-a0-k6",
}


def expected_step_counts(flavor: str, k: int, a: int = 1) -> dict[str, OpCounter]:
    """Fused step + line/conic evaluation, as (m, s, m_a, m_d, M, S)."""
    ma = 2 if (flavor == "edwards" and a != 1) else 0
    ma1 = 1 if (flavor == "edwards" and a != 1) else 0
    if flavor == "edwards":
        return {
            "DBL": OpCounter(m=6 + k, s=5, m_a=ma),
            "ADD": OpCounter(m=14 + k, m_a=ma1),
            "mADD": OpCounter(m=12 + k, m_a=ma1),
        }
    if flavor == "w-am3":
        dbl = OpCounter(m=6 + k, s=5)
    elif flavor == "w-a0":
        dbl = OpCounter(m=3 + k, s=8)
    else:
        raise BadInput(f"unknown flavor {flavor!r}")
    return {
        "DBL": dbl,
        "ADD": OpCounter(m=9 + k, s=6),
        "mADD": OpCounter(m=6 + k, s=6),
    }


def measure_step_counts(rec: cd.CurveRecord, seed: int) -> dict[str, OpCounter]:
    """Run each fused step (with its conic/line evaluation) once on random
    valid inputs and return the counter deltas."""
    tower = cd.make_tower(rec)
    rng = random.Random(seed)
    p = rec.p
    P = cd.find_order_n_point(rec, rng)
    Q = cd.find_twist_point(tower, rec, rng)
    lam = rng.randrange(2, p)        # non-trivial projective scaling
    out: dict[str, OpCounter] = {}

    if rec.form == cd.EDWARDS:
        curve = cd.to_edwards_curve(rec)
        ctx = ed.EdwardsPairingCtx(tower, curve, Q[0], Q[1])
        fp = tower.base
        base = ed.ed_from_affine(P[0], P[1], p)
        full = ed.ExtendedEdwardsPoint(base.X * lam % p, base.Y * lam % p,
                                       lam, base.T * lam % p)
        # the running point must differ from the base for the addition steps
        R = ed.ExtendedEdwardsPoint(*(c * lam % p for c in
                                      ed.ed_from_affine(*ed.ed_scalar_mul_raw(
                                          p, rec.a, rec.d, P, 3), p)))
        before = tower.snapshot()
        _, conic = ed.ed_dbl_step(fp, curve, R)
        ed.ed_eval_conic(ctx, conic)
        out["DBL"] = tower.snapshot() - before
        before = tower.snapshot()
        _, conic = ed.ed_add_step(fp, curve, R, full)
        ed.ed_eval_conic(ctx, conic)
        out["ADD"] = tower.snapshot() - before
        before = tower.snapshot()
        _, conic = ed.ed_add_step(fp, curve, R, base)
        ed.ed_eval_conic(ctx, conic)
        out["mADD"] = tower.snapshot() - before
        return out

    curve = cd.to_weierstrass_curve(rec)
    base = wz.jac_from_affine(P[0], P[1], p)
    P3 = wz.w_scalar_mul_raw(p, curve.a4, P, 3)
    R = wz.jac_from_affine(P3[0], P3[1], p, z=lam)
    ctx_m = wz.WeierstrassPairingCtx(tower, curve, base, Q[0], Q[1])
    full_base = wz.jac_from_affine(P[0], P[1], p, z=lam)
    ctx_f = wz.WeierstrassPairingCtx(tower, curve, full_base, Q[0], Q[1])
    dbl = wz.w_dbl_step_am3 if curve.flavor == wz.FLAVOR_AM3 else wz.w_dbl_step_a0
    before = tower.snapshot()
    dbl(ctx_m, R)
    out["DBL"] = tower.snapshot() - before
    before = tower.snapshot()
    wz.w_add_step(ctx_f, R)
    out["ADD"] = tower.snapshot() - before
    before = tower.snapshot()
    wz.w_madd_step(ctx_m, R)
    out["mADD"] = tower.snapshot() - before
    return out


def cmd_opcount(args) -> int:
    key = (args.flavor, args.k)
    if key not in _FLAVOR_CURVES:
        raise BadInput(f"no desk curve for flavor={args.flavor} k={args.k}; "
                       f"available: {sorted(_FLAVOR_CURVES)}")
    rec = _desk_records()[_FLAVOR_CURVES[key]]
    expected = expected_step_counts(
        args.flavor, args.k, a=rec.a if rec.form == cd.EDWARDS else 1)
    measured = measure_step_counts(rec, args.seed)
    all_ok = True
    for kind in ("DBL", "ADD", "mADD"):
        ok = measured[kind].as_tuple() == expected[kind].as_tuple()
        all_ok &= ok
        _emit(args, {"step": kind,
                     "measured": _counts_str(measured[kind]),
                     "expected": _counts_str(expected[kind]),
                     "status": "PASS" if ok else "FAIL"})
    return EXIT_OK if all_ok else EXIT_COUNT_MISMATCH


# ---------------------------------------------------------------------------
# validate-curve / bench / derive-desk


def cmd_validate(args) -> int:
    rec = _load_record(args.curve)
    effort = {"quick": "fast", "full": "standard"}[args.effort]
    rep = cd.validate_curve(rec, effort=effort, seed=args.seed)
    for name, ok, detail in rep.checks:
        _emit(args, {"check": name, "status": "PASS" if ok else "FAIL",
                     "detail": detail})
    _emit(args, {"curve": rec.name, "rho": f"{rec.rho:.2f}",
                 "status": "PASS" if rep.ok else "FAIL"})
    return EXIT_OK if rep.ok else EXIT_VALIDATION


def cmd_bench(args) -> int:
    rec = _load_record(args.curve)
    tower = cd.make_tower(rec)
    rng = random.Random(args.seed)
    P = cd.find_order_n_point(rec, rng)
    Q = cd.find_twist_point(tower, rec, rng)
    values, times = [], []
    for _ in range(args.reps):
        t0 = time.perf_counter()
        if rec.form == cd.EDWARDS:
            res = tate_pairing_edwards(tower, cd.to_edwards_curve(rec), P, Q)
        else:
            res = tate_pairing_weierstrass(tower, cd.to_weierstrass_curve(rec),
                                           P, Q)
        times.append(time.perf_counter() - t0)
        values.append(res.value)
    identical = all(v == values[0] for v in values)
    _emit(args, {
        "curve": rec.name, "reps": args.reps,
        "identical_values": identical,
        "median_s": round(statistics.median(times), 6),
        "min_s": round(min(times), 6),
        "counts": _counts_str(res.counts),
    })
    return EXIT_OK if identical else EXIT_INTERNAL


def cmd_derive_desk(args) -> int:
    records = cd.derive_desk_curves(args.seed)
    os.makedirs(args.out, exist_ok=True)
    for name, rec in records.items():
        path = os.path.join(args.out, f"{name}.curve")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(cd.serialize_curve(rec))
        reloaded = cd.load_curve(path)
        rep = cd.validate_curve(reloaded, effort="fast", seed=args.seed)
        _emit(args, {"curve": name, "file": path, "p": rec.p, "n": rec.n,
                     "status": "PASS" if rep.ok else "FAIL"})
        if not rep.ok:
            return EXIT_VALIDATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tatepair",
        description="Reduced Tate pairings with instrumented operation counts.")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"PRNG seed (default {DEFAULT_SEED})")
        sp.add_argument("--format", choices=("text", "json-lines"),
                        default="text")

    sp = sub.add_parser("pair", help="compute one reduced Tate pairing")
    sp.add_argument("curve", help="bundled/desk curve name or file path")
    sp.add_argument("P", nargs="?", help="base point 'x;y'")
    sp.add_argument("Q", nargs="?",
                    help="twist point 'x0,x1,...;y0,y1,...'")
    sp.add_argument("--random", action="store_true",
                    help="sample P and Q' from the seed")
    sp.add_argument("--oracle", action="store_true",
                    help="use the naive affine Miller oracle instead")
    common(sp)
    sp.set_defaults(func=cmd_pair)

    sp = sub.add_parser("opcount",
                        help="measure per-step counts against the claims")
    sp.add_argument("flavor", choices=("edwards", "w-am3", "w-a0"))
    sp.add_argument("--k", type=int, default=None,
                    help="embedding degree (defaults per flavor)")
    common(sp)
    sp.set_defaults(func=cmd_opcount)

    sp = sub.add_parser("validate-curve", help="validate a curve record")
    sp.add_argument("curve")
    sp.add_argument("--effort", choices=("quick", "full"), default="full")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("bench", help="time repeated pairings")
    sp.add_argument("curve")
    sp.add_argument("--reps", type=int, default=5)
    common(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("derive-desk", help="derive and write desk curves")
    sp.add_argument("--out", default=".", help="output directory")
    common(sp)
    sp.set_defaults(func=cmd_derive_desk)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.subcommand == "opcount" and args.k is None:
        args.k = {"edwards": 6, "w-am3": 4, "w-a0": 6}[args.flavor]
    try:
        return args.func(args)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Exception as exc:  # pragma: no cover - internal failures
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
