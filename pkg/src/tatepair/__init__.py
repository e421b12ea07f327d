"""Reduced Tate pairings on twisted Edwards curves (conic-section Miller
steps) and short Weierstrass curves (fused Jacobian steps), with an
instrumented base-field operation counter."""

from .opcount import OpCounter
from .bigfield import (Ext, ExtOps, PrimeFieldCtx, PrimeOps, SubOps, TowerCtx,
                       find_irreducible, is_probable_prime, sqrt_mod_p)
from .edwards import (ConicCoefficients, EdwardsPairingCtx,
                      ExtendedEdwardsPoint, TwistedEdwardsCurve,
                      ed_add_step, ed_dbl_step, ed_eval_conic, ed_from_affine,
                      ed_on_curve, ed_scalar_mul_raw, ed_to_affine)
from .weierstrass import (JacobianPointT, WeierstrassCurve,
                          WeierstrassPairingCtx, jac_from_affine,
                          jac_to_affine, w_add_step, w_dbl_step_a0,
                          w_dbl_step_am3, w_madd_step, w_scalar_mul_raw)
from .miller import (PairingResult, final_exponentiation, miller_loop,
                     naive_miller_oracle, tate_pairing_edwards,
                     tate_pairing_weierstrass)
from .curvedata import (BirationalBridge, CurveRecord, ValidationReport,
                        BUNDLED_CURVES, bridge_build, bundled_curve,
                        cross_form_pairing_check, derive_desk_curves,
                        find_order_n_point, find_twist_point, load_curve,
                        make_tower, parse_curve_text, serialize_curve,
                        to_edwards_curve, to_weierstrass_curve,
                        twist_group_order, validate_curve)

__version__ = "1.0.0"

__all__ = [
    "OpCounter", "Ext", "ExtOps", "PrimeFieldCtx", "PrimeOps", "SubOps",
    "TowerCtx", "find_irreducible", "is_probable_prime", "sqrt_mod_p",
    "ConicCoefficients", "EdwardsPairingCtx", "ExtendedEdwardsPoint",
    "TwistedEdwardsCurve", "ed_add_step", "ed_dbl_step", "ed_eval_conic",
    "ed_from_affine", "ed_on_curve", "ed_scalar_mul_raw", "ed_to_affine",
    "JacobianPointT", "WeierstrassCurve", "WeierstrassPairingCtx",
    "jac_from_affine", "jac_to_affine", "w_add_step", "w_dbl_step_a0",
    "w_dbl_step_am3", "w_madd_step", "w_scalar_mul_raw",
    "PairingResult", "final_exponentiation", "miller_loop",
    "naive_miller_oracle", "tate_pairing_edwards", "tate_pairing_weierstrass",
    "BirationalBridge", "CurveRecord", "ValidationReport", "BUNDLED_CURVES",
    "bridge_build", "bundled_curve", "cross_form_pairing_check",
    "derive_desk_curves", "find_order_n_point", "find_twist_point",
    "load_curve", "make_tower", "parse_curve_text", "serialize_curve",
    "to_edwards_curve", "to_weierstrass_curve", "twist_group_order",
    "validate_curve",
]
