"""G- and H-monogenic maps: construction, differentiation, classification."""

from .classify import (ClassificationReport, CriteriaReport, classify, criteria_verdicts,
                       sample_points)
from .differential import (HausdorffDecomposition, HTestResult, cr_residual, cr_residual_norm,
                           gateaux_decomposition, gateaux_limit_residual, h_monogenic_test,
                           hausdorff_decomposition, hausdorff_derivative, left_gateaux,
                           left_value, one_sided_h_residual, right_gateaux, right_value)
from .maps import (LEFT, RIGHT, ComponentMap, ExprComponentMap, GMap, LeftGMap,
                   RawComponentMap, RightGMap, product)
from .taylor import (eval_taylor, fiber_taylor_coeffs, partial_sums, taylor_expand,
                     truncation_errors, zeta_power)
from .examples import example_map

__all__ = [
    "LEFT", "RIGHT", "GMap", "RightGMap", "LeftGMap", "ComponentMap", "ExprComponentMap",
    "RawComponentMap", "product", "right_value", "left_value", "right_gateaux",
    "left_gateaux", "gateaux_limit_residual", "cr_residual", "cr_residual_norm",
    "one_sided_h_residual", "h_monogenic_test", "HTestResult", "HausdorffDecomposition",
    "hausdorff_decomposition", "gateaux_decomposition", "hausdorff_derivative",
    "taylor_expand", "eval_taylor", "partial_sums", "zeta_power", "truncation_errors",
    "fiber_taylor_coeffs", "ClassificationReport", "classify", "sample_points",
    "CriteriaReport", "criteria_verdicts", "example_map",
]
