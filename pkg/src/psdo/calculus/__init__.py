from psdo.calculus.apply import HSCheckResult, QuadratureGrid, compare_routes, eig_apply, hs_apply
from psdo.calculus.cutoff import SmoothCutoff, build_cutoff
from psdo.calculus.extension import AlmostAnalyticExtension, almost_analytic

__all__ = [
    "AlmostAnalyticExtension",
    "HSCheckResult",
    "QuadratureGrid",
    "SmoothCutoff",
    "almost_analytic",
    "build_cutoff",
    "compare_routes",
    "eig_apply",
    "hs_apply",
]
