from .decomposition import (
    SpanDecomposition, SpanProjection, OptimizedBound, span_operator, build_decomposition,
    project_to_span, channel_expectation, bound_coefficients, rate_bound, optimize_rate_bound,
)
from .lambertw import lambert_w_m1, lambert_w_m1_from_exponent, sandwich_bounds
from .curves import (
    FAMILIES, BoundConstants, BoundCurve, hls_rate, hls_curve, hnls_rate, hnls_curve, hnls_y,
    hnls_curve_simple, prior_curves, quadratic_prior_constant, lindblad_magnitude_bound,
)
from .integrate import integrate_rate_bound, integrated_bound_along

__all__ = [
    "SpanDecomposition", "SpanProjection", "OptimizedBound", "span_operator",
    "build_decomposition", "project_to_span", "channel_expectation", "bound_coefficients", "rate_bound",
    "optimize_rate_bound",
    "lambert_w_m1", "lambert_w_m1_from_exponent", "sandwich_bounds",
    "FAMILIES", "BoundConstants", "BoundCurve", "hls_rate", "hls_curve", "hnls_rate",
    "hnls_curve", "hnls_y", "hnls_curve_simple", "prior_curves", "quadratic_prior_constant",
    "lindblad_magnitude_bound",
    "integrate_rate_bound", "integrated_bound_along",
]
