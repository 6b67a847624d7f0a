from moments.conditional import (
    ConditionedSample,
    MomentQuery,
    RatioMoments,
    cond_inverse_moment,
    cond_ratio_moments,
    conditional_square_moment,
    conditioning_mass,
    deviation_bound,
    enumerate_ratio_moments,
    enumerate_square_given_total,
    preserve_alpha,
    preserve_bound,
    sample_conditioned_ratio,
)

__all__ = [
    "ConditionedSample",
    "MomentQuery",
    "RatioMoments",
    "cond_inverse_moment",
    "cond_ratio_moments",
    "conditional_square_moment",
    "conditioning_mass",
    "deviation_bound",
    "enumerate_ratio_moments",
    "enumerate_square_given_total",
    "preserve_alpha",
    "preserve_bound",
    "sample_conditioned_ratio",
]
