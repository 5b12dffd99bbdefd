"""Entanglement purification with single and double selection.

Thin wrapper over the C++ core: Bell-diagonal transfer tensors, fixed-point
and working-range analysis, yield estimates, first-order fidelity ceilings,
and Monte Carlo purification of two-colorable graph states.
"""

from ._core import (
    BoundVariant,
    FixedPointReport,
    MCConfig,
    MCResult,
    NoiseKind,
    NoiseParams,
    PurificationMap,
    RoundStats,
    Scheme,
    StepResult,
    Trajectory,
    TwoColorableGraph,
    YieldReport,
    apply_map,
    channel_initial_vector,
    custom_noise,
    fixed_points,
    gate_noise_threshold,
    inside_working_range,
    iterate,
    kay_noise,
    make_noise,
    mc_purification,
    multi_upper_bound,
    single_double_gap,
    uniform_noise,
    upper_bound_first_order,
    yield_to_target,
)

__all__ = [
    "BoundVariant",
    "FixedPointReport",
    "MCConfig",
    "MCResult",
    "NoiseKind",
    "NoiseParams",
    "PurificationMap",
    "RoundStats",
    "Scheme",
    "StepResult",
    "Trajectory",
    "TwoColorableGraph",
    "YieldReport",
    "apply_map",
    "channel_initial_vector",
    "custom_noise",
    "fixed_points",
    "gate_noise_threshold",
    "inside_working_range",
    "iterate",
    "kay_noise",
    "make_noise",
    "mc_purification",
    "multi_upper_bound",
    "single_double_gap",
    "uniform_noise",
    "upper_bound_first_order",
    "yield_to_target",
]
