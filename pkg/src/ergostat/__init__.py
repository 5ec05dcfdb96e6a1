"""Exact conditional support endpoints on finite probability spaces, and
Monte Carlo verification of almost-sure limits of extreme and intermediate
order statistics from strictly stationary processes."""

__version__ = "0.1.0"

from .extended import NEG_INF, POS_INF, xadd, xmul
from .finite_probability import (
    FiniteSpace,
    Partition,
    TableRV,
    brute_force_conditional_left_endpoint,
    conditional_left_endpoint,
    conditional_probability,
    conditional_right_endpoint,
    essential_supremum,
    is_measurable,
    unconditional_endpoints,
    validate_space,
)
from .order_stats import OrderStatTracker, RankSchedule
from .processes import (
    AR1,
    IID,
    MA,
    Distribution,
    Identical,
    Mixture,
    ProcessStream,
    Scale,
    Shift,
    make_stream,
)
from .diagnostics import (
    AutocovReport,
    autocov_indicator,
    empirical_cdf,
    summability_diagnostic,
)
from .experiments import (
    ConvergenceReport,
    ExperimentConfig,
    Trajectory,
    ks_distance,
    run_ensemble,
    run_trajectory,
)

__all__ = [
    "NEG_INF",
    "POS_INF",
    "xadd",
    "xmul",
    "FiniteSpace",
    "Partition",
    "TableRV",
    "validate_space",
    "is_measurable",
    "conditional_probability",
    "unconditional_endpoints",
    "conditional_left_endpoint",
    "conditional_right_endpoint",
    "essential_supremum",
    "brute_force_conditional_left_endpoint",
    "OrderStatTracker",
    "RankSchedule",
    "Distribution",
    "IID",
    "AR1",
    "MA",
    "Identical",
    "Mixture",
    "Shift",
    "Scale",
    "ProcessStream",
    "make_stream",
    "empirical_cdf",
    "autocov_indicator",
    "summability_diagnostic",
    "AutocovReport",
    "ExperimentConfig",
    "Trajectory",
    "ConvergenceReport",
    "run_trajectory",
    "run_ensemble",
    "ks_distance",
]
