"""Simulators and exact checks for random digital trees, tree first-passage
percolation, and border aggregation on b-ary trees.

The library exposes three families of objects: discrete growth (DstProcess
and friends), the continuous-time constructions (edge-weight fields, the
clock process, first-passage thresholding), and the aggregation model with
its per-sample coupling to passage times.  Exact enumeration oracles and
the statistical test kit back the verification experiments; the `dstsim`
console command drives them.
"""

from .asympt import (
    AsymptoticPrediction,
    bary_conjecture_log,
    deviation_statistic,
    mk_value,
    prior_bracket,
)
from .bam import (
    AggregationOutcome,
    recursion_sample_xi,
    run_continuous,
    run_coupled,
    run_discrete,
)
from .ctdst import (
    ClockProcess,
    EdgeWeightField,
    PassageTimes,
    clock_run_until_height,
    fpp_height_at,
    fpp_tree_at,
    min_path_times,
    recursion_sample,
    sample_weights,
    ybar_bottom_up,
)
from .dst import DstProcess, Item, height_hitting_time, insert_item, sample_poissonized
from .errors import (
    CapacityError,
    ConfigError,
    DepthCapExceeded,
    ModelMismatchError,
    RoutingError,
    TestFailure,
)
from .nodes import NodePath
from .oracle import Pmf, check_tc_exact, exact_height_cdf, exact_xi_pmf
from .randomness import RandomStream, default_master_seed
from .stattests import TestResult, chisq_gof, ks_two_sample, run_with_retry, summarize
from .trees import ShapeTree

__version__ = "0.1.0"

__all__ = [
    "AggregationOutcome",
    "AsymptoticPrediction",
    "CapacityError",
    "ClockProcess",
    "ConfigError",
    "DepthCapExceeded",
    "DstProcess",
    "EdgeWeightField",
    "Item",
    "ModelMismatchError",
    "NodePath",
    "PassageTimes",
    "Pmf",
    "RandomStream",
    "RoutingError",
    "ShapeTree",
    "TestFailure",
    "TestResult",
    "bary_conjecture_log",
    "check_tc_exact",
    "chisq_gof",
    "clock_run_until_height",
    "default_master_seed",
    "deviation_statistic",
    "exact_height_cdf",
    "exact_xi_pmf",
    "fpp_height_at",
    "fpp_tree_at",
    "height_hitting_time",
    "insert_item",
    "ks_two_sample",
    "min_path_times",
    "mk_value",
    "prior_bracket",
    "recursion_sample",
    "recursion_sample_xi",
    "run_continuous",
    "run_coupled",
    "run_discrete",
    "run_with_retry",
    "sample_poissonized",
    "sample_weights",
    "summarize",
    "ybar_bottom_up",
]
