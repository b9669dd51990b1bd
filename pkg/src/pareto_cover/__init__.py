"""Solvers and generators for stochastic Pareto cover problems.

Given a product probability measure on the unit cube, a linear cost
vector, and a budget k, the task is to place k points so that the expected
cost of the cheapest point dominating a random sample is minimal.  The
package provides an exact cost evaluator, a geometric-grid discretizer for
oracle-described measures, a rounding dynamic program with a (1 + eps)
guarantee, a brute-force oracle, and generators for partition-based
hardness instances.
"""

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    DomainError,
    InfeasibleCoverError,
    OracleContractError,
    ParetoCoverError,
    ResourceLimitError,
    ValidationError,
)
from .numerics import (
    ExponentOrZero,
    PowerCache,
    Rational,
    ZERO,
    approx_exp_neg,
    floor_log,
    pow_rational,
    rat,
    rat_str,
)
from .measures import (
    ContinuousInstance,
    Cover,
    DiscreteProductInstance,
    FiniteSupportOracle,
    MeasureOracle,
    MultiplicativeNoiseOracle,
    NEG_INF,
    POS_INF,
    PiecewiseConstantOracle,
    SupportGrid,
    UniformOracle,
    bernoulli_instance,
    interval_mass,
)
from .evaluator import (
    JSetDistribution,
    cost_lower_bound,
    expected_cost,
    expected_cost_many,
    expected_cost_naive,
    is_pareto_cover,
    j_stage_init,
    j_stage_step,
)
from .discretizer import (
    QueryGrid,
    discretize,
    fptas_parameters,
    query_coordinates,
    round_cover_up,
)
from .fptas import (
    Candidate,
    CandidateTable,
    candidate_cost,
    candidate_for_cover,
    extend_candidates,
    round_to_power,
    seed_candidates,
    solve_continuous,
    solve_discrete,
)
from .bruteforce import brute_force_optimum, enumerate_covers
from .reductions import (
    Graph,
    PartitionInstance,
    count_vertex_covers_brute,
    count_vertex_covers_via_cost,
    graph_to_cover_gadget,
    numpart_has_solution,
    numpart_to_k,
    partition_has_solution,
    partition_to_k2,
    partition_to_k3,
)

__all__ = [name for name in dir() if not name.startswith("_")]
