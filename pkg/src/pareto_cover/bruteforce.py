"""Exhaustive exact optimum for small discrete instances.

Ground truth for every approximation claim: enumerate all multisets of
k - 1 grid points, pin the maximum support point as the k-th, evaluate
each cover exactly, and keep the cheapest (ties resolved by the
lexicographically smallest cover).  No pruning on purpose; this module's
one job is to be obviously correct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb
from typing import Optional

from .errors import ResourceLimitError
from .evaluator import expected_cost
from .measures import Cover, DiscreteProductInstance
from .numerics import Rational


@dataclass(frozen=True)
class BruteForceBudget:
    max_outcomes: int = 30
    max_k: int = 4
    max_covers: int = 2_000_000


def enumerate_covers(instance: DiscreteProductInstance):
    """All covers: multisets of k-1 grid points, plus a* as the last point.

    Repetition is allowed so |B| = k holds literally; repeated points never
    help but keep the enumeration simple.  Yields covers in lexicographic
    order of their point lists.
    """
    points = [tuple(p) for p in product(instance.grid.values, repeat=instance.n)]
    a_star = instance.a_star()
    for combo in combinations_with_replacement(points, instance.k - 1):
        yield Cover(points=combo + (a_star,))


def brute_force_optimum(
    instance: DiscreteProductInstance,
    budget: Optional[BruteForceBudget] = None,
) -> tuple[Cover, Rational]:
    """Exact minimum-cost cover of size k, within the configured budget."""
    budget = budget or BruteForceBudget()
    outcomes = instance.outcome_count
    if outcomes > budget.max_outcomes:
        raise ResourceLimitError(
            f"{outcomes} grid points exceed the brute-force budget "
            f"{budget.max_outcomes}"
        )
    if instance.k > budget.max_k:
        raise ResourceLimitError(
            f"k = {instance.k} exceeds the brute-force budget {budget.max_k}"
        )
    n_covers = comb(outcomes + instance.k - 2, instance.k - 1)
    if n_covers > budget.max_covers:
        raise ResourceLimitError(
            f"{n_covers} covers exceed the brute-force budget {budget.max_covers}"
        )
    best: tuple[Rational, tuple, Cover] | None = None
    for cover in enumerate_covers(instance):
        cost = expected_cost(instance, cover)
        key = (cost, cover.points)
        if best is None or key < best[:2]:
            best = (cost, cover.points, cover)
    return best[2], best[0]
