"""Shared helpers: seeded random instances, covers, graphs, and oracles."""

from __future__ import annotations

import random

from gmpy2 import mpq

from pareto_cover import (
    Cover,
    DiscreteProductInstance,
    SupportGrid,
    interval_mass,
    j_stage_init,
    j_stage_step,
)
from pareto_cover.reductions import Graph


def random_rational(rng: random.Random, max_den: int = 12, lo=0, hi=1):
    den = rng.randint(1, max_den)
    num = rng.randint(lo * den, hi * den)
    return mpq(num, den)


def random_grid(rng: random.Random, max_interior: int = 3) -> SupportGrid:
    m = rng.randint(0, max_interior)
    interior = set()
    while len(interior) < m:
        interior.add(mpq(rng.randint(1, 19), 20))
    values = (mpq(0),) + tuple(sorted(interior)) + (mpq(1),)
    return SupportGrid(values=values)


def random_prob_row(rng: random.Random, width: int):
    weights = [rng.randint(0, 6) for _ in range(width)]
    if sum(weights) == 0:
        weights[rng.randrange(width)] = 1
    total = sum(weights)
    return tuple(mpq(w, total) for w in weights)


def random_instance(
    rng: random.Random,
    max_n: int = 4,
    max_interior: int = 3,
    max_k: int = 3,
    max_outcomes: int | None = None,
) -> DiscreteProductInstance:
    while True:
        n = rng.randint(1, max_n)
        grid = random_grid(rng, max_interior)
        if max_outcomes is not None and len(grid) ** n > max_outcomes:
            continue
        probs = tuple(random_prob_row(rng, len(grid)) for _ in range(n))
        costs = tuple(random_rational(rng, max_den=8, lo=0, hi=4) for _ in range(n))
        k = rng.randint(1, max_k)
        return DiscreteProductInstance(grid=grid, probs=probs, costs=costs, k=k)


def random_feasible_cover(rng: random.Random, instance: DiscreteProductInstance) -> Cover:
    """k random grid points with a* forced in, so feasibility always holds."""
    values = instance.grid.values
    points = [
        tuple(rng.choice(values) for _ in range(instance.n))
        for _ in range(instance.k - 1)
    ]
    points.append(instance.a_star())
    return Cover(points=tuple(points))


def random_graph(rng: random.Random, max_n: int = 12, edge_prob: float = 0.35) -> Graph:
    n = rng.randint(2, max_n)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < edge_prob
    ]
    return Graph(n=n, edges=tuple(edges))


def unrounded_candidate(inst: DiscreteProductInstance, points, stage: int):
    """Independent recomputation of a cover prefix's true stage values."""
    dist = j_stage_init(
        [p[0] for p in points], lambda a, b: interval_mass(inst, 0, a, b)
    )
    for i in range(1, stage):
        dist = j_stage_step(
            dist,
            [p[i] for p in points],
            lambda a, b, i=i: interval_mass(inst, i, a, b),
        )
    costs = [
        sum((inst.costs[l] * p[l] for l in range(stage)), start=mpq(0))
        for p in points
    ]
    return dist.masses, costs
