"""Stage recursion, exact costs, and the brute-force evaluation oracle."""

from __future__ import annotations

import random

import pytest
from gmpy2 import mpq

from pareto_cover import (
    ContinuousInstance,
    Cover,
    InfeasibleCoverError,
    MultiplicativeNoiseOracle,
    UniformOracle,
    ValidationError,
    bernoulli_instance,
    cost_lower_bound,
    expected_cost,
    expected_cost_many,
    expected_cost_naive,
    is_pareto_cover,
    j_stage_init,
    j_stage_step,
    interval_mass,
)
from pareto_cover.evaluator import (
    JSetDistribution,
    expected_cost_approx,
    j_distribution,
    point_costs,
)
from conftest import random_feasible_cover, random_instance


def uniform_mass(a, b):
    """Lebesgue mass of (a, b] ∩ [0, 1], tolerant of the ±inf sentinels."""
    lo = mpq(0) if a == float("-inf") else max(a, mpq(0))
    hi = mpq(1) if b == float("inf") else min(b, mpq(1))
    return hi - lo if hi > lo else mpq(0)


def fig1_instance(k=3):
    return ContinuousInstance(
        oracles=(UniformOracle(), UniformOracle()),
        costs=(mpq(1), mpq(1)),
        k=k,
        alpha=mpq(1, 2),
    )


FIG1_COVERS = [
    ((mpq(12, 23), mpq(12, 23)), (mpq(18, 23), mpq(18, 23)), (mpq(1), mpq(1))),
    ((mpq(10, 23), mpq(18, 23)), (mpq(22, 23), mpq(12, 23)), (mpq(1), mpq(1))),
    ((mpq(18, 23), mpq(10, 23)), (mpq(12, 23), mpq(22, 23)), (mpq(1), mpq(1))),
]


class TestFeasibility:
    def test_all_ones_always_covers(self):
        rng = random.Random(5)
        for _ in range(25):
            inst = random_instance(rng)
            ones = tuple(mpq(1) for _ in range(inst.n))
            rest = tuple(tuple(mpq(0) for _ in range(inst.n)) for _ in range(inst.k - 1))
            assert is_pareto_cover(inst, Cover(points=rest + (ones,)))

    def test_missing_corner(self):
        inst = bernoulli_instance([mpq(1, 2), mpq(1, 2)], [mpq(1), mpq(1)], 2)
        cover = Cover(points=((mpq(1), mpq(0)), (mpq(0), mpq(1))))
        assert not is_pareto_cover(inst, cover)

    def test_point_mass(self):
        inst = bernoulli_instance([mpq(1), mpq(0)], [mpq(1), mpq(1)], 1)
        assert is_pareto_cover(inst, Cover(points=((mpq(1), mpq(0)),)))

    def test_dimension_mismatch(self):
        inst = bernoulli_instance([mpq(1, 2)], [mpq(1)], 1)
        with pytest.raises(ValidationError):
            is_pareto_cover(inst, Cover(points=((mpq(1), mpq(1)),)))

    def test_feasibility_equals_zero_empty_mass(self):
        rng = random.Random(17)
        checked = 0
        while checked < 60:
            inst = random_instance(rng, max_outcomes=700)
            points = tuple(
                tuple(rng.choice(inst.grid.values) for _ in range(inst.n))
                for _ in range(inst.k)
            )
            cover = Cover(points=points)
            dist = j_distribution(inst, cover)
            assert is_pareto_cover(inst, cover) == (dist.masses[0] == 0)
            checked += 1


class TestStageRecursion:
    def test_init_k1(self):
        dist = j_stage_init([mpq(1)], uniform_mass)
        assert dist.masses == (mpq(0), mpq(1))

    def test_init_uniform_pair(self):
        dist = j_stage_init([mpq(1, 2), mpq(1)], uniform_mass)
        # bit 0 is point 1, bit 1 is point 2
        assert dist.masses[0b11] == mpq(1, 2)
        assert dist.masses[0b10] == mpq(1, 2)
        assert dist.masses[0b01] == 0
        assert dist.masses[0b00] == 0

    def test_init_tie(self):
        dist = j_stage_init([mpq(1, 3), mpq(1, 3)], uniform_mass)
        assert dist.masses[0b11] == mpq(1, 3)
        assert dist.masses[0b01] == 0
        assert dist.masses[0b10] == 0

    def test_step_all_ones_identity(self):
        prev = JSetDistribution(stage=1, masses=(mpq(0), mpq(1, 4), mpq(1, 4), mpq(1, 2)))
        out = j_stage_step(prev, [mpq(1), mpq(1)], uniform_mass)
        assert out.masses == prev.masses

    def test_step_single_superset(self):
        prev = JSetDistribution(stage=1, masses=(mpq(0), mpq(0), mpq(0), mpq(1)))
        out = j_stage_step(prev, [mpq(1, 2), mpq(1)], uniform_mass)
        assert out.masses[0b11] == mpq(1, 2)
        assert out.masses[0b10] == mpq(1, 2)

    def test_step_absorbing_empty(self):
        prev = JSetDistribution(stage=1, masses=(mpq(1), mpq(0), mpq(0), mpq(0)))
        out = j_stage_step(prev, [mpq(1), mpq(1)], uniform_mass)
        assert out.masses[0] == 1

    def test_stage_normalization(self):
        rng = random.Random(23)
        for _ in range(40):
            inst = random_instance(rng, max_outcomes=700)
            cover = random_feasible_cover(rng, inst)
            fn = lambda a, b: interval_mass(inst, 0, a, b)
            dist = j_stage_init([p[0] for p in cover.points], fn)
            assert dist.total() == 1
            for i in range(1, inst.n):
                fn_i = lambda a, b, i=i: interval_mass(inst, i, a, b)
                dist = j_stage_step(dist, [p[i] for p in cover.points], fn_i)
                assert dist.total() == 1


class TestExpectedCost:
    def test_all_ones_pays_everything(self):
        rng = random.Random(31)
        for _ in range(20):
            inst = random_instance(rng)
            ones = tuple(mpq(1) for _ in range(inst.n))
            zeros = tuple(tuple(mpq(0) for _ in range(inst.n)) for _ in range(inst.k - 1))
            cover = Cover(points=zeros + (ones,))
            cost = expected_cost(inst, cover)
            zero_mass = mpq(1)
            for i in range(inst.n):
                zero_mass *= inst.probs[i][0]
            expected = sum(inst.costs, start=mpq(0))
            if zero_mass == 0 or inst.k == 1:
                assert cost == expected

    def test_bernoulli_pair(self):
        inst = bernoulli_instance([mpq(1, 2), mpq(1, 2)], [mpq(1), mpq(1)], 2)
        cover = Cover(points=((mpq(1), mpq(0)), (mpq(1), mpq(1))))
        assert expected_cost(inst, cover) == mpq(3, 2)

    def test_fig1_exact_value(self):
        inst = fig1_instance()
        for points in FIG1_COVERS:
            assert expected_cost(inst, Cover(points=points)) == mpq(842, 529)

    def test_infeasible_reports_uncovered_mass(self):
        inst = bernoulli_instance([mpq(1, 2), mpq(1, 2)], [mpq(1), mpq(1)], 2)
        cover = Cover(points=((mpq(1), mpq(0)), (mpq(0), mpq(1))))
        with pytest.raises(InfeasibleCoverError) as err:
            expected_cost(inst, cover)
        assert err.value.uncovered_mass == mpq(1, 4)

    def test_continuous_requires_exact_oracles(self):
        noisy = ContinuousInstance(
            oracles=(MultiplicativeNoiseOracle(UniformOracle()),),
            costs=(mpq(1),),
            k=1,
            alpha=mpq(1, 2),
        )
        with pytest.raises(ValidationError):
            expected_cost(noisy, Cover(points=((mpq(1),),)))

    def test_monotone_in_extra_points(self):
        rng = random.Random(41)
        for _ in range(40):
            inst = random_instance(rng, max_outcomes=700)
            base = random_feasible_cover(rng, inst)
            extra = tuple(rng.choice(inst.grid.values) for _ in range(inst.n))
            bigger = Cover(points=base.points + (extra,))
            assert expected_cost(inst, bigger) <= expected_cost(inst, base)

    def test_lower_bound(self):
        rng = random.Random(43)
        for _ in range(40):
            inst = random_instance(rng, max_outcomes=700)
            cover = random_feasible_cover(rng, inst)
            assert cost_lower_bound(inst) <= expected_cost(inst, cover)
        assert cost_lower_bound(fig1_instance()) == 1
        bern = bernoulli_instance([mpq(1, 3), mpq(3, 4)], [mpq(2), mpq(5)], 1)
        assert cost_lower_bound(bern) == mpq(2) * mpq(1, 3) + mpq(5) * mpq(3, 4)

    def test_coordinate_lowering_keeps_distribution(self):
        rng = random.Random(47)
        for _ in range(30):
            inst = random_instance(rng, max_outcomes=700)
            # off-grid cover, still feasible thanks to a*
            points = []
            for _ in range(inst.k - 1):
                points.append(
                    tuple(mpq(rng.randint(0, 24), 24) for _ in range(inst.n))
                )
            points.append(inst.a_star())
            cover = Cover(points=tuple(points))
            snapped = Cover(
                points=tuple(
                    tuple(
                        inst.grid.values[inst.grid.index_at_or_below(x)]
                        for x in point
                    )
                    for point in cover.points
                )
            )
            assert j_distribution(inst, cover).masses == j_distribution(inst, snapped).masses
            assert expected_cost(inst, snapped) <= expected_cost(inst, cover)

    def test_batch_helper_matches(self):
        rng = random.Random(53)
        inst = random_instance(rng, max_outcomes=700)
        covers = [random_feasible_cover(rng, inst) for _ in range(5)]
        assert expected_cost_many(inst, covers) == [
            expected_cost(inst, c) for c in covers
        ]

    def test_approx_mode_tracks_exact(self):
        inst = fig1_instance()
        cover = Cover(points=FIG1_COVERS[0])
        approx = expected_cost_approx(inst, cover, dps=30)
        assert abs(float(approx) - 842 / 529) < 1e-12


class TestNaiveOracle:
    def test_matches_stage_recursion(self):
        rng = random.Random(61)
        for _ in range(60):
            inst = random_instance(rng, max_n=4, max_interior=3, max_k=3, max_outcomes=640)
            cover = random_feasible_cover(rng, inst)
            assert expected_cost(inst, cover) == expected_cost_naive(inst, cover)

    def test_point_mass_at_zero(self):
        inst = bernoulli_instance([mpq(0), mpq(0)], [mpq(1), mpq(1)], 1)
        cover = Cover(points=((mpq(0), mpq(0)),))
        assert expected_cost_naive(inst, cover) == 0

    def test_bernoulli_pair(self):
        inst = bernoulli_instance([mpq(1, 2), mpq(1, 2)], [mpq(1), mpq(1)], 2)
        cover = Cover(points=((mpq(1), mpq(0)), (mpq(1), mpq(1))))
        assert expected_cost_naive(inst, cover) == mpq(3, 2)

    def test_infeasible_agrees(self):
        inst = bernoulli_instance([mpq(1, 2), mpq(1, 2)], [mpq(1), mpq(1)], 2)
        cover = Cover(points=((mpq(1), mpq(0)), (mpq(0), mpq(1))))
        with pytest.raises(InfeasibleCoverError) as err:
            expected_cost_naive(inst, cover)
        assert err.value.uncovered_mass == mpq(1, 4)

    def test_general_grid_path(self):
        # three-value grid bypasses the binary fast path
        rng = random.Random(67)
        for _ in range(25):
            inst = random_instance(rng, max_n=3, max_interior=2, max_k=3, max_outcomes=300)
            if len(inst.grid) == 2:
                continue
            cover = random_feasible_cover(rng, inst)
            assert expected_cost(inst, cover) == expected_cost_naive(inst, cover)

    def test_cap(self):
        from pareto_cover import ResourceLimitError

        inst = bernoulli_instance([mpq(1, 2)] * 4, [mpq(1)] * 4, 1)
        cover = Cover(points=(tuple(mpq(1) for _ in range(4)),))
        with pytest.raises(ResourceLimitError):
            expected_cost_naive(inst, cover, cap=15)


class TestVertexCoverIdentity:
    def test_triangle(self):
        from pareto_cover import count_vertex_covers_via_cost, graph_to_cover_gadget
        from pareto_cover.reductions import Graph

        g = Graph(n=3, edges=((0, 1), (0, 2), (1, 2)))
        inst, cover = graph_to_cover_gadget(g)
        # K3 has 4 vertex covers, so the gadget evaluates to 1 + 4/4
        assert expected_cost_naive(inst, cover) == 2
        assert count_vertex_covers_via_cost(g) == 4
