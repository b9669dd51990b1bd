"""Exact feasibility and expected-cost computation for covers.

The cost of a cover decomposes over the sets J of cover indices that
dominate a random point: stage i of the recursion tracks, for every
J ⊆ [k], the probability that exactly the points indexed by J dominate
the first i coordinates.  One pass per coordinate with exact interval
masses gives the full distribution, and the expected cost is the sum of
``mass[J] * min_{j in J} c·b^j`` over nonempty J.

``expected_cost_naive`` is the independent oracle: it enumerates the whole
finite sample space and charges each outcome the cheapest dominating
point.  The two must agree to the bit on every discrete instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
from gmpy2 import mpq

from .errors import InfeasibleCoverError, ResourceLimitError, ValidationError
from .measures import (
    NEG_INF,
    POS_INF,
    ContinuousInstance,
    Cover,
    DiscreteProductInstance,
    exact_interval_mass,
    interval_mass,
)
from .numerics import Rational

#: Widest cover the subset recursion will take on (the table is 2^k wide).
DEFAULT_K_CAP = 14

MassFn = Callable[[object, object], Rational]


@dataclass(frozen=True)
class JSetDistribution:
    """Masses of the dominating-index sets after some number of stages."""

    stage: int
    masses: tuple[Rational, ...]

    @property
    def k(self) -> int:
        return (len(self.masses)).bit_length() - 1

    def total(self) -> Rational:
        return sum(self.masses, start=mpq(0))


def _subset_interval(b_values: Sequence[Rational], in_mask: int, out_mask: int):
    """Endpoints (max over out_mask, min over in_mask) with empty conventions."""
    lo = NEG_INF
    hi = POS_INF
    mask = out_mask
    j = 0
    while mask:
        if mask & 1:
            v = b_values[j]
            if lo is NEG_INF or v > lo:
                lo = v
        mask >>= 1
        j += 1
    mask = in_mask
    j = 0
    while mask:
        if mask & 1:
            v = b_values[j]
            if hi is POS_INF or v < hi:
                hi = v
        mask >>= 1
        j += 1
    return lo, hi


def j_stage_init(b_firsts: Sequence[Rational], mass_fn: MassFn) -> JSetDistribution:
    """Stage-1 distribution from the first coordinates of the cover points."""
    k = len(b_firsts)
    full = (1 << k) - 1
    masses = []
    for j_mask in range(1 << k):
        lo, hi = _subset_interval(b_firsts, j_mask, full & ~j_mask)
        masses.append(mass_fn(lo, hi))
    return JSetDistribution(stage=1, masses=tuple(masses))


def j_stage_step(
    prev: JSetDistribution, b_iths: Sequence[Rational], mass_fn: MassFn
) -> JSetDistribution:
    """Refine the stage i-1 distribution with coordinate i of the points."""
    k = len(b_iths)
    if (1 << k) != len(prev.masses):
        raise ValidationError("stage distribution width does not match point count")
    masses = [mpq(0)] * (1 << k)
    for l_mask in range(1 << k):
        p = prev.masses[l_mask]
        if p == 0:
            continue
        # all J ⊆ L, including J = L and J = ∅
        sub = l_mask
        while True:
            lo, hi = _subset_interval(b_iths, sub, l_mask & ~sub)
            if not (hi is not POS_INF and lo is not NEG_INF and hi <= lo):
                m = mass_fn(lo, hi)
                if m != 0:
                    masses[sub] += p * m
            if sub == 0:
                break
            sub = (sub - 1) & l_mask
    return JSetDistribution(stage=prev.stage + 1, masses=tuple(masses))


def _discrete_mass_fn(instance: DiscreteProductInstance, i: int) -> MassFn:
    return lambda a, b: interval_mass(instance, i, a, b)


def _continuous_mass_fn(instance: ContinuousInstance, i: int) -> MassFn:
    oracle = instance.oracles[i]
    return lambda a, b: exact_interval_mass(oracle, a, b)


def _mass_fns(instance) -> list[MassFn]:
    if isinstance(instance, DiscreteProductInstance):
        return [_discrete_mass_fn(instance, i) for i in range(instance.n)]
    if isinstance(instance, ContinuousInstance):
        if not instance.all_exact:
            raise ValidationError(
                "expected_cost on a continuous instance needs exact oracles; "
                "discretize approximate ones first"
            )
        return [_continuous_mass_fn(instance, i) for i in range(instance.n)]
    raise ValidationError(f"unsupported instance type {type(instance).__name__}")


def _check_cover(instance, cover: Cover, k_cap: int) -> None:
    if cover.n != instance.n:
        raise ValidationError(
            f"cover dimension {cover.n} does not match instance dimension {instance.n}"
        )
    if cover.k > k_cap:
        raise ResourceLimitError(
            f"cover has {cover.k} points; the subset recursion is capped at {k_cap}"
        )


def is_pareto_cover(instance: DiscreteProductInstance, cover: Cover) -> bool:
    """True iff some point dominates the maximum support point a*."""
    if cover.n != instance.n:
        raise ValidationError(
            f"cover dimension {cover.n} does not match instance dimension {instance.n}"
        )
    a_star = instance.a_star()
    return any(
        all(x >= s for x, s in zip(point, a_star)) for point in cover.points
    )


def point_costs(instance, cover: Cover) -> tuple[Rational, ...]:
    return tuple(
        sum((c * x for c, x in zip(instance.costs, point)), start=mpq(0))
        for point in cover.points
    )


def j_distribution(instance, cover: Cover, k_cap: int = DEFAULT_K_CAP) -> JSetDistribution:
    """Full J-set distribution of the cover under the instance's measure."""
    _check_cover(instance, cover, k_cap)
    fns = _mass_fns(instance)
    dist = j_stage_init([p[0] for p in cover.points], fns[0])
    for i in range(1, instance.n):
        dist = j_stage_step(dist, [p[i] for p in cover.points], fns[i])
    return dist


def expected_cost(instance, cover: Cover, k_cap: int = DEFAULT_K_CAP) -> Rational:
    """Exact expected cost of the cheapest dominating point.

    Works for discrete instances and for continuous instances whose
    oracles are all exact.  Raises :class:`InfeasibleCoverError` carrying
    the uncovered mass when the cover misses part of the support.
    """
    dist = j_distribution(instance, cover, k_cap)
    if dist.masses[0] != 0:
        raise InfeasibleCoverError(dist.masses[0])
    costs = point_costs(instance, cover)
    total = mpq(0)
    for j_mask in range(1, len(dist.masses)):
        m = dist.masses[j_mask]
        if m == 0:
            continue
        best = None
        bit = j_mask
        j = 0
        while bit:
            if bit & 1 and (best is None or costs[j] < best):
                best = costs[j]
            bit >>= 1
            j += 1
        total += m * best
    return total


def expected_cost_many(instance, covers: Sequence[Cover]) -> list[Rational]:
    """Batch helper; evaluation order is fixed so results are deterministic."""
    return [expected_cost(instance, cover) for cover in covers]


def expected_cost_approx(instance, cover: Cover, dps: int = 50):
    """Opt-in floating evaluation at ``dps`` decimal digits via mpmath.

    Speed knob only: the exact evaluator is authoritative and is what every
    guarantee and acceptance check uses.
    """
    with mpmath.workdps(dps):
        exact = expected_cost(instance, cover)
        return mpmath.mpf(exact.numerator) / mpmath.mpf(exact.denominator)


def cost_lower_bound(instance) -> Rational:
    """Sum of c_i times a lower bound on E[X_i]; never exceeds any cover's cost."""
    if isinstance(instance, DiscreteProductInstance):
        return sum(
            (c * instance.coordinate_expectation(i) for i, c in enumerate(instance.costs)),
            start=mpq(0),
        )
    if isinstance(instance, ContinuousInstance):
        return instance.alpha * sum(instance.costs, start=mpq(0))
    raise ValidationError(f"unsupported instance type {type(instance).__name__}")


def _binary_fast_path(instance: DiscreteProductInstance) -> bool:
    return len(instance.grid) == 2


def _expected_cost_naive_binary(instance: DiscreteProductInstance, cover: Cover) -> Rational:
    n = instance.n
    point_masks = []
    for point in cover.points:
        mask = 0
        for i, x in enumerate(point):
            if x >= 1:
                mask |= 1 << i
        point_masks.append(mask)
    costs = point_costs(instance, cover)
    order = sorted(range(cover.k), key=lambda j: (costs[j], j))
    p1 = [row[1] for row in instance.probs]
    p0 = [row[0] for row in instance.probs]
    total = mpq(0)
    uncovered = mpq(0)
    for x in range(1 << n):
        mass = mpq(1)
        for i in range(n):
            mass *= p1[i] if (x >> i) & 1 else p0[i]
        if mass == 0:
            continue
        charged = None
        for j in order:
            if x & ~point_masks[j] == 0:
                charged = costs[j]
                break
        if charged is None:
            uncovered += mass
        else:
            total += mass * charged
    if uncovered != 0:
        raise InfeasibleCoverError(uncovered)
    return total


def expected_cost_naive(
    instance: DiscreteProductInstance, cover: Cover, cap: int = 10**6
) -> Rational:
    """Brute-force oracle: enumerate the sample space and charge each outcome.

    Exponential in n by design; refuses instances whose outcome count
    exceeds ``cap``.
    """
    if not isinstance(instance, DiscreteProductInstance):
        raise ValidationError("the naive evaluator only handles discrete instances")
    if cover.n != instance.n:
        raise ValidationError(
            f"cover dimension {cover.n} does not match instance dimension {instance.n}"
        )
    if instance.outcome_count > cap:
        raise ResourceLimitError(
            f"{instance.outcome_count} outcomes exceed the enumeration cap {cap}"
        )
    if _binary_fast_path(instance):
        return _expected_cost_naive_binary(instance, cover)

    width = len(instance.grid)
    n = instance.n
    # threshold index per point and coordinate: x_i <= b_i iff idx(x_i) <= thr
    thresholds = [
        tuple(instance.grid.index_at_or_below(x) for x in point)
        for point in cover.points
    ]
    costs = point_costs(instance, cover)
    order = sorted(range(cover.k), key=lambda j: (costs[j], j))

    # outcome masses by iterated outer product, index in row-major digit order
    masses = [mpq(1)]
    for i in range(n):
        row = instance.probs[i]
        masses = [m * p for m in masses for p in row]

    digits = [0] * n
    total = mpq(0)
    uncovered = mpq(0)
    for flat, mass in enumerate(masses):
        if mass != 0:
            charged = None
            for j in order:
                thr = thresholds[j]
                if all(digits[i] <= thr[i] for i in range(n)):
                    charged = costs[j]
                    break
            if charged is None:
                uncovered += mass
            else:
                total += mass * charged
        # increment mixed-radix counter (last digit fastest)
        for i in range(n - 1, -1, -1):
            digits[i] += 1
            if digits[i] < width:
                break
            digits[i] = 0
    if uncovered != 0:
        raise InfeasibleCoverError(uncovered)
    return total
