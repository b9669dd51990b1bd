"""Hardness-reduction instance generators and desk-scale verifiers.

Three generators map partition-style problems onto cover instances whose
optimum crosses a computable threshold gamma exactly when the source
instance is solvable: a two-point reduction driven by rounded exponentials,
a three-point reduction with uniformly shrunk probabilities, and a
(t+2)-point reduction with an extra expensive coordinate.  A fourth gadget
encodes vertex-cover counting into a single cover evaluation.

The verifiers here do not prove anything; they exhaustively confirm the
separations on small instances, restricting covers to the structural form
the constructions are built around, with an optional fully exhaustive mode
for tiny n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import (
    ConsistencyError,
    ResourceLimitError,
    ValidationError,
)
from .evaluator import (
    DEFAULT_K_CAP,
    expected_cost,
    expected_cost_naive,
)
from .measures import Cover, DiscreteProductInstance, bernoulli_instance
from .numerics import (
    Rational,
    approx_exp_neg,
    ceil_log2,
    is_integer,
    rat,
)

# Same-sign float dot products keep relative error below ~2^-46 at these
# sizes; the screening band is far wider than that but far narrower than
# any separation gap.
_SCREEN_BAND = 2.0**-38


@dataclass(frozen=True)
class PartitionInstance:
    """Positive integers to split into equal-sum parts."""

    a: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", vals)
        if len(vals) == 0:
            raise ValidationError("partition instance needs at least one number")
        if any(x < 1 for x in vals):
            raise ValidationError("partition numbers must be >= 1")

    @property
    def total(self) -> int:
        return sum(self.a)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("graph needs at least one node")
        normalized = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValidationError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge ({u}, {v}) outside node range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValidationError(f"duplicate edge {e}")
            seen.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))


def partition_has_solution(inst: PartitionInstance) -> bool:
    """Subset-sum check for a split into two equal halves."""
    total = inst.total
    if total % 2:
        return False
    target = total // 2
    reachable = 1
    for x in inst.a:
        reachable |= reachable << x
    return bool((reachable >> target) & 1)


def numpart_has_solution(t: int, inst: PartitionInstance) -> bool:
    """Can the numbers be split into t parts of equal sum?"""
    total = inst.total
    if total % t:
        return False
    target = total // t
    values = sorted(inst.a, reverse=True)
    sums = [0] * t

    def place(idx: int) -> bool:
        if idx == len(values):
            return True
        tried = set()
        for j in range(t):
            if sums[j] in tried:
                continue
            tried.add(sums[j])
            if sums[j] + values[idx] <= target:
                sums[j] += values[idx]
                if place(idx + 1):
                    return True
                sums[j] -= values[idx]
        return False

    return place(0)


# ---------------------------------------------------------------------------
# certified exponential bounds


def _exp_neg_bounds(x, m: int) -> tuple[Rational, Rational]:
    """Rigorous rational enclosure of exp(-x) at relative width ~2**-m."""
    y = approx_exp_neg(x, m)
    tol = mpq(1, 2**m)
    return y / (1 + tol), y / (1 - tol)


def _certify(
    scale_low: Rational,
    value: Rational,
    scale_high: Rational,
    x,
    precision: int,
    what: str,
    max_precision: int = 512,
) -> None:
    """Certify scale_low * exp(-x) <= value <= scale_high * exp(-x).

    Escalates the enclosure precision until both sides are decided; both
    inequalities hold strictly for the constructions here, so this
    terminates.
    """
    m = precision
    while m <= max_precision:
        lo, hi = _exp_neg_bounds(x, m)
        if scale_low * hi <= value and value <= scale_high * lo:
            return
        if value < scale_low * lo or value > scale_high * hi:
            raise ConsistencyError(f"{what}: sandwich violated")
        m *= 2
    raise ConsistencyError(f"{what}: could not certify at precision {max_precision}")


# ---------------------------------------------------------------------------
# generators


def k2_parameters(inst: PartitionInstance) -> tuple[Rational, Rational, int]:
    """(alpha, beta, default series precision) for the two-point reduction."""
    n = len(inst.a)
    alpha = mpq(2, inst.total)
    beta = alpha * alpha / (48 * (n + 1))
    return alpha, beta, ceil_log2(1 / beta)


def partition_to_k2(
    inst: PartitionInstance, m: Optional[int] = None
) -> tuple[DiscreteProductInstance, Rational]:
    """Two-point reduction: rounded-exponential probabilities, costs a_i.

    Requires an even total.  The probabilities approximate 1 - exp(-alpha
    a_i) and the threshold sits just below total - h(total/2) for the
    tent function h(x) = x exp(-alpha x); both approximations are certified
    after construction at elevated precision.
    """
    if inst.total % 2:
        raise ValidationError("the two-part reduction needs an even total")
    n = len(inst.a)
    alpha, beta, m_default = k2_parameters(inst)
    m = m_default if m is None else int(m)
    q = [approx_exp_neg(alpha * a_i, m) for a_i in inst.a]
    p = [1 - q_i for q_i in q]
    gamma0 = approx_exp_neg(1, m)
    gamma1 = (1 - beta) ** (n + 1) / alpha * gamma0
    gamma = inst.total - gamma1
    instance = bernoulli_instance(p, [mpq(a_i) for a_i in inst.a], k=2)
    # post-construction certification of the construction's inequalities
    for a_i, q_i in zip(inst.a, q):
        _certify(1 - beta, q_i, 1 + beta, alpha * a_i, m + 8, f"1-p for a_i={a_i}")
    _certify(
        (1 - beta) ** (n + 2) / alpha,
        gamma1,
        (1 - beta) ** n / alpha,
        mpq(1),
        m + 8,
        "gamma offset",
    )
    return instance, gamma


def partition_to_k3(inst: PartitionInstance) -> tuple[DiscreteProductInstance, Rational]:
    """Three-point reduction: probabilities a_i / (S*M) with M = 2 S^2."""
    if inst.total % 2:
        raise ValidationError("the three-part reduction needs an even total")
    s = inst.total
    m_const = 2 * s * s
    p = [mpq(a_i, s * m_const) for a_i in inst.a]
    prod = mpq(1)
    for p_i in p:
        prod *= 1 - p_i
    gamma = (1 - prod) * s + mpq(s, m_const**2) - mpq(s * s, 4 * s * m_const)
    instance = bernoulli_instance(p, [mpq(a_i) for a_i in inst.a], k=3)
    return instance, gamma


def numpart_to_k(
    t: int, inst: PartitionInstance
) -> tuple[DiscreteProductInstance, Rational]:
    """(t+2)-point reduction with one extra expensive low-probability coordinate.

    Produces k = t + 2, which may exceed the DP's table cap; the instance
    is meant for the brute-force verifiers.
    """
    t = int(t)
    if t < 2:
        raise ValidationError("t must be at least 2")
    if inst.total % t:
        raise ValidationError(f"total {inst.total} is not divisible by t = {t}")
    s = inst.total
    m_const = 13 * s * s
    p = [mpq(a_i, m_const**4) for a_i in inst.a] + [mpq(1, m_const**6)]
    c = [mpq(a_i) for a_i in inst.a] + [mpq(2 * m_const)]
    gamma = mpq(s * s, t * m_const**4) + mpq(6, m_const**5)
    instance = bernoulli_instance(p, c, k=t + 2)
    return instance, gamma


def graph_to_cover_gadget(g: Graph) -> tuple[DiscreteProductInstance, Cover]:
    """Uniform binary instance plus the cover of edge-complement points.

    The cover has |E| + 1 points, so only the naive evaluator (or the
    subset recursion when |E| + 1 is small) can price it.
    """
    if g.n < 2:
        raise ValidationError("the counting gadget needs at least two nodes")
    half = mpq(1, 2)
    instance = bernoulli_instance(
        [half] * g.n, [mpq(1)] * g.n, k=len(g.edges) + 1
    )
    points = []
    for u, v in g.edges:
        points.append(tuple(mpq(0) if i in (u, v) else mpq(1) for i in range(g.n)))
    points.append(tuple(mpq(1) for _ in range(g.n)))
    return instance, Cover(points=tuple(points))


def count_vertex_covers_via_cost(
    g: Graph, method: str = "auto", cap: int = 2**20
) -> int:
    """Vertex covers of g, recovered from one exact cover evaluation.

    The evaluation gives 2^(n-1) * (cost - (n-2)) and that quantity must
    clear denominators exactly; anything else is an internal error.
    """
    instance, cover = graph_to_cover_gadget(g)
    if method == "auto":
        method = "jset" if cover.k <= DEFAULT_K_CAP else "naive"
    if method == "jset":
        cost = expected_cost(instance, cover)
    elif method == "naive":
        cost = expected_cost_naive(instance, cover, cap=cap)
    else:
        raise ValidationError(f"unknown method {method!r}")
    value = (cost - (g.n - 2)) * mpq(2) ** (g.n - 1)
    if not is_integer(value) or value < 0:
        raise ConsistencyError(f"counting identity produced non-integer {value}")
    return int(value)


def count_vertex_covers_brute(g: Graph) -> int:
    """Independent reference: enumerate all node subsets."""
    if len(g.edges) == 0:
        return 2**g.n
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    count = 0
    for subset in range(1 << g.n):
        if all(subset & em for em in edge_masks):
            count += 1
    return count


# ---------------------------------------------------------------------------
# separation verifiers


def _binary_points(n: int) -> list[tuple[Rational, ...]]:
    return [
        tuple(mpq((mask >> i) & 1) for i in range(n)) for mask in range(1 << n)
    ]


def _mask_point(mask: int, n: int) -> tuple[Rational, ...]:
    return tuple(mpq((mask >> i) & 1) for i in range(n))


def min_cost_two_point(
    instance: DiscreteProductInstance,
) -> tuple[Cover, Rational]:
    """Exact minimum over covers of the form (b, all-ones), b binary."""
    n = instance.n
    ones = _mask_point((1 << n) - 1, n)
    best = None
    for mask in range(1 << n):
        cover = Cover(points=(_mask_point(mask, n), ones))
        cost = expected_cost(instance, cover)
        if best is None or cost < best[1]:
            best = (cover, cost)
    return best


def min_cost_zero_mid_one(
    instance: DiscreteProductInstance,
) -> tuple[Cover, Rational]:
    """Exact minimum over covers (zero, b, all-ones), b binary."""
    n = instance.n
    zero = _mask_point(0, n)
    ones = _mask_point((1 << n) - 1, n)
    best = None
    for mask in range(1 << n):
        cover = Cover(points=(zero, _mask_point(mask, n), ones))
        cost = expected_cost(instance, cover)
        if best is None or cost < best[1]:
            best = (cover, cost)
    return best


def _binary_outcome_masses(instance: DiscreteProductInstance) -> list[Rational]:
    """Product masses of all outcomes; bit i of the index is coordinate i."""
    if len(instance.grid) != 2:
        raise ValidationError("binary verifier needs a {0,1} grid")
    masses = [mpq(0)] * (1 << instance.n)
    for x in range(1 << instance.n):
        m = mpq(1)
        for i in range(instance.n):
            m *= instance.probs[i][(x >> i) & 1]
        masses[x] = m
    return masses


def _exact_binary_cover_cost(
    masses: Sequence[Rational],
    mask_costs: Sequence[Rational],
    point_masks: Sequence[int],
) -> Rational:
    order = sorted(range(len(point_masks)), key=lambda j: (mask_costs[point_masks[j]], j))
    total = mpq(0)
    for x, mass in enumerate(masses):
        if mass == 0:
            continue
        for j in order:
            if x & ~point_masks[j] == 0:
                total += mass * mask_costs[point_masks[j]]
                break
        else:
            raise ConsistencyError("structured cover failed to cover an outcome")
    return total


def min_cost_multiset_with_pinned(
    instance: DiscreteProductInstance,
    pinned_masks: Sequence[int],
    free_count: int,
    batch: int = 4096,
) -> tuple[Cover, Rational]:
    """Exact minimum over covers {pinned points} + multiset of binary points.

    Screens all covers with a nonnegative float dot product (relative error
    provably below the screening band), then re-evaluates every near-minimal
    cover exactly, so the returned minimum is exact.  The pinned points must
    include the all-ones mask so every cover is feasible.
    """
    n = instance.n
    size = 1 << n
    full = size - 1
    if full not in pinned_masks:
        raise ValidationError("pinned points must include the all-ones mask")
    masses = _binary_outcome_masses(instance)
    mask_costs = [
        sum((instance.costs[i] for i in range(n) if (m >> i) & 1), start=mpq(0))
        for m in range(size)
    ]
    massf = np.array([float(m) for m in masses])
    costf = np.array([float(c) for c in mask_costs])
    outcomes = np.arange(size, dtype=np.int64)

    combos = list(combinations_with_replacement(range(size), free_count))
    pinned = tuple(int(m) for m in pinned_masks)
    values = np.empty(len(combos))
    for start in range(0, len(combos), batch):
        chunk = combos[start : start + batch]
        arr = np.array([pinned + c for c in chunk], dtype=np.int64)
        charge = np.full((len(chunk), size), np.inf)
        for col in range(arr.shape[1]):
            covered = (outcomes[None, :] & ~arr[:, col : col + 1]) == 0
            pc = costf[arr[:, col]][:, None]
            charge = np.minimum(charge, np.where(covered, pc, np.inf))
        values[start : start + len(chunk)] = charge @ massf
    best_float = values.min()
    threshold = best_float * (1 + _SCREEN_BAND)
    best = None
    for idx in np.nonzero(values <= threshold)[0]:
        point_masks = pinned + combos[int(idx)]
        cost = _exact_binary_cover_cost(masses, mask_costs, point_masks)
        if best is None or cost < best[1]:
            best = (point_masks, cost)
    cover = Cover(points=tuple(_mask_point(m, n) for m in best[0]))
    return cover, best[1]


def min_cost_binary_covers_exhaustive(
    instance: DiscreteProductInstance, size: int, limit: int = 200_000
) -> tuple[Cover, Rational]:
    """Tiny-n cross-check: exact minimum over all binary multiset covers."""
    n = instance.n
    count = 1 << n
    from math import comb

    if comb(count + size - 1, size) > limit:
        raise ResourceLimitError("exhaustive binary cover enumeration too large")
    masses = _binary_outcome_masses(instance)
    mask_costs = [
        sum((instance.costs[i] for i in range(n) if (m >> i) & 1), start=mpq(0))
        for m in range(count)
    ]
    best = None
    for combo in combinations_with_replacement(range(count), size):
        try:
            cost = _exact_binary_cover_cost(masses, mask_costs, combo)
        except ConsistencyError:
            continue  # infeasible: some outcome uncovered
        if best is None or cost < best[1]:
            best = (combo, cost)
    if best is None:
        raise ValidationError("no feasible cover of the requested size")
    return Cover(points=tuple(_mask_point(m, n) for m in best[0])), best[1]
