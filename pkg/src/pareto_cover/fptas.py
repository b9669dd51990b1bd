"""Rounding dynamic program over candidate tables.

A candidate is a stage index plus exponent-coded dominance probabilities
(one per subset of cover indices) and exponent-coded prefix costs (one per
cover point), every nonzero value stored as an integer power of 1 + delta
with delta = eps / 4n.  Stage 1 enumerates all first coordinates of the
k - 1 free points (the k-th point is pinned to the maximum support point);
each later stage extends every stored candidate with every coordinate
tuple, recomputes the subset probabilities from the stored exponent
values, accumulates costs, and rounds everything down to the next power.

Identical rounded candidates collide in the table; the first witness under
the fixed enumeration order (stored candidates sorted by key, coordinate
tuples in lexicographic grid order) is kept.  The minimum-cost stage-n
candidate's witness is the returned cover, re-evaluated exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Iterable, NamedTuple, Optional, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import ResourceLimitError, ValidationError
from .evaluator import expected_cost
from .measures import ContinuousInstance, Cover, DiscreteProductInstance
from .numerics import (
    ExponentOrZero,
    PowerCache,
    Rational,
    RationalLike,
    ZERO,
    exponent_sort_key,
    floor_log,
    rat,
)
from .discretizer import discretize, fptas_parameters

DEFAULT_K_CAP = 6
HARD_K_CAP = 12
K_CAP_ENV = "PARETO_COVER_MAX_K"


class Candidate(NamedTuple):
    stage: int
    probs: tuple[ExponentOrZero, ...]
    costs: tuple[ExponentOrZero, ...]


@dataclass
class CandidateTable:
    stage: int
    entries: dict[Candidate, tuple[tuple[Rational, ...], ...]]

    def __len__(self) -> int:
        return len(self.entries)


def candidate_sort_key(cand: Candidate):
    """Deterministic total order on candidates (ZERO below any exponent)."""
    return (
        cand.stage,
        tuple(exponent_sort_key(e) for e in cand.probs),
        tuple(exponent_sort_key(e) for e in cand.costs),
    )


def round_to_power(x: RationalLike, delta: RationalLike) -> ExponentOrZero:
    """Round x >= 0 down to the next power of 1 + delta, in exponent form."""
    return PowerCache(1 + rat(delta)).round_down(rat(x))


def resolve_k_cap(k_cap: Optional[int] = None) -> int:
    if k_cap is None:
        env = os.environ.get(K_CAP_ENV)
        k_cap = int(env) if env else DEFAULT_K_CAP
    return min(k_cap, HARD_K_CAP)


def _beta_tuples(width: int, free: int, prune_symmetric: bool) -> Iterable[tuple[int, ...]]:
    if prune_symmetric:
        return combinations_with_replacement(range(width), free)
    return product(range(width), repeat=free)


def _tuple_count(width: int, free: int, prune_symmetric: bool) -> int:
    if prune_symmetric:
        from math import comb

        return comb(width + free - 1, free)
    return width**free


def _index_interval(beta: Sequence[int], in_mask: int, universe: int) -> tuple[int, int]:
    """Grid-index endpoints of (max over universe minus in_mask, min over in_mask].

    -1 encodes an empty max (no lower constraint); a missing min is encoded
    as the top grid index, since an unbounded interval caps at 1 anyway.
    """
    lo = -1
    hi = None
    j = 0
    out_mask = universe & ~in_mask
    while out_mask:
        if out_mask & 1:
            v = beta[j]
            if v > lo:
                lo = v
        out_mask >>= 1
        j += 1
    j = 0
    while in_mask:
        if in_mask & 1:
            v = beta[j]
            if hi is None or v < hi:
                hi = v
        in_mask >>= 1
        j += 1
    return lo, hi


_MISSING = object()


def _stage1_exponents(
    instance: DiscreteProductInstance,
    beta: Sequence[int],
    cache: PowerCache,
    pexp_memo: dict,
    cexp_memo: dict,
) -> tuple[tuple[ExponentOrZero, ...], tuple[ExponentOrZero, ...]]:
    k = instance.k
    full = (1 << k) - 1
    top = len(instance.grid) - 1
    probs = []
    for j_mask in range(1 << k):
        lo, hi = _index_interval(beta, j_mask, full)
        if hi is None:
            hi = top
        e = pexp_memo.get((lo, hi), _MISSING)
        if e is _MISSING:
            mass = instance.interval_mass_by_index(0, lo, hi)
            e = cache.round_down(mass)
            pexp_memo[(lo, hi)] = e
        probs.append(e)
    c1 = instance.costs[0]
    costs = []
    for j in range(k):
        idx = beta[j]
        e = cexp_memo.get(idx, _MISSING)
        if e is _MISSING:
            e = cache.round_down(c1 * instance.grid.values[idx])
            cexp_memo[idx] = e
        costs.append(e)
    return tuple(probs), tuple(costs)


class _RoundingEngine:
    """Floor exponents for the DP, with a certified interval fast path.

    Each requested exponent is either proven by directed-rounding mpfr
    bounds (the power sandwich is checked against a rigorous enclosure of
    the value) or recomputed in exact rational arithmetic.  Results are
    identical to the pure exact path in all cases; ``exact_only`` forces
    the fallback everywhere and is used to cross-check that claim.
    """

    PRECISION = 160

    def __init__(self, cache: PowerCache, exact_only: bool = False):
        self.cache = cache
        self.exact_only = exact_only
        self.ctx_down = gmpy2.context(
            precision=self.PRECISION, round=gmpy2.RoundDown
        )
        self.ctx_up = gmpy2.context(precision=self.PRECISION, round=gmpy2.RoundUp)
        self._zero = gmpy2.mpfr(0)
        self._value_bounds: dict = {ZERO: (self._zero, self._zero)}
        self._log2_base = gmpy2.log2(gmpy2.mpfr(cache.base, 128))
        self.fallbacks = 0

    def value_bounds(self, e: ExponentOrZero):
        b = self._value_bounds.get(e)
        if b is None:
            exact = self.cache.power(e)
            b = (
                gmpy2.mpfr(exact, context=self.ctx_down),
                gmpy2.mpfr(exact, context=self.ctx_up),
            )
            self._value_bounds[e] = b
        return b

    def mpq_bounds(self, q: Rational):
        return (
            gmpy2.mpfr(q, context=self.ctx_down),
            gmpy2.mpfr(q, context=self.ctx_up),
        )

    def _certified_floor(self, lo, hi) -> Optional[int]:
        guess = int(gmpy2.floor(gmpy2.log2(lo) / self._log2_base))
        for e in (guess, guess - 1, guess + 1):
            _, power_hi = self.value_bounds(e)
            next_lo, _ = self.value_bounds(e + 1)
            if power_hi <= lo and hi < next_lo:
                return e
        return None

    def prob_exponent(
        self, entries, exponents: Sequence[ExponentOrZero], bounds
    ) -> ExponentOrZero:
        """Rounded exponent of sum(value(P_L) * mass) over plan entries.

        Entries are (l_mask, exact mass, mass bounds); masses are nonzero
        by construction, so the sum is zero iff every involved P_L is ZERO.
        ``bounds`` carries the candidate's per-subset value enclosures.
        """
        if not self.exact_only:
            down, up = self.ctx_down, self.ctx_up
            lo = hi = self._zero
            nonzero = False
            for l_mask, _, m_lo, m_hi in entries:
                b = bounds[l_mask]
                if b is None:
                    continue
                nonzero = True
                lo = down.add(lo, down.mul(b[0], m_lo))
                hi = up.add(hi, up.mul(b[1], m_hi))
            if not nonzero:
                return ZERO
            floor = self._certified_floor(lo, hi)
            if floor is not None:
                return floor
            self.fallbacks += 1
        total = mpq(0)
        any_term = False
        for l_mask, mass, _, _ in entries:
            e = exponents[l_mask]
            if e is not ZERO:
                total += self.cache.power(e) * mass
                any_term = True
        if not any_term:
            return ZERO
        return self.cache.round_down(total)

    def candidate_bounds(self, exponents: Sequence[ExponentOrZero]):
        """Per-entry value enclosures; None marks ZERO entries."""
        return [
            None if e is ZERO else self.value_bounds(e) for e in exponents
        ]

    def cost_exponent(
        self, stored: ExponentOrZero, increment
    ) -> ExponentOrZero:
        """Rounded exponent of value(stored) + increment.

        ``increment`` is (exact value, exact floor, bounds); a zero
        increment leaves a stored power exactly on its power, so the
        stored exponent passes through unchanged.
        """
        inc, inc_floor, inc_lo, inc_hi = increment
        if inc == 0:
            return stored
        if stored is ZERO:
            return inc_floor
        if not self.exact_only:
            v_lo, v_hi = self.value_bounds(stored)
            lo = self.ctx_down.add(v_lo, inc_lo)
            hi = self.ctx_up.add(v_hi, inc_hi)
            floor = self._certified_floor(lo, hi)
            if floor is not None:
                return floor
            self.fallbacks += 1
        return self.cache.round_down(self.cache.power(stored) + inc)


class _TuplePlan:
    """Geometry of one coordinate tuple, shared across stored candidates."""

    __slots__ = ("beta", "prob_entries", "cost_incs")

    def __init__(self, instance, coord, beta, engine):
        self.beta = beta
        k = instance.k
        top = len(instance.grid) - 1
        per_j: list[list] = [[] for _ in range(1 << k)]
        for l_mask in range(1 << k):
            sub = l_mask
            while True:
                lo, hi = _index_interval(beta, sub, l_mask)
                if hi is None:
                    hi = top
                if hi > lo:
                    mass = instance.interval_mass_by_index(coord, lo, hi)
                    if mass != 0:
                        m_lo, m_hi = engine.mpq_bounds(mass)
                        per_j[sub].append((l_mask, mass, m_lo, m_hi))
                if sub == 0:
                    break
                sub = (sub - 1) & l_mask
        self.prob_entries = per_j
        ci = instance.costs[coord]
        incs = []
        for j in range(k):
            inc = ci * instance.grid.values[beta[j]]
            if inc == 0:
                incs.append((inc, ZERO, None, None))
            else:
                inc_lo, inc_hi = engine.mpq_bounds(inc)
                incs.append((inc, engine.cache.round_down(inc), inc_lo, inc_hi))
        self.cost_incs = incs


def _extended_exponents(
    instance: DiscreteProductInstance,
    coord: int,
    exponents: Sequence[ExponentOrZero],
    cost_exponents: Sequence[ExponentOrZero],
    plan: _TuplePlan,
    engine: _RoundingEngine,
    p_bounds=None,
) -> tuple[tuple[ExponentOrZero, ...], tuple[ExponentOrZero, ...]]:
    """One DP extension: subset-probability sums and cost accumulation, rounded."""
    if p_bounds is None:
        p_bounds = engine.candidate_bounds(exponents)
    probs = tuple(
        engine.prob_exponent(entries, exponents, p_bounds)
        for entries in plan.prob_entries
    )
    costs = tuple(
        engine.cost_exponent(cost_exponents[j], plan.cost_incs[j])
        for j in range(instance.k)
    )
    return probs, costs


def seed_candidates(
    instance: DiscreteProductInstance,
    delta: RationalLike,
    *,
    cache: Optional[PowerCache] = None,
    prune_symmetric: bool = False,
) -> CandidateTable:
    """Stage-1 table over all first-coordinate tuples with the pinned k-th point."""
    delta = rat(delta)
    cache = cache or PowerCache(1 + delta)
    k = instance.k
    width = len(instance.grid)
    lstar = instance.support_max_indices()
    astar = instance.a_star()
    grid_vals = instance.grid.values
    rest_zero = tuple(mpq(0) for _ in range(instance.n - 1))
    pexp_memo: dict = {}
    cexp_memo: dict = {}
    entries: dict[Candidate, tuple] = {}
    for free in _beta_tuples(width, k - 1, prune_symmetric):
        beta = free + (lstar[0],)
        probs, costs = _stage1_exponents(instance, beta, cache, pexp_memo, cexp_memo)
        cand = Candidate(1, probs, costs)
        if cand not in entries:
            witness = tuple(
                (grid_vals[beta[j]],) + rest_zero for j in range(k - 1)
            ) + (astar,)
            entries[cand] = witness
    return CandidateTable(stage=1, entries=entries)


def extend_candidates(
    table: CandidateTable,
    instance: DiscreteProductInstance,
    i: int,
    delta: RationalLike,
    *,
    cache: Optional[PowerCache] = None,
    prune_symmetric: bool = False,
    engine: Optional[_RoundingEngine] = None,
) -> CandidateTable:
    """Stage-i table from the stage i-1 table, first witness winning collisions."""
    if not table.entries:
        raise ValidationError("cannot extend an empty candidate table")
    if not (2 <= i <= instance.n):
        raise ValidationError(f"stage {i} outside 2..n")
    if table.stage != i - 1:
        raise ValidationError(f"table is at stage {table.stage}, expected {i - 1}")
    delta = rat(delta)
    if engine is None:
        engine = _RoundingEngine(cache or PowerCache(1 + delta))
    k = instance.k
    width = len(instance.grid)
    lstar = instance.support_max_indices()
    grid_vals = instance.grid.values
    coord = i - 1
    entries: dict[Candidate, tuple] = {}
    ordered = sorted(table.entries.items(), key=lambda kv: candidate_sort_key(kv[0]))
    plans = [
        _TuplePlan(instance, coord, free + (lstar[coord],), engine)
        for free in _beta_tuples(width, k - 1, prune_symmetric)
    ]
    for cand, witness in ordered:
        p_bounds = engine.candidate_bounds(cand.probs)
        for plan in plans:
            probs, costs = _extended_exponents(
                instance, coord, cand.probs, cand.costs, plan, engine, p_bounds
            )
            cand2 = Candidate(i, probs, costs)
            if cand2 not in entries:
                beta = plan.beta
                entries[cand2] = tuple(
                    pt[:coord] + (grid_vals[beta[j]],) + pt[coord + 1 :]
                    for j, pt in enumerate(witness)
                )
    return CandidateTable(stage=i, entries=entries)


def candidate_for_cover(
    instance: DiscreteProductInstance,
    cover: Cover,
    delta: RationalLike,
    *,
    cache: Optional[PowerCache] = None,
    upto_stage: Optional[int] = None,
) -> Candidate:
    """Iteratively rounded candidate of a grid-valued cover along the DP's path.

    The cover must have its last point equal to a*; every such cover's
    rounded candidate is guaranteed to appear as a key of the final table.
    """
    delta = rat(delta)
    cache = cache or PowerCache(1 + delta)
    lstar = instance.support_max_indices()
    beta_stages = []
    for point in cover.points:
        beta_stages.append(tuple(instance.grid.index_at_or_above(x) for x in point))
        for i, x in enumerate(point):
            if instance.grid.values[beta_stages[-1][i]] != x:
                raise ValidationError(f"cover coordinate {x} is not a grid value")
    if beta_stages[-1] != lstar:
        raise ValidationError("the last cover point must equal a*")
    n = instance.n if upto_stage is None else upto_stage
    beta1 = tuple(b[0] for b in beta_stages)
    probs, costs = _stage1_exponents(instance, beta1, cache, {}, {})
    cand = Candidate(1, probs, costs)
    engine = _RoundingEngine(cache, exact_only=True)
    for i in range(2, n + 1):
        beta = tuple(b[i - 1] for b in beta_stages)
        plan = _TuplePlan(instance, i - 1, beta, engine)
        probs, costs = _extended_exponents(
            instance, i - 1, cand.probs, cand.costs, plan, engine
        )
        cand = Candidate(i, probs, costs)
    return cand


def candidate_cost(
    cand: Candidate,
    delta: RationalLike,
    *,
    n: int,
    cache: Optional[PowerCache] = None,
) -> Rational:
    """Exact rational cost of a final-stage candidate."""
    if cand.stage != n:
        raise ValidationError(
            f"candidate cost is defined at stage n = {n}, got stage {cand.stage}"
        )
    cache = cache or PowerCache(1 + rat(delta))
    k = len(cand.costs)
    c_values = [cache.value(e) for e in cand.costs]
    total = mpq(0)
    for j_mask in range(1, 1 << k):
        e = cand.probs[j_mask]
        if e is ZERO:
            continue
        best = None
        bit = j_mask
        j = 0
        while bit:
            if bit & 1 and (best is None or c_values[j] < best):
                best = c_values[j]
            bit >>= 1
            j += 1
        total += cache.power(e) * best
    return total


def table_size_bound(instance: DiscreteProductInstance, delta: Rational):
    """Conservative rational evaluation of the candidate-table size bound.

    The bound's alpha and beta involve real logarithms; replacing each by
    its exact floor (minus one where the sign demands it) only shrinks the
    product, so ``measured <= bound_here`` certifies the true inequality.
    Returns (bound, parts); bound is None when a zero cost makes the bound
    vacuous.
    """
    base = 1 + delta
    n = instance.n
    k = instance.k
    pmin = min(p for row in instance.probs for p in row if p > 0)
    m_flo = floor_log(base, pmin)
    alpha_lo = n + 2 - n * (m_flo + 1)
    parts = {"pmin_floor_log": m_flo, "alpha_lo": alpha_lo}
    if any(c == 0 for c in instance.costs):
        parts["vacuous"] = "zero cost makes the cost-range term unbounded"
        return None, parts
    csum = sum(instance.costs, start=mpq(0))
    cmin = min(instance.costs)
    a1 = instance.grid.values[1]
    f_sum = floor_log(base, csum)
    f_a1 = floor_log(base, a1)
    f_cmin = floor_log(base, cmin)
    beta_lo = n + f_sum - f_a1 - f_cmin
    parts.update({"beta_lo": beta_lo, "f_sum": f_sum, "f_a1": f_a1, "f_cmin": f_cmin})
    return alpha_lo ** (2**k) * beta_lo**k * n, parts


def _candidate_cost_bounds(cand: Candidate, engine: _RoundingEngine, bit_lists):
    """Rigorous enclosure of the candidate cost from the value enclosures."""
    down, up = engine.ctx_down, engine.ctx_up
    c_bounds = [engine.value_bounds(e) for e in cand.costs]
    lo = hi = engine._zero
    for j_mask in range(1, len(cand.probs)):
        e = cand.probs[j_mask]
        if e is ZERO:
            continue
        p_lo, p_hi = engine.value_bounds(e)
        bits = bit_lists[j_mask]
        m_lo = min(c_bounds[j][0] for j in bits)
        m_hi = min(c_bounds[j][1] for j in bits)
        lo = down.add(lo, down.mul(p_lo, m_lo))
        hi = up.add(hi, up.mul(p_hi, m_hi))
    return lo, hi


def _select_minimum_candidate(
    table: CandidateTable,
    delta: Rational,
    n: int,
    cache: PowerCache,
    engine: _RoundingEngine,
) -> tuple[Candidate, Rational]:
    """Minimum-cost candidate, ties broken by candidate key order.

    Candidates are first screened by rigorous cost enclosures; every
    candidate whose lower bound reaches the smallest upper bound is then
    compared exactly, so the winner is the exact minimum.
    """
    k = len(next(iter(table.entries)).costs)
    if engine.exact_only:
        shortlist = list(table.entries)
    else:
        bit_lists = [
            [j for j in range(k) if (mask >> j) & 1] for mask in range(1 << k)
        ]
        scored = []
        min_hi = None
        for cand in table.entries:
            lo, hi = _candidate_cost_bounds(cand, engine, bit_lists)
            scored.append((cand, lo))
            if min_hi is None or hi < min_hi:
                min_hi = hi
        shortlist = [cand for cand, lo in scored if lo <= min_hi]
    best_key = None
    best_cand = None
    for cand in shortlist:
        cost = candidate_cost(cand, delta, n=n, cache=cache)
        key = (cost, candidate_sort_key(cand))
        if best_key is None or key < best_key:
            best_key = key
            best_cand = cand
    return best_cand, best_key[0]


@dataclass
class SolveDiagnostics:
    eps: Rational
    delta: Rational
    table_sizes: list[int]
    total_candidates: int
    tuples_per_stage: int
    table_bound: Optional[int]
    table_bound_parts: dict
    bound_satisfied: Optional[bool]

    def to_json(self) -> dict:
        return {
            "table_sizes": list(self.table_sizes),
            "total_candidates": self.total_candidates,
            "tuples_per_stage": self.tuples_per_stage,
            "table_bound_satisfied": self.bound_satisfied,
        }


@dataclass
class SolveResult:
    cover: Cover
    cost: Rational
    candidate: Candidate
    candidate_cost: Rational
    diagnostics: SolveDiagnostics
    stage_tables: Optional[list[CandidateTable]] = field(default=None, repr=False)


def solve_discrete(
    instance: DiscreteProductInstance,
    eps: RationalLike,
    *,
    instrument: bool = False,
    work_budget: Optional[int] = None,
    k_cap: Optional[int] = None,
    prune_symmetric: bool = False,
    exact_only: bool = False,
) -> SolveResult:
    """Run the full DP and return the witness of a minimum-cost candidate.

    The returned cost is the witness's exact expected cost (never the
    rounded candidate cost) and satisfies cost <= (1 + eps) * OPT.
    ``work_budget`` caps the number of (candidate, tuple) extension steps;
    the projected work is checked before each stage so oversized runs fail
    fast instead of grinding.
    """
    eps = rat(eps)
    if not (0 < eps < 1):
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    cap = resolve_k_cap(k_cap)
    if instance.k > cap:
        raise ResourceLimitError(
            f"k = {instance.k} exceeds the table cap {cap}"
            + (" (hard limit)" if instance.k > HARD_K_CAP else "")
        )
    n = instance.n
    delta = eps / (4 * n)
    cache = PowerCache(1 + delta)
    engine = _RoundingEngine(cache, exact_only=exact_only)
    width = len(instance.grid)
    tuples = _tuple_count(width, instance.k - 1, prune_symmetric)
    work = tuples
    if work_budget is not None and work > work_budget:
        raise ResourceLimitError(
            f"stage-1 enumeration needs {tuples} coordinate tuples, "
            f"over the work budget {work_budget}"
        )
    table = seed_candidates(
        instance, delta, cache=cache, prune_symmetric=prune_symmetric
    )
    sizes = [len(table)]
    stage_tables = [table] if instrument else None
    for i in range(2, n + 1):
        step = len(table) * tuples
        work += step
        if work_budget is not None and work > work_budget:
            raise ResourceLimitError(
                f"stage {i} needs {len(table)} stored candidates x {tuples} "
                f"tuples = {step} extension steps (cumulative {work}), over "
                f"the work budget {work_budget}"
            )
        table = extend_candidates(
            table,
            instance,
            i,
            delta,
            cache=cache,
            prune_symmetric=prune_symmetric,
            engine=engine,
        )
        sizes.append(len(table))
        if instrument:
            stage_tables.append(table)
    best_cand, best_cost = _select_minimum_candidate(table, delta, n, cache, engine)
    cover = Cover(points=table.entries[best_cand])
    exact = expected_cost(instance, cover)
    bound, parts = table_size_bound(instance, delta)
    total = sum(sizes)
    diagnostics = SolveDiagnostics(
        eps=eps,
        delta=delta,
        table_sizes=sizes,
        total_candidates=total,
        tuples_per_stage=tuples,
        table_bound=bound,
        table_bound_parts=parts,
        bound_satisfied=None if bound is None else total <= bound,
    )
    return SolveResult(
        cover=cover,
        cost=exact,
        candidate=best_cand,
        candidate_cost=best_cost,
        diagnostics=diagnostics,
        stage_tables=stage_tables,
    )


@dataclass
class ContinuousSolveResult:
    cover: Cover
    discrete_cost: Rational
    continuous_cost: Optional[Rational]
    gamma: Rational
    inner_eps: Rational
    discrete_instance: DiscreteProductInstance
    inner: SolveResult


def solve_continuous(
    instance: ContinuousInstance,
    gamma: RationalLike,
    *,
    instrument: bool = False,
    work_budget: Optional[int] = None,
    k_cap: Optional[int] = None,
    prune_symmetric: bool = False,
) -> ContinuousSolveResult:
    """Discretize, solve the discrete instance at gamma/15, map the cover back.

    The returned cover is grid-valued; with exact oracles its exact cost
    under the continuous instance is reported too, and that cost is within
    (1 + gamma) of the continuous optimum.
    """
    g = rat(gamma)
    if not (0 < g < 1):
        raise ValidationError(f"gamma must lie in (0, 1), got {g}")
    _, inner_eps = fptas_parameters(g, instance.n)
    discrete, _grid = discretize(instance, g)
    inner = solve_discrete(
        discrete,
        inner_eps,
        instrument=instrument,
        work_budget=work_budget,
        k_cap=k_cap,
        prune_symmetric=prune_symmetric,
    )
    continuous_cost = (
        expected_cost(instance, inner.cover) if instance.all_exact else None
    )
    return ContinuousSolveResult(
        cover=inner.cover,
        discrete_cost=inner.cost,
        continuous_cost=continuous_cost,
        gamma=g,
        inner_eps=inner_eps,
        discrete_instance=discrete,
        inner=inner,
    )
