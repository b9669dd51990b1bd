"""Product measures on [0,1]^n and the objects built from them.

Two instance flavors exist.  A :class:`DiscreteProductInstance` pins every
coordinate to a shared finite support grid and stores exact per-value
probabilities.  A :class:`ContinuousInstance` only exposes its coordinate
measures through interval-mass oracles plus an explicit positive lower
bound ``alpha`` on each coordinate's expectation.

Extended endpoints use explicit sentinels ``NEG_INF``/``POS_INF`` (the
empty-max and empty-min conventions of the stage recursion), never large
finite stand-ins.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from gmpy2 import mpq

from .errors import ValidationError
from .numerics import Rational, RationalLike, rat

NEG_INF = float("-inf")
POS_INF = float("inf")

Extended = Union[Rational, float]


def _as_rationals(values: Sequence[RationalLike]) -> tuple[Rational, ...]:
    return tuple(rat(v) for v in values)


@dataclass(frozen=True)
class SupportGrid:
    """Shared ascending support 0 = a_0 < a_1 < ... < a_{M+1} = 1."""

    values: tuple[Rational, ...]

    def __post_init__(self):
        vals = _as_rationals(self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise ValidationError("support grid needs at least the endpoints 0 and 1")
        if vals[0] != 0 or vals[-1] != 1:
            raise ValidationError("support grid must start at 0 and end at 1")
        for lo, hi in zip(vals, vals[1:]):
            if not lo < hi:
                raise ValidationError("support grid must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def interior_size(self) -> int:
        """M, the number of interior grid values."""
        return len(self.values) - 2

    def index_at_or_below(self, x: Extended) -> int:
        """Largest index l with a_l <= x, or -1 if x < 0."""
        if x is POS_INF or x == POS_INF:
            return len(self.values) - 1
        if x is NEG_INF or x == NEG_INF:
            return -1
        return bisect_right(self.values, x) - 1

    def index_at_or_above(self, x: RationalLike) -> int:
        """Smallest index l with a_l >= x; raises if x exceeds 1."""
        q = rat(x)
        if q > 1:
            raise ValidationError(f"value {q} lies above the grid")
        idx = bisect_right(self.values, q)
        if idx > 0 and self.values[idx - 1] == q:
            return idx - 1
        return idx


@dataclass(frozen=True)
class DiscreteProductInstance:
    """Grid, per-coordinate probability rows, costs, and the budget k."""

    grid: SupportGrid
    probs: tuple[tuple[Rational, ...], ...]
    costs: tuple[Rational, ...]
    k: int
    _prefix: tuple[tuple[Rational, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        probs = tuple(_as_rationals(row) for row in self.probs)
        costs = _as_rationals(self.costs)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "costs", costs)
        if len(probs) == 0:
            raise ValidationError("instance needs at least one coordinate")
        if len(probs) != len(costs):
            raise ValidationError("probability table and cost vector disagree on n")
        width = len(self.grid)
        prefix_rows = []
        for i, row in enumerate(probs):
            if len(row) != width:
                raise ValidationError(f"probability row {i} has wrong width")
            running = mpq(0)
            prefix = []
            for p in row:
                if not (0 <= p <= 1):
                    raise ValidationError(f"probability {p} outside [0, 1]")
                running += p
                prefix.append(running)
            if running != 1:
                raise ValidationError(f"probability row {i} sums to {running}, not 1")
            prefix_rows.append(tuple(prefix))
        for c in costs:
            if c < 0:
                raise ValidationError(f"negative cost {c}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValidationError("k must be a positive integer")
        object.__setattr__(self, "_prefix", tuple(prefix_rows))

    @property
    def n(self) -> int:
        return len(self.probs)

    @property
    def outcome_count(self) -> int:
        return len(self.grid) ** self.n

    def prefix_sum(self, i: int, idx: int) -> Rational:
        """Mass of coordinate i at grid indices <= idx (idx = -1 gives 0)."""
        if idx < 0:
            return mpq(0)
        return self._prefix[i][idx]

    def interval_mass_by_index(self, i: int, lo_idx: int, hi_idx: int) -> Rational:
        """Mass of grid indices in (lo_idx, hi_idx] for coordinate i."""
        if hi_idx <= lo_idx:
            return mpq(0)
        return self.prefix_sum(i, hi_idx) - self.prefix_sum(i, lo_idx)

    def support_max_indices(self) -> tuple[int, ...]:
        """Per coordinate, the largest grid index carrying positive mass."""
        out = []
        for row in self.probs:
            idx = max(l for l, p in enumerate(row) if p > 0)
            out.append(idx)
        return tuple(out)

    def a_star(self) -> tuple[Rational, ...]:
        """The coordinatewise maximum support point; any cover must dominate it."""
        return tuple(self.grid.values[l] for l in self.support_max_indices())

    def coordinate_expectation(self, i: int) -> Rational:
        return sum(
            (p * a for p, a in zip(self.probs[i], self.grid.values)), start=mpq(0)
        )


def interval_mass(
    instance: DiscreteProductInstance, i: int, a: Extended, b: Extended
) -> Rational:
    """Exact mass of (a, b] intersected with [0, 1] for coordinate i.

    Total on extended endpoints: NEG_INF/POS_INF realize the empty-max and
    empty-min conventions, and a >= b yields 0.
    """
    hi_idx = instance.grid.index_at_or_below(b)
    lo_idx = instance.grid.index_at_or_below(a)
    return instance.interval_mass_by_index(i, lo_idx, hi_idx)


def bernoulli_instance(
    p: Sequence[RationalLike], c: Sequence[RationalLike], k: int
) -> DiscreteProductInstance:
    """Instance on {0,1}^n with independent per-coordinate success rates."""
    ps = _as_rationals(p)
    for q in ps:
        if not (0 <= q <= 1):
            raise ValidationError(f"Bernoulli parameter {q} outside [0, 1]")
    grid = SupportGrid((mpq(0), mpq(1)))
    probs = tuple((1 - q, q) for q in ps)
    return DiscreteProductInstance(grid=grid, probs=probs, costs=_as_rationals(c), k=k)


class MeasureOracle:
    """Interval-mass oracle for one coordinate measure on [0, 1].

    ``query(a, b, delta)`` returns a rational within multiplicative
    ``(1+delta)`` of the true mass of (a, b] intersected with [0, 1], for
    -1 <= a < b <= 1 and delta in (0, 1).  ``is_exact`` marks oracles whose
    answers are the true masses for every delta.
    """

    kind: str = "abstract"
    is_exact: bool = False

    def query(self, a: RationalLike, b: RationalLike, delta: RationalLike) -> Rational:
        raise NotImplementedError

    @staticmethod
    def _check_window(a: Rational, b: Rational) -> None:
        if not (-1 <= a < b <= 1):
            raise ValidationError(f"oracle window ({a}, {b}] out of range")


class UniformOracle(MeasureOracle):
    """Lebesgue measure on [0, 1]; queries are exact interval lengths."""

    kind = "uniform"
    is_exact = True

    def query(self, a, b, delta=None) -> Rational:
        a, b = rat(a), rat(b)
        self._check_window(a, b)
        lo = max(a, mpq(0))
        hi = min(b, mpq(1))
        return hi - lo if hi > lo else mpq(0)


class FiniteSupportOracle(MeasureOracle):
    """Finitely many atoms in [0, 1]; queries sum atom masses exactly."""

    kind = "finite"
    is_exact = True

    def __init__(self, atoms: Sequence[tuple[RationalLike, RationalLike]]):
        parsed = [(rat(v), rat(m)) for v, m in atoms]
        total = mpq(0)
        for value, mass in parsed:
            if not (0 <= value <= 1):
                raise ValidationError(f"atom value {value} outside [0, 1]")
            if mass < 0:
                raise ValidationError(f"negative atom mass {mass}")
            total += mass
        if total != 1:
            raise ValidationError(f"atom masses sum to {total}, not 1")
        self.atoms = tuple(sorted(parsed, key=lambda vm: vm[0]))

    def query(self, a, b, delta=None) -> Rational:
        a, b = rat(a), rat(b)
        self._check_window(a, b)
        return sum((m for v, m in self.atoms if a < v <= b), start=mpq(0))


class PiecewiseConstantOracle(MeasureOracle):
    """Step density on [0, 1] integrating to 1; queries integrate exactly."""

    kind = "piecewise"
    is_exact = True

    def __init__(
        self,
        breakpoints: Sequence[RationalLike],
        densities: Sequence[RationalLike],
    ):
        bp = _as_rationals(breakpoints)
        dens = _as_rationals(densities)
        if len(bp) < 2 or len(dens) != len(bp) - 1:
            raise ValidationError("need len(breakpoints) == len(densities) + 1")
        if bp[0] != 0 or bp[-1] != 1:
            raise ValidationError("breakpoints must span [0, 1]")
        for lo, hi in zip(bp, bp[1:]):
            if not lo < hi:
                raise ValidationError("breakpoints must be strictly increasing")
        total = mpq(0)
        for d, lo, hi in zip(dens, bp, bp[1:]):
            if d < 0:
                raise ValidationError(f"negative density {d}")
            total += d * (hi - lo)
        if total != 1:
            raise ValidationError(f"density integrates to {total}, not 1")
        self.breakpoints = bp
        self.densities = dens

    def query(self, a, b, delta=None) -> Rational:
        a, b = rat(a), rat(b)
        self._check_window(a, b)
        lo = max(a, mpq(0))
        hi = min(b, mpq(1))
        if hi <= lo:
            return mpq(0)
        total = mpq(0)
        for d, plo, phi in zip(self.densities, self.breakpoints, self.breakpoints[1:]):
            seg_lo = max(lo, plo)
            seg_hi = min(hi, phi)
            if seg_hi > seg_lo:
                total += d * (seg_hi - seg_lo)
        return total


class MultiplicativeNoiseOracle(MeasureOracle):
    """Wraps an exact oracle with deterministic (1+delta)^{+-1} noise.

    Test scaffolding for the discretizer's error accounting: answers stay
    inside the approximation contract but are never exact.  The noise sign
    is a pure function of the window so queries remain reproducible.
    """

    kind = "noisy"
    is_exact = False

    def __init__(
        self,
        inner: MeasureOracle,
        sign_fn: Callable[[Rational, Rational], int] | None = None,
    ):
        if not inner.is_exact:
            raise ValidationError("noise wrapper needs an exact inner oracle")
        self.inner = inner
        self._sign_fn = sign_fn or self._default_sign

    @staticmethod
    def _default_sign(a: Rational, b: Rational) -> int:
        return 1 if (a.numerator + b.numerator + b.denominator) % 2 == 0 else -1

    def query(self, a, b, delta) -> Rational:
        a, b, delta = rat(a), rat(b), rat(delta)
        if not (0 < delta < 1):
            raise ValidationError(f"delta {delta} outside (0, 1)")
        exact = self.inner.query(a, b, delta)
        factor = 1 + delta
        return exact * factor if self._sign_fn(a, b) > 0 else exact / factor


@dataclass(frozen=True)
class ContinuousInstance:
    """Oracle-described product measure with costs, budget, and alpha."""

    oracles: tuple[MeasureOracle, ...]
    costs: tuple[Rational, ...]
    k: int
    alpha: Rational

    def __post_init__(self):
        object.__setattr__(self, "oracles", tuple(self.oracles))
        object.__setattr__(self, "costs", _as_rationals(self.costs))
        object.__setattr__(self, "alpha", rat(self.alpha))
        if len(self.oracles) == 0:
            raise ValidationError("instance needs at least one coordinate")
        if len(self.oracles) != len(self.costs):
            raise ValidationError("oracle list and cost vector disagree on n")
        for c in self.costs:
            if c < 0:
                raise ValidationError(f"negative cost {c}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValidationError("k must be a positive integer")
        if not (0 < self.alpha < 1):
            raise ValidationError("alpha must lie in (0, 1)")

    @property
    def n(self) -> int:
        return len(self.oracles)

    @property
    def all_exact(self) -> bool:
        return all(o.is_exact for o in self.oracles)


@dataclass(frozen=True)
class Cover:
    """Ordered list of points in [0,1]^n; order only matters for ties."""

    points: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        pts = tuple(_as_rationals(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) == 0:
            raise ValidationError("a cover needs at least one point")
        n = len(pts[0])
        for p in pts:
            if len(p) != n:
                raise ValidationError("cover points have inconsistent dimension")
            for x in p:
                if not (0 <= x <= 1):
                    raise ValidationError(f"cover coordinate {x} outside [0, 1]")

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points[0])


def exact_interval_mass(
    oracle: MeasureOracle, a: Extended, b: Extended
) -> Rational:
    """True mass of (a, b] ∩ [0, 1] from an exact oracle, with sentinels."""
    if not oracle.is_exact:
        raise ValidationError("exact interval mass requires an exact oracle")
    hi = mpq(1) if b == POS_INF else rat(b)
    if hi > 1:
        hi = mpq(1)
    if a == NEG_INF:
        lo = mpq(-1)
    else:
        lo = rat(a)
        if lo < 0:
            lo = mpq(-1)
    if hi <= lo or hi < 0:
        return mpq(0)
    return oracle.query(lo, hi, mpq(1, 2))
