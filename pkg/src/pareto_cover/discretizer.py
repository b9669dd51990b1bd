"""Reduction from oracle-described instances to discrete ones.

The query grid is geometric: 0, then eps*alpha*(1+eps)^(l-1) up to 1.  A
continuous instance is discretized by querying each oracle on every
consecutive grid window (starting at -1 so an atom at 0 is captured) and
normalizing the answers to an exact probability row.  With exact oracles
the normalization is the identity and costs of grid-valued covers agree
exactly between the two instances; with approximate oracles the rows stay
within a (1+eps)^2 multiplicative band of the true rounded-up masses.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from bisect import bisect_left

from gmpy2 import mpq

from .errors import OracleContractError, ValidationError
from .measures import (
    ContinuousInstance,
    Cover,
    DiscreteProductInstance,
    SupportGrid,
)
from .numerics import Rational, RationalLike, ceil_log, rat


@dataclass(frozen=True)
class QueryGrid:
    """Geometric query coordinates for a given accuracy and expectation bound."""

    epsilon: Rational
    alpha: Rational
    values: tuple[Rational, ...]

    def round_up(self, x: RationalLike) -> Rational:
        """Smallest grid value at or above x."""
        q = rat(x)
        if not (0 <= q <= 1):
            raise ValidationError(f"coordinate {q} outside [0, 1]")
        idx = bisect_left(self.values, q)
        return self.values[idx]

    @property
    def interior_size(self) -> int:
        return len(self.values) - 2

    def __len__(self) -> int:
        return len(self.values)


def query_coordinates(epsilon: RationalLike, alpha: RationalLike) -> QueryGrid:
    """Build the grid 0, eps*alpha, ..., eps*alpha*(1+eps)^(M-1), 1."""
    eps = rat(epsilon)
    alpha = rat(alpha)
    if not (0 < eps < 1):
        raise ValidationError(f"epsilon must lie in (0, 1), got {eps}")
    if not (0 < alpha < 1):
        raise ValidationError(f"alpha must lie in (0, 1), got {alpha}")
    base = 1 + eps
    scale = eps * alpha
    m_eps = ceil_log(base, 1 / scale)
    values = [mpq(0)]
    power = mpq(1)
    for _ in range(m_eps):
        q = scale * power
        # geometric points at or beyond 1 would collide with the endpoint
        if q >= 1:
            break
        values.append(q)
        power *= base
    values.append(mpq(1))
    return QueryGrid(epsilon=eps, alpha=alpha, values=tuple(values))


def round_cover_up(cover: Cover, grid: QueryGrid) -> Cover:
    """Round every coordinate up to the grid; dominance is preserved."""
    return Cover(
        points=tuple(
            tuple(grid.round_up(x) for x in point) for point in cover.points
        )
    )


def fptas_parameters(gamma: RationalLike, n: int) -> tuple[Rational, Rational]:
    """Discretization accuracy and inner solver accuracy for a target gamma."""
    g = rat(gamma)
    if not (0 < g < 1):
        raise ValidationError(f"gamma must lie in (0, 1), got {g}")
    if n < 1:
        raise ValidationError("n must be positive")
    return g / (60 * n), g / 15


GAMMA_CLAMP = 1 - mpq(1, 2**20)


def discretize(
    instance: ContinuousInstance, gamma: RationalLike
) -> tuple[DiscreteProductInstance, QueryGrid]:
    """Build the discrete instance whose solutions transfer back within 1+gamma.

    Tolerances at or above 1 are clamped to just below 1 with a warning;
    the transfer argument needs gamma < 1.
    """
    g = rat(gamma)
    if g <= 0:
        raise ValidationError(f"gamma must be positive, got {g}")
    if g >= 1:
        warnings.warn(
            f"gamma {g} clamped to {GAMMA_CLAMP}; the guarantee needs gamma < 1",
            stacklevel=2,
        )
        g = GAMMA_CLAMP
    eps, _ = fptas_parameters(g, instance.n)
    grid = query_coordinates(eps, instance.alpha)
    windows = [(mpq(-1), grid.values[0])]
    windows += list(zip(grid.values, grid.values[1:]))
    sandwich = 1 + eps
    rows = []
    for i, oracle in enumerate(instance.oracles):
        raw = []
        for a, b in windows:
            sigma = rat(oracle.query(a, b, eps))
            if sigma < 0:
                raise OracleContractError(
                    f"oracle {i} returned negative mass {sigma} on ({a}, {b}]"
                )
            raw.append(sigma)
        total = sum(raw, start=mpq(0))
        if not (1 / sandwich <= total <= sandwich):
            raise OracleContractError(
                f"oracle {i} window masses sum to {total}, outside the "
                f"(1+eps) sandwich around 1"
            )
        rows.append(tuple(s / total for s in raw))
    discrete = DiscreteProductInstance(
        grid=SupportGrid(values=grid.values),
        probs=tuple(rows),
        costs=instance.costs,
        k=instance.k,
    )
    return discrete, grid
