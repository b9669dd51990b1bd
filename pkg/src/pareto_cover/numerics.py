"""Exact rational arithmetic primitives.

Everything downstream (measures, the cost evaluator, the rounding DP, the
reduction generators) runs on arbitrary-precision rationals.  We use
``gmpy2.mpq`` as the backing type: it is canonical by construction
(positive denominator, gcd-reduced) and fast enough for the candidate
tables' big-exponent arithmetic.

Floats are deliberately rejected at the constructor boundary so that no
binary rounding can leak into a computation.  The only place floating
point appears at all is as a *search hint* inside :class:`PowerCache`,
and every hinted result is certified by exact rational comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

import gmpy2
from gmpy2 import mpq, mpz

from .errors import DomainError, ValidationError

Rational = mpq

RationalLike = Union[int, str, mpq, mpz, Fraction, tuple]

#: The value zero in exponent-coded form.  A coded value is either ZERO or
#: an integer exponent ``e`` standing for ``base**e``; ZERO sorts strictly
#: below every exponent.
ZERO = None

ExponentOrZero = Optional[int]


def rat(value: RationalLike, den: RationalLike | None = None) -> Rational:
    """Build an exact rational.

    Accepts ints, ``mpq``/``mpz``, ``Fraction``, strings like ``"3/4"`` or
    ``"5"``, and an optional explicit denominator.  Floats are refused:
    callers must spell out the exact value they mean.
    """
    if isinstance(value, float) or isinstance(den, float):
        raise ValidationError(
            "floats are not accepted as rational inputs; pass a string or Fraction"
        )
    if den is not None:
        d = rat(den)
        if d == 0:
            raise ValidationError("zero denominator")
        return rat(value) / d
    if isinstance(value, mpq):
        return value
    if isinstance(value, (int, mpz)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, tuple) and len(value) == 2:
        return rat(value[0], value[1])
    if isinstance(value, str):
        text = value.strip()
        try:
            return mpq(text)
        except ValueError as exc:
            raise ValidationError(f"cannot parse rational from {value!r}") from exc
    raise ValidationError(f"cannot build a rational from {type(value).__name__}")


def rat_str(q: RationalLike) -> str:
    """Canonical serialization: always ``"num/den"`` in lowest terms."""
    q = rat(q)
    return f"{q.numerator}/{q.denominator}"


def is_integer(q: Rational) -> bool:
    return rat(q).denominator == 1


def floor_log(base: RationalLike, x: RationalLike) -> int:
    """Largest integer ``e`` with ``base**e <= x``, by exact comparison.

    Requires ``base > 1`` and ``x > 0``.  The search doubles an exact power
    of the base until it brackets ``x`` (the bracket width is bounded by the
    bit lengths of ``x``'s numerator and denominator), then binary-searches
    the bracket.  No floating-point logarithm is consulted anywhere.
    """
    b = rat(base)
    q = rat(x)
    if b <= 1:
        raise DomainError(f"floor_log base must exceed 1, got {b}")
    if q <= 0:
        raise DomainError(f"floor_log argument must be positive, got {q}")
    if q >= 1:
        lo, hi = 0, 1
        power = b
        while power <= q:
            lo, hi = hi, 2 * hi
            power = power * power
    else:
        lo, hi = -1, 0
        power = 1 / b
        while power > q:
            lo, hi = 2 * lo, lo
            power = power * power
    # invariant: b**lo <= q < b**hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if b**mid <= q:
            lo = mid
        else:
            hi = mid
    return lo


def ceil_log(base: RationalLike, x: RationalLike) -> int:
    """Smallest integer ``e`` with ``base**e >= x``."""
    b = rat(base)
    e = floor_log(b, x)
    return e if b**e == rat(x) else e + 1


def ceil_log2(q: RationalLike) -> int:
    """Smallest integer ``m`` with ``2**m >= q``, for positive rational q."""
    return ceil_log(mpq(2), q)


def pow_rational(base: RationalLike, e: int) -> Rational:
    """Exact integer power of a rational, with 0**negative rejected."""
    b = rat(base)
    e = int(e)
    if b == 0 and e < 0:
        raise DomainError("0 cannot be raised to a negative exponent")
    return b**e


def approx_exp_neg(x: RationalLike, m: int) -> Rational:
    """Rational approximation of exp(-x) with relative error at most 2**-m.

    Valid for ``0 <= x <= 2`` and ``m >= 1``.  Truncates the alternating
    series sum_t (-x)**t / t! after ``N = max(32, 2m+4)`` terms; on that
    range the dropped tail is below ``2**-(m+3)`` in absolute value while
    exp(-x) >= 1/8, which gives the stated relative bound.
    """
    q = rat(x)
    if not (0 <= q <= 2):
        raise DomainError(f"approx_exp_neg requires x in [0, 2], got {q}")
    m = int(m)
    if m < 1:
        raise DomainError("approx_exp_neg requires m >= 1")
    n_terms = max(32, 2 * m + 4)
    term = mpq(1)
    total = mpq(1)
    for t in range(1, n_terms + 1):
        term = term * (-q) / t
        total += term
    return total


def exponent_value(e: ExponentOrZero, base: RationalLike) -> Rational:
    """Decode an exponent-or-ZERO value against the given base."""
    if e is ZERO:
        return mpq(0)
    return pow_rational(base, e)


def exponent_sort_key(e: ExponentOrZero) -> tuple[int, int]:
    """Total order with ZERO strictly below every exponent."""
    return (0, 0) if e is ZERO else (1, e)


class PowerCache:
    """Memoized exact powers of a fixed base > 1, plus a fast floor-log.

    ``floor_log`` here returns exactly the same integer as the module-level
    :func:`floor_log`; a high-precision float logarithm only seeds the
    search, and the result is certified by exact rational comparisons
    against cached powers before being returned.
    """

    def __init__(self, base: RationalLike):
        self.base = rat(base)
        if self.base <= 1:
            raise DomainError("PowerCache base must exceed 1")
        self._powers: dict[int, Rational] = {0: mpq(1), 1: self.base}
        self._log2_base = gmpy2.log2(gmpy2.mpfr(self.base, 128))

    def power(self, e: int) -> Rational:
        p = self._powers.get(e)
        if p is None:
            p = self.base**e
            self._powers[e] = p
        return p

    def value(self, e: ExponentOrZero) -> Rational:
        return mpq(0) if e is ZERO else self.power(e)

    def _hint(self, x: Rational) -> int:
        log2x = gmpy2.log2(gmpy2.mpfr(x, 128))
        return int(gmpy2.floor(log2x / self._log2_base))

    def floor_log(self, x: Rational, hint: int | None = None) -> int:
        if x <= 0:
            raise DomainError(f"floor_log argument must be positive, got {x}")
        e = self._hint(x) if hint is None else int(hint)
        while self.power(e) > x:
            e -= 1
        while self.power(e + 1) <= x:
            e += 1
        return e

    def round_down(self, x: Rational) -> ExponentOrZero:
        """Exponent of the next power of the base at or below x; ZERO for 0."""
        if x < 0:
            raise DomainError(f"cannot round negative value {x}")
        if x == 0:
            return ZERO
        return self.floor_log(x)
