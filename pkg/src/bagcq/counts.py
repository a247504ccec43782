"""Exact natural numbers kept in factored form.

A Count denotes the product of base**exponent pairs.  Queries built with
disjoint conjunction and power operators evaluate to numbers whose
exponents can be astronomically large, so counts are never required to be
materialized; comparison is exact regardless of magnitude.

Normal form: factors sorted by base; equal bases merged; bases up to 2**64
split into primes; value one is ((1, 1),) and value zero is ((0, 1),).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

# Bases up to this bound are prime-factored during normalization; anything
# larger is kept composite and comparison falls back to interval logs.
_FACTOR_BOUND = 1 << 64

# Values whose size bound fits in this many bits may be materialized to a
# plain int during comparison.
_MATERIALIZE_BITS = 1 << 24

# Interval-log comparison escalates working precision up to this cap.
_MAX_LOG_PRECISION = 1 << 20


class ComparisonUndecidedError(ArithmeticError):
    """Interval precision cap hit without separating the two values."""


def _prime_factors(base: int) -> list[tuple[int, int]]:
    from sympy import factorint  # deferred: keeps module import light

    return sorted(factorint(base).items())


def _normalize(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    merged: dict[int, int] = {}
    for base, exp in pairs:
        if base < 0 or exp < 0:
            raise ValueError(f"negative base or exponent in ({base}, {exp})")
        if exp == 0 or base == 1:
            continue
        if base == 0:
            return ((0, 1),)
        if base <= _FACTOR_BOUND:
            for p, k in _prime_factors(base):
                merged[p] = merged.get(p, 0) + k * exp
        else:
            merged[base] = merged.get(base, 0) + exp
    if not merged:
        return ((1, 1),)
    return tuple(sorted(merged.items()))


@dataclass(frozen=True)
class Count:
    """An exact natural in factored form Π base**exp."""

    factors: tuple[tuple[int, int], ...] = ((1, 1),)

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", _normalize(self.factors))

    @classmethod
    def of(cls, n: int) -> Count:
        if n < 0:
            raise ValueError(f"counts are naturals, got {n}")
        return cls(((n, 1),))

    def is_zero(self) -> bool:
        return self.factors == ((0, 1),)

    def is_one(self) -> bool:
        return self.factors == ((1, 1),)

    def mul(self, other: Count) -> Count:
        if self.is_zero() or other.is_zero():
            return Count.of(0)
        return Count(self.factors + other.factors)

    def pow(self, k: int) -> Count:
        if k < 0:
            raise ValueError("negative exponent")
        if k == 0:
            return Count.of(1)
        return Count(tuple((b, e * k) for b, e in self.factors))

    def bits_upper(self) -> int:
        """Upper bound on the bit length of the value."""
        if self.is_zero():
            return 1
        return sum(e * b.bit_length() for b, e in self.factors)

    def bits_lower(self) -> int:
        """Lower bound on the bit length of the value."""
        if self.is_zero() or self.is_one():
            return 1
        return sum(e * (b.bit_length() - 1) for b, e in self.factors) + 1

    def value(self, max_bits: int = _MATERIALIZE_BITS) -> int:
        """Materialize to an int; refuses when the size bound exceeds max_bits."""
        if self.bits_upper() > max_bits:
            raise OverflowError(f"count needs more than {max_bits} bits to materialize")
        v = 1
        for b, e in self.factors:
            v *= b**e
        return v

    def compare(self, other: Count) -> int:
        """-1, 0 or 1; exact for any magnitudes."""
        if self.factors == other.factors:
            return 0
        if self.is_zero():
            return -1
        if other.is_zero():
            return 1
        # Cancel shared factors: comparing a/g with b/g preserves order.
        da, db = dict(self.factors), dict(other.factors)
        for base in set(da) & set(db):
            m = min(da[base], db[base])
            da[base] -= m
            db[base] -= m
        fa = tuple(sorted((b, e) for b, e in da.items() if e > 0))
        fb = tuple(sorted((b, e) for b, e in db.items() if e > 0))
        if not fa and not fb:
            return 0
        if not fa:
            return -1  # 1 against a product of bases >= 2
        if not fb:
            return 1
        # x -> x**(1/g) is monotone on naturals: strip the common exponent gcd.
        g = math.gcd(*(e for _, e in fa + fb))
        if g > 1:
            fa = tuple((b, e // g) for b, e in fa)
            fb = tuple((b, e // g) for b, e in fb)
        a, b = Count(fa), Count(fb)
        if a.factors == b.factors:
            return 0
        if a.bits_upper() < b.bits_lower():
            return -1
        if b.bits_upper() < a.bits_lower():
            return 1
        if max(a.bits_upper(), b.bits_upper()) <= _MATERIALIZE_BITS:
            va, vb = a.value(), b.value()
            return (va > vb) - (va < vb)
        return _compare_by_logs(a.factors, b.factors)

    # Comparison operators defer to compare(); equality of values coincides
    # with equality of normal forms for prime-factored counts.
    def __lt__(self, other: Count) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: Count) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: Count) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: Count) -> bool:
        return self.compare(other) >= 0

    def __mul__(self, other: Count) -> Count:
        return self.mul(other)

    def __pow__(self, k: int) -> Count:
        return self.pow(k)

    def __int__(self) -> int:
        return self.value()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        if self.is_one():
            return "1"
        return "*".join(f"{b}^{e}" for b, e in self.factors)


def _compare_by_logs(fa: tuple[tuple[int, int], ...], fb: tuple[tuple[int, int], ...]) -> int:
    """Compare Π b**e by interval evaluation of Σ e·ln(b), escalating precision.

    Terminates for prime-factored values: distinct normal forms have distinct
    logarithms, so some precision separates the intervals.
    """
    from mpmath import iv  # deferred import

    prec = 64
    saved = iv.prec
    try:
        while prec <= _MAX_LOG_PRECISION:
            iv.prec = prec
            la = iv.mpf(0)
            for base, exp in fa:
                la += iv.mpf(exp) * iv.log(iv.mpf(base))
            lb = iv.mpf(0)
            for base, exp in fb:
                lb += iv.mpf(exp) * iv.log(iv.mpf(base))
            if la.b < lb.a:
                return -1
            if la.a > lb.b:
                return 1
            prec *= 4
    finally:
        iv.prec = saved
    raise ComparisonUndecidedError(
        f"values too close to separate at precision {_MAX_LOG_PRECISION}: {fa} vs {fb}"
    )


def compare_counts(a: Count, b: Count) -> str:
    """Exact three-way comparison: 'less', 'equal' or 'greater'."""
    c = a.compare(b)
    return "less" if c < 0 else "greater" if c > 0 else "equal"
