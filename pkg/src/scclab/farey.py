"""Exact slope arithmetic: rationals with a point at infinity, continued
fractions in normal form, Farey neighbour calculus, slope enumeration.

Slopes are irreducible fractions p/q with non-negative denominator; the
single fraction 1/0 plays the role of infinity.  Continued fractions are
kept in the normal form [n1, n2, ..., nr] with n1 in Z, ni >= 1 for i >= 2
and nr >= 2 whenever r >= 2; the empty term sequence denotes 1/0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FareyError(ValueError):
    """Farey operation applied to non-neighbours, or arithmetic hitting 0/0."""


class Rational:
    """Irreducible fraction with den >= 0; den == 0 only for infinity (1/0)."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            if num == 0:
                raise FareyError("0/0 is not a rational slope")
            num = 1
        elif den < 0:
            num, den = -num, -den
        g = math.gcd(abs(num), den)
        if g > 1:
            num //= g
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("Rational is immutable")

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    @property
    def size(self) -> int:
        """|p| + q; the corpus complexity measure (1 for infinity)."""
        return abs(self.num) + self.den

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise FareyError("infinity has no finite value")
        return Fraction(self.num, self.den)

    @classmethod
    def parse(cls, text: str) -> "Rational":
        t = text.strip()
        if t in ("inf", "infinity", "1/0"):
            return cls(1, 0)
        if "/" in t:
            a, b = t.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(t))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Rational)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __lt__(self, other: "Rational") -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.num * other.den < other.num * self.den

    def __le__(self, other: "Rational") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Rational") -> bool:
        return other < self

    def __ge__(self, other: "Rational") -> bool:
        return other <= self

    def __neg__(self) -> "Rational":
        return Rational(-self.num, self.den)

    def __float__(self) -> float:
        if self.is_infinite:
            return math.inf
        return self.num / self.den

    def __str__(self) -> str:
        return "inf" if self.is_infinite else f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Rational({self.num}, {self.den})"


INFINITY = Rational(1, 0)


def _validate_terms(terms: Sequence[int]) -> None:
    for i, n in enumerate(terms):
        if not isinstance(n, int):
            raise FareyError(f"term {i} is not an integer: {n!r}")
        if i >= 1 and n < 1:
            raise FareyError(f"term {i} must be >= 1, got {n}")


def cf_value(terms: Sequence[int]) -> Rational:
    """Evaluate a term sequence; the empty sequence evaluates to infinity.

    Accepts non-normal sequences (e.g. truncations ending in 1) as long as
    every term past the first is >= 1.
    """
    _validate_terms(terms)
    cur = (1, 0)
    prev = (0, 1)
    for n in terms:
        cur, prev = (n * cur[0] + prev[0], n * cur[1] + prev[1]), cur
    return Rational(cur[0], cur[1])


def convergents(terms: Sequence[int]) -> list[Rational]:
    """All convergents p0/q0 = 1/0, p1/q1, ..., pr/qr of a term sequence."""
    _validate_terms(terms)
    out = [INFINITY]
    cur = (1, 0)
    prev = (0, 1)
    for n in terms:
        cur, prev = (n * cur[0] + prev[0], n * cur[1] + prev[1]), cur
        out.append(Rational(cur[0], cur[1]))
    return out


@dataclass(frozen=True)
class ContinuedFraction:
    """Normal-form expansion; terms == () denotes infinity."""

    terms: tuple[int, ...]

    def __post_init__(self):
        _validate_terms(self.terms)
        if len(self.terms) >= 2 and self.terms[-1] < 2:
            raise FareyError("last term must be >= 2 in normal form")

    @property
    def is_infinite(self) -> bool:
        return not self.terms

    @property
    def depth(self) -> int:
        return len(self.terms)

    def value(self) -> Rational:
        return cf_value(self.terms)

    def convergents(self) -> list[Rational]:
        return convergents(self.terms)

    def truncation(self, i: int) -> tuple[int, ...]:
        if not 0 <= i <= len(self.terms):
            raise FareyError(f"truncation level {i} out of range")
        return self.terms[:i]

    def __str__(self) -> str:
        return "[" + ",".join(str(n) for n in self.terms) + "]"


def cf_expand(r: Rational) -> ContinuedFraction:
    """Normal-form expansion of r; infinity maps to the empty expansion."""
    if r.is_infinite:
        return ContinuedFraction(())
    p, q = r.num, r.den
    terms = []
    while True:
        n = p // q
        terms.append(n)
        rem = p - n * q
        if rem == 0:
            break
        p, q = q, rem
    return ContinuedFraction(tuple(terms))


def are_neighbors(r1: Rational, r2: Rational) -> bool:
    """Farey neighbours: |p q' - p' q| = 1 (equivalently (q,p),(q',p') span Z^2)."""
    return abs(r1.num * r2.den - r2.num * r1.den) == 1


def farey_sum(r1: Rational, r2: Rational) -> Rational:
    if not are_neighbors(r1, r2):
        raise FareyError(f"{r1} and {r2} are not Farey neighbours")
    return Rational(r1.num + r2.num, r1.den + r2.den)


def farey_diff(r1: Rational, r2: Rational) -> Rational:
    # commutative by normalization: (p-p')/(q-q') and (p'-p)/(q'-q) coincide
    if not are_neighbors(r1, r2):
        raise FareyError(f"{r1} and {r2} are not Farey neighbours")
    return Rational(r1.num - r2.num, r1.den - r2.den)


def enumerate_slopes(max_pq: int) -> list[Rational]:
    """All irreducible p/q with p >= 0, q >= 1, p + q <= max_pq, plus infinity.

    Deterministic order: ascending (p + q, p); infinity last.
    """
    if max_pq < 1:
        raise FareyError("max_pq must be >= 1")
    out = []
    for s in range(1, max_pq + 1):
        for p in range(0, s):
            q = s - p
            if math.gcd(p, q) == 1:
                out.append(Rational(p, q))
    out.append(INFINITY)
    return out
