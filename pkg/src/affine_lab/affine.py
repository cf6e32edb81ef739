"""Non-vertical, non-horizontal lines as elements of the affine group.

The line ``y = m*x + c`` is identified with the map ``x -> m*x + c``; the group
product is composition, ``(a, b) * (c, d) = (a*c, a*d + b)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable

from .geometry import PlanarLine, RationalLike, as_rational


class HorizontalLineError(ValueError):
    """Raised for slope zero: such lines have no group inverse."""


@dataclass(frozen=True, slots=True, order=True)
class AffLine:
    m: Fraction
    c: Fraction

    def __post_init__(self):
        if not isinstance(self.m, Fraction):
            object.__setattr__(self, "m", as_rational(self.m))
        if not isinstance(self.c, Fraction):
            object.__setattr__(self, "c", as_rational(self.c))
        if self.m == 0:
            raise HorizontalLineError(f"slope 0 is not an element of Aff(R): c={self.c}")

    def __mul__(self, other: "AffLine") -> "AffLine":
        return compose(self, other)

    def __repr__(self):
        return f"AffLine({self.m}, {self.c})"

    def homogeneous(self) -> tuple[int, int, int]:
        """Integers ``(p, q, r)`` with ``m = p/r``, ``c = q/r`` and ``r > 0``.

        In matrix terms the line is ``[[p, q], [0, r]]`` up to scaling; the
        energy kernel works on these to stay in integer arithmetic.
        """
        r = lcm(self.m.denominator, self.c.denominator)
        return (
            self.m.numerator * (r // self.m.denominator),
            self.c.numerator * (r // self.c.denominator),
            r,
        )

    def at(self, x: RationalLike) -> Fraction:
        return self.m * as_rational(x) + self.c


IDENTITY = AffLine(Fraction(1), Fraction(0))


def compose(l1: AffLine, l2: AffLine) -> AffLine:
    """``l1 * l2``, i.e. the map ``x -> l1(l2(x))``."""
    return AffLine(l1.m * l2.m, l1.m * l2.c + l1.c)


def inverse(line: AffLine) -> AffLine:
    return AffLine(1 / line.m, -line.c / line.m)


def to_planar(line: AffLine) -> PlanarLine:
    # y = m x + c  <=>  m x - y + c = 0
    return PlanarLine.of(line.m, -1, line.c)


def from_planar(line: PlanarLine) -> AffLine:
    if line.b == 0:
        raise ValueError(f"{line} is vertical or at infinity")
    return AffLine(Fraction(-line.a, line.b), Fraction(-line.c, line.b))


def aff_lines(pairs: Iterable[tuple[RationalLike, RationalLike]]) -> frozenset[AffLine]:
    return frozenset(AffLine(as_rational(m), as_rational(c)) for m, c in pairs)
