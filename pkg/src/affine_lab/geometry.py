"""Exact planar and projective primitives.

Everything here is integer or :class:`fractions.Fraction` arithmetic.  Points
and lines of the projective plane are stored as integer triples in a
canonical form (gcd 1, first nonzero entry positive), so two objects are equal
exactly when they describe the same geometric point or line.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple, Union

RationalLike = Union[int, str, Fraction]


class EqualPointsError(ValueError):
    pass


class IdenticalLinesError(ValueError):
    pass


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, ``Fraction`` or ``"p/q"`` string to a ``Fraction``.

    Floats are rejected on purpose: a float key in a multiset is a bug waiting
    to happen.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    return str(value)


def rational_set(values: Iterable[RationalLike]) -> frozenset[Fraction]:
    return frozenset(as_rational(v) for v in values)


def _canonical(v: tuple[int, int, int]) -> tuple[int, int, int]:
    g = gcd(*v)
    if g == 0:
        raise ValueError("the zero vector has no projective meaning")
    a, b, c = v[0] // g, v[1] // g, v[2] // g
    lead = a or b or c
    if lead < 0:
        a, b, c = -a, -b, -c
    return a, b, c


def cross(u: tuple[int, int, int], v: tuple[int, int, int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: tuple[int, int, int], v: tuple[int, int, int]) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def scale_to_integers(values: Iterable[Fraction]) -> tuple[int, ...]:
    """Multiply a rational vector by the lcm of its denominators."""
    values = tuple(values)
    den = lcm(*(q.denominator for q in values))
    return tuple(q.numerator * (den // q.denominator) for q in values)


class ProjPoint(NamedTuple):
    """Point ``[x:y:z]`` of the real projective plane, canonical integers."""

    x: int
    y: int
    z: int

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike, z: RationalLike = 1) -> "ProjPoint":
        return cls(*_canonical(scale_to_integers(map(as_rational, (x, y, z)))))

    @property
    def is_infinite(self) -> bool:
        return self.z == 0

    def affine(self) -> "Point":
        if self.z == 0:
            raise ValueError(f"{self} lies on the line at infinity")
        return Point(Fraction(self.x, self.z), Fraction(self.y, self.z))


class PlanarLine(NamedTuple):
    """Line ``a*x + b*y + c*z = 0`` with canonical integer coefficients.

    ``(0, 0, 1)`` is the line at infinity.
    """

    a: int
    b: int
    c: int

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike, c: RationalLike) -> "PlanarLine":
        return cls(*_canonical(scale_to_integers(map(as_rational, (a, b, c)))))

    @property
    def is_vertical(self) -> bool:
        return self.b == 0 and self.a != 0

    @property
    def is_horizontal(self) -> bool:
        return self.a == 0 and self.b != 0

    @property
    def is_at_infinity(self) -> bool:
        return self.a == 0 and self.b == 0

    def direction(self) -> ProjPoint:
        """The point where this line meets the line at infinity."""
        if self.is_at_infinity:
            raise ValueError("the line at infinity has no single direction")
        return ProjPoint(*_canonical((self.b, -self.a, 0)))

    def contains(self, p: Union["Point", ProjPoint]) -> bool:
        h = p.homogeneous() if isinstance(p, Point) else p
        return dot(self, h) == 0


# Direction is a ProjPoint with z == 0; kept as an alias for readability.
Direction = ProjPoint

LINE_AT_INFINITY = PlanarLine(0, 0, 1)
X_AXIS = PlanarLine(0, 1, 0)  # y = 0
Y_AXIS = PlanarLine(1, 0, 0)  # x = 0


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if not isinstance(self.x, Fraction):
            object.__setattr__(self, "x", as_rational(self.x))
        if not isinstance(self.y, Fraction):
            object.__setattr__(self, "y", as_rational(self.y))

    def homogeneous(self) -> ProjPoint:
        xd, yd = self.x.denominator, self.y.denominator
        return ProjPoint(*_canonical((self.x.numerator * yd, self.y.numerator * xd, xd * yd)))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def _homog(p) -> tuple[int, int, int]:
    return p.homogeneous() if isinstance(p, Point) else p


def line_through(p: Union[Point, ProjPoint], q: Union[Point, ProjPoint]) -> PlanarLine:
    """Canonical line through two distinct (possibly infinite) points."""
    v = cross(_homog(p), _homog(q))
    if v == (0, 0, 0):
        raise EqualPointsError(f"{p} and {q} coincide; no unique line")
    return PlanarLine(*_canonical(v))


def collinear(p, q, r) -> bool:
    """Exact collinearity; coincident arguments count as collinear."""
    return dot(cross(_homog(p), _homog(q)), _homog(r)) == 0


def intersect(l1: PlanarLine, l2: PlanarLine) -> ProjPoint:
    """Projective intersection; parallel affine lines meet at a direction."""
    v = cross(l1, l2)
    if v == (0, 0, 0):
        raise IdenticalLinesError(f"{l1} and {l2} are the same line")
    return ProjPoint(*_canonical(v))
