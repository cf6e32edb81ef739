"""Incidences, line profiles, rich lines, moments, directions and traces."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt, lcm
from typing import Iterable, Mapping, Optional, Union

from .affine import AffLine, to_planar
from .geometry import (
    LINE_AT_INFINITY,
    Point,
    PlanarLine,
    ProjPoint,
    RationalLike,
    X_AXIS,
    Y_AXIS,
    _canonical,
    as_rational,
    dot,
    intersect,
)

LineProfile = dict  # PlanarLine -> number of points on it (only entries >= 2)


class InfiniteTraceError(ValueError):
    """The target line is itself spanned by the point set."""


@dataclass(frozen=True)
class PointSet:
    points: frozenset[Point]
    grid: Optional[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]] = field(default=None, compare=False)

    @classmethod
    def from_points(cls, points: Iterable[Union[Point, tuple]]) -> "PointSet":
        pts = frozenset(p if isinstance(p, Point) else Point(*p) for p in points)
        return cls(pts)

    @classmethod
    def cartesian(cls, a: Iterable[RationalLike], b: Iterable[RationalLike]) -> "PointSet":
        xs = tuple(sorted({as_rational(v) for v in a}))
        ys = tuple(sorted({as_rational(v) for v in b}))
        return cls(frozenset(Point(x, y) for x, y in product(xs, ys)), (xs, ys))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[Point]:
        return sorted(self.points, key=lambda p: (p.x, p.y))

    def scaled(self) -> tuple[list[tuple[int, int]], int]:
        """Integer coordinates over a common denominator ``den``."""
        pts = self.sorted()
        den = lcm(1, *(p.x.denominator for p in pts), *(p.y.denominator for p in pts))
        return [(p.x.numerator * (den // p.x.denominator), p.y.numerator * (den // p.y.denominator)) for p in pts], den


def _as_points(P) -> PointSet:
    return P if isinstance(P, PointSet) else PointSet.from_points(P)


def _as_planar(line: Union[AffLine, PlanarLine]) -> PlanarLine:
    return to_planar(line) if isinstance(line, AffLine) else line


def _homogeneous_points(P) -> list[ProjPoint]:
    if isinstance(P, PointSet):
        return [p.homogeneous() for p in P.sorted()]
    return [p.homogeneous() if isinstance(p, Point) else p for p in P]


def line_profile(P) -> LineProfile:
    """Every line through at least two points of ``P`` with its point count.

    Each unordered pair is keyed on its canonical line; a line carrying ``k``
    points receives ``k(k-1)/2`` pairs, which is inverted at the end.
    """
    P = _as_points(P)
    pts, den = P.scaled()
    pairs: dict[tuple[int, int, int], int] = defaultdict(int)
    n = len(pts)
    for i in range(n):
        x1, y1 = pts[i]
        for j in range(i + 1, n):
            x2, y2 = pts[j]
            # cross((x1, y1, den), (x2, y2, den)) divided by den
            a = y1 - y2
            b = x2 - x1
            c = x1 * y2 - x2 * y1
            if c % den:
                a *= den
                b *= den
            else:
                c //= den
            g = gcd(a, b, c)
            a, b, c = a // g, b // g, c // g
            if a < 0 or (a == 0 and b < 0):
                a, b, c = -a, -b, -c
            pairs[(a, b, c)] += 1
    return {PlanarLine(*k): (1 + isqrt(1 + 8 * v)) // 2 for k, v in pairs.items()}


def rich_lines(P, k: int, profile: Optional[LineProfile] = None) -> frozenset[PlanarLine]:
    if k < 2:
        raise ValueError("k must be at least 2")
    profile = line_profile(P) if profile is None else profile
    return frozenset(line for line, m in profile.items() if m >= k)


def fourth_moment(P, profile: Optional[LineProfile] = None) -> int:
    profile = line_profile(P) if profile is None else profile
    return sum(m**4 for m in profile.values())


def count_incidences_brute(P, lines) -> int:
    """O(|P||L|) dot-product count; the reference the grouped count must match."""
    hp = _homogeneous_points(P)
    hl = {_as_planar(line) for line in lines}
    return sum(1 for p in hp for line in hl if dot(p, line) == 0)


def _direction_key(line: PlanarLine) -> tuple[tuple[int, int], Fraction]:
    g = gcd(line.a, line.b)
    return (line.a // g, line.b // g), Fraction(line.c, g)


def points_on_lines(P, lines) -> dict[PlanarLine, int]:
    """Point count of ``P`` on every given line, grouped by direction.

    Lines are bucketed by their reduced normal ``(a, b)``; a point then needs
    one dictionary probe per direction instead of one test per line.
    """
    hp = _homogeneous_points(P)
    lines = {_as_planar(line) for line in lines}
    by_dir: dict[tuple[int, int], dict[Fraction, PlanarLine]] = defaultdict(dict)
    at_infinity = LINE_AT_INFINITY in lines
    for line in lines:
        if line.is_at_infinity:
            continue
        key, c = _direction_key(line)
        by_dir[key][c] = line
    counts = dict.fromkeys(lines, 0)
    for x, y, z in hp:
        if z == 0:
            if at_infinity:
                counts[LINE_AT_INFINITY] += 1
            for (a, b), bucket in by_dir.items():
                if a * x + b * y == 0:
                    for line in bucket.values():
                        counts[line] += 1
            continue
        for (a, b), bucket in by_dir.items():
            hit = bucket.get(Fraction(-(a * x + b * y), z))
            if hit is not None:
                counts[hit] += 1
    return counts


def count_incidences(P, lines, method: str = "grouped") -> int:
    """Number of (point, line) pairs with the point on the line.

    ``lines`` may mix :class:`AffLine` and :class:`PlanarLine`; duplicates
    collapse since a line set is a set.
    """
    if method == "brute":
        return count_incidences_brute(P, lines)
    if method != "grouped":
        raise ValueError(f"unknown method {method!r}")
    return sum(points_on_lines(P, lines).values())


def mixed_moment(P1, P2, doubly_rich_only: bool = False) -> int:
    """Sum of ``|l & P1|^2 * |l & P2|^2`` over lines spanned by P1 or by P2.

    With ``doubly_rich_only`` the sum runs over lines carrying at least two
    points of each set.
    """
    prof1, prof2 = line_profile(P1), line_profile(P2)
    only1 = [l for l in prof1 if l not in prof2]
    only2 = [l for l in prof2 if l not in prof1]
    total = 0
    for line, m1 in prof1.items():
        m2 = prof2.get(line)
        if m2 is not None:
            total += m1 * m1 * m2 * m2
    if doubly_rich_only:
        return total
    # off-profile counts are 0 or 1, so the term is m^2 or nothing
    on2 = points_on_lines(P2, only1)
    total += sum(prof1[l] ** 2 for l in only1 if on2[l])
    on1 = points_on_lines(P1, only2)
    total += sum(prof2[l] ** 2 for l in only2 if on1[l])
    return total


def directions(P, profile: Optional[LineProfile] = None) -> frozenset[ProjPoint]:
    profile = line_profile(P) if profile is None else profile
    return frozenset(line.direction() for line in profile)


def trace_on_line(P, target: PlanarLine, profile: Optional[LineProfile] = None) -> frozenset[ProjPoint]:
    """Projective points where the spanned lines of ``P`` meet ``target``.

    Raises :class:`InfiniteTraceError` when ``target`` itself carries two or
    more points of ``P``.  Points at infinity are kept; filter on ``z != 0``
    for the affine part.
    """
    profile = line_profile(P) if profile is None else profile
    if target in profile:
        raise InfiniteTraceError(f"{target} contains {profile[target]} points of the set")
    return frozenset(intersect(line, target) for line in profile)


def affine_part(points: Iterable[ProjPoint]) -> frozenset[ProjPoint]:
    return frozenset(p for p in points if p.z != 0)


def axis_intercepts(P, axis: str = "y", profile: Optional[LineProfile] = None) -> frozenset[Fraction]:
    """Affine intercepts of spanned lines with a coordinate axis.

    Lines parallel to (or equal to) the axis are skipped, so this is the
    trace on the axis with its point at infinity filtered out.
    """
    profile = line_profile(P) if profile is None else profile
    target = Y_AXIS if axis == "y" else X_AXIS
    out = set()
    for line in profile:
        if line == target:
            continue
        p = intersect(line, target)
        if p.z != 0:
            out.add(Fraction(p.y if axis == "y" else p.x, p.z))
    return frozenset(out)


def profile_pair_count(profile: Mapping[PlanarLine, int]) -> int:
    return sum(m * (m - 1) // 2 for m in profile.values())


def is_collinear_set(P) -> bool:
    P = _as_points(P)
    if len(P) <= 2:
        return True
    return len(line_profile(P)) == 1


__all__ = [
    "PointSet",
    "LineProfile",
    "InfiniteTraceError",
    "line_profile",
    "rich_lines",
    "fourth_moment",
    "mixed_moment",
    "count_incidences",
    "count_incidences_brute",
    "points_on_lines",
    "directions",
    "trace_on_line",
    "affine_part",
    "axis_intercepts",
    "profile_pair_count",
    "is_collinear_set",
]
