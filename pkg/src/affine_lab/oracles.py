"""Brute-force reference counts.

Each function enumerates tuples straight from a definition and shares no
counting code with the fast paths it is used to check.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .geometry import Point, as_rational, cross, dot


def _pts(P):
    return sorted({p for p in P}, key=lambda p: (p.x, p.y))


def _spanned_lines_raw(points) -> set[tuple[int, int, int]]:
    """Spanned lines as canonical triples, from the cross product of pairs."""
    hs = [p.homogeneous() for p in points]
    out = set()
    for u, v in combinations(hs, 2):
        a, b, c = cross(u, v)
        g = gcd(a, b, c)
        a, b, c = a // g, b // g, c // g
        if (a or b or c) < 0:
            a, b, c = -a, -b, -c
        out.add((a, b, c))
    return out


def points_on(line, points) -> int:
    return sum(1 for p in points if dot(line, p.homogeneous()) == 0)


def profile_brute(P) -> dict[tuple[int, int, int], int]:
    pts = _pts(P)
    return {line: points_on(line, pts) for line in _spanned_lines_raw(pts)}


def fourth_moment_brute(P) -> int:
    return sum(m**4 for m in profile_brute(P).values())


def mixed_moment_brute(P1, P2, doubly_rich_only: bool = False) -> int:
    p1, p2 = _pts(P1), _pts(P2)
    lines = _spanned_lines_raw(p1) | _spanned_lines_raw(p2)
    total = 0
    for line in lines:
        m1, m2 = points_on(line, p1), points_on(line, p2)
        if doubly_rich_only and (m1 < 2 or m2 < 2):
            continue
        total += m1 * m1 * m2 * m2
    return total


def incidences_brute(points, lines_planar) -> int:
    return sum(1 for p in points for l in lines_planar if dot(l, p.homogeneous()) == 0)


def slopes_brute(P) -> set:
    """Directions of spanned lines as slopes, ``None`` standing for vertical."""
    out = set()
    for p, q in combinations(_pts(P), 2):
        out.add(None if p.x == q.x else (q.y - p.y) / (q.x - p.x))
    return out


def additive_energy_brute(A) -> int:
    A = sorted({as_rational(a) for a in A})
    return sum(1 for a, b, c, d in product(A, repeat=4) if a + b == c + d)


def mult_energy_brute(A, k: int) -> int:
    """2k-tuples whose consecutive ratios all agree, by cross-multiplication."""
    A = sorted({as_rational(a) for a in A})
    count = 0
    for t in product(A, repeat=2 * k):
        a1, a2 = t[0], t[1]
        if all(t[2 * i] * a2 == a1 * t[2 * i + 1] for i in range(1, k)):
            count += 1
    return count


def ratio_energy_brute(A) -> int:
    """8-tuples with (a1-a2)/(a3-a4) = (a5-a6)/(a7-a8), nonzero denominators."""
    A = sorted({as_rational(a) for a in A})
    n = 0
    quads = [(a1 - a2, a3 - a4) for a1, a2, a3, a4 in product(A, repeat=4) if a3 != a4]
    for num1, den1 in quads:
        for num2, den2 in quads:
            if num1 * den2 == num2 * den1:
                n += 1
    return n


def q_set_brute(A) -> set[Fraction]:
    """y-intercepts of lines through two points of A x A with distinct x."""
    A = sorted({as_rational(a) for a in A})
    pts = [Point(x, y) for x in A for y in A]
    out = set()
    for p, q in combinations(pts, 2):
        if p.x != q.x:
            slope = (q.y - p.y) / (q.x - p.x)
            out.add(p.y - slope * p.x)
    return out


def n_alpha_total_brute(C, D, lam, mu) -> int:
    """Number of (c1, c2, d1, c3, c4, d3) with equal nonzero ratios
    (c2 - c1)/(d1 (c1 - lam) - mu) = (c4 - c3)/(d3 (c3 - lam) - mu)."""
    C = sorted({as_rational(c) for c in C})
    D = sorted({as_rational(d) for d in D})
    lam, mu = as_rational(lam), as_rational(mu)
    count = 0
    for c1, c2, d1, c3, c4, d3 in product(C, C, D, C, C, D):
        den1 = d1 * (c1 - lam) - mu
        den3 = d3 * (c3 - lam) - mu
        if den1 == 0 or den3 == 0:
            continue
        num1, num3 = c2 - c1, c4 - c3
        if num1 == 0 or num3 == 0:
            continue
        if num1 * den3 == num3 * den1:
            count += 1
    return count
