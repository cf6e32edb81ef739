"""Line energy in the affine group, plus additive/multiplicative energies.

``energy`` counts ordered quadruples ``(l1, l2, l3, l4)`` with
``l1^-1 l2 == l3^-1 l4``.  It goes through the quotient multiset
``r(g) = #{(l1, l2) : l1^-1 l2 = g}`` and sums ``r(g)^2``; ``energy_naive``
enumerates quadruples directly and exists to check it.
"""
from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Iterable

import numpy as np

from .affine import AffLine, compose, inverse
from .geometry import RationalLike, as_rational

log = logging.getLogger(__name__)

DEFAULT_NAIVE_CAP = 64

# packed keys use three signed 21-bit fields
_FIELD_BITS = 21
_FIELD_LIMIT = 1 << (_FIELD_BITS - 1)


class CapExceededError(ValueError):
    pass


def _lines(L: Iterable[AffLine]) -> list[AffLine]:
    return sorted(set(L))


def _quotient_key(h1, h2) -> tuple[int, int, int]:
    # l1 = [[p1, q1], [0, r1]], l1^-1 l2 ~ [[p2 r1, q2 r1 - q1 r2], [0, r2 p1]]
    p1, q1, r1 = h1
    p2, q2, r2 = h2
    k1 = p2 * r1
    k2 = q2 * r1 - q1 * r2
    k3 = r2 * p1
    g = gcd(k1, k2, k3)
    if k3 < 0:
        g = -g
    return k1 // g, k2 // g, k3 // g


def quotient_multiset(L: Iterable[AffLine]) -> Counter:
    """``g -> r(g)`` over all ordered pairs of the line set."""
    hs = [l.homogeneous() for l in _lines(L)]
    keys: Counter = Counter()
    for h1 in hs:
        for h2 in hs:
            keys[_quotient_key(h1, h2)] += 1
    return Counter({AffLine(Fraction(k1, k3), Fraction(k2, k3)): v for (k1, k2, k3), v in keys.items()})


def _energy_python(hs: list[tuple[int, int, int]]) -> int:
    keys: Counter = Counter()
    for h1 in hs:
        for h2 in hs:
            keys[_quotient_key(h1, h2)] += 1
    return sum(v * v for v in keys.values())


def _energy_packed(hs: list[tuple[int, int, int]], chunk_rows: int = 256) -> int:
    arr = np.array(hs, dtype=np.int64)
    p, q, r = arr[:, 0], arr[:, 1], arr[:, 2]
    n = len(hs)
    packed = np.empty(n * n, dtype=np.int64)
    for start in range(0, n, chunk_rows):
        stop = min(start + chunk_rows, n)
        p1, q1, r1 = p[start:stop, None], q[start:stop, None], r[start:stop, None]
        k1 = p[None, :] * r1
        k2 = q[None, :] * r1 - q1 * r[None, :]
        k3 = r[None, :] * p1
        g = np.gcd(np.gcd(k1, k2), k3) * np.sign(k3)
        k1 //= g
        k2 //= g
        k3 //= g
        key = ((k1 + _FIELD_LIMIT) << (2 * _FIELD_BITS)) | ((k2 + _FIELD_LIMIT) << _FIELD_BITS) | (k3 + _FIELD_LIMIT)
        packed[start * n : stop * n] = key.ravel()
    _, counts = np.unique(packed, return_counts=True)
    # sum of r^2 is at most n^3, far inside int64 for any feasible n
    return int(np.dot(counts, counts))


def energy(L: Iterable[AffLine], backend: str = "auto") -> int:
    """E(L) = sum over g of r(g)^2, exact.

    ``backend="auto"`` uses a vectorised integer kernel when every quotient
    key fits the packed 21-bit fields and falls back to Python integers
    otherwise; both are exact.
    """
    hs = [l.homogeneous() for l in _lines(L)]
    if not hs:
        return 0
    if backend == "python":
        return _energy_python(hs)
    bound = max(max(abs(v) for v in h) for h in hs)
    fits = 2 * bound * bound < _FIELD_LIMIT
    if backend == "numpy" and not fits:
        raise ValueError("line coordinates too large for the packed kernel")
    if backend in ("auto", "numpy") and fits:
        return _energy_packed(hs)
    if backend not in ("auto", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    log.debug("energy: coordinates up to %d, using python integers", bound)
    return _energy_python(hs)


def energy_naive(L: Iterable[AffLine], cap: int = DEFAULT_NAIVE_CAP) -> int:
    """Direct count of quadruples using group arithmetic on ``Fraction``s."""
    lines = _lines(L)
    if len(lines) > cap:
        raise CapExceededError(f"|L| = {len(lines)} exceeds the naive cap {cap}")
    quotients = []
    for l1 in lines:
        for l2 in lines:
            g = compose(inverse(l1), l2)
            quotients.append((g.m.numerator, g.m.denominator, g.c.numerator, g.c.denominator))
    # for each (l1, l2), count every (l3, l4) giving the same quotient
    return sum(quotients.count(g) for g in quotients)


def sum_multiset(A: Iterable[RationalLike]) -> Counter:
    A = sorted({as_rational(a) for a in A})
    return Counter(a + b for a in A for b in A)


def ratio_multiset(A: Iterable[RationalLike]) -> Counter:
    A = sorted({as_rational(a) for a in A})
    if Fraction(0) in A:
        raise ValueError("0 is not allowed in a multiplicative energy")
    return Counter(a / b for a in A for b in A)


def additive_energy(A: Iterable[RationalLike]) -> int:
    return sum(v * v for v in sum_multiset(A).values())


def multiplicative_energy_k(A: Iterable[RationalLike], k: int = 2) -> int:
    """Number of ``2k``-tuples with ``a1/a2 = a3/a4 = ... = a_{2k-1}/a_{2k}``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return sum(v**k for v in ratio_multiset(A).values())


def difference_ratio_energy(A: Iterable[RationalLike]) -> int:
    """Q = sum over lambda of q(lambda)^2.

    ``q(lambda)`` counts ``(a1, a2, a3, a4)`` with ``a3 != a4`` and
    ``a1 - a2 = lambda * (a3 - a4)``; zero numerators are allowed.
    """
    A = sorted({as_rational(a) for a in A})
    diffs = Counter(a - b for a in A for b in A)
    nonzero = [(d, r) for d, r in diffs.items() if d != 0]
    q: Counter = Counter()
    for num, rn in diffs.items():
        for den, rd in nonzero:
            q[num / den] += rn * rd
    return sum(v * v for v in q.values())


def rush_energy_bound_check(A: Iterable[RationalLike]) -> dict:
    """E(L)^2 <= E4*(A) * Q for the line grid ``{(a, b) : a, b in A}``.

    Compared after squaring, so the check is exact.
    """
    A = sorted({as_rational(a) for a in A})
    if Fraction(0) in A:
        raise ValueError("0 is not allowed: the lines need nonzero slopes")
    lines = frozenset(AffLine(a, b) for a in A for b in A)
    e = energy(lines)
    e4 = multiplicative_energy_k(A, 4)
    q = difference_ratio_energy(A)
    return {
        "size_a": len(A),
        "energy": e,
        "mult_energy_4": e4,
        "ratio_energy_q": q,
        "holds": e * e <= e4 * q,
    }
