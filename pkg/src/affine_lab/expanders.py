"""Sum-product sets and growth statistics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional

from .energy import multiplicative_energy_k
from .geometry import RationalLike, as_rational

RSet = frozenset  # of Fraction


def _set(A: Iterable[RationalLike]) -> frozenset[Fraction]:
    return frozenset(as_rational(a) for a in A)


def sumset(*sets: Iterable[RationalLike]) -> frozenset[Fraction]:
    """``A + B + ...``; with one argument, ``A + A``."""
    sets = [_set(s) for s in sets]
    if len(sets) == 1:
        sets = sets * 2
    return reduce(lambda X, Y: frozenset(x + y for x in X for y in Y), sets)


def productset(*sets: Iterable[RationalLike]) -> frozenset[Fraction]:
    """``A B ...``; with one argument, ``A A``.  Zero is allowed."""
    sets = [_set(s) for s in sets]
    if len(sets) == 1:
        sets = sets * 2
    return reduce(lambda X, Y: frozenset(x * y for x in X for y in Y), sets)


def aa_plus_a(A) -> frozenset[Fraction]:
    A = _set(A)
    return sumset(productset(A, A), A)


def a_times_sum4(A) -> frozenset[Fraction]:
    A = _set(A)
    return productset(A, sumset(A, A, A, A))


def aaa(A) -> frozenset[Fraction]:
    A = _set(A)
    return productset(A, A, A)


def q_set(A) -> frozenset[Fraction]:
    """``{(a1 a4 - a2 a3) / (a1 - a3) : a1 != a3}``.

    These are the y-intercepts of the non-vertical lines spanned by ``A x A``.
    """
    A = sorted(_set(A))
    if len(A) < 2:
        raise ValueError("need at least two elements")
    out = set()
    for a1 in A:
        for a3 in A:
            if a1 == a3:
                continue
            inv = 1 / (a1 - a3)
            for a2 in A:
                for a4 in A:
                    out.add((a1 * a4 - a2 * a3) * inv)
    return frozenset(out)


def s14_set(A) -> frozenset[Fraction]:
    """``{(a1 - a2) a3 + a1}`` over all triples."""
    A = sorted(_set(A))
    return frozenset((a1 - a2) * a3 + a1 for a1 in A for a2 in A for a3 in A)


EXPANDER_KINDS = {
    "q": q_set,
    "s14": s14_set,
    "aa-plus-a": aa_plus_a,
    "a-sum4": a_times_sum4,
    "aaa": aaa,
}


@dataclass(frozen=True)
class GrowthStats:
    size_a: int
    size_b: Optional[int]
    sumset_size: int
    productset_size: int
    doubling: Fraction
    mult_ratio: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "size_a": self.size_a,
            "size_b": self.size_b,
            "sumset_size": self.sumset_size,
            "productset_size": self.productset_size,
            "doubling_K": str(self.doubling),
            "mult_ratio_K_star": None if self.mult_ratio is None else str(self.mult_ratio),
        }


def growth_stats(A, B=None) -> GrowthStats:
    """|A+A|, |AB| (or |AA|), K = |A+A|/|A| and K* = |A|^3 / E*(A)."""
    A = _set(A)
    if not A:
        raise ValueError("A must be nonempty")
    Bs = A if B is None else _set(B)
    k_star = None
    if Fraction(0) not in A:
        k_star = Fraction(len(A) ** 3, multiplicative_energy_k(A, 2))
    s = len(sumset(A))
    return GrowthStats(
        size_a=len(A),
        size_b=None if B is None else len(Bs),
        sumset_size=s,
        productset_size=len(productset(A, Bs)),
        doubling=Fraction(s, len(A)),
        mult_ratio=k_star,
    )
