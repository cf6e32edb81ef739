"""Parametrised line families, built as deduplicated sets of AffLine."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .affine import AffLine, inverse
from .geometry import Point, RationalLike, as_rational
from .incidence import PointSet, line_profile

FAMILY_KINDS = ("grid_cd", "grid_c_cd", "thm2", "thm3", "diff", "elekes", "spanned")


class EmptyInputError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """Which family to build and from what.

    ``points`` is only read by the ``spanned`` kind; when absent the grid
    ``C x D`` is used.
    """

    kind: str
    C: tuple[Fraction, ...]
    D: tuple[Fraction, ...] = ()
    lam: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)
    points: Optional[tuple[Point, ...]] = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}")
        object.__setattr__(self, "C", tuple(sorted({as_rational(c) for c in self.C})))
        object.__setattr__(self, "D", tuple(sorted({as_rational(d) for d in self.D})))
        object.__setattr__(self, "lam", as_rational(self.lam))
        object.__setattr__(self, "mu", as_rational(self.mu))

    @classmethod
    def make(cls, kind: str, C: Iterable[RationalLike], D: Iterable[RationalLike] = (),
             lam: RationalLike = 0, mu: RationalLike = 0, points=None) -> "FamilySpec":
        return cls(kind, tuple(C), tuple(D), as_rational(lam), as_rational(mu),
                   None if points is None else tuple(points))


@dataclass
class FamilyResult:
    spec: FamilySpec
    lines: frozenset[AffLine]
    admitted: int = 0
    skipped: list[tuple[Fraction, Fraction, str]] = field(default_factory=list)
    collisions: list[tuple[Fraction, Fraction, AffLine]] = field(default_factory=list)

    def __len__(self):
        return len(self.lines)


def _line_for(kind: str, c: Fraction, d: Fraction, lam: Fraction, mu: Fraction):
    """Return ``(m, intercept)`` or a skip reason string."""
    if kind == "grid_cd":
        return (c, d) if c != 0 else "zero slope"
    if kind == "grid_c_cd":
        return (c, c * d) if c != 0 else "zero slope"
    if kind == "thm2":
        if c == d:
            return "c equals d"
        return lam / (c - d), mu * c / (c - d)
    if kind == "thm3":
        if c == 0:
            return "c is zero"
        m = d * (c - lam) - mu
        return (m, c) if m != 0 else "zero slope"
    if kind == "diff":
        if c == d:
            return "c equals d"
        return (c - d, c) if c != 0 else "c is zero"
    if kind == "elekes":
        return (c, -c * d) if c != 0 else "zero slope"
    raise AssertionError(kind)


def build_family(spec: FamilySpec) -> FamilyResult:
    if spec.kind == "spanned":
        return _build_spanned(spec)
    if not spec.C or not spec.D:
        raise EmptyInputError(f"{spec.kind} needs nonempty C and D")
    if spec.kind == "thm2" and (spec.lam == 0 or spec.mu == 0):
        raise ValueError("thm2 needs nonzero lambda and mu")
    result = FamilyResult(spec, frozenset())
    seen: dict[AffLine, tuple[Fraction, Fraction]] = {}
    for c in spec.C:
        for d in spec.D:
            got = _line_for(spec.kind, c, d, spec.lam, spec.mu)
            if isinstance(got, str):
                result.skipped.append((c, d, got))
                continue
            result.admitted += 1
            line = AffLine(*got)
            if line in seen:
                result.collisions.append((c, d, line))
            else:
                seen[line] = (c, d)
    result.lines = frozenset(seen)
    if spec.kind == "thm2":
        assert not result.collisions, "thm2 parametrisation must be injective"
    if spec.kind == "thm3" and spec.lam not in spec.C:
        assert len(result.lines) == result.admitted, "thm3 must be injective when lambda is not in C"
    return result


def _build_spanned(spec: FamilySpec) -> FamilyResult:
    if spec.points is not None:
        P = PointSet.from_points(spec.points)
    else:
        if not spec.C or not spec.D:
            raise EmptyInputError("spanned needs a point set or nonempty C and D")
        P = PointSet.cartesian(spec.C, spec.D)
    if len(P) < 2:
        raise EmptyInputError("spanned needs at least two points")
    lines = set()
    result = FamilyResult(spec, frozenset())
    for line in line_profile(P):
        if line.a == 0 or line.b == 0:
            continue
        lines.add(AffLine(Fraction(-line.a, line.b), Fraction(-line.c, line.b)))
    result.lines = frozenset(lines)
    result.admitted = len(lines)
    return result


def family_inverse(L: Iterable[AffLine]) -> frozenset[AffLine]:
    return frozenset(inverse(l) for l in L)
