"""Projective transformations of the plane and the two explicit maps used
to move a pair of target lines to the line at infinity and an axis."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .affine import AffLine
from .geometry import (
    PlanarLine,
    Point,
    ProjPoint,
    RationalLike,
    _canonical,
    as_rational,
    scale_to_integers,
)
from .incidence import PointSet

Matrix = tuple[tuple[Fraction, Fraction, Fraction], ...]


def _det3(m) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _adjugate(m) -> Matrix:
    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    # adj = transpose of the cofactor matrix
    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


@dataclass(frozen=True)
class ProjTransform:
    matrix: Matrix

    def __post_init__(self):
        rows = tuple(tuple(as_rational(v) for v in row) for row in self.matrix)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a projective transform needs a 3x3 matrix")
        if _det3(rows) == 0:
            raise ValueError("singular matrix")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[RationalLike]]) -> "ProjTransform":
        return cls(tuple(tuple(r) for r in rows))

    def _act(self, m, v) -> tuple[int, int, int]:
        w = tuple(sum(m[i][j] * v[j] for j in range(3)) for i in range(3))
        return _canonical(scale_to_integers(w))

    def apply_point(self, p) -> ProjPoint:
        h = p.homogeneous() if isinstance(p, Point) else p
        return ProjPoint(*self._act(self.matrix, h))

    def apply_line(self, line: PlanarLine) -> PlanarLine:
        # lines transform by the inverse transpose; adj(M) is M^-1 up to scale
        adj = _adjugate(self.matrix)
        adj_t = tuple(tuple(adj[j][i] for j in range(3)) for i in range(3))
        return PlanarLine(*self._act(adj_t, line))

    def apply_points(self, points: Iterable) -> list[ProjPoint]:
        return [self.apply_point(p) for p in points]


def apply_point(T: ProjTransform, p) -> ProjPoint:
    return T.apply_point(p)


def apply_line(T: ProjTransform, line: PlanarLine) -> PlanarLine:
    return T.apply_line(line)


def pi_thm5(alpha: RationalLike, beta: RationalLike, gamma: RationalLike) -> ProjTransform:
    """Map for the target lines ``y = alpha`` and ``y = beta x + gamma``.

    Fixes the horizontal direction, sends their intersection to the vertical
    direction and the direction of the slanted line to the origin.  Hence
    ``y = alpha`` goes to the line at infinity and the slanted line to the
    y-axis.
    """
    a, b, g = as_rational(alpha), as_rational(beta), as_rational(gamma)
    if b == 0:
        raise ValueError("beta must be nonzero")
    return ProjTransform(((1, -1 / b, g / b), (0, 0, 1), (0, 1 / b, -a / b)))


def pi_thm6(lam: RationalLike, mu: RationalLike) -> ProjTransform:
    """Map sending ``y = lam x + mu`` to the line at infinity and the line at
    infinity to the y-axis."""
    lam, mu = as_rational(lam), as_rational(mu)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return ProjTransform(((0, 0, 1), (1, 0, 0), (-lam, 1, -mu)))


def grid_image_thm5(A, B, alpha, beta, gamma) -> PointSet:
    """Closed form of the image of ``A x B`` under :func:`pi_thm5`:
    ``((a beta + gamma - alpha)/(b - alpha) - 1, beta/(b - alpha))``."""
    alpha, beta, gamma = map(as_rational, (alpha, beta, gamma))
    if beta == 0:
        raise ValueError("beta must be nonzero")
    A = sorted({as_rational(a) for a in A})
    B = sorted({as_rational(b) for b in B})
    if alpha in B:
        raise ValueError("alpha must not lie in B: row y = alpha would go to infinity")
    return PointSet.from_points(
        Point((a * beta + gamma - alpha) / (b - alpha) - 1, beta / (b - alpha)) for a in A for b in B
    )


def pencil_image_thm6(A, B, alpha) -> PointSet:
    """Intersections of ``y = a x`` with ``y - alpha = b x``:
    the points ``(alpha/(a - b), alpha a/(a - b))`` for ``a != b``."""
    alpha = as_rational(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    A = sorted({as_rational(a) for a in A})
    B = sorted({as_rational(b) for b in B})
    return PointSet.from_points(
        Point(alpha / (a - b), alpha * a / (a - b)) for a in A for b in B if a != b
    )


def dual_lines(points: Iterable[Point]) -> frozenset[AffLine]:
    """Point ``(p1, p2)`` to the line ``y = -p1 x + p2``.

    A point ``(s, t)`` lies on the dual of ``(p1, p2)`` exactly when
    ``(p1, p2)`` lies on ``y = s x + t``.
    """
    return frozenset(AffLine(-p.x, p.y) for p in points)
