from fractions import Fraction

import pytest

from affine_lab.affine import AffLine
from affine_lab.families import FAMILY_KINDS, EmptyInputError, FamilySpec, build_family, family_inverse
from affine_lab.generators import ap


def build(kind, C, D=(), lam=0, mu=0, **kw):
    return build_family(FamilySpec.make(kind, C, D, lam, mu, **kw))


def test_examples():
    assert build("thm2", [2], [1], 1, 1).lines == {AffLine(1, 2)}
    assert build("thm3", [3], [2], 1, 1).lines == {AffLine(3, 3)}
    assert build("diff", [1, 2], [0]).lines == {AffLine(1, 1), AffLine(2, 2)}


def test_inverse_examples():
    assert family_inverse([AffLine(2, 3)]) == {AffLine(Fraction(1, 2), Fraction(-3, 2))}
    assert family_inverse([AffLine(1, 0)]) == {AffLine(1, 0)}
    L = build("thm2", [2], [1], 1, 1).lines
    assert family_inverse(L) == {AffLine(1, -2)}


def test_thm2_inverse_form():
    lam, mu = Fraction(2), Fraction(3)
    C, D = ap(1, 1, 4), ap(2, 3, 3)
    L = build("thm2", C, D, lam, mu).lines
    expected = {AffLine((c - d) / lam, -(mu / lam) * c) for c in C for d in D if c != d}
    assert family_inverse(L) == expected


def test_thm2_skips_equal_pairs_and_is_injective():
    res = build("thm2", [1, 2, 3], [1, 2, 3], 1, 1)
    assert len(res.lines) == 6
    assert len(res.skipped) == 3
    assert not res.collisions


def test_thm2_needs_nonzero_parameters():
    with pytest.raises(ValueError):
        build("thm2", [1], [2], 0, 1)


def test_thm3_injective_when_lambda_outside_c():
    res = build("thm3", ap(1, 1, 5), ap(1, 1, 5), 0, 0)
    assert len(res.lines) == 25


def test_grid_kinds():
    assert len(build("grid_cd", [1, 2], [0, 5]).lines) == 4
    assert build("grid_c_cd", [2], [3]).lines == {AffLine(2, 6)}
    assert build("elekes", [2], [3]).lines == {AffLine(2, -6)}


def test_spanned_kind_uses_points():
    res = build("spanned", [], [], points=((0, 0), (1, 1), (2, 0)))
    # the horizontal line y = 0 is not an element of Aff(R)
    assert res.lines == {AffLine(1, 0), AffLine(-1, 2)}


def test_empty_input():
    with pytest.raises(EmptyInputError):
        build("grid_cd", [], [1])


def test_all_kinds_listed():
    assert set(FAMILY_KINDS) >= {"thm2", "thm3", "diff", "elekes", "grid_cd", "grid_c_cd", "spanned"}
