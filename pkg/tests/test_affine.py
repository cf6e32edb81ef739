from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affine_lab.affine import IDENTITY, AffLine, HorizontalLineError, compose, from_planar, inverse, to_planar
from affine_lab.geometry import PlanarLine, Point

nonzero = st.fractions(min_value=-20, max_value=20, max_denominator=10).filter(lambda v: v != 0)
anyq = st.fractions(min_value=-20, max_value=20, max_denominator=10)
lines = st.builds(AffLine, nonzero, anyq)


def test_product_rule():
    assert compose(AffLine(2, 3), AffLine(5, 7)) == AffLine(10, 17)
    assert AffLine(2, 3) * AffLine(5, 7) == AffLine(10, 17)


def test_inverse_example():
    assert inverse(AffLine(2, 4)) == AffLine(Fraction(1, 2), -2)


def test_horizontal_rejected():
    with pytest.raises(HorizontalLineError):
        AffLine(0, 1)


def test_planar_round_trip():
    l = AffLine(Fraction(2, 3), -1)
    p = to_planar(l)
    assert p.contains(Point(Fraction(3), Fraction(1)))
    assert from_planar(p) == l
    with pytest.raises(ValueError):
        from_planar(PlanarLine.of(1, 0, -2))


@given(lines, lines, lines)
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(lines)
def test_inverse_law(a):
    assert a * inverse(a) == IDENTITY == inverse(a) * a
    assert inverse(inverse(a)) == a


@given(lines, lines, anyq)
def test_composition_acts_on_reals(a, b, x):
    assert (a * b).at(x) == a.at(b.at(x))
