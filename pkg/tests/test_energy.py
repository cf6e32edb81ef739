from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_lab import oracles
from affine_lab.affine import AffLine, aff_lines
from affine_lab.energy import (
    CapExceededError,
    additive_energy,
    difference_ratio_energy,
    energy,
    energy_naive,
    multiplicative_energy_k,
    quotient_multiset,
    rush_energy_bound_check,
)
from affine_lab.families import family_inverse

nonzero = st.fractions(min_value=-6, max_value=6, max_denominator=4).filter(lambda v: v != 0)
anyq = st.fractions(min_value=-6, max_value=6, max_denominator=4)
line_sets = st.frozensets(st.builds(AffLine, nonzero, anyq), min_size=1, max_size=12)
scalars = st.frozensets(st.integers(-6, 6), max_size=5)


def test_quotient_multiset_examples():
    assert quotient_multiset([AffLine(1, 0)]) == Counter({AffLine(1, 0): 1})
    assert quotient_multiset([AffLine(2, 0)]) == Counter({AffLine(1, 0): 1})
    q = quotient_multiset(aff_lines([(1, 0), (1, 1)]))
    assert q == Counter({AffLine(1, 0): 2, AffLine(1, 1): 1, AffLine(1, -1): 1})


@pytest.mark.parametrize("backend", ["python", "numpy", "auto"])
def test_energy_examples(backend):
    assert energy([AffLine(1, 0)], backend) == 1
    assert energy(aff_lines([(1, 0), (1, 1)]), backend) == 6
    assert energy([], backend) == 0


def test_naive_cap():
    L = aff_lines((1, c) for c in range(5))
    with pytest.raises(CapExceededError):
        energy_naive(L, cap=4)
    assert energy_naive(L, cap=5) == energy(L)


def test_packed_backend_falls_back_on_large_entries():
    L = aff_lines([(Fraction(10**9, 7), 3), (5, Fraction(-10**12, 11)), (2, 1)])
    assert energy(L, "auto") == energy(L, "python") == energy_naive(L)
    with pytest.raises(ValueError):
        energy(L, "numpy")


@settings(max_examples=80, deadline=None)
@given(line_sets)
def test_energy_backends_agree_with_naive(L):
    e = energy(L, "python")
    assert e == energy(L, "numpy") == energy_naive(L)
    assert len(L) ** 2 <= e <= len(L) ** 3
    assert energy(family_inverse(L)) == e


def test_scalar_energy_examples():
    assert additive_energy([0, 1]) == 6
    assert additive_energy([0, 1, 2]) == 19
    assert additive_energy([1, 10, 100, 1000]) == 2 * 16 - 4
    assert multiplicative_energy_k([1, 2, 4], 2) == 19
    assert multiplicative_energy_k([1, 2], 3) == 10
    assert difference_ratio_energy([0, 1]) == 24
    assert difference_ratio_energy([5]) == 0
    # pinned from the 8-tuple oracle
    assert difference_ratio_energy([0, 1, 2]) == 588


def test_multiplicative_energy_rejects_zero():
    with pytest.raises(ValueError):
        multiplicative_energy_k([0, 1], 2)


@settings(max_examples=40, deadline=None)
@given(scalars)
def test_scalar_energies_match_oracles(A):
    assert additive_energy(A) == oracles.additive_energy_brute(A)
    nz = A - {0}
    for k in (2, 3):
        assert multiplicative_energy_k(nz, k) == oracles.mult_energy_brute(nz, k)


@settings(max_examples=15, deadline=None)
@given(st.frozensets(st.integers(-5, 5), max_size=4))
def test_ratio_energy_matches_8_tuple_oracle(A):
    assert difference_ratio_energy(A) == oracles.ratio_energy_brute(A)


def test_energy_vs_ratio_counts_small_sets():
    # exact values; the square-root bound does not hold this small
    out = rush_energy_bound_check([1, 2])
    assert (out["energy"], out["mult_energy_4"], out["ratio_energy_q"]) == (32, 18, 24)
    assert not out["holds"]
    single = rush_energy_bound_check([7])
    assert (single["energy"], single["ratio_energy_q"], single["holds"]) == (1, 0, False)


@pytest.mark.parametrize("A", [[1, 2, 3, 4], [1, 2, 4, 8], [2, 3, 5, 7, 11, 13]])
def test_energy_vs_ratio_counts_holds(A):
    assert rush_energy_bound_check(A)["holds"]


def test_energy_vs_ratio_counts_rejects_zero():
    with pytest.raises(ValueError):
        rush_energy_bound_check([0, 1])
