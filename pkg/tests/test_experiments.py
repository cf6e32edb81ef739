import json
from decimal import Decimal
from fractions import Fraction

import pytest

from affine_lab.affine import AffLine
from affine_lab.experiments import (
    InsufficientSamplesError,
    bound_value,
    check_conjecture2,
    check_elekes,
    check_thm1_incidence,
    check_thm2,
    check_thm3,
    diag_thm3,
    diag_thm3_report,
    dpow,
    energy_split_by_intercept,
    fit_exponent,
    sweep,
    sweep_csv,
)
from affine_lab.generators import ap
from affine_lab.geometry import LINE_AT_INFINITY, X_AXIS, Y_AXIS
from affine_lab.incidence import PointSet


def test_decimal_powers():
    assert dpow(4, Fraction(1, 2)) == 2
    assert dpow(10, Fraction(5, 2)) == Decimal("316.227766016837933199889354443")
    assert bound_value([[(2, 3)], [(3, 2)]]) == 17


def test_fit_exponent_examples():
    assert fit_exponent([(2, 4), (4, 16), (8, 64)]) == Decimal("2.0000")
    assert fit_exponent([(2, 8), (4, 64), (8, 512)]) == Decimal("3.0000")
    assert str(fit_exponent([(2, 4), (4, 16), (8, 64)])) == "2.0000"


def test_fit_exponent_errors():
    with pytest.raises(InsufficientSamplesError):
        fit_exponent([(2, 4), (4, 16)])
    with pytest.raises(ValueError):
        fit_exponent([(4, 4), (2, 16), (8, 64)])


def test_rich_ratio_small_instance():
    prof = diag_thm3([0, 1], [2], 0, 0)
    # alpha = 0 is tallied apart and kept out of N
    assert prof.counts == {Fraction(-1, 2): 1}
    assert prof.zero_count == 1
    assert prof.N == 1
    assert prof.skipped_triples == 2


def test_rich_ratio_singleton_c():
    prof = diag_thm3([3], [1, 2], 1, 1)
    assert prof.N == 0 and not prof.counts


def test_rich_ratio_lambda_sets_shrink():
    prof = diag_thm3(ap(1, 1, 4), ap(2, 3, 4), 0, 1)
    sets = [prof.lambda_t(t) for t in range(1, prof.ceiling + 3)]
    assert all(a >= b for a, b in zip(sets, sets[1:]))
    assert prof.lambda_t(prof.ceiling + 1) == frozenset()


def test_rich_ratio_report_flags_lambda_in_c():
    rep = diag_thm3_report([0, 1], [1, 2, 3, 4, 5], 0, 1)
    assert rep.measured["N"] == rep.measured["N_brute"]
    assert rep.notes


def test_pencil_family_pinned_report():
    rep = check_thm2(ap(1, 1, 4), ap(1, 1, 4), 1, 1)
    m = rep.measured
    assert (m["lines"], m["energy"], m["pair_term"], m["mixed_moment"]) == (12, 624, 256, 3652)
    assert m["fourth_moment_c"] == m["fourth_moment_d"] == 3652
    assert rep.passed
    assert rep.bound == Decimal(1536)


def test_pencil_family_singletons():
    rep = check_thm2([3], [5])
    assert rep.measured["energy"] == 1 and rep.passed


def test_ratio_family_small_instance():
    rep = check_thm3([1, 2], [1, 2])
    m = rep.measured
    assert m["energy"] == m["energy_naive"] == 32
    assert m["energy_equal_c"] + m["energy_distinct_c"] == 32
    assert rep.passed
    assert check_thm3([2], [3]).measured["energy"] == 1


def test_energy_split():
    L = [AffLine(1, 0), AffLine(2, 1)]
    # quotients: identity twice, (2, 1) and (1/2, -1/2) once each
    assert energy_split_by_intercept(L) == (4, 2)


def test_grid_incidence_report():
    rep = check_thm1_incidence([0, 1], [0, 1], [AffLine(1, 0)])
    assert rep.measured["incidences"] == 2 and rep.measured["energy"] == 1
    assert rep.passed
    empty = check_thm1_incidence([0, 1], [0, 1], [AffLine(1, 10)])
    assert empty.measured["incidences"] == 0


def test_sum_product_incidences():
    rep = check_elekes([1, 2, 3], [1, 2])
    assert rep.measured["incidences"] >= 9 * 2
    assert rep.passed


def test_two_line_traces():
    grid = PointSet.cartesian(ap(1, 1, 4), ap(1, 1, 2))
    rep = check_conjecture2(grid, LINE_AT_INFINITY, Y_AXIS)
    assert not rep.measured["trace_1"]["infinite"]
    assert rep.measured["trace_2"]["projective"] >= 1
    small = check_conjecture2(PointSet.cartesian([0, 1], [0, 1]), LINE_AT_INFINITY, Y_AXIS)
    assert small.measured["trace_1"]["projective"] == 4
    line = PointSet.from_points([(0, 0), (1, 1), (2, 2)])
    assert check_conjecture2(line, LINE_AT_INFINITY, X_AXIS).measured["degenerate"]
    with pytest.raises(ValueError):
        check_conjecture2(line, X_AXIS, X_AXIS)


def test_two_line_traces_window_policy():
    lopsided = PointSet.cartesian([1, 2], range(1, 9))
    warn = check_conjecture2(lopsided, LINE_AT_INFINITY, Y_AXIS)
    assert warn.passed and warn.notes
    err = check_conjecture2(lopsided, LINE_AT_INFINITY, Y_AXIS, window_policy="error")
    assert not err.passed


def test_sweep_is_deterministic():
    a = sweep("thm2", [2, 3, 4], window=(Decimal(0), Decimal(10)))
    b = sweep("thm2", [2, 3, 4], window=(Decimal(0), Decimal(10)))
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert sweep_csv(a) == sweep_csv(b)
    assert sweep_csv(a).splitlines()[0] == "n,measured,bound,ratio,runtime_ms"
    assert a.passed


@pytest.mark.parametrize("kind", ["thm3", "q", "s14", "aa-plus-a", "a-sum4", "aaa"])
def test_sweep_kinds(kind):
    rep = sweep(kind, [2, 3, 4], gen="rand", seed=3)
    assert len(rep.measured["rows"]) == 3
    assert rep.fit is not None


def test_sweep_timing_is_opt_in():
    rep = sweep("q", [2, 3, 4])
    assert all(r["runtime_ms"] is None for r in rep.measured["rows"])
    timed = sweep("q", [2, 3, 4], timing=True)
    assert all(isinstance(r["runtime_ms"], int) for r in timed.measured["rows"])
