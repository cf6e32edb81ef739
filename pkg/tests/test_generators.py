import json
from fractions import Fraction

import pytest

from affine_lab.generators import (
    GenSpec,
    SplitMix64,
    ap,
    dump_set,
    generate,
    gp,
    load_set,
    parse_set_arg,
    random_int_set,
)


def test_reference_stream():
    # first outputs of SplitMix64 seeded with 0
    r = SplitMix64(0)
    assert r.next_u64() == 0xE220A8397B1DCDAF
    assert r.next_u64() == 0x6E789E6AA1B965F4


def test_below_is_in_range_and_deterministic():
    a = [SplitMix64(3).below(7) for _ in range(3)]
    assert len(set(a)) == 1
    r = SplitMix64(5)
    assert all(0 <= r.below(7) < 7 for _ in range(200))


def test_progressions():
    assert ap(1, 1, 4) == {1, 2, 3, 4}
    assert gp(1, 2, 4) == {1, 2, 4, 8}
    assert ap(Fraction(1, 2), 0, 1) == {Fraction(1, 2)}


def test_random_int_pinned():
    assert random_int_set(5, 100, 7) == {4, 5, 47, 75, 88}
    assert random_int_set(5, 100, 7) == generate(GenSpec("random_int", 5, seed=7, range_bound=100))


def test_collapse_is_an_error():
    with pytest.raises(ValueError):
        generate(GenSpec("ap", 3, Fraction(1), Fraction(0)))
    with pytest.raises(ValueError):
        random_int_set(20, 10, 1)


def test_dump_load_round_trip(tmp_path):
    path = tmp_path / "s.json"
    A = {Fraction(-1, 3), Fraction(2), Fraction(0)}
    path.write_text(dump_set(A))
    assert json.loads(path.read_text()) == ["-1/3", "0", "2"]
    assert load_set(path) == A
    assert parse_set_arg(str(path)) == A


def test_parse_set_arg_forms():
    assert parse_set_arg("ap:1,1,3") == {1, 2, 3}
    assert parse_set_arg("gp:1,3,3") == {1, 3, 9}
    assert parse_set_arg("1,1/2,-4") == {1, Fraction(1, 2), -4}
    assert parse_set_arg("rand:5,100,7") == {4, 5, 47, 75, 88}
