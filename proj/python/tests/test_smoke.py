from fractions import Fraction
from itertools import product

import pytest

import h2lat


def test_parse_print_round_trip():
    c = h2lat.parse_class("rational:3", "3H - E1 - 2E3")
    assert c == [3, -1, 0, -2]
    assert h2lat.print_class("rational:3", c) == "3H - E1 - 2E3"
    big = [10**40, 0, -1]
    assert h2lat.parse_class("rational:2", h2lat.print_class("rational:2", big)) == big


def test_pairing_and_reflection():
    assert h2lat.pairing("rational:2", "H - E1", "H - E2") == 1
    assert h2lat.pairing("ruled:h=1,n=1", "T", "F") == 1
    # R(E1 - E2) swaps E1 and E2
    assert h2lat.reflect("rational:2", "E1 - E2", [0, 1, 0]) == [0, 0, 1]


def test_classify():
    out = h2lat.classify("rational:6", "H - E4 - E5 - E6")
    assert out["square"] == -2
    assert out["k0_pairing"] == 0
    assert out["knull"]
    assert out["normal_form"]["kind"] == "Ternary"
    assert h2lat.classify("rational:1", "E1")["exceptional"]


def test_exceptional_counts_against_brute_force():
    # brute force over a box, independent of the library search
    for n, want in [(1, 1), (2, 3), (3, 6), (4, 10)]:
        got = h2lat.exceptional(f"rational:{n}")
        assert got["complete"]
        ref = set()
        for v in product(range(-3, 4), repeat=n + 1):
            a, cs = v[0], v[1:]
            if a * a - sum(c * c for c in cs) == -1 and -3 * a - sum(cs) == -1:
                ref.add(v)
        assert {tuple(c) for c in got["classes"]} == ref
        assert len(ref) == want


def test_null_spherical_count():
    assert len(h2lat.null_spherical("rational:6")["classes"]) == 72


def test_cone_and_lagrangian():
    assert h2lat.cone("rational:1", "3H - E1")["status"] == "Yes"
    no = h2lat.cone("rational:1", "H")
    assert no["status"] == "No"
    assert no["witness"] == [0, 1]
    yes = h2lat.lagrangian("rational:2", "E1 - E2", "3H - E1 - E2")
    assert yes["yes"]
    no = h2lat.lagrangian("rational:2", "E1 - E2", [3, -1, Fraction(-3, 2)])
    assert not no["yes"]
    assert no["reason"] == "nonzero area"


def test_decompose_swap():
    m = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    out = h2lat.decompose("rational:2", m)
    assert out["verified"]
    assert len(out["word"]) == 1
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    assert h2lat.decompose("rational:2", ident)["word"] == []


def test_crosscheck():
    rep = h2lat.crosscheck("rational:6", square=-2, k_pairing=0, bound=3)
    assert rep["summary"]["ok"]
    assert rep["summary"]["checked"] == 72


def test_errors():
    with pytest.raises(ValueError):
        h2lat.parse_class("rational:2", "3H - E7")
    with pytest.raises(ValueError):
        h2lat.decompose("rational:2", [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
