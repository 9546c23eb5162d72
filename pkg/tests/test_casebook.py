from fractions import Fraction

import pytest

from mwforge import casebook
from mwforge.fields import euler_phi


def test_scenarios_registered():
    assert set(casebook.SCENARIOS) == {"example1", "example2", "x-squared"}
    for sc in casebook.SCENARIOS.values():
        sc.data.validate()
        for value, source in sc.expected.values():
            assert source == "stated"


def test_ex1_curve():
    rep = casebook.ex1_curve_report()
    assert rep.ok
    assert [e["item"] for e in rep.entries] == ["discriminant", "j"]


def test_ex1_grid():
    rep = casebook.ex1_report()
    assert rep.ok
    rows = {(e["p"], e["n"]): e for e in rep.entries if "p" in e}
    assert rows[(3, 1)]["rank"] == 2
    assert rows[(2, 1)]["rank"] == 2
    assert rows[(2, 3)]["d"] == 9
    for row in rows.values():
        assert row["rank_char0"] == 0
        assert row["bound_sum"] >= row["bound_lower"]
    assert rows[(3, 1)]["bound_relation"] == "equal"
    assert rows[(2, 1)]["bound_relation"] == "strict"


def test_ex1_single_family():
    rep = casebook.ex1_report(((2, 3),))
    assert rep.ok
    assert [e["d"] for e in rep.entries if "d" in e] == [9]


def test_ex2_identities():
    rep = casebook.ex2_invariant_identities()
    assert rep.ok
    assert rep.notes


@pytest.mark.parametrize("a,t", [(3, 2), (Fraction(1, 3), 5), (-2, Fraction(7, 2))])
def test_ex2_specializations(a, t):
    assert casebook.ex2_specialization(a, t).ok


def test_ex2_rank_table():
    rep = casebook.ex2_rank_table([15])
    assert rep.ok
    (row,) = rep.entries
    assert row["bound"] == 13
    rep = casebook.ex2_rank_table(range(2, 25))
    assert rep.ok
    for e in rep.entries:
        assert e["bound"] == euler_phi(e["d"]) + (5 if e["d"] % 3 == 0 else 3)
        assert e["rank_generic"] == e["c2"] - 1


def test_ex2_genus_table():
    rep = casebook.ex2_genus_table()
    assert rep.ok
    assert len(rep.entries) == 23


def test_x_squared():
    rep = casebook.x_squared_report()
    assert rep.ok
    assert [e["trace_dim"] for e in rep.entries[:4]] == [0, 1, 0, 1]
