import json
import math
from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwforge.berger import (
    X_SQUARED,
    EXAMPLE1,
    EXAMPLE2,
    BergerData,
    BergerDataError,
    c1,
    c2,
    delta,
    e_d,
    e_df,
    gamma,
    genus_X,
    hom_rank_preset,
    invariant_report,
    kummer_genus,
    newpart_dims,
    preset,
    rank_formula,
    orbit_rank_bound,
    trace_dim,
)
from mwforge.fields import euler_phi

GRID = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]


@pytest.mark.parametrize("a,b,expected", [(1, 1, 1), (2, 3, 3), (5, 1, 5), (4, 4, 1), (1, 7, 7)])
def test_gamma_examples(a, b, expected):
    assert gamma(a, b) == expected == gamma(b, a)


def test_gamma_recursion():
    for a in range(1, 40):
        for b in range(1, 40):
            if a > b:
                assert gamma(a, b) == gamma(a - b, b) + 1
            assert gamma(a, b) >= 1
    with pytest.raises(ValueError):
        gamma(0, 3)


@pytest.mark.parametrize("a,b,expected", [(1, 1, 0), (2, 3, 1), (3, 3, 3)])
def test_delta_examples(a, b, expected):
    assert delta(a, b) == expected


def test_delta_integral_grid():
    for a in range(1, 51):
        for b in range(1, 51):
            assert (a * b - a - b + math.gcd(a, b)) % 2 == 0
            assert delta(a, b) >= 0


def test_genus_examples():
    assert genus_X(EXAMPLE1) == 1
    assert genus_X(EXAMPLE2) == 1
    trivial = BergerData(0, 0, (1,), (1,), (1,), (1,))
    assert genus_X(trivial) == 0


def test_e_d_examples():
    assert e_d(6, (1, 1, 2)) == 1
    assert e_d(4, (2, 2)) == 2
    assert e_d(1, (6, 4)) == 1
    assert e_df(6, EXAMPLE1) == 1


def test_c2_examples():
    for d in range(1, 25):
        assert c1(d, EXAMPLE1) == 0 and c2(d, EXAMPLE1) == 0
        assert c1(d, EXAMPLE2) == d
        assert c2(d, EXAMPLE2) == (6 if d % 3 == 0 else 4)
    assert c1(1, BergerData(0, 0, (1,), (1,), (1,), (1,), c1_base=3)) == 3


def test_c2_coprime_case():
    # for d coprime to every multiplicity c2 collapses to (k-1)(l-1) + (k'-1)(l'-1)
    data = EXAMPLE2
    k, kp, l, lp = len(data.a), len(data.ap), len(data.b), len(data.bp)
    for d in (1, 5, 7, 11):
        assert c2(d, data) == (k - 1) * (l - 1) + (kp - 1) * (lp - 1)


@pytest.mark.parametrize(
    "d,base,mults,expected",
    [(5, 0, (1, 1, 2), 2), (5, 0, (1, 1, 1, 3), 4), (1, 3, (1, 1), 3), (1, 0, (2, 2), 0)],
)
def test_kummer_genus_examples(d, base, mults, expected):
    assert kummer_genus(d, base, mults) == expected


def test_kummer_genus_errors():
    with pytest.raises(ValueError, match="reducible"):
        kummer_genus(4, 0, (2, 2))
    with pytest.raises(ValueError, match="odd"):
        kummer_genus(2, 0, (1, 2))


def test_trace_dim_examples():
    for d in range(1, 25):
        assert trace_dim(d, X_SQUARED) == (d + 1) % 2
        assert trace_dim(d, EXAMPLE1) == 0


def test_rank_formula_examples():
    assert rank_formula(3, 2, EXAMPLE1) == 2
    assert rank_formula(5, euler_phi(5) + 4, EXAMPLE2) == 7
    d = 6
    assert rank_formula(d, c1(d, EXAMPLE2) - c2(d, EXAMPLE2), EXAMPLE2) == 0
    with pytest.raises(ValueError):
        rank_formula(1, -1, EXAMPLE1)


@pytest.mark.parametrize(
    "p,n,total,lower",
    [(2, 1, Fraction(1), Fraction(1, 2)), (3, 1, Fraction(1), Fraction(1)), (2, 2, Fraction(2), Fraction(3, 4))],
)
def test_orbit_rank_bound_examples(p, n, total, lower):
    assert orbit_rank_bound(p, n) == (total, lower)


@pytest.mark.parametrize("p,n", GRID)
def test_orbit_rank_bound_grid(p, n):
    total, lower = orbit_rank_bound(p, n)
    assert total >= lower


def test_newpart_examples():
    assert newpart_dims(5, "example1") == {1: 0, 5: 2}
    assert newpart_dims(2, "example1") == {1: 0, 2: 0}
    dims = newpart_dims(6, "example2")
    assert dims == {1: 0, 2: 1, 3: 1, 6: 2}
    assert sum(dims.values()) == 4 == kummer_genus(6, 0, (1, 1, 1, 3))
    with pytest.raises(ValueError):
        newpart_dims(4, "example3")


@pytest.mark.parametrize("d", range(1, 25))
def test_newpart_totals_match_kummer_genus(d):
    assert sum(newpart_dims(d, "example1").values()) == kummer_genus(d, 0, EXAMPLE1.f_mults)
    assert sum(newpart_dims(d, "example2").values()) == kummer_genus(d, 0, EXAMPLE2.f_mults)


def test_hom_rank_presets():
    assert hom_rank_preset("mu-d", 3, p=2, n=1) == 2
    assert hom_rank_preset("mu-d", 4, p=3, n=1) == 2
    assert hom_rank_preset("char0", 7) == 0
    assert hom_rank_preset("generic", 7) == 6
    assert hom_rank_preset("cm", 5) == 8
    with pytest.raises(ValueError):
        hom_rank_preset("mu-d", 5, p=2, n=1)


# ---------------------------------------------------------------------------
# data validation and JSON


def test_validation_names_clause():
    bad = BergerData(0, 0, (2, 2), (4,), (2,), (2,))
    with pytest.raises(BergerDataError) as exc:
        bad.validate()
    assert exc.value.clause == "gcd(all multiplicities) = 1"
    with pytest.raises(BergerDataError) as exc:
        BergerData(0, 0, (1, 1), (3,), (1,), (1,)).validate()
    assert exc.value.clause == "degree(f)"
    with pytest.raises(BergerDataError) as exc:
        BergerData(0, 0, (2,), (2,), (2,), (1, 1), p=2).validate()
    assert "char" in exc.value.clause
    with pytest.raises(BergerDataError):
        BergerData(0, 0, (1,), (1,), (1,), (1,), p=4).validate()


def test_json_roundtrip(tmp_path):
    for data in (EXAMPLE1, EXAMPLE2, X_SQUARED):
        path = tmp_path / "d.json"
        path.write_text(json.dumps(data.to_json()))
        assert BergerData.load(path) == data
    with pytest.raises(BergerDataError, match="schema"):
        BergerData.from_json({"gC": 0})
    with pytest.raises(BergerDataError, match="schema"):
        BergerData.from_json({**EXAMPLE1.to_json(), "extra": 1})
    with pytest.raises(BergerDataError):
        preset("nope")


def test_invariant_report_fields():
    rep = invariant_report(6, EXAMPLE2, hom_rank=hom_rank_preset("cm", 6))
    assert rep.e_df == rep.e_dg == 1
    assert rep.t == ((1, 1, 1),) * 3
    assert rep.tp == ((3,),)
    assert rep.c1 == 6 and rep.c2 == 6
    assert rep.genus == 1
    assert rep.rank == euler_phi(6) + 5 - 6 + 6


# ---------------------------------------------------------------------------
# periodicity of c2


def _lcm(xs):
    return reduce(lambda x, y: x * y // math.gcd(x, y), xs, 1)


@st.composite
def valid_data(draw):
    mult = st.integers(1, 6)
    while True:
        a = draw(st.lists(mult, min_size=1, max_size=3))
        b = draw(st.lists(mult, min_size=1, max_size=3))
        ap = draw(st.lists(mult, min_size=1, max_size=2))
        bp = draw(st.lists(mult, min_size=1, max_size=2))
        # balance degrees by padding the shorter side with one extra multiplicity
        if sum(ap) < sum(a):
            ap.append(sum(a) - sum(ap))
        elif sum(ap) > sum(a):
            a.append(sum(ap) - sum(a))
        if sum(bp) < sum(b):
            bp.append(sum(b) - sum(bp))
        elif sum(bp) > sum(b):
            b.append(sum(bp) - sum(b))
        data = BergerData(0, 0, tuple(a), tuple(ap), tuple(b), tuple(bp))
        try:
            return data.validate()
        except BergerDataError:
            continue


@settings(max_examples=150, deadline=None)
@given(valid_data())
def test_c2_periodic(data):
    L = _lcm(data.f_mults + data.g_mults)
    base = c2(1, data)
    for d in range(1, 4 * L + 1):
        value = c2(d, data)
        assert value == c2((d - 1) % L + 1, data)
        assert value >= base


def test_c2_periodic_presets():
    for data in (EXAMPLE1, EXAMPLE2, X_SQUARED):
        L = _lcm(data.f_mults + data.g_mults)
        for d in range(1, 4 * L + 1):
            assert c2(d, data) == c2((d - 1) % L + 1, data) >= c2(1, data)
