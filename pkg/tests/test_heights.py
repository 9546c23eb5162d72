from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwforge.explicit_points import build_family
from mwforge.heights import (
    GramMatrix,
    TorsionError,
    _rank_of_rows,
    astar_gram,
    calibrate_kappa,
    canonical_height_estimate,
    compare_oracle,
    decimal6,
    determinant,
    gram_closed_form,
    identify_scaled_astar,
    lattice_rank,
    oracle_gram,
    pairing_oracle,
    render_json,
    render_tsv,
    same_span,
)

F = Fraction
GRID = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]


def test_gram_examples():
    G = gram_closed_form(2, 3)
    assert G[0, 0] == F(4, 3) and G[0, 1] == F(-2, 3)
    G = gram_closed_form(3, 4)
    assert G[0, 0] == F(3, 2) and G[0, 2] == F(-3, 2) and G[0, 1] == 0
    G = gram_closed_form(2, 5)
    assert G[1, 1] == F(16, 5) and G[3, 0] == F(-4, 5)


@pytest.mark.parametrize("p,d", [(2, 4), (3, 5), (2, 2), (5, 7)])
def test_gram_rejects_bad_d(p, d):
    with pytest.raises(ValueError):
        gram_closed_form(p, d)


@pytest.mark.parametrize("p,n", GRID)
def test_gram_structure(p, n):
    d = p**n + 1
    G = gram_closed_form(p, d)
    assert G.is_symmetric()
    for i in range(d):
        assert all((d * G[i, j]).denominator == 1 for j in range(d))
        assert sum(G[i, j] for j in range(d)) == 0
        if p != 2:
            assert sum((-1) ** j * G[i, j] for j in range(d)) == 0


def test_lattice_rank_examples():
    rep = lattice_rank(gram_closed_form(2, 3))
    assert rep.rank == 2 and rep.kernel == [(1, 1, 1)]
    rep = lattice_rank(gram_closed_form(3, 4))
    assert rep.rank == 2
    assert same_span(rep.kernel, [(1, 1, 1, 1), (1, -1, 1, -1)])
    zero = GramMatrix([[F(0)] * 4 for _ in range(4)])
    rep = lattice_rank(zero)
    assert rep.rank == 0 and len(rep.kernel) == 4
    with pytest.raises(ValueError):
        lattice_rank(GramMatrix([[F(1), F(2)], [F(0), F(1)]]))


@pytest.mark.parametrize("p,n", GRID)
def test_lattice_rank_grid(p, n):
    d = p**n + 1
    rep = lattice_rank(gram_closed_form(p, d))
    relations = [(1,) * d]
    if p != 2:
        relations.append(tuple((-1) ** i for i in range(d)))
    assert rep.rank == d - len(relations)
    assert same_span(rep.kernel, relations)
    for v in rep.kernel:
        first = next(x for x in v if x)
        assert first > 0


def test_astar_examples():
    assert astar_gram(1) == GramMatrix([[F(1, 2)]])
    assert astar_gram(2) == GramMatrix([[F(2, 3), F(-1, 3)], [F(-1, 3), F(2, 3)]])
    for m in range(1, 13):
        assert determinant(astar_gram(m)) == F(1, m + 1)
        assert lattice_rank(astar_gram(m)).rank == m


@pytest.mark.parametrize("p,n", GRID)
def test_identify_astar_grid(p, n):
    d = p**n + 1
    assert identify_scaled_astar(gram_closed_form(p, d), p, d)


def test_identify_astar_negative():
    G = gram_closed_form(2, 3).scaled(2)
    assert not identify_scaled_astar(G, 2, 3)
    with pytest.raises(ValueError):
        identify_scaled_astar(gram_closed_form(2, 3), 2, 5)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=4))
def test_lattice_rank_matches_gram_of_vectors(vectors):
    # a Gram matrix V V^T has the rank of V, and V^T-kernel vectors are in its kernel
    d = len(vectors)
    G = GramMatrix([[F(sum(a * b for a, b in zip(vectors[i], vectors[j]))) for j in range(d)] for i in range(d)])
    rep = lattice_rank(G)
    assert rep.rank == _rank_of_rows(vectors)
    for k in rep.kernel:
        assert all(sum(k[i] * G[i, j] for i in range(d)) == 0 for j in range(d))


# ---------------------------------------------------------------------------
# oracle


@pytest.fixture(scope="module")
def fam21():
    return build_family(2, 1)


@pytest.fixture(scope="module")
def fam31():
    return build_family(3, 1)


def test_height_sequence_converges(fam21):
    L = canonical_height_estimate(fam21.E, fam21.points[0], 4)
    assert len(L) == 5
    diffs = [abs(L[k + 1] - L[k]) for k in range(4)]
    assert diffs[-1] <= diffs[0]
    assert abs(L[-1] - F(4, 3)) <= F(1, 10)


def test_torsion_detected(fam21):
    with pytest.raises(TorsionError):
        canonical_height_estimate(fam21.E, fam21.Q_tors, 3)


def test_pairing_diagonal_is_height(fam31):
    E, P = fam31.E, fam31.points[0]
    # <P, P> from polarization is (L(2P) - 2 L(P)) / 2 = L(P) in the limit
    assert abs(pairing_oracle(E, P, P, 4) - canonical_height_estimate(E, P, 4)[-1]) <= F(1, 10)


def test_pairing_examples(fam21, fam31):
    assert abs(pairing_oracle(fam31.E, fam31.points[0], fam31.points[1], 4)) <= F(1, 10)
    assert abs(pairing_oracle(fam21.E, fam21.points[0], fam21.points[1], 4) + F(2, 3)) <= F(1, 10)
    assert pairing_oracle(fam21.E, fam21.points[0], fam21.points[1], 3) == pairing_oracle(
        fam21.E, fam21.points[1], fam21.points[0], 3
    )


def test_oracle_gram_small(fam21, fam31):
    closed = gram_closed_form(2, 3)
    oracle = oracle_gram(fam21.E, fam21.points, 4)
    kappa = calibrate_kappa(closed, oracle)
    assert abs(kappa - 1) <= F(1, 100)
    cmp = compare_oracle(closed, oracle, kappa)
    assert cmp["within_tol"] and cmp["rounding_exact"]
    cmp = compare_oracle(gram_closed_form(3, 4), oracle_gram(fam31.E, fam31.points, 4), kappa)
    assert cmp["within_tol"] and cmp["rounding_exact"]


def test_oracle_threads_deterministic(fam21):
    a = oracle_gram(fam21.E, fam21.points, 3, threads=1)
    b = oracle_gram(fam21.E, fam21.points, 3, threads=3)
    assert a == b


# ---------------------------------------------------------------------------
# rendering


@pytest.mark.parametrize(
    "x,expected",
    [(F(1, 3), "0.333333"), (F(-2, 3), "-0.666667"), (F(1, 2_000_000), "0.000000"), (F(3, 2_000_000), "0.000002"), (4, "4.000000")],
)
def test_decimal6_half_even(x, expected):
    assert decimal6(x) == expected


def test_render():
    G = gram_closed_form(2, 3)
    assert render_tsv(G) == "4/3\t-2/3\t-2/3\n-2/3\t4/3\t-2/3\n-2/3\t-2/3\t4/3\n"
    js = render_json(G)
    assert js["dim"] == 3
    assert js["entries"][0][1] == {"num": -2, "den": 3}
