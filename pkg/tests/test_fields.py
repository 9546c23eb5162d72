import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwforge.fields import (
    QQ,
    FieldError,
    FiniteField,
    divisors,
    euler_phi,
    factorize,
    field_ctx_extension,
    function_field,
    is_prime,
    multiplicative_order,
    order_mod,
    prime_field,
    root_of_unity,
)
from mwforge.ratfunc import Poly, RatFunc


# ---------------------------------------------------------------------------
# integer helpers, checked against brute force


def test_is_prime_matches_trial_division():
    brute = [n for n in range(200) if n > 1 and all(n % k for k in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == brute


@pytest.mark.parametrize("n", [1, 2, 12, 97, 360, 1001, 2**10 * 3**4])
def test_factorize_divisors_phi(n):
    prod = 1
    for q, e in factorize(n):
        assert is_prime(q)
        prod *= q**e
    assert prod == n
    assert divisors(n) == [k for k in range(1, n + 1) if n % k == 0]
    assert euler_phi(n) == sum(1 for k in range(1, n + 1) if Fraction(k, n).denominator == n)


@pytest.mark.parametrize("a,e", [(2, 3), (3, 4), (4, 5), (2, 9), (8, 9), (10, 7)])
def test_order_mod_brute(a, e):
    k = 1
    while pow(a, k, e) != 1:
        k += 1
    assert order_mod(a, e) == k


# ---------------------------------------------------------------------------
# extension-field construction


def test_modulus_examples():
    assert field_ctx_extension(2, 1).modulus == (0, 1)
    assert field_ctx_extension(2, 2).modulus == (1, 1, 1)
    assert field_ctx_extension(3, 2).modulus == (1, 0, 1)


def _brute_irreducible(p, poly):
    m = len(poly) - 1
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            f = list(low) + [1]
            r = list(poly)
            for k in range(len(r) - 1, deg - 1, -1):
                c = r[k] % p
                if c:
                    for j in range(deg + 1):
                        r[k - deg + j] = (r[k - deg + j] - c * f[j]) % p
            if all(c % p == 0 for c in r[:deg]):
                return False
    return True


@pytest.mark.parametrize("p,m", [(2, 3), (2, 4), (3, 3), (5, 2), (7, 2), (3, 4)])
def test_modulus_is_smallest_irreducible(p, m):
    F = field_ctx_extension(p, m)
    assert _brute_irreducible(p, F.modulus)
    for low in itertools.product(range(p), repeat=m):
        # every monic polynomial before the modulus (low-degree-first order) is reducible
        if tuple(low) < F.modulus[:m]:
            assert not _brute_irreducible(p, tuple(low) + (1,))


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FiniteField(2, 2, modulus=(1, 0, 1))
    with pytest.raises(FieldError):
        FiniteField(4, 1)


def test_arithmetic_examples():
    F5 = prime_field(5)
    assert F5(2) * F5(3) == F5(1)
    assert QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)) == QQ(Fraction(5, 6))
    F4 = field_ctx_extension(2, 2)
    z = F4([0, 1])
    assert z * z == F4([1, 1])


def test_root_of_unity_examples():
    assert root_of_unity(prime_field(2), 1) == prime_field(2)(1)
    F4 = field_ctx_extension(2, 2)
    z3 = root_of_unity(F4, 3)
    assert multiplicative_order(z3) == 3
    F9 = field_ctx_extension(3, 2)
    z4 = root_of_unity(F9, 4)
    assert z4 * z4 == F9(-1)
    assert multiplicative_order(z4) == 4
    with pytest.raises(FieldError, match="field too small"):
        root_of_unity(F9, 5)


def test_multiplicative_order_examples():
    F3 = prime_field(3)
    assert multiplicative_order(F3(1)) == 1
    assert multiplicative_order(F3(-1)) == 2
    F9 = field_ctx_extension(3, 2)
    g = F9.element(F9.primitive_root)
    assert multiplicative_order(g) == 8
    with pytest.raises((FieldError, ZeroDivisionError, ValueError)):
        multiplicative_order(F9(0))


@pytest.mark.parametrize("p,m", [(2, 2), (2, 6), (3, 4), (7, 2)])
def test_primitive_root_is_least_generator(p, m):
    F = field_ctx_extension(p, m)
    g = F.primitive_root
    for a in F.iter_elements():
        if a == 0:
            continue
        if a == g:
            break
        assert multiplicative_order(F.element(a)) < F.order - 1
    assert multiplicative_order(F.element(g)) == F.order - 1


def test_extension_mul_matches_schoolbook_digits():
    F = field_ctx_extension(3, 3)
    mod = F.modulus
    for a in range(0, F.order, 5):
        for b in range(0, F.order, 7):
            da, db = F.digits(a), F.digits(b)
            prod = [0] * 5
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] += x * y
            for k in range(4, 2, -1):
                c = prod[k]
                for j in range(4):
                    prod[k - 3 + j] -= c * mod[j]
            assert F.mul(a, b) == F.from_digits([c % 3 for c in prod[:3]])


def test_big_extension_without_tables():
    F = field_ctx_extension(2, 21)
    assert F.tables is None
    a = F.element(123456)
    assert a * a.__pow__(-1) == F(1)
    assert a ** (F.order - 1) == F(1)


# ---------------------------------------------------------------------------
# field axioms, one property suite per field kind

PRIME_FIELDS = [prime_field(p) for p in (2, 3, 5, 7, 101, 65537)]
EXT_FIELDS = [field_ctx_extension(p, m) for p, m in ((2, 2), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2))]
FF = function_field(prime_field(5), "u")
QT = function_field(QQ, "t")


@st.composite
def finite_triples(draw, fields):
    F = draw(st.sampled_from(fields))
    return tuple(F.element(draw(st.integers(0, F.order - 1))) for _ in range(3))


rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9)


@st.composite
def rational_triples(draw):
    return tuple(QQ(draw(rationals)) for _ in range(3))


@st.composite
def ratfunc_elems(draw, K, coeff):
    base = K.base
    num = Poly(base, draw(st.lists(coeff, max_size=4)))
    den = Poly(base, draw(st.lists(coeff, min_size=1, max_size=3)))
    if den.is_zero():
        den = Poly.one(base)
    return K(RatFunc(num, den))


@st.composite
def function_triples(draw):
    if draw(st.booleans()):
        K, coeff = FF, st.integers(0, 4)
    else:
        K, coeff = QT, st.fractions(max_denominator=20).filter(lambda x: abs(x) < 50)
    return tuple(draw(ratfunc_elems(K, coeff)) for _ in range(3))


def _axioms(a, b, c):
    ctx = a.ctx
    zero, one = ctx(0), ctx(1)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a - a == zero
    assert a + (-a) == zero
    if a != zero:
        assert a * (one / a) == one
        assert (b / a) * a == b


@settings(max_examples=1000, deadline=None)
@given(finite_triples(PRIME_FIELDS))
def test_axioms_prime_fields(t):
    _axioms(*t)


@settings(max_examples=1000, deadline=None)
@given(finite_triples(EXT_FIELDS))
def test_axioms_extension_fields(t):
    _axioms(*t)


@settings(max_examples=1000, deadline=None)
@given(rational_triples())
def test_axioms_rationals(t):
    _axioms(*t)


@settings(max_examples=1000, deadline=None)
@given(function_triples())
def test_axioms_function_fields(t):
    _axioms(*t)


def test_prime_residues_canonical():
    F = prime_field(7)
    assert F(-1).raw == 6
    assert F(Fraction(1, 2)).raw == 4


def test_context_mismatch():
    with pytest.raises(FieldError):
        prime_field(5)(1) + prime_field(7)(1)
