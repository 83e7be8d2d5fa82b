from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverkit.exactmath import (
    EchelonForm,
    ExactMatrix,
    MultiPoly,
    NotAPolynomialError,
    PolyRing,
    RationalFunction,
    UniPoly,
    canon,
    compositions_bounded,
    exp_series,
    integer_rank,
    log_series,
    permutation_sign,
    poly_gcd,
    q_power,
    subvectors,
)

small = st.integers(-6, 6)
coeff_lists = st.lists(small, max_size=5)
polys = coeff_lists.map(UniPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_unipoly_basics():
    q = UniPoly.q()
    p = (q + 1) * (q - 1)
    assert p.coeffs == (-1, 0, 1)
    assert p.degree == 2
    assert UniPoly().degree == -1
    assert p(3) == 8
    assert UniPoly.monomial(3, 2).coeffs == (0, 0, 0, 2)
    with pytest.raises(ValueError):
        UniPoly.monomial(-1)


def test_canon_folds_integral_fractions():
    assert canon(Fraction(4, 2)) == 2 and type(canon(Fraction(4, 2))) is int
    assert canon(Fraction(1, 2)) == Fraction(1, 2)


@given(polys, polys, polys)
def test_unipoly_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == UniPoly()


@given(polys, nonzero_polys)
def test_divmod_identity(a, b):
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    assert divmod(a, g)[1].is_zero()
    assert divmod(b, g)[1].is_zero()


def test_rational_function_reduces():
    q = UniPoly.q()
    f = RationalFunction((q - 1) * (q + 2), (q - 1) * 2)
    assert f.is_polynomial()
    assert f.as_polynomial() == (q + 2) * Fraction(1, 2)
    g = RationalFunction(1, q - 1)
    assert not g.is_polynomial()
    with pytest.raises(NotAPolynomialError):
        g.as_polynomial()
    assert q_power(-2) * q_power(2) == RationalFunction(1)


@given(polys, nonzero_polys, polys, nonzero_polys)
def test_rational_function_field_laws(a, b, c, d):
    x, y = RationalFunction(a, b), RationalFunction(c, d)
    assert x + y == y + x
    assert (x + y) - y == x
    assert x * y == RationalFunction(a * c, b * d)


ring = PolyRing(("x", "y", "z"), (1, 2, 1))
exps = st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 3))
mpolys = st.dictionaries(exps, small, max_size=5).map(lambda t: MultiPoly(ring, t))
points = st.tuples(small, small, small)


@given(mpolys, mpolys, points)
def test_evaluation_is_a_ring_map(p, r, pt):
    assert (p * r).evaluate(pt) == p.evaluate(pt) * r.evaluate(pt)
    assert (p + r).evaluate(pt) == p.evaluate(pt) + r.evaluate(pt)


@given(mpolys, mpolys)
def test_truncated_product(p, r):
    full = p * r
    capped = p.mul(r, 3)
    for exp, c in full.terms.items():
        if ring.degree_of(exp) <= 3:
            assert capped.coefficient(exp) == c
    assert all(ring.degree_of(e) <= 3 for e in capped.terms)


def test_weighted_monomials_are_lex_sorted():
    monos = ring.monomials(3)
    assert monos == sorted(monos)
    assert all(ring.degree_of(m) == 3 for m in monos)
    # x^3, x^2 z, x z^2, z^3, x y, y z
    assert len(monos) == 6


@given(mpolys)
def test_divide_by_difference(p):
    prod = p * (ring.gen(0) - ring.gen(2))
    assert prod.divide_by_difference(0, 2) == p


def test_divide_by_difference_rejects_inexact():
    with pytest.raises(ArithmeticError):
        (ring.gen(0) + 1).divide_by_difference(0, 2)


@settings(max_examples=40)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(0, 2)), small, max_size=4))
def test_exp_log_inverse(terms):
    terms.pop((0, 0, 0), None)
    p = MultiPoly(ring, terms)
    cap = 4
    assert log_series(exp_series(p, cap), cap) == p.truncate(cap)


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        exp_series(ring.one(), 3)
    with pytest.raises(ValueError):
        log_series(ring.zero(), 3)


int_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=5)
)


@given(int_matrices)
def test_integer_rank_matches_rational_elimination(rows):
    m = ExactMatrix(rows)
    assert integer_rank(rows) == m.row_reduce()[1]


@given(int_matrices)
def test_nullspace_is_kernel(rows):
    m = ExactMatrix(rows)
    basis = m.nullspace()
    assert len(basis) + m.rank() == m.ncols
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


@given(int_matrices, st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_echelon_reduce_is_normal_form(rows, vec):
    n = len(rows[0])
    ech = EchelonForm(n)
    for r in rows:
        ech.add({j: c for j, c in enumerate(r)})
    assert ech.rank == integer_rank(rows)
    assert len(ech.free_columns()) == n - ech.rank
    v = {j: c for j, c in enumerate(vec[:n])}
    red = ech.reduce(v)
    assert ech.reduce(red) == red
    assert not set(red) & set(ech.pivots)
    for r in rows:
        assert ech.reduce({j: c for j, c in enumerate(r)}) == {}


@given(st.permutations(range(5)), st.permutations(range(5)))
def test_permutation_sign_is_multiplicative(p, r):
    composed = [p[r[i]] for i in range(5)]
    assert permutation_sign(composed) == permutation_sign(p) * permutation_sign(r)


def test_enumerations():
    assert subvectors((1, 2))[:3] == [(0, 0), (0, 1), (0, 2)]
    assert len(subvectors((2, 3, 1))) == 24
    assert list(compositions_bounded(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions_bounded(2, 2, (1, 5))) == [(0, 2), (1, 1)]
