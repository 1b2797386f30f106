from collections import Counter
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from pretzelcg.pretzel import (
    KnotClass,
    NotAKnot,
    PretzelKnot,
    alexander_polynomial,
    classical,
    classify,
    determinant,
    fox_milnor_factor,
    lecuona_family,
    normal_form,
    ribbon_form,
    same_twobridge,
    seifert_matrix,
    twobridge_fraction,
    twobridge_to_pretzel,
)

odd = st.integers(-21, 21).filter(lambda x: x % 2 == 1)
odd_triples = st.tuples(odd, odd, odd)
nonzero = st.integers(-20, 20).filter(bool)


def hartley_alexander(alpha, beta):
    """Alexander polynomial of S(alpha, beta) from the exponent-sum formula
    (valid for odd beta)."""
    if beta % 2 == 0:
        beta -= alpha
    exps = [0]
    for i in range(1, alpha):
        eps = -1 if ((i * beta) // alpha) % 2 else 1
        exps.append(exps[-1] + eps)
    c = Counter()
    for i, e in enumerate(exps):
        c[e] += (-1) ** i
    lo = min(c)
    coeffs = [c.get(lo + i, 0) for i in range(max(c) - lo + 1)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs[-1] < 0:
        coeffs = [-x for x in coeffs]
    return tuple(coeffs)


def poly_value(coeffs, t):
    return sum(c * t**i for i, c in enumerate(coeffs))


def test_classify():
    assert classify(3, 5, -5) is KnotClass.ODD
    assert classify(2, 3, -3) is KnotClass.EVEN
    assert classify(2, 4, 3) is KnotClass.NOT_A_KNOT
    with pytest.raises(NotAKnot):
        PretzelKnot(2, 4, 6)


def test_seifert_matrices():
    assert seifert_matrix(PretzelKnot(-3, 5, 7)) == [[1, 3], [2, 6]]
    assert seifert_matrix(PretzelKnot(1, 3, -7)) == [[2, 2], [1, -2]]
    assert seifert_matrix(PretzelKnot(1, 1, 1)) == [[1, 1], [0, 1]]


def test_determinants():
    assert determinant(PretzelKnot(1, 3, -7)) == 25
    assert determinant(PretzelKnot(-3, 5, 7)) == 1
    assert determinant(PretzelKnot(-1, 3, 2)) == 1


def test_classical_fixtures():
    inv = classical(PretzelKnot(1, 3, -7))
    assert inv.alexander == (6, -13, 6) and inv.signature == 0 and inv.is_alg_slice
    assert fox_milnor_factor(inv.alexander) in {(2, 3), (3, 2)}
    assert classical(PretzelKnot(-3, 5, 7)).alexander == (1,)
    inv = classical(PretzelKnot(3, 5, 7))
    assert inv.signature != 0 and inv.is_alg_slice is False
    assert classical(PretzelKnot(2, 3, -3)).signature is None


@settings(max_examples=80, deadline=None)
@given(odd_triples)
def test_alexander_at_minus_one_is_determinant(t):
    K = PretzelKnot(*t)
    assert abs(poly_value(alexander_polynomial(K), -1)) == determinant(K)
    assert poly_value(alexander_polynomial(K), 1) in (1, -1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12))
def test_fox_milnor_recovers_factors(m, n):
    if gcd(m, n) != 1 or m == n:
        return
    # (mt - n)(nt - m), normalized to a positive leading coefficient
    delta = (m * n, -(m * m + n * n), m * n)
    a, b = fox_milnor_factor(delta)
    assert (a * b, -(a * a + b * b), a * b) == delta
    assert fox_milnor_factor((m * n, -(m * m + n * n) + 1, m * n)) is None


@settings(max_examples=80, deadline=None)
@given(st.tuples(nonzero, nonzero, nonzero), st.permutations(range(3)), st.booleans())
def test_normal_form_is_invariant(t, order, mirror):
    try:
        K = PretzelKnot(*t)
    except NotAKnot:
        return
    L = K.permuted(order)
    if mirror:
        L = L.mirror()
    assert normal_form(L) == normal_form(K)
    assert normal_form(normal_form(K)) == normal_form(K)


def test_ribbon_forms():
    assert ribbon_form(PretzelKnot(3, 5, -5)).form == "P(p,q,-q)"
    f = ribbon_form(PretzelKnot(1, 3, -7))
    assert (f.form, f.q) == ("P(1,q,-q-4)", 3)
    assert ribbon_form(PretzelKnot(5, 9, -41)) is None
    f = ribbon_form(PretzelKnot(-1, 3, 6))
    assert f.via == "P(1,3,-3)" and str(f) == "P(p,q,-q) [= P(1,3,-3)]"
    assert ribbon_form(PretzelKnot(-1, 3, 14)) is None


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([1, -1]), nonzero, nonzero)
def test_twobridge_fraction_matches_hartley(e, x, y):
    try:
        K = PretzelKnot(e, x, y)
    except NotAKnot:
        return
    alpha, beta = twobridge_fraction(K)
    assert alpha == determinant(K)
    if K.is_odd and alpha > 1:
        assert hartley_alexander(alpha, beta) == alexander_polynomial(K)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 99), st.integers(1, 98))
def test_same_twobridge_is_an_equivalence(a, b):
    b %= a
    if b == 0 or a % 2 == 0:
        return
    if gcd(a, b) != 1:
        return
    f = (a, b)
    for g in [(a, -b % a), (a, pow(b, -1, a))]:
        assert same_twobridge(f, g) and same_twobridge(g, f)
    assert same_twobridge(f, f)


def test_lecuona_family():
    m = lecuona_family(PretzelKnot(1, -3, -2))
    assert m.a == 1 and m.residue == 1 and m.unresolved
    m = lecuona_family(PretzelKnot(3, -5, -8))
    assert m.a == 3 and m.residue == 3 and not m.unresolved
    assert lecuona_family(PretzelKnot(2, 3, -3)) is None
    assert lecuona_family(PretzelKnot(-1, 3, 2)).a == 1


def test_twobridge_to_pretzel():
    assert twobridge_to_pretzel(1, 1).params == (1, 1, -3)
    assert twobridge_to_pretzel(2, 1).params == (1, 3, -3)
    K = twobridge_to_pretzel(2, 3)
    assert K.params == (1, 3, -7) and determinant(K) == 25


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9))
def test_twobridge_to_pretzel_fraction(a, b):
    K = twobridge_to_pretzel(a, b)
    alpha, beta = twobridge_fraction(K)
    assert alpha == 4 * a * b + 1
    assert same_twobridge((alpha, beta), (alpha, (2 * a) % alpha))
