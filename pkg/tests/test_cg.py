from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pretzelcg import cg
from pretzelcg.double_cover import Kind, characters, even2_pivot, odd4_character, presentation
from pretzelcg.link_sig import UnsupportedCableShape
from pretzelcg.pretzel import PretzelKnot

odd = st.integers(-13, 13).filter(lambda x: x % 2 == 1)


def nontrivial(K, d):
    return [c for c in characters(presentation(K), d) if not c.is_trivial]


def test_p5941_fixtures():
    K = PretzelKnot(5, 9, -41)
    chi1 = odd4_character(K, 23, (18, 1, 21, 1))
    assert chi1.images == (18, 1, 21, 1)
    assert cg.f_chi(K, chi1).value == 529
    assert cg.sigma(K, chi1, 1).value == 1
    chi2 = chi1.scaled(2)
    assert chi2.images == (13, 2, 19, 2)
    assert cg.f_chi(K, chi2).value == 0
    assert cg.sigma(K, chi2, 1).value == 3
    assert 3 in {v.value for v in cg.sigma_all_k(K, chi1)}
    for chi in nontrivial(K, 23):
        assert cg.f_chi(K, chi).value % 529 == 0


def test_p995_fixtures():
    K = PretzelKnot(9, 9, -5)
    for chi in nontrivial(K, 3):
        for k in (1, 2):
            vals = cg.all_routes(K, chi, k)
            assert len(vals) >= 2 and {v.value for v in vals} == {-7}
        assert [v.value for v in cg.sigma_all_k(K, chi)] == [-7, -7]


def test_p2135_fixture():
    K = PretzelKnot(21, 35, -119)
    chi = odd4_character(K, 7, (2, 4, 1))
    assert cg.sigma(K, chi, 1, route="satellite").value == Fraction(24, 7)
    assert cg.sigma(K, chi, 1, route="closed").value == Fraction(24, 7)
    assert cg.sigma(K, chi, 1, verify=True).value == Fraction(24, 7)


def test_even_fixtures():
    K = PretzelKnot(-1, 3, 6)
    pres = presentation(K, Kind.REDUCED, even2_pivot(K))
    chi = odd4_character(K, 3, (1, 2), pres)
    assert {v.value for v in cg.all_routes(K, chi, 1)} == {-1}
    chi = odd4_character(K, 9, (2, 4), pres)
    assert {v.value for v in cg.all_routes(K, chi, 1)} == {Fraction(-11, 9)}


def test_trivial_character_is_rejected():
    K = PretzelKnot(9, 9, -5)
    triv = [c for c in characters(presentation(K), 3) if c.is_trivial][0]
    with pytest.raises(UnsupportedCableShape):
        cg.sigma_satellite(K, triv, 1)


def test_unknown_route():
    K = PretzelKnot(9, 9, -5)
    with pytest.raises(ValueError):
        cg.sigma(K, nontrivial(K, 3)[0], 1, route="bogus")


def small_knot_with_prime():
    def pick(t):
        K = PretzelKnot(*t)
        primes = [d for d in (3, 5, 7) if K.sigma2 % d == 0]
        return (K, primes[0]) if primes else None
    return st.tuples(odd, odd, odd).map(pick).filter(lambda x: x is not None)


@settings(max_examples=40, deadline=None)
@given(small_knot_with_prime())
def test_routes_agree(Kd):
    K, d = Kd
    for chi in nontrivial(K, d):
        for k in range(1, d):
            vals = cg.all_routes(K, chi, k)
            assert len({v.value for v in vals}) <= 1, vals
            for v in vals:
                assert (v.value * d * d).denominator == 1


@settings(max_examples=30, deadline=None)
@given(small_knot_with_prime())
def test_mirror_negates_and_conjugation_is_symmetric(Kd):
    K, d = Kd
    M = K.mirror()
    for chi in nontrivial(K, d):
        chi_m = odd4_character(M, d, chi.abc)
        for k in range(1, d):
            try:
                s = cg.sigma(K, chi, k).value
            except UnsupportedCableShape:
                continue
            assert cg.sigma(M, chi_m, k).value == -s
            assert cg.sigma(K, chi, d - k).value == s


@settings(max_examples=30, deadline=None)
@given(small_knot_with_prime())
def test_sigma_k_is_sigma_one_of_multiple(Kd):
    K, d = Kd
    for chi in nontrivial(K, d):
        for k in range(1, d):
            try:
                s = cg.sigma(K, chi, k).value
            except UnsupportedCableShape:
                continue
            assert cg.sigma(K, chi.scaled(k), 1).value == s


@settings(max_examples=20, deadline=None)
@given(small_knot_with_prime())
def test_coherent_representatives_agree(Kd):
    K, d = Kd
    for chi in nontrivial(K, d):
        for pv in range(3):
            if not all(chi.abc[s] for s in range(3) if s != pv):
                continue
            if cg._coherent_size(K, chi, pv) > 600:
                continue
            vals = {cg._reduced_satellite(K, chi, 1, pv, rep)
                    for rep in ("coherent", "coherent-reversed", "coherent-short")}
            assert len(vals) == 1
