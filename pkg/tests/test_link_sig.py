from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from pretzelcg import acceptance, link_sig
from pretzelcg.exact_math import hermitian_signature_at_root
from pretzelcg.link_sig import (
    CableSpec,
    SatelliteLink,
    UnsupportedCableShape,
    braid_seifert_entries,
    braid_seifert_matrix,
    coherent_torus2_sigma,
    coherent_torus2_word,
    colored_signature,
    litherland_torus_sigma,
    satellite_sigma,
    torus_link_seifert,
    torus_link_sigma,
)


def braid(strands_max=4, length=8):
    return st.integers(2, strands_max).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g])), min_size=0, max_size=length)))


def sig(word, n, d, k):
    return hermitian_signature_at_root(braid_seifert_matrix(word, n), d, k)


def test_torus_fixtures():
    assert torus_link_seifert(1, 5) == []
    assert torus_link_seifert(2, 2) == [[-1]]
    assert hermitian_signature_at_root(torus_link_seifert(2, 2), 2, 1) == -1
    assert hermitian_signature_at_root(torus_link_seifert(2, 42), 7, 1) == -12


def test_litherland_values():
    assert litherland_torus_sigma(2, 3) == -12
    assert litherland_torus_sigma(1, 7) == 0
    assert litherland_torus_sigma(4, 5) == -120


def test_litherland_matches_seifert_route():
    for j in range(1, 5):
        for k in range(1, 3):
            assert hermitian_signature_at_root(torus_link_seifert(j, 5 * j * k), 5, 1) == litherland_torus_sigma(j, k)


def test_litherland_mutation_is_caught(monkeypatch):
    assert acceptance.criterion_4(n_max=4, k_max=2).passed
    monkeypatch.setattr(link_sig, "LITHERLAND_FACTOR", 2)
    assert not acceptance.criterion_4(n_max=4, k_max=2).passed


@settings(max_examples=60, deadline=None)
@given(braid(), st.integers(0, 7), st.sampled_from([(3, 1), (5, 2), (7, 3), (2, 1)]))
def test_braid_moves_preserve_signature(nw, rot, dk):
    n, word = nw
    d, k = dk
    base = sig(word, n, d, k)
    if word:
        r = rot % len(word)
        assert sig(word[r:] + word[:r], n, d, k) == base
    g = (rot % (n - 1)) + 1
    pos = rot % (len(word) + 1)
    assert sig(word[:pos] + [g, -g] + word[pos:], n, d, k) == base
    if n >= 3 and g < n - 1:
        # sigma_g sigma_{g+1} sigma_g = sigma_{g+1} sigma_g sigma_{g+1}
        a = word[:pos] + [g, g + 1, g] + word[pos:]
        b = word[:pos] + [g + 1, g, g + 1] + word[pos:]
        assert sig(a, n, d, k) == sig(b, n, d, k)
    # Markov stabilization
    assert sig(word + [n], n + 1, d, k) == base
    assert sig(word + [-n], n + 1, d, k) == base


@settings(max_examples=40, deadline=None)
@given(braid(), st.integers(2, 9))
def test_mirror_and_conjugation(nw, d):
    n, word = nw
    for k in range(1, d):
        s = sig(word, n, d, k)
        assert sig([-g for g in word], n, d, k) == -s
        assert sig(word, n, d, d - k) == s


@settings(max_examples=40, deadline=None)
@given(braid(length=12), st.integers(2, 9))
def test_sparse_entries_match_dense_matrix(nw, d):
    n, word = nw
    size, entries = braid_seifert_entries(word, n)
    V = braid_seifert_matrix(word, n)
    assert len(V) == size
    assert {(i, j): x for i, row in enumerate(V) for j, x in enumerate(row) if x} == entries


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(2, 9), st.integers(1, 10), st.integers(2, 13))
def test_torus_spectrum_count(a, b, k, d):
    k = k % d or 1
    x = Fraction(k, d)
    spectrum = {Fraction(i, a) + Fraction(j, b) for i in range(1, a) for j in range(1, b)}
    assume(x not in spectrum and x + 1 not in spectrum)
    assert torus_link_sigma(a, b, x) == hermitian_signature_at_root(torus_link_seifert(a, b), d, k)


def test_colored_fixtures():
    for d in (3, 5, 7):
        for k1 in range(1, d):
            for k2 in range(1, d):
                assert colored_signature(1, d, k1, k2) == 0
                assert colored_signature(-1, d, k1, k2) == 0
    assert colored_signature(2, 3, 1, 1) == hermitian_signature_at_root(torus_link_seifert(2, 4), 3, 1) + 2
    with pytest.raises(ValueError):
        colored_signature(3, 5, 0, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6).filter(bool), st.integers(2, 11), st.integers(1, 10))
def test_colored_recovery_and_symmetry(f, d, k):
    k = k % d or 1
    tl = hermitian_signature_at_root(torus_link_seifert(2, 2 * f) if f > 0 else
                                     braid_seifert_matrix([-1] * (2 * -f), 2), d, k)
    assert colored_signature(f, d, k, k) == tl + f
    assert colored_signature(-f, d, k, k) == -colored_signature(f, d, k, k)
    for k2 in range(1, d):
        assert colored_signature(f, d, k, k2) == colored_signature(f, d, k2, k)
        assert colored_signature(f, d, d - k, d - k2) == colored_signature(f, d, k, k2)


def test_satellite_fixtures():
    L = SatelliteLink("torus2", (CableSpec(4, 1), CableSpec(4, 0, 1)), pivot=-5)
    assert satellite_sigma(L, 3, 1) == -1
    L = SatelliteLink("odd4", (CableSpec(0, 1, 1), CableSpec(21, 2), CableSpec(35, 4), CableSpec(-119, 1)))
    assert satellite_sigma(L, 7, 1) == -132
    with pytest.raises(UnsupportedCableShape):
        CableSpec(0, 0, 0)
    with pytest.raises(UnsupportedCableShape):
        satellite_sigma(SatelliteLink("odd4", (CableSpec(0, 2), CableSpec(1, 1))), 3, 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(-3, 3), st.integers(-2, 2), st.integers(-2, 2),
       st.integers(2, 7))
def test_coherent_braid_matches_dense_route(m1, m2, pivot, t1, t2, d):
    word, M = coherent_torus2_word(m1, m2, pivot, t1, t2)
    for k in range(1, d):
        assert coherent_torus2_sigma(m1, m2, pivot, t1, t2, d, k) == sig(word, M, d, k)


@settings(max_examples=40, deadline=None)
@given(braid(), st.integers(2, 9))
def test_reversing_all_strands_keeps_signature(nw, d):
    # the closure of the reversed word is the closure with every strand reversed
    n, word = nw
    for k in range(1, d):
        assert sig(word[::-1], n, d, k) == sig(word, n, d, k)
