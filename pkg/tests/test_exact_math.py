from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from pretzelcg.exact_math import (
    CyclotomicField,
    determinant,
    hermitian_signature_at_root,
    matmul,
    rational_inverse,
    seifert_hermitian,
    smith_normal_form,
    sparse_signature_at_root,
    symmetric_signature,
    transpose,
)
from pretzelcg.link_sig import torus_link_seifert


def square(n_max=4, lo=-6, hi=6):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


def symmetric(n_max=4):
    return square(n_max).map(lambda M: [[M[i][j] + M[j][i] for j in range(len(M))] for i in range(len(M))])


def test_snf_fixtures():
    assert smith_normal_form([[2, 0], [0, 3]]).invariant_factors() == (1, 6)
    assert smith_normal_form([[0, 0], [0, 0]]).invariant_factors() == (0, 0)
    fig2 = [[0, 1, 1, 1], [1, 1, 0, 0], [1, 0, 3, 0], [1, 0, 0, -7]]
    assert smith_normal_form(fig2).invariant_factors() == (1, 1, 1, 25)


@settings(max_examples=60, deadline=None)
@given(square())
def test_snf_matches_sympy_and_transforms(M):
    res = smith_normal_form(M)
    assert [list(r) for r in matmul(matmul(res.left, M), res.right)] == [list(r) for r in res.diag]
    assert abs(determinant(res.left)) == 1 and abs(determinant(res.right)) == 1
    ours = res.invariant_factors()
    D = sympy_snf(Matrix(M))
    assert sorted(abs(int(D[i, i])) for i in range(len(M))) == sorted(ours)
    for a, b in zip(ours, ours[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


@settings(max_examples=60, deadline=None)
@given(square())
def test_determinant_matches_sympy(M):
    assert determinant(M) == Matrix(M).det()


@settings(max_examples=40, deadline=None)
@given(square())
def test_rational_inverse(M):
    if determinant(M) == 0:
        with pytest.raises(ZeroDivisionError):
            rational_inverse(M)
        return
    inv = rational_inverse(M)
    n = len(M)
    prod = [[sum(Fraction(M[i][t]) * inv[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]


def test_inverse_fixture():
    assert rational_inverse([[2, -1], [-1, 5]]) == [[Fraction(5, 9), Fraction(1, 9)], [Fraction(1, 9), Fraction(2, 9)]]


def test_symmetric_signature_fixtures():
    assert symmetric_signature([[1, 0], [0, -1]]) == 0
    assert symmetric_signature([[2, -1], [-1, 5]]) == 2
    assert symmetric_signature([[0, 1, 1, 1], [1, 1, 0, 0], [1, 0, 3, 0], [1, 0, 0, -7]]) == 0


@settings(max_examples=60, deadline=None)
@given(symmetric())
def test_symmetric_signature_matches_numpy(S):
    ev = np.linalg.eigvalsh(np.array(S, dtype=float))
    if np.min(np.abs(ev)) < 1e-6 and determinant(S) != 0:
        return
    assert symmetric_signature(S) == int(np.sum(ev > 1e-6) - np.sum(ev < -1e-6))


@settings(max_examples=40, deadline=None)
@given(symmetric(), square(lo=-2, hi=2))
def test_signature_is_congruence_invariant(S, P):
    n = min(len(S), len(P))
    S = [row[:n] for row in S[:n]]
    P = [row[:n] for row in P[:n]]
    if determinant(P) == 0:
        return
    T = matmul(matmul(transpose(P), S), P)
    assert symmetric_signature(T) == symmetric_signature(S)


def test_hermitian_fixtures():
    assert hermitian_signature_at_root([[-3]], 5, 2) == -1
    assert hermitian_signature_at_root([[0]], 7, 1) == 0
    assert hermitian_signature_at_root(torus_link_seifert(2, 42), 7, 1) == -12


@settings(max_examples=40, deadline=None)
@given(square(n_max=4, lo=-3, hi=3), st.integers(2, 9), st.integers(1, 8))
def test_hermitian_signature_matches_numpy(V, d, k):
    k = k % d or 1
    H = seifert_hermitian(V, d, k).to_complex()
    ev = np.linalg.eigvalsh(H)
    sig = hermitian_signature_at_root(V, d, k)
    if np.min(np.abs(ev)) > 1e-6:
        assert sig == int(np.sum(ev > 0) - np.sum(ev < 0))
    assert hermitian_signature_at_root(V, d, d - k) == sig


@settings(max_examples=40, deadline=None)
@given(square(n_max=5, lo=-2, hi=2), st.integers(2, 11))
def test_sparse_matches_dense(V, d):
    entries = {(i, j): x for i, row in enumerate(V) for j, x in enumerate(row) if x}
    assert sparse_signature_at_root(len(V), entries, d, 1) == hermitian_signature_at_root(V, d, 1)


def test_cyclotomic_arithmetic():
    F = CyclotomicField(7)
    w = F.power(1)
    assert F.mul(w, F.power(6)) == F.one
    assert F.conj(w) == F.power(-1)
    assert F.mul(w, F.inv(w)) == F.one
    with pytest.raises(ZeroDivisionError):
        F.inv(F.zero)
    # 2 cos(2 pi / 7) > 0, 2 cos(6 pi / 7) < 0
    assert F.real_sign(w + F.conj(w)) == 1
    assert F.real_sign(F.power(3) + F.power(4)) == -1
    assert F.real_sign(F.zero) == 0


def test_precision_env_does_not_change_results(monkeypatch):
    V = torus_link_seifert(3, 21)
    base = hermitian_signature_at_root(V, 7, 2)
    monkeypatch.setenv("PK_PRECISION_BITS", "16")
    assert hermitian_signature_at_root(V, 7, 2) == base
