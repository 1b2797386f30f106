"""Exact integer and rational linear algebra.

Everything here works on plain nested lists of Python integers (or
``fractions.Fraction``) so results are exact.  Hermitian signatures at
roots of unity are computed over the cyclotomic field Q(zeta_d); the only
inexact step is deciding the sign of a real pivot, which is done with
certified ball arithmetic and adaptive precision.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

from flint import acb, arb, ctx, fmpq, fmpq_poly, fmpz_poly

IntMatrix = Sequence[Sequence[int]]

DEFAULT_PRECISION_BITS = 128
MAX_PRECISION_BITS = 4096


class SignUndecidable(ArithmeticError):
    """Interval refinement hit the precision cap without fixing a sign."""


@dataclass(frozen=True)
class SnfResult:
    """Smith form ``left * M * right == diag`` with unimodular factors."""

    diag: tuple
    left: tuple
    right: tuple

    def invariant_factors(self):
        n = min(len(self.left), len(self.right))
        return tuple(self.diag[i][i] for i in range(n))


def _copy(M: IntMatrix) -> List[List[int]]:
    rows = [list(map(int, r)) for r in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix is not rectangular")
    return rows


def identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    """Exact product of two nested-list matrices."""
    if not A:
        return []
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A):
    return [list(c) for c in zip(*A)]


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Smith normal form with transforms, ``U M V = D``.

    The diagonal is non-negative and satisfies the divisibility chain.

    >>> smith_normal_form([[2, 0], [0, 3]]).invariant_factors()
    (1, 6)
    """
    A = _copy(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for X in (A, V):
            for row in X:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    add_row(t, i, -q)
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    add_col(t, j, -q)
                if A[t][j]:
                    dirty = True
            if not dirty:
                # clear divisibility: every remaining entry must be a multiple of piv
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv]
                if not bad:
                    break
                add_row(bad[0][0], t, 1)
                continue
            # move the smallest nonzero remainder in row/column t into the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cands)
            if j == t:
                swap_rows(t, i)
            else:
                swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SnfResult(tuple(map(tuple, A)), tuple(map(tuple, U)), tuple(map(tuple, V)))


def determinant(M: IntMatrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    A = _copy(M)
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def rational_inverse(M: IntMatrix) -> List[List[Fraction]]:
    """Inverse over Q by Gauss-Jordan elimination.

    Raises ``ZeroDivisionError`` for singular input.
    """
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _is_symmetric(M) -> bool:
    return all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(i))


def symmetric_signature(M: IntMatrix) -> int:
    """Signature of a symmetric rational matrix by symmetric pivoting.

    An all-zero diagonal is repaired with the congruence ``e_a -> e_a + e_b``,
    so no eigenvalues are ever computed.
    """
    if any(len(r) != len(M) for r in M):
        raise ValueError("matrix is not square")
    if not _is_symmetric(M):
        raise ValueError("matrix is not symmetric")
    A = [[Fraction(x) for x in row] for row in M]
    sig = 0
    while A:
        n = len(A)
        i = next((i for i in range(n) if A[i][i] != 0), None)
        if i is None:
            j = next(((a, b) for a in range(n) for b in range(n) if A[a][b] != 0), None)
            if j is None:
                break
            a, b = j
            # e_a <- e_a + e_b makes the (a, a) entry 2 A[a][b]
            A[a] = [x + y for x, y in zip(A[a], A[b])]
            for row in A:
                row[a] += row[b]
            continue
        piv = A[i][i]
        sig += 1 if piv > 0 else -1
        rest = [k for k in range(n) if k != i]
        A = [[A[r][c] - A[r][i] * A[i][c] / piv for c in rest] for r in rest]
    return sig


# --- cyclotomic fields -------------------------------------------------------


def precision_bits() -> int:
    """Starting precision for sign certification (env ``PK_PRECISION_BITS``)."""
    raw = os.environ.get("PK_PRECISION_BITS")
    return int(raw) if raw else DEFAULT_PRECISION_BITS


class CyclotomicField:
    """Q(w) for w = exp(2 pi i / d); elements are fmpq_poly of degree < phi(d)."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("order must be positive")
        self.d = d
        self.modulus = fmpq_poly(list(fmpz_poly.cyclotomic(d).coeffs()))
        self.degree = self.modulus.degree()
        self.zero = fmpq_poly([])
        self.one = fmpq_poly([1])
        # images of the power basis under complex conjugation w -> w^(d-1)
        self._conj_basis = [self.power(-i) for i in range(self.degree)]

    def power(self, e: int) -> fmpq_poly:
        e %= self.d
        return fmpq_poly([0] * e + [1]) % self.modulus

    def reduce(self, p) -> fmpq_poly:
        return p % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inv(self, a):
        g, s, _ = a.xgcd(self.modulus)
        if g != 1:
            raise ZeroDivisionError("zero is not invertible")
        return s

    def conj(self, a):
        out = fmpq_poly([])
        for i, c in enumerate(a.coeffs()):
            if c != 0:
                out += c * self._conj_basis[i]
        return out

    def evaluate(self, a, prec: int) -> acb:
        """Ball enclosure of the complex value at w (``prec`` working bits)."""
        with ctx.workprec(prec):
            w = acb.exp_pi_i(acb(fmpq(2, self.d)))
            num = a.numer()
            val = acb(0)
            for c in reversed(num.coeffs()):
                val = val * w + acb(int(c))
            return val / acb(int(a.denom()))

    def real_sign(self, a) -> int:
        """Certified sign of a real element of the field."""
        if a == 0:
            return 0
        height = max(int(abs(c)).bit_length() for c in a.numer().coeffs()) + int(a.denom()).bit_length()
        prec = precision_bits()
        while prec <= MAX_PRECISION_BITS:
            re = self.evaluate(a, prec + height).real
            if re > 0:
                return 1
            if re < 0:
                return -1
            prec *= 2
        raise SignUndecidable(f"sign of {a} undecided at {MAX_PRECISION_BITS} bits")


@dataclass
class CycloHermitian:
    """Sparse Hermitian matrix over Q(zeta_d).

    ``upper[i]`` maps column ``j >= i`` to the entry h_ij; the lower half is
    implied by conjugation.
    """

    field: CyclotomicField
    size: int
    upper: List[Dict[int, fmpq_poly]]

    def entry(self, i: int, j: int):
        if i <= j:
            return self.upper[i].get(j, self.field.zero)
        return self.field.conj(self.upper[j].get(i, self.field.zero))

    def to_complex(self):
        """Floating-point copy, for diagnostics and tests."""
        import numpy as np

        out = np.zeros((self.size, self.size), dtype=complex)
        for i in range(self.size):
            for j in range(self.size):
                z = self.field.evaluate(self.entry(i, j), 64)
                out[i, j] = complex(float(z.real.mid()), float(z.imag.mid()))
        return out


def seifert_hermitian(V: IntMatrix, d: int, k: int) -> CycloHermitian:
    """(1 - w^k) V + (1 - w^-k) V^T as a sparse Hermitian matrix over Q(zeta_d)."""
    entries = {(i, j): x for i, row in enumerate(V) for j, x in enumerate(row) if x}
    return sparse_seifert_hermitian(len(V), entries, d, k)


def sparse_seifert_hermitian(n: int, entries: Dict[Tuple[int, int], int], d: int, k: int) -> CycloHermitian:
    """As ``seifert_hermitian`` for a matrix given by its nonzero entries."""
    F = CyclotomicField(d)
    a = F.one - F.power(k)
    abar = F.one - F.power(-k)
    upper: List[Dict[int, fmpq_poly]] = [dict() for _ in range(n)]
    for (i, j), x in entries.items():
        if i == j:
            upper[i][i] = upper[i].get(i, F.zero) + (a + abar) * x
        elif i < j:
            upper[i][j] = upper[i].get(j, F.zero) + a * x
        else:
            upper[j][i] = upper[j].get(i, F.zero) + abar * x
    return CycloHermitian(F, n, upper)


def hermitian_signature(H: CycloHermitian) -> int:
    """Exact signature of a Hermitian matrix over a cyclotomic field.

    Sparse LDL* elimination in index order.  A zero diagonal with a
    nonzero off-diagonal entry is repaired by a congruence that makes the
    diagonal positive; an empty row is a null vector and contributes 0.
    """
    F = H.field
    rows = [dict(r) for r in H.upper]
    for r in rows:
        for j in [j for j, v in r.items() if v == 0]:
            del r[j]
    lower: List[set] = [set() for _ in range(H.size)]  # lower[j]: rows i < j with h_ij != 0
    for i, r in enumerate(rows):
        for j in r:
            if j > i:
                lower[j].add(i)

    def get(i, j):
        if i <= j:
            return rows[i].get(j, F.zero)
        return F.conj(rows[j].get(i, F.zero))

    def put(i, j, v):
        if i > j:
            i, j, v = j, i, F.conj(v)
        if v == 0:
            if j in rows[i]:
                del rows[i][j]
                if i != j:
                    lower[j].discard(i)
        else:
            rows[i][j] = v
            if i != j:
                lower[j].add(i)

    sig = 0
    for i in range(H.size):
        # row i restricted to the remaining indices (all >= i by now)
        if rows[i].get(i, F.zero) == 0:
            nbrs = [j for j in rows[i] if j > i]
            if not nbrs:
                continue
            j = min(nbrs)
            hij = rows[i][j]
            hjj = rows[j].get(j, F.zero)
            # e_i <- e_i + c e_j with c = t conj(h_ij); new diagonal is
            # t |h|^2 (2 + t h_jj), nonzero for t = 1 or t = 2
            norm = F.mul(hij, F.conj(hij))
            for t in (1, 2):
                diag = F.mul(t * norm, 2 + t * hjj)
                if diag != 0:
                    break
            cbar = t * hij
            touched = set(rows[i]) | set(rows[j]) | lower[j]
            touched.discard(i)
            updates = {b: get(i, b) + F.mul(cbar, get(j, b)) for b in touched}
            for b, v in updates.items():
                put(i, b, v)
            put(i, i, F.reduce(diag))
        piv = rows[i][i]
        sig += F.real_sign(piv)
        inv = F.inv(piv)
        nbrs = sorted(j for j in rows[i] if j > i)
        if not nbrs:
            continue
        col = {j: rows[i][j] for j in nbrs}
        scaled = {j: F.mul(F.conj(col[j]), inv) for j in nbrs}
        for a_, ja in enumerate(nbrs):
            sa = scaled[ja]
            for jb in nbrs[a_:]:
                put(ja, jb, get(ja, jb) - F.mul(sa, col[jb]))
        for j in nbrs:
            lower[j].discard(i)
        rows[i] = {i: piv}
    return sig


def hermitian_signature_at_root(V: IntMatrix, d: int, k: int) -> int:
    """Tristram-Levine type signature of V at exp(2 pi i k / d).

    This is the signature of (1 - w) V + (1 - conj w) V^T with
    w = exp(2 pi i k / d); zero eigenvalues contribute nothing.

    >>> hermitian_signature_at_root([[-3]], 5, 2)
    -1
    """
    if not 0 < k < d:
        raise ValueError("need 0 < k < d")
    if any(len(r) != len(V) for r in V):
        raise ValueError("matrix is not square")
    g = gcd(k, d)
    d, k = d // g, k // g
    if not V:
        return 0
    return hermitian_signature(seifert_hermitian(V, d, k))



def sparse_signature_at_root(n: int, entries: Dict[Tuple[int, int], int], d: int, k: int) -> int:
    """``hermitian_signature_at_root`` for a matrix given by its nonzero entries."""
    if not 0 < k < d:
        raise ValueError("need 0 < k < d")
    g = gcd(k, d)
    if n == 0:
        return 0
    return hermitian_signature(sparse_seifert_hermitian(n, entries, d // g, k // g))
