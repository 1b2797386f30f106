"""Signatures of the links that appear in satellite and colored formulas.

Seifert matrices come from Seifert's algorithm on a closed braid: one
generator per pair of consecutive crossings at the same level.  The
generators are sorted by their starting crossing so that the matrix is
banded, which keeps exact elimination cheap.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .exact_math import (
    CycloHermitian,
    CyclotomicField,
    hermitian_signature,
    hermitian_signature_at_root,
    sparse_signature_at_root,
)

# Litherland's torus-link constant; the fixture suite checks it against Seifert matrices
LITHERLAND_FACTOR = -2


class UnsupportedCableShape(ValueError):
    """No implemented recipe covers this satellite link."""


def braid_seifert_entries(word: Sequence[int], strands: int) -> Tuple[int, Dict[Tuple[int, int], int]]:
    """Size and nonzero entries of the Seifert matrix of a closed braid.

    The surface has one disk per strand and one band per crossing; the
    basis loops run between consecutive crossings on the same level,
    ordered by starting crossing (which keeps the matrix banded).
    """
    by_level = {i: [] for i in range(1, strands)}
    for pos, g in enumerate(word):
        if g == 0 or abs(g) >= strands:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        by_level[abs(g)].append((pos, 1 if g > 0 else -1))
    gens = []
    for level, crossings in by_level.items():
        for (a, ea), (b, eb) in zip(crossings, crossings[1:]):
            gens.append((a, level, ea, b, eb))
    gens.sort()
    index = {(g[1], g[0]): u for u, g in enumerate(gens)}  # (level, start) -> row
    starts = {lv: [g[0] for g in gens if g[1] == lv] for lv in by_level}
    entries: Dict[Tuple[int, int], int] = {}
    for u, (a, level, ea, b, eb) in enumerate(gens):
        if ea + eb:
            entries[(u, u)] = -(ea + eb) // 2
        # next loop on the same level shares crossing b
        v = index.get((level, b))
        if v is not None:
            if eb > 0:
                entries[(u, v)] = 1
            else:
                entries[(v, u)] = -1
        # loops one level up form consecutive intervals [c, e]
        up = starts.get(level + 1, [])
        pos = bisect_left(up, a) - 1  # the interval containing a, if any
        if pos >= 0:
            w = index[(level + 1, up[pos])]
            if a < gens[w][3] < b:
                entries[(u, w)] = -1
        pos = bisect_left(up, b) - 1  # the last interval starting before b
        if pos >= 0 and up[pos] > a:
            w = index[(level + 1, up[pos])]
            if gens[w][3] > b:
                entries[(u, w)] = 1
    return len(gens), entries


def braid_seifert_matrix(word: Sequence[int], strands: int) -> List[List[int]]:
    """Seifert matrix of the closure of a braid word.

    ``word`` lists signed Artin generators (+i for sigma_i, -i for its
    inverse).  The positive Hopf link gives [[-1]].
    """
    n, entries = braid_seifert_entries(word, strands)
    V = [[0] * n for _ in range(n)]
    for (i, j), x in entries.items():
        V[i][j] = x
    return V


def full_twist(strands: int, offset: int = 0) -> List[int]:
    """Positive full twist on ``strands`` strands starting after ``offset``."""
    return [offset + i for _ in range(strands) for i in range(1, strands)]


def _power(word: Sequence[int], n: int) -> List[int]:
    base = list(word) if n > 0 else [-g for g in word]
    return base * abs(n)


def torus_link_seifert(a: int, b: int) -> List[List[int]]:
    """Seifert matrix of the coherent torus link T(a, b), the closure of
    (sigma_1 ... sigma_{a-1})^b."""
    if a < 1:
        raise ValueError("need at least one strand")
    return braid_seifert_matrix(_power(range(1, a), b), a)


def litherland_torus_sigma(j: int, k_twist: int) -> int:
    """Signature of T(j, j k n) at exp(2 pi i / n), for 0 < j < n."""
    return LITHERLAND_FACTOR * j * (j - 1) * k_twist


def torus_link_sigma(a: int, b: int, x: Fraction) -> int:
    """Tristram-Levine signature of T(a, b) at exp(2 pi i x), 0 < x < 1.

    Counts the spectrum {i/a + j/b} of the Brieskorn form: points inside
    (x, x+1) count -1, points outside [x, x+1] count +1.
    """
    if b < 0:
        return -torus_link_sigma(a, -b, x)
    if a < 2 or b < 2:
        return 0
    x = Fraction(x)
    sig = 0
    for i in range(1, a):
        for j in range(1, b):
            s = Fraction(i, a) + Fraction(j, b)
            if x < s < x + 1:
                sig -= 1
            elif s < x or s > x + 1:
                sig += 1
    return sig


@dataclass(frozen=True)
class CableSpec:
    """lambda-twisted cable of a framed component: n_plus strands one way,
    n_minus the other."""

    framing: int
    n_plus: int
    n_minus: int = 0

    def __post_init__(self):
        if self.n_plus < 0 or self.n_minus < 0 or self.n_plus + self.n_minus == 0:
            raise UnsupportedCableShape("cables must be non-empty")

    @property
    def net(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def antiparallel(self) -> bool:
        return self.n_plus == self.n_minus == 1

    @property
    def coherent(self) -> bool:
        return self.n_minus == 0 or self.n_plus == 0


@dataclass(frozen=True)
class SatelliteLink:
    """Cables on the components of a surgery link model.

    ``model`` is "odd4" (central 0-framed curve first, then the three
    parameter curves) or "torus2" (the two components of T(2, 2 pivot)).
    """

    model: str
    cables: Tuple[CableSpec, ...]
    pivot: int = 0


def coherent_torus2_word(m1: int, m2: int, pivot: int, t1: int, t2: int) -> Tuple[List[int], int]:
    """Braid for m1 and m2 parallel strands on the two components of
    T(2, 2 pivot), with t1, t2 extra full twists inside each cable."""
    M = m1 + m2
    word = _power(full_twist(M), pivot)
    word += _power(full_twist(m1), t1)
    word += _power(full_twist(m2, m1), t2)
    return word, M


@lru_cache(maxsize=65536)
def coherent_torus2_sigma(m1: int, m2: int, pivot: int, t1: int, t2: int, d: int, k: int) -> int:
    """Signature at exp(2 pi i k / d) of the braid from ``coherent_torus2_word``."""
    word, M = coherent_torus2_word(m1, m2, pivot, t1, t2)
    if M < 2:
        return 0
    n, entries = braid_seifert_entries(word, M)
    return sparse_signature_at_root(n, entries, d, k)


def satellite_sigma(L: SatelliteLink, d: int, k: int) -> int:
    """Signature of the satellite link at exp(2 pi i k / d).

    Recipes: on the odd4 model with an antiparallel central pair and
    coherent parameter cables, the link is a distant union of T(a, p a)
    pieces; on torus2, a lone antiparallel pair gives the annulus form
    [pivot]; coherent cables on both components give a closed braid.
    """
    x = Fraction(k, d)
    if L.model == "odd4":
        centre, *rest = L.cables
        if not centre.antiparallel or centre.framing != 0:
            raise UnsupportedCableShape("odd4 recipe needs a 0-framed antiparallel central pair")
        total = 0
        for c in rest:
            if not c.coherent:
                raise UnsupportedCableShape("parameter cables must be coherent")
            a = c.n_plus + c.n_minus
            if (a * k) % d == 0 and a > 1:
                raise UnsupportedCableShape("degenerate evaluation point for a torus piece")
            total += torus_link_sigma(a, c.framing * a, x)
        return total
    if L.model == "torus2":
        c1, c2 = L.cables
        if c1.antiparallel and c2.antiparallel:
            raise UnsupportedCableShape("two antiparallel pairs")
        if (c1.net, c2.net) in ((1, -1), (-1, 1)) and c1.n_plus + c1.n_minus == 1 == c2.n_plus + c2.n_minus:
            # one strand each way: an annulus with core framing equal to the pivot
            return hermitian_signature_at_root([[L.pivot]], d, k)
        same_way = (c1.n_minus == 0 and c2.n_minus == 0) or (c1.n_plus == 0 and c2.n_plus == 0)
        if c1.coherent and c2.coherent and same_way:
            # reversing every strand keeps the signature
            m1, m2 = abs(c1.net), abs(c2.net)
            return coherent_torus2_sigma(m1, m2, L.pivot, c1.framing - L.pivot, c2.framing - L.pivot,
                                         d, min(k % d, -k % d))
        raise UnsupportedCableShape(f"no recipe for cables {c1}, {c2}")
    raise UnsupportedCableShape(f"unknown model {L.model}")


def colored_torus_matrix(f: int):
    """Generalized Seifert matrices of the 2-colored T(2, 2f).

    The C-complex is two disks joined by |f| clasps; returns a dict
    mapping sign pairs (e1, e2) to integer matrices of size |f| - 1.
    """
    n = abs(f)
    if n <= 1:
        return {}
    m = n - 1
    s = 1 if f > 0 else -1
    pp = [[-s * (i == j) for j in range(m)] for i in range(m)]
    pm = [[s * (j == i + 1) for j in range(m)] for i in range(m)]
    mp = [list(col) for col in zip(*pm)]
    mm = [list(col) for col in zip(*pp)]
    return {(1, 1): pp, (-1, -1): mm, (1, -1): pm, (-1, 1): mp}


@lru_cache(maxsize=4096)
def colored_signature(f: int, d: int, k1: int, k2: int) -> int:
    """Colored signature of T(2, 2f) at (w^k1, w^k2), w = exp(2 pi i / d).

    Both exponents must be nonzero mod d.
    """
    if k1 % d == 0 or k2 % d == 0:
        raise ValueError("colored signatures are evaluated away from 1")
    mats = colored_torus_matrix(f)
    if not mats:
        return 0
    F = CyclotomicField(d)
    one = F.one
    coeff = {}
    for e1, e2 in mats:
        # (1 - conj(w1)^e1)(1 - conj(w2)^e2)
        coeff[(e1, e2)] = F.mul(one - F.power(-e1 * k1), one - F.power(-e2 * k2))
    m = len(mats[(1, 1)])
    upper = [dict() for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            val = F.zero
            for key, A in mats.items():
                if A[i][j]:
                    val += A[i][j] * coeff[key]
            val = F.reduce(val)
            if val != 0:
                upper[i][j] = val
    return hermitian_signature(CycloHermitian(F, m, upper))
