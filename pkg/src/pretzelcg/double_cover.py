"""Surgery models of the double branched cover and their homological data.

Three framed-link models are provided:

* ``Kind.ODD4``: a 0-framed unknot with three meridional unknots framed
  p, q, r.  It presents the cover for every pretzel knot.
* ``Kind.REDUCED``: slide two of the parameter curves over the third (the
  pivot) and cancel the 0-framed curve.  What remains is T(2, 2 pivot)
  with linking matrix [[u + t, t], [t, v + t]] where t is the pivot.
* ``Kind.EVEN2``: the reduced model of an even knot whose two odd
  parameters sum to +-2, pivoting on the odd parameter of smaller size.

Characters are recorded by their values on meridians.  The canonical
form used across the package is the ODD4 one, ``(eps, a, b, c)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, prod
from typing import List, Optional, Sequence, Tuple

from flint import fmpz_mat
from sympy import factorint

from .exact_math import determinant, rational_inverse, smith_normal_form
from .pretzel import PretzelKnot

DEFAULT_CAP = 10**6


class Kind(str, Enum):
    ODD4 = "odd4"
    REDUCED = "reduced"
    EVEN2 = "even2"


class CapExceeded(RuntimeError):
    """Metabolizer enumeration was refused because the group is too large."""


class InvalidCharacter(ValueError):
    """Meridian images that do not define a homomorphism on H_1."""


SLOT_NAMES = ("mu_p", "mu_q", "mu_r")


@dataclass(frozen=True)
class SurgeryPresentation:
    knot: PretzelKnot
    kind: Kind
    matrix: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]
    framings: Tuple[int, ...]
    link_model: str
    # parameter slot (0, 1, 2) carried by each meridian; None for the central curve
    slots: Tuple[Optional[int], ...]
    pivot: Optional[int] = None

    @property
    def pivot_value(self) -> Optional[int]:
        return None if self.pivot is None else self.knot.params[self.pivot]


def even2_pivot(K: PretzelKnot) -> int:
    """Slot of the pivot for an even knot P(-p, p+-2, q), up to permutation."""
    odd = [i for i, x in enumerate(K.params) if x % 2]
    if len(odd) != 2 or abs(sum(K.params[i] for i in odd)) != 2:
        raise ValueError(f"{K} is not of the form P(-p, p+-2, q)")
    return min(odd, key=lambda i: (abs(K.params[i]), i))


def presentation(K: PretzelKnot, kind: Kind = Kind.ODD4, pivot: Optional[int] = None) -> SurgeryPresentation:
    """Framed-link presentation of the double branched cover of K.

    ``pivot`` is the parameter slot the reduced model slides over; it
    defaults to r for the reduced model and is forced for ``Kind.EVEN2``.
    """
    kind = Kind(kind)
    p, q, r = K.params
    if kind is Kind.ODD4:
        A = ((0, 1, 1, 1), (1, p, 0, 0), (1, 0, q, 0), (1, 0, 0, r))
        return SurgeryPresentation(K, kind, A, ("mu_0",) + SLOT_NAMES, (0, p, q, r),
                                   "0-framed unknot with three meridian circles", (None, 0, 1, 2))
    if kind is Kind.EVEN2:
        if K.is_odd:
            raise ValueError("the even model needs an even-class knot")
        pivot = even2_pivot(K)
    elif pivot is None:
        pivot = 2
    if pivot not in (0, 1, 2):
        raise ValueError("pivot must be a slot index 0, 1 or 2")
    i, j = [s for s in range(3) if s != pivot]
    t, u, v = K.params[pivot], K.params[i], K.params[j]
    A = ((u + t, t), (t, v + t))
    return SurgeryPresentation(K, kind, A, (SLOT_NAMES[i], SLOT_NAMES[j]), (u + t, v + t),
                               f"T(2,{2 * t})", (i, j), pivot)


# --- homology ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """coker(A) as a product of cyclic groups.

    ``generator_map[j]`` is the image of meridian j in invariant-factor
    coordinates; ``to_meridians`` maps invariant-factor coordinates back
    to a meridian-coordinate representative.
    """

    invariant_factors: Tuple[int, ...]
    generator_map: Tuple[Tuple[int, ...], ...]
    to_meridians: Tuple[Tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def meridian_vector(self, coords: Sequence[int]) -> Tuple[int, ...]:
        n = len(self.to_meridians[0]) if self.to_meridians else 0
        return tuple(sum(c * row[j] for c, row in zip(coords, self.to_meridians)) for j in range(n))

    def rank_mod(self, ell: int) -> int:
        return sum(1 for d in self.invariant_factors if d % ell == 0)


def homology(pres: SurgeryPresentation) -> FiniteAbelianGroup:
    """H_1 of the cover as coker(A), via the Smith form."""
    A = pres.matrix
    if determinant(A) == 0:
        raise ValueError("linking matrix is singular")
    snf = smith_normal_form(A)
    diag = snf.invariant_factors()
    U = snf.left
    Uinv = [[int(x) for x in row] for row in rational_inverse(U)]
    keep = [i for i, d in enumerate(diag) if d != 1]
    factors = tuple(diag[i] for i in keep)
    n = len(A)
    gen_map = tuple(tuple(U[i][j] % diag[i] for i in keep) for j in range(n))
    # invariant coordinate i corresponds to column i of U^-1
    to_mer = tuple(tuple(Uinv[j][i] for j in range(n)) for i in keep)
    return FiniteAbelianGroup(factors, gen_map, to_mer)


@dataclass(frozen=True)
class LinkingForm:
    """-A^-1, read modulo 1 on meridian coordinates."""

    matrix: Tuple[Tuple[Fraction, ...], ...]

    @property
    def table(self):
        return tuple(tuple(x % 1 for x in row) for row in self.matrix)

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        total = sum(xi * yj * self.matrix[i][j]
                    for i, xi in enumerate(x) if xi
                    for j, yj in enumerate(y) if yj)
        return Fraction(total) % 1


def linking_form(pres: SurgeryPresentation) -> LinkingForm:
    inv = rational_inverse(pres.matrix)
    return LinkingForm(tuple(tuple(-x for x in row) for row in inv))


# --- characters --------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """A homomorphism H_1 -> Z_m given by its values on meridians."""

    modulus: int
    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(x % self.modulus for x in self.images))

    @property
    def is_trivial(self) -> bool:
        return not any(self.images)

    @property
    def order(self) -> int:
        g = self.modulus
        for x in self.images:
            g = gcd(g, x)
        return self.modulus // g

    @property
    def is_onto(self) -> bool:
        return self.order == self.modulus

    def scaled(self, k: int) -> "Character":
        return Character(self.modulus, tuple(k * x for x in self.images))

    # Odd4 names
    @property
    def eps(self) -> int:
        return self.images[0]

    @property
    def abc(self) -> Tuple[int, int, int]:
        return tuple(self.images[1:4])

    def __str__(self):
        return ",".join(map(str, self.images)) + f" mod {self.modulus}"


def is_character(pres: SurgeryPresentation, images: Sequence[int], m: int) -> bool:
    return all(sum(a * x for a, x in zip(row, images)) % m == 0 for row in pres.matrix)


def characters(pres: SurgeryPresentation, m: int) -> List[Character]:
    """All homomorphisms coker(A) -> Z_m, trivial one included.

    A solution v of A v = 0 mod m is U^T w where w_i d_i = 0 mod m, so the
    enumeration runs over the Smith coordinates.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    snf = smith_normal_form(pres.matrix)
    diag = snf.invariant_factors()
    U = snf.left
    n = len(pres.matrix)
    ranges = []
    for d in diag:
        g = gcd(m, d)  # d = 0 would give a free factor; det != 0 rules it out
        ranges.append([(m // g) * s for s in range(g)])
    out = set()
    for w in itertools.product(*ranges):
        v = tuple(sum(U[i][j] * w[i] for i in range(n)) % m for j in range(n))
        out.add(v)
    chars = [Character(m, v) for v in sorted(out)]
    assert all(is_character(pres, c.images, m) for c in chars)
    return chars


def odd4_character(K: PretzelKnot, m: int, images: Sequence[int], pres: Optional[SurgeryPresentation] = None) -> Character:
    """Canonical ODD4 character from meridian images on any model.

    ``images`` may be the full ODD4 tuple ``(eps, a, b, c)``, the triple
    ``(a, b, c)``, or the two images on the non-pivot meridians of a
    reduced model ``pres``.
    """
    p, q, r = K.params
    images = [int(x) for x in images]
    if len(images) == 4:
        full = images
    elif len(images) == 3:
        a, b, c = images
        full = [-a * p, a, b, c]
    elif len(images) == 2:
        if pres is None or pres.pivot is None:
            raise InvalidCharacter("two images need a reduced model to refer to")
        abc = [0, 0, 0]
        i, j = pres.slots
        abc[i], abc[j] = images
        abc[pres.pivot] = -(images[0] + images[1])
        full = [-abc[i] * K.params[i]] + abc
    else:
        raise InvalidCharacter("expected 2, 3 or 4 images")
    odd4 = presentation(K, Kind.ODD4)
    if not is_character(odd4, full, m):
        raise InvalidCharacter(f"images {images} do not define a character mod {m} on {K}")
    return Character(m, tuple(full))


def restrict(chi: Character, pres: SurgeryPresentation) -> Character:
    """Images of a canonical ODD4 character on the meridians of ``pres``."""
    if pres.kind is Kind.ODD4:
        return chi
    return Character(chi.modulus, tuple(chi.images[1 + s] for s in pres.slots))


# --- metabolizers ------------------------------------------------------------


@dataclass(frozen=True)
class Metabolizer:
    """Isotropic subgroup of square-root order.

    ``prime`` is set for a primary metabolizer of the ``prime``-part and is
    None for a metabolizer of the whole group.
    """

    generators: Tuple[Tuple[int, ...], ...]
    meridian_generators: Tuple[Tuple[int, ...], ...]
    order: int
    prime: Optional[int] = None
    index: int = 0

    @property
    def label(self) -> str:
        tag = f"d{self.prime}" if self.prime else "global"
        return f"{tag}-M{self.index}"


def _valuation(n: int, ell: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _hnf_lattices(exps: Sequence[int], ell: int):
    """Upper-triangular HNF bases of lattices L with diag(ell^e) Z^r <= L <= Z^r
    and [Z^r : L] = ell^(sum(e)/2)."""
    r = len(exps)
    half = sum(exps) // 2
    for fs in itertools.product(*[range(e + 1) for e in exps]):
        if sum(fs) != half:
            continue
        diag = [ell**f for f in fs]
        slots = [(i, j) for i in range(r) for j in range(i + 1, r)]
        for offs in itertools.product(*[range(diag[j]) for _, j in slots]):
            H = [[0] * r for _ in range(r)]
            for i in range(r):
                H[i][i] = diag[i]
            for (i, j), x in zip(slots, offs):
                H[i][j] = x
            if all(_in_lattice(H, [ell**exps[k] * (c == k) for c in range(r)]) for k in range(r)):
                yield H


def _in_lattice(H, target) -> bool:
    """Is ``target`` an integer combination of the rows of upper-triangular H?"""
    t = list(target)
    for i in range(len(H)):
        if t[i] % H[i][i]:
            return False
        c = t[i] // H[i][i]
        t = [x - c * y for x, y in zip(t, H[i])]
    return not any(t)


def primary_metabolizers(group: FiniteAbelianGroup, form: LinkingForm, ell: int) -> List[Metabolizer]:
    """Metabolizers of the ``ell``-primary part of H_1."""
    idx = [i for i, d in enumerate(group.invariant_factors) if d % ell == 0]
    exps = [_valuation(group.invariant_factors[i], ell) for i in idx]
    if sum(exps) % 2:
        return []
    out = []
    for H in _hnf_lattices(exps, ell):
        gens = []
        for row in H:
            x = [0] * len(group.invariant_factors)
            for y, i, e in zip(row, idx, exps):
                d = group.invariant_factors[i]
                x[i] = (y * (d // ell**e)) % d
            if any(x):
                gens.append(tuple(x))
        mer = [group.meridian_vector(g) for g in gens]
        if all(form(a, b) == 0 for a, b in itertools.combinations_with_replacement(mer, 2)):
            out.append(Metabolizer(tuple(gens), tuple(mer), ell ** (sum(exps) // 2), ell, len(out)))
    return out


def metabolizers(group: FiniteAbelianGroup, form: LinkingForm, cap: int = DEFAULT_CAP) -> List[Metabolizer]:
    """All metabolizers of the linking form (products of primary ones)."""
    if group.order > cap:
        raise CapExceeded(f"|H_1| = {group.order} exceeds the enumeration cap {cap}")
    primes = sorted(factorint(group.order)) if group.order > 1 else []
    parts = [primary_metabolizers(group, form, ell) for ell in primes]
    out = []
    for combo in itertools.product(*parts):
        gens = tuple(g for M in combo for g in M.generators)
        mer = tuple(g for M in combo for g in M.meridian_generators)
        out.append(Metabolizer(gens, mer, prod(M.order for M in combo), None, len(out)))
    return out


def vanishes_on(chi: Character, M: Metabolizer) -> bool:
    """True when chi kills every generator of M."""
    return all(sum(a * x for a, x in zip(chi.images, g)) % chi.modulus == 0
               for g in M.meridian_generators)


# --- homology of cyclic covers -----------------------------------------------


def _relators(K: PretzelKnot):
    """Relators of pi_1 in the meridians (mu_p, mu_q, mu_r) -> generators 0, 1, 2."""
    p, q, r = K.params

    def power(g, n):
        return [(g, 1 if n > 0 else -1)] * abs(n)

    return [
        [(2, 1), (1, 1), (0, 1)],
        power(0, p) + power(1, -q),
        power(1, q) + power(2, -r),
    ]


def _cover_rank(K: PretzelKnot, values: Sequence[int], d: int) -> int:
    """Rational rank of H_1 of the d-fold cover given by generator values mod d.

    Reidemeister-Schreier: lift every generator to d arcs, contract a tree
    of arcs of a generator with unit value, abelianize the lifted relators.
    """
    unit = next((g for g in range(3) if gcd(values[g], d) == 1), None)
    if unit is None:
        raise ValueError("the cover is disconnected (no generator maps to a unit)")
    # normalize so the tree generator moves one sheet forward
    s = pow(values[unit], -1, d)
    vals = [(s * v) % d for v in values]
    tree = {unit * d + t for t in range(d - 1)}
    cols = [c for c in range(3 * d) if c not in tree]
    pos = {c: i for i, c in enumerate(cols)}
    rows = []
    for word in _relators(K):
        for start in range(d):
            vec = [0] * len(cols)
            t = start
            for g, e in word:
                if e > 0:
                    arc = g * d + t
                    t = (t + vals[g]) % d
                else:
                    t = (t - vals[g]) % d
                    arc = g * d + t
                if arc in pos:
                    vec[pos[arc]] += e
            assert t == start
            rows.append(vec)
    rank = fmpz_mat(rows).rank() if rows else 0
    return len(cols) - rank


def cover_h1_dim_rs(K: PretzelKnot, chi: Character) -> int:
    """dim of the chi-eigenspace of H_1(cover; C) by Reidemeister-Schreier.

    The d-fold cover splits rationally into eigenspaces for all d-th roots
    of unity; those of a fixed order e are Galois conjugate, so the
    primitive part is peeled off recursively from the quotient covers.
    """
    d = chi.modulus
    values = chi.abc
    dims = {}
    for e in sorted(x for x in range(1, d + 1) if d % x == 0):
        if e == 1:
            dims[1] = 0  # the double cover is a rational homology sphere
            continue
        total = _cover_rank(K, [v % e for v in values], e)
        rest = sum(_phi(f) * dims[f] for f in dims if e % f == 0)
        assert (total - rest) % _phi(e) == 0
        dims[e] = (total - rest) // _phi(e)
    return dims[d]


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def cover_h1_dim_closed(K: PretzelKnot, chi: Character) -> Optional[int]:
    """Closed form: 1 when d divides p, q, r and a, b, c are all nonzero.

    Returns None when no closed form applies (composite order with
    non-cyclic mod-d homology).
    """
    d = chi.modulus
    p, q, r = K.params
    primes = factorint(d)
    if len(primes) > 1:
        return None
    if primes[min(primes)] > 1:
        ell = min(primes)
        if homology(presentation(K, Kind.ODD4)).rank_mod(ell) <= 1:
            return 0  # the cover is again a rational homology sphere
        return None
    if all(x % d == 0 for x in (p, q, r)) and all(chi.abc):
        return 1
    return 0


def cover_h1_dim(K: PretzelKnot, chi: Character) -> int:
    """dim H_1^chi of the cover of the double branched cover, two ways."""
    if not chi.is_onto or chi.is_trivial:
        raise ValueError("character must be nontrivial and onto Z_d")
    rs = cover_h1_dim_rs(K, chi)
    closed = cover_h1_dim_closed(K, chi)
    if closed is not None and closed != rs:
        raise AssertionError(f"cover homology routes disagree on {K}, {chi}: {closed} vs {rs}")
    return rs
