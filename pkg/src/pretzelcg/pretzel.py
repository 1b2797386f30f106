"""Three-strand pretzel knots and their classical invariants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt
from typing import Optional, Tuple

from .exact_math import symmetric_signature


class KnotClass(str, Enum):
    ODD = "odd"
    EVEN = "even"
    NOT_A_KNOT = "not_a_knot"


class NotAKnot(ValueError):
    """Raised when a parameter triple describes a link with several components."""


def classify(p: int, q: int, r: int) -> KnotClass:
    """Parity class: all odd, exactly one even, or a link."""
    evens = sum(1 for x in (p, q, r) if x % 2 == 0)
    if evens == 0:
        return KnotClass.ODD
    if evens == 1:
        return KnotClass.EVEN
    return KnotClass.NOT_A_KNOT


@dataclass(frozen=True)
class PretzelKnot:
    """The pretzel knot P(p, q, r)."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        if classify(self.p, self.q, self.r) is KnotClass.NOT_A_KNOT:
            raise NotAKnot(f"P{self.params} is not a knot (more than one component)")

    @property
    def params(self) -> Tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @property
    def klass(self) -> KnotClass:
        return classify(*self.params)

    @property
    def is_odd(self) -> bool:
        return self.klass is KnotClass.ODD

    def mirror(self) -> "PretzelKnot":
        return PretzelKnot(-self.p, -self.q, -self.r)

    def permuted(self, order) -> "PretzelKnot":
        return PretzelKnot(*(self.params[i] for i in order))

    @property
    def sigma2(self) -> int:
        """pq + qr + pr, minus the order of H_1 of the double cover up to sign."""
        p, q, r = self.params
        return p * q + q * r + p * r

    def __str__(self):
        return "P(%d,%d,%d)" % self.params


def normal_form(K: PretzelKnot) -> PretzelKnot:
    """Representative of K up to reflection and permutation.

    Reflect so that at least two parameters are positive, then list the
    positive parameters in increasing order followed by the negative one
    (an all-positive triple is simply sorted).
    """
    params = K.params
    if sum(1 for x in params if x > 0) < 2:
        params = tuple(-x for x in params)
    pos = sorted(x for x in params if x > 0)
    rest = sorted(x for x in params if x <= 0)
    return PretzelKnot(*(pos + rest))


def seifert_matrix(K: PretzelKnot):
    """Genus-one Seifert matrix of an odd pretzel knot."""
    if not K.is_odd:
        raise ValueError("Seifert matrices are only provided for the odd class")
    p, q, r = K.params
    return [[(p + q) // 2, (q + 1) // 2], [(q - 1) // 2, (q + r) // 2]]


def determinant(K: PretzelKnot) -> int:
    """|H_1| of the double branched cover, taken from a surgery presentation."""
    from .double_cover import Kind, presentation
    from .exact_math import determinant as int_det

    det = abs(int_det(presentation(K, Kind.ODD4).matrix))
    assert det == abs(K.sigma2)
    return det


def _normalize_poly(coeffs) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    while c and c[0] == 0:
        c.pop(0)
    if c and c[-1] < 0:
        c = [-x for x in c]
    return tuple(c)


def alexander_polynomial(K: PretzelKnot) -> Tuple[int, ...]:
    """det(V - t V^T), coefficients from degree 0 upward, normalized."""
    (a, b), (c, d) = seifert_matrix(K)
    # (a - ta)(d - td) - (b - tc)(c - tb)
    lin = lambda x, y: (x, -y)  # x - t y
    def mul(u, v):
        return (u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[1] * v[1])
    first = mul(lin(a, a), lin(d, d))
    second = mul(lin(b, c), lin(c, b))
    return _normalize_poly(x - y for x, y in zip(first, second))


def fox_milnor_factor(delta: Tuple[int, ...]) -> Optional[Tuple[int, int]]:
    """Return (m, n) with delta = (mt - n)(nt - m) up to units, else None.

    Handles the genus-one case (degree at most two).  Delta = 1 returns (1, 0).
    """
    if delta == (1,):
        return (1, 0)
    if len(delta) != 3 or delta[0] != delta[2]:
        return None
    A, B = delta[2], delta[1]
    # (mt - n)(nt - m) = mn t^2 - (m^2 + n^2) t + mn
    s2, d2 = 2 * A - B, -B - 2 * A  # (m + n)^2, (m - n)^2
    if s2 < 0 or d2 < 0:
        return None
    s, d = isqrt(s2), isqrt(d2)
    if s * s != s2 or d * d != d2 or (s + d) % 2:
        return None
    m, n = (s + d) // 2, (s - d) // 2
    return (m, n) if m * n == A else None


@dataclass(frozen=True)
class ClassicalInvariants:
    determinant: int
    signature: Optional[int]
    alexander: Optional[Tuple[int, ...]]
    is_alg_slice: Optional[bool]
    reason: str


def classical(K: PretzelKnot) -> ClassicalInvariants:
    """Determinant, signature, Alexander polynomial and the algebraic gates.

    Even-class knots only get a determinant; the remaining fields are None
    because no Seifert surface is built for them.
    """
    det = determinant(K)
    if not K.is_odd:
        return ClassicalInvariants(det, None, None, None, "unavailable for the even class")
    V = seifert_matrix(K)
    sym = [[V[i][j] + V[j][i] for j in range(2)] for i in range(2)]
    sig = symmetric_signature(sym)
    delta = alexander_polynomial(K)
    if sig != 0:
        return ClassicalInvariants(det, sig, delta, False, f"signature {sig}")
    if isqrt(det) ** 2 != det:
        return ClassicalInvariants(det, sig, delta, False, "determinant is not a square")
    if fox_milnor_factor(delta) is None:
        return ClassicalInvariants(det, sig, delta, False, "Fox-Milnor condition fails")
    return ClassicalInvariants(det, sig, delta, True, "signature 0 and Fox-Milnor factorization")


@dataclass(frozen=True)
class RibbonForm:
    """A recognized ribbon family; ``q`` is the family parameter when relevant.

    ``via`` names the pretzel presentation matched through a 2-bridge
    equivalence, when the knot is not literally in the family.
    """

    form: str
    q: Optional[int] = None
    via: Optional[str] = None

    def __str__(self):
        return self.form if self.via is None else f"{self.form} [= {self.via}]"


def twobridge_fraction(K: PretzelKnot) -> Optional[Tuple[int, int]]:
    """(alpha, beta) with K = S(alpha, beta) when some parameter is +-1.

    P(e, x, y) with e = +-1 is the numerator closure of the rational
    tangles (ex + 1)/x and 1/y, i.e. S((ex+1)y + x, ex + 1).
    """
    for i, e in enumerate(K.params):
        if e in (1, -1):
            x, y = [K.params[j] for j in range(3) if j != i]
            alpha = (e * x + 1) * y + x
            beta = e * x + 1
            if alpha < 0:
                alpha, beta = -alpha, -beta
            return (alpha, beta % alpha) if alpha else (0, beta)
    return None


def same_twobridge(f: Tuple[int, int], g: Tuple[int, int]) -> bool:
    """Schubert: S(a, b) = S(a, b') up to mirror iff b' = +-b^(+-1) mod a."""
    (a, b), (a2, b2) = f, g
    if a != a2 or a <= 0:
        return False
    if a == 1:
        return True
    if gcd(b, a) != 1 or gcd(b2, a) != 1:
        return False
    binv = pow(b, -1, a)
    return b2 % a in {b % a, -b % a, binv, -binv % a}


def _literal_ribbon_form(params) -> Optional[RibbonForm]:
    if any(x + y == 0 for x, y in itertools.combinations(params, 2)):
        return RibbonForm("P(p,q,-q)")
    if all(x % 2 for x in params):
        for x, y, z in itertools.permutations(params):
            for s in (1, -1):
                if s * x == 1 and s * y > 0 and s * z == -s * y - 4:
                    return RibbonForm("P(1,q,-q-4)", s * y)
    return None


def ribbon_form(K: PretzelKnot) -> Optional[RibbonForm]:
    """Recognize the ribbon families up to permutation and reflection.

    A knot with a +-1 parameter is 2-bridge; it is also matched against
    the 2-bridge members of the families (P(1,s,-s) and P(1,s-2,-s-2)
    with the same determinant s^2), since one 2-bridge knot has several
    pretzel presentations.
    """
    form = _literal_ribbon_form(K.params)
    if form is not None:
        return form
    frac = twobridge_fraction(K)
    if frac is None:
        return None
    s = isqrt(frac[0])
    if s * s != frac[0] or s % 2 == 0:
        return None
    candidates = [(1, s, -s)]
    if s >= 3:
        candidates.append((1, s - 2, -s - 2))
    for params in candidates:
        other = PretzelKnot(*params)
        if same_twobridge(frac, twobridge_fraction(other)):
            base = _literal_ribbon_form(params)
            return RibbonForm(base.form, base.q, via=str(other))
    return None


UNRESOLVED_RESIDUES = frozenset({1, 11, 37, 47, 59})


@dataclass(frozen=True)
class LecuonaMember:
    a: int

    @property
    def residue(self) -> int:
        return self.a % 60

    @property
    def unresolved(self) -> bool:
        return self.residue in UNRESOLVED_RESIDUES


def lecuona_family(K: PretzelKnot) -> Optional[LecuonaMember]:
    """Detect +-P(a, -a-2, -(a+1)^2/2) with a > 0 odd, up to permutation."""
    for x, y, z in itertools.permutations(K.params):
        for s in (1, -1):
            a = s * x
            if a > 0 and a % 2 and s * y == -a - 2 and s * z == -((a + 1) ** 2) // 2:
                return LecuonaMember(a)
    return None


def twobridge_to_pretzel(a: int, b: int) -> PretzelKnot:
    """The pretzel form P(1, 2a-1, -(2b+1)) of the 2-bridge knot (4ab+1)/2a."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    return PretzelKnot(1, 2 * a - 1, -(2 * b + 1))
