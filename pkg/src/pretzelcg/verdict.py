"""The slice-obstruction pipeline for a single knot and for parameter scans.

Order of the checks: the Lecuona family (even class), ribbon families,
trivial Alexander polynomial, classical gates, then the Casson-Gordon
search.  A knot is obstructed at a prime d when every metabolizer of the
d-primary linking form is killed by some character vanishing on it, that
is, some |sigma_1(chi)| exceeds dim H_1^chi + 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import factorint

from . import cg
from .double_cover import (
    CapExceeded,
    Character,
    DEFAULT_CAP,
    Kind,
    characters,
    cover_h1_dim,
    homology,
    linking_form,
    presentation,
    primary_metabolizers,
    vanishes_on,
)
from .pretzel import (
    ClassicalInvariants,
    LecuonaMember,
    PretzelKnot,
    RibbonForm,
    classical,
    lecuona_family,
    normal_form,
    ribbon_form,
)


class Status(str, Enum):
    RIBBON = "ribbon"
    FREEDMAN = "freedman_slice"
    NOT_ALG_SLICE = "not_alg_slice"
    CG_OBSTRUCTED = "cg_obstructed"
    LECUONA = "lecuona_exceptional"
    INCONCLUSIVE = "inconclusive"
    NOT_ATTEMPTED = "not_attempted"


@dataclass(frozen=True)
class Witness:
    metabolizer: str
    chi: Character
    k: int
    sigma: Fraction
    bound: int

    @property
    def d(self) -> int:
        return self.chi.modulus


@dataclass(frozen=True)
class Verdict:
    status: Status
    reason: str = ""
    form: Optional[RibbonForm] = None
    witnesses: Tuple[Witness, ...] = ()
    lecuona: Optional[LecuonaMember] = None
    annotation: str = ""


@dataclass(frozen=True)
class Evaluation:
    """One sigma evaluation made during the search (kept for the census checks)."""

    chi: Character
    k: int
    sigma: Fraction
    bound: int
    route: str
    metabolizers: Tuple[str, ...]


@dataclass
class Options:
    max_prime_power: int = 9
    cap: int = DEFAULT_CAP
    verify: bool = False


@dataclass
class AnalysisResult:
    knot: PretzelKnot
    invariants: ClassicalInvariants
    verdict: Verdict
    cases: Dict[int, str] = field(default_factory=dict)
    metabolizer_counts: Dict[int, int] = field(default_factory=dict)
    character_counts: Dict[int, int] = field(default_factory=dict)
    evaluations: List[Evaluation] = field(default_factory=list)
    seconds: float = 0.0


def case_dispatch(K: PretzelKnot, d: int) -> str:
    """Label of the case analysis that covers the prime d (informational)."""
    if not K.is_odd:
        return "Even"
    p, q, r = normal_form(K).params
    div = [x % d == 0 for x in (p, q, r)]
    if all(div):
        return "Case3"
    if div[0] and div[1]:
        return "Case1"
    if sum(div) == 2:
        return "Case2"
    if (p - q) % d == 0:
        return "PowerOf3" if d == 3 else "Case6"
    # the normal form lists p <= q, and only the smaller one is weighted by 4
    if r == -(4 * p + q):
        return "Case5"
    return "Case4"


def order9_applies(K: PretzelKnot) -> bool:
    """Characters of order 9 are tried only in the residual power-of-3 case."""
    D = isqrt(abs(K.sigma2))
    if D < 9 or set(factorint(D)) != {3}:
        return False
    p, q, r = normal_form(K).params
    if any(gcd(x, y) != 1 for x, y in itertools.combinations((p, q, r), 2)):
        return False
    return (p - q) % 3 == 0


def _nontrivial_knot(K: PretzelKnot) -> bool:
    return all(abs(x) >= 2 for x in K.params)


class _Search:
    """Casson-Gordon search for one knot; caches sigma and bounds per character."""

    def __init__(self, K: PretzelKnot, options: Options, result: AnalysisResult):
        self.K = K
        self.options = options
        self.result = result
        self.pres = presentation(K, Kind.ODD4)
        self.group = homology(self.pres)
        self.form = linking_form(self.pres)
        self._sigma: Dict[Character, cg.SigmaValue] = {}
        self._bound: Dict[Character, int] = {}

    def sigma(self, chi: Character) -> cg.SigmaValue:
        if chi not in self._sigma:
            self._sigma[chi] = cg.sigma(self.K, chi, 1, verify=self.options.verify)
        return self._sigma[chi]

    def bound(self, chi: Character) -> int:
        if chi not in self._bound:
            self._bound[chi] = cover_h1_dim(self.K, chi) + 1
        return self._bound[chi]

    def at(self, m: int) -> Optional[List[Witness]]:
        """Witnesses killing every metabolizer of the m-primary part, or None."""
        ell = min(factorint(m))
        mets = primary_metabolizers(self.group, self.form, ell)
        self.result.metabolizer_counts[m] = len(mets)
        chars = [c for c in characters(self.pres, m) if c.is_onto and not c.is_trivial]
        self.result.character_counts[m] = len(chars)
        if not mets:
            return []
        seen: Dict[Character, List[str]] = {}
        witnesses = []
        killed_all = True
        for M in mets:
            hit = None
            for chi in chars:
                if not vanishes_on(chi, M):
                    continue
                seen.setdefault(chi, []).append(M.label)
                s = self.sigma(chi)
                b = self.bound(chi)
                if abs(s.value) > b:
                    hit = Witness(M.label, chi, 1, s.value, b)
                    break
            if hit is None:
                killed_all = False
            else:
                witnesses.append(hit)
        for chi, labels in seen.items():
            if chi in self._sigma:
                s = self._sigma[chi]
                self.result.evaluations.append(
                    Evaluation(chi, 1, s.value, self._bound[chi], s.route, tuple(labels)))
        return witnesses if killed_all else None


def analyze(K: PretzelKnot, options: Optional[Options] = None) -> AnalysisResult:
    """Run the full pipeline on K."""
    import time

    options = options or Options()
    t0 = time.perf_counter()
    inv = classical(K)
    result = AnalysisResult(K, inv, Verdict(Status.INCONCLUSIVE))

    def done(v: Verdict) -> AnalysisResult:
        result.verdict = v
        result.seconds = time.perf_counter() - t0
        return result

    form = ribbon_form(K)
    member = None if K.is_odd else lecuona_family(K)
    if member is not None and (form is None or form.via is not None):
        disp = "unresolved residue" if member.unresolved else "not algebraically slice (resolved residue)"
        note = f"2-bridge, same knot as {form.via}" if form is not None else ""
        return done(Verdict(Status.LECUONA, disp, lecuona=member, annotation=note))
    if form is not None:
        reason = "ribbon family" if form.via is None else f"ribbon family via the 2-bridge knot {form.via}"
        return done(Verdict(Status.RIBBON, reason, form=form))
    if K.is_odd and inv.alexander == (1,):
        note = "not smoothly slice (nontrivial knot with trivial Alexander polynomial)" \
            if _nontrivial_knot(K) else "unknot"
        return done(Verdict(Status.FREEDMAN, "trivial Alexander polynomial", annotation=note))
    if K.is_odd and not inv.is_alg_slice:
        return done(Verdict(Status.NOT_ALG_SLICE, inv.reason))
    det = inv.determinant
    if isqrt(det) ** 2 != det:
        return done(Verdict(Status.NOT_ALG_SLICE, "determinant is not a square"))
    D = isqrt(det)
    if D <= 1:
        return done(Verdict(Status.INCONCLUSIVE, "no prime divides the determinant"))
    if det > options.cap:
        return done(Verdict(Status.NOT_ATTEMPTED, f"|H_1| = {det} exceeds the enumeration cap"))
    search = _Search(K, options, result)
    powers = sorted(factorint(D))
    for d in powers:
        result.cases[d] = case_dispatch(K, d)
    if 9 <= options.max_prime_power and order9_applies(K):
        powers.append(9)
        result.cases[9] = "PowerOf3/order9"
    for m in powers:
        try:
            wit = search.at(m)
        except CapExceeded as exc:
            return done(Verdict(Status.NOT_ATTEMPTED, str(exc)))
        if wit is None:
            continue
        if not wit:
            return done(Verdict(Status.NOT_ALG_SLICE, f"linking form has no metabolizer at {m}"))
        return done(Verdict(Status.CG_OBSTRUCTED, f"every metabolizer killed at d={m}", witnesses=tuple(wit)))
    return done(Verdict(Status.INCONCLUSIVE, "some metabolizer survives at every prime power tried"))


def verify_witness(K: PretzelKnot, w: Witness) -> bool:
    """Recompute a witness from scratch with every route and compare."""
    s = cg.sigma(K, w.chi, w.k, verify=True).value
    b = cover_h1_dim(K, w.chi) + 1
    return s == w.sigma and b == w.bound and abs(s) > b


# --- scans -------------------------------------------------------------------


def odd_knots(max_param: int) -> List[PretzelKnot]:
    """Odd-class normal forms with every |parameter| <= max_param."""
    vals = range(1, max_param + 1, 2)
    out = []
    for p in vals:
        for q in vals:
            if q < p:
                continue
            for r in itertools.chain((-x for x in vals), (x for x in vals if x >= q)):
                out.append(PretzelKnot(p, q, r))
    return out


def even_knots(max_param: int) -> List[PretzelKnot]:
    """Even-class normal forms with every |parameter| <= max_param (no zeros)."""
    seen = set()
    out = []
    rng = [x for x in range(-max_param, max_param + 1) if x]
    for t in itertools.combinations_with_replacement(rng, 3):
        try:
            K = PretzelKnot(*t)
        except ValueError:
            continue
        if K.is_odd:
            continue
        N = normal_form(K)
        if N.params not in seen:
            seen.add(N.params)
            out.append(N)
    return sorted(out, key=lambda k: k.params)


def odd_scan_range(q_max: int = 33, r_min: int = -121) -> List[PretzelKnot]:
    """Odd P(p, q, r) with 0 < p <= q <= q_max, r_min <= r < 0."""
    return [PretzelKnot(p, q, r)
            for p in range(1, q_max + 1, 2)
            for q in range(p, q_max + 1, 2)
            for r in range(-1, r_min - 1, -2)]


def even_candidates(p_max: int = 15, q_max: int = 60) -> List[PretzelKnot]:
    """Even P(-p, p+2, q) with p odd in (0, p_max] and q even in (0, q_max]."""
    return [PretzelKnot(-p, p + 2, q) for p in range(1, p_max + 1, 2) for q in range(2, q_max + 1, 2)]


def _analyze_one(args):
    K, options = args
    return analyze(K, options)


def scan(knots: Iterable[PretzelKnot], options: Optional[Options] = None, jobs: int = 1) -> List[AnalysisResult]:
    """Analyze many knots; the output order follows the input order."""
    options = options or Options()
    knots = list(knots)
    if jobs <= 1:
        return [analyze(K, options) for K in knots]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_analyze_one, [(K, options) for K in knots], chunksize=8))
