"""Casson-Gordon signatures of the double branched cover.

Three independent routes are available:

``satellite``
    sigma(A) - sigma_L(w^k) - 2k(d-k)/d^2 * sum m_i m_j a_ij for a cabled
    surgery link L, evaluated at any k.
``colored``
    sigma(A) - (colored signature - sum_{i<j} a_ij) - 2/d^2 * sum (d - m_i) m_j a_ij,
    which needs every meridian image to be a unit and gives k = 1.
``closed``
    explicit formulas for special character shapes, plus the f(chi) form.

Characters are canonical ODD4 characters ``(eps, a, b, c)`` modulo d.
Routes that only produce sigma_1 obtain sigma_k as sigma_1(k chi).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .double_cover import Character, Kind, presentation, restrict
from .exact_math import symmetric_signature
from .link_sig import (
    CableSpec,
    SatelliteLink,
    UnsupportedCableShape,
    colored_signature,
    satellite_sigma,
)
from .pretzel import PretzelKnot

# Sign of the full-support closed form when d divides p, q and r, fixed
# against the satellite route: sigma_1 = sigma(A) + SIGN * 2/d^2 * sum a(d-a)p.
CLOSED_FORM_SIGN = -1

# Largest braid (in crossings) the coherent satellite recipe will build.
MAX_SATELLITE_CROSSINGS = 4000


class NonUnitImage(ValueError):
    """The colored route needs every meridian image to be a unit."""


class CaseMismatch(ValueError):
    """No closed form covers this knot and character."""


class RouteDisagreement(AssertionError):
    """Two exact routes produced different values."""


@dataclass(frozen=True)
class SigmaValue:
    value: Fraction
    route: str
    k: int
    chi: Character
    detail: str = ""

    def __str__(self):
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class FChi:
    value: int
    components: Tuple[int, int, int, int, int]  # (a, b, c, eps, d)


def _unit(x: int, d: int) -> bool:
    return x % d != 0 and gcd(x, d) == 1


def _check(value: Fraction, d: int) -> Fraction:
    assert (value * d * d).denominator == 1, f"denominator of {value} does not divide {d}^2"
    return value


def _quad(A, m) -> int:
    n = len(A)
    return sum(m[i] * m[j] * A[i][j] for i in range(n) for j in range(n))


# --- satellite route ---------------------------------------------------------


def _odd4_satellite(K: PretzelKnot, chi: Character, k: int) -> Fraction:
    d = chi.modulus
    pres = presentation(K, Kind.ODD4)
    lifts = chi.abc
    cables = (CableSpec(0, 1, 1),) + tuple(CableSpec(x, m) for x, m in zip(K.params, lifts))
    sL = satellite_sigma(SatelliteLink("odd4", cables), d, k)
    m = (0,) + tuple(lifts)
    return symmetric_signature(pres.matrix) - sL - Fraction(2 * k * (d - k), d * d) * _quad(pres.matrix, m)


def _reduced_satellite(K: PretzelKnot, chi: Character, k: int, pivot: int, rep: str) -> Fraction:
    d = chi.modulus
    pres = presentation(K, Kind.REDUCED, pivot)
    x1, x2 = restrict(chi, pres).images
    t = pres.pivot_value
    if rep == "antiparallel":
        if (x1, x2) == (1, d - 1):
            m = (1, -1)
        elif (x1, x2) == (d - 1, 1):
            m = (-1, 1)
        else:
            raise UnsupportedCableShape("antiparallel representative needs images (1, -1)")
        cables = tuple(CableSpec(f, 1, 0) if mi > 0 else CableSpec(f, 0, 1) for f, mi in zip(pres.framings, m))
    else:
        if x1 == 0 or x2 == 0:
            raise UnsupportedCableShape("coherent cables must be non-empty")
        if rep == "coherent-reversed" or (rep == "coherent-short" and x1 + x2 > d):
            # every strand reversed: lifts x - d, fewer strands when x1 + x2 > d
            m = (x1 - d, x2 - d)
            cables = tuple(CableSpec(f, 0, -mi) for f, mi in zip(pres.framings, m))
        else:
            m = (x1, x2)
            cables = tuple(CableSpec(f, mi, 0) for f, mi in zip(pres.framings, m))
    sL = satellite_sigma(SatelliteLink("torus2", cables, t), d, k)
    return symmetric_signature(pres.matrix) - sL - Fraction(2 * k * (d - k), d * d) * _quad(pres.matrix, m)


def _coherent_size(K: PretzelKnot, chi: Character, pivot: int) -> int:
    """Crossings of the braid for the shorter coherent representative."""
    i, j = [s for s in range(3) if s != pivot]
    m1, m2 = chi.abc[i], chi.abc[j]
    if m1 + m2 > chi.modulus:
        m1, m2 = chi.modulus - m1, chi.modulus - m2
    M = m1 + m2
    P = K.params
    return M * (M - 1) * abs(P[pivot]) + m1 * (m1 - 1) * abs(P[i]) + m2 * (m2 - 1) * abs(P[j])


def satellite_options(K: PretzelKnot, chi: Character, k: int = 1):
    """Applicable satellite recipes as (name, pivot) pairs, cheapest first."""
    d = chi.modulus
    opts = []
    if chi.eps == 0 and all(chi.abc) and all((x * k) % d for x in chi.abc):
        opts.append(("odd4", None))
    for pivot in range(3):
        i, j = [s for s in range(3) if s != pivot]
        x1, x2 = chi.abc[i], chi.abc[j]
        if (x1, x2) in ((1, d - 1), (d - 1, 1)):
            opts.append(("antiparallel", pivot))
    coherent = [(_coherent_size(K, chi, pv), pv) for pv in range(3)
                if all(chi.abc[s] for s in range(3) if s != pv)]
    for size, pv in sorted(coherent):
        if size <= MAX_SATELLITE_CROSSINGS:
            opts.append(("coherent", pv))
    return opts


def sigma_satellite(K: PretzelKnot, chi: Character, k: int,
                    representative: Optional[str] = None, pivot: Optional[int] = None) -> SigmaValue:
    """sigma_k by the satellite formula.

    ``representative`` may force "odd4", "antiparallel" or "coherent";
    ``pivot`` then picks the reduced model.
    """
    d = chi.modulus
    if chi.is_trivial:
        raise UnsupportedCableShape("trivial character: every cable would be empty")
    if not 0 < k < d:
        raise ValueError("need 0 < k < d")
    opts = satellite_options(K, chi, k)
    if representative is not None:
        opts = [o for o in opts if o[0] == representative and (pivot is None or o[1] == pivot)]
        if not opts and representative == "coherent" and pivot is not None:
            opts = [("coherent", pivot)]
    if not opts:
        raise UnsupportedCableShape(f"no satellite recipe for {K} with {chi}")
    name, pv = opts[0]
    if name == "odd4":
        value = _odd4_satellite(K, chi, k)
    else:
        value = _reduced_satellite(K, chi, k, pv, "coherent-short" if name == "coherent" else name)
    return SigmaValue(_check(value, d), "satellite", k, chi, name if pv is None else f"{name}/pivot {pv}")


# --- colored route -----------------------------------------------------------


def _lift(x: int, d: int) -> int:
    return x % d


def sigma_colored(K: PretzelKnot, chi: Character, k: int = 1,
                  model: str = "auto", pivot: Optional[int] = None) -> SigmaValue:
    """sigma_k as sigma_1(k chi) by the colored-signature formula."""
    d = chi.modulus
    psi = chi.scaled(k)
    if model in ("auto", "odd4") and all(_unit(x, d) for x in psi.images):
        pres = presentation(K, Kind.ODD4)
        A = pres.matrix
        m = [_lift(x, d) for x in psi.images]
        hopf_sum = sum(A[i][j] for i in range(4) for j in range(i + 1, 4))
        corr = sum((d - m[i]) * m[j] * A[i][j] for i in range(4) for j in range(4))
        value = symmetric_signature(A) - (0 - hopf_sum) - Fraction(2 * corr, d * d)
        return SigmaValue(_check(value, d), "colored", k, chi, "odd4")
    if model == "odd4":
        raise NonUnitImage(f"{psi} has a non-unit image on the odd4 model")
    pivots = [pivot] if pivot is not None else list(range(3))
    usable = []
    for pv in pivots:
        i, j = [s for s in range(3) if s != pv]
        if _unit(psi.abc[i], d) and _unit(psi.abc[j], d):
            usable.append((abs(K.params[pv]), pv))
    if not usable:
        raise NonUnitImage(f"{psi} has no reduced model with unit images")
    _, pv = min(usable)
    pres = presentation(K, Kind.REDUCED, pv)
    A = pres.matrix
    m = [_lift(x, d) for x in restrict(psi, pres).images]
    t = pres.pivot_value
    sL = colored_signature(t, d, m[0], m[1])
    corr = sum((d - m[i]) * m[j] * A[i][j] for i in range(2) for j in range(2))
    value = symmetric_signature(A) - (sL - t) - Fraction(2 * corr, d * d)
    return SigmaValue(_check(value, d), "colored", k, chi, f"reduced/pivot {pv}")


# --- closed forms ------------------------------------------------------------


def f_chi(K: PretzelKnot, chi: Character) -> FChi:
    """f(chi) = (d-eps)(a+b+c) + (d-a)(ap+eps) + (d-b)(bq+eps) + (d-c)(cr+eps)."""
    d = chi.modulus
    eps, a, b, c = chi.images
    if not all(chi.images):
        raise ValueError("f(chi) needs all four images nonzero")
    p, q, r = K.params
    if any(x % d == 0 for x in (p, q, r)):
        raise ValueError("f(chi) needs d to divide none of p, q, r")
    value = ((d - eps) * (a + b + c) + (d - a) * (a * p + eps)
             + (d - b) * (b * q + eps) + (d - c) * (c * r + eps))
    return FChi(value, (a, b, c, eps, d))


def sigma_fchi(K: PretzelKnot, chi: Character, k: int = 1) -> SigmaValue:
    """sigma_1 = sigma(A) + 3 - 2 f(chi)/d^2 (sigma(A) = 0 in the scan range)."""
    psi = chi.scaled(k)
    d = chi.modulus
    if not all(_unit(x, d) for x in psi.images):
        raise NonUnitImage("the f(chi) form needs unit images")
    f = f_chi(K, psi)
    sA = symmetric_signature(presentation(K, Kind.ODD4).matrix)
    return SigmaValue(_check(sA + 3 - Fraction(2 * f.value, d * d), d), "closed", k, chi, "f(chi)")


def case_one_slots(K: PretzelKnot, d: int):
    """Slots (i, j, pivot) with d | P_i, P_j and d not dividing the pivot."""
    P = K.params
    for pv in range(3):
        i, j = [s for s in range(3) if s != pv]
        if P[i] % d == 0 and P[j] % d == 0 and P[pv] % d:
            return i, j, pv
    return None


def sigma_closed_form(K: PretzelKnot, chi: Character, k: int) -> SigmaValue:
    """Closed forms for two character shapes.

    * d divides two parameters but not the third (the pivot), chi is
      x(1, -1) on the other two: sigma(A) - sign(pivot) - 2 (u+v) j(d-j) / d^2
      with j = kx mod d.
    * d divides p, q, r and a, b, c are all nonzero: sigma(A) + SIGN * 2/d^2
      * sum a(d-a)p with a, b, c taken for k chi.
    """
    d = chi.modulus
    P = K.params
    slots = case_one_slots(K, d)
    if slots is not None:
        i, j, pv = slots
        x, y = chi.abc[i], chi.abc[j]
        if x and (x + y) % d == 0 and chi.abc[pv] == 0:
            jj = (k * x) % d
            pres = presentation(K, Kind.REDUCED, pv)
            t = P[pv]
            sign_t = (t > 0) - (t < 0)
            value = (symmetric_signature(pres.matrix) - sign_t
                     - Fraction(2 * (P[i] + P[j]) * jj * (d - jj), d * d))
            return SigmaValue(_check(value, d), "closed", k, chi, "two parameters divisible")
    if all(x % d == 0 for x in P) and all(chi.abc):
        psi = chi.scaled(k)
        s = sum(a * (d - a) * x for a, x in zip(psi.abc, P))
        sA = symmetric_signature(presentation(K, Kind.ODD4).matrix)
        value = sA + CLOSED_FORM_SIGN * Fraction(2 * s, d * d)
        return SigmaValue(_check(value, d), "closed", k, chi, "all parameters divisible")
    raise CaseMismatch(f"no closed form for {K} with {chi}")


# --- dispatch ----------------------------------------------------------------


def all_routes(K: PretzelKnot, chi: Character, k: int) -> List[SigmaValue]:
    """Every route that applies to (K, chi, k)."""
    out = []
    for fn in (sigma_satellite, sigma_colored, sigma_closed_form, sigma_fchi):
        try:
            out.append(fn(K, chi, k))
        except (UnsupportedCableShape, NonUnitImage, CaseMismatch, ValueError):
            continue
    return out


def sigma(K: PretzelKnot, chi: Character, k: int, route: str = "auto", verify: bool = False) -> SigmaValue:
    """sigma_k(chi) by the requested route, or the cheapest exact one.

    With ``verify`` every applicable route is evaluated and compared.
    """
    if route == "satellite":
        return sigma_satellite(K, chi, k)
    if route == "colored":
        return sigma_colored(K, chi, k)
    if route == "closed":
        try:
            return sigma_closed_form(K, chi, k)
        except CaseMismatch:
            return sigma_fchi(K, chi, k)
    if route != "auto":
        raise ValueError(f"unknown route {route}")
    if verify:
        vals = all_routes(K, chi, k)
        if not vals:
            raise UnsupportedCableShape(f"no route applies to {K} with {chi}")
        if len({v.value for v in vals}) > 1:
            raise RouteDisagreement(f"{K}, {chi}, k={k}: " + ", ".join(f"{v.route}={v}" for v in vals))
        return vals[0]
    d = chi.modulus
    psi = chi.scaled(k)
    if all(_unit(x, d) for x in psi.images):
        return sigma_colored(K, chi, k, model="odd4")
    try:
        return sigma_closed_form(K, chi, k)
    except CaseMismatch:
        pass
    try:
        return sigma_colored(K, chi, k)
    except NonUnitImage:
        return sigma_satellite(K, chi, k)


def sigma_all_k(K: PretzelKnot, chi: Character) -> List[SigmaValue]:
    """sigma_k for k = 1..d-1, directly at w^k, checked against sigma_1(k chi)."""
    d = chi.modulus
    direct = [sigma_satellite(K, chi, k) for k in range(1, d)]
    via_multiples = []
    for k in range(1, d):
        psi = chi.scaled(k)
        if psi.is_trivial:
            continue
        via_multiples.append(sigma(K, psi, 1).value)
    if all(chi.scaled(k).is_onto for k in range(1, d)):
        if Counter(v.value for v in direct) != Counter(via_multiples):
            raise RouteDisagreement(f"sigma_k and sigma_1(k chi) collections differ for {K}, {chi}")
    return direct
