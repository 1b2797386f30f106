"""Command-line front end: ``pretzelcg analyze|sigma|scan|fixtures|character-table``."""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from collections import Counter
from fractions import Fraction
from typing import List, Optional

from . import cg
from .double_cover import (
    CapExceeded,
    InvalidCharacter,
    Kind,
    characters,
    cover_h1_dim,
    even2_pivot,
    homology,
    linking_form,
    odd4_character,
    presentation,
    primary_metabolizers,
    vanishes_on,
)
from .exact_math import SignUndecidable
from .link_sig import UnsupportedCableShape
from .pretzel import NotAKnot, PretzelKnot
from .verdict import AnalysisResult, Options, Status, even_knots, odd_knots, scan

EXIT_OK, EXIT_FIXTURES, EXIT_INPUT, EXIT_INTERNAL, EXIT_IO = 0, 1, 2, 3, 4

CSV_HEADER = ("p,q,r,class,det,signature,alg_slice,ribbon_form,verdict,"
              "witness_d,witness_chi,witness_k,sigma,bound")

RIBBON_IDS = {"P(p,q,-q)": "p_q_negq", "P(1,q,-q-4)": "one_q_negq_minus4"}


def frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def report(res: AnalysisResult) -> dict:
    """JSON-ready report of an analysis."""
    K, inv, v = res.knot, res.invariants, res.verdict
    verdict = {"status": v.status.value, "reason": v.reason, "witnesses": [
        {"metabolizer": w.metabolizer, "d": w.d, "chi": list(w.chi.images), "k": w.k,
         "sigma": frac(w.sigma), "bound": w.bound}
        for w in v.witnesses]}
    if v.form is not None:
        verdict["form"] = v.form.form
        if v.form.via is not None:
            verdict["form_via"] = v.form.via
    if v.lecuona is not None:
        verdict["lecuona"] = {"a": v.lecuona.a, "residue": v.lecuona.residue,
                              "unresolved": v.lecuona.unresolved}
    if v.annotation:
        verdict["annotation"] = v.annotation
    alex = None if inv.alexander is None else list(inv.alexander)
    return {
        "input": {"p": K.p, "q": K.q, "r": K.r},
        "class": K.klass.value,
        "invariants": {
            "det": inv.determinant,
            "signature": inv.signature if inv.signature is not None else "unavailable",
            "alexander": alex if alex is not None else "unavailable",
            "alg_slice": inv.is_alg_slice if inv.is_alg_slice is not None else "unavailable",
        },
        "verdict": verdict,
        "cases": {str(d): label for d, label in res.cases.items()},
        "counts": {"metabolizers": {str(k): n for k, n in res.metabolizer_counts.items()},
                   "characters": {str(k): n for k, n in res.character_counts.items()}},
        "seconds": round(res.seconds, 6),
    }


def csv_row(res: AnalysisResult) -> str:
    K, inv, v = res.knot, res.invariants, res.verdict
    sig = "unavailable" if inv.signature is None else str(inv.signature)
    alg = "unavailable" if inv.is_alg_slice is None else str(inv.is_alg_slice).lower()
    form = RIBBON_IDS[v.form.form] if v.form is not None else ""
    w = v.witnesses[0] if v.witnesses else None
    cells = [K.p, K.q, K.r, K.klass.value, inv.determinant, sig, alg, form, v.status.value,
             w.d if w else "", ":".join(map(str, w.chi.images)) if w else "",
             w.k if w else "", frac(w.sigma) if w else "", w.bound if w else ""]
    return ",".join(map(str, cells))


def parse_csv(text: str) -> List[dict]:
    lines = text.strip("\n").split("\n")
    keys = lines[0].split(",")
    return [dict(zip(keys, line.split(","))) for line in lines[1:]]


def _knot(args) -> PretzelKnot:
    return PretzelKnot(args.p, args.q, args.r)


def _options(args) -> Options:
    return Options(max_prime_power=getattr(args, "max_prime_power", 9), verify=getattr(args, "verify", False))


def cmd_analyze(args) -> int:
    from .verdict import analyze

    res = analyze(_knot(args), _options(args))
    rep = report(res)
    if args.json:
        print(json.dumps(rep, indent=2))
        return EXIT_OK
    v = res.verdict
    print(f"{res.knot}  class={rep['class']}  det={rep['invariants']['det']}  "
          f"signature={rep['invariants']['signature']}")
    line = f"verdict: {v.status.value}"
    if v.form is not None:
        line += f" ({v.form})"
    if v.reason:
        line += f" - {v.reason}"
    print(line)
    if v.annotation:
        print(f"note: {v.annotation}")
    if v.lecuona is not None:
        print(f"Lecuona member a={v.lecuona.a}, a mod 60 = {v.lecuona.residue}")
    for d, label in res.cases.items():
        print(f"d={d}: {label}")
    for w in v.witnesses:
        print(f"  {w.metabolizer}: chi=({w.chi}) k={w.k} sigma={frac(w.sigma)} bound={w.bound}")
    return EXIT_OK


def _character_from_args(K: PretzelKnot, d: int, chi: str, pivot: Optional[int]):
    images = [int(x) for x in chi.split(",")]
    pres = None
    if len(images) == 2:
        if pivot is None:
            pivot = 2 if K.is_odd else even2_pivot(K)
        pres = presentation(K, Kind.REDUCED, pivot)
    return odd4_character(K, d, images, pres)


def cmd_sigma(args) -> int:
    K = _knot(args)
    chi = _character_from_args(K, args.d, args.chi, args.pivot)
    if chi.is_trivial:
        raise InvalidCharacter("the trivial character has no Casson-Gordon signature")
    if not 0 < args.k < args.d:
        raise InvalidCharacter("need 0 < k < d")
    val = cg.sigma(K, chi, args.k, route=args.route)
    print(f"{frac(val.value)}  (route: {val.route}{', ' + val.detail if val.detail else ''})")
    return EXIT_OK


def cmd_scan(args) -> int:
    knots = odd_knots(args.max) if args.parity == "odd" else even_knots(args.max)
    results = scan(knots, _options(args), jobs=args.jobs)
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for res in results:
        buf.write(csv_row(res) + "\n")
    if args.out == "-":
        sys.stdout.write(buf.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(buf.getvalue())
    hist = Counter(r.verdict.status.value for r in results)
    print("summary: " + ", ".join(f"{k}={hist[k]}" for k in sorted(hist)), file=sys.stderr)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    from . import acceptance

    scratch = args.scratch or tempfile.gettempdir()
    probe = os.path.join(scratch, f".pretzelcg-probe-{os.getpid()}")
    with open(probe, "w") as fh:  # OSError -> exit 4
        fh.write("ok\n")
    os.remove(probe)
    failed = None
    for crit in acceptance.run_all(quick=args.quick):
        print(crit.line())
        if not crit.passed and failed is None:
            failed = crit
    if failed is not None:
        print(f"first failing fixture: {failed.name}", file=sys.stderr)
        return EXIT_FIXTURES
    return EXIT_OK


def cmd_character_table(args) -> int:
    K = _knot(args)
    pres = presentation(K, Kind.ODD4)
    group = homology(pres)
    form = linking_form(pres)
    d = args.d
    ell = min(x for x in range(2, d + 1) if d % x == 0)
    mets = primary_metabolizers(group, form, ell)
    print(f"{K}: H_1 = " + " + ".join(f"Z_{n}" for n in group.invariant_factors)
          + f"; {len(mets)} metabolizer(s) of the {ell}-part")
    print("eps,a,b,c  vanishes_on  sigma_1  bound")
    for chi in characters(pres, d):
        if chi.is_trivial or not chi.is_onto:
            continue
        van = [M.label for M in mets if vanishes_on(chi, M)]
        s = cg.sigma(K, chi, 1)
        b = cover_h1_dim(K, chi) + 1
        print(f"{','.join(map(str, chi.images))}  {' '.join(van) or '-'}  {frac(s.value)}  {b}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pretzelcg", description="Casson-Gordon obstructions for pretzel knots")
    sub = ap.add_subparsers(dest="command", required=True)

    def knot_args(p):
        for name in ("p", "q", "r"):
            p.add_argument(name, type=int)

    a = sub.add_parser("analyze", help="run the slice pipeline on P(p,q,r)")
    knot_args(a)
    a.add_argument("--json", action="store_true")
    a.add_argument("--verify", action="store_true", help="cross-check every sigma by all routes")
    a.add_argument("--max-prime-power", type=int, default=9)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sigma", help="one Casson-Gordon signature")
    knot_args(s)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--chi", required=True,
                   help="eps,a,b,c or a,b,c or two images on a reduced model")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--route", choices=("auto", "satellite", "colored", "closed"), default="auto")
    s.add_argument("--pivot", type=int, choices=(0, 1, 2), help="pivot slot for two-image input")
    s.set_defaults(func=cmd_sigma)

    c = sub.add_parser("scan", help="census over a parameter box")
    c.add_argument("--parity", choices=("odd", "even"), required=True)
    c.add_argument("--max", type=int, required=True)
    c.add_argument("--out", default="-")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--max-prime-power", type=int, default=9)
    c.set_defaults(func=cmd_scan)

    f = sub.add_parser("fixtures", help="run the acceptance suite")
    f.add_argument("--quick", action="store_true", help="skip the slower suites")
    f.add_argument("--scratch", help="scratch directory (must be writable)")
    f.set_defaults(func=cmd_fixtures)

    t = sub.add_parser("character-table", help="characters, metabolizers and sigma_1 at one prime")
    knot_args(t)
    t.add_argument("--d", type=int, required=True)
    t.set_defaults(func=cmd_character_table)
    return ap


MAX_SCAN_PARAM = 61


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "scan" and not 0 < args.max <= MAX_SCAN_PARAM:
            raise ValueError(f"--max must be between 1 and {MAX_SCAN_PARAM}")
        return args.func(args)
    except (NotAKnot, InvalidCharacter, UnsupportedCableShape, cg.NonUnitImage, cg.CaseMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"not attempted: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SignUndecidable, cg.RouteDisagreement, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
