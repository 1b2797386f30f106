"""A small census of odd pretzel knots.

Every knot with parameters up to 21 in absolute value goes through the
pipeline.  The histogram shows how the classical tests, the ribbon
families and the Casson-Gordon search share the work.
"""
from collections import Counter

from pretzelcg.verdict import Status, odd_knots, scan

knots = odd_knots(21)
results = scan(knots, jobs=4)
hist = Counter(r.verdict.status.value for r in results)
print(f"{len(knots)} odd knots with |p|, |q|, |r| <= 21")
for status, n in hist.most_common():
    print(f"  {status:20s} {n}")

print("\nsignature-zero knots with a square determinant > 1:")
sq = [r for r in results if r.invariants.signature == 0 and r.invariants.determinant > 1
      and int(r.invariants.determinant ** 0.5) ** 2 == r.invariants.determinant]
print("  " + ", ".join(f"{s}={n}" for s, n in Counter(r.verdict.status.value for r in sq).items()))

print("\nthe first few obstructed knots and their witnesses:")
for r in [r for r in results if r.verdict.status is Status.CG_OBSTRUCTED][:8]:
    w = r.verdict.witnesses[0]
    print(f"  {r.knot}: d={w.d}, chi=({w.chi}), sigma={w.sigma}, bound {w.bound}")
