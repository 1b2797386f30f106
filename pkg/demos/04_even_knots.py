"""Even pretzel knots: ribbon families, 2-bridge coincidences and the
exceptional family P(a, -a-2, -(a+1)^2/2).

A knot with a parameter of +-1 is 2-bridge, so it can coincide with a
ribbon pretzel knot written differently.  P(-1, 3, 6) is one example: it
is the same 2-bridge knot as P(1, 3, -3).
"""
from pretzelcg.double_cover import Kind, even2_pivot, odd4_character, presentation
from pretzelcg import cg
from pretzelcg.pretzel import PretzelKnot, lecuona_family, twobridge_fraction
from pretzelcg.verdict import analyze

for params in ((-1, 3, 6), (1, 3, -3), (-1, 3, 14)):
    K = PretzelKnot(*params)
    print(f"{K}: 2-bridge fraction {twobridge_fraction(K)}, verdict {analyze(K).verdict.status.value}"
          f" ({analyze(K).verdict.reason})")

K = PretzelKnot(-1, 3, 6)
pres = presentation(K, Kind.REDUCED, even2_pivot(K))
for d, images in ((3, (1, 2)), (9, (2, 4))):
    chi = odd4_character(K, d, images, pres)
    print(f"  sigma_1 at d={d}, chi=({chi}): {cg.sigma(K, chi, 1, verify=True).value}")

print("\nthe exceptional family, a = 1..13:")
for a in range(1, 14, 2):
    K = PretzelKnot(a, -a - 2, -((a + 1) ** 2) // 2)
    m = lecuona_family(K)
    v = analyze(K).verdict
    print(f"  a={a:2d} {str(K):18s} a mod 60 = {m.residue:2d} unresolved={m.unresolved}  -> {v.reason}")
