"""One signature, several independent computations.

Each sigma value can come from a Seifert matrix of a satellite link, from
colored signatures of a two-component torus link, or from a closed form.
The routes share no code beyond exact arithmetic, so agreement is a real
check.
"""
from pretzelcg import cg
from pretzelcg.double_cover import Kind, characters, even2_pivot, odd4_character, presentation
from pretzelcg.exact_math import hermitian_signature_at_root
from pretzelcg.link_sig import litherland_torus_sigma, torus_link_seifert
from pretzelcg.pretzel import PretzelKnot


def show(K, chi, k=1):
    print(f"{K}, chi=({chi}), k={k}")
    for v in cg.all_routes(K, chi, k):
        print(f"  {v.route:10s} {v.detail:28s} {v.value}")


print("Torus links first: the Seifert form against the closed count")
for j, t in ((2, 3), (3, 1), (4, 5)):
    V = torus_link_seifert(j, 7 * j * t)
    print(f"  T({j},{7 * j * t}) at exp(2 pi i/7): {hermitian_signature_at_root(V, 7, 1)}"
          f" vs {litherland_torus_sigma(j, t)}")

print()
K = PretzelKnot(9, 9, -5)
for chi in characters(presentation(K), 3):
    if not chi.is_trivial:
        show(K, chi)

print()
K = PretzelKnot(21, 35, -119)
show(K, odd4_character(K, 7, (2, 4, 1)))

print()
K = PretzelKnot(-1, 3, 6)
pres = presentation(K, Kind.REDUCED, even2_pivot(K))
show(K, odd4_character(K, 3, (1, 2), pres))
show(K, odd4_character(K, 9, (2, 4), pres))
