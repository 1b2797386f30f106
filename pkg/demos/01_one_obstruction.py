"""Walk through one Casson-Gordon obstruction, for P(5, 9, -41).

The knot passes every classical test: signature 0, square determinant and
a Fox-Milnor Alexander polynomial.  The double branched cover then has
H_1 = Z_529, one metabolizer, and characters of order 23 whose
signatures exceed the bound.
"""
from pretzelcg import cg
from pretzelcg.double_cover import (
    characters,
    cover_h1_dim,
    homology,
    linking_form,
    metabolizers,
    odd4_character,
    presentation,
    vanishes_on,
)
from pretzelcg.pretzel import PretzelKnot, classical, fox_milnor_factor
from pretzelcg.verdict import analyze

K = PretzelKnot(5, 9, -41)
inv = classical(K)
print(f"{K}: det {inv.determinant}, signature {inv.signature}, Alexander {inv.alexander}")
print(f"  Fox-Milnor factor (m, n) = {fox_milnor_factor(inv.alexander)}, algebraically slice: {inv.is_alg_slice}")

pres = presentation(K)
H = homology(pres)
form = linking_form(pres)
mets = metabolizers(H, form)
print(f"\nH_1 of the double cover: {' + '.join(f'Z_{n}' for n in H.invariant_factors)}")
print(f"metabolizers: {len(mets)}, of order {mets[0].order}")

chi1 = odd4_character(K, 23, (18, 1, 21, 1))
print(f"\nchi_1 = ({chi1}); it vanishes on the metabolizer: {vanishes_on(chi1, mets[0])}")
for mult in (1, 2):
    chi = chi1.scaled(mult)
    f = cg.f_chi(K, chi).value
    s = cg.sigma(K, chi, 1).value
    bound = cover_h1_dim(K, chi) + 1
    print(f"  {mult}*chi_1: f = {f} (= {f // 529} * 23^2), sigma_1 = {s}, bound {bound}")

vals = sorted({cg.sigma(K, c, 1).value for c in characters(pres, 23) if not c.is_trivial})
print(f"\nsigma_1 over all 22 nontrivial characters takes the values {[str(v) for v in vals]}")

res = analyze(K)
w = res.verdict.witnesses[0]
print(f"\nverdict: {res.verdict.status.value}; witness chi=({w.chi}) k={w.k} sigma={w.sigma} > {w.bound}")
