"""
Affine A2: KL polynomials at v = 1 count weights.

For dominant x, y the value P_{M_y, M_x}(1) equals the multiplicity of the
weight y in the irreducible representation V_x of PGL3.  The right-hand side
comes from Freudenthal's formula, computed with no reference to the Hecke
algebra.
"""

from klsatake.charoracle import weight_multiplicities
from klsatake.hecke import HeckeAlgebra
from klsatake.weyl import group_from_label

g = group_from_label("A2~")
xs = g.dominant_weights(12)
M = {x: g.max_dc_rep(x) for x in xs}
alg = HeckeAlgebra(g, 12)

print(f"{len(xs)} dominant elements with length(M_x) <= 12: {[x.coords for x in xs]}")
print()
print(f"{'x':>8} {'y':>8}  {'P_{M_y,M_x}':<22} P(1)  dim V_x^y")
mismatches = 0
for x in xs:
    mult = weight_multiplicities(g.datum, x.coords)
    for y in xs:
        if g.length(M[y]) > g.length(M[x]):
            continue
        P = alg.kl_poly(M[y], M[x])
        want = mult.get(y.coords, 0)
        mismatches += P.at_one() != want
        print(f"{str(x.coords):>8} {str(y.coords):>8}  {str(P):<22} {P.at_one():>4}  {want:>9}")
print()
print(f"mismatches: {mismatches}")
print("the adjoint representation (1,1) has a 2-dimensional zero weight space: P = v^2 + 1")
