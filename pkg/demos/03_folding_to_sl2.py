"""
Folding affine A2 by the flip s1 <-> s2.

The fixed subgroup is generated by s0 and s1 s2 s1, an infinite dihedral
group, and restricting the length of affine A2 gives it the unequal weights
1 and 3.  Its KL polynomials can have negative coefficients, yet the
spherical structure constants are exactly the SL2 Clebsch-Gordan rule.
"""

from klsatake.charoracle import sl2_clebsch_gordan
from klsatake.folding import fold, parse_sigma
from klsatake.hecke import HeckeAlgebra
from klsatake.satake import SatakeComputer
from klsatake.weyl import group_from_label

fd = fold(group_from_label("A2~"), parse_sigma("0,2,1"))
g = fd.group
print(f"orbits {fd.orbits}, generators {g.names}, weights {fd.weight}")
print(f"Coxeter matrix {fd.folded_coxeter_matrix} (0 = infinite order)")

alg = HeckeAlgebra(g, 7)
print()
print("some unequal-parameter KL polynomials:")
for (i, j), P in sorted(alg.kl_table().items(), key=lambda kv: (kv[0][1], kv[0][0])):
    if P != 1 and alg.lengths[j] <= 5:
        print(f"  P[{alg.word_string(i)}, {alg.word_string(j)}] = {P}")

comp = SatakeComputer(g, 11)
tab = comp.table()
xs = comp.xs
pos = {x: k for k, x in enumerate(g.dominant_weights(21))}
print()
print("J_* on the first six dominant elements, indexed 0..5 by length:")
ok = True
for a, x in enumerate(xs):
    for b, y in enumerate(xs):
        got = {pos[z]: r for z, r in tab.row(x, y).items()}
        ok &= got == sl2_clebsch_gordan(a, b)
    print(f"  {a} * 1 = " + " + ".join(str(k) for k in sorted(pos[z] for z in tab.row(x, xs[1]))))
print(f"matches SL2 Clebsch-Gordan on all 36 products: {ok}")
