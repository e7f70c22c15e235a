"""
Affine A1: the spherical structure constants reproduce the representation
ring of PGL2.

The dominant elements of Q+ are x = k*alpha.  For each one we find M_x, the
longest element of its W0-double coset, multiply the KL basis elements
c_{M_x} c_{M_y}, and divide the coefficients by v^-L(M0) pi_L.  The integers
that come out should be the tensor-product multiplicities of PGL2, where
V(a) (x) V(b) = V(|a-b|) + ... + V(a+b) in steps of one root.
"""

from klsatake.charoracle import tensor_multiplicities
from klsatake.satake import SatakeComputer
from klsatake.weyl import group_from_label

g = group_from_label("A1~")
comp = SatakeComputer(g, 7)

print("dominant x and the reduced word of M_x")
for x in comp.xs:
    word = ".".join(g.names[i] for i in g.reduced_word(comp.M[x]))
    print(f"  x = {x.coords[0]} alpha   M_x = {word}")

print()
print(f"pi_L = {comp.pi},  L(M0) = {comp.LM0}")
x = comp.xs[1]
r, rt = comp.constants(x, x)
print(f"c_M{x} c_M{x} in the c_M basis:")
for z, h in sorted(rt.items(), key=lambda kv: kv[0].coords):
    print(f"  coefficient of c_M{z}: {h}   ->  r = {r[z]}")

print()
print(comp.table().text())

agree = all(
    {z.coords: n for z, n in comp.satake_constants(x, y).items()}
    == tensor_multiplicities(g.datum, x.coords, y.coords)
    for x in comp.xs
    for y in comp.xs
)
print(f"agrees with character peeling on all {len(comp.xs) ** 2} pairs: {agree}")
