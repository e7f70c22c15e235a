"""
Which way round does the R-polynomial recursion go?

For s a left descent of w with sy > y there are two plausible recursions:

  transposed:  R_{y,w} = v^2L R_{sy,sw} + (v^2L - 1) R_{sy,w}
  printed:     R_{y,w} = v^2L R_{sy,w}  + (v^2L - 1) R_{sy,sw}

The definition fixes the answer: T_w T_{w0} = sum_y v^(L(y)-L(w)) R_{y,w} T_{y w0}.
We compute that product directly in the Hecke algebra of B2 with weights
(2, 1), obtained by folding A3, and compare.
"""

from klsatake import verify
from klsatake.folding import fold, parse_sigma
from klsatake.hecke import HeckeAlgebra
from klsatake.weyl import build_datum

_, a3 = build_datum("A", 3)
g = fold(a3, parse_sigma("2,1,0")).group
alg = HeckeAlgebra(g, 4)
s = g.generators[0]
print(f"weights {g.weights};  R_(e,s) for L(s) = {alg.gen_weights[0]}:")
print(f"  direct      {alg.r_poly_direct(g.identity, s)}")
print(f"  transposed  {alg.r_poly(g.identity, s)}")
print(f"  printed     {alg.r_poly(g.identity, s, 'printed')}")
print()
rep = verify.r_recursion(g)
print(rep.line())
for n in rep.notes:
    print("  " + n)
print()
print(verify.identity_41c(g).line())
