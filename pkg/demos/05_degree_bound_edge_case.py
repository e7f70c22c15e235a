"""
When does deg h <= L(M0) hold?

The integrality argument bounds the degree of every structure constant h of
the KL basis by the largest weight of a longest element of a finite
parabolic subgroup.  Replacing that by L(M0) is only valid when W0 carries
that maximum.  Affine C2 with weights (2, 1, 1) is a case where it does not:
the parabolic <s0, s2> has weight 6 but W0 = <s1, s2> only 4.
"""

from klsatake.hecke import DegreeViolation, HeckeAlgebra
from klsatake.satake import SatakeComputer
from klsatake.weyl import group_from_label

for weights in [(1, 1, 1), (1, 2, 1), (2, 1, 1)]:
    g = group_from_label("C2~", weights)
    xs = g.dominant_weights(12)
    M = {x: g.max_dc_rep(x) for x in xs}
    alg = HeckeAlgebra(g, 2 * max(g.length(m) for m in M.values()))
    top = max(
        h.degree()
        for x in xs
        for y in xs
        for h in alg.to_c_basis(alg.c_product(M[x], M[y])).values()
    )
    m = g.coxeter_matrix()
    parabolic = max(
        (m[i][j] // 2) * (weights[i] + weights[j])
        for i in range(3)
        for j in range(i + 1, 3)
    )
    print(f"L = {weights}: L(M0) = {alg.a_bound()}, largest parabolic weight = {parabolic}, max deg h = {top}")
    try:
        SatakeComputer(g, 12).table()
        print("  all structure-constant identities hold")
    except DegreeViolation as exc:
        print(f"  DegreeViolation: {exc}")
