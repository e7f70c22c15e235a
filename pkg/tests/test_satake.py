import random
from fractions import Fraction

import pytest

from klsatake.hecke import DegreeViolation
from klsatake.satake import (
    GroupAlgebraElt,
    SatakeAssertion,
    SatakeComputer,
    associativity_defects,
    j_ring_table,
    random_hecke_element,
    xi_specialize,
)
from klsatake.weyl import DominantWeight, group_from_label

D = DominantWeight


@pytest.fixture(scope="module")
def a1_comp(a1_affine):
    return SatakeComputer(a1_affine, 7)


def test_a1_table_is_pgl2_representation_ring(a1_comp):
    tab = a1_comp.table()
    assert [x.coords for x in tab.weights] == [(0,), (1,), (2,), (3,)]
    for a in range(4):
        for b in range(4):
            want = {D((c,)): 1 for c in range(abs(a - b), a + b + 1)}
            assert tab.row(D((a,)), D((b,))) == want


def test_rtilde_is_r_times_normalizer(a1_comp):
    x = D((1,))
    r, rt = a1_comp.constants(x, x)
    for z, h in rt.items():
        assert h == a1_comp.divisor * r[z]
    # v^-1 (1 + v^2) for affine A1
    assert a1_comp.divisor.terms() == [(-1, 1), (1, 1)]


def test_unit_and_commutativity(a1_comp):
    tab = j_ring_table(a1_comp)
    assert tab.entries == a1_comp.table().entries
    checked, bad = associativity_defects(tab)
    assert checked > 0 and not bad


def test_bound_below_m0_gives_unit_table(a2_affine):
    comp = SatakeComputer(a2_affine, 0)
    assert [x.coords for x in comp.xs] == [(0, 0)]
    assert comp.table().entries == {(D((0, 0)), D((0, 0)), D((0, 0))): 1}


def test_folded_table_is_clebsch_gordan(folded_a2):
    comp = SatakeComputer(folded_a2, 11)
    tab = comp.table()
    xs = comp.xs
    idx = {x: k for k, x in enumerate(folded_a2.dominant_weights(21))}
    for a, x in enumerate(xs):
        for b, y in enumerate(xs):
            got = {idx[z]: r for z, r in tab.row(x, y).items()}
            assert got == {c: 1 for c in range(abs(a - b), a + b + 1, 2)}


def test_unequal_parameters_c2(tmp_path):
    g = group_from_label("C2~", (1, 2, 1))
    tab = SatakeComputer(g, 9).table()
    one = D((0, 0))
    for x in tab.weights:
        assert tab.row(one, x) == {x: 1}
        for y in tab.weights:
            assert tab.row(x, y) == tab.row(y, x)


def test_degree_bound_needs_m0_to_carry_the_largest_parabolic_weight():
    # L = (2, 1, 1): the parabolic {s0, s2} outweighs W0, so deg h reaches 6 > L(M0) = 4
    g = group_from_label("C2~", (2, 1, 1))
    comp = SatakeComputer(g, 12)
    assert comp.LM0 == 4
    with pytest.raises(DegreeViolation):
        comp.table()


def test_assertion_carries_triple(a1_comp, monkeypatch):
    monkeypatch.setattr(a1_comp, "divisor", a1_comp.divisor.shift(1) + a1_comp.divisor)
    with pytest.raises(SatakeAssertion) as info:
        a1_comp.constants(D((1,)), D((1,)))
    assert info.value.triple[:2] == (D((1,)), D((1,)))


def test_table_text_and_json(a1_comp):
    tab = a1_comp.table([(D((1,)), D((1,)))])
    assert "[(1)] * [(1)] = [(0)] + [(1)] + [(2)]" in tab.text()
    data = tab.to_json()
    assert data["L"] == [1, 1]
    assert [e["z"] for e in data["entries"]] == [[0], [1], [2]]
    assert tab.dumps() == tab.dumps()


def test_xi_of_spherical_elements(a2_affine):
    comp = SatakeComputer(a2_affine, 7)
    a = comp.xi_spherical(D((1, 1)))
    vals = {c for _, c in a.items()}
    # adjoint: multiplicity 1 on the root double coset, 2 on W0
    assert vals == {Fraction(1, 6), Fraction(2, 6)}
    assert sum(a[e] for e in a2_affine.finite_subgroup) == 2


def test_group_algebra_and_xi_homomorphism(a2_affine):
    comp = SatakeComputer(a2_affine, 3)
    alg = comp.alg
    rng = random.Random(11)
    for _ in range(4):
        x = random_hecke_element(alg, rng, 2)
        y = random_hecke_element(alg, rng, 2)
        assert xi_specialize(x * y) == xi_specialize(x) * xi_specialize(y)
        assert xi_specialize(x + y) == xi_specialize(x) + xi_specialize(y)
    g = a2_affine
    s = g.generators[1]
    e = GroupAlgebraElt(g, {g.identity: 1, s: Fraction(1, 2)})
    assert (e * e)[g.identity] == Fraction(5, 4)
    assert e.scale(2)[s] == 1
