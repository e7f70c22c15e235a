import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klsatake.charoracle import (
    character_from_json,
    character_to_json,
    dominant_conjugate,
    is_w_invariant,
    sl2_clebsch_gordan,
    tensor_multiplicities,
    weight_multiplicities,
    weyl_dim,
)
from klsatake.weyl import root_datum

A1 = root_datum("A", 1)
A2 = root_datum("A", 2)
B2 = root_datum("B", 2)
G2 = root_datum("G", 2)


def test_dimensions():
    assert weyl_dim(A2, (1, 1)) == 8
    assert weyl_dim(A2, (1, 2)) == 10
    assert weyl_dim(A2, (2, 2)) == 27
    assert weyl_dim(G2, (3, 2)) == 14
    assert weyl_dim(G2, (2, 1)) == 7
    assert weyl_dim(B2, (1, 1)) == 5
    with pytest.raises(ValueError):
        weyl_dim(A2, (1, 0))


def test_adjoint_zero_weight_multiplicity_is_rank():
    for d in (A2, B2, G2):
        mult = weight_multiplicities(d, d.highest_root)
        assert mult[(0,) * d.rank] == d.rank
        assert is_w_invariant(d, mult)


def test_a2_27_multiplicities():
    mult = weight_multiplicities(A2, (2, 2))
    assert mult[(0, 0)] == 3
    assert mult[(1, 1)] == 2
    assert mult[(2, 2)] == 1


def test_dominant_conjugate():
    assert dominant_conjugate(A2, (-1, -1)) == (1, 1)
    assert dominant_conjugate(A2, (1, 0)) in {(1, 1), (0, 1), (1, 0)}
    assert A2.is_dominant(dominant_conjugate(A2, (2, -1)))


def test_adjoint_squared_a2():
    got = tensor_multiplicities(A2, (1, 1), (1, 1))
    assert got == {(0, 0): 1, (1, 1): 2, (1, 2): 1, (2, 1): 1, (2, 2): 1}


def test_a1_root_lattice_products():
    assert tensor_multiplicities(A1, (1,), (1,)) == {(0,): 1, (1,): 1, (2,): 1}


def test_sl2_clebsch_gordan():
    assert sl2_clebsch_gordan(2, 3) == {1: 1, 3: 1, 5: 1}
    assert sl2_clebsch_gordan(0, 0) == {0: 1}
    with pytest.raises(ValueError):
        sl2_clebsch_gordan(-1, 2)


def test_character_json_round_trip():
    ch = weight_multiplicities(B2, (1, 1))
    assert character_from_json(character_to_json(ch)) == ch


small = st.tuples(st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=15, deadline=None)
@given(small, small)
def test_tensor_is_commutative_and_dimension_correct(a, b):
    x = dominant_conjugate(A2, a)
    y = dominant_conjugate(A2, b)
    t = tensor_multiplicities(A2, x, y)
    assert t == tensor_multiplicities(A2, y, x)
    assert sum(m * weyl_dim(A2, z) for z, m in t.items()) == weyl_dim(A2, x) * weyl_dim(A2, y)
