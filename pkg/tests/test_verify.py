import pytest

from klsatake import verify
from klsatake.satake import SatakeComputer
from klsatake.weyl import build_datum


def test_report_bookkeeping():
    rep = verify.SuiteReport("demo")
    assert not rep.ok  # nothing checked is not a pass
    rep.record(True, "a")
    rep.record(False, "first")
    rep.record(False, "second")
    assert (rep.passed, rep.failed, rep.first_failure) == (1, 2, "first")
    assert rep.line().startswith("FAIL demo: 1 passed, 2 failed; first counterexample: first")
    assert rep.to_json()["ok"] is False


def test_r_recursion_reports_orientation(folded_b2):
    rep = verify.r_recursion(folded_b2)
    assert rep.ok and rep.passed == 64
    assert rep.notes[0] == "orientations matching direct expansion: transposed"
    assert any(n.startswith("adopted: transposed") for n in rep.notes)


def test_suites_reject_wrong_groups(a2_affine, folded_a2):
    with pytest.raises(ValueError):
        verify.r_recursion(a2_affine)
    with pytest.raises(ValueError):
        verify.identity_41c(a2_affine)
    with pytest.raises(ValueError):
        verify.weight_multiplicity(folded_a2, 5)
    with pytest.raises(ValueError):
        verify.sl2_table(SatakeComputer(a2_affine, 3), 2)


def test_kl_structure_finite_and_affine(a1_affine):
    _, b3 = build_datum("B", 3)
    assert verify.kl_structure(b3, 9).ok
    assert verify.kl_structure(a1_affine, 9).ok


def test_sl2_suite_detects_mismatch(a1_affine):
    # equal-parameter affine A1 gives the PGL2 ring, which is not Clebsch-Gordan in this indexing
    rep = verify.sl2_table(SatakeComputer(a1_affine, 5), 3)
    assert not rep.ok
    assert rep.first_failure.startswith("1 x 1")


def test_xi_suite(a2_affine):
    rep = verify.xi_checks(SatakeComputer(a2_affine, 7), seed=1, pairs=3)
    assert rep.ok
