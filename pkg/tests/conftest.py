import pytest

from klsatake.folding import fold, parse_sigma
from klsatake.weyl import build_datum, group_from_label


@pytest.fixture(scope="session")
def a1_affine():
    return group_from_label("A1~")


@pytest.fixture(scope="session")
def a2_affine():
    return group_from_label("A2~")


@pytest.fixture(scope="session")
def folded_a2():
    """Affine A2 folded by the flip of s1, s2: infinite dihedral with weights 1, 3."""
    return fold(group_from_label("A2~"), parse_sigma("0,2,1")).group


@pytest.fixture(scope="session")
def folded_b2():
    """Finite A3 folded by the end flip: type B2 with weights 2, 1."""
    _, a3 = build_datum("A", 3, False)
    return fold(a3, parse_sigma("2,1,0")).group


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("KLSATAKE_CACHE", str(d))
    return d


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
