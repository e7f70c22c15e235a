import json

import pytest

from klsatake.cli import JobConfig, ConfigError, main, read_config_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_datum_affine_a2(capsys):
    code, out, _ = run(capsys, "datum", "A2~", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["coxeter_matrix"] == [[1, 3, 3], [3, 1, 3], [3, 3, 1]]
    assert len(data["generators"]) == 3


def test_datum_fold(capsys):
    code, out, _ = run(capsys, "datum", "A2~", "--fold", "0,2,1", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["weights"] == [1, 3]
    assert data["coxeter_matrix"] == [[1, 0], [0, 1]]
    assert data["generators"][1]["parent_word"] == ["s1", "s2", "s1"]


def test_datum_text(capsys):
    code, out, _ = run(capsys, "datum", "--datum", "A1~", "--bound", "3")
    assert code == 0
    assert "Q+ sample" in out and "x = (1,)" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["satake", "A1"],
        ["datum", "A2~", "--fold", "0,2,1", "--weights", "1,3"],
        ["datum", "A2~", "--weights", "1,2,1"],
        ["datum", "Q7"],
        ["datum"],
        ["datum", "A2~", "--fold", "1,0,2"],
        ["kl", "A1~", "--cutoff", "3", "--w-range", "0:5"],
        ["verify", "A2~", "--suite", "nope"],
        ["verify", "A2~", "--suite", "41c"],
        ["verify", "A2~"],
    ],
)
def test_config_errors_exit_2(capsys, argv, cache_dir):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_kl_cache_idempotent(capsys, tmp_path, cache_dir, caplog):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "kl", "A1~", "--cutoff", "9", "-o", str(a))[0] == 0
    with caplog.at_level("INFO"):
        assert run(capsys, "kl", "A1~", "--cutoff", "9", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert any("cache hit" in r.getMessage() for r in caplog.records)
    data = json.loads(a.read_text())
    assert {tuple(e["P"].items()) for e in data["entries"]} == {(("0", 1),)}
    assert len(list(cache_dir.iterdir())) == 1


def test_kl_folded_even(capsys, cache_dir):
    code, out, _ = run(capsys, "kl", "A2~", "--fold", "0,2,1", "--cutoff", "9")
    assert code == 0
    assert "-v^2 + 1" in out


def test_kl_w_range_filters(capsys, cache_dir, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "kl", "A1~", "--cutoff", "6", "--w-range", "2:2", "-o", str(out))
    ws = {json.dumps(e["w"], sort_keys=True) for e in json.loads(out.read_text())["entries"]}
    assert len(ws) == 2


def test_kl_cache_dir_flag(capsys, tmp_path):
    d = tmp_path / "explicit"
    assert run(capsys, "kl", "A1~", "--cutoff", "4", "--cache-dir", str(d))[0] == 0
    assert len(list(d.glob("kl-*.json"))) == 1


def test_satake_a1(capsys):
    code, out, _ = run(capsys, "satake", "A1~", "--bound", "5", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["dominant"] == [[0], [1], [2]]
    assert data["sl2_clebsch_gordan_match"] is False
    rows = {}
    for e in data["entries"]:
        rows.setdefault((e["x"][0], e["y"][0]), {})[e["z"][0]] = e["r"]
    assert rows[(1, 1)] == {0: 1, 1: 1, 2: 1}
    for a in range(3):
        assert rows[(0, a)] == rows[(a, 0)] == {a: 1}
        for b in range(3):
            assert rows[(a, b)] == rows[(b, a)]


def test_satake_bound_zero(capsys):
    code, out, _ = run(capsys, "satake", "A1~", "--bound", "0", "--json")
    data = json.loads(out)
    assert data["entries"] == [{"x": [0], "y": [0], "z": [0], "r": 1}]


def test_satake_folded_flag(capsys):
    code, out, _ = run(capsys, "satake", "A2~", "--fold", "0,2,1", "--bound", "11")
    assert code == 0
    assert out.rstrip().endswith("matches SL2 Clebsch-Gordan: true")


def test_satake_internal_assertion_exit_3(capsys):
    code, _, err = run(capsys, "satake", "C2~", "--weights", "2,1,1", "--bound", "12")
    assert code == 3
    assert "internal assertion" in err


def test_verify_outcomes(capsys):
    code, out, _ = run(capsys, "verify", "A3", "--fold", "2,1,0", "--suite", "r-recursion,41c")
    assert code == 0
    assert "PASS 41c: 64 passed" in out
    assert "orientations matching direct expansion: transposed" in out
    code, out, _ = run(capsys, "verify", "A1~", "--suite", "sl2", "--count", "3", "--json")
    assert code == 1
    assert json.loads(out)[0]["ok"] is False


def test_verify_all_skips_inapplicable(capsys):
    code, out, _ = run(capsys, "verify", "A1~", "--suite", "all", "--cutoff", "6", "--bound", "5", "-q")
    assert code == 1  # sl2 fails on the equal-parameter A1 table
    names = [line.split()[1].rstrip(":") for line in out.splitlines() if line[:4] in ("PASS", "FAIL")]
    assert names == ["bar", "weightmult", "tensor", "sl2", "xi"]


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# job\ndatum = A1~\nbound = 5\njson = true\n")
    assert read_config_file(str(cfg)) == {"datum": "A1~", "bound": 5, "json": True}
    code, out, _ = run(capsys, "satake", "--config", str(cfg), "--bound", "3")
    assert code == 0
    assert json.loads(out)["dominant"] == [[0], [1]]
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    with pytest.raises(ConfigError):
        read_config_file(str(bad))
    assert run(capsys, "datum", "--config", str(bad))[0] == 2


def test_job_config_validation():
    with pytest.raises(ConfigError):
        JobConfig(datum="A2~", jobs=0).validate()
    with pytest.raises(ConfigError):
        JobConfig(datum="A2~", cutoff=-1).validate()
    JobConfig(datum="A2~", weights="1,1,1").build_group()
