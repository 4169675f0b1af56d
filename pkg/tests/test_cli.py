import json
import subprocess
import sys

import pytest

from fusscat import cli
from fusscat.series import SeriesCheck


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None


def test_dims_dendriform(capsys):
    code, doc = run_json(capsys, "dims", "--m", "2", "--max-n", "4")
    assert code == 0
    assert doc["schema"] == "fusscat/1"
    assert [r["census"] for r in doc["rows"]] == [1, 3, 12, 55]
    assert [r["rank"] for r in doc["rows"]] == [1, 3, 12, 55]
    assert all(r["match"] for r in doc["rows"])


def test_dims_dias_and_trivial(capsys):
    code, doc = run_json(capsys, "dims", "--m", "1", "--max-n", "4", "--algebra", "dias")
    assert code == 0 and [r["census"] for r in doc["rows"]] == [1, 2, 3, 4]
    code, doc = run_json(capsys, "dims", "--m", "2", "--max-n", "1")
    assert code == 0 and [r["census"] for r in doc["rows"]] == [1]


def test_dims_skips_rank_above_limit(capsys):
    code, doc = run_json(capsys, "dims", "--m", "1", "--max-n", "5", "--rank-max-n", "3")
    assert code == 0
    assert [r["rank"] for r in doc["rows"]] == [1, 2, 5, None, None]


def test_normalize(capsys):
    code, doc = run_json(capsys, "normalize", "--m", "2", "--expr", "(> g (o1 g g))")
    assert code == 0
    assert doc["terms"] == [
        {"coeff": "1", "tree": "(o1 (o1 g g) g)"},
        {"coeff": "1", "tree": "(o1 (> g g) g)"},
    ]
    code, doc = run_json(capsys, "normalize", "--m", "2", "--algebra", "dias", "--expr", "(-| g (|- g g))")
    assert doc["normal_form"] == "(-| (-| g g) g)"


def test_class(capsys):
    code, doc = run_json(capsys, "class", "--word", "1221")
    assert code == 0
    assert doc["members"] == ["1221", "2121", "2211"]
    assert doc["canonical"] == "2211"


def test_product(capsys):
    code, doc = run_json(capsys, "product", "--m", "2", "--op", "mid:1", "--left", "11", "--right", "2112")
    assert code == 0
    assert [t["word"] for t in doc["terms"]] == ["132213", "312213", "321213", "322113"]
    code, doc = run_json(capsys, "product", "--m", "2", "--op", "full", "--left", "11", "--right", "11")
    assert len(doc["terms"]) == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["product", "--m", "2", "--op", "mid:2", "--left", "11", "--right", "11"],
        ["product", "--m", "2", "--op", "sideways", "--left", "11", "--right", "11"],
        ["product", "--m", "2", "--op", "prec", "--left", "12", "--right", "11"],
        ["normalize", "--m", "2", "--expr", "(< g"],
        ["bijection", "--word", "1212"],
        ["bijection"],
        ["class", "--word", "1x"],
        ["dims", "--m", "0"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""


@pytest.mark.parametrize("m,size", [(2, 2), (1, 3), (3, 1)])
def test_verify(capsys, m, size):
    code, doc = run_json(capsys, "verify", "--m", str(m), "--size", str(size))
    assert code == 0
    assert doc["pass"] and doc["axioms"]["pass"] and doc["soundness"]["pass"] and doc["class_closure"]["pass"]


@pytest.mark.parametrize("m", [1, 2, 4])
def test_confluence_writes_certificate(capsys, tmp_path, m):
    path = tmp_path / f"cert{m}.json"
    code, doc = run_json(capsys, "confluence", "--m", str(m), "--certificate", str(path))
    assert code == 0 and doc["pass"]
    cert = json.loads(path.read_text())
    assert cert["schema"] == "fusscat/1"
    assert cert["local_confluence"]["pass"] and cert["acyclicity"]["acyclic"]
    assert cert["local_confluence"]["trees"] == 5 * (m + 1) ** 3
    heads = {"-|", "|-"} | {f"m{i}" for i in range(1, m)}
    tree = cert["local_confluence"]["table"][0]["tree"]
    assert tree.split()[0].lstrip("(") in heads


def test_bijection(capsys):
    word = "9,9,7,7,8,6,6,4,3,3,2,2,4,5,1,1,5,8"
    code, doc = run_json(capsys, "bijection", "--word", word)
    assert code == 0 and doc["size"] == 9 and doc["round_trip"]
    code, back = run_json(capsys, "bijection", "--tree", doc["tree"])
    assert code == 0 and back["word"] == "997786643322451158"


@pytest.mark.parametrize("check", ["fixedpoint", "system", "dias", "koszul"])
def test_series(capsys, check):
    code, doc = run_json(capsys, "series", "--m", "2", "--order", "6", "--check", check)
    assert code == 0 and doc["pass"]
    assert all(isinstance(c, str) for c in doc["coefficients"])
    if check == "fixedpoint":
        assert doc["coefficients"][:4] == ["1", "3", "12", "55"]
    if check == "koszul":
        assert doc["coefficients"] == ["0", "1"] + ["0"] * 5


def test_failed_check_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "koszul_inversion_check", lambda m, n: [SeriesCheck("forced", False, "x")])
    code, doc = run_json(capsys, "series", "--check", "koszul")
    assert code == 1 and doc["pass"] is False


def test_cap_flag_and_env(capsys, monkeypatch):
    code, _, err = run(capsys, "dims", "--m", "2", "--max-n", "4", "--cap", "5")
    assert code == 2 and "cap" in err
    monkeypatch.setenv("FUSSCAT_ENUM_CAP", "5")
    code, _, err = run(capsys, "dims", "--m", "2", "--max-n", "4")
    assert code == 2


def test_cap_flag_does_not_leak(capsys):
    import os

    before = os.environ.get("FUSSCAT_ENUM_CAP")
    run(capsys, "dims", "--m", "1", "--max-n", "2", "--cap", "50")
    assert os.environ.get("FUSSCAT_ENUM_CAP") == before


def test_text_output(capsys):
    code, out, _ = run(capsys, "class", "--word", "2112", "--output", "text")
    assert code == 0
    assert "canonical: 2112" in out
    assert "members: 1212 2112" in out


def test_run_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig(m=0)
    with pytest.raises(ValueError):
        cli.RunConfig(cap=0)
    with pytest.raises(ValueError):
        cli.RunConfig(output="yaml")


def test_console_script_output_is_byte_identical(tmp_path):
    argv = [sys.executable, "-m", "fusscat.cli", "verify", "--m", "2", "--size", "1",
            "--samples", "20", "--sample-size", "2", "--seed", "7"]
    first = subprocess.run(argv, capture_output=True, cwd=tmp_path)
    second = subprocess.run(argv, capture_output=True, cwd=tmp_path)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["axioms"]["seed"] == 7 and doc["axioms"]["sampled"] == 20
