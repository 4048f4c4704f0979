import json
import os
import subprocess
import sys

import pytest

from gfhkit import cli

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(*argv):
    doc, code, err = cli.run([str(a) for a in argv])
    return (doc["result"] if doc else None), code, err


def test_gfh_numeric(fixtures_dir):
    res, code, _ = run("gfh-numeric", fixtures_dir / "cubic.json")
    assert code == 0 and res["gfh"] == {"1": {"free": 1}} and res["N"] == 1
    res, code, _ = run("gfh-numeric", fixtures_dir / "linear.json", "--eps", 1, "--omega", 2)
    assert code == 0 and res["gfh"] == {}


def test_gfh_numeric_exit_codes(fixtures_dir, tmp_path):
    assert run("gfh-numeric", tmp_path / "missing.json")[1] == cli.EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text('{"baseDim": 0}')
    assert run("gfh-numeric", bad)[1] == cli.EXIT_INPUT
    assert run("gfh-numeric", fixtures_dir / "cubic.json", "--budget", 100)[1] == cli.EXIT_BUDGET
    _, code, err = run("gfh-numeric", fixtures_dir / "cubic.json", "--eps", 5, "--omega", 6)
    assert code == cli.EXIT_WINDOW and "eps" in err
    assert run("gfh-numeric", fixtures_dir / "linear.json")[1] == cli.EXIT_WINDOW


def test_gfh_front(fixtures_dir):
    res, code, _ = run("gfh-front", fixtures_dir / "unknot.json")
    assert code == 0 and res["augmentationCount"] == 1
    assert res["augmentations"][0]["gfh"] == {"2": {"free": 1}}
    res, code, _ = run("gfh-front", fixtures_dir / "trefoil.json")
    assert res["augmentationCount"] == 5
    assert all(a["gfh"] == {"1": {"free": 2}, "2": {"free": 1}} for a in res["augmentations"])
    res, _, _ = run("gfh-front", fixtures_dir / "trefoil.json", "--list-aug")
    assert len(res["augmentations"]) == 5
    assert run("gfh-front", fixtures_dir / "rotating-unknot.json")[1] == cli.EXIT_ROTATION


def test_verify_seidel(fixtures_dir):
    res, code, _ = run("verify-seidel", fixtures_dir / "linear-filling.json", "--grid", "41x41x41")
    assert code == 0 and res["verdict"] == "MATCH"
    assert all(res[k] == {} for k in "WABC")
    _, code, err = run("verify-seidel", fixtures_dir / "cubic-filling.json", "--u", 2.5)
    assert code == cli.EXIT_WINDOW and "u < min" in err
    _, code, err = run("verify-seidel", fixtures_dir / "cubic-filling.json", "--mu", -1)
    assert code == cli.EXIT_WINDOW and "mu > 0" in err


def test_verify_seidel_cubic_small_grid_with_csv(fixtures_dir, tmp_path):
    out = tmp_path / "lam.csv"
    res, code, _ = run("verify-seidel", fixtures_dir / "cubic-filling.json", "--grid", "61x81x81", "--csv", out)
    assert code == 0 and res["verdict"] == "MATCH"
    assert res["W"] == res["A"] == {"2": {"free": 1}}
    assert out.read_text().startswith("t,H,lambda_minus_mu,lambda_Omega")


def test_obstruct(fixtures_dir):
    res, code, _ = run("obstruct", fixtures_dir / "m52-profile.json")
    assert code == 0
    assert (res["nmin"], res["fillability"], res["duality"]) == (2, "noFilling", "pass")
    res, _, _ = run("obstruct", fixtures_dir / "trefoil-profile.json")
    assert (res["nmin"], res["fillability"]) == (1, "noObstruction")
    assert run("obstruct", fixtures_dir / "twist5-profile.json")[0]["nmin"] == 4
    res, code, _ = run("obstruct", fixtures_dir / "m52.json")
    assert code == 0 and (res["nmin"], res["fillability"], res["duality"]) == (2, "noFilling", "pass")


@pytest.mark.parametrize("expr,key,expected", [
    ("S1+S1+S2 pi 3", "pi", "Z/2 + Z/2 + Z/2"),
    ("S2 homology", "homology", {"2": 1}),
    ("T2 homology", "homology", {"1": 2, "2": 1}),
    ("S3 pi 6", "pi", "Z/24"),
    ("S1 @shift 1 pi 3", "pi", "Z/2"),
])
def test_spectrum_expressions(expr, key, expected):
    res, code, _ = run("spectrum", *expr.split())
    assert code == 0 and res[key] == expected


def test_spectrum_obstruct_and_errors():
    res, _, _ = run("spectrum", "desusp", "1", "CP2", "obstruct")
    assert res["verdict"].startswith("obstructed: Sq2 instability")
    assert run("spectrum", "S0", "pi", "9")[1] == cli.EXIT_INPUT
    assert run("spectrum", "K3", "homology")[1] == cli.EXIT_INPUT
    assert run("spectrum", "CP2", "pi", "3")[1] == cli.EXIT_INPUT


def test_output_is_deterministic(fixtures_dir, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert cli.main(["gfh-front", str(fixtures_dir / "trefoil.json"), "--out", str(p)]) == 0
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ja["result"] == jb["result"]
    assert json.dumps(ja["result"], sort_keys=True) == json.dumps(jb["result"], sort_keys=True)
    man = ja["manifest"]
    assert man["command"] == "gfh-front" and len(man["inputs"]) == 1 and "wallTime" in man


def test_console_entry_point(fixtures_dir):
    out = subprocess.run([sys.executable, "-m", "gfhkit.cli", "spectrum", "S2", "homology"],
                         capture_output=True, text=True, cwd=ROOT)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["homology"] == {"2": 1}
