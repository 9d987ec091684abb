import json

import pytest

from concat_blocking.cli import main
from concat_blocking.code import parse_gmat, write_gmat
from concat_blocking.construct import fixture, grs, simplex
from concat_blocking.gf import find_field

GF2, GF4 = find_field(2), find_field(2, 2)


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def run_json(capsys, *argv):
    status, out, _ = run(capsys, "--json", *argv)
    data = json.loads(out)
    assert data["schema"] == 1
    return status, data


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, code in [("tern935", fixture("PaperTernary935")),
                       ("outer", grs(GF4, 5, 3)), ("inner", simplex(GF2, 2)),
                       ("weak", grs(GF4, 4, 3))]:
        p = tmp_path / f"{name}.gmat"
        p.write_text(write_gmat(code))
        paths[name] = str(p)
    # two points on a line plus a third off it: not minimal
    p = tmp_path / "bad.gmat"
    p.write_text("2 1 4 3\n1 0 0 1\n0 1 0 1\n0 0 1 0\n")
    paths["bad"] = str(p)
    return paths


def test_construct_simplex(capsys):
    status, out, _ = run(capsys, "construct", "simplex", "--field", "2^1", "-k", "3")
    assert status == 0
    code = parse_gmat(out)
    assert (code.n, code.k) == (7, 3)


def test_construct_writes_file(capsys, tmp_path):
    dest = tmp_path / "g.gmat"
    status, data = run_json(capsys, "construct", "grs", "--field", "2^2", "-n", "5", "-k", "3",
                            "-o", str(dest))
    assert status == 0 and data["written"] == str(dest)
    assert parse_gmat(dest.read_text()).n == 5


def test_construct_search_and_fixture(capsys):
    status, data = run_json(capsys, "construct", "search", "-q", "2", "-k", "3", "--n-max", "8")
    assert status == 0 and data["n_min"] == 6
    status, out, _ = run(capsys, "construct", "fixture", "PaperBinary1566")
    assert status == 0 and parse_gmat(out).k == 6


def test_fixture_needs_parameters(capsys):
    status, _, err = run(capsys, "construct", "fixture", "AlfaranoOuter")
    assert status == 64 and "needs --field" in err
    status, out, _ = run(capsys, "construct", "fixture", "AlfaranoOuter", "--field", "2^3",
                         "--i", "1", "--j", "2")
    assert status == 0 and parse_gmat(out).n == 4


def test_check_minimal(capsys, files):
    status, out, _ = run(capsys, "check", "minimal", files["tern935"])
    assert status == 0 and "Minimal" in out
    status, data = run_json(capsys, "check", "minimal", files["bad"])
    assert status == 1
    assert data["certificate"]["verdict"] == "NotMinimal"


def test_check_sbs_and_profile(capsys, files):
    assert run(capsys, "check", "sbs", files["tern935"])[0] == 0
    assert run(capsys, "check", "sbs", files["bad"])[0] == 1
    status, data = run_json(capsys, "profile", files["tern935"])
    assert status == 0 and data["profile"]["d"] == 5


def test_check_saturating(capsys, tmp_path):
    p = tmp_path / "fano.gmat"
    p.write_text(write_gmat(simplex(GF2, 3)))
    status, data = run_json(capsys, "check", "saturating", str(p), "--ambient", "2^2")
    assert status == 0 and data["rho"] == 1 and data["ambient"] == "2^2"
    status, _, _ = run(capsys, "check", "saturating", str(p), "--ambient", "3^2")
    assert status == 64


def test_concat(capsys, files):
    status, data = run_json(capsys, "concat", "--outer", files["outer"], "--inner",
                            files["inner"], "--certify")
    assert status == 0 and (data["n"], data["k"]) == (15, 6)
    assert data["certificate"]["verdict"] == "CertifiedMinimal"
    status, _ = run_json(capsys, "concat", "--outer", files["weak"], "--inner", files["inner"],
                         "--certify")
    assert status == 2
    status, _, _ = run(capsys, "concat", "--outer", files["tern935"], "--inner", files["inner"])
    assert status == 64


def test_code_info(capsys, files):
    status, data = run_json(capsys, "code", "info", files["tern935"], "--dual")
    assert status == 0
    assert (data["code"]["n"], data["code"]["k"], data["code"]["d"]) == (9, 3, 5)
    assert data["code"]["dual"]["k"] == 6


def test_bounds_commands(capsys):
    status, data = run_json(capsys, "bounds", "tower", "--q0", "2", "--h", "3", "--n", "2")
    res = data["results"]
    assert status == 0 and res["N"]["value"] == 447 and res["k_n"]["value"] == 175
    assert res["simplex_concat"]["value"] == {"length": 3129, "dim": 525, "dist_lb": 896}
    _, data = run_json(capsys, "bounds", "sbs", "-k", "9", "-q", "2")
    assert data["results"]["upper"]["value"] == 40
    _, data = run_json(capsys, "bounds", "gv", "-q", "2", "--delta", "0.5")
    assert abs(data["results"]["entropy"]["value"] - 1) < 1e-12
    _, data = run_json(capsys, "bounds", "saturating", "-k", "4", "-q", "2", "--rho", "2")
    assert data["results"]["rho_k_minus_2_upper"]["value"] == 12
    _, data = run_json(capsys, "bounds", "mds", "-q", "3", "-K", "4")
    assert (data["results"]["N"]["value"], data["results"]["D"]["value"]) == (10, 7)
    _, data = run_json(capsys, "bounds", "rt4", "--q0", "2")
    assert data["results"]["ratio"]["value"]["fraction"] == "4/5"


def test_reproduce(capsys):
    status, out, _ = run(capsys, "reproduce", "1", "--rows", "T1-1,T1-2")
    assert status == 0 and "2 passed, 0 failed, 0 skipped" in out
    status, data = run_json(capsys, "reproduce", "2")
    assert status == 0 and data["summary"]["SKIPPED"] == 6


def test_info(capsys):
    status, data = run_json(capsys, "info", "--field", "2^4")
    assert status == 0 and data["field"]["poly"] == [1, 0, 0, 1, 1]


def exit_code(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


@pytest.mark.parametrize("argv", [
    ["bounds", "sbs", "-k", "1", "-q", "2"],
    ["nonsense"],
    ["bounds", "sbs", "-k", "x", "-q", "2"],
    ["check", "minimal", "/no/such/file.gmat"],
    ["construct", "simplex", "--field", "6^1", "-k", "2"],
    ["bounds", "gv", "-q", "2", "--delta", "2"],
])
def test_usage_errors(capsys, argv):
    assert exit_code(argv) == 64
    assert capsys.readouterr().err


def test_guard_exit(capsys):
    status, _, err = run(capsys, "construct", "search", "-q", "2", "-k", "5", "--n-max", "13")
    assert status == 2 and "guard" in err


def test_deterministic_output(capsys, files):
    argv = ["--json", "reproduce", "1", "--rows", "T1-1"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    timed = json.loads(run(capsys, *argv, "--timing")[1])
    assert "seconds" in timed
    timed.pop("seconds")
    for row in timed["rows"]:
        row.pop("seconds")
    assert timed == json.loads(first)
