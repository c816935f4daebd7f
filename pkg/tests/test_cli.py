import json
import subprocess
import sys

import pytest

from fundcoeff import cli, mf


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classgroup_json(capsys):
    code, out, _ = run(["classgroup", "--d", "-23", "--json"], capsys)
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["h"] == 3 and row["structure"] == [3]
    assert sorted(map(tuple, row["reduced_forms"])) == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    assert row["character_table"][1]["angles"] in (["0", "1/3", "2/3"], ["0", "2/3", "1/3"])


def test_grh_integral_line(capsys):
    code, out, _ = run(["grh", "--op", "integral", "--sigma", "1.0"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# config: ")
    row = dict(zip(lines[1].split(","), lines[2].split(",")))
    assert float(row["residual"]) < 1e-8 and row["pass"] == "True"


def test_config_header_and_17_digits(capsys):
    code, out, _ = run(["coeffs", "--form", "f19/2", "--max", "5"], capsys)
    cfg = json.loads(out.splitlines()[0][len("# config: "):])
    assert cfg == {"form": "f19/2", "max": 5, "normalized": False, "subcommand": "coeffs"}
    c3 = out.splitlines()[4].split(",")[2]
    # 17 significant digits round-trip the double exactly
    assert float(c3) == mf.half_form("f19/2", 5).c(3)
    assert len(c3.replace(".", "").lstrip("0")) >= 16


def test_exact_rationals_are_strings(capsys):
    code, out, _ = run(["siegel", "--k", "10", "--op", "coeff", "--S", "2,2,12", "--json"], capsys)
    assert code == 0
    assert isinstance(json.loads(out)["rows"][0]["a"], (str, int))


def test_output_identical_across_threads(capsys, tmp_path):
    outs = []
    for t in ("1", "3"):
        p = tmp_path / f"mc{t}.csv"
        assert cli.main(["grh", "--op", "mc", "--d", "-23", "--x", "100", "--seed", "4",
                         "--samples", "20000", "--threads", t, "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_out_format_word(capsys):
    code, out, _ = run(["classgroup", "--d", "-47", "--out", "json"], capsys)
    assert code == 0 and json.loads(out)["rows"][0]["h"] == 5


@pytest.mark.parametrize("argv", [["classgroup", "--d", "-12"], ["siegel", "--op", "coeff"],
                                  ["grh", "--op", "chandee"], ["coeffs", "--form", "f5/2"],
                                  ["classgroup", "--d", "-23", "--threads", "0"]])
def test_validation_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


def test_unknown_flag_exit_2():
    r = subprocess.run([sys.executable, "-m", "fundcoeff", "classgroup", "--d", "-23", "--bogus"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "usage" in r.stderr


def test_truncation_failure_exit_3(capsys):
    code, _, err = run(["lvalue", "--g", "w18", "--d", "-7999999"], capsys)
    assert code == 3 and "truncation failure" in err


def test_waldspurger_pairs_file(tmp_path, capsys):
    p = tmp_path / "pairs.csv"
    p.write_text("n1,n2\n3,7\n3,11\n")
    code, out, _ = run(["lvalue", "--g", "w18", "--waldspurger", "--pairs", str(p)], capsys)
    assert code == 0
    devs = [float(l.split(",")[2]) for l in out.splitlines()[2:]]
    assert len(devs) == 2 and max(devs) < 1e-6
    code, _, _ = run(["lvalue", "--g", "w18", "--waldspurger", "--pairs", str(p), "--tol", "1e-30"],
                     capsys)
    assert code == 3


def test_signs_from_csv(tmp_path, capsys):
    p = tmp_path / "c.csv"
    p.write_text("n,c\n1,1\n3,-1\n5,1\n")
    code, out, _ = run(["signs", "--csv-in", str(p)], capsys)
    assert code == 0 and out.splitlines()[2].startswith("2")


def test_resonance_override_marked(capsys):
    code, out, _ = run(["resonance", "--X", "300", "--estimates", "--L-override", "10",
                        "--M-override", "1000", "--out", "csv"], capsys)
    assert code == 0 and "not the standard choice of L and M" not in out.splitlines()[1]
    cfg = json.loads(out.splitlines()[0][len("# config: "):])
    assert cfg["L_override"] == 10.0 and cfg["note"]
