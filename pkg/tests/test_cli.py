"""CLI adapter checks: exit codes, determinism, config handling, parity."""

import json
import math
from fractions import Fraction

from cone_spectra import presets, stability
from cone_spectra.cli import (
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    parse_window,
    run,
)
from cone_spectra.geometry import LawlorParams, lawlor_angles


def test_indicial_example():
    code, out = run(["indicial", "--cone", "hl", "--window", "-2:1"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert {"lambda": 0.0, "dimension": 7} in report["result"]["roots"]
    assert report["tool"] == "cone-spectra"
    assert "version" in report and "config" in report
    assert "Harvey-Lawson" in report["provenance"]


def test_stability_example():
    code, out = run(["stability", "--cone", "hl", "--sym-dim", "2"])
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["s_ind"] == "1"
    assert result["rigid"] is True


def test_lawlor_angles_example():
    code, out = run(["lawlor", "angles", "--a", "1,1,1"])
    assert code == EXIT_OK
    theta = json.loads(out)["result"]["theta"]
    assert all(abs(t - 1.0471975511965976) < 1e-7 for t in theta)


def test_cli_matches_library():
    code, out = run(["lawlor", "angles", "--a", "2.5,0.7,1.3"])
    direct = lawlor_angles(LawlorParams((2.5, 0.7, 1.3)))
    assert json.loads(out)["result"]["theta"] == list(direct.theta)
    code, out = run(["stability", "--cone", "plane-pair", "--sym-dim", "6"])
    direct = stability.stability_report(presets.plane_pair_cone())
    assert json.loads(out)["result"] == direct


def test_byte_identical_reruns():
    args = ["lawlor", "verify", "--a", "1,1,1", "--samples", "25", "--seed", "9"]
    assert run(args) == run(args)
    args = ["spectrum", "mesh", "--builtin", "icosphere:1", "--count", "4"]
    assert run(args) == run(args)


def test_exit_codes():
    assert run(["nonsense"])[0] == EXIT_USAGE
    assert run(["lawlor", "angles"])[0] == EXIT_VALIDATION  # missing --a
    assert run(["stability", "--cone", "nope"])[0] == EXIT_VALIDATION
    assert run(["indicial", "--cone", "hl", "--window", "-9:1"])[0] == EXIT_VALIDATION
    # the fully symmetric neck degenerates the subtracted decay fit
    code, out = run(["lawlor", "decay", "--a", "1,1,1", "--subtract"])
    assert code == EXIT_NUMERICAL
    assert json.loads(out)["error"] == "FitUnstable"


def test_wall_crossing_report():
    code, out = run(
        ["index", "--kind", "ac", "--end", "hl:-0.9", "--cross", "-0.9:0.5"]
    )
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["index"] == 1
    assert result["wall_crossing"]["jump"] == 7
    assert result["wall_crossing"]["crossed_roots"] == [
        {"lambda": 0.0, "dimension": 7}
    ]
    assert result["ends"][0]["chamber"] == [-1.0, 0.0]


def test_rate_on_wall_is_validation_error():
    assert run(["index", "--kind", "ac", "--end", "hl:0"])[0] == EXIT_VALIDATION


def test_spectrum_torus_exact_metric():
    code, out = run(["spectrum", "torus", "--metric", "2/3,1/3,2/3", "--cutoff", "7"])
    assert code == EXIT_OK
    entries = json.loads(out)["result"]["entries"]
    assert entries == [
        {"eigenvalue": 0.0, "multiplicity": 1},
        {"eigenvalue": 2.0, "multiplicity": 6},
        {"eigenvalue": 6.0, "multiplicity": 6},
    ]


def test_global_flags_after_subcommand():
    before = run(["--seed", "3", "lawlor", "verify", "--a", "1,1,1", "--samples", "10"])
    after = run(["lawlor", "verify", "--a", "1,1,1", "--samples", "10", "--seed", "3"])
    assert before == after and before[0] == EXIT_OK
    code, out = run(["spectrum", "sphere", "--cutoff", "6", "--output-format", "csv"])
    assert code == EXIT_OK
    assert out.startswith("eigenvalue")


def test_csv_output():
    code, out = run(["--output-format", "csv", "spectrum", "sphere", "--cutoff", "6"])
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "eigenvalue,multiplicity"
    assert lines[1].startswith("0.0,1")
    # csv is undefined for scalar reports
    assert run(["--output-format", "csv", "g2", "check", "--tuples", "2"])[0] == EXIT_VALIDATION


def test_profile_csv(tmp_path):
    code, out = run(
        ["--output-format", "csv", "lawlor", "profile", "--a", "1,1,1",
         "--y-min", "-1", "--y-max", "1", "--count", "5"]
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "y,theta1,theta2,theta3,z1,z2,z3"
    assert len(lines) == 6


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\ncutoff = 7\nwindow = -2:1\n")
    code, out = run(["--config", str(cfg), "indicial", "--cone", "hl"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["config"]["cutoff"] == 7.0
    assert report["config"]["window"] == "-2:1"
    # explicit flags beat the config file
    code, out = run(
        ["--config", str(cfg), "indicial", "--cone", "hl", "--window", "[0:1]"]
    )
    assert json.loads(out)["config"]["window"] == "[0:1]"


def test_config_unknown_key_rejected(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("frobnicate = 3\n")
    code, out = run(["--config", str(cfg), "indicial", "--cone", "hl"])
    assert code == EXIT_VALIDATION
    assert "frobnicate" in json.loads(out)["message"]


def test_threads_env_fallback(monkeypatch):
    monkeypatch.setenv("CONE_SPECTRA_THREADS", "4")
    code, out = run(["g2", "check", "--tuples", "2"])
    assert code == EXIT_OK
    assert json.loads(out)["config"]["threads"] == 4
    monkeypatch.setenv("CONE_SPECTRA_THREADS", "0")
    assert run(["g2", "check", "--tuples", "2"])[0] == EXIT_VALIDATION


def test_window_parsing():
    w = parse_window("(-1:1]")
    assert not w.include_lo and w.include_hi
    assert w.lo == Fraction(-1) and w.hi == Fraction(1)
    w = parse_window("-2:0.5")
    assert w.include_lo and w.include_hi
    assert w.hi == Fraction(1, 2)


def test_planes_subcommand():
    third = repr(math.pi / 3)
    code, out = run(["planes", "--theta", f"{third},{third},{third}"])
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["associative"] == [True, True]
    assert result["splitting_dimensions"] == [1, 3, 3]


def test_user_table_cone(tmp_path):
    table = tmp_path / "cone.json"
    table.write_text(
        json.dumps(
            {
                "rows": [
                    {"lambda": -1, "dimension": 2},
                    {"lambda": 0, "dimension": 7},
                    {"lambda": 1, "dimension": 12},
                ],
                "coverage": [-3, 3],
            }
        )
    )
    code, out = run(["stability", "--cone", f"table:{table}", "--sym-dim", "2"])
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["s_ind"] == "1" and result["rigid"] is True
    code, out = run(["index", "--kind", "ac", "--end", f"table:{table}:-0.5"])
    assert code == EXIT_OK
    assert json.loads(out)["result"]["index"] == 1


def test_hl_subcommands():
    code, out = run(["hl", "xi-relation", "--r", "50"])
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["residual"] < 1e-3
    assert abs(result["single_branch_deviation"] - 0.01) < 2e-4
    code, out = run(["hl", "verify", "--branch", "1", "--samples", "40"])
    assert code == EXIT_OK
    assert json.loads(out)["result"]["branch_1"]["max_im_omega"] < 1e-6
