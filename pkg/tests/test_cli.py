"""End-to-end CLI behavior through main(argv), no subprocesses."""

import json

import pytest

from jitterdisc import (
    CoverSpec,
    read_point_set,
    star_disc_certified_upper,
    star_disc_exact,
)
from jitterdisc.cli import build_parser, main


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(capsys, argv):
    code, out, err = _run(capsys, argv + ["--json"])
    assert code == 0, err
    return json.loads(out)


def test_gen_then_disc_exact(tmp_path, capsys):
    f = str(tmp_path / "ps.txt")
    code, out, err = _run(capsys, ["gen", "--sampler", "jittered", "--m", "4",
                                   "--d", "2", "--seed", "5", "--out", f])
    assert code == 0
    assert "N=16" in out
    ps = read_point_set(f)
    want = star_disc_exact(ps)

    payload = _json(capsys, ["disc", "--in", f, "--method", "exact"])
    assert payload["schema_version"] == 1
    assert payload["kind"] == "exact"
    assert payload["value"] == pytest.approx(want.value, abs=1e-15)
    assert payload["normalized"] == pytest.approx(want.value / 16)
    assert payload["witness"]["corner"] == pytest.approx(list(want.witness.corner))
    assert payload["witness"]["side"] in ("overfull", "underfull")


def test_disc_heuristic_and_certified(tmp_path, capsys):
    f = str(tmp_path / "ps.txt")
    _run(capsys, ["gen", "--m", "4", "--d", "2", "--seed", "5", "--out", f])
    ps = read_point_set(f)
    exact = star_disc_exact(ps).value

    heur = _json(capsys, ["disc", "--in", f, "--method", "heuristic", "--seed", "3"])
    assert heur["kind"] == "lower_witness"
    assert heur["value"] <= exact + 1e-9

    cert = _json(capsys, ["disc", "--in", f, "--method", "certified", "--grid", "64"])
    assert cert["kind"] == "certified_upper"
    assert cert["value"] >= exact - 1e-9
    assert cert["delta"] == pytest.approx(CoverSpec.for_resolution(64, 2).delta)
    lib = star_disc_certified_upper(ps, CoverSpec.for_resolution(64, 2))
    assert cert["value"] == pytest.approx(lib.value, abs=1e-15)


def test_disc_usage_errors(tmp_path, capsys):
    f = str(tmp_path / "ps.txt")
    _run(capsys, ["gen", "--m", "4", "--d", "2", "--out", f])
    code, _, err = _run(capsys, ["disc", "--in", f, "--method", "certified"])
    assert code == 1 and "certified method needs --grid" in err
    code, _, err = _run(capsys, ["disc", "--in", str(tmp_path / "nope.txt"),
                                 "--method", "exact"])
    assert code == 1 and "jitterdisc: error:" in err


def test_gen_usage_errors(tmp_path, capsys):
    code, _, err = _run(capsys, ["gen", "--sampler", "jittered", "--d", "2",
                                 "--out", str(tmp_path / "x.txt")])
    assert code == 1 and "needs --m" in err
    code, _, err = _run(capsys, ["gen", "--sampler", "uniform", "--d", "2",
                                 "--out", str(tmp_path / "x.txt")])
    assert code == 1 and "needs --n" in err


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as e:
        main(["disc"])  # missing required --in/--method
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1


def test_gen_halfcube_header(tmp_path, capsys):
    f = tmp_path / "hc.txt"
    code, _, _ = _run(capsys, ["gen", "--sampler", "halfcube", "--half-cube", "2",
                               "--d", "3", "--out", str(f)])
    assert code == 0
    assert f.read_text().splitlines()[0].split() == ["3", "4"]


def test_witness_schemes(tmp_path, capsys):
    f = str(tmp_path / "ps.txt")
    _run(capsys, ["gen", "--m", "8", "--d", "2", "--seed", "2", "--out", f])
    w = _json(capsys, ["witness", "--in", f, "--scheme", "construct",
                       "--r", "0.5,0.25"])
    assert w["scheme"] == "construct"
    assert len(w["box"]) == 2 and len(w["slabs"]) == 2
    assert all(v >= 0.0 for v in w["per_dim_disc"])
    w = _json(capsys, ["witness", "--in", f, "--scheme", "discrete"])
    assert w["closed"] == [False, False]
    w = _json(capsys, ["witness", "--in", f, "--scheme", "smallm"])
    assert w["total"] >= 0.0
    code, _, err = _run(capsys, ["witness", "--in", f, "--scheme", "construct"])
    assert code == 1 and "needs --r" in err


def test_zerotest_passes(capsys):
    payload = _json(capsys, ["zerotest", "--m", "3", "--d", "2",
                             "--reps", "1000", "--boxes", "4", "--seed", "9"])
    assert payload["passed"] is True
    assert len(payload["results"]) == 4
    code, _, _ = _run(capsys, ["zerotest", "--half-cube", "2", "--d", "3",
                               "--reps", "1000", "--boxes", "2"])
    assert code == 0


def test_zerotest_needs_a_spec(capsys):
    code, _, err = _run(capsys, ["zerotest", "--d", "2", "--reps", "1000",
                                 "--boxes", "2"])
    assert code == 1 and "--m" in err


def test_maxbin_with_oracle(capsys):
    p = _json(capsys, ["maxbin", "--n", "2000", "--k", "10000", "--c", "1.0",
                       "--expect", "--oracle"])
    assert p["alpha"] > 0
    assert 0 < p["prob_bound"] < 1
    assert p["prob_margin"] >= 0  # bound never exceeds the exact oracle
    assert p["expect_margin"] >= 0
    code, _, err = _run(capsys, ["maxbin", "--n", "100", "--k", "500"])
    assert code == 1 and "--c and/or --expect" in err


def test_maxbin_inapplicable_parameters(capsys):
    code, _, err = _run(capsys, ["maxbin", "--n", "10", "--k", "500", "--c", "0.0"])
    assert code == 1 and "jitterdisc: error" in err


def test_bounds_payload(capsys):
    p = _json(capsys, ["bounds", "--m", "808", "--d", "2"])
    names = set(p["bounds"])
    assert names == {"lower_main", "smallm_lower", "upper_thm", "mc_reference"}
    assert p["bounds"]["lower_main"]["applicable"] is True
    from jitterdisc import lower_main_bound

    assert p["bounds"]["lower_main"]["value"] == pytest.approx(
        lower_main_bound(808, 2).value
    )
    # k = 1: the main lower bound has no value at all, reported as null
    p = _json(capsys, ["bounds", "--m", "3", "--d", "2"])
    assert p["bounds"]["lower_main"]["value"] is None
    assert p["bounds"]["lower_main"]["applicable"] is False
    assert p["bounds"]["smallm_lower"]["value"] > 0


def test_sweep_collapse_pipeline(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    out = tmp_path / "run.csv"
    cfg.write_text(
        "[sweep]\n"
        "sampler = jittered\n"
        "grid = 4x2, 8x2\n"
        "replications = 20\n"
        "method = exact\n"
        "seed = 3\n"
        f"out = {out}\n"
    )
    payload = _json(capsys, ["sweep", "--config", str(cfg), "--deterministic"])
    assert payload["csv"] == str(out)
    assert len(payload["records"]) == 2
    assert out.exists()

    code, stdout, _ = _run(capsys, ["collapse", "--in", str(out)])
    assert code == 0 and "passed = True" in stdout
    # an absurdly tight threshold turns the same data into a failed check
    code, _, _ = _run(capsys, ["collapse", "--in", str(out),
                               "--threshold", "1.0001"])
    assert code == 2


def test_sweep_deterministic_bytes_across_threads(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "[sweep]\nsampler = jittered\ngrid = 4x2\n"
        "replications = 10\nmethod = exact\nseed = 5\n"
    )
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(["sweep", "--config", str(cfg), "--out", str(a),
                 "--deterministic", "--threads", "1"]) == 0
    assert main(["sweep", "--config", str(cfg), "--out", str(b),
                 "--deterministic", "--threads", "4"]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_khdemo_paths(tmp_path, capsys):
    p = _json(capsys, ["khdemo", "--sampler", "jittered", "--m", "4", "--d", "2"])
    assert p["holds"] is True
    assert p["variation"] == 3.0
    f = str(tmp_path / "ps.txt")
    _run(capsys, ["gen", "--sampler", "lhs", "--n", "30", "--d", "2", "--out", f])
    code, out, _ = _run(capsys, ["khdemo", "--in", f])
    assert code == 0 and "holds = True" in out
    code, _, err = _run(capsys, ["khdemo"])
    assert code == 1 and "--in FILE or --d" in err


def test_threads_env_default(monkeypatch):
    monkeypatch.setenv("JITTERDISC_THREADS", "3")
    args = build_parser().parse_args(["gen", "--m", "2", "--d", "1", "--out", "x"])
    assert args.threads == 3
    monkeypatch.setenv("JITTERDISC_THREADS", "banana")
    args = build_parser().parse_args(["gen", "--m", "2", "--d", "1", "--out", "x"])
    assert args.threads == 1
    # an explicit flag beats the environment
    monkeypatch.setenv("JITTERDISC_THREADS", "3")
    args = build_parser().parse_args(
        ["gen", "--m", "2", "--d", "1", "--out", "x", "--threads", "7"]
    )
    assert args.threads == 7
