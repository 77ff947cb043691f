"""Sweep harness: config grammar, seeding policy, CSV format, analyses."""

import math
import os

import pytest

from jitterdisc import (
    FullGridSpec,
    Kind,
    ParseError,
    SweepConfig,
    ValidationError,
    collapse_analysis,
    collapse_ratio,
    generate_jittered,
    generate_uniform,
    kh_demo,
    parse_config,
    product_integrand_variation,
    read_sweep_csv,
    run_sweep,
    witness_discrete,
    write_sweep_csv,
)
from jitterdisc.harness import CSV_COLUMNS, with_output


def _small_config(**over):
    base = dict(
        sampler="jittered",
        grid=((4, 2),),
        replications=5,
        method="exact",
        seed=11,
    )
    base.update(over)
    return SweepConfig(**base)


# ---------------------------------------------------------------- config

def test_sweep_config_validation():
    with pytest.raises(ValidationError):
        _small_config(sampler="sobol")
    with pytest.raises(ValidationError):
        _small_config(method="magic")
    with pytest.raises(ValidationError):
        _small_config(replications=0)
    with pytest.raises(ValidationError):
        _small_config(grid=())
    with pytest.raises(ValidationError):
        _small_config(method="certified")  # no cover_resolution
    _small_config(method="certified", cover_resolution=64).validate()


def test_validate_rejects_infeasible_cells():
    cfg = _small_config(sampler="uniform", grid=((5000, 6),), method="exact")
    with pytest.raises(ValidationError) as e:
        cfg.validate()
    assert "5000x6" in str(e.value)
    cfg = _small_config(method="certified", cover_resolution=2000, grid=((4, 3),))
    with pytest.raises(ValidationError):
        cfg.validate()


def test_parse_config_roundtrip(tmp_path):
    path = tmp_path / "sweep.cfg"
    path.write_text(
        "# comment line\n"
        "[sweep]\n"
        "sampler = jittered\n"
        "grid = 4x2, 8x2\n"
        "replications = 10\n"
        "method = heuristic   # trailing comment\n"
        "restarts = 4\n"
        "seed = 7\n"
    )
    cfg = parse_config(path)
    assert cfg.sampler == "jittered"
    assert cfg.grid == ((4, 2), (8, 2))
    assert cfg.replications == 10
    assert cfg.method == "heuristic"
    assert cfg.restarts == 4
    assert cfg.seed == 7
    assert cfg.out is None


def test_parse_config_space_separated_grid(tmp_path):
    path = tmp_path / "sweep.cfg"
    path.write_text(
        "[sweep]\nsampler = uniform\ngrid = 16x2 32x3\n"
        "replications = 2\nmethod = heuristic\n"
    )
    assert parse_config(path).grid == ((16, 2), (32, 3))


@pytest.mark.parametrize(
    "body,fragment",
    [
        ("[other]\n", "unknown section"),
        ("sampler = jittered\n", "outside the [sweep] section"),
        ("[sweep]\nsampler jittered\n", "key = value"),
        ("[sweep]\nflavor = mint\n", "unknown key"),
        ("[sweep]\nseed = 1\nseed = 2\n", "duplicate key"),
        ("[sweep]\nsampler =\n", "empty value"),
        ("[sweep]\nsampler = jittered\n", "missing required key"),
        (
            "[sweep]\nsampler = jittered\ngrid = 4-2\n"
            "replications = 1\nmethod = exact\n",
            "SIZExDIM",
        ),
        (
            "[sweep]\nsampler = jittered\ngrid = 4x2\n"
            "replications = ten\nmethod = exact\n",
            "integer",
        ),
    ],
)
def test_parse_config_errors(tmp_path, body, fragment):
    path = tmp_path / "bad.cfg"
    path.write_text(body)
    with pytest.raises(ParseError) as e:
        parse_config(path)
    assert fragment in str(e.value)
    assert "bad.cfg:" in str(e.value)


def test_with_output():
    cfg = _small_config()
    assert with_output(cfg, None) is cfg
    assert with_output(cfg, "x.csv").out == "x.csv"


# ---------------------------------------------------------------- sweeps

def test_run_sweep_record_fields():
    run = run_sweep(_small_config())
    assert len(run.records) == 1
    rec = run.records[0]
    assert (rec.m, rec.d, rec.n) == (4, 2, 16)
    assert rec.sampler == "jittered" and rec.method == "exact"
    assert rec.replications == 5
    assert len(run.values[0]) == 5
    assert rec.mean_disc == pytest.approx(math.fsum(run.values[0]) / 5)
    assert rec.ci95_lo <= rec.mean_disc <= rec.ci95_hi
    assert rec.mean_normalized == pytest.approx(rec.mean_disc / 16)
    # m >= d: the discrete scheme supplies the witness column
    assert not math.isnan(rec.witness_mean)
    assert not math.isnan(rec.bound_lower)
    assert not math.isnan(rec.bound_upper)


def test_run_sweep_witness_policy():
    # m < d falls back to the small-m scheme
    run = run_sweep(_small_config(grid=((2, 3),), replications=5))
    assert not math.isnan(run.records[0].witness_mean)
    # unstratified samplers carry no witness or bounds
    run = run_sweep(_small_config(sampler="uniform", grid=((9, 2),)))
    rec = run.records[0]
    assert rec.m == 0
    assert math.isnan(rec.witness_mean)
    assert math.isnan(rec.bound_lower) and math.isnan(rec.bound_upper)


def test_run_sweep_small_m_bound_fallback():
    # floor(m/d) <= 1 must route to the small-m lower bound, not raise
    run = run_sweep(_small_config(grid=((3, 5),), replications=3, method="heuristic"))
    rec = run.records[0]
    assert rec.bound_lower > 0.0
    assert math.isnan(rec.bound_upper)  # m < d is outside the upper theorem


def test_run_sweep_halfcube_m_column():
    run = run_sweep(_small_config(sampler="halfcube", grid=((3, 6),), method="exact"))
    rec = run.records[0]
    assert rec.m == 3 and rec.n == 8 and rec.d == 6


def test_witness_values_match_direct_calls():
    cfg = _small_config(grid=((8, 2),), replications=3)
    run = run_sweep(cfg)
    from jitterdisc import rng

    master = rng.mix(cfg.seed, 0)
    for t in range(3):
        rep_seed = rng.mix(master, t)
        ps = generate_jittered(FullGridSpec(8, 2), rng.mix(rep_seed, 0))
        assert run.witness_values[0][t] == pytest.approx(witness_discrete(ps).total)


def test_threads_do_not_change_results():
    cfg = _small_config(grid=((4, 2), (8, 2)), replications=8)
    one = run_sweep(cfg, threads=1)
    four = run_sweep(cfg, threads=4)
    assert one.values == four.values
    assert one.records == four.records
    with pytest.raises(ValidationError):
        run_sweep(cfg, threads=0)


def test_sweep_csv_roundtrip(tmp_path):
    out = str(tmp_path / "run.csv")
    cfg = _small_config(out=out)
    run = run_sweep(cfg, deterministic=True)
    assert run.csv_path == out
    back = read_sweep_csv(out)
    assert back == list(run.records)


def test_csv_header_and_stamp(tmp_path):
    cfg = _small_config()
    run = run_sweep(cfg)
    det = tmp_path / "det.csv"
    stamped = tmp_path / "stamped.csv"
    write_sweep_csv(det, run.records, deterministic=True)
    write_sweep_csv(stamped, run.records, deterministic=False)
    det_lines = det.read_text().splitlines()
    assert det_lines[0] == ",".join(CSV_COLUMNS)
    stamped_lines = stamped.read_text().splitlines()
    assert stamped_lines[0].startswith("# generated ")
    assert stamped_lines[1:] == det_lines


def test_read_sweep_csv_errors(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("")
    with pytest.raises(ParseError):
        read_sweep_csv(p)
    p.write_text("a,b\n")
    with pytest.raises(ParseError) as e:
        read_sweep_csv(p)
    assert "header" in str(e.value)
    header = ",".join(CSV_COLUMNS)
    p.write_text(header + "\n1,2\n")
    with pytest.raises(ParseError) as e:
        read_sweep_csv(p)
    assert "expected 15 fields" in str(e.value)
    p.write_text(header + "\n" + ",".join(["x"] * 15) + "\n")
    with pytest.raises(ParseError):
        read_sweep_csv(p)


def test_deterministic_csv_bytes_stable(tmp_path):
    cfg = _small_config(grid=((4, 2),), replications=6)
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run_sweep(with_output(cfg, str(a)), threads=1, deterministic=True)
    run_sweep(with_output(cfg, str(b)), threads=3, deterministic=True)
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------- analyses

def test_collapse_ratio_formulas():
    run = run_sweep(_small_config(grid=((8, 2),), replications=4))
    rec = run.records[0]
    want = rec.mean_disc / (2 * 8 ** 0.5 * math.sqrt(1 + math.log(4)))
    assert collapse_ratio(rec) == pytest.approx(want, rel=1e-15)
    urec = run_sweep(_small_config(sampler="uniform", grid=((9, 2),))).records[0]
    assert collapse_ratio(urec) == pytest.approx(
        urec.mean_disc / math.sqrt(2 * 9), rel=1e-15
    )


def test_collapse_ratio_guards_log_domain():
    # 1 + ln(m/d) dips below zero at m=2, d=6
    run = run_sweep(
        _small_config(grid=((2, 6),), replications=3, method="heuristic", restarts=2)
    )
    with pytest.raises(ValidationError):
        collapse_ratio(run.records[0])


def test_collapse_analysis(tmp_path):
    out = str(tmp_path / "c.csv")
    cfg = _small_config(grid=((4, 2), (8, 2)), replications=20, out=out)
    run_sweep(cfg, deterministic=True)
    rep = collapse_analysis(out)
    assert rep.threshold == 1.5
    assert rep.spread == pytest.approx(rep.max_ratio / rep.min_ratio)
    assert rep.passed == (rep.spread <= 1.5)
    assert len(rep.ratios) == 2
    with pytest.raises(ValidationError):
        collapse_analysis(out, threshold=0.5)


def test_kh_demo_exact_path():
    ps = generate_jittered(FullGridSpec(4, 2), seed=21)
    rep = kh_demo(ps)
    assert rep.disc_kind is Kind.EXACT
    assert rep.integral == 0.25
    assert rep.variation == 3.0
    assert rep.holds
    assert rep.bound == pytest.approx(rep.disc_value / 16 * 3)


def test_kh_demo_certified_fallback():
    ps = generate_uniform(700, 3, seed=9)  # (701)^3 exceeds the exact budget
    rep = kh_demo(ps)
    assert rep.disc_kind is Kind.CERTIFIED_UPPER
    assert rep.holds


def test_product_integrand_variation():
    assert product_integrand_variation(1) == 1.0
    assert product_integrand_variation(3) == 7.0
    with pytest.raises(ValidationError):
        product_integrand_variation(0)
