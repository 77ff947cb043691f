"""Replication sweeps over samplers and discrepancy methods.

A sweep walks a grid of (size, dimension) cells, generates R point sets
per cell from per-replication derived seeds, measures each with the
configured method, and aggregates into one CSV row per cell.  Seeds
derive in two levels, cell master = mix(experiment seed, cell index)
and replication seed = mix(master, replication index); the generator
and the heuristic search then split the replication seed again so their
streams never collide.  Replications are pure functions of their seed,
so the worker count cannot change any output byte: results are reduced
in replication order with compensated summation.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from . import bounds, rng
from .discrepancy import (
    DEFAULT_COVER_BUDGET,
    DEFAULT_EXACT_BUDGET,
    CoverSpec,
    Kind,
    exact_feasible,
    star_disc_certified_upper,
    star_disc_exact,
    star_disc_heuristic,
)
from .errors import (
    ApplicabilityError,
    ExactInfeasibleError,
    ParseError,
    ValidationError,
)
from .io import format_float
from .sampler import (
    HARD_CAP,
    FullGridSpec,
    HalfCubeSpec,
    PointSet,
    generate_half_cube,
    generate_jittered,
    generate_lhs,
    generate_uniform,
)
from .witness import witness_discrete, witness_smallm

SAMPLERS = ("jittered", "halfcube", "uniform", "lhs")
METHODS = ("exact", "heuristic", "certified")

#: CSV column order; the first grid column holds m for jittered,
#: d' for half-cube, and 0 for the unstratified samplers.
CSV_COLUMNS = (
    "m", "d", "N", "sampler", "method", "R",
    "mean_disc", "std_disc", "ci95_lo", "ci95_hi", "mean_normalized",
    "witness_mean", "bound_lower", "bound_upper", "seed",
)


@dataclass(frozen=True)
class SweepConfig:
    sampler: str
    grid: tuple[tuple[int, int], ...]
    replications: int
    method: str
    restarts: int = 16
    cover_resolution: int | None = None
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.sampler not in SAMPLERS:
            raise ValidationError(f"unknown sampler {self.sampler!r}; choose from {SAMPLERS}")
        if self.method not in METHODS:
            raise ValidationError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.replications < 1:
            raise ValidationError("need replications >= 1")
        if self.restarts < 1:
            raise ValidationError("need restarts >= 1")
        if not self.grid:
            raise ValidationError("grid must name at least one (size, dimension) cell")
        grid = tuple((int(a), int(b)) for a, b in self.grid)
        object.__setattr__(self, "grid", grid)
        if self.method == "certified" and self.cover_resolution is None:
            raise ValidationError("certified method needs cover_resolution")

    def validate(self) -> None:
        """Fail-fast feasibility of every grid cell, before any compute."""
        for a, d in self.grid:
            n = _cell_points(self.sampler, a, d)
            where = f"grid cell {a}x{d} (sampler {self.sampler}, N={n})"
            if n > HARD_CAP:
                raise ValidationError(f"{where}: exceeds the {HARD_CAP}-point cap")
            if self.method == "exact" and not exact_feasible(n, d):
                raise ValidationError(
                    f"{where}: exact method infeasible within "
                    f"{DEFAULT_EXACT_BUDGET:.3g} candidate evaluations"
                )
            if self.method == "certified":
                work = (self.cover_resolution + 1) ** d
                if work > DEFAULT_COVER_BUDGET:
                    raise ValidationError(
                        f"{where}: certified cover needs {work:.3g} corners, "
                        f"budget {DEFAULT_COVER_BUDGET:.3g}"
                    )


def _cell_points(sampler: str, a: int, d: int) -> int:
    if sampler == "jittered":
        FullGridSpec(a, d)
        return a ** d
    if sampler == "halfcube":
        HalfCubeSpec(a, d)
        return 2 ** a
    if a < 1:
        raise ValidationError(f"need n >= 1, got {a}")
    if d < 1:
        raise ValidationError(f"need d >= 1, got {d}")
    return a


@dataclass(frozen=True)
class SweepRecord:
    m: int
    d: int
    n: int
    sampler: str
    method: str
    replications: int
    mean_disc: float
    std_disc: float
    ci95_lo: float
    ci95_hi: float
    mean_normalized: float
    witness_mean: float
    bound_lower: float
    bound_upper: float
    seed: int


@dataclass(frozen=True)
class SweepRun:
    records: tuple[SweepRecord, ...]
    values: tuple[tuple[float, ...], ...]
    witness_values: tuple[tuple[float, ...] | None, ...]
    csv_path: str | None


def _generate(sampler: str, a: int, d: int, seed: int) -> PointSet:
    if sampler == "jittered":
        return generate_jittered(FullGridSpec(a, d), seed)
    if sampler == "halfcube":
        return generate_half_cube(HalfCubeSpec(a, d), seed)
    if sampler == "uniform":
        return generate_uniform(a, d, seed)
    return generate_lhs(a, d, seed)


def _replicate(config: SweepConfig, a: int, d: int, rep_seed: int):
    ps = _generate(config.sampler, a, d, rng.mix(rep_seed, 0))
    if config.method == "exact":
        value = star_disc_exact(ps).value
    elif config.method == "heuristic":
        value = star_disc_heuristic(
            ps, restarts=config.restarts, seed=rng.mix(rep_seed, 1)
        ).value
    else:
        cover = CoverSpec.for_resolution(config.cover_resolution, d)
        value = star_disc_certified_upper(ps, cover).value
    witness = math.nan
    if config.sampler == "jittered":
        scheme = witness_discrete if a >= d else witness_smallm
        witness = scheme(ps).total
    return value, witness


def run_sweep(
    config: SweepConfig, threads: int = 1, deterministic: bool = False
) -> SweepRun:
    """Execute the sweep; write a CSV when the config names an output."""
    config.validate()
    if threads < 1:
        raise ValidationError("need threads >= 1")
    records = []
    all_values = []
    all_witness = []
    for gi, (a, d) in enumerate(config.grid):
        master = rng.mix(config.seed, gi)
        rep_seeds = [rng.mix(master, t) for t in range(config.replications)]
        if threads == 1:
            results = [_replicate(config, a, d, s) for s in rep_seeds]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda s: _replicate(config, a, d, s), rep_seeds))
        values = tuple(v for v, _ in results)
        witness_vals = tuple(w for _, w in results)
        records.append(_aggregate(config, a, d, master, values, witness_vals))
        all_values.append(values)
        all_witness.append(witness_vals if config.sampler == "jittered" else None)
    csv_path = None
    if config.out:
        write_sweep_csv(config.out, records, deterministic=deterministic)
        csv_path = config.out
    return SweepRun(tuple(records), tuple(all_values), tuple(all_witness), csv_path)


def _aggregate(config, a, d, master, values, witness_vals) -> SweepRecord:
    r = config.replications
    n = _cell_points(config.sampler, a, d)
    mean = math.fsum(values) / r
    var = math.fsum((v - mean) ** 2 for v in values) / (r - 1) if r > 1 else 0.0
    std = math.sqrt(var)
    half = 1.96 * std / math.sqrt(r)
    witness_mean = math.nan
    if config.sampler == "jittered":
        witness_mean = math.fsum(witness_vals) / r
    lower = upper = math.nan
    if config.sampler == "jittered" and d >= 2:
        try:
            lo = bounds.lower_main_bound(a, d)
        except ApplicabilityError:
            lo = bounds.smallm_lower_bound(a, d)
        else:
            if not lo.applicable:
                lo = bounds.smallm_lower_bound(a, d)
        lower = lo.value
        up = bounds.upper_thm_bound(a, d)
        if up.applicable:
            upper = up.value
    return SweepRecord(
        m=a if config.sampler in ("jittered", "halfcube") else 0,
        d=d,
        n=n,
        sampler=config.sampler,
        method=config.method,
        replications=r,
        mean_disc=mean,
        std_disc=std,
        ci95_lo=mean - half,
        ci95_hi=mean + half,
        mean_normalized=mean / n,
        witness_mean=witness_mean,
        bound_lower=lower,
        bound_upper=upper,
        seed=master,
    )


# --------------------------------------------------------------------------
# CSV

def write_sweep_csv(path, records, deterministic: bool = False) -> None:
    lines = []
    if not deterministic:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        lines.append(f"# generated {stamp}")
    lines.append(",".join(CSV_COLUMNS))
    for rec in records:
        lines.append(",".join((
            str(rec.m), str(rec.d), str(rec.n), rec.sampler, rec.method,
            str(rec.replications),
            format_float(rec.mean_disc), format_float(rec.std_disc),
            format_float(rec.ci95_lo), format_float(rec.ci95_hi),
            format_float(rec.mean_normalized), format_float(rec.witness_mean),
            format_float(rec.bound_lower), format_float(rec.bound_upper),
            str(rec.seed),
        )))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sweep_csv(path) -> list[SweepRecord]:
    path = os.fspath(path)
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    rows = [
        (i + 1, ln) for i, ln in enumerate(lines)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not rows:
        raise ParseError("no header row", path=path, line=1)
    lineno, header = rows[0]
    if tuple(header.split(",")) != CSV_COLUMNS:
        raise ParseError(
            f"header must be {','.join(CSV_COLUMNS)}", path=path, line=lineno
        )
    records = []
    for lineno, ln in rows[1:]:
        fields = ln.split(",")
        if len(fields) != len(CSV_COLUMNS):
            raise ParseError(
                f"expected {len(CSV_COLUMNS)} fields, got {len(fields)}",
                path=path, line=lineno,
            )
        try:
            records.append(SweepRecord(
                m=int(fields[0]), d=int(fields[1]), n=int(fields[2]),
                sampler=fields[3], method=fields[4], replications=int(fields[5]),
                mean_disc=float(fields[6]), std_disc=float(fields[7]),
                ci95_lo=float(fields[8]), ci95_hi=float(fields[9]),
                mean_normalized=float(fields[10]), witness_mean=float(fields[11]),
                bound_lower=float(fields[12]), bound_upper=float(fields[13]),
                seed=int(fields[14]),
            ))
        except ValueError as exc:
            raise ParseError(f"bad field: {exc}", path=path, line=lineno)
    return records


# --------------------------------------------------------------------------
# analyses over sweep output

@dataclass(frozen=True)
class CollapseReport:
    ratios: tuple[float, ...]
    min_ratio: float
    max_ratio: float
    spread: float
    threshold: float
    passed: bool


def collapse_ratio(rec: SweepRecord) -> float:
    """Mean discrepancy over its predicted growth rate: the jittered rate
    d m^{(d-1)/2} sqrt(1 + ln(m/d)), or sqrt(dN) for unstratified rows."""
    if rec.sampler == "jittered":
        radicand = 1.0 + math.log(rec.m / rec.d)
        if radicand <= 0.0:
            raise ValidationError(
                f"collapse rate undefined at m={rec.m}, d={rec.d}: 1 + ln(m/d) <= 0"
            )
        return rec.mean_disc / (rec.d * rec.m ** ((rec.d - 1) / 2) * math.sqrt(radicand))
    return rec.mean_disc / math.sqrt(rec.d * rec.n)


def collapse_analysis(csv_path, threshold: float = 1.5) -> CollapseReport:
    """Spread of the rate-normalized means across grid cells; a flat
    profile (spread close to 1) is the scaling-collapse signature."""
    records = read_sweep_csv(csv_path)
    if not records:
        raise ValidationError(f"{csv_path}: no data rows")
    if threshold < 1.0:
        raise ValidationError("threshold must be >= 1")
    ratios = tuple(collapse_ratio(rec) for rec in records)
    lo, hi = min(ratios), max(ratios)
    if lo <= 0.0:
        raise ValidationError("nonpositive collapse ratio; mean_disc must be positive")
    spread = hi / lo
    return CollapseReport(ratios, lo, hi, spread, threshold, spread <= threshold)


# --------------------------------------------------------------------------
# quadrature demo

def product_integrand_variation(d: int) -> float:
    """Hardy-Krause variation of f(x) = prod x_i on [0,1]^d, which is
    2^d - 1.

    Anchoring at 1, V_HK(f) sums the Vitali variation of f restricted to
    every nonempty coordinate subset u (remaining coordinates pinned at
    1).  Each restriction is the product over u, whose mixed partial
    derivative in the u variables is identically 1, so each Vitali term
    is integral(1) = 1 and the sum over the 2^d - 1 subsets follows.
    """
    if d < 1:
        raise ValidationError(f"need d >= 1, got {d}")
    return float(2 ** d - 1)


@dataclass(frozen=True)
class KHReport:
    n: int
    d: int
    empirical_mean: float
    integral: float
    error: float
    disc_value: float
    disc_kind: Kind
    variation: float
    bound: float
    holds: bool


def kh_demo(ps: PointSet) -> KHReport:
    """Quadrature error of f(x) = prod x_i versus its discrepancy bound,
    |mean f(p) - 2^-d| <= (D*/N) V_HK(f).

    Uses the exact star discrepancy when feasible, else a certified
    upper bound, so the right side always dominates the true bound.
    """
    values = ps.points.prod(axis=1)
    mean = math.fsum(float(v) for v in values) / ps.n
    integral = 2.0 ** -ps.d
    error = abs(mean - integral)
    try:
        est = star_disc_exact(ps)
    except ExactInfeasibleError:
        res = max(1, int(DEFAULT_COVER_BUDGET ** (1.0 / ps.d)) - 1)
        est = star_disc_certified_upper(ps, CoverSpec.for_resolution(res, ps.d))
    variation = product_integrand_variation(ps.d)
    bound = est.value / ps.n * variation
    return KHReport(
        n=ps.n, d=ps.d, empirical_mean=mean, integral=integral, error=error,
        disc_value=est.value, disc_kind=est.kind, variation=variation,
        bound=bound, holds=error <= bound + 1e-12,
    )


# --------------------------------------------------------------------------
# config files

_CONFIG_KEYS = (
    "sampler", "grid", "replications", "method",
    "restarts", "cover_resolution", "seed", "out",
)
_REQUIRED_KEYS = ("sampler", "grid", "replications", "method")


def parse_config(path) -> SweepConfig:
    """Flat key-value sweep config:

        [sweep]
        sampler = jittered        # jittered | halfcube | uniform | lhs
        grid = 4x2, 8x2, 16x2     # size x dimension cells
        replications = 200
        method = exact            # exact | heuristic | certified
        seed = 1

    plus optional restarts, cover_resolution, and out keys.
    """
    path = os.fspath(path)
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    section = None
    found: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(lines, 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip()
            if section != "sweep":
                raise ParseError(f"unknown section [{section}]", path=path, line=lineno)
            continue
        if "=" not in s:
            raise ParseError("expected 'key = value'", path=path, line=lineno)
        if section != "sweep":
            raise ParseError("key outside the [sweep] section", path=path, line=lineno)
        key, _, val = s.partition("=")
        key = key.strip()
        val = val.split("#", 1)[0].strip()
        if key not in _CONFIG_KEYS:
            raise ParseError(f"unknown key {key!r}", path=path, line=lineno)
        if key in found:
            raise ParseError(f"duplicate key {key!r}", path=path, line=lineno)
        if not val:
            raise ParseError(f"empty value for {key!r}", path=path, line=lineno)
        found[key] = (val, lineno)
    for key in _REQUIRED_KEYS:
        if key not in found:
            raise ParseError(f"missing required key {key!r}", path=path, line=len(lines) + 1)
    kwargs = {
        "sampler": found["sampler"][0],
        "method": found["method"][0],
        "grid": _parse_grid(*found["grid"], path),
        "replications": _parse_int("replications", *found["replications"], path),
    }
    if "restarts" in found:
        kwargs["restarts"] = _parse_int("restarts", *found["restarts"], path)
    if "cover_resolution" in found:
        kwargs["cover_resolution"] = _parse_int(
            "cover_resolution", *found["cover_resolution"], path
        )
    if "seed" in found:
        kwargs["seed"] = _parse_int("seed", *found["seed"], path)
    if "out" in found:
        kwargs["out"] = found["out"][0]
    return SweepConfig(**kwargs)


def _parse_int(key: str, val: str, lineno: int, path: str) -> int:
    try:
        return int(val)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {val!r}", path=path, line=lineno)


def _parse_grid(val: str, lineno: int, path: str) -> tuple[tuple[int, int], ...]:
    cells = []
    for tok in val.replace(",", " ").split():
        parts = tok.lower().split("x")
        if len(parts) != 2:
            raise ParseError(
                f"grid cell {tok!r} must look like SIZExDIM", path=path, line=lineno
            )
        try:
            cells.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"bad grid cell {tok!r}", path=path, line=lineno)
    if not cells:
        raise ParseError("grid names no cells", path=path, line=lineno)
    return tuple(cells)


def with_output(config: SweepConfig, out: str | None) -> SweepConfig:
    return replace(config, out=out) if out is not None else config
