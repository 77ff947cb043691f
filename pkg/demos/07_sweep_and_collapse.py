#!/usr/bin/env python3
"""End-to-end replication sweep: run, write CSV, analyze.

A reduced version of the scaling experiment (R=60 instead of 200).
The collapse ratio divides each mean by its predicted growth rate; if
the rate law is right the ratios barely move across m.
"""

import tempfile
from pathlib import Path

from jitterdisc import SweepConfig, collapse_analysis, collapse_ratio, run_sweep

SEED = 2026


def main():
    out = str(Path(tempfile.mkdtemp()) / "sweep.csv")
    cfg = SweepConfig(
        sampler="jittered",
        grid=((8, 2), (16, 2), (32, 2)),
        replications=60,
        method="exact",
        seed=SEED,
        out=out,
    )
    run = run_sweep(cfg, threads=4, deterministic=True)
    print(f"{'cell':>8}  {'N':>5}  {'mean D*':>9}  {'95% CI':>19}  {'ratio':>7}")
    for rec in run.records:
        ci = f"[{rec.ci95_lo:.3f}, {rec.ci95_hi:.3f}]"
        print(f"{rec.m:>5}x{rec.d}  {rec.n:>5}  {rec.mean_disc:>9.4f}  "
              f"{ci:>19}  {collapse_ratio(rec):>7.4f}")
    rep = collapse_analysis(out, threshold=1.5)
    print(f"\nratio spread max/min = {rep.spread:.4f}  "
          f"({'collapses' if rep.passed else 'does not collapse'} at 1.5)")
    print(f"CSV written to {out}")


if __name__ == "__main__":
    main()
