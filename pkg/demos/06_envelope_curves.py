#!/usr/bin/env python3
"""Closed-form envelope for E D* of jittered sampling, tabulated.

lower_main applies once floor(m/d) clears e^6; below that the small-m
curve takes over.  The upper curve applies whenever m >= d.  The last
column is the unstratified sqrt(dN) scaling reference -- stratification
beats it by the factor the envelope predicts."""

from jitterdisc import lower_main_bound, mc_reference, smallm_lower_bound, upper_thm_bound

D = 2


def fmt(bv):
    mark = "" if bv.applicable else " (n/a)"
    return f"{bv.value:11.4g}{mark}"


def main():
    print(f"d = {D}\n{'m':>6}  {'N':>8}  {'small-m lower':>16}  {'main lower':>16}  "
          f"{'upper':>12}  {'sqrt(dN)':>10}")
    for m in (4, 16, 64, 808, 2020):
        n = m ** D
        lo_s = smallm_lower_bound(m, D)
        lo_m = lower_main_bound(m, D)
        up = upper_thm_bound(m, D)
        ref = mc_reference(n, D)
        print(f"{m:>6}  {n:>8}  {fmt(lo_s):>16}  {fmt(lo_m):>16}  "
              f"{up.value:>12.4g}  {ref.value:>10.4g}")
    print("\nmain lower needs floor(m/d) >= e^6 ~ 403; the columns flip over there.")


if __name__ == "__main__":
    main()
