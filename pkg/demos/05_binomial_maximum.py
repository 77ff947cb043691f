#!/usr/bin/env python3
"""Anti-concentration bounds for the maximum of k binomials, next to
the exact oracle.  The bounds are deliberately loose lower bounds
(constant e^{169/6} and friends); the point is that they never cross
the oracle, not that they are sharp."""

from jitterdisc import (
    MaxBinParams,
    alpha,
    applicability_failure,
    exact_max_binomial_expect,
    exact_max_exceed_prob,
    expect_bound,
    prob_bound,
)

N, K = 400, 1000


def main():
    print(f"max of k={K} iid Bin(n={N}, 1/2) variables, centered at n/2\n")
    print(f"{'c':>5}  {'alpha(c)':>9}  {'P bound':>12}  {'P exact':>12}")
    for c in (0.0, 0.5, 1.0, 2.0, 4.0):
        p = MaxBinParams(N, K, c)
        why = applicability_failure(p)
        if why is not None:
            print(f"{c:>5.1f}  outside the window: {why}")
            continue
        a = alpha(p)
        print(f"{c:>5.1f}  {a:>9.3f}  {prob_bound(p):>12.3e}  "
              f"{exact_max_exceed_prob(N, K, a):>12.3e}")
    print()
    eb = expect_bound(N, K)
    ex = exact_max_binomial_expect(N, K)
    print(f"E[max - n/2]+ : bound {eb:.3e}  <=  exact {ex:.4f}")


if __name__ == "__main__":
    main()
