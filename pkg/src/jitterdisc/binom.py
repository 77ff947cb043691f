"""Tail and maximum bounds for Bin(n, 1/2) variables, with exact oracles.

The bound family controls X_max, the maximum of k independent Bin(n, 1/2)
variables, through the shift

    alpha(c) = sqrt( n (ln k - ln(ln k)/2 - c) / (2 (1 + sqrt(2 ln(k)/n))) ).

Constants of the form 1.5 e^{169/6} sqrt(pi) are kept in log domain; the
complementary factors they produce are near machine epsilon, so expm1 is
used wherever 1 - exp(-tiny) appears.

The oracles compute exact binomial CDF tables in extended precision
(pmf(0) = 2^-n underflows binary64 past n = 1074) and are the reference
every bound is validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .errors import ApplicabilityError, ValidationError

_LOG_C_PI = math.log(1.5) + 169.0 / 6.0 + 0.5 * math.log(math.pi)
_LOG_C_2PI = math.log(1.5) + 169.0 / 6.0 + 0.5 * math.log(2.0 * math.pi)

_ORACLE_MAX_N = 10_000
_ORACLE_MAX_K = 10 ** 9
_ORACLE_DPS = 40


@dataclass(frozen=True)
class MaxBinParams:
    n: int
    k: int
    c: float

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValidationError(f"need n, k >= 1, got n={self.n}, k={self.k}")


def alpha(params: MaxBinParams) -> float:
    n, k, c = params.n, params.k, params.c
    if k < 2:
        raise ApplicabilityError("k = 1 leaves ln ln k undefined; need k >= 2")
    lnk = math.log(k)
    num = n * (lnk - 0.5 * math.log(lnk) - c)
    if num < 0:
        raise ApplicabilityError(
            f"c = {c:.6g} exceeds ln k - (ln ln k)/2 = {lnk - 0.5 * math.log(lnk):.6g}"
        )
    return math.sqrt(num / (2.0 * (1.0 + math.sqrt(2.0 * lnk / n))))


def applicability_failure(params: MaxBinParams) -> str | None:
    """The failed hypothesis of the probability bound, or None if it
    applies: alpha(c) >= sqrt(n) and alpha(c) + n/alpha(c) <= n/2."""
    try:
        a = alpha(params)
    except ApplicabilityError as exc:
        return str(exc)
    n = params.n
    if not a >= math.sqrt(n):
        return f"alpha(c) = {a:.6g} < sqrt(n) = {math.sqrt(n):.6g}"
    if not a + n / a <= n / 2:
        return f"alpha(c) + n/alpha(c) = {a + n / a:.6g} > n/2 = {n / 2:.6g}"
    return None


def prob_bound(params: MaxBinParams) -> float:
    """Lower bound on Pr[X_max >= n/2 + alpha(c)],
    1 - exp(-e^c / (1.5 e^{169/6} sqrt(pi)))."""
    why = applicability_failure(params)
    if why is not None:
        raise ApplicabilityError(why)
    t = params.c - _LOG_C_PI
    if t > 700.0:
        return 1.0
    return -math.expm1(-math.exp(t))


def expect_bound(n: int, k: int) -> float:
    """Lower bound on E[max(0, X_max - n/2)] for e^6 <= k <= e^{n/2}."""
    if n < 1 or k < 1:
        raise ValidationError(f"need n, k >= 1, got n={n}, k={k}")
    if k < math.exp(6):
        raise ApplicabilityError(f"k = {k} < e^6 = {math.exp(6):.6g}")
    lnk = math.log(k)
    if lnk > n / 2:
        raise ApplicabilityError(f"k = {k} > e^(n/2) = e^{n / 2:.6g}")
    lead = math.sqrt(n * (lnk - math.log(lnk)) / (2.0 * (1.0 + math.sqrt(2.0 * lnk / n))))
    return lead * -math.expm1(-math.exp(0.5 * math.log(lnk) - _LOG_C_PI))


def pointwise_pmf_bound(n: int, a: float) -> float:
    """Lower bound on Pr[X = n/2 + a] for even n and integral a in
    [0, n/2]: e^{-1/6} / sqrt(2 pi n) * e^{-2a^2/n - 4a^3/n^2}."""
    if n < 2 or n % 2:
        raise ValidationError(f"need even n >= 2, got n={n}")
    a = float(a)
    if not a.is_integer():
        raise ValidationError(f"n/2 + a must be an integer, got a = {a}")
    if not 0.0 <= a <= n / 2:
        raise ValidationError(f"need 0 <= a <= n/2, got a = {a}")
    return math.exp(
        -1.0 / 6.0 - 0.5 * math.log(2.0 * math.pi) - 0.5 * math.log(n)
        - 2.0 * a * a / n - 4.0 * a ** 3 / n ** 2
    )


def _check_tail_range(n: int, a: float) -> None:
    if n < 1:
        raise ValidationError(f"need n >= 1, got n={n}")
    if not a >= math.sqrt(n):
        raise ApplicabilityError(f"alpha = {a:.6g} < sqrt(n) = {math.sqrt(n):.6g}")
    if not a + n / a <= n / 2:
        raise ApplicabilityError(
            f"alpha + n/alpha = {a + n / a:.6g} > n/2 = {n / 2:.6g}"
        )


def tail_bound_eq_bino(n: int, a: float) -> float:
    """Simplified tail bound, Pr[X >= n/2 + alpha] >=
    (sqrt(n)/alpha) e^{-2 alpha^2/n - 4 alpha^3/n^2} / (1.5 e^{169/6} sqrt(2 pi))."""
    a = float(a)
    _check_tail_range(n, a)
    return math.exp(
        -_LOG_C_2PI + 0.5 * math.log(n) - math.log(a)
        - 2.0 * a * a / n - 4.0 * a ** 3 / n ** 2
    )


def tail_bound_raw(n: int, a: float) -> float:
    """The unsimplified form the simplified bound descends from:
    floor(n/alpha) pointwise terms at the shifted offset alpha + n/alpha."""
    a = float(a)
    _check_tail_range(n, a)
    b = a + n / a
    return (math.floor(n / a) / math.sqrt(n)) * math.exp(
        -1.0 / 6.0 - 0.5 * math.log(2.0 * math.pi)
        - 2.0 * b * b / n - 4.0 * b ** 3 / n ** 2
    )


# --------------------------------------------------------------------------
# exact oracles

def _check_oracle_args(n: int, k: int = 1) -> None:
    if not 1 <= n <= _ORACLE_MAX_N:
        raise ValidationError(f"oracle supports 1 <= n <= {_ORACLE_MAX_N}, got n={n}")
    if not 1 <= k <= _ORACLE_MAX_K:
        raise ValidationError(f"oracle supports 1 <= k <= {_ORACLE_MAX_K:g}, got k={k}")


@lru_cache(maxsize=32)
def _cdf_table(n: int) -> tuple:
    """Exact Bin(n, 1/2) CDF values F(0..n) as extended-precision numbers,
    by the forward pmf recurrence from 2^-n."""
    with mpmath.workdps(_ORACLE_DPS):
        pmf = mpmath.mpf(2) ** (-n)
        acc = pmf
        out = [acc]
        for x in range(n):
            pmf = pmf * (n - x) / (x + 1)
            acc += pmf
            out.append(acc)
    return tuple(out)


def exact_binom_pmf(n: int, x: int) -> float:
    _check_oracle_args(n)
    if not 0 <= x <= n:
        return 0.0
    with mpmath.workdps(_ORACLE_DPS):
        return float(mpmath.binomial(n, x) * mpmath.mpf(2) ** (-n))


def exact_binom_cdf(n: int, x: int) -> float:
    """Pr[Bin(n, 1/2) <= x], exact."""
    _check_oracle_args(n)
    if x < 0:
        return 0.0
    if x >= n:
        return 1.0
    return float(_cdf_table(n)[x])


def exact_max_exceed_prob(n: int, k: int, a: float) -> float:
    """Pr[X_max >= n/2 + a] = 1 - F(ceil(n/2 + a) - 1)^k, exact."""
    _check_oracle_args(n, k)
    threshold = math.ceil(n / 2 + float(a))
    if threshold <= 0:
        return 1.0
    if threshold > n:
        return 0.0
    cdf = _cdf_table(n)[threshold - 1]
    with mpmath.workdps(_ORACLE_DPS):
        return float(1 - cdf ** k)


def exact_max_binomial_expect(n: int, k: int) -> float:
    """E[max(0, X_max - n/2)], exact.

    Integrating the survival function of the integer-valued maximum
    gives sum over t >= 1 of Pr[X_max >= floor(n/2) + t]; for odd n the
    first level only spans half a unit, subtracting half that term.
    """
    _check_oracle_args(n, k)
    cdf = _cdf_table(n)
    h = n // 2
    with mpmath.workdps(_ORACLE_DPS):
        terms = [1 - cdf[x] ** k for x in range(h, n)]
        total = mpmath.fsum(terms)
        if n % 2:
            total -= terms[0] / 2
        return float(total)
