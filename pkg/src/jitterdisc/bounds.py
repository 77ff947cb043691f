"""Closed-form reference curves for the expected star discrepancy.

Each formula reports its value together with an applicability flag that
mirrors the stated hypotheses exactly; out-of-range arguments still get
a value whenever the expression is defined, so reference curves can be
drawn past their guarantees.  Powers such as m^((d-1)/2) are taken in
log domain and overflow to inf rather than raising.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ApplicabilityError, ValidationError

_LOG_C_PI = math.log(1.5) + 169.0 / 6.0 + 0.5 * math.log(math.pi)

#: Constant of the upper-bound theorem; its proof's final line lands on
#: the slightly smaller 60.9948, exposed via use_proof_constant.
UPPER_CONSTANT = 60.9984
UPPER_CONSTANT_PROOF = 60.9948


class Formula(enum.Enum):
    LOWER_MAIN = "lower_main"
    SMALLM_LOWER = "smallm_lower"
    UPPER_THM = "upper_thm"
    MC_REFERENCE = "mc_reference"


@dataclass(frozen=True)
class BoundValue:
    value: float
    formula: Formula
    applicable: bool
    reason: str | None = None


def _exp_or_inf(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _check_positive_ints(**kwargs) -> None:
    for name, v in kwargs.items():
        if not isinstance(v, int) or v < 1:
            raise ValidationError(f"{name} must be a positive integer, got {v!r}")


def lower_main_bound(m: int, d: int) -> BoundValue:
    """Main lower bound on E D*(P) for jittered sampling on the m-grid,

        (2e)^{-1/2} d m^{(d-1)/2} sqrt(ln k - ln ln k)
            * (1 + sqrt(2 ln k / (m-k)^{d-1}))^{-1/2}
            * (1 - exp(-sqrt(ln k) / (1.5 e^{169/6} sqrt(pi)))),

    with k = floor(m/d); stated for m, d >= 2 with k >= e^6.
    """
    _check_positive_ints(m=m, d=d)
    k = m // d
    if k <= 1:
        raise ApplicabilityError(f"floor(m/d) = {k} <= 1 leaves ln ln undefined")
    lnk = math.log(k)
    if d == 1:
        denom_log = 0.0
    else:
        denom_log = (d - 1) * math.log(m - k)
    ratio = 2.0 * lnk * _exp_or_inf(-denom_log)
    factor2 = 1.0 / math.sqrt(1.0 + math.sqrt(ratio))
    factor3 = -math.expm1(-math.exp(0.5 * math.log(lnk) - _LOG_C_PI))
    lead = _exp_or_inf(-0.5 * (1.0 + math.log(2.0)) + 0.5 * (d - 1) * math.log(m))
    value = lead * d * math.sqrt(lnk - math.log(lnk)) * factor2 * factor3
    if m < 2 or d < 2:
        return BoundValue(value, Formula.LOWER_MAIN, False, f"need m, d >= 2, got m={m}, d={d}")
    if k < math.exp(6):
        return BoundValue(
            value, Formula.LOWER_MAIN, False,
            f"floor(m/d) = {k} < e^6 = {math.exp(6):.6g}",
        )
    return BoundValue(value, Formula.LOWER_MAIN, True)


def smallm_lower_bound(m: int, d: int) -> BoundValue:
    """Small-m lower bound on E D*(P),
    (4 / (5 e^{8+1/6} sqrt(2 pi))) e^{-32/s} d s with s = (m-1)^{(d-1)/2}."""
    _check_positive_ints(m=m, d=d)
    if m < 2 or d < 2:
        raise ValidationError(f"need m, d >= 2, got m={m}, d={d}")
    s = _exp_or_inf(0.5 * (d - 1) * math.log(m - 1))
    log_c = math.log(4.0 / 5.0) - (8.0 + 1.0 / 6.0) - 0.5 * math.log(2.0 * math.pi)
    value = _exp_or_inf(log_c - 32.0 / s) * d * s
    return BoundValue(value, Formula.SMALLM_LOWER, True)


def upper_thm_bound(m: int, d: int, use_proof_constant: bool = False) -> BoundValue:
    """Upper bound on E D*(P) for jittered sampling,
    60.9984 sqrt(d m^d) (sqrt(ln(4 e m / d)) + 2.9599) / sqrt(m/d),
    stated for m >= d >= 2."""
    _check_positive_ints(m=m, d=d)
    const = UPPER_CONSTANT_PROOF if use_proof_constant else UPPER_CONSTANT
    scale = _exp_or_inf(0.5 * (math.log(d) + d * math.log(m) - math.log(m / d)))
    value = const * scale * (math.sqrt(math.log(4.0 * math.e * m / d)) + 2.9599)
    if d < 2:
        return BoundValue(value, Formula.UPPER_THM, False, f"need d >= 2, got d={d}")
    if m < d:
        return BoundValue(value, Formula.UPPER_THM, False, f"need m >= d, got m={m}, d={d}")
    return BoundValue(value, Formula.UPPER_THM, True)


def mc_reference(n: int, d: int, multiplier: float = 1.0) -> BoundValue:
    """Monte Carlo scaling reference, multiplier * sqrt(d n)."""
    _check_positive_ints(n=n, d=d)
    if not multiplier >= 0.0:
        raise ValidationError(f"multiplier must be >= 0, got {multiplier}")
    return BoundValue(multiplier * math.sqrt(d * n), Formula.MC_REFERENCE, True)
