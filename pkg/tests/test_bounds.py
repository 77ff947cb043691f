import math

import mpmath
import pytest

from jitterdisc import (
    ApplicabilityError,
    Formula,
    ValidationError,
    lower_main_bound,
    mc_reference,
    smallm_lower_bound,
    upper_thm_bound,
)


def _mp_lower_main(m, d):
    """The same closed form evaluated in 50-digit arithmetic."""
    with mpmath.workdps(50):
        k = m // d
        lnk = mpmath.log(k)
        cbig = mpmath.mpf(3) / 2 * mpmath.e ** (mpmath.mpf(169) / 6) * mpmath.sqrt(mpmath.pi)
        lead = 1 / mpmath.sqrt(2 * mpmath.e) * d * mpmath.mpf(m) ** (mpmath.mpf(d - 1) / 2)
        f2 = 1 / mpmath.sqrt(1 + mpmath.sqrt(2 * lnk / mpmath.mpf(m - k) ** (d - 1)))
        f3 = 1 - mpmath.e ** (-mpmath.sqrt(lnk) / cbig)
        return float(lead * mpmath.sqrt(lnk - mpmath.log(lnk)) * f2 * f3)


def _mp_smallm(m, d):
    with mpmath.workdps(50):
        s = mpmath.mpf(m - 1) ** (mpmath.mpf(d - 1) / 2)
        c = mpmath.mpf(4) / 5 / (mpmath.e ** (mpmath.mpf(49) / 6) * mpmath.sqrt(2 * mpmath.pi))
        return float(c * mpmath.e ** (-32 / s) * d * s)


def _mp_upper(m, d, const):
    with mpmath.workdps(50):
        scale = mpmath.sqrt(d * mpmath.mpf(m) ** d / (mpmath.mpf(m) / d))
        return float(const * scale * (mpmath.sqrt(mpmath.log(4 * mpmath.e * m / d)) + mpmath.mpf("2.9599")))


def test_lower_main_matches_high_precision():
    for m, d in [(808, 2), (1212, 3), (4040, 5)]:
        got = lower_main_bound(m, d)
        assert got.applicable
        assert got.formula is Formula.LOWER_MAIN
        assert got.value == pytest.approx(_mp_lower_main(m, d), rel=1e-12)


def test_lower_main_frozen_value():
    assert lower_main_bound(808, 2).value == pytest.approx(
        2.4916423130706391e-11, rel=1e-12
    )


def test_lower_main_applicability():
    b = lower_main_bound(100, 2)  # k = 50 < e^6
    assert not b.applicable and "e^6" in b.reason
    assert b.value > 0.0  # still evaluated for reference curves
    b = lower_main_bound(1000, 1)  # d = 1 outside the statement
    assert not b.applicable
    with pytest.raises(ApplicabilityError):
        lower_main_bound(3, 2)  # floor(m/d) = 1
    with pytest.raises(ValidationError):
        lower_main_bound(0, 2)


def test_smallm_matches_high_precision():
    for m, d in [(2, 2), (3, 2), (16, 2), (5, 4)]:
        got = smallm_lower_bound(m, d)
        assert got.applicable
        assert got.value == pytest.approx(_mp_smallm(m, d), rel=1e-12)


def test_smallm_frozen_value():
    assert smallm_lower_bound(3, 2).value == pytest.approx(
        3.8180748270347301e-14, rel=1e-12
    )


def test_smallm_requires_two_by_two():
    with pytest.raises(ValidationError):
        smallm_lower_bound(1, 2)
    with pytest.raises(ValidationError):
        smallm_lower_bound(4, 1)


def test_upper_matches_high_precision():
    for m, d in [(8, 2), (64, 2), (27, 3)]:
        got = upper_thm_bound(m, d)
        assert got.applicable
        assert got.value == pytest.approx(_mp_upper(m, d, 60.9984), rel=1e-12)


def test_upper_frozen_values():
    assert upper_thm_bound(8, 2).value == pytest.approx(1691.5537945568001, rel=1e-12)
    assert upper_thm_bound(8, 2, use_proof_constant=True).value == pytest.approx(
        1691.4539625339864, rel=1e-12
    )


def test_upper_applicability():
    assert not upper_thm_bound(8, 1).applicable
    b = upper_thm_bound(3, 5)
    assert not b.applicable and "m >= d" in b.reason
    assert upper_thm_bound(5, 5).applicable


def test_upper_proof_constant_is_smaller():
    loose = upper_thm_bound(16, 2).value
    tight = upper_thm_bound(16, 2, use_proof_constant=True).value
    assert tight < loose
    assert tight / loose == pytest.approx(60.9948 / 60.9984, rel=1e-12)


def test_bounds_overflow_to_inf():
    b = lower_main_bound(10**9, 250)
    assert math.isinf(b.value)
    assert smallm_lower_bound(10**9, 250).value == math.inf


def test_mc_reference():
    assert mc_reference(100, 2).value == pytest.approx(math.sqrt(200), rel=1e-15)
    assert mc_reference(100, 2, multiplier=0.5).value == pytest.approx(
        0.5 * math.sqrt(200), rel=1e-15
    )
    with pytest.raises(ValidationError):
        mc_reference(100, 2, multiplier=-1.0)
    with pytest.raises(ValidationError):
        mc_reference(0, 2)


def test_bound_ordering_in_the_applicable_regime():
    # where both sides apply the lower curve must sit under the upper one
    for m in (808, 2020):
        lo = lower_main_bound(m, 2)
        up = upper_thm_bound(m, 2)
        assert lo.applicable and up.applicable
        assert lo.value < up.value
