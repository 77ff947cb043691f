"""Exact engines against the brute-force oracle, plus the estimate lattice
heuristic <= exact <= certified."""

import numpy as np
import pytest

from jitterdisc import (
    AxisRect,
    CoverBudgetError,
    CoverSpec,
    ExactInfeasibleError,
    FullGridSpec,
    Kind,
    PointSet,
    Side,
    ValidationError,
    exact_feasible,
    generate_jittered,
    generate_uniform,
    normalized,
    rng,
    signed_disc,
    star_disc_certified_upper,
    star_disc_exact,
    star_disc_heuristic,
)
from _oracles import brute_star_disc


def _uniform_pts(n, d, seed):
    return generate_uniform(n, d, seed=seed)


# ---------------------------------------------------------------- rect, disc


def test_axis_rect_validation():
    with pytest.raises(ValidationError):
        AxisRect((0.5,), (0.4,))
    with pytest.raises(ValidationError):
        AxisRect((0.0,), (1.1,))
    with pytest.raises(ValidationError):
        AxisRect((), ())
    r = AxisRect.anchored((0.5, 0.25))
    assert r.lo == (0.0, 0.0)
    assert r.volume == 0.125
    assert r.d == 2


def test_signed_disc_hand_case():
    ps = PointSet(np.array([[0.1], [0.6]]))
    box = AxisRect.anchored((0.6,))
    assert signed_disc(ps, box) == pytest.approx(-0.2)  # strict: only 0.1 inside
    assert signed_disc(ps, box, closed=True) == pytest.approx(0.8)


def test_signed_disc_per_dimension_closure():
    ps = PointSet(np.array([[0.5, 0.5]]))
    box = AxisRect.anchored((0.5, 0.5))
    assert signed_disc(ps, box, closed=(True, False)) == pytest.approx(-0.25)
    assert signed_disc(ps, box, closed=(True, True)) == pytest.approx(0.75)
    with pytest.raises(ValidationError):
        signed_disc(ps, box, closed=(True,))


def test_signed_disc_dimension_mismatch():
    ps = PointSet(np.array([[0.1], [0.6]]))
    with pytest.raises(ValidationError):
        signed_disc(ps, AxisRect.anchored((0.5, 0.5)))


def test_normalized():
    est = star_disc_exact(PointSet(np.array([[0.1], [0.6]])))
    assert normalized(est, 2) == est.value / 2
    with pytest.raises(ValidationError):
        normalized(est, 0)


# ---------------------------------------------------------------- exact

def test_exact_1d_hand_case():
    # P = {0.1, 0.6}: both candidate corners give disc+ = 0.8, so the
    # tie goes to the lexicographically larger corner
    est = star_disc_exact(PointSet(np.array([[0.1], [0.6]])))
    assert est.value == pytest.approx(0.8, abs=1e-15)
    assert est.kind is Kind.EXACT
    assert est.witness.corner == (0.6,)
    assert est.witness.side is Side.OVERFULL


def test_exact_single_midpoint_attains_half():
    est = star_disc_exact(PointSet(np.array([[0.5]])))
    assert est.value == pytest.approx(0.5, abs=1e-15)


def test_exact_tie_breaks_to_larger_corner():
    # diagonal pair: disc+ = 0.875 both at (0.25, 0.25) and (0.75, 0.75)
    ps = PointSet(np.array([[0.25, 0.25], [0.75, 0.75]]))
    est = star_disc_exact(ps)
    assert est.value == pytest.approx(0.875, abs=1e-15)
    assert est.witness.corner == (0.75, 0.75)
    assert est.witness.side is Side.OVERFULL


def test_exact_at_least_half_always():
    for seed in range(10):
        ps = _uniform_pts(6, 2, seed)
        assert star_disc_exact(ps).value >= 0.5 - 1e-12


def test_subset_engine_matches_oracle():
    # exercises every n <= 8 with d up to 4
    t = 0
    for n in range(1, 9):
        for d in (1, 2, 3, 4):
            for rep in range(3):
                ps = _uniform_pts(n, d, seed=rng.mix(50_000 + t, rep))
                t += 1
                got = star_disc_exact(ps).value
                want = brute_star_disc(ps.points)
                assert got == pytest.approx(want, abs=1e-12), (n, d, rep)


def test_sweep_2d_engine_matches_oracle():
    for i in range(25):
        n = 9 + (int(rng.mix(60_000, i)) % 32)
        ps = _uniform_pts(n, 2, seed=rng.mix(60_001, i))
        got = star_disc_exact(ps).value
        want = brute_star_disc(ps.points)
        assert got == pytest.approx(want, abs=1e-12), (n, i)


def test_recursive_nd_engine_matches_oracle():
    for i in range(8):
        n = 9 + (int(rng.mix(70_000, i)) % 20)
        ps = _uniform_pts(n, 3, seed=rng.mix(70_001, i))
        assert star_disc_exact(ps).value == pytest.approx(
            brute_star_disc(ps.points), abs=1e-12
        )
    for i in range(3):
        ps = _uniform_pts(12, 4, seed=rng.mix(70_002, i))
        assert star_disc_exact(ps).value == pytest.approx(
            brute_star_disc(ps.points), abs=1e-12
        )


def test_exact_engines_agree_on_duplicated_coordinates():
    # jittered sets share no coordinates; force repeats explicitly
    base = np.array(
        [[0.25, 0.5], [0.25, 0.25], [0.5, 0.5], [0.5, 0.25], [0.75, 0.75]] * 3
    )
    ps = PointSet(base)
    assert star_disc_exact(ps).value == pytest.approx(
        brute_star_disc(base), abs=1e-12
    )


def test_exact_witness_replays():
    for seed in (1, 2, 3):
        for n, d in ((7, 3), (20, 2)):
            ps = _uniform_pts(n, d, seed)
            est = star_disc_exact(ps)
            box = AxisRect.anchored(est.witness.corner)
            if est.witness.side is Side.OVERFULL:
                replay = signed_disc(ps, box, closed=True)
            else:
                replay = -signed_disc(ps, box, closed=False)
            assert replay == pytest.approx(est.value, abs=1e-12)


def test_exact_infeasible_routes_away():
    assert exact_feasible(5000, 2)
    assert not exact_feasible(100, 6)
    ps = _uniform_pts(20, 2, seed=1)
    with pytest.raises(ExactInfeasibleError):
        star_disc_exact(ps, budget=10)


# ---------------------------------------------------------------- heuristic

def test_heuristic_is_lower_bound_and_deterministic():
    for i in range(15):
        ps = generate_jittered(FullGridSpec(4, 2), seed=rng.mix(80_000, i))
        exact = star_disc_exact(ps).value
        est = star_disc_heuristic(ps, restarts=8, seed=i)
        assert est.kind is Kind.LOWER_WITNESS
        assert est.value <= exact + 1e-9
        again = star_disc_heuristic(ps, restarts=8, seed=i)
        assert est.value == again.value
        assert est.witness.corner == again.witness.corner


def test_heuristic_finds_hand_optimum():
    ps = PointSet(np.array([[0.25, 0.25], [0.75, 0.75]]))
    est = star_disc_heuristic(ps, restarts=4, seed=0)
    assert est.value == pytest.approx(0.875, abs=1e-15)


def test_heuristic_witness_replays():
    ps = _uniform_pts(30, 3, seed=5)
    est = star_disc_heuristic(ps, restarts=6, seed=7)
    box = AxisRect.anchored(est.witness.corner)
    closed = est.witness.side is Side.OVERFULL
    replay = signed_disc(ps, box, closed=closed)
    if not closed:
        replay = -replay
    assert replay == pytest.approx(est.value, abs=1e-12)


def test_heuristic_rejects_zero_restarts():
    ps = _uniform_pts(4, 2, seed=1)
    with pytest.raises(ValidationError):
        star_disc_heuristic(ps, restarts=0)


# ---------------------------------------------------------------- certified

def test_cover_spec_minimal_resolution():
    assert CoverSpec.for_delta(0.1, 2).grid_resolution == 20
    assert CoverSpec.for_delta(0.1, 1).grid_resolution == 10
    # the next coarser grid must overshoot the target gap
    spec = CoverSpec.for_delta(0.03, 3)
    m = spec.grid_resolution
    assert spec.gap(3) <= 0.03
    assert CoverSpec(0.03, m - 1).gap(3) > 0.03


def test_cover_spec_for_resolution_gap():
    spec = CoverSpec.for_resolution(64, 2)
    assert spec.delta == pytest.approx(1.0 - (63 / 64) ** 2, abs=1e-15)
    assert spec.delta == pytest.approx(0.031005859375, abs=1e-15)


def test_cover_spec_validation():
    with pytest.raises(ValidationError):
        CoverSpec(0.0, 4)
    with pytest.raises(ValidationError):
        CoverSpec(0.5, 0)
    with pytest.raises(ValidationError):
        CoverSpec.for_delta(1.5, 2)


def test_certified_upper_bounds_exact():
    for i in range(10):
        ps = generate_jittered(FullGridSpec(4, 2), seed=rng.mix(90_000, i))
        exact = star_disc_exact(ps).value
        est = star_disc_certified_upper(ps, CoverSpec.for_resolution(128, 2))
        assert est.kind is Kind.CERTIFIED_UPPER
        assert est.value >= exact - 1e-9
        # the bound cannot exceed corner-max + N * gap with corner-max <= exact
        assert est.value <= exact + ps.n * est.delta + 1e-9


def test_certified_budget_guard():
    ps = _uniform_pts(10, 4, seed=3)
    with pytest.raises(CoverBudgetError):
        star_disc_certified_upper(ps, CoverSpec.for_resolution(100, 4))


def test_certified_gap_guard():
    ps = _uniform_pts(10, 2, seed=3)
    with pytest.raises(ValidationError):
        star_disc_certified_upper(ps, CoverSpec(delta=0.01, grid_resolution=2))


def test_certified_shrinks_with_resolution():
    ps = generate_jittered(FullGridSpec(8, 2), seed=77)
    coarse = star_disc_certified_upper(ps, CoverSpec.for_resolution(32, 2))
    fine = star_disc_certified_upper(ps, CoverSpec.for_resolution(512, 2))
    assert fine.value <= coarse.value + 1e-12
    exact = star_disc_exact(ps).value
    assert exact <= fine.value + 1e-12
