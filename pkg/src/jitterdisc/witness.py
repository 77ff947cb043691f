"""Witness lower-bound constructions for stratified point sets.

Each scheme picks, per dimension i, a slab

    R_i = [0,r_1) x ... x [r_i, S_i) x ... x [0,r_d)

whose signed discrepancy it tries to make large, then assembles the
anchored box B = prod [0, S_i).  The per-dimension values sum to a
quantity whose expectation lower-bounds E D*(P); per realization the
assembled box's discrepancy differs from the total by the mean-zero
contribution of the corner regions, so the relation between total and
disc(B) is statistical, not pointwise.

Slab membership in the fixed dimensions is decided on cell indices
(floor of m times the coordinate), which is exact for stratified sets;
only the moving upper face compares raw coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .discrepancy import AxisRect, _last_argmax
from .errors import ValidationError
from .sampler import (
    FullGridSpec,
    HalfCubeSpec,
    PointSet,
    StratifiedSpec,
    generate_half_cube,
    generate_jittered,
)


@dataclass(frozen=True)
class WitnessResult:
    """Assembled witness box with its per-dimension slab audit trail.

    ``closed[i]`` is the upper-face convention in dimension i, shared by
    slab i and the box: the construct scheme realizes each slab sup at a
    point coordinate, so its faces are closed; the discrete scheme's
    faces sit at half-cell marks and stay open.
    """

    scheme: str
    box: AxisRect
    per_dim_disc: tuple[float, ...]
    total: float
    slabs: tuple[AxisRect, ...]
    closed: tuple[bool, ...]


def grid_resolution(ps: PointSet) -> int:
    """Recover m for a full-grid stratified set, from metadata or from
    N = m^d."""
    m = ps.meta.get("m")
    if m is None:
        m = round(ps.n ** (1.0 / ps.d))
    m = int(m)
    if m < 2 or m ** ps.d != ps.n:
        raise ValidationError(
            f"point set with N={ps.n}, d={ps.d} is not a full m-grid sample"
        )
    return m


def _cells(pts: np.ndarray, m: int) -> np.ndarray:
    return np.floor(pts * m).astype(np.int64)


def _slab_select(cells: np.ndarray, limits: np.ndarray, i: int) -> np.ndarray:
    """Points whose fixed coordinates sit below their limits and whose
    i-th cell reaches the slab."""
    sel = cells[:, i] >= limits[i]
    for j in range(cells.shape[1]):
        if j != i:
            sel &= cells[:, j] < limits[j]
    return sel


def _assemble(scheme, lows, uppers, per_dim, slab_his, closed_face):
    d = len(per_dim)
    slabs = []
    for i in range(d):
        lo = [0.0] * d
        hi = [lows[j] for j in range(d)]
        lo[i] = lows[i]
        hi[i] = slab_his[i]
        slabs.append(AxisRect(tuple(lo), tuple(hi)))
    return WitnessResult(
        scheme=scheme,
        box=AxisRect.anchored(tuple(uppers)),
        per_dim_disc=tuple(per_dim),
        total=math.fsum(per_dim),
        slabs=tuple(slabs),
        closed=(closed_face,) * d,
    )


def witness_construct(ps: PointSet, r) -> WitnessResult:
    """Best slab per dimension above the anchor r, slab faces closed.

    Each r_i must be an integer multiple of 1/m.  Candidate upper faces
    are the i-th coordinates of points inside the slab column, scored
    with a closed face (the sup of the half-open slab family), plus
    S_i = 1 whose discrepancy is exactly zero for a stratified set; the
    largest maximizer wins, so per-dimension values are never negative.
    """
    pts = ps.points
    n, d = pts.shape
    m = grid_resolution(ps)
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (d,):
        raise ValidationError(f"r must have length d={d}")
    g = np.rint(r * m)
    if np.any(np.abs(r * m - g) > 1e-9) or np.any(g < 0) or np.any(g >= m):
        raise ValidationError(f"each r_i must be a multiple of 1/{m} in [0,1)")
    g = g.astype(np.int64)
    lows = g / m
    cells = _cells(pts, m)

    per_dim = []
    uppers = []
    for i in range(d):
        sel = _slab_select(cells, g, i)
        cells_other = math.prod(int(g[j]) for j in range(d) if j != i)
        best_val, best_s = None, None
        if cells_other > 0:
            coords = np.sort(pts[sel, i])
            cands = np.unique(coords)
            counts = np.searchsorted(coords, cands, side="right")
            vals = counts - (m * cells_other) * (cands - lows[i])
            for s, v in zip(cands, vals):
                if best_val is None or v >= best_val:
                    best_val, best_s = float(v), float(s)
        # S_i = 1 leaves only full cells in the slab: exactly zero
        val_one = float(int(np.count_nonzero(sel)) - (m - int(g[i])) * cells_other)
        if best_val is None or val_one >= best_val:
            best_val, best_s = val_one, 1.0
        per_dim.append(best_val)
        uppers.append(max(best_s, lows[i]))
    return _assemble("construct", lows, uppers, per_dim, uppers, True)


def witness_discrete(ps: PointSet) -> WitnessResult:
    """Half-cell slab scheme: k = floor(m/d) candidate slabs per
    dimension at the marks z_j = r + j/m + 1/(2m) above r = (m-k)/m.

    Each dimension keeps the best slab (largest j on ties) or clamps to
    the empty choice S_i = r when every slab is underfull.
    """
    pts = ps.points
    n, d = pts.shape
    m = grid_resolution(ps)
    k = m // d
    if k < 1:
        raise ValidationError(f"discrete scheme needs m >= d, got m={m}, d={d}")
    gg = m - k
    r = gg / m
    nprime = gg ** (d - 1)
    cells = _cells(pts, m)
    limits = np.full(d, gg, dtype=np.int64)
    z = r + (2 * np.arange(k) + 1) / (2 * m)
    # N * volume(U_j) = (2j+1) * N'/2 exactly
    expected = (2 * np.arange(k) + 1) * (nprime * 0.5)

    per_dim = []
    uppers = []
    for i in range(d):
        sel = _slab_select(cells, limits, i)
        coords = np.sort(pts[sel, i])
        vals = np.searchsorted(coords, z, side="left") - expected
        j = _last_argmax(vals)
        if vals[j] >= 0.0:
            per_dim.append(float(vals[j]))
            uppers.append(float(z[j]))
        else:
            per_dim.append(0.0)
            uppers.append(r)
    return _assemble("discrete", np.full(d, r), uppers, per_dim, uppers, False)


def witness_smallm(ps: PointSet) -> WitnessResult:
    """Single-slab scheme above r = (m-1)/m.

    With N' = (m-1)^(d-1) at least 16 the slab is the half-open half
    cell [r, r + 1/(2m)); below that a closed thin slab of width
    1/(2 N' m) is used, whose expected count is exactly 1/2.  Each
    dimension clamps at zero via the empty choice.
    """
    pts = ps.points
    n, d = pts.shape
    m = grid_resolution(ps)
    gg = m - 1
    r = gg / m
    nprime = gg ** (d - 1)
    thin = nprime < 16
    width = 1.0 / (2 * nprime * m) if thin else 1.0 / (2 * m)
    hi = r + width
    expected = 0.5 if thin else nprime * 0.5
    cells = _cells(pts, m)
    limits = np.full(d, gg, dtype=np.int64)

    per_dim = []
    uppers = []
    for i in range(d):
        xi = pts[_slab_select(cells, limits, i), i]
        count = int(np.count_nonzero(xi <= hi if thin else xi < hi))
        val = count - expected
        if val >= 0.0:
            per_dim.append(float(val))
            uppers.append(hi)
        else:
            per_dim.append(0.0)
            uppers.append(r)
    return _assemble("smallm", np.full(d, r), uppers, per_dim, uppers, thin)


def discrete_slabs(m: int, d: int, axis: int = 0) -> tuple[list[AxisRect], list[AxisRect]]:
    """The k cell-anchored slabs U_j and their half-cell cores T_j along
    one axis.  U_j \\ T_j is a union of full cells, so disc(U_j) =
    disc(T_j); the T_j are pairwise disjoint."""
    k = m // d
    if k < 1:
        raise ValidationError(f"need m >= d, got m={m}, d={d}")
    r = (m - k) / m
    us, ts = [], []
    for j in range(k):
        y = r + j / m
        z = y + 1 / (2 * m)
        lo_u = [0.0] * d
        lo_t = [0.0] * d
        hi = [r] * d
        lo_u[axis] = r
        lo_t[axis] = y
        hi[axis] = z
        us.append(AxisRect(tuple(lo_u), tuple(hi)))
        ts.append(AxisRect(tuple(lo_t), tuple(hi)))
    return us, ts


@dataclass(frozen=True)
class ZeroTestResult:
    rect: AxisRect
    mean: float
    std: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class ZeroTestReport:
    results: tuple[ZeroTestResult, ...]
    replications: int

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def mean_disc_is_zero_test(
    spec: StratifiedSpec, rects, replications: int, seed: int
) -> ZeroTestReport:
    """Monte Carlo check that E disc(A) = 0 for stratified sampling.

    Every cell of the stratification holds one uniform point, so any
    fixed region has mean signed discrepancy zero.  Each rect passes
    when |sample mean| <= 4 std / sqrt(R); a rect aligned to whole cells
    has std exactly 0 and must then have mean exactly 0.
    """
    if replications < 1000:
        raise ValidationError("need replications >= 1000")
    rects = list(rects)
    if not rects:
        raise ValidationError("need at least one rect")
    d = rects[0].d
    los = np.array([rc.lo for rc in rects])
    his = np.array([rc.hi for rc in rects])
    vols = np.array([rc.volume for rc in rects])
    vals = np.empty((replications, len(rects)))
    for t in range(replications):
        ps = _generate(spec, rng.mix(seed, t))
        if ps.d != d:
            raise ValidationError("rect dimension does not match the spec")
        pts = ps.points
        inside = (
            (pts[None, :, :] >= los[:, None, :]) & (pts[None, :, :] < his[:, None, :])
        ).all(axis=2).sum(axis=1)
        vals[t] = inside - ps.n * vols
    results = []
    root_r = math.sqrt(replications)
    for idx, rc in enumerate(rects):
        col = vals[:, idx]
        mean = math.fsum(col) / replications
        var = math.fsum((col - mean) ** 2) / (replications - 1)
        std = math.sqrt(var)
        bound = 4.0 * std / root_r
        passed = abs(mean) <= bound if std > 0.0 else mean == 0.0
        results.append(ZeroTestResult(rc, mean, std, bound, passed))
    return ZeroTestReport(tuple(results), replications)


def _generate(spec: StratifiedSpec, seed: int) -> PointSet:
    if isinstance(spec, FullGridSpec):
        return generate_jittered(spec, seed)
    if isinstance(spec, HalfCubeSpec):
        return generate_half_cube(spec, seed)
    raise ValidationError(f"unsupported stratified spec: {spec!r}")
