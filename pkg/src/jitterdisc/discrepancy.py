"""Star discrepancy: signed box counts, exact engines, heuristic search, covers.

The star discrepancy here is non-normalized,

    D*(P) = sup over x in [0,1)^d of | |P intersect [0,x)| - N lambda([0,x)) |,

a supremum over half-open anchored boxes.  It is realized as a maximum
over the critical candidate grid (per-dimension point coordinates plus
1.0) by evaluating the overfull side with closed upper faces (the
right-limit of the count) and the underfull side with strict faces.
The reported value is the supremum even when no half-open box attains
it; the witness corner is the limiting corner.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import rng
from .errors import CoverBudgetError, ExactInfeasibleError, ValidationError
from .sampler import PointSet

#: Candidate-corner evaluations allowed for the exact engines.  Covers
#: d <= 2 up to N = 5000 and d = 3 up to N = 600; N <= 8 bypasses the
#: grid entirely via subset enumeration.
DEFAULT_EXACT_BUDGET = 220_000_000

#: Cover-corner evaluations allowed for the certified upper bound.
DEFAULT_COVER_BUDGET = 4_000_000

#: Largest N handled by the subset engine (3^N states).
_SUBSET_MAX_N = 8


class Side(enum.Enum):
    OVERFULL = "overfull"
    UNDERFULL = "underfull"


class Kind(enum.Enum):
    EXACT = "exact"
    LOWER_WITNESS = "lower_witness"
    CERTIFIED_UPPER = "certified_upper"


@dataclass(frozen=True)
class Witness:
    corner: tuple[float, ...]
    side: Side


@dataclass(frozen=True)
class DiscrepancyEstimate:
    value: float
    kind: Kind
    witness: Witness | None = None
    delta: float | None = None


@dataclass(frozen=True)
class AxisRect:
    """Half-open axis-aligned box prod [lo_i, hi_i) inside [0,1]^d."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValidationError("lo and hi must be nonempty and equally long")
        for a, b in zip(lo, hi):
            if not (0.0 <= a <= b <= 1.0):
                raise ValidationError(f"need 0 <= lo <= hi <= 1, got [{a}, {b})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def anchored(cls, corner) -> "AxisRect":
        corner = tuple(float(v) for v in corner)
        return cls((0.0,) * len(corner), corner)

    @property
    def d(self) -> int:
        return len(self.lo)

    @property
    def volume(self) -> float:
        return math.prod(b - a for a, b in zip(self.lo, self.hi))


def signed_disc(ps: PointSet, rect: AxisRect, closed=False) -> float:
    """Signed discrepancy disc(A) = |P intersect A| - N lambda(A).

    ``closed`` switches the upper-face comparison from p_i < hi_i to
    p_i <= hi_i, per dimension if a sequence is given; the lower face is
    always p_i >= lo_i.
    """
    pts = ps.points
    if rect.d != ps.d:
        raise ValidationError(f"rect is {rect.d}-dimensional, points are {ps.d}")
    mask = _closed_mask(closed, ps.d)
    inside = np.ones(ps.n, dtype=bool)
    for j in range(ps.d):
        col = pts[:, j]
        upper = col <= rect.hi[j] if mask[j] else col < rect.hi[j]
        inside &= (col >= rect.lo[j]) & upper
    return float(int(np.count_nonzero(inside)) - ps.n * rect.volume)


def _closed_mask(closed, d: int) -> tuple[bool, ...]:
    if isinstance(closed, bool):
        return (closed,) * d
    mask = tuple(bool(c) for c in closed)
    if len(mask) != d:
        raise ValidationError("closure mask length must equal the dimension")
    return mask


def normalized(est: DiscrepancyEstimate, n: int) -> float:
    """Discrepancy per point, value / N."""
    if n < 1:
        raise ValidationError("need n >= 1")
    return est.value / n


# --------------------------------------------------------------------------
# exact engines

def _last_argmax(a: np.ndarray) -> int:
    m = a.max()
    return int(np.flatnonzero(a == m)[-1])


def _better(cand, best):
    """Deterministic max-reduction: value, then lexicographically larger
    corner, then the overfull side."""
    if best is None:
        return True
    vc, cc, sc = cand
    vb, cb, sb = best
    if vc != vb:
        return vc > vb
    if cc != cb:
        return cc > cb
    return sc is Side.OVERFULL


def _exact_1d(pts: np.ndarray):
    n = pts.shape[0]
    xs = np.sort(pts[:, 0])
    cands = np.append(np.unique(xs), 1.0)
    closed = np.searchsorted(xs, cands, side="right")
    strict = np.searchsorted(xs, cands, side="left")
    dp = closed - n * cands
    dm = n * cands - strict
    ip, im = _last_argmax(dp), _last_argmax(dm)
    return (float(dp[ip]), (float(cands[ip]),)), (float(dm[im]), (float(cands[im]),))


def _exact_2d(pts: np.ndarray):
    """Sorted sweep over x candidates, cumulative y-rank counts per step."""
    n = pts.shape[0]
    cx = np.append(np.unique(pts[:, 0]), 1.0)
    cy = np.append(np.unique(pts[:, 1]), 1.0)
    ry = np.searchsorted(cy, pts[:, 1])
    order = np.argsort(pts[:, 0], kind="stable")
    x_sorted = pts[order, 0]
    ry_sorted = ry[order]
    starts = np.searchsorted(x_sorted, cx, side="left")
    ends = np.append(starts[1:], n)

    cnt = np.zeros(len(cy), dtype=np.int64)
    prev_cc = np.zeros(len(cy))
    best_p = best_m = None
    for i, v in enumerate(cx):
        vol_row = (n * v) * cy
        # x < cx[i] is exactly x <= cx[i-1]; y < cy[j] shifts ranks by one
        dm_row = vol_row - np.concatenate(([0.0], prev_cc[:-1]))
        jm = _last_argmax(dm_row)
        if best_m is None or dm_row[jm] >= best_m[0]:
            best_m = (float(dm_row[jm]), (float(v), float(cy[jm])))
        np.add.at(cnt, ry_sorted[starts[i]:ends[i]], 1)
        cc = np.cumsum(cnt)
        dp_row = cc - vol_row
        jp = _last_argmax(dp_row)
        if best_p is None or dp_row[jp] >= best_p[0]:
            best_p = (float(dp_row[jp]), (float(v), float(cy[jp])))
        prev_cc = cc
    return best_p, best_m


def _exact_subset(pts: np.ndarray):
    """Exact max for N <= 8 points in any dimension.

    Overfull corners can be snapped down to the componentwise max of the
    points inside the closed box, so 2^N subsets cover them.  Underfull
    corners are characterized by the set E of points they block: the
    best corner blocking E assigns each point of a partition block to
    the axis maximizing the blocked minimum, which a subset DP solves in
    O(3^N).
    """
    n, d = pts.shape
    size = 1 << n
    maxs = np.zeros((size, d))
    mins = np.ones((size, d))
    for mask in range(1, size):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        np.maximum(maxs[rest], pts[i], out=maxs[mask])
        np.minimum(mins[rest], pts[i], out=mins[mask])

    # overfull side
    counts = (pts[None, :, :] <= maxs[:, None, :]).all(axis=2).sum(axis=1)
    vols = maxs.prod(axis=1)
    dp = counts - n * vols
    best_p = (0.0, (0.0,) * d)
    for mask in np.flatnonzero(dp >= best_p[0]):
        cand = (float(dp[mask]), tuple(float(v) for v in maxs[mask]))
        if cand[0] > best_p[0] or (cand[0] == best_p[0] and cand[1] > best_p[1]):
            best_p = cand

    # underfull side
    block_val = mins.max(axis=1)
    block_dim = mins.argmax(axis=1)
    gvol = np.ones(size)
    choice = [0] * size
    for e in range(1, size):
        low = e & -e
        best = -1.0
        sub = e
        while sub:
            if sub & low:
                v = block_val[sub] * gvol[e ^ sub]
                if v > best:
                    best = v
                    choice[e] = sub
            sub = (sub - 1) & e
        gvol[e] = best

    best_m = None
    for e in range(size):
        y = np.ones(d)
        rest = e
        while rest:
            b = choice[rest]
            i = block_dim[b]
            y[i] = min(y[i], mins[b, i])
            rest ^= b
        count = int((pts < y).all(axis=1).sum())
        val = n * y.prod() - count
        cand = (float(val), tuple(float(v) for v in y))
        if best_m is None or cand[0] > best_m[0] or (
            cand[0] == best_m[0] and cand[1] > best_m[1]
        ):
            best_m = cand
    return best_p, best_m


def _exact_nd(pts: np.ndarray, cands: list[np.ndarray]):
    """Recursive candidate-grid scan, d >= 3; the last two axes are swept
    with cumulative 2-D histograms."""
    n, d = pts.shape
    ranks = [np.searchsorted(cands[j], pts[:, j]) for j in range(d)]
    cx, cy = cands[d - 2], cands[d - 1]
    rx, ry = ranks[d - 2], ranks[d - 1]
    vols2 = np.outer(cx, cy)
    shape = (len(cx), len(cy))
    state = {"plus": None, "minus": None}

    def leaf(cm, sm, vol, prefix):
        hc = np.zeros(shape)
        np.add.at(hc, (rx[cm], ry[cm]), 1.0)
        cc = hc.cumsum(axis=0).cumsum(axis=1)
        dp = cc - (n * vol) * vols2
        flat = _last_argmax(dp.ravel())
        val = float(dp.ravel()[flat])
        if state["plus"] is None or val >= state["plus"][0]:
            i, j = divmod(flat, shape[1])
            state["plus"] = (val, prefix + (float(cx[i]), float(cy[j])))
        hs = np.zeros(shape)
        np.add.at(hs, (rx[sm], ry[sm]), 1.0)
        c2 = hs.cumsum(axis=0).cumsum(axis=1)
        ss = np.zeros(shape)
        ss[1:, 1:] = c2[:-1, :-1]
        dm = (n * vol) * vols2 - ss
        flat = _last_argmax(dm.ravel())
        val = float(dm.ravel()[flat])
        if state["minus"] is None or val >= state["minus"][0]:
            i, j = divmod(flat, shape[1])
            state["minus"] = (val, prefix + (float(cx[i]), float(cy[j])))

    def rec(j, cm, sm, vol, prefix):
        if j == d - 2:
            leaf(cm, sm, vol, prefix)
            return
        col = pts[:, j]
        for v in cands[j]:
            rec(j + 1, cm & (col <= v), sm & (col < v), vol * v, prefix + (float(v),))

    ones = np.ones(n, dtype=bool)
    rec(0, ones, ones, 1.0, ())
    return state["plus"], state["minus"]


def exact_work_estimate(n: int, d: int) -> int:
    """Worst-case candidate-corner count of the exact engines."""
    if d == 1 or n <= _SUBSET_MAX_N:
        return n + 1
    return (n + 1) ** d


def exact_feasible(n: int, d: int, budget: int = DEFAULT_EXACT_BUDGET) -> bool:
    return exact_work_estimate(n, d) <= budget


def star_disc_exact(ps: PointSet, budget: int = DEFAULT_EXACT_BUDGET) -> DiscrepancyEstimate:
    """Exact D*(P) with a witness corner, by critical-grid enumeration.

    Supported regimes under the default budget: any d with N <= 8,
    d <= 2 with N <= 5000, d = 3 with N <= 600; beyond that an
    ExactInfeasibleError points at the heuristic/certified routes.
    """
    pts = ps.points
    n, d = pts.shape
    if d == 1:
        best_p, best_m = _exact_1d(pts)
    elif n <= _SUBSET_MAX_N:
        best_p, best_m = _exact_subset(pts)
    else:
        cands = [np.append(np.unique(pts[:, j]), 1.0) for j in range(d)]
        work = math.prod(len(c) for c in cands)
        if work > budget:
            raise ExactInfeasibleError(
                f"exact star discrepancy needs {work:.3g} candidate evaluations "
                f"(budget {budget:.3g}); use heuristic or certified"
            )
        if d == 2:
            best_p, best_m = _exact_2d(pts)
        else:
            best_p, best_m = _exact_nd(pts, cands)
    value, corner, side = _pick_side(best_p, best_m)
    return DiscrepancyEstimate(value, Kind.EXACT, Witness(corner, side))


def _pick_side(best_p, best_m):
    cand_p = (best_p[0], best_p[1], Side.OVERFULL)
    cand_m = (best_m[0], best_m[1], Side.UNDERFULL)
    return cand_p if _better(cand_p, cand_m) else cand_m


# --------------------------------------------------------------------------
# heuristic lower bound

def star_disc_heuristic(
    ps: PointSet, restarts: int = 16, seed: int = 0
) -> DiscrepancyEstimate:
    """Multi-restart coordinate ascent over the candidate grid.

    The first restart starts at the all-ones corner (the underfull
    maximizer tends to live near the top of the cube), the rest at
    random candidate corners.  Each restart re-optimizes one coordinate
    at a time (for the overfull and underfull objectives separately)
    until a full pass changes nothing; ties move toward the
    lexicographically largest corner.  The result is always a valid
    lower bound on D*(P), deterministic per seed.
    """
    if restarts < 1:
        raise ValidationError("need restarts >= 1")
    pts = ps.points
    n, d = pts.shape
    cands = [np.append(np.unique(pts[:, j]), 1.0) for j in range(d)]
    best = None
    for r in range(restarts):
        if r == 0:
            start = [len(cands[j]) - 1 for j in range(d)]
        else:
            u = rng.uniforms(rng.mix(seed, r), d)
            start = [
                min(int(u[j] * len(cands[j])), len(cands[j]) - 1) for j in range(d)
            ]
        for closed, side in ((True, Side.OVERFULL), (False, Side.UNDERFULL)):
            val, corner = _ascend(pts, cands, list(start), closed)
            cand = (val, corner, side)
            if _better(cand, best):
                best = cand
    value, corner, side = best
    return DiscrepancyEstimate(value, Kind.LOWER_WITNESS, Witness(corner, side))


def _ascend(pts: np.ndarray, cands, idx, closed: bool):
    n, d = pts.shape
    y = np.array([cands[j][idx[j]] for j in range(d)])
    mat = np.empty(pts.shape, dtype=np.int8)
    for j in range(d):
        mat[:, j] = (pts[:, j] <= y[j]) if closed else (pts[:, j] < y[j])
    sat = mat.sum(axis=1)
    count = int((sat == d).sum())
    vol = float(np.prod(y))
    cur = count - n * vol if closed else n * vol - count
    side = "right" if closed else "left"
    while True:
        changed = False
        for j in range(d):
            others = (sat - mat[:, j]) == d - 1
            xj = np.sort(pts[others, j])
            counts = np.searchsorted(xj, cands[j], side=side)
            prod_other = float(np.prod(y[:j]) * np.prod(y[j + 1:]))
            if closed:
                vals = counts - (n * prod_other) * cands[j]
            else:
                vals = (n * prod_other) * cands[j] - counts
            k = _last_argmax(vals)
            v = float(vals[k])
            if v > cur or (v == cur and k > idx[j]):
                idx[j] = k
                y[j] = cands[j][k]
                newcol = (pts[:, j] <= y[j]) if closed else (pts[:, j] < y[j])
                sat += newcol.astype(np.int8) - mat[:, j]
                mat[:, j] = newcol
                cur = v
                changed = True
        if not changed:
            return cur, tuple(float(v) for v in y)


# --------------------------------------------------------------------------
# certified upper bound

@dataclass(frozen=True)
class CoverSpec:
    """Equidistant bracketing cover: corners {0, 1/M, ..., 1}^d.

    The exact bracketing gap of this grid is 1 - (1 - 1/M)^d, which must
    not exceed the target ``delta``.
    """

    delta: float
    grid_resolution: int

    def __post_init__(self):
        if not 0.0 < self.delta <= 1.0:
            raise ValidationError(f"delta must be in (0, 1], got {self.delta}")
        if self.grid_resolution < 1:
            raise ValidationError("grid_resolution must be >= 1")

    def gap(self, d: int) -> float:
        return 1.0 - (1.0 - 1.0 / self.grid_resolution) ** d

    @classmethod
    def for_delta(cls, delta: float, d: int) -> "CoverSpec":
        """Smallest M whose gap meets ``delta`` in dimension d."""
        if not 0.0 < delta <= 1.0:
            raise ValidationError(f"delta must be in (0, 1], got {delta}")
        m = max(1, math.ceil(1.0 / (1.0 - (1.0 - delta) ** (1.0 / d))))
        while 1.0 - (1.0 - 1.0 / m) ** d > delta:
            m += 1
        # the ceil guess can land one above the true minimum (float dust)
        while m > 1 and 1.0 - (1.0 - 1.0 / (m - 1)) ** d <= delta:
            m -= 1
        return cls(delta, m)

    @classmethod
    def for_resolution(cls, m: int, d: int) -> "CoverSpec":
        if m < 1:
            raise ValidationError("grid_resolution must be >= 1")
        return cls(1.0 - (1.0 - 1.0 / m) ** d, m)


def star_disc_certified_upper(
    ps: PointSet, cover: CoverSpec, budget: int = DEFAULT_COVER_BUDGET
) -> DiscrepancyEstimate:
    """Certified upper bound D*(P) <= max over cover corners + N * gap.

    Any box [0,x) is bracketed by grid corners v <= x <= w with volume
    gap at most delta-bar, so its discrepancy is dominated by the corner
    maximum plus N times the gap; the returned value is therefore a
    guaranteed upper bound on the exact star discrepancy.
    """
    pts = ps.points
    n, d = pts.shape
    m = cover.grid_resolution
    work = (m + 1) ** d
    if work > budget:
        raise CoverBudgetError(
            f"(M+1)^d = {work:.3g} cover corners exceed the budget {budget:.3g}; "
            "use a smaller grid resolution"
        )
    gap = cover.gap(d)
    if gap > cover.delta * (1 + 1e-12):
        raise ValidationError(
            f"grid resolution {m} has bracketing gap {gap:.6g} > delta {cover.delta:.6g}"
        )
    g = np.arange(m + 1) / m
    # x <= g[i] iff i >= searchsorted-left; x < g[i] iff i >= searchsorted-right
    shape = (m + 1,) * d
    cc = np.zeros(shape)
    rc = tuple(np.searchsorted(g, pts[:, j], side="left") for j in range(d))
    np.add.at(cc, rc, 1.0)
    ss = np.zeros(shape)
    rs = tuple(np.searchsorted(g, pts[:, j], side="right") for j in range(d))
    np.add.at(ss, rs, 1.0)
    for ax in range(d):
        cc = cc.cumsum(axis=ax)
        ss = ss.cumsum(axis=ax)
    vols = reduce(np.multiply.outer, [g] * d) if d > 1 else g.copy()
    dp = cc - n * vols
    dm = n * vols - ss
    del cc, ss, vols
    fp = _last_argmax(dp.ravel())
    fm = _last_argmax(dm.ravel())
    best_p = (float(dp.ravel()[fp]), _unravel_corner(fp, shape, g))
    best_m = (float(dm.ravel()[fm]), _unravel_corner(fm, shape, g))
    corner_max, corner, side = _pick_side(best_p, best_m)
    return DiscrepancyEstimate(
        corner_max + n * gap, Kind.CERTIFIED_UPPER, Witness(corner, side), delta=gap
    )


def _unravel_corner(flat: int, shape, g) -> tuple[float, ...]:
    return tuple(float(g[i]) for i in np.unravel_index(flat, shape))
