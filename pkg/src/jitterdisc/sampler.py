"""Point-set generators: jittered grids, half-cube sets, Monte Carlo, LHS.

All generators are pure functions of (spec, seed).  Each cell of a
stratified partition draws its point from a private stream derived from
the master seed and the cell's linear index, so generation order (and
any future parallel split) cannot change the output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import rng
from .errors import CapacityError, ValidationError

#: Default ceiling on the number of points a spec may request.
HARD_CAP = 1 << 24


@dataclass(frozen=True)
class FullGridSpec:
    """Partition of [0,1)^d into m^d congruent half-open cubes of side 1/m."""

    m: int
    d: int

    def __post_init__(self):
        if self.m < 2:
            raise ValidationError(f"FullGrid needs m >= 2, got m={self.m}")
        if self.d < 1:
            raise ValidationError(f"FullGrid needs d >= 1, got d={self.d}")

    @property
    def cell_count(self) -> int:
        return self.m**self.d


@dataclass(frozen=True)
class HalfCubeSpec:
    """Partition into 2^d' boxes: halved in the first d' axes, full in the rest."""

    d_prime: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValidationError(f"HalfCube needs d >= 1, got d={self.d}")
        if not 1 <= self.d_prime <= self.d:
            raise ValidationError(
                f"HalfCube needs 1 <= d_prime <= d, got d_prime={self.d_prime}, d={self.d}"
            )

    @property
    def cell_count(self) -> int:
        return 2**self.d_prime


StratifiedSpec = Union[FullGridSpec, HalfCubeSpec]


@dataclass(frozen=True)
class CellIndex:
    """Integer coordinates of one cell of a stratified partition."""

    coords: tuple[int, ...]

    def linear(self, spec: StratifiedSpec) -> int:
        divs = _cell_divisions(spec)
        if len(self.coords) != len(divs):
            raise ValidationError("cell index dimension mismatch")
        lin = 0
        for c, m in zip(self.coords, divs):
            if not 0 <= c < m:
                raise ValidationError(f"cell coordinate {c} outside [0, {m})")
            lin = lin * m + c
        return lin

    @classmethod
    def from_linear(cls, spec: StratifiedSpec, linear: int) -> "CellIndex":
        divs = _cell_divisions(spec)
        coords = []
        for m in reversed(divs):
            coords.append(linear % m)
            linear //= m
        return cls(tuple(reversed(coords)))


def _cell_divisions(spec: StratifiedSpec) -> tuple[int, ...]:
    """Per-axis subdivision counts; cells are row-major over this shape."""
    if isinstance(spec, FullGridSpec):
        return (spec.m,) * spec.d
    return (2,) * spec.d_prime + (1,) * (spec.d - spec.d_prime)


@dataclass(frozen=True, eq=False)
class PointSet:
    """N points in [0,1)^d plus provenance metadata."""

    points: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValidationError("points must be a nonempty (N, d) array")
        if not ((pts >= 0.0).all() and (pts < 1.0).all()):
            raise ValidationError("coordinates must lie in [0, 1)")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def _snap_into_cells(pts: np.ndarray, idx: np.ndarray, divs: np.ndarray) -> np.ndarray:
    """Nudge coordinates so floor(divs * x) recovers the generating cell.

    (i + u)/m can land one ulp across a cell boundary after binary64
    rounding; the canonical membership test is floor-based, so offenders
    are walked back by ulps (almost always zero iterations).
    """
    for _ in range(64):
        cells = np.floor(pts * divs)
        low = cells < idx
        high = (cells > idx) | (pts >= 1.0)
        if not (low.any() or high.any()):
            return pts
        pts = np.where(low, np.nextafter(pts, 1.0), pts)
        pts = np.where(high, np.nextafter(pts, 0.0), pts)
    raise AssertionError("cell snap did not converge")


def _stratified_points(divs: tuple[int, ...], seed: int) -> np.ndarray:
    shape = np.array(divs, dtype=np.int64)
    n = int(np.prod(shape))
    lin = np.arange(n)
    idx = np.empty((n, len(divs)), dtype=np.int64)
    rem = lin
    for j in range(len(divs) - 1, -1, -1):
        idx[:, j] = rem % divs[j]
        rem = rem // divs[j]
    u = rng.stream_uniforms(rng.child_seeds(seed, n), len(divs))
    pts = (idx + u) / shape
    return _snap_into_cells(pts, idx, shape.astype(np.float64))


def generate_jittered(spec: FullGridSpec, seed: int, cap: int = HARD_CAP) -> PointSet:
    """One uniform point per m-cube; exactly m^d points.

    Point for cell x lies in [x_i/m, (x_i+1)/m) in every coordinate, and
    identical (spec, seed) reproduce identical coordinate bytes.
    """
    if not isinstance(spec, FullGridSpec):
        raise ValidationError("generate_jittered needs a FullGrid spec")
    if spec.cell_count > cap:
        raise CapacityError(
            f"m^d = {spec.m}^{spec.d} = {spec.cell_count} exceeds the cap of {cap} points"
        )
    pts = _stratified_points(_cell_divisions(spec), seed)
    return PointSet(pts, {"kind": "jittered", "m": spec.m, "d": spec.d, "seed": seed})


def generate_half_cube(spec: HalfCubeSpec, seed: int, cap: int = HARD_CAP) -> PointSet:
    """One uniform point per half-cube box; exactly 2^d' points in d dims."""
    if not isinstance(spec, HalfCubeSpec):
        raise ValidationError("generate_half_cube needs a HalfCube spec")
    if spec.cell_count > cap:
        raise CapacityError(
            f"2^d' = {spec.cell_count} exceeds the cap of {cap} points"
        )
    pts = _stratified_points(_cell_divisions(spec), seed)
    return PointSet(
        pts, {"kind": "halfcube", "d_prime": spec.d_prime, "d": spec.d, "seed": seed}
    )


def generate_uniform(n: int, d: int, seed: int, cap: int = HARD_CAP) -> PointSet:
    """n i.i.d. uniform points in [0,1)^d (the Monte Carlo baseline)."""
    _check_nd(n, d, cap)
    pts = rng.stream_uniforms(rng.child_seeds(seed, n), d)
    return PointSet(pts, {"kind": "uniform", "n": n, "d": d, "seed": seed})


def generate_lhs(n: int, d: int, seed: int, cap: int = HARD_CAP) -> PointSet:
    """Latin hypercube sample: per axis, one coordinate in each width-1/n stratum.

    Unscrambled variant: an independent uniform permutation of the n
    strata per dimension, one uniform offset within each stratum.
    """
    _check_nd(n, d, cap)
    offsets_master = rng.mix(seed, 0)
    perm_master = rng.mix(seed, 1)
    u = rng.stream_uniforms(rng.child_seeds(offsets_master, n), d)
    strata = np.empty((n, d), dtype=np.int64)
    for j in range(d):
        strata[:, j] = _permutation(rng.mix(perm_master, j), n)
    divs = np.full(d, float(n))
    pts = _snap_into_cells((strata + u) / n, strata, divs)
    return PointSet(pts, {"kind": "lhs", "n": n, "d": d, "seed": seed})


def _check_nd(n: int, d: int, cap: int) -> None:
    if n < 1:
        raise ValidationError(f"need n >= 1 points, got n={n}")
    if d < 1:
        raise ValidationError(f"need d >= 1, got d={d}")
    if n > cap:
        raise CapacityError(f"n = {n} exceeds the cap of {cap} points")


def _permutation(seed: int, n: int) -> np.ndarray:
    """Seeded Fisher-Yates shuffle of range(n)."""
    perm = np.arange(n)
    u = rng.uniforms(seed, max(n - 1, 0))
    for i in range(n - 1, 0, -1):
        j = min(int(u[n - 1 - i] * (i + 1)), i)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def cell_of(points: np.ndarray, spec: StratifiedSpec) -> np.ndarray:
    """Canonical cell coordinates floor(divs * x) of each point, shape (N, d)."""
    divs = np.array(_cell_divisions(spec), dtype=np.float64)
    return np.floor(np.asarray(points) * divs).astype(np.int64)
