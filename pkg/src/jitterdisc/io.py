"""Text serialization for point sets.

Format: first line "d N", then N lines of d coordinates written with 17
significant decimal digits, which round-trips binary64 exactly.  All
coordinates must lie in [0, 1); the domain is half-open.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ParseError
from .sampler import PointSet


def format_float(v: float) -> str:
    return "%.17g" % v


def write_point_set(path: os.PathLike | str, ps: PointSet) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{ps.d} {ps.n}\n")
        for row in ps.points:
            fh.write(" ".join(format_float(v) for v in row) + "\n")


def read_point_set(path: os.PathLike | str) -> PointSet:
    path = os.fspath(path)
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    header_at = _next_content_line(lines, 0, path)
    fields = lines[header_at].split()
    if len(fields) != 2:
        raise ParseError("header must be 'd N'", path=path, line=header_at + 1)
    try:
        d, n = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError("header must hold two integers", path=path, line=header_at + 1)
    if d < 1:
        raise ParseError(f"dimension must be >= 1, got {d}", path=path, line=header_at + 1)
    if n < 1:
        raise ParseError(f"point count must be >= 1, got {n}", path=path, line=header_at + 1)
    points = np.empty((n, d))
    at = header_at
    for i in range(n):
        at = _next_content_line(lines, at + 1, path)
        fields = lines[at].split()
        if len(fields) != d:
            raise ParseError(
                f"expected {d} coordinates, got {len(fields)}", path=path, line=at + 1
            )
        for j, tok in enumerate(fields):
            try:
                v = float(tok)
            except ValueError:
                raise ParseError(f"bad coordinate {tok!r}", path=path, line=at + 1)
            if not 0.0 <= v < 1.0:
                raise ParseError(
                    f"coordinate {format_float(v)} out of range: must be >= 0 and < 1",
                    path=path, line=at + 1,
                )
            points[i, j] = v
    for k in range(at + 1, len(lines)):
        if lines[k].strip():
            raise ParseError("trailing content after the last point", path=path, line=k + 1)
    return PointSet(points, meta={"kind": "file", "path": path})


def _next_content_line(lines: list[str], start: int, path: str) -> int:
    for k in range(start, len(lines)):
        if lines[k].strip():
            return k
    raise ParseError("unexpected end of file", path=path, line=len(lines) + 1)
