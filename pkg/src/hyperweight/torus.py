"""Affine and projective tori over F_q, evaluation and common-zero counts.

Points are kept as the integer matrix of their discrete logs to base theta,
so evaluating a monomial ``t^a`` at every point is one matrix-vector product
followed by an antilog lookup.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, SizeCap
from .gf import FieldSpec
from .poly import Polynomial

DEFAULT_ENUM_CAP = 10**8


@dataclass(frozen=True, eq=False)
class PointSet:
    """Ordered torus points.

    ``logs[i, j]`` is the exponent e with ``points[i, j] == theta**e``.
    """

    kind: str
    field: FieldSpec
    s: int
    logs: np.ndarray
    points: np.ndarray

    @property
    def q(self) -> int:
        return self.field.q

    def __len__(self) -> int:
        return self.logs.shape[0]

    def tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.points]


def _antilog(fs: FieldSpec, k: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=np.int64) % (fs.q - 1)
    try:
        return fs.exp_table[k]
    except Exception:
        return np.vectorize(fs.exp, otypes=[np.int64])(k)


def _log_grid(q: int, s: int) -> np.ndarray:
    n = (q - 1) ** s
    if s == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.array(list(itertools.product(range(q - 1), repeat=s)), dtype=np.int64)
    return grid.reshape(n, s)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise SizeCap(f"torus has {n} points, above the enumeration cap {cap}")


@functools.lru_cache(maxsize=64)
def _affine(fs: FieldSpec, s: int) -> PointSet:
    logs = _log_grid(fs.q, s)
    pts = _antilog(fs, logs) if logs.size else logs.copy()
    logs.setflags(write=False)
    pts.setflags(write=False)
    return PointSet("affine", fs, s, logs, pts)


def enumerate_affine_torus(fs: FieldSpec, s: int, cap: int = DEFAULT_ENUM_CAP) -> PointSet:
    """``(theta^e_1, ..., theta^e_s)`` with ``(e_1, ..., e_s)`` counting up lexicographically."""
    if s < 1:
        raise ValueError("s must be >= 1")
    _check_cap((fs.q - 1) ** s, cap)
    return _affine(fs, s)


@functools.lru_cache(maxsize=64)
def _projective(fs: FieldSpec, s: int) -> PointSet:
    base = _affine(fs, s - 1) if s > 1 else None
    m = (fs.q - 1) ** (s - 1)
    logs = np.zeros((m, s), dtype=np.int64)
    pts = np.ones((m, s), dtype=np.int64)
    if base is not None:
        logs[:, 1:] = base.logs
        pts[:, 1:] = base.points
    logs.setflags(write=False)
    pts.setflags(write=False)
    return PointSet("projective", fs, s, logs, pts)


def enumerate_projective_torus(fs: FieldSpec, s: int, cap: int = DEFAULT_ENUM_CAP) -> PointSet:
    """``(1, R)`` for each ``R`` of the affine torus in ``s-1`` variables, in that order."""
    if s < 2:
        raise ValueError("s must be >= 2")
    _check_cap((fs.q - 1) ** (s - 1), cap)
    return _projective(fs, s)


def monomial_values(exps: Sequence[int], pts: PointSet, rows: np.ndarray | None = None) -> np.ndarray:
    """``t^exps`` at every point (or at ``pts`` restricted to ``rows``)."""
    logs = pts.logs if rows is None else pts.logs[rows]
    return _antilog(pts.field, logs @ np.asarray(exps, dtype=np.int64))


def _evaluate_rows(f: Polynomial, pts: PointSet, rows: np.ndarray | None) -> np.ndarray:
    fs = pts.field
    n = len(pts) if rows is None else len(rows)
    acc = np.zeros(n, dtype=np.int64)
    for exps, c in f.terms.items():
        vals = monomial_values(exps, pts, rows)
        if c != 1:
            vals = fs.vmul(c, vals)
        acc = fs.vadd(acc, vals)
    return acc


def _check_compat(f: Polynomial, pts: PointSet) -> None:
    if f.s != pts.s:
        raise DimensionMismatch(f"polynomial in {f.s} variables, torus of dimension {pts.s}")
    if f.field != pts.field:
        raise FieldMismatch("polynomial and torus are over different fields")


def evaluate(f: Polynomial, pts: PointSet) -> np.ndarray:
    """Vector ``(f(P_1), ..., f(P_n))`` in point order."""
    _check_compat(f, pts)
    return _evaluate_rows(f, pts, None)


def common_zero_mask(polys: Sequence[Polynomial], pts: PointSet) -> np.ndarray:
    """Boolean mask of the points where every polynomial vanishes."""
    alive = np.arange(len(pts))
    for f in polys:
        _check_compat(f, pts)
    for f in polys:
        if alive.size == 0:
            break
        vals = _evaluate_rows(f, pts, alive)
        alive = alive[vals == 0]
    mask = np.zeros(len(pts), dtype=bool)
    mask[alive] = True
    return mask


def count_common_zeros(polys: Sequence[Polynomial], pts: PointSet) -> int:
    """``|{P : f(P) = 0 for all f}|``; later polynomials only see surviving points."""
    alive = np.arange(len(pts))
    for f in polys:
        _check_compat(f, pts)
    for f in polys:
        if alive.size == 0:
            return 0
        vals = _evaluate_rows(f, pts, alive)
        alive = alive[vals == 0]
    return int(alive.size)
