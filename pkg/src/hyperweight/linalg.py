"""Row reduction, rank and nullspace over F_q (numpy, exact)."""

from __future__ import annotations

import numpy as np

from .errors import FieldMismatch
from .gf import FieldSpec


def _as_matrix(matrix, fs: FieldSpec) -> np.ndarray:
    a = np.array(matrix, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if a.size and (a.min() < 0 or a.max() >= fs.q):
        raise FieldMismatch(f"matrix entries are not reps of F_{fs.q}")
    return a


def rref(matrix, fs: FieldSpec) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form of ``matrix`` over ``fs``.

    Returns ``(R, rank, pivot_columns)``; ``R`` keeps the input shape with the
    zero rows at the bottom.
    """
    a = _as_matrix(matrix, fs).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            a[[row, i]] = a[[i, row]]
        lead = int(a[row, col])
        if lead != 1:
            a[row] = fs.vmul(fs.inv(lead), a[row])
        others = np.flatnonzero(a[:, col])
        others = others[others != row]
        if others.size:
            factors = a[others, col][:, None]
            a[others] = fs.vsub(a[others], fs.vmul(factors, a[row][None, :]))
        pivots.append(col)
        row += 1
    return a, row, pivots


def rank(matrix, fs: FieldSpec) -> int:
    return rref(matrix, fs)[1]


def row_basis(matrix, fs: FieldSpec) -> np.ndarray:
    """The nonzero rows of the RREF: canonical basis of the row space."""
    r, k, _ = rref(matrix, fs)
    return r[:k]


def nullspace(matrix, fs: FieldSpec) -> np.ndarray:
    """RREF basis (as rows) of ``{x : M x^T = 0}``."""
    a = _as_matrix(matrix, fs)
    ncols = a.shape[1]
    r, k, pivots = rref(a, fs)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = fs.neg(int(r[i, f]))
    if not free:
        return basis
    return row_basis(basis, fs)


def matmul(a, b, fs: FieldSpec) -> np.ndarray:
    """Matrix product over ``fs``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        col = a[:, j]
        if not col.any():
            continue
        out = fs.vadd(out, fs.vmul(col[:, None], b[j][None, :]))
    return out
