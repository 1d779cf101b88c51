"""Support weights, minimum distance and generalized Hamming weights by
exhaustive search.

Subspaces of a code are visited through their canonical RREF coordinate
matrices, grouped by pivot profile.  For a fixed profile every basis row
ranges independently over its own candidate set, so the search is a product
of per-row candidate lists; the numba kernel walks that product depth-first
with support masks and prunes partial unions that already reach the best
value.  :func:`min_distance` is a separate code path (Gray-code walk over
normalised codewords) so the two can be checked against each other.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .codes import LinearCode
from .errors import BadParameters, BudgetExceeded, DimensionMismatch, LinearlyDependent
from .gf import FieldSpec
from .linalg import rank

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "HYPERWEIGHT_BUDGET"
# rows of candidate codewords materialised at once
CHUNK = 1 << 15


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            log.warning("ignoring malformed %s=%r", BUDGET_ENV, raw)
    return DEFAULT_BUDGET


def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^k."""
    if r < 0 or r > k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# --- canonical subspace enumeration ---------------------------------------


def _free_columns(pivots: Sequence[int], k: int) -> list[list[int]]:
    """Per row: columns right of its pivot that are not pivots themselves."""
    pset = set(pivots)
    return [[j for j in range(c + 1, k) if j not in pset] for c in pivots]


class SubspaceIterator:
    """Iterates the r x k RREF matrices of rank r over F_q, one per subspace.

    Profiles (pivot-column tuples) come in lexicographic order; within a
    profile the free entries count up in base q, last entry fastest.
    """

    def __init__(self, k: int, r: int, fs: FieldSpec):
        if not 0 <= r <= k:
            raise BadParameters(f"need 0 <= r <= k, got r={r}, k={k}")
        self.k = k
        self.r = r
        self.field = fs
        self.profile: tuple[int, ...] | None = None

    def profiles(self) -> Iterator[tuple[int, ...]]:
        return itertools.combinations(range(self.k), self.r)

    def profile_size(self, pivots: Sequence[int]) -> int:
        return self.field.q ** sum(len(f) for f in _free_columns(pivots, self.k))

    def count(self) -> int:
        """Sum of the profile sizes (no matrices built)."""
        return sum(self.profile_size(p) for p in self.profiles())

    def __len__(self) -> int:
        return gaussian_binomial(self.k, self.r, self.field.q)

    def __iter__(self) -> Iterator[np.ndarray]:
        q = self.field.q
        for pivots in self.profiles():
            self.profile = pivots
            slots = [(i, j) for i, cols in enumerate(_free_columns(pivots, self.k)) for j in cols]
            base = np.zeros((self.r, self.k), dtype=np.int64)
            base[np.arange(self.r), list(pivots)] = 1
            for values in itertools.product(range(q), repeat=len(slots)):
                m = base.copy()
                for (i, j), v in zip(slots, values):
                    m[i, j] = v
                yield m


# --- supports -----------------------------------------------------------------


def support_weight(basis, fs: FieldSpec | None = None) -> int:
    """Number of coordinates where some basis vector is nonzero.

    With ``fs`` the basis is checked for linear independence; without it only
    zero vectors are rejected.
    """
    rows = [np.asarray(v, dtype=np.int64).ravel() for v in basis]
    if not rows:
        raise BadParameters("empty basis")
    n = rows[0].size
    if any(v.size != n for v in rows):
        raise DimensionMismatch("basis vectors have different lengths")
    mat = np.vstack(rows)
    if not mat.any(axis=1).all():
        raise LinearlyDependent("basis contains the zero vector")
    if fs is not None and rank(mat, fs) != len(rows):
        raise LinearlyDependent("basis vectors are linearly dependent")
    return int(np.count_nonzero(mat.any(axis=0)))


def _words(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack_supports(vectors: np.ndarray) -> np.ndarray:
    """Support masks of the rows of ``vectors`` as ``(N, W)`` uint64."""
    nz = np.asarray(vectors) != 0
    n_rows, n = nz.shape
    w = _words(n)
    packed = np.packbits(nz, axis=1, bitorder="little")
    out = np.zeros((n_rows, w * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view("<u8").astype(np.uint64, copy=False).reshape(n_rows, w)


def _digits(idx: np.ndarray, q: int, f: int) -> np.ndarray:
    """Base-q digits of ``idx``, most significant first, shape ``(len(idx), f)``."""
    out = np.empty((idx.size, f), dtype=np.int64)
    rest = idx.copy()
    for j in range(f - 1, -1, -1):
        out[:, j] = rest % q
        rest //= q
    return out


def _row_candidates(gen, pivot, free, fs, start, stop) -> np.ndarray:
    """Codewords ``G[pivot] + sum_j a_j G[free_j]`` for coefficient vectors
    ``a`` numbered ``start..stop-1`` in base q."""
    idx = np.arange(start, stop, dtype=np.int64)
    acc = np.broadcast_to(gen[pivot], (idx.size, gen.shape[1])).copy()
    if not free:
        return acc
    digs = _digits(idx, fs.q, len(free))
    for t, j in enumerate(free):
        col = digs[:, t : t + 1]
        if col.any():
            acc = fs.vadd(acc, fs.vmul(col, gen[j][None, :]))
    return acc


def _profile_min(gen, pivots, fs, best, floor) -> int:
    k = gen.shape[0]
    frees = _free_columns(pivots, k)
    tail = [pack_supports(_row_candidates(gen, c, f, fs, 0, fs.q ** len(f))) for c, f in zip(pivots[1:], frees[1:])]
    head_total = fs.q ** len(frees[0])
    for start in range(0, head_total, CHUNK):
        stop = min(head_total, start + CHUNK)
        head = pack_supports(_row_candidates(gen, pivots[0], frees[0], fs, start, stop))
        blocks = [head, *tail]
        offsets = np.zeros(len(blocks) + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([b.shape[0] for b in blocks])
        masks = np.ascontiguousarray(np.vstack(blocks))
        best = int(_kernels.min_union_weight(masks, offsets, best, floor))
        if best <= floor:
            break
    return best


def _check_budget(required: int, budget: int, what: str) -> None:
    if required > budget:
        raise BudgetExceeded(f"{what} needs {required} subspaces, budget is {budget}", required=required)


def ghw_bruteforce(code: LinearCode, r: int, budget: int | None = None, threads: int = 1) -> int:
    """r-th generalized Hamming weight: the least support of an r-dimensional subcode.

    Raises :class:`BudgetExceeded` before searching when the number of
    subspaces exceeds ``budget``.  ``threads > 1`` splits the pivot profiles
    across worker threads; the result does not depend on the split.
    """
    budget = default_budget() if budget is None else budget
    k, n = code.k, code.n
    if not 1 <= r <= k:
        raise BadParameters(f"need 1 <= r <= k = {k}, got r={r}")
    _check_budget(gaussian_binomial(k, r, code.q), budget, f"d_{r} of a [{n},{k}]_{code.q} code")
    gen = np.asarray(code.generator, dtype=np.int64)
    fs = code.field
    profiles = list(itertools.combinations(range(k), r))
    # a subspace of dimension r has at least r coordinates in its support
    floor = r
    if threads <= 1 or len(profiles) == 1:
        best = n + 1
        for pivots in profiles:
            best = _profile_min(gen, pivots, fs, best, floor)
            if best <= floor:
                break
        return best
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda p: _profile_min(gen, p, fs, n + 1, floor), profiles)
        return min(parts)


# --- minimum distance ---------------------------------------------------------


def _bitplanes(vectors: np.ndarray, e: int) -> np.ndarray:
    """``(N, e, W)`` masks: plane b holds bit b of each coordinate."""
    vectors = np.atleast_2d(vectors)
    return np.stack([pack_supports((vectors >> b) & 1) for b in range(e)], axis=1)


def min_distance(code: LinearCode, budget: int | None = None) -> int:
    """Least Hamming weight of a nonzero codeword.

    Scans one codeword per 1-dimensional subspace (leading message
    coefficient 1), stepping through the rest of the message space along a
    Gray code so each step adds a single precomputed vector.
    """
    budget = default_budget() if budget is None else budget
    k, fs = code.k, code.field
    if k < 1:
        raise BadParameters("the zero code has no minimum distance")
    required = gaussian_binomial(k, 1, fs.q)
    if required > budget:
        raise BudgetExceeded(f"minimum distance needs {required} codewords, budget is {budget}", required=required)
    gen = np.asarray(code.generator, dtype=np.int64)
    p, e = fs.p, fs.e
    # F_q as an F_p-space: multiples x^b * G_j, b < e, generate every G_j scaled by F_q
    steps = np.array([[fs.vmul(p**b, gen[j]) for b in range(e)] for j in range(k)], dtype=np.int64)
    best = code.n + 1
    for c in range(k):
        rows = steps[c + 1 :].reshape(-1, code.n)
        if p == 2:
            best = int(
                _kernels.gray_min_weight_binary(
                    np.ascontiguousarray(_bitplanes(gen[c], e)[0]),
                    np.ascontiguousarray(_bitplanes(rows, e)) if rows.size else np.zeros((0, e, _words(code.n)), np.uint64),
                    best,
                    1,
                )
            )
        else:
            best = int(
                _kernels.gray_min_weight(
                    gen[c].copy(), np.ascontiguousarray(rows), np.ascontiguousarray(fs.vneg(rows)), fs.add_table, p, best, 1
                )
            )
        if best <= 1:
            break
    return best


# --- weight hierarchy ---------------------------------------------------------


@dataclass
class WeightReport:
    meta: dict
    hierarchy: dict[int, int]
    method: str
    elapsed_ms: float = 0.0
    formula: dict[int, dict] = field(default_factory=dict)
    mismatches: list[dict] = field(default_factory=list)
    complete: bool = True

    def is_strictly_increasing(self) -> bool:
        vals = [self.hierarchy[r] for r in sorted(self.hierarchy)]
        return all(a < b for a, b in zip(vals, vals[1:]))

    def to_json(self, timings: bool = True) -> dict:
        out = {"schema_version": 1}
        for key in ("family", "q", "s", "d"):
            out[key] = self.meta.get(key)
        out["hierarchy"] = {str(r): v for r, v in sorted(self.hierarchy.items())}
        out["method"] = self.method
        if self.formula:
            out["formula"] = {str(r): v for r, v in sorted(self.formula.items())}
        if self.method == "both":
            out["mismatches"] = self.mismatches
        if not self.complete:
            out["complete"] = False
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), sort_keys=True)


def _formula_for(code: LinearCode, r: int):
    from .bounds import FORMULA_FAMILIES, ghw_formula

    meta = code.meta
    if meta.get("family") not in FORMULA_FAMILIES or not {"q", "s", "d"} <= meta.keys():
        return None
    try:
        return ghw_formula(meta["family"], meta["q"], meta["s"], meta["d"], r)
    except BadParameters:
        return None


def _compare(r: int, brute: int, res) -> dict | None:
    if res is None:
        return None
    if res.status == "Exact" and res.value != brute:
        return {"r": r, "brute": brute, "formula": res.value, "source": res.source}
    if res.status == "UpperBound" and brute > res.value:
        return {"r": r, "brute": brute, "bound": res.value, "source": res.source}
    return None


def weight_hierarchy(
    code: LinearCode,
    r_max: int | None = None,
    budget: int | None = None,
    method: str = "brute",
    threads: int = 1,
) -> WeightReport:
    """d_1..d_{r_max}.

    ``method`` is ``brute`` (exhaustive search), ``formula`` (closed forms
    only, Exact values enter the hierarchy) or ``both`` (search, then list
    every disagreement with the closed forms in ``mismatches``).  On
    :class:`BudgetExceeded` the exception carries the completed prefix as
    ``err.partial``.
    """
    if method not in ("brute", "formula", "both"):
        raise BadParameters(f"unknown method {method!r}")
    r_max = code.k if r_max is None else r_max
    if not 0 <= r_max <= code.k:
        raise BadParameters(f"need r_max <= k = {code.k}, got {r_max}")
    report = WeightReport(dict(code.meta), {}, method)
    t0 = time.perf_counter()
    for r in range(1, r_max + 1):
        res = _formula_for(code, r)
        if res is not None:
            report.formula[r] = res.to_json()
        if method == "formula":
            if res is not None and res.status == "Exact":
                report.hierarchy[r] = res.value
            continue
        try:
            value = ghw_bruteforce(code, r, budget, threads)
        except BudgetExceeded as err:
            report.complete = False
            report.elapsed_ms = (time.perf_counter() - t0) * 1e3
            err.partial = report
            raise
        report.hierarchy[r] = value
        if method == "both":
            bad = _compare(r, value, res)
            if bad:
                report.mismatches.append(bad)
    report.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return report
