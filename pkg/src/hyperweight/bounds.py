"""Combinatorial bounds (shadows, Hilbert functions, footprint) and the
closed-form oracle for dimensions, zero counts and generalized Hamming
weights.

Every closed form is guarded by its validity region.  The regions are strict
inequalities and nothing is extrapolated past them: outside every region the
oracle answers ``NotCovered`` (or ``UpperBound`` where only an explicit
construction is known).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParameters,
    DimensionMismatch,
    InternalInconsistency,
    NotPrimePower,
    RegionViolation,
    SizeCap,
)
from .gf import FieldSpec, prime_power
from .linalg import rank
from .poly import GridSet

__all__ = [
    "FormulaResult",
    "poset_leq",
    "shadow",
    "shadow_size",
    "shadow_lower_bound",
    "affine_hilbert_fn",
    "affine_hilbert_fn_points",
    "footprint_zero_bound",
    "zero_count_bound",
    "ghw_formula",
    "dimension_formula",
    "FORMULA_FAMILIES",
]

EXACT, UPPER, NOT_COVERED = "Exact", "UpperBound", "NotCovered"
FORMULA_FAMILIES = ("affine", "projective", "squarefree_leq")
# grid enumeration limit for shadows; inclusion-exclusion above it
SHADOW_ENUM_LIMIT = 10**7
IE_LIMIT = 20


@dataclass(frozen=True)
class FormulaResult:
    status: str
    value: int | None
    source: str
    region: str

    def __post_init__(self):
        if self.status not in (EXACT, UPPER, NOT_COVERED):
            raise ValueError(f"bad status {self.status!r}")
        if (self.value is None) != (self.status == NOT_COVERED):
            raise ValueError("value must be present exactly when the status is not NotCovered")

    def to_json(self) -> dict:
        return {"status": self.status, "value": self.value, "source": self.source, "region": self.region}


# --- shadows ------------------------------------------------------------------


def poset_leq(b: Sequence[int], c: Sequence[int]) -> bool:
    """Componentwise ``b <= c``."""
    if len(b) != len(c):
        raise DimensionMismatch(f"lengths {len(b)} and {len(c)} differ")
    return all(x <= y for x, y in zip(b, c))


def _grid_array(q: int, s: int) -> np.ndarray:
    return np.array(list(itertools.product(range(q - 1), repeat=s)), dtype=np.int64).reshape(-1, s)


def _as_grid(B: Iterable[Sequence[int]], q: int, s: int) -> list[tuple[int, ...]]:
    return sorted(GridSet(q, s, frozenset(tuple(int(x) for x in b) for b in B)).members)


def _dominated_mask(grid: np.ndarray, B: list[tuple[int, ...]]) -> np.ndarray:
    mask = np.zeros(grid.shape[0], dtype=bool)
    for b in B:
        mask |= (grid >= np.asarray(b, dtype=np.int64)).all(axis=1)
    return mask


def shadow(B: Iterable[Sequence[int]], q: int, s: int) -> GridSet:
    """Grid points of ``{0..q-2}^s`` lying above some member of ``B``."""
    B = _as_grid(B, q, s)
    if (q - 1) ** s > SHADOW_ENUM_LIMIT:
        raise SizeCap(f"grid has {(q - 1) ** s} points; use shadow_size for the count")
    grid = _grid_array(q, s)
    hit = grid[_dominated_mask(grid, B)]
    return GridSet(q, s, frozenset(tuple(int(x) for x in row) for row in hit))


def _upset_size(b: Sequence[int], q: int) -> int:
    out = 1
    for x in b:
        out *= q - 1 - x
    return out


def shadow_size(B: Iterable[Sequence[int]], q: int, s: int) -> int:
    """``|shadow(B)|`` by enumeration, or by inclusion-exclusion over joins
    when the grid is too large to list."""
    B = _as_grid(B, q, s)
    if (q - 1) ** s <= SHADOW_ENUM_LIMIT:
        return int(_dominated_mask(_grid_array(q, s), B).sum())
    if len(B) > IE_LIMIT:
        raise SizeCap(f"inclusion-exclusion over {len(B)} generators is above the limit {IE_LIMIT}")
    total = 0
    for size in range(1, len(B) + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(B, size):
            join = [max(col) for col in zip(*subset)]
            total += sign * _upset_size(join, q)
    return total


def _check_basic(q: int, s: int, d: int, r: int) -> None:
    if q < 2 or s < 2 or not 1 <= d <= s or r < 1:
        raise BadParameters(f"need q >= 2, s >= 2, 1 <= d <= s, r >= 1; got q={q}, s={s}, d={d}, r={r}")


def _space_dim(s: int, d: int, variant: str) -> int:
    if variant == "homogeneous":
        return comb(s, d)
    if variant in ("at_most", "at-most"):
        return sum(comb(s, i) for i in range(d + 1))
    raise BadParameters(f"unknown variant {variant!r}")


def _ghw_core(q: int, s: int, d: int, r: int) -> int:
    """``(q-2)^(d-1) (q-1)^(s-d-r+1) ((q-1)^r - 1)``, valid when ``d+r-2 < s``."""
    return (q - 2) ** (d - 1) * (q - 1) ** (s - d - r + 1) * ((q - 1) ** r - 1)


def shadow_lower_bound(q: int, s: int, d: int, r: int, variant: str = "homogeneous") -> int:
    """Least possible shadow of ``r`` distinct exponent vectors of degree ``d``
    (``variant='homogeneous'``) or of degree at most ``d`` (``'at_most'``)
    in the 0/1 cube."""
    _check_basic(q, s, d, r)
    dim = _space_dim(s, d, variant)
    if r > dim:
        raise RegionViolation(f"r={r} exceeds the {dim} available exponent vectors")
    if not d + r - 2 < s:
        raise RegionViolation(f"requires d+r-2 < s (got d={d}, r={r}, s={s})")
    return _ghw_core(q, s, d, r)


# --- Hilbert functions and the footprint --------------------------------------


def _monomials_upto(s: int, u: int) -> np.ndarray:
    """All exponent vectors in ``s`` variables of total degree at most ``u``."""
    if s == 0:
        return np.zeros((1, 0), dtype=np.int64)
    rows = []
    for head in range(u + 1):
        tail = _monomials_upto(s - 1, u - head)
        rows.append(np.hstack([np.full((tail.shape[0], 1), head, dtype=np.int64), tail]))
    return np.vstack(rows)


def affine_hilbert_fn(gens: Iterable[Sequence[int]], s: int, u: int) -> int:
    """Number of monomials of degree <= u outside the monomial ideal ``<gens>``."""
    mons = _monomials_upto(s, u)
    inside = np.zeros(mons.shape[0], dtype=bool)
    for g in gens:
        g = np.asarray(g, dtype=np.int64)
        if g.shape != (s,):
            raise DimensionMismatch(f"generator {tuple(g)} does not have length {s}")
        inside |= (mons >= g).all(axis=1)
    return int((~inside).sum())


def affine_hilbert_fn_points(points: Sequence[Sequence[int]], fs: FieldSpec, u: int) -> int:
    """Affine Hilbert function of a finite point set: the rank of the matrix
    of all monomials of degree <= u evaluated at the points."""
    pts = np.asarray(points, dtype=np.int64)
    if pts.ndim != 2 or pts.shape[0] == 0:
        return 0
    s = pts.shape[1]
    mons = _monomials_upto(s, u)
    top = int(mons.max()) if mons.size else 0
    # powers[j, e, i] = points[i, j] ** e
    powers = np.ones((s, top + 1, pts.shape[0]), dtype=np.int64)
    for j in range(s):
        for e in range(1, top + 1):
            powers[j, e] = fs.vmul(powers[j, e - 1], pts[:, j])
    mat = np.ones((mons.shape[0], pts.shape[0]), dtype=np.int64)
    for j in range(s):
        mat = fs.vmul(mat, powers[j, mons[:, j]])
    return rank(mat, fs)


def footprint_zero_bound(lms: Iterable[Sequence[int]], q: int, s: int) -> int:
    """``(q-1)^s - |shadow(lms)|``: grid points not above any leading exponent."""
    return (q - 1) ** s - shadow_size(lms, q, s)


# --- zero counts ----------------------------------------------------------------


def zero_count_bound(q: int, s: int, d: int, r: int, variant: str = "homogeneous") -> FormulaResult:
    """Upper bound on the common torus zeros of ``r`` independent square-free
    polynomials of degree ``d`` (or at most ``d``).

    The tightest applicable bound is returned; ``source`` lists every bound
    that applies, tightest first, joined by ``+``.
    """
    _check_basic(q, s, d, r)
    dim = _space_dim(s, d, variant)
    if r > dim:
        raise RegionViolation(f"r={r} exceeds the space dimension {dim}")
    total = (q - 1) ** s
    cands: list[tuple[int, str, str]] = []
    if variant == "homogeneous":
        if r == 1:
            cands.append((total - (q - 2) ** d * (q - 1) ** (s - d), "single_poly_zero_bound", "r = 1"))
        if r == 2 and d < s:
            cands.append((total - q * (q - 2) ** d * (q - 1) ** (s - d - 1), "pair_zero_bound", "r = 2, d < s"))
        if d + r - 2 < s:
            cands.append((total - _ghw_core(q, s, d, r), "homogeneous_zero_bound", "d+r-2 < s"))
    elif d + r - 2 < s:
        cands.append((total - _ghw_core(q, s, d, r), "at_most_zero_bound", "d+r-2 < s"))
    if not cands:
        raise RegionViolation(f"no zero bound applies: requires d+r-2 < s (got d={d}, r={r}, s={s})")
    cands.sort(key=lambda c: c[0])
    value = cands[0][0]
    return FormulaResult(UPPER, value, "+".join(c[1] for c in cands), "; ".join(c[2] for c in cands))


# --- dimensions ----------------------------------------------------------------


def _check_field(q: int) -> None:
    try:
        prime_power(q)
    except NotPrimePower as err:
        raise BadParameters(str(err)) from None


def dimension_formula(family: str, q: int, s: int, d: int) -> int:
    """Closed-form dimension of the evaluation code families."""
    from .codes import ALIASES

    family = ALIASES.get(family, family)
    _check_field(q)
    if s < 2 or not 1 <= d <= s:
        raise BadParameters(f"need s >= 2 and 1 <= d <= s, got s={s}, d={d}")
    if family in ("affine", "projective"):
        return comb(s, d) if q >= 3 else 1
    if family == "squarefree_leq":
        return sum(comb(s, i) for i in range(d + 1)) if q >= 3 else 1
    if family in ("delta_prime", "projective_dual"):
        if q < 3:
            raise BadParameters("dual constructions need q >= 3")
        length = (q - 1) ** s if family == "delta_prime" else (q - 1) ** (s - 1)
        return length - comb(s, d)
    raise BadParameters(f"unknown family {family!r}")


# --- generalized Hamming weights -----------------------------------------------


def _toric_sources(q, s, d, r, shift) -> list[tuple[int, str, str]]:
    out = []
    if r == 1:
        if 2 * d <= s:
            out.append(((q - 2) ** d * (q - 1) ** (s - d - shift), "min_distance_toric", "d <= s/2"))
        elif d < s:
            out.append(((q - 2) ** (s - d) * (q - 1) ** (d - shift), "min_distance_toric", "s/2 < d < s"))
        else:
            out.append(((q - 1) ** (s - shift), "min_distance_toric", "d = s"))
    if 2 * d + r - 2 < s:
        val = (q - 2) ** (d - 1) * (q - 1) ** (s - d - r + 1 - shift) * ((q - 1) ** r - 1)
        out.append((val, "ghw_toric_low_degree", "2d+r-2 < s"))
    if s < 2 * d - r + 2 and d < s:
        val = (q - 2) ** (s - d - 1) * (q - 1) ** (d - r + 1 - shift) * ((q - 1) ** r - 1)
        out.append((val, "ghw_toric_high_degree", "s < 2d-r+2, d < s"))
    return out


def _toric_upper(q, s, d, r, shift) -> tuple[int, str, str] | None:
    if r == 2 and s == 2 * d:
        return (q - 2) ** (d - 1) * (q - 1) ** (s - d + 1 - shift), "bound_balanced_pair", "s = 2d, r = 2"
    if r == 3 and s == 2 * d + 1:
        return (q - 2) ** (d - 1) * (q - 1) ** (s - d + 1 - shift), "bound_odd_triple", "s = 2d+1, r = 3"
    if r == 3 and s == 2 * d and d >= 2:
        val = (q - 2) ** (d - 1) * (q - 1) ** (d - 1 - shift) * (q * (q - 1) - 1)
        return val, "bound_balanced_triple", "s = 2d, r = 3"
    if r == 3 and s == 2 * d - 1 and d >= 2:
        return (q - 2) ** (d - 2) * (q - 1) ** (s - d + 2 - shift), "bound_short_triple", "s = 2d-1, r = 3"
    return None


def _squarefree_sources(q, s, d, r) -> list[tuple[int, str, str]]:
    out = []
    if r == 1:
        out.append(((q - 2) ** d * (q - 1) ** (s - d), "min_distance_squarefree", "r = 1"))
    if r == 2:
        if d == s:
            out.append(((q - 2) ** (s - 1) * (q - 1), "second_weight_squarefree", "r = 2, d = s"))
        else:
            out.append(((q - 2) ** d * (q - 1) ** (s - d - 1) * q, "second_weight_squarefree", "r = 2, d < s"))
    if d + r - 2 < s:
        out.append((_ghw_core(q, s, d, r), "ghw_squarefree", "d+r-2 < s"))
    return out


def ghw_formula(family: str, q: int, s: int, d: int, r: int) -> FormulaResult:
    """Closed-form d_r for the affine, projective and square-free families."""
    from .codes import ALIASES

    family = ALIASES.get(family, family)
    if family not in FORMULA_FAMILIES:
        raise BadParameters(f"no formulas for family {family!r}")
    _check_field(q)
    if s < 2 or not 1 <= d <= s or r < 1:
        raise BadParameters(f"need s >= 2, 1 <= d <= s, r >= 1; got s={s}, d={d}, r={r}")
    dim = dimension_formula(family, q, s, d)
    if r > dim:
        raise BadParameters(f"r={r} exceeds the code dimension {dim}")
    if q == 2:
        # one point in the torus, the code is F_2 itself
        return FormulaResult(EXACT, 1, "binary_trivial", "q = 2")

    shift = 1 if family == "projective" else 0
    if family == "squarefree_leq":
        cands = _squarefree_sources(q, s, d, r)
    else:
        cands = _toric_sources(q, s, d, r, shift)
    if cands:
        values = {c[0] for c in cands}
        if len(values) != 1:
            detail = ", ".join(f"{src}={val}" for val, src, _ in cands)
            raise InternalInconsistency(f"closed forms disagree at {family} q={q} s={s} d={d} r={r}: {detail}")
        return FormulaResult(EXACT, cands[0][0], "+".join(c[1] for c in cands), "; ".join(c[2] for c in cands))
    if family != "squarefree_leq":
        upper = _toric_upper(q, s, d, r, shift)
        if upper is not None:
            return FormulaResult(UPPER, upper[0], upper[1], upper[2])
        region = f"2d-r+2 <= s <= 2d+r-2 (s={s}, d={d}, r={r})"
    else:
        region = f"d+r-2 >= s (s={s}, d={d}, r={r})"
    return FormulaResult(NOT_COVERED, None, "none", region)
