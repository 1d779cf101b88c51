"""Evaluation codes on tori: toric codes over hypersimplices, square-free
codes, and the monomial codes that realise their duals.

Every :class:`LinearCode` stores its generator in RREF, so two codes are
equal exactly when their generator matrices are equal.
"""

from __future__ import annotations

import io
import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import BadDegree, DegenerateField, Inconsistent
from .gf import FieldSpec
from .linalg import nullspace, rank, rref
from .poly import GridSet, hypersimplex_monomials, sort_grlex_desc, squarefree_monomials_upto
from .torus import (
    DEFAULT_ENUM_CAP,
    PointSet,
    enumerate_affine_torus,
    enumerate_projective_torus,
    monomial_values,
)

__all__ = [
    "LinearCode",
    "MonomialSet",
    "rref",
    "rank",
    "nullspace",
    "evaluation_matrix",
    "build_affine_toric",
    "build_projective_toric",
    "build_squarefree_leq",
    "build_code",
    "delta_set",
    "hat",
    "hat_complement",
    "build_delta_prime_code",
    "projective_dual_sets",
    "build_projective_dual_code",
]

log = logging.getLogger(__name__)

MonomialSet = GridSet


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: FieldSpec
    generator: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    @classmethod
    def from_rows(cls, rows, fs: FieldSpec, meta: dict | None = None) -> "LinearCode":
        """Canonicalise ``rows`` (any spanning set) to an RREF generator."""
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim != 2:
            raise ValueError("rows must be a 2-d array")
        if rows.shape[0] == 0:
            gen = rows.copy()
        else:
            gen = linalg.row_basis(rows, fs)
        gen.setflags(write=False)
        return cls(fs, gen, dict(meta or {}))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.generator.shape == other.generator.shape
            and bool(np.array_equal(self.generator, other.generator))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.generator.shape, self.generator.tobytes()))

    def dual(self) -> "LinearCode":
        """Euclidean dual via the nullspace of the generator."""
        if self.k == 0:
            basis = np.eye(self.n, dtype=np.int64)
        else:
            basis = nullspace(self.generator, self.field)
        meta = {**self.meta, "family": f"dual({self.meta.get('family', '?')})"}
        return LinearCode.from_rows(basis.reshape(-1, self.n), self.field, meta)

    def nonzero_columns(self) -> int:
        return int(np.count_nonzero(self.generator.any(axis=0)))

    def describe(self) -> dict:
        out = {k: self.meta[k] for k in ("family", "q", "s", "d") if k in self.meta}
        out.update(n=self.n, k=self.k)
        for extra in ("expected_k", "rank_defect"):
            if extra in self.meta:
                out[extra] = self.meta[extra]
        return out

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "meta": self.describe(),
            "generator": self.generator.tolist(),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        for row in self.generator:
            buf.write(",".join(str(int(x)) for x in row))
            buf.write("\n")
        return buf.getvalue()


def evaluation_matrix(monomials: Iterable[Sequence[int]], pts: PointSet) -> np.ndarray:
    """One row per monomial: its values at the points, in point order."""
    monomials = list(monomials)
    mat = np.zeros((len(monomials), len(pts)), dtype=np.int64)
    for i, m in enumerate(monomials):
        mat[i] = monomial_values(m, pts)
    return mat


def _check_sd(s: int, d: int) -> None:
    if s < 2:
        raise BadDegree(f"need s >= 2, got s={s}")
    if not 1 <= d <= s:
        raise BadDegree(f"need 1 <= d <= s, got d={d}, s={s}")


def _build(fs, monomials, pts, meta) -> LinearCode:
    mat = evaluation_matrix(monomials, pts)
    return LinearCode.from_rows(mat, fs, meta)


def build_affine_toric(fs: FieldSpec, s: int, d: int, cap: int = DEFAULT_ENUM_CAP) -> LinearCode:
    """C_d: KV_d evaluated on the affine torus."""
    _check_sd(s, d)
    pts = enumerate_affine_torus(fs, s, cap)
    return _build(fs, hypersimplex_monomials(s, d), pts, {"family": "affine", "q": fs.q, "s": s, "d": d})


def build_projective_toric(fs: FieldSpec, s: int, d: int, cap: int = DEFAULT_ENUM_CAP) -> LinearCode:
    """C_d^P: KV_d evaluated on the projective torus {1} x (F_q^*)^(s-1)."""
    _check_sd(s, d)
    pts = enumerate_projective_torus(fs, s, cap)
    return _build(fs, hypersimplex_monomials(s, d), pts, {"family": "projective", "q": fs.q, "s": s, "d": d})


def build_squarefree_leq(fs: FieldSpec, s: int, d: int, cap: int = DEFAULT_ENUM_CAP) -> LinearCode:
    """C_{<=d}: KV_{<=d} evaluated on the affine torus."""
    _check_sd(s, d)
    pts = enumerate_affine_torus(fs, s, cap)
    return _build(
        fs, squarefree_monomials_upto(s, d), pts, {"family": "squarefree_leq", "q": fs.q, "s": s, "d": d}
    )


# --- dual constructions -----------------------------------------------------


def delta_set(s: int, d: int) -> set[tuple[int, ...]]:
    """0/1 exponent vectors with exactly d ones."""
    return set(hypersimplex_monomials(s, d))


def hat(b: Sequence[int], q: int) -> tuple[int, ...]:
    """Entrywise ``0 -> 0`` and ``b_i -> q-1-b_i`` otherwise."""
    return tuple(0 if x == 0 else q - 1 - x for x in b)


def _grid(q: int, s: int):
    return itertools.product(range(q - 1), repeat=s)


def _require_q3(fs: FieldSpec) -> None:
    if fs.q < 3:
        raise DegenerateField("dual constructions need q >= 3 (for q = 2 the exponent grid is one point)")


def hat_complement(fs: FieldSpec, s: int, d: int) -> MonomialSet:
    """The grid ``{0..q-2}^s`` minus the hat image of the degree-d 0/1 vectors."""
    _require_q3(fs)
    if not 1 <= d <= s:
        raise BadDegree(f"need 1 <= d <= s, got d={d}, s={s}")
    image = {hat(b, fs.q) for b in delta_set(s, d)}
    if len(image) != comb(s, d):
        raise Inconsistent(f"hat map collides on the degree-{d} vectors (|image| = {len(image)})")
    members = frozenset(g for g in _grid(fs.q, s) if g not in image)
    return MonomialSet(fs.q, s, members)


def build_delta_prime_code(fs: FieldSpec, s: int, d: int, cap: int = DEFAULT_ENUM_CAP) -> LinearCode:
    """Monomials of the hat complement evaluated on the affine torus (the dual of C_d)."""
    _require_q3(fs)
    _check_sd(s, d)
    pts = enumerate_affine_torus(fs, s, cap)
    monos = sort_grlex_desc(hat_complement(fs, s, d).members)
    expected = (fs.q - 1) ** s - comb(s, d)
    code = _build(fs, monos, pts, {"family": "delta_prime", "q": fs.q, "s": s, "d": d})
    return _flag_rank(code, expected)


def projective_dual_sets(fs: FieldSpec, s: int, d: int) -> tuple[set, set, MonomialSet]:
    """``(H1, H2, U)``: truncated degree-d vectors, their hat images, and the complement of H2."""
    _require_q3(fs)
    _check_sd(s, d)
    h1 = {b[1:] for b in delta_set(s, d)}
    h2 = {hat(c, fs.q) for c in h1}
    if len(h1) != comb(s, d) or len(h2) < len(h1):
        raise Inconsistent(f"|H1| = {len(h1)}, |H2| = {len(h2)}, expected {comb(s, d)} each")
    u = frozenset(g for g in _grid(fs.q, s - 1) if g not in h2)
    return h1, h2, MonomialSet(fs.q, s - 1, u)


def build_projective_dual_code(fs: FieldSpec, s: int, d: int, cap: int = DEFAULT_ENUM_CAP) -> LinearCode:
    """Monomials of U evaluated on (F_q^*)^(s-1) (the dual of C_d^P)."""
    _, _, u = projective_dual_sets(fs, s, d)
    pts = enumerate_affine_torus(fs, s - 1, cap)
    expected = (fs.q - 1) ** (s - 1) - comb(s, d)
    monos = sort_grlex_desc(u.members)
    meta = {"family": "projective_dual", "q": fs.q, "s": s, "d": d}
    if not monos:
        code = LinearCode.from_rows(np.zeros((0, len(pts)), dtype=np.int64), fs, meta)
    else:
        code = _build(fs, monos, pts, meta)
    return _flag_rank(code, expected)


def _flag_rank(code: LinearCode, expected: int) -> LinearCode:
    code.meta["expected_k"] = expected
    code.meta["rank_defect"] = expected - code.k
    if code.k != expected:
        log.warning("%s code has rank %d, expected %d", code.meta["family"], code.k, expected)
    return code


FAMILIES = {
    "affine": build_affine_toric,
    "projective": build_projective_toric,
    "squarefree_leq": build_squarefree_leq,
    "delta_prime": build_delta_prime_code,
    "projective_dual": build_projective_dual_code,
}

ALIASES = {"sfleq": "squarefree_leq", "delta-prime": "delta_prime", "proj-dual": "projective_dual"}


def build_code(family: str, fs: FieldSpec, s: int, d: int, cap: int = DEFAULT_ENUM_CAP) -> LinearCode:
    family = ALIASES.get(family, family)
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return builder(fs, s, d, cap)
