"""Sparse square-free polynomials over F_q.

Monomials are exponent tuples ``(a_1, ..., a_s)``.  The monomial order is
graded lex with ``t_1`` the most significant variable, so the key of a
monomial is ``(deg, a)`` under ordinary tuple comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from . import linalg
from .errors import (
    BadDegree,
    DimensionMismatch,
    FieldMismatch,
    LinearlyDependent,
    NotHomogeneousSquareFree,
    OutOfGrid,
    RegionViolation,
    ZeroInput,
    ZeroPolynomial,
)
from .gf import FieldSpec

Exps = tuple[int, ...]


def grlex_key(a: Exps) -> tuple[int, Exps]:
    return (sum(a), tuple(a))


def grlex_compare(a: Exps, b: Exps) -> int:
    """-1, 0 or 1 as ``a`` is below, equal to or above ``b`` in grlex."""
    if len(a) != len(b):
        raise DimensionMismatch(f"exponent vectors of length {len(a)} and {len(b)}")
    ka, kb = grlex_key(a), grlex_key(b)
    return (ka > kb) - (ka < kb)


def sort_grlex_desc(monomials: Iterable[Exps]) -> list[Exps]:
    return sorted((tuple(m) for m in monomials), key=grlex_key, reverse=True)


class Polynomial:
    """Polynomial in ``s`` variables over ``field`` stored as ``{exps: coeff}``.

    Coefficients are nonzero field reps.  Instances are treated as immutable.
    """

    __slots__ = ("s", "field", "_terms")

    def __init__(self, s: int, field: FieldSpec, terms: Mapping[Exps, int] | None = None):
        self.s = s
        self.field = field
        clean: dict[Exps, int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != s:
                raise DimensionMismatch(f"monomial {exps} does not have {s} variables")
            if any(x < 0 for x in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = int(c) % field.q if field.e == 1 else int(c)
            if not 0 <= c < field.q:
                raise FieldMismatch(f"coefficient {c} is not an element of F_{field.q}")
            if c:
                clean[exps] = c
        self._terms = clean

    # --- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, s: int, field: FieldSpec, c: int = 1) -> "Polynomial":
        return cls(s, field, {(0,) * s: c})

    @classmethod
    def var(cls, s: int, field: FieldSpec, i: int) -> "Polynomial":
        """The variable ``t_i`` (1-indexed)."""
        exps = [0] * s
        exps[i - 1] = 1
        return cls(s, field, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Exps, field: FieldSpec, c: int = 1) -> "Polynomial":
        return cls(len(exps), field, {tuple(exps): c})

    # --- views --------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exps, int]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        return [(m, self._terms[m]) for m in sort_grlex_desc(self._terms)]

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def __len__(self) -> int:
        return len(self._terms)

    # --- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.s != self.s:
            raise DimensionMismatch(f"{self.s} vs {other.s} variables")
        if other.field != self.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fs = self.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = fs.add(out.get(m, 0), c)
        return Polynomial(self.s, fs, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.s, self.field, {m: self.field.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        fs = self.field
        return Polynomial(self.s, fs, {m: fs.mul(c, x) for m, x in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other % self.field.q if self.field.e == 1 else other)
        self._check(other)
        fs = self.field
        out: dict[Exps, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = fs.add(out.get(m, 0), fs.mul(c1, c2))
        return Polynomial(self.s, fs, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.s == other.s
            and self.field == other.field
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.s, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"t{i + 1}" if a == 1 else f"t{i + 1}^{a}" for i, a in enumerate(m) if a
            )
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    # --- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "terms": [{"exps": list(m), "coeff": c} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping, field: FieldSpec) -> "Polynomial":
        return cls(
            int(data["s"]),
            field,
            {tuple(t["exps"]): int(t["coeff"]) for t in data["terms"]},
        )


def leading_monomial(f: Polynomial) -> tuple[Exps, int]:
    """``(LM(f), LC(f))`` under grlex."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no leading monomial")
    m = max(f.terms, key=grlex_key)
    return m, f.terms[m]


def is_square_free(f: Polynomial) -> bool:
    return all(a <= 1 for m in f.terms for a in m)


def in_homogeneous_space(f: Polynomial, d: int) -> bool:
    """Membership in KV_d: homogeneous square-free of degree d (or zero)."""
    return is_square_free(f) and all(sum(m) == d for m in f.terms)


def in_bounded_space(f: Polynomial, d: int) -> bool:
    """Membership in KV_{<=d}: square-free of degree at most d."""
    return is_square_free(f) and f.degree <= d


def hypersimplex_monomials(s: int, d: int) -> list[Exps]:
    """0/1 vectors of length s with exactly d ones, grlex-descending."""
    if not 1 <= d <= s:
        raise BadDegree(f"need 1 <= d <= s, got d={d}, s={s}")
    out = []
    for support in itertools.combinations(range(s), d):
        v = [0] * s
        for i in support:
            v[i] = 1
        out.append(tuple(v))
    return sort_grlex_desc(out)


def squarefree_monomials_upto(s: int, d: int) -> list[Exps]:
    """All square-free monomials of degree <= d, grlex-descending (constant last)."""
    if not 0 <= d <= s:
        raise BadDegree(f"need 0 <= d <= s, got d={d}, s={s}")
    out = [(0,) * s]
    for j in range(1, d + 1):
        out.extend(hypersimplex_monomials(s, j))
    return sort_grlex_desc(out)


def coefficient_matrix(polys: list[Polynomial]) -> tuple[np.ndarray, list[Exps]]:
    """Rows = polys, columns = their monomials in grlex-descending order."""
    columns = sort_grlex_desc({m for f in polys for m in f.terms})
    index = {m: j for j, m in enumerate(columns)}
    mat = np.zeros((len(polys), len(columns)), dtype=np.int64)
    for i, f in enumerate(polys):
        for m, c in f.terms.items():
            mat[i, index[m]] = c
    return mat, columns


def _common_frame(polys: list[Polynomial]) -> tuple[int, FieldSpec]:
    s, fs = polys[0].s, polys[0].field
    for f in polys[1:]:
        if f.s != s:
            raise DimensionMismatch("polynomials with different numbers of variables")
        if f.field != fs:
            raise FieldMismatch("polynomials over different fields")
    return s, fs


def poly_rank(polys: list[Polynomial]) -> int:
    if not polys:
        return 0
    _, fs = _common_frame(polys)
    mat, _ = coefficient_matrix(polys)
    return linalg.rank(mat, fs) if mat.size else 0


def distinct_lm_reduce(polys: list[Polynomial]) -> list[Polynomial]:
    """Basis of the same span with pairwise distinct leading monomials.

    Output ``i`` satisfies ``LM(g_i) <= LM(f_i)``: the reduced rows are assigned
    to the inputs in decreasing order of their leading monomials.
    """
    if not polys:
        return []
    if any(f.is_zero() for f in polys):
        raise ZeroInput("input contains the zero polynomial")
    s, fs = _common_frame(polys)
    mat, columns = coefficient_matrix(polys)
    red, rk, pivots = linalg.rref(mat, fs)
    if rk < len(polys):
        raise LinearlyDependent(f"{len(polys)} polynomials span only dimension {rk}")
    rows = [
        Polynomial(s, fs, {columns[j]: int(c) for j, c in enumerate(red[i]) if c})
        for i in range(rk)
    ]
    order = sorted(
        range(len(polys)),
        key=lambda i: grlex_key(leading_monomial(polys[i])[0]),
        reverse=True,
    )
    out: list[Polynomial | None] = [None] * len(polys)
    for row, i in zip(rows, order):
        out[i] = row
    return out  # type: ignore[return-value]


def star_transform(f: Polynomial) -> Polynomial:
    """``t_1...t_s * f(1/t_1, ..., 1/t_s)``: complement every exponent vector."""
    if not (is_square_free(f) and f.is_homogeneous()):
        raise NotHomogeneousSquareFree("star transform needs a homogeneous square-free polynomial")
    return Polynomial(f.s, f.field, {tuple(1 - a for a in m): c for m, c in f.terms.items()})


# --- exponent grids ---------------------------------------------------------


@dataclass(frozen=True)
class GridSet:
    """A set of exponent vectors inside the box ``{0, ..., q-2}^s``."""

    q: int
    s: int
    members: frozenset

    def __post_init__(self):
        for b in self.members:
            if len(b) != self.s:
                raise DimensionMismatch(f"{b} does not have length {self.s}")
            if any(not 0 <= x <= self.q - 2 for x in b):
                raise OutOfGrid(f"{b} is outside {{0..{self.q - 2}}}^{self.s}")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, b) -> bool:
        return tuple(b) in self.members

    def __iter__(self):
        return iter(sort_grlex_desc(self.members))


# --- explicit extremal families ---------------------------------------------

# kind -> human-readable region
FAMILY_REGIONS = {
    "low_degree": "2d+r-2 < s",
    "high_degree": "s < 2d-r+2 and d < s",
    "at_most": "d+r-2 < s",
    "balanced_pair": "s = 2d, r = 2",
    "odd_triple": "s = 2d+1, r = 3",
    "balanced_triple": "s = 2d, r = 3, d >= 2",
    "short_triple": "s = 2d-1, r = 3, d >= 2",
}


def _diff(s: int, fs: FieldSpec, i: int, j: int) -> Polynomial:
    return Polynomial.var(s, fs, i) - Polynomial.var(s, fs, j)


def _shift_one(s: int, fs: FieldSpec, i: int) -> Polynomial:
    return Polynomial.var(s, fs, i) - Polynomial.constant(s, fs, 1)


def _product(factors: Iterable[Polynomial], s: int, fs: FieldSpec) -> Polynomial:
    out = Polynomial.constant(s, fs, 1)
    for f in factors:
        out = out * f
    return out


def _paired_diffs(s: int, fs: FieldSpec, npairs: int) -> Polynomial:
    """``(t_1 - t_2)(t_3 - t_4)...`` with ``npairs`` factors."""
    return _product((_diff(s, fs, 2 * i - 1, 2 * i) for i in range(1, npairs + 1)), s, fs)


def _require(cond: bool, kind: str, detail: str) -> None:
    if not cond:
        raise RegionViolation(f"{kind}: requires {detail}")


def extremal_family(kind: str, fs: FieldSpec, s: int, d: int, r: int) -> list[Polynomial]:
    """Explicit square-free families attaining the extreme common-zero counts.

    Kinds (variables 1-indexed, ``g`` a product of disjoint differences):

    ``low_degree``       g*(t_{2d+i-2} - t_{2d+i-1}),  g = (t_1-t_2)...(t_{2d-3}-t_{2d-2})
    ``high_degree``      the same shape for v = s-d, padded with the remaining variables
    ``at_most``          (t_1-1)...(t_{d-1}-1)(t_{d+i-1}-1)
    ``balanced_pair``    s = 2d: g*(t_{2d-1}-t_{2d}) and g*t_{2d}
    ``odd_triple``       s = 2d+1: g*t_{2d-1}, g*t_{2d}, g*t_{2d+1}
    ``balanced_triple``  s = 2d: three products sharing d-2 differences
    ``short_triple``     s = 2d-1: g*t_a*t_b over pairs of the last three variables
    """
    if kind not in FAMILY_REGIONS:
        raise ValueError(f"unknown family kind {kind!r}; expected one of {sorted(FAMILY_REGIONS)}")
    if r == 0:
        return []
    _require(s >= 2 and 1 <= d <= s and r >= 1, kind, "s >= 2, 1 <= d <= s, r >= 1")

    if kind == "low_degree":
        _require(2 * d + r - 2 < s, kind, "2d+r-2 < s")
        g = _paired_diffs(s, fs, d - 1)
        fam = [g * _diff(s, fs, 2 * d + i - 2, 2 * d + i - 1) for i in range(1, r + 1)]
    elif kind == "high_degree":
        _require(d < s, kind, "d < s")
        _require(s < 2 * d - r + 2, kind, "s < 2d-r+2")
        v = s - d
        g = _paired_diffs(s, fs, v - 1)
        fam = []
        for i in range(1, r + 1):
            a, b = 2 * v + i - 2, 2 * v + i - 1
            rest = [j for j in range(2 * v - 1, s + 1) if j not in (a, b)]
            fam.append(g * _diff(s, fs, a, b) * _product((Polynomial.var(s, fs, j) for j in rest), s, fs))
    elif kind == "at_most":
        _require(d + r - 2 < s, kind, "d+r-2 < s")
        g = _product((_shift_one(s, fs, i) for i in range(1, d)), s, fs)
        fam = [g * _shift_one(s, fs, d + i - 1) for i in range(1, r + 1)]
    elif kind == "balanced_pair":
        _require(s == 2 * d and r == 2, kind, FAMILY_REGIONS[kind])
        g = _paired_diffs(s, fs, d - 1)
        fam = [g * _diff(s, fs, 2 * d - 1, 2 * d), g * Polynomial.var(s, fs, 2 * d)]
    elif kind == "odd_triple":
        _require(s == 2 * d + 1 and r == 3, kind, FAMILY_REGIONS[kind])
        g = _paired_diffs(s, fs, d - 1)
        fam = [g * Polynomial.var(s, fs, 2 * d - 2 + i) for i in range(1, 4)]
    elif kind == "balanced_triple":
        _require(s == 2 * d and r == 3 and d >= 2, kind, FAMILY_REGIONS[kind])
        g = _paired_diffs(s, fs, d - 2)
        a, b, c, e = 2 * d - 3, 2 * d - 2, 2 * d - 1, 2 * d
        fam = [
            g * _diff(s, fs, a, b) * _diff(s, fs, c, e),
            g * _diff(s, fs, a, c) * _diff(s, fs, b, e),
            g * _diff(s, fs, a, b) * Polynomial.var(s, fs, e),
        ]
    else:  # short_triple
        _require(s == 2 * d - 1 and r == 3 and d >= 2, kind, FAMILY_REGIONS[kind])
        g = _paired_diffs(s, fs, d - 2)
        a, b, c = 2 * d - 3, 2 * d - 2, 2 * d - 1
        x = lambda i: Polynomial.var(s, fs, i)  # noqa: E731
        fam = [g * x(a) * x(b), g * x(a) * x(c), g * x(b) * x(c)]

    if poly_rank(fam) != r:
        raise LinearlyDependent(f"{kind} family with s={s}, d={d}, r={r} is not independent over F_{fs.q}")
    return fam


def family_space(kind: str) -> str:
    """``'homogeneous'`` for families inside KV_d, ``'at_most'`` for KV_{<=d}."""
    return "at_most" if kind == "at_most" else "homogeneous"


# --- random sampling (property sweeps) --------------------------------------


def random_squarefree(
    fs: FieldSpec, s: int, d: int, rng: np.random.Generator, homogeneous: bool = True, exact_degree: bool = True
) -> Polynomial:
    """Random nonzero square-free polynomial in KV_d (or KV_{<=d}).

    With ``exact_degree`` the result has total degree exactly ``d``.
    """
    basis = hypersimplex_monomials(s, d) if homogeneous else squarefree_monomials_upto(s, d)
    top = [m for m in basis if sum(m) == d]
    while True:
        coeffs = rng.integers(0, fs.q, size=len(basis))
        f = Polynomial(s, fs, {m: int(c) for m, c in zip(basis, coeffs)})
        if f.is_zero():
            continue
        if exact_degree and not any(m in f.terms for m in top):
            continue
        return f


def random_independent_family(
    fs: FieldSpec, s: int, d: int, r: int, rng: np.random.Generator, homogeneous: bool = True, exact_degree: bool = True
) -> list[Polynomial]:
    """``r`` linearly independent random square-free polynomials (rejection sampling)."""
    dim = comb(s, d) if homogeneous else sum(comb(s, i) for i in range(d + 1))
    if r > dim:
        raise BadDegree(f"r={r} exceeds the space dimension {dim}")
    while True:
        fam = [random_squarefree(fs, s, d, rng, homogeneous, exact_degree) for _ in range(r)]
        if poly_rank(fam) == r:
            return fam
