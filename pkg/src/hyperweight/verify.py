"""Parameter sweeps that check the closed forms against exhaustive computation.

Each suite returns plain rows (dicts) so the CLI can render them as JSON,
CSV or a table.  No timings are recorded, so a fixed seed gives
byte-identical output.
"""

from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from . import bounds
from .codes import (
    build_affine_toric,
    build_code,
    build_delta_prime_code,
    build_projective_dual_code,
    build_projective_toric,
    evaluation_matrix,
    hat_complement,
)
from .errors import BadParameters, RegionViolation
from .gf import FieldSpec, make_field, prime_power
from .linalg import matmul, rank
from .poly import hypersimplex_monomials, sort_grlex_desc, squarefree_monomials_upto
from .torus import enumerate_affine_torus, enumerate_projective_torus
from .weights import gaussian_binomial, ghw_bruteforce

SUITES = ("formulas", "bounds", "shadows", "duals")


def prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


# --- formulas ---------------------------------------------------------------


def formula_rows(q_max: int, s_max: int, r_max: int = 3, budget: int = 10**7) -> list[dict]:
    """Every covered ``(family, q, s, d, r)`` with a feasible search: closed
    form against brute force.  Exact must match, UpperBound must hold."""
    rows = []
    for q in prime_powers(3, q_max):
        fs = make_field(q)
        for s in range(2, s_max + 1):
            for d in range(1, s + 1):
                for family in bounds.FORMULA_FAMILIES:
                    code = build_code(family, fs, s, d)
                    for r in range(1, min(r_max, code.k) + 1):
                        res = bounds.ghw_formula(family, q, s, d, r)
                        if res.status == bounds.NOT_COVERED:
                            continue
                        if gaussian_binomial(code.k, r, q) > budget:
                            continue
                        brute = ghw_bruteforce(code, r, budget)
                        ok = brute == res.value if res.status == bounds.EXACT else brute <= res.value
                        rows.append(
                            {
                                "family": family,
                                "q": q,
                                "s": s,
                                "d": d,
                                "r": r,
                                "status": res.status,
                                "formula": res.value,
                                "brute": brute,
                                "source": res.source,
                                "ok": ok,
                            }
                        )
    return rows


# --- random zero-count sweeps ---------------------------------------------------


def _basis(s: int, d: int, variant: str) -> list[tuple[int, ...]]:
    return hypersimplex_monomials(s, d) if variant == "homogeneous" else squarefree_monomials_upto(s, d)


def _family_values(coeffs: np.ndarray, mon_vals: np.ndarray, fs: FieldSpec) -> np.ndarray:
    """``coeffs``: (N, r, m) coefficient arrays; ``mon_vals``: (m, n).
    Returns (N, r, n) evaluations."""
    out = np.zeros(coeffs.shape[:2] + (mon_vals.shape[1],), dtype=np.int64)
    for j in range(mon_vals.shape[0]):
        c = coeffs[:, :, j : j + 1]
        if c.any():
            out = fs.vadd(out, fs.vmul(c, mon_vals[j][None, None, :]))
    return out


def sample_independent_coeffs(fs: FieldSpec, m: int, r: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """``samples`` random r x m coefficient matrices of rank r."""
    out = np.empty((samples, r, m), dtype=np.int64)
    filled = 0
    while filled < samples:
        cand = rng.integers(0, fs.q, size=(r, m))
        if rank(cand, fs) == r:
            out[filled] = cand
            filled += 1
    return out


def zero_bound_sample(fs: FieldSpec, s: int, d: int, r: int, variant: str, samples: int, rng) -> dict:
    """Common torus zeros of random independent square-free families against
    :func:`bounds.zero_count_bound`; homogeneous samples also check that the
    affine count is ``q-1`` times the projective one."""
    bound = bounds.zero_count_bound(fs.q, s, d, r, variant)
    monos = _basis(s, d, variant)
    aff = enumerate_affine_torus(fs, s)
    affine_vals = evaluation_matrix(monos, aff)
    coeffs = sample_independent_coeffs(fs, len(monos), r, samples, rng)
    zeros = (_family_values(coeffs, affine_vals, fs) == 0).all(axis=1).sum(axis=1)
    row = {
        "q": fs.q,
        "s": s,
        "d": d,
        "r": r,
        "variant": variant,
        "samples": samples,
        "bound": bound.value,
        "source": bound.source,
        "max_zeros": int(zeros.max()),
        "violations": int((zeros > bound.value).sum()),
    }
    ok = row["violations"] == 0
    if variant == "homogeneous":
        proj_vals = evaluation_matrix(monos, enumerate_projective_torus(fs, s))
        pzeros = (_family_values(coeffs, proj_vals, fs) == 0).all(axis=1).sum(axis=1)
        row["torus_identity_failures"] = int((zeros != (fs.q - 1) * pzeros).sum())
        ok = ok and row["torus_identity_failures"] == 0
    row["ok"] = ok
    return row


def bound_rows(q_max: int, s_max: int, samples: int = 100, seed: int = 0, r_max: int = 3) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for q in prime_powers(2, q_max):
        fs = make_field(q)
        for s in range(2, s_max + 1):
            for d in range(1, s):
                for r in range(1, r_max + 1):
                    for variant in ("homogeneous", "at_most"):
                        try:
                            bounds.zero_count_bound(q, s, d, r, variant)
                        except RegionViolation:
                            continue
                        rows.append(zero_bound_sample(fs, s, d, r, variant, samples, rng))
    return rows


# --- shadows ----------------------------------------------------------------


def shadow_rows(q_max: int, s_max: int, r_max: int = 3) -> list[dict]:
    """Exhaustive: every r-subset of degree-d (or degree <= d) 0/1 vectors has
    shadow at least the lower bound, and the footprint count equals the
    Hilbert function of the leading-term ideal plus the field equations."""
    rows = []
    for q in prime_powers(3, q_max):
        for s in range(2, s_max + 1):
            u = s * (q - 2)
            field_eqs = [tuple(q - 1 if i == j else 0 for i in range(s)) for j in range(s)]
            for d in range(1, s + 1):
                for variant in ("homogeneous", "at_most"):
                    pool = _basis(s, d, variant)
                    for r in range(1, min(r_max, len(pool)) + 1):
                        if not d + r - 2 < s:
                            continue
                        lb = bounds.shadow_lower_bound(q, s, d, r, variant)
                        worst = None
                        footprint_ok = True
                        count = 0
                        for B in itertools.combinations(pool, r):
                            size = bounds.shadow_size(B, q, s)
                            worst = size if worst is None else min(worst, size)
                            fp = bounds.footprint_zero_bound(B, q, s)
                            footprint_ok &= fp == bounds.affine_hilbert_fn(list(B) + field_eqs, s, u)
                            count += 1
                        rows.append(
                            {
                                "q": q,
                                "s": s,
                                "d": d,
                                "r": r,
                                "variant": variant,
                                "subsets": count,
                                "lower_bound": lb,
                                "min_shadow": worst,
                                "footprint_identity": footprint_ok,
                                "ok": worst >= lb and footprint_ok,
                            }
                        )
    return rows


# --- duals ------------------------------------------------------------------


def dual_row(fs: FieldSpec, s: int, d: int, projective: bool = False) -> dict:
    """Exact comparison of the explicit dual against the nullspace."""
    if projective:
        code = build_projective_toric(fs, s, d)
        claimed = build_projective_dual_code(fs, s, d)
    else:
        code = build_affine_toric(fs, s, d)
        claimed = build_delta_prime_code(fs, s, d)
    dual = code.dual()
    row = {
        "q": fs.q,
        "s": s,
        "d": d,
        "projective": projective,
        "n": code.n,
        "k": code.k,
        "dual_k": claimed.k,
        "expected_dual_k": claimed.meta["expected_k"],
        "rank_defect": claimed.meta["rank_defect"],
        "equal": claimed == dual,
    }
    if not projective:
        pts = enumerate_affine_torus(fs, s)
        delta = evaluation_matrix(hypersimplex_monomials(s, d), pts)
        prime = evaluation_matrix(sort_grlex_desc(hat_complement(fs, s, d).members), pts)
        row["orthogonal"] = not matmul(delta, prime.T, fs).any()
    else:
        # the claimed dual must at least sit inside the true dual
        row["orthogonal"] = claimed.k == 0 or not matmul(code.generator, claimed.generator.T, fs).any()
    row["ok"] = bool(row["equal"] and row["orthogonal"])
    return row


def dual_rows(q_max: int, s_max: int) -> list[dict]:
    rows = []
    for q in prime_powers(3, q_max):
        fs = make_field(q)
        for s in range(2, s_max + 1):
            for d in range(1, s + 1):
                for projective in (False, True):
                    rows.append(dual_row(fs, s, d, projective))
    return rows


def run_suite(suite: str, q_max: int, s_max: int, seed: int = 0, samples: int = 100, budget: int = 10**7) -> dict:
    runners: dict[str, Callable[[], list[dict]]] = {
        "formulas": lambda: formula_rows(q_max, s_max, budget=budget),
        "bounds": lambda: bound_rows(q_max, s_max, samples=samples, seed=seed),
        "shadows": lambda: shadow_rows(q_max, s_max),
        "duals": lambda: dual_rows(q_max, s_max),
    }
    if suite not in runners:
        raise BadParameters(f"unknown suite {suite!r}; expected one of {SUITES}")
    rows = runners[suite]()
    failed = sum(1 for r in rows if not r["ok"])
    params = {"q_max": q_max, "s_max": s_max}
    if suite == "bounds":
        params.update(seed=seed, samples=samples)
    if suite == "formulas":
        params["budget"] = budget
    return {
        "schema_version": 1,
        "suite": suite,
        "params": params,
        "passed": len(rows) - failed,
        "failed": failed,
        "rows": rows,
    }
