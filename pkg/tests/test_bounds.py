from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperweight import bounds
from hyperweight.bounds import (
    FormulaResult,
    affine_hilbert_fn,
    affine_hilbert_fn_points,
    dimension_formula,
    footprint_zero_bound,
    ghw_formula,
    poset_leq,
    shadow,
    shadow_lower_bound,
    shadow_size,
    zero_count_bound,
)
from hyperweight.codes import build_code
from hyperweight.errors import BadParameters, DimensionMismatch, OutOfGrid, RegionViolation
from hyperweight.gf import make_field
from hyperweight.poly import extremal_family, hypersimplex_monomials
from hyperweight.torus import common_zero_mask, count_common_zeros, enumerate_affine_torus, enumerate_projective_torus
from hyperweight.weights import ghw_bruteforce


def brute_shadow(B, q, s):
    """Grid scan with the plain dominance test."""
    return {a for a in itertools.product(range(q - 1), repeat=s) if any(all(x <= y for x, y in zip(b, a)) for b in B)}


# --- poset and shadows -------------------------------------------------------------


def test_poset_leq():
    assert poset_leq((1, 0), (1, 1))
    assert not poset_leq((2, 0), (1, 1))
    assert poset_leq((3, 1, 2), (3, 1, 2))
    with pytest.raises(DimensionMismatch):
        poset_leq((1,), (1, 1))


def test_shadow_examples():
    assert shadow([(1, 1, 0)], 3, 3).members == {(1, 1, 0), (1, 1, 1)}
    assert len(shadow([(1, 1, 0), (1, 0, 1)], 3, 3)) == 3
    assert len(shadow([(0, 0, 0)], 4, 3)) == 27
    with pytest.raises(OutOfGrid):
        shadow([(2, 0, 0)], 3, 3)


@given(
    st.sampled_from([3, 4, 5]).flatmap(
        lambda q: st.tuples(
            st.just(q),
            st.integers(1, 4).flatmap(
                lambda s: st.tuples(st.just(s), st.lists(st.tuples(*[st.integers(0, q - 2)] * s), max_size=5))
            ),
        )
    )
)
def test_shadow_matches_scan(args):
    q, (s, B) = args
    expected = brute_shadow(B, q, s)
    assert shadow(B, q, s).members == expected
    assert shadow_size(B, q, s) == len(expected)


def test_shadow_size_inclusion_exclusion(monkeypatch):
    B = [(1, 1, 0, 2), (0, 2, 1, 1), (2, 0, 0, 0)]
    direct = shadow_size(B, 4, 4)
    monkeypatch.setattr(bounds, "SHADOW_ENUM_LIMIT", 1)
    assert shadow_size(B, 4, 4) == direct == len(brute_shadow(B, 4, 4))


def test_shadow_lower_bound_examples():
    assert shadow_lower_bound(3, 3, 2, 2) == 3
    assert shadow_lower_bound(3, 3, 2, 1) == 2
    assert shadow_lower_bound(4, 5, 2, 3) == 156
    with pytest.raises(RegionViolation, match=r"d\+r-2 < s"):
        shadow_lower_bound(3, 3, 3, 2, "at_most")


@pytest.mark.parametrize("q", [3, 4])
@pytest.mark.parametrize("s", [2, 3, 4])
def test_shadow_lower_bound_is_attained(q, s):
    """Minimum over all r-subsets of 0/1 vectors of weight d equals the bound."""
    for d in range(1, s + 1):
        pool = hypersimplex_monomials(s, d)
        for r in range(1, min(3, len(pool)) + 1):
            if d + r - 2 >= s:
                continue
            least = min(len(brute_shadow(B, q, s)) for B in itertools.combinations(pool, r))
            assert least == shadow_lower_bound(q, s, d, r)


# --- Hilbert functions and the footprint ------------------------------------------------


def test_affine_hilbert_fn_examples():
    assert affine_hilbert_fn([(2, 0), (0, 2), (1, 1)], 2, 2) == 3
    assert affine_hilbert_fn([], 2, 2) == 6
    assert affine_hilbert_fn([(1,)], 1, 5) == 1
    assert affine_hilbert_fn([], 3, 4) == comb(3 + 4, 4)


def test_footprint_examples():
    assert footprint_zero_bound([(1, 1, 0)], 3, 3) == 6
    assert footprint_zero_bound([], 4, 3) == 27
    assert footprint_zero_bound([(0, 0, 0)], 3, 3) == 0


@given(
    st.sampled_from([2, 3, 4]).flatmap(
        lambda q: st.tuples(
            st.just(q),
            st.integers(1, 4).flatmap(
                lambda s: st.tuples(st.just(s), st.lists(st.tuples(*[st.integers(0, q - 2)] * s), max_size=6))
            ),
        )
    ),
    st.integers(0, 3),
)
def test_footprint_is_hilbert_function_with_field_equations(args, extra):
    q, (s, lms) = args
    field_eqs = [tuple(q - 1 if i == j else 0 for i in range(s)) for j in range(s)]
    u = s * (q - 2) + extra
    assert footprint_zero_bound(lms, q, s) == affine_hilbert_fn(lms + field_eqs, s, u)


@pytest.mark.parametrize("q", [3, 4, 5])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_hilbert_function_of_torus_subsets_stabilises(q, s):
    fs = make_field(q)
    pts = enumerate_affine_torus(fs, s)
    rng = np.random.default_rng(q * 10 + s)
    for _ in range(4):
        size = int(rng.integers(1, len(pts) + 1))
        chosen = pts.points[np.sort(rng.choice(len(pts), size, replace=False))]
        top = s * (q - 2)
        values = [affine_hilbert_fn_points(chosen, fs, u) for u in range(top, top + 3)]
        assert values == [size] * 3
        if top > 0:
            assert affine_hilbert_fn_points(chosen, fs, 0) == 1


def test_hilbert_function_of_zero_sets():
    """The zero set of an extremal family: HF at s(q-2) counts its points."""
    fs = make_field(3)
    pts = enumerate_affine_torus(fs, 4)
    fam = extremal_family("balanced_pair", fs, 4, 2, 2)
    zeros = pts.points[common_zero_mask(fam, pts)]
    assert affine_hilbert_fn_points(zeros, fs, 4) == count_common_zeros(fam, pts) == 8


# --- zero-count bounds -------------------------------------------------------------------


def test_zero_count_bound_examples():
    res = zero_count_bound(3, 2, 1, 1)
    assert res.value == 2 and "single_poly_zero_bound" in res.source
    assert zero_count_bound(3, 3, 1, 2).value == 2
    res = zero_count_bound(4, 3, 1, 2)
    assert res.value == 3
    assert set(res.source.split("+")) == {"pair_zero_bound", "homogeneous_zero_bound"}
    assert zero_count_bound(3, 3, 2, 2, "at_most").source == "at_most_zero_bound"
    with pytest.raises(RegionViolation):
        zero_count_bound(3, 3, 3, 2, "at_most")


def test_zero_count_bound_pair_is_attained():
    fs = make_field(3)
    pts = enumerate_affine_torus(fs, 3)
    x = [extremal_family("low_degree", fs, 3, 1, 2)]
    assert count_common_zeros(x[0], pts) == zero_count_bound(3, 3, 1, 2).value


def test_pair_bound_exhaustive_q4():
    """All pairs of independent degree-1 square-free forms in 3 variables."""
    from hyperweight.linalg import rank
    from hyperweight.poly import Polynomial

    fs = make_field(4)
    pts = enumerate_affine_torus(fs, 3)
    monos = hypersimplex_monomials(3, 1)
    vecs = [v for v in itertools.product(range(4), repeat=3) if any(v)]
    polys = {v: Polynomial(3, fs, {m: c for m, c in zip(monos, v) if c}) for v in vecs}
    worst = 0
    for a, b in itertools.combinations(vecs, 2):
        if rank([a, b], fs) == 2:
            worst = max(worst, count_common_zeros([polys[a], polys[b]], pts))
    assert worst == zero_count_bound(4, 3, 1, 2).value == 3


# --- dimensions ----------------------------------------------------------------------------


def test_dimension_formula_examples():
    assert dimension_formula("affine", 3, 4, 2) == 6
    assert dimension_formula("squarefree_leq", 3, 4, 1) == 5
    assert dimension_formula("delta_prime", 3, 4, 2) == 10
    assert dimension_formula("affine", 2, 3, 2) == 1
    with pytest.raises(BadParameters):
        dimension_formula("delta_prime", 2, 3, 1)
    with pytest.raises(BadParameters):
        dimension_formula("affine", 6, 3, 1)


# --- closed-form hierarchy values ------------------------------------------------------------


def test_ghw_formula_examples():
    res = ghw_formula("projective", 3, 5, 1, 2)
    assert (res.status, res.value, res.source) == ("Exact", 12, "ghw_toric_low_degree")
    res = ghw_formula("affine", 3, 3, 2, 2)
    assert (res.status, res.value, res.source) == ("Exact", 6, "ghw_toric_high_degree")
    res = ghw_formula("projective", 3, 4, 2, 2)
    assert (res.status, res.value, res.source) == ("UpperBound", 4, "bound_balanced_pair")
    assert ghw_formula("affine", 3, 4, 2, 2).value == 8
    assert ghw_formula("squarefree_leq", 3, 3, 2, 2).value == 3


def test_ghw_formula_multiple_sources_agree():
    res = ghw_formula("affine", 3, 5, 1, 1)
    assert set(res.source.split("+")) == {"min_distance_toric", "ghw_toric_low_degree"}
    assert res.value == 16


def test_ghw_formula_edges():
    assert ghw_formula("affine", 2, 3, 2, 1).to_json() == {
        "status": "Exact",
        "value": 1,
        "source": "binary_trivial",
        "region": "q = 2",
    }
    with pytest.raises(BadParameters):
        ghw_formula("affine", 2, 3, 2, 2)
    with pytest.raises(BadParameters):
        ghw_formula("delta_prime", 3, 3, 1, 1)
    with pytest.raises(BadParameters):
        ghw_formula("affine", 3, 3, 1, 4)
    # s = 2d+1 with r = 2 is inside the low-degree region
    assert ghw_formula("affine", 3, 5, 2, 2).status == "Exact"
    res = ghw_formula("affine", 3, 6, 3, 4)
    assert res.status == "NotCovered" and res.value is None
    assert ghw_formula("squarefree_leq", 3, 3, 3, 3).status == "NotCovered"
    with pytest.raises(ValueError):
        FormulaResult("Exact", None, "x", "y")


def test_brute_force_at_the_balanced_pair_boundary(F3):
    # both strictly below the bounds 8 and 4 at q = 3
    assert ghw_bruteforce(build_code("affine", F3, 4, 2), 2) == 6
    assert ghw_bruteforce(build_code("projective", F3, 4, 2), 2) == 3


# --- explicit families attain the exact values ---------------------------------------------------


def _toric_cases(s_max=5):
    for q in (3, 4):
        for s in range(2, s_max + 1):
            for d in range(1, s + 1):
                for r in range(1, 4):
                    if r <= comb(s, d):
                        yield q, s, d, r


@pytest.mark.parametrize("kind,pred", [("low_degree", lambda s, d, r: 2 * d + r - 2 < s),
                                       ("high_degree", lambda s, d, r: d < s and s < 2 * d - r + 2)])
@pytest.mark.parametrize("projective", [False, True])
def test_toric_extremal_families(kind, pred, projective):
    checked = 0
    for q, s, d, r in _toric_cases():
        if not pred(s, d, r):
            continue
        fs = make_field(q)
        pts = enumerate_projective_torus(fs, s) if projective else enumerate_affine_torus(fs, s)
        fam = extremal_family(kind, fs, s, d, r)
        res = ghw_formula("projective" if projective else "affine", q, s, d, r)
        assert res.status == "Exact"
        assert len(pts) - count_common_zeros(fam, pts) == res.value
        checked += 1
    assert checked > 5


def test_at_most_extremal_families():
    for q in (3, 4, 5):
        fs = make_field(q)
        for s in range(2, 6):
            pts = enumerate_affine_torus(fs, s)
            for d in range(1, s + 1):
                for r in range(1, 4):
                    if d + r - 2 < s:
                        fam = extremal_family("at_most", fs, s, d, r)
                        res = ghw_formula("squarefree_leq", q, s, d, r)
                        assert len(pts) - count_common_zeros(fam, pts) == res.value


@pytest.mark.parametrize(
    "kind,s,r",
    [("balanced_pair", 4, 2), ("odd_triple", 5, 3), ("balanced_triple", 4, 3), ("short_triple", 3, 3)],
)
@pytest.mark.parametrize("q", [3, 4])
def test_boundary_families_meet_upper_bounds(kind, s, r, q):
    fs = make_field(q)
    fam = extremal_family(kind, fs, s, 2, r)
    for projective, family in ((False, "affine"), (True, "projective")):
        pts = enumerate_projective_torus(fs, s) if projective else enumerate_affine_torus(fs, s)
        res = ghw_formula(family, q, s, 2, r)
        assert res.status == "UpperBound"
        assert len(pts) - count_common_zeros(fam, pts) == res.value
