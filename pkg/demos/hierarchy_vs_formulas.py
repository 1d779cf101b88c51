"""Weight hierarchies by exhaustive search next to the closed forms.

Inside a formula region the search and the closed form agree exactly; on the
boundary shapes only an upper bound is known, and the search shows how far
below it the true value sits.

Run: python3 demos/hierarchy_vs_formulas.py
"""

from __future__ import annotations

from hyperweight.bounds import ghw_formula
from hyperweight.codes import build_code
from hyperweight.gf import make_field
from hyperweight.weights import weight_hierarchy


def show(family: str, q: int, s: int, d: int, r_max: int) -> None:
    code = build_code(family, make_field(q), s, d)
    report = weight_hierarchy(code, r_max, budget=10**8)
    print(f"{family} q={q} s={s} d={d}  [n={code.n}, k={code.k}]")
    for r, value in report.hierarchy.items():
        res = ghw_formula(family, q, s, d, r)
        shown = "-" if res.value is None else res.value
        print(f"  d_{r} = {value:4d}   {res.status:<11} {shown!s:>5}  {res.source}")


def main() -> None:
    show("affine", 3, 3, 1, 3)
    show("projective", 3, 5, 1, 2)
    show("squarefree_leq", 3, 3, 2, 3)
    # s = 2d: only upper bounds for d_2 and d_3
    show("affine", 3, 4, 2, 3)
    show("projective", 4, 4, 2, 3)


if __name__ == "__main__":
    main()
