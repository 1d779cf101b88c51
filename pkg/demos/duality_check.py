"""The explicit dual codes compared with nullspaces, as exact RREF matrices.

Run: python3 demos/duality_check.py
"""

from __future__ import annotations

from hyperweight.gf import make_field
from hyperweight.verify import dual_row


def main() -> None:
    print(f"{'q':>2} {'s':>2} {'d':>2}  {'torus':<10} {'n':>4} {'k':>3} {'dual k':>6}  equal")
    for q in (3, 4, 5):
        fs = make_field(q)
        for s in (2, 3):
            for d in range(1, s + 1):
                for projective in (False, True):
                    row = dual_row(fs, s, d, projective)
                    kind = "projective" if projective else "affine"
                    print(f"{q:>2} {s:>2} {d:>2}  {kind:<10} {row['n']:>4} {row['k']:>3} {row['dual_k']:>6}  {row['equal']}")


if __name__ == "__main__":
    main()
