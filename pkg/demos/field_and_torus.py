"""Arithmetic in GF(9), the affine and projective tori, and common zeros.

Run: python3 demos/field_and_torus.py
"""

from __future__ import annotations

from hyperweight.gf import make_field
from hyperweight.poly import Polynomial, extremal_family
from hyperweight.torus import count_common_zeros, enumerate_affine_torus, enumerate_projective_torus


def main() -> None:
    fs = make_field(9)
    print(f"GF(9): p={fs.p}, e={fs.e}, generator theta={fs.theta}")
    a, b = 5, 7
    print(f"{a} + {b} = {fs.add(a, b)},  {a} * {b} = {fs.mul(a, b)},  {a}^-1 = {fs.inv(a)}")

    s = 3
    aff = enumerate_affine_torus(fs, s)
    proj = enumerate_projective_torus(fs, s)
    print(f"affine torus in {s} variables: {len(aff)} points; projective: {len(proj)} points")

    # t1 - t2 vanishes where the first two coordinates agree
    t1, t2 = Polynomial.var(s, fs, 1), Polynomial.var(s, fs, 2)
    f = t1 - t2
    print(f"zeros of {f}: affine {count_common_zeros([f], aff)}, projective {count_common_zeros([f], proj)}")

    # a homogeneous family: the affine count is q-1 times the projective one
    fam = extremal_family("low_degree", fs, s, 1, 2)
    za, zp = count_common_zeros(fam, aff), count_common_zeros(fam, proj)
    print(f"family {fam}: affine zeros {za} = {fs.q - 1} x {zp} projective zeros")


if __name__ == "__main__":
    main()
