"""Finite fields F_q, q = p^e, with a canonical modulus and primitive element.

Elements are plain integers in ``[0, q)``.  For ``e == 1`` an element is its
residue mod p; for ``e > 1`` the base-p digits of the integer are the
coefficients (constant term first) of the element written in the polynomial
basis ``1, x, ..., x^(e-1)`` modulo the field's modulus.  This integer is the
canonical rep used in every JSON/CSV output.

Scalar operations live on :class:`FieldSpec`; the ``v*`` methods are the
numpy-vectorised counterparts used by the linear algebra and the torus code.
"""

from __future__ import annotations

import functools
import itertools
import math

import numpy as np

from .errors import CapExceeded, NotPrimePower, ZeroInverse

DEFAULT_CAP = 1 << 16
# log/antilog tables are built up to this size; schoolbook arithmetic above
TABLE_LIMIT = 1 << 12
# dense q x q add/mul tables for the vectorised kernels
DENSE_LIMIT = 1 << 8


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise :class:`NotPrimePower`."""
    if q < 2:
        raise NotPrimePower(f"q={q} is not a prime power")
    primes = _prime_factors(q)
    if len(primes) != 1:
        raise NotPrimePower(f"q={q} has distinct prime factors {primes}")
    p = primes[0]
    e = round(math.log(q, p))
    while p**e < q:
        e += 1
    while p**e > q:
        e -= 1
    return p, e


# --- polynomials over F_p, coefficient lists constant term first -----------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod_p(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int):
    for low in itertools.product(range(p), repeat=deg):
        yield list(reversed(low)) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2 over F_p."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _polymod_p(poly, cand, p):
                return False
    return True


def _canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    # candidates ordered by the integer sum(c_i p^i) of their lower coefficients
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        poly = low + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {e} over F_{p}")


class FieldSpec:
    """The finite field F_q with a fixed modulus and primitive element ``theta``.

    Instances are immutable; build them with :func:`make_field`.
    """

    def __init__(self, q: int, p: int, e: int, modulus: tuple[int, ...]):
        self.q = q
        self.p = p
        self.e = e
        self.modulus = modulus
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self.theta = self._find_primitive()
        if q <= TABLE_LIMIT:
            self._build_log_tables()
        self._add_tab: np.ndarray | None = None
        self._mul_tab: np.ndarray | None = None
        if q <= DENSE_LIMIT:
            self._build_dense_tables()

    # --- encoding -----------------------------------------------------------

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial-basis coefficients of ``a``, constant term first."""
        return tuple((a // self.p**i) % self.p for i in range(self.e))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.e or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"invalid coefficient vector {coeffs} for F_{self.q}")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # --- scalar arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs((x + y) % self.p for x, y in zip(ca, cb))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coeffs((-x) % self.p for x in self.to_coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _schoolbook_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _polymod_p(prod, list(self.modulus), self.p)
        return self.from_coeffs(rem + [0] * (self.e - len(rem)))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])
        return self._schoolbook_mul(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])
        result, base = 1, a
        while n:
            if n & 1:
                result = self._schoolbook_mul(result, base)
            base = self._schoolbook_mul(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        if self._log is not None:
            return int(self._exp[(-int(self._log[a])) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element (by direct powering)."""
        if a == 0:
            raise ZeroInverse("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self._schoolbook_mul(x, a)
            k += 1
        return k

    def exp(self, k: int) -> int:
        """``theta ** k``."""
        return self.pow(self.theta, k)

    def log(self, a: int) -> int:
        """Discrete log of ``a`` to base ``theta``."""
        if a == 0:
            raise ZeroInverse("log of 0")
        if self._log is not None:
            return int(self._log[a])
        x, k = 1, 0
        while x != a:
            x = self._schoolbook_mul(x, self.theta)
            k += 1
        return k

    # --- construction helpers ----------------------------------------------

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        n = self.q - 1
        cofactors = [n // ell for ell in _prime_factors(n)]
        for a in range(1, self.q):
            if all(self._slow_pow(a, c) != 1 for c in cofactors):
                return a
        raise AssertionError("multiplicative group is not cyclic")

    def _slow_pow(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._schoolbook_mul(result, base)
            base = self._schoolbook_mul(base, base)
            n >>= 1
        return result

    def _build_log_tables(self) -> None:
        n = self.q - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._schoolbook_mul(x, self.theta)
        exp[n:] = exp[:n]
        self._exp, self._log = exp, log

    def _build_dense_tables(self) -> None:
        q = self.q
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self.add(a, b)
                mul[a, b] = self.mul(a, b)
        self._add_tab, self._mul_tab = add, mul

    @property
    def add_table(self) -> np.ndarray:
        if self._add_tab is None:
            raise CapExceeded(f"dense tables are only built for q <= {DENSE_LIMIT}")
        return self._add_tab

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul_tab is None:
            raise CapExceeded(f"dense tables are only built for q <= {DENSE_LIMIT}")
        return self._mul_tab

    @property
    def exp_table(self) -> np.ndarray:
        """``theta**i`` for ``0 <= i < 2(q-1)``."""
        if self._exp is None:
            raise CapExceeded(f"log tables are only built for q <= {TABLE_LIMIT}")
        return self._exp

    # --- vectorised arithmetic ---------------------------------------------

    def vadd(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._add_tab is not None:
            return self._add_tab[a, b]
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.e):
            w = self.p**i
            out += (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return out

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros_like(a)
        for i in range(self.e):
            w = self.p**i
            out += ((-((a // w) % self.p)) % self.p) * w
        return out

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._mul_tab is not None:
            return self._mul_tab[a, b]
        if self.e == 1:
            return (a * b) % self.p
        if self._log is not None:
            r = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, r)
        return np.vectorize(self.mul, otypes=[np.int64])(a, b)

    # --- identity -----------------------------------------------------------

    def _key(self):
        return (self.q, self.modulus, self.theta)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        mod = f", modulus={self.modulus}" if self.e > 1 else ""
        return f"FieldSpec(q={self.q}{mod}, theta={self.theta})"


@functools.lru_cache(maxsize=None)
def _make_field(q: int) -> FieldSpec:
    p, e = prime_power(q)
    modulus = _canonical_modulus(p, e) if e > 1 else ()
    return FieldSpec(q, p, e, modulus)


def make_field(q: int, cap: int = DEFAULT_CAP) -> FieldSpec:
    """Build F_q with the smallest irreducible modulus and smallest primitive element."""
    q = int(q)
    prime_power(q)
    if q > cap:
        raise CapExceeded(f"q={q} exceeds the field cap {cap}")
    return _make_field(q)


def field_inverse(a: int, fs: FieldSpec) -> int:
    return fs.inv(a)


def primitive_element(fs: FieldSpec) -> int:
    return fs.theta
