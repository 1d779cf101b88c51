"""numba kernels for the exhaustive searches.

Supports are bit masks packed little-endian into ``W`` uint64 words.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, nogil=True)
def min_union_weight(masks, offsets, best, floor):
    """Minimum popcount of ``m_0 | m_1 | ... | m_{r-1}`` with ``m_i`` drawn from
    ``masks[offsets[i]:offsets[i+1]]``.

    Depth-first over the product with pruning: a partial union already at
    least ``best`` cannot improve, since unions only grow.  Stops early once
    ``floor`` is reached.
    """
    r = offsets.shape[0] - 1
    w_words = masks.shape[1]
    idx = np.zeros(r, dtype=np.int64)
    prefix = np.zeros((r + 1, w_words), dtype=np.uint64)
    level = 0
    idx[0] = offsets[0]
    while level >= 0:
        if idx[level] >= offsets[level + 1]:
            level -= 1
            if level >= 0:
                idx[level] += 1
            continue
        w = 0
        row = idx[level]
        for t in range(w_words):
            v = prefix[level, t] | masks[row, t]
            prefix[level + 1, t] = v
            w += _popcount(v)
        if w >= best:
            idx[level] += 1
            continue
        if level == r - 1:
            best = w
            if best <= floor:
                return best
            idx[level] += 1
        else:
            level += 1
            idx[level] = offsets[level]
    return best


@njit(cache=True, nogil=True)
def gray_min_weight(start, plus, minus, addtab, p, best, floor):
    """Minimum Hamming weight of ``start + sum_t c_t * row_t`` over all
    ``c in F_p^m``, visiting the combinations in reflected p-ary Gray order.

    ``plus[t]`` / ``minus[t]`` are ``row_t`` and ``-row_t``; ``addtab`` is the
    field's addition table.
    """
    n = start.shape[0]
    m = plus.shape[0]
    cw = start.copy()
    w = 0
    for j in range(n):
        if cw[j] != 0:
            w += 1
    if w < best:
        best = w
    if best <= floor or m == 0:
        return best
    digits = np.zeros(m, dtype=np.int64)
    dirs = np.ones(m, dtype=np.int64)
    total = 1
    for _ in range(m):
        total *= p
    for i in range(1, total):
        t = 0
        x = i
        while x % p == 0:
            x //= p
            t += 1
        if dirs[t] == 1:
            w = 0
            for j in range(n):
                v = addtab[cw[j], plus[t, j]]
                cw[j] = v
                if v != 0:
                    w += 1
        else:
            w = 0
            for j in range(n):
                v = addtab[cw[j], minus[t, j]]
                cw[j] = v
                if v != 0:
                    w += 1
        digits[t] += dirs[t]
        if digits[t] == p - 1 or digits[t] == 0:
            dirs[t] = -dirs[t]
        if w < best:
            best = w
            if best <= floor:
                return best
    return best


@njit(cache=True, nogil=True)
def gray_min_weight_binary(start, rows, best, floor):
    """Characteristic-2 variant on bit planes.

    ``start`` has shape ``(e, W)`` (plane b holds bit b of every coordinate),
    ``rows`` has shape ``(m, e, W)``.  Addition is XOR on every plane and a
    coordinate is nonzero iff some plane has its bit set.
    """
    e = start.shape[0]
    w_words = start.shape[1]
    m = rows.shape[0]
    cw = start.copy()
    w = 0
    for u in range(w_words):
        acc = np.uint64(0)
        for b in range(e):
            acc |= cw[b, u]
        w += _popcount(acc)
    if w < best:
        best = w
    if best <= floor or m == 0:
        return best
    total = np.int64(1) << np.int64(m)
    for i in range(1, total):
        t = 0
        x = i
        while (x & 1) == 0:
            x >>= 1
            t += 1
        w = 0
        for u in range(w_words):
            acc = np.uint64(0)
            for b in range(e):
                v = cw[b, u] ^ rows[t, b, u]
                cw[b, u] = v
                acc |= v
            w += _popcount(acc)
        if w < best:
            best = w
            if best <= floor:
                return best
    return best
