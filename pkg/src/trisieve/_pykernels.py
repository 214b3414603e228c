"""Pure-Python reference versions of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and results.  The compiled twin works in 64-bit words and raises
``OverflowError`` when a value does not fit; these versions use Python
integers and never overflow.
"""

from itertools import combinations
from math import comb


def _binom_table(n, k):
    return [[comb(a, b) for b in range(k + 2)] for a in range(n + 1)]


def _elements(mask):
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def matmul(a, b, rows, inner, cols):
    """Row-major ``rows x inner`` times ``inner x cols``; returns a flat list."""
    out = [0] * (rows * cols)
    for i in range(rows):
        arow = a[i * inner:(i + 1) * inner]
        acc = [0] * cols
        for k, aik in enumerate(arow):
            if aik:
                brow = b[k * cols:(k + 1) * cols]
                for j in range(cols):
                    acc[j] += aik * brow[j]
        out[i * cols:(i + 1) * cols] = acc
    return out


def scatter_down(big_masks, values, w, n):
    """``out[rank(W)] += values[i]`` for every ``w``-subset ``W`` of ``big_masks[i]``."""
    out = [0] * comb(n, w)
    binom = _binom_table(n, w)
    for mask, v in zip(big_masks, values):
        if not v:
            continue
        for sub in combinations(_elements(mask), w):
            r = 0
            for j, e in enumerate(sub):
                r += binom[e][j + 1]
            out[r] += v
    return out


def gather_up(small_values, big_masks, w, n):
    """``out[i] = sum(small_values[rank(W)])`` over ``w``-subsets ``W`` of ``big_masks[i]``."""
    binom = _binom_table(n, w)
    out = []
    for mask in big_masks:
        tot = 0
        for sub in combinations(_elements(mask), w):
            r = 0
            for j, e in enumerate(sub):
                r += binom[e][j + 1]
            tot += small_values[r]
        out.append(tot)
    return out


def split_gather(prod, cols, d_masks, half, n):
    """``out[i] = sum(prod[rank(I) * cols + rank(D - I)])`` over ``half``-subsets ``I`` of ``D``."""
    binom = _binom_table(n, half)
    out = []
    for mask in d_masks:
        elems = _elements(mask)
        tot = 0
        for sub in combinations(elems, half):
            ri = 0
            for j, e in enumerate(sub):
                ri += binom[e][j + 1]
            rest = [e for e in elems if e not in sub]
            rj = 0
            for j, e in enumerate(rest):
                rj += binom[e][j + 1]
            tot += prod[ri * cols + rj]
        out.append(tot)
    return out
