"""Whole-space tables over {0,1}^(m x n), indexed by the row-major bit code.

Containment is decided here by brute force over every canonical partition,
vectorised across all hosts at once; it shares no code with the greedy search
in :mod:`imkit.containment`.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .matrix import BinaryMatrix

ENUMERATION_MAX_CELLS = 25


def _dtype(cells: int):
    return np.uint32 if cells <= 32 else np.uint64


def _check_guard(m: int, n: int, max_cells: int) -> None:
    if m < 1 or n < 1:
        raise UsageError("dimensions must be positive")
    if m * n > max_cells:
        raise UsageError(
            f"{m}x{n} has {m * n} cells, above the enumeration guard of {max_cells}; "
            "use sampling (saturate random avoiders) for larger sizes"
        )


@lru_cache(maxsize=8)
def all_codes(m: int, n: int) -> np.ndarray:
    codes = np.arange(1 << (m * n), dtype=_dtype(m * n))
    codes.setflags(write=False)
    return codes


def block_mask(m: int, n: int, r0: int, r1: int, c0: int, c1: int) -> int:
    """Code bits of the block (r0, r1] x (c0, c1]."""
    rowbits = ((1 << (c1 - c0)) - 1) << c0
    out = 0
    for r in range(r0, r1):
        out |= rowbits << (r * n)
    return out


def containment_table(
    pattern: BinaryMatrix, m: int, n: int, max_cells: int = ENUMERATION_MAX_CELLS
) -> np.ndarray:
    """Boolean array: entry ``code`` says whether that host contains ``pattern``."""
    _check_guard(m, n, max_cells)
    codes = all_codes(m, n)
    k, l = pattern.shape
    if k > m or l > n:
        return np.zeros(codes.shape, dtype=bool)
    ones = list(pattern.iter_ones())
    if not ones:
        return np.ones(codes.shape, dtype=bool)
    dt = codes.dtype.type
    out = np.zeros(codes.shape, dtype=bool)
    for rv in combinations(range(1, m), k - 1):
        rb = (0,) + rv + (m,)
        for cv in combinations(range(1, n), l - 1):
            cb = (0,) + cv + (n,)
            ok = None
            for i, j in ones:
                hit = (codes & dt(block_mask(m, n, rb[i - 1], rb[i], cb[j - 1], cb[j]))) != 0
                ok = hit if ok is None else (ok & hit)
            out |= ok
    return out


def avoidance_table(
    patterns: Iterable[BinaryMatrix], m: int, n: int, max_cells: int = ENUMERATION_MAX_CELLS
) -> np.ndarray:
    """Membership table of the class of matrices avoiding every pattern."""
    _check_guard(m, n, max_cells)
    member = np.ones(1 << (m * n), dtype=bool)
    for p in patterns:
        member &= ~containment_table(p, m, n, max_cells)
    return member


def critical_table(member: np.ndarray, m: int, n: int) -> np.ndarray:
    """Members of a class such that switching on any 0-entry leaves the class."""
    codes = all_codes(m, n)
    dt = codes.dtype.type
    crit = member.copy()
    for b in range(m * n):
        bit = dt(1 << b)
        has = (codes & bit) != 0
        crit &= has | ~member[codes | bit]
    return crit


@lru_cache(maxsize=None)
def _run_counts(n: int) -> np.ndarray:
    full = (1 << n) - 1
    vals = np.arange(1 << n, dtype=np.int64)
    zeros = ~vals & full
    starts = zeros & ~(zeros << 1) & full
    return np.array([bin(int(x)).count("1") for x in starts], dtype=np.int8)


def row_complexities(codes: np.ndarray, m: int, n: int) -> np.ndarray:
    """Row-complexity of each encoded m x n matrix."""
    table = _run_counts(n)
    full = (1 << n) - 1
    c = codes.astype(np.int64)
    out = np.zeros(c.shape, dtype=np.int8)
    for r in range(m):
        out = np.maximum(out, table[(c >> (r * n)) & full])
    return out


def column_complexities(codes: np.ndarray, m: int, n: int) -> np.ndarray:
    return row_complexities(transpose_codes(codes, m, n), n, m)


def transpose_codes(codes: np.ndarray, m: int, n: int) -> np.ndarray:
    """Codes of the transposed matrices (n x m)."""
    c = codes.astype(np.int64)
    out = np.zeros(c.shape, dtype=np.int64)
    for i in range(m):
        for j in range(n):
            out |= ((c >> (i * n + j)) & 1) << (j * m + i)
    return out


def critical_codes(
    patterns: Sequence[BinaryMatrix], m: int, n: int, max_cells: int = ENUMERATION_MAX_CELLS
) -> np.ndarray:
    """Sorted codes of the critical members of the class avoiding ``patterns``."""
    member = avoidance_table(patterns, m, n, max_cells)
    return np.flatnonzero(critical_table(member, m, n))
