"""Interval-minor containment: decision, witnesses, pinned queries and a
brute-force oracle.

The fast path enumerates the boundary vectors of one axis and fits the other
axis greedily, closing every block at the earliest admissible line.  Closing a
block earlier never hurts the blocks after it, so the greedy fit succeeds
whenever any fit exists for the enumerated boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Mapping

from .errors import UsageError
from .matrix import BinaryMatrix, Entry

ORACLE_MAX_CELLS = 36


@dataclass(frozen=True)
class Partition:
    """Boundaries ``r_0 < ... < r_k`` and ``c_0 < ... < c_l`` cutting a host into
    blocks ``(r_{i-1}, r_i] x (c_{j-1}, c_j]``."""

    row_bounds: tuple[int, ...]
    col_bounds: tuple[int, ...]
    pattern_shape: tuple[int, int]
    host_shape: tuple[int, int]

    def block_of(self, host_entry: Entry) -> Entry | None:
        """The pattern cell whose block holds ``host_entry`` (None if outside)."""
        i = _slot(self.row_bounds, host_entry[0])
        j = _slot(self.col_bounds, host_entry[1])
        return None if i is None or j is None else (i, j)

    def to_json(self) -> dict:
        return {"rowBounds": list(self.row_bounds), "colBounds": list(self.col_bounds)}


def _slot(bounds: tuple[int, ...], x: int) -> int | None:
    for t in range(1, len(bounds)):
        if bounds[t - 1] < x <= bounds[t]:
            return t
    return None


@dataclass(frozen=True)
class EmbeddingMap:
    """Pattern entries mapped to host entries; ``kind`` is "full" or "partial"."""

    mapping: Mapping[Entry, Entry]
    kind: str = "full"

    def __post_init__(self):
        if self.kind not in ("full", "partial"):
            raise UsageError(f"unknown embedding kind {self.kind!r}")

    def as_partial(self) -> EmbeddingMap:
        return EmbeddingMap(dict(self.mapping), "partial")


# -- pattern preprocessing ----------------------------------------------------


@dataclass(frozen=True)
class _Pat:
    k: int
    l: int
    needs: tuple[int, ...]  # needs[j]: bitmask of pattern rows with a 1 in column j
    empty: bool


@lru_cache(maxsize=4096)
def _prep(pattern: BinaryMatrix) -> tuple[_Pat, _Pat]:
    def build(p: BinaryMatrix) -> _Pat:
        return _Pat(p.rows, p.cols, p.col_masks, p.is_empty())

    return build(pattern), build(pattern.transpose())


def _row_vectors(m: int, k: int, pin: tuple[int, int] | None) -> Iterator[tuple[int, ...]]:
    """Interior boundary vectors ``(r_1, .., r_{k-1})`` in lexicographic order.

    With ``pin = (i, i_star)`` only vectors with ``r_{i-1} < i_star <= r_i`` are
    produced (``r_0 = 0``, ``r_k = m``)."""
    if pin is None:
        yield from combinations(range(1, m), k - 1)
        return
    i, istar = pin
    head = combinations(range(1, istar), i - 1)
    for h in head:
        for t in combinations(range(istar, m), k - i):
            yield h + t


def _fit(
    hrows: tuple[int, ...],
    n: int,
    pat: _Pat,
    row_pin: tuple[int, int] | None = None,
    col_pin: tuple[int, int] | None = None,
    first_only: bool = True,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Search for a canonical partition, enumerating row boundaries.

    ``hrows`` are host row masks over ``n`` columns.  Returns the partition with
    lexicographically smallest row vector (and componentwise smallest column
    vector for it), or None."""
    m = len(hrows)
    k, l = pat.k, pat.l
    needs = pat.needs
    # column boundary c_j must stay within [lo_j, hi_j]
    hi = [n - (l - j) for j in range(l + 1)]
    lo = [j for j in range(l + 1)]
    if col_pin is not None:
        j0, jstar = col_pin
        for t in range(j0 - 1):
            hi[t + 1] = min(hi[t + 1], jstar - 1)
        for t in range(j0, l + 1):
            lo[t] = max(lo[t], jstar)
        if j0 >= 2 and hi[j0 - 1] < lo[j0 - 1]:
            return None
    for vec in _row_vectors(m, k, row_pin):
        rb = (0,) + vec + (m,)
        blocks = []
        for i in range(k):
            acc = 0
            for r in range(rb[i], rb[i + 1]):
                acc |= hrows[r]
            blocks.append(acc)
        prev = 0
        cb = [0]
        ok = True
        for j in range(1, l + 1):
            start = prev + 1
            end = max(start, lo[j])
            need = needs[j - 1]
            i = 0
            while need:
                if need & 1:
                    rest = blocks[i] >> (start - 1)
                    if not rest:
                        ok = False
                        break
                    c = start + (rest & -rest).bit_length() - 1
                    if c > end:
                        end = c
                need >>= 1
                i += 1
            if not ok or end > hi[j]:
                ok = False
                break
            cb.append(end)
            prev = end
        if ok:
            cb[-1] = n
            return rb, tuple(cb)
    return None


def _search(
    host: BinaryMatrix,
    pattern: BinaryMatrix,
    pin: tuple[Entry, Entry] | None = None,
    lex: bool = False,
) -> Partition | None:
    k, l = pattern.shape
    m, n = host.shape
    if k > m or l > n:
        return None
    pat, pat_t = _prep(pattern)
    row_pin = col_pin = None
    if pin is not None:
        (pi, pj), (hi_, hj) = pin
        row_pin, col_pin = (pi, hi_), (pj, hj)
    transpose = not lex and comb(n - 1, l - 1) < comb(m - 1, k - 1)
    if transpose:
        found = _fit(host.col_masks, m, pat_t, col_pin, row_pin)
        if found is None:
            return None
        cb, rb = found
    else:
        found = _fit(host.row_masks, n, pat, row_pin, col_pin)
        if found is None:
            return None
        rb, cb = found
    return Partition(tuple(rb), tuple(cb), (k, l), (m, n))


# -- public operations --------------------------------------------------------


def contains(host: BinaryMatrix, pattern: BinaryMatrix) -> bool:
    """True iff ``pattern`` is an interval minor of ``host``."""
    return _search(host, pattern) is not None


def avoids(host: BinaryMatrix, pattern: BinaryMatrix) -> bool:
    return _search(host, pattern) is None


def avoids_all(host: BinaryMatrix, patterns: Iterable[BinaryMatrix]) -> bool:
    return all(_search(host, p) is None for p in patterns)


def first_contained(host: BinaryMatrix, patterns: Iterable[BinaryMatrix]) -> int | None:
    """Index of the first pattern contained in ``host``, or None."""
    for idx, p in enumerate(patterns):
        if _search(host, p) is not None:
            return idx
    return None


def find_partition(host: BinaryMatrix, pattern: BinaryMatrix) -> Partition | None:
    """Lexicographically smallest canonical partition of ``host`` containing
    ``pattern`` (row vector first, then column vector)."""
    return _search(host, pattern, lex=True)


def find_pinned_partition(
    host: BinaryMatrix, pattern: BinaryMatrix, pattern_entry: Entry, host_entry: Entry
) -> Partition | None:
    """A canonical partition containing ``pattern`` whose block ``pattern_entry``
    holds ``host_entry``."""
    _check_entry(pattern, pattern_entry, "pattern")
    _check_entry(host, host_entry, "host")
    if pattern[pattern_entry] and not host[host_entry]:
        return None
    return _search(host, pattern, pin=(pattern_entry, host_entry))


def contains_pinned(
    host: BinaryMatrix, pattern: BinaryMatrix, pattern_entry: Entry, host_entry: Entry
) -> bool:
    """True iff some embedding of ``pattern`` into ``host`` maps
    ``pattern_entry`` to ``host_entry``."""
    return find_pinned_partition(host, pattern, pattern_entry, host_entry) is not None


def _check_entry(m: BinaryMatrix, e: Entry, what: str) -> None:
    if not (1 <= e[0] <= m.rows and 1 <= e[1] <= m.cols):
        raise UsageError(f"{what} entry {e} outside a {m.rows}x{m.cols} matrix")


def _check_bounds(bounds: tuple[int, ...], count: int, size: int, axis: str) -> None:
    if len(bounds) != count + 1:
        raise UsageError(f"{axis} bounds need {count + 1} values, got {len(bounds)}")
    if bounds[0] < 0 or bounds[-1] > size:
        raise UsageError(f"{axis} bounds must lie in [0, {size}]")
    if any(a >= b for a, b in zip(bounds, bounds[1:])):
        raise UsageError(f"{axis} bounds must be strictly increasing: {bounds}")


def verify_partition(host: BinaryMatrix, pattern: BinaryMatrix, part: Partition) -> bool:
    """Check that every 1-entry of ``pattern`` has a 1 in its block."""
    k, l = pattern.shape
    m, n = host.shape
    _check_bounds(tuple(part.row_bounds), k, m, "row")
    _check_bounds(tuple(part.col_bounds), l, n, "column")
    rb, cb = part.row_bounds, part.col_bounds
    for i, j in pattern.iter_ones():
        colmask = ((1 << cb[j]) - 1) & ~((1 << cb[j - 1]) - 1)
        if not any(host.row_masks[r] & colmask for r in range(rb[i - 1], rb[i])):
            return False
    return True


def embedding_from_partition(
    host: BinaryMatrix,
    pattern: BinaryMatrix,
    part: Partition,
    pin: tuple[Entry, Entry] | None = None,
) -> EmbeddingMap:
    """A full embedding sending each pattern entry into its own block.

    1-entries go to the first 1-entry of their block (row-major), other entries
    to the block's top-left cell; ``pin`` overrides one assignment."""
    rb, cb = part.row_bounds, part.col_bounds
    mapping: dict[Entry, Entry] = {}
    for i in range(1, pattern.rows + 1):
        for j in range(1, pattern.cols + 1):
            target = (rb[i - 1] + 1, cb[j - 1] + 1)
            if pattern[i, j]:
                target = _first_one(host, rb[i - 1], rb[i], cb[j - 1], cb[j]) or target
            mapping[(i, j)] = target
    if pin is not None:
        mapping[pin[0]] = pin[1]
    return EmbeddingMap(mapping, "full")


def _first_one(host: BinaryMatrix, r0: int, r1: int, c0: int, c1: int) -> Entry | None:
    for r in range(r0, r1):
        rm = host.row_masks[r] >> c0
        if rm & ((1 << (c1 - c0)) - 1):
            return (r + 1, c0 + (rm & -rm).bit_length())
    return None


def find_embedding(host: BinaryMatrix, pattern: BinaryMatrix) -> EmbeddingMap | None:
    part = find_partition(host, pattern)
    return None if part is None else embedding_from_partition(host, pattern, part)


def verify_embedding(host: BinaryMatrix, pattern: BinaryMatrix, emb: EmbeddingMap) -> bool:
    """Check a full embedding: 1-entries land on 1-entries and strict row and
    column order is preserved."""
    if emb.kind != "full":
        raise UsageError("verify_embedding expects a full embedding")
    domain = set(emb.mapping)
    full = {(i, j) for i in range(1, pattern.rows + 1) for j in range(1, pattern.cols + 1)}
    if domain != full:
        raise UsageError("a full embedding must be defined on every pattern entry")
    items = list(emb.mapping.items())
    for (i, j), (a, b) in items:
        if not (1 <= a <= host.rows and 1 <= b <= host.cols):
            return False
        if pattern[i, j] and not host[a, b]:
            return False
    # strict order between all pairs reduces to consecutive lines: every image
    # of line t must come before every image of line t+1
    for axis, count in ((0, pattern.rows), (1, pattern.cols)):
        lo = [None] * (count + 1)
        hi = [None] * (count + 1)
        for src, dst in items:
            t, x = src[axis], dst[axis]
            lo[t] = x if lo[t] is None else min(lo[t], x)
            hi[t] = x if hi[t] is None else max(hi[t], x)
        if any(hi[t] >= lo[t + 1] for t in range(1, count)):
            return False
    return True


def verify_partial_embedding(
    host: BinaryMatrix, pattern: BinaryMatrix, emb: EmbeddingMap
) -> bool:
    """Check the three conditions of a partial embedding: support coverage,
    margins and spacing."""
    if not emb.mapping:
        raise UsageError("a partial embedding needs a nonempty domain")
    k, l = pattern.shape
    m, n = host.shape
    for e in pattern.iter_ones():
        if e not in emb.mapping:
            return False
    items = list(emb.mapping.items())
    for (i, j), (a, b) in items:
        if not (1 <= i <= k and 1 <= j <= l):
            raise UsageError(f"domain entry {(i, j)} outside the pattern")
        if not (1 <= a <= m and 1 <= b <= n):
            return False
        if pattern[i, j] and not host[a, b]:
            return False
        if not (i <= a and j <= b and k - i <= m - a and l - j <= n - b):
            return False
    for (i1, j1), (a1, b1) in items:
        for (i2, j2), (a2, b2) in items:
            if i1 < i2 and i2 - i1 > a2 - a1:
                return False
            if j1 < j2 and j2 - j1 > b2 - b1:
                return False
    return True


# -- brute-force oracle -------------------------------------------------------


def canonical_partitions(
    host_shape: tuple[int, int], pattern_shape: tuple[int, int]
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All boundary pairs with ``r_0 = c_0 = 0``, ``r_k = m`` and ``c_l = n``."""
    (m, n), (k, l) = host_shape, pattern_shape
    if k > m or l > n:
        return
    for rv, cv in product(combinations(range(1, m), k - 1), combinations(range(1, n), l - 1)):
        yield (0,) + rv + (m,), (0,) + cv + (n,)


def _contract_masks(host: BinaryMatrix, rb: tuple[int, ...], cb: tuple[int, ...]) -> list[int]:
    masks = []
    for a, b in zip(rb, rb[1:]):
        acc = 0
        for r in range(a, b):
            acc |= host.row_masks[r]
        out = 0
        for t, (c0, c1) in enumerate(zip(cb, cb[1:])):
            if (acc >> c0) & ((1 << (c1 - c0)) - 1):
                out |= 1 << t
        masks.append(out)
    return masks


def contract_by(host: BinaryMatrix, rb: tuple[int, ...], cb: tuple[int, ...]) -> BinaryMatrix:
    """Contract every row interval and column interval of a canonical partition."""
    return BinaryMatrix.from_masks(_contract_masks(host, rb, cb), len(cb) - 1)


def contains_oracle(
    host: BinaryMatrix, pattern: BinaryMatrix, max_cells: int = ORACLE_MAX_CELLS
) -> bool:
    """Ground truth by contracting along every canonical partition and testing
    dominance.  Independent of the greedy search."""
    if host.rows * host.cols > max_cells:
        raise UsageError(
            f"oracle refuses a {host.rows}x{host.cols} host (guard {max_cells} cells)"
        )
    target = pattern.row_masks
    for rb, cb in canonical_partitions(host.shape, pattern.shape):
        contracted = _contract_masks(host, rb, cb)
        if all(t & ~c == 0 for t, c in zip(target, contracted)):
            return True
    return False


def contains_pinned_oracle(
    host: BinaryMatrix,
    pattern: BinaryMatrix,
    pattern_entry: Entry,
    host_entry: Entry,
    max_cells: int = ORACLE_MAX_CELLS,
) -> bool:
    """Brute-force pinned containment over all canonical partitions."""
    if host.rows * host.cols > max_cells:
        raise UsageError("oracle size guard exceeded")
    if pattern[pattern_entry] and not host[host_entry]:
        return False
    target = pattern.row_masks
    for rb, cb in canonical_partitions(host.shape, pattern.shape):
        if Partition(rb, cb, pattern.shape, host.shape).block_of(host_entry) != pattern_entry:
            continue
        contracted = _contract_masks(host, rb, cb)
        if all(t & ~c == 0 for t, c in zip(target, contracted)):
            return True
    return False
