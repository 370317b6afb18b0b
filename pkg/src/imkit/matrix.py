"""Binary matrices, lines, 0-runs and the dihedral transforms of the grid.

All public coordinates are 1-based ``(row, col)`` pairs with row 1 on top.
Internally a matrix is a tuple of row bitmasks; bit ``j - 1`` of mask
``i - 1`` holds the entry ``(i, j)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import UsageError

Entry = tuple[int, int]


class BinaryMatrix:
    """Immutable dense 0/1 matrix with at least one row and one column."""

    __slots__ = ("rows", "cols", "_rmasks", "_cmasks", "_hash")

    def __init__(self, grid: Sequence[Sequence[int]] | np.ndarray):
        arr = np.asarray(grid)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise UsageError(f"a binary matrix needs shape (>=1, >=1), got {arr.shape}")
        if not np.isin(arr, (0, 1)).all():
            raise UsageError("every cell must be 0 or 1")
        masks = []
        for row in arr.astype(np.uint8):
            mask = 0
            for j, v in enumerate(row):
                if v:
                    mask |= 1 << j
            masks.append(mask)
        self._init(tuple(masks), int(arr.shape[1]))

    def _init(self, masks: tuple[int, ...], cols: int) -> None:
        self.rows = len(masks)
        self.cols = cols
        self._rmasks = masks
        self._cmasks = None
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_masks(cls, masks: Sequence[int], cols: int) -> BinaryMatrix:
        if len(masks) < 1 or cols < 1:
            raise UsageError("a binary matrix needs at least one row and one column")
        full = (1 << cols) - 1
        if any(m < 0 or m & ~full for m in masks):
            raise UsageError("row mask has bits outside the column range")
        obj = cls.__new__(cls)
        obj._init(tuple(int(m) for m in masks), cols)
        return obj

    @classmethod
    def from_code(cls, code: int, rows: int, cols: int) -> BinaryMatrix:
        """Decode the row-major bit encoding: bit ``(i-1)*cols + (j-1)`` is entry (i, j)."""
        full = (1 << cols) - 1
        return cls.from_masks([(code >> (i * cols)) & full for i in range(rows)], cols)

    @classmethod
    def from_support(cls, rows: int, cols: int, entries: Iterable[Entry]) -> BinaryMatrix:
        masks = [0] * rows
        for i, j in entries:
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise UsageError(f"entry {(i, j)} outside a {rows}x{cols} matrix")
            masks[i - 1] |= 1 << (j - 1)
        return cls.from_masks(masks, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BinaryMatrix:
        return cls.from_masks([0] * rows, cols)

    @classmethod
    def ones(cls, rows: int, cols: int) -> BinaryMatrix:
        return cls.from_masks([(1 << cols) - 1] * rows, cols)

    @classmethod
    def parse(cls, text: str) -> BinaryMatrix:
        """Parse the text format; stops at the first blank line after content."""
        mats = parse_matrices(text)
        if not mats:
            raise UsageError("no matrix found in input")
        return mats[0]

    # -- accessors ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def row_masks(self) -> tuple[int, ...]:
        return self._rmasks

    @property
    def col_masks(self) -> tuple[int, ...]:
        """Column bitmasks; bit ``i - 1`` of mask ``j - 1`` holds entry (i, j)."""
        if self._cmasks is None:
            cm = [0] * self.cols
            for i, rm in enumerate(self._rmasks):
                j = 0
                while rm:
                    if rm & 1:
                        cm[j] |= 1 << i
                    rm >>= 1
                    j += 1
            self._cmasks = tuple(cm)
        return self._cmasks

    @property
    def code(self) -> int:
        c = 0
        for i, rm in enumerate(self._rmasks):
            c |= rm << (i * self.cols)
        return c

    def __getitem__(self, entry: Entry) -> int:
        i, j = entry
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry {entry} outside a {self.rows}x{self.cols} matrix")
        return (self._rmasks[i - 1] >> (j - 1)) & 1

    def support(self) -> frozenset[Entry]:
        return frozenset(self.iter_ones())

    def iter_ones(self) -> Iterator[Entry]:
        """1-entries in row-major order."""
        for i, rm in enumerate(self._rmasks, 1):
            j = 1
            while rm:
                if rm & 1:
                    yield (i, j)
                rm >>= 1
                j += 1

    def zero_entries(self) -> list[Entry]:
        """0-entries in row-major order."""
        out = []
        for i, rm in enumerate(self._rmasks, 1):
            for j in range(1, self.cols + 1):
                if not (rm >> (j - 1)) & 1:
                    out.append((i, j))
        return out

    def count_ones(self) -> int:
        return sum(bin(m).count("1") for m in self._rmasks)

    def is_empty(self) -> bool:
        return not any(self._rmasks)

    def flip(self, entry: Entry) -> BinaryMatrix:
        """The matrix with ``entry`` toggled."""
        i, j = entry
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise UsageError(f"entry {entry} outside a {self.rows}x{self.cols} matrix")
        masks = list(self._rmasks)
        masks[i - 1] ^= 1 << (j - 1)
        return BinaryMatrix.from_masks(masks, self.cols)

    def transpose(self) -> BinaryMatrix:
        return BinaryMatrix.from_masks(self.col_masks, self.rows)

    def to_array(self) -> np.ndarray:
        arr = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, rm in enumerate(self._rmasks):
            for j in range(self.cols):
                arr[i, j] = (rm >> j) & 1
        return arr

    def to_lists(self) -> list[list[int]]:
        return self.to_array().tolist()

    def to_text(self) -> str:
        return "\n".join(
            "".join("1" if (rm >> j) & 1 else "0" for j in range(self.cols))
            for rm in self._rmasks
        )

    def to_json(self) -> list[str]:
        return self.to_text().split("\n")

    # -- dunder ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.cols == other.cols and self._rmasks == other._rmasks

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.cols, self._rmasks))
        return self._hash

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"BinaryMatrix({'/'.join(self.to_json())})"


def parse_matrices(text: str) -> list[BinaryMatrix]:
    """Parse a stream of matrices in text format separated by blank lines.

    ``0`` or ``.`` is a 0-entry, ``1`` or ``*`` a 1-entry.
    """
    table = {"0": 0, ".": 0, "1": 1, "*": 1}
    mats: list[BinaryMatrix] = []
    block: list[list[int]] = []

    def close():
        if block:
            widths = {len(r) for r in block}
            if len(widths) != 1:
                raise UsageError("matrix rows have unequal lengths")
            mats.append(BinaryMatrix(block))
            block.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            close()
            continue
        try:
            block.append([table[ch] for ch in line])
        except KeyError as exc:
            raise UsageError(f"line {lineno}: unexpected character {exc.args[0]!r}") from None
    close()
    return mats


def format_matrices(mats: Iterable[BinaryMatrix]) -> str:
    return "\n\n".join(m.to_text() for m in mats)


# -- lines and intervals ------------------------------------------------------


class Axis(enum.Enum):
    ROW = "row"
    COLUMN = "column"


@dataclass(frozen=True)
class LineRef:
    axis: Axis
    index: int


@dataclass(frozen=True)
class Interval:
    """Consecutive entries ``lo..hi`` (inclusive) of one line."""

    line: LineRef
    lo: int
    hi: int

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi:
            raise UsageError(f"bad interval bounds {self.lo}..{self.hi}")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def entries(self) -> list[Entry]:
        if self.line.axis is Axis.ROW:
            return [(self.line.index, j) for j in range(self.lo, self.hi + 1)]
        return [(i, self.line.index) for i in range(self.lo, self.hi + 1)]


def _line_mask(m: BinaryMatrix, line: LineRef) -> tuple[int, int]:
    if line.axis is Axis.ROW:
        if not 1 <= line.index <= m.rows:
            raise UsageError(f"row {line.index} outside 1..{m.rows}")
        return m.row_masks[line.index - 1], m.cols
    if not 1 <= line.index <= m.cols:
        raise UsageError(f"column {line.index} outside 1..{m.cols}")
    return m.col_masks[line.index - 1], m.rows


def mask_runs(mask: int, length: int, value: int = 0) -> list[tuple[int, int]]:
    """Maximal runs of ``value`` in a bitmask line, as 1-based ``(lo, hi)``."""
    runs = []
    start = None
    for t in range(length):
        bit = (mask >> t) & 1
        if bit == value:
            if start is None:
                start = t + 1
        elif start is not None:
            runs.append((start, t))
            start = None
    if start is not None:
        runs.append((start, length))
    return runs


def zero_runs(m: BinaryMatrix, line: LineRef) -> list[Interval]:
    mask, length = _line_mask(m, line)
    return [Interval(line, lo, hi) for lo, hi in mask_runs(mask, length, 0)]


def one_runs(m: BinaryMatrix, line: LineRef) -> list[Interval]:
    mask, length = _line_mask(m, line)
    return [Interval(line, lo, hi) for lo, hi in mask_runs(mask, length, 1)]


def _mask_complexity(mask: int, length: int) -> int:
    full = (1 << length) - 1
    zeros = ~mask & full
    # a 0-run starts at every zero whose left neighbour is a one or the border
    return bin(zeros & ~(zeros << 1)).count("1")


def line_complexity(m: BinaryMatrix, line: LineRef) -> int:
    mask, length = _line_mask(m, line)
    return _mask_complexity(mask, length)


def row_complexity(m: BinaryMatrix) -> int:
    return max(_mask_complexity(rm, m.cols) for rm in m.row_masks)


def column_complexity(m: BinaryMatrix) -> int:
    return max(_mask_complexity(cm, m.rows) for cm in m.col_masks)


# -- basic relations -----------------------------------------------------------


def dominates(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """True iff ``a`` and ``b`` have equal shape and supp(b) is inside supp(a)."""
    if a.shape != b.shape:
        return False
    return all(y & ~x == 0 for x, y in zip(a.row_masks, b.row_masks))


def submatrix(m: BinaryMatrix, row_set: Iterable[int], col_set: Iterable[int]) -> BinaryMatrix:
    rs = sorted(set(row_set))
    cs = sorted(set(col_set))
    if not rs or not cs:
        raise UsageError("row and column index sets must be nonempty")
    if rs[0] < 1 or rs[-1] > m.rows or cs[0] < 1 or cs[-1] > m.cols:
        raise UsageError("submatrix index out of bounds")
    masks = []
    for i in rs:
        rm = m.row_masks[i - 1]
        out = 0
        for t, j in enumerate(cs):
            if (rm >> (j - 1)) & 1:
                out |= 1 << t
        masks.append(out)
    return BinaryMatrix.from_masks(masks, len(cs))


def contract_line(m: BinaryMatrix, axis: Axis, index: int) -> BinaryMatrix:
    """Merge lines ``index`` and ``index + 1`` of ``axis`` by entrywise maximum."""
    if axis is Axis.COLUMN:
        return contract_line(m.transpose(), Axis.ROW, index).transpose()
    if not 1 <= index < m.rows:
        raise UsageError(f"cannot contract rows {index},{index + 1} of a {m.rows}-row matrix")
    masks = list(m.row_masks)
    masks[index - 1] |= masks.pop(index)
    return BinaryMatrix.from_masks(masks, m.cols)


def append_empty_column(m: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix.from_masks(m.row_masks, m.cols + 1)


def drop_last_column(m: BinaryMatrix) -> BinaryMatrix:
    if m.cols < 2:
        raise UsageError("cannot drop the only column")
    full = (1 << (m.cols - 1)) - 1
    return BinaryMatrix.from_masks([rm & full for rm in m.row_masks], m.cols - 1)


# -- dihedral transforms -------------------------------------------------------


class Transform(enum.Enum):
    """Symmetries of the grid, as (transpose?, reverse rows?, reverse columns?)
    applied in that order."""

    IDENTITY = (False, False, False)
    TRANSPOSE = (True, False, False)
    FLIP_H = (False, False, True)  # mirror left-right
    FLIP_V = (False, True, False)  # upside down
    ROT180 = (False, True, True)
    ROT90 = (True, True, False)  # counterclockwise
    ROT270 = (True, False, True)
    ANTI_TRANSPOSE = (True, True, True)

    @property
    def swaps_axes(self) -> bool:
        return self.value[0]

    def inverse(self) -> Transform:
        return _inverse_table()[self]

    def then(self, other: Transform) -> Transform:
        """The transform equal to applying ``self`` first and ``other`` second."""
        return compose(other, self)


ROW_PRESERVING = (Transform.IDENTITY, Transform.FLIP_V, Transform.FLIP_H, Transform.ROT180)


def apply_transform(m: BinaryMatrix, t: Transform) -> BinaryMatrix:
    swap, rev_rows, rev_cols = t.value
    if swap:
        m = m.transpose()
    masks = list(m.row_masks)
    if rev_rows:
        masks.reverse()
    if rev_cols:
        masks = [_reverse_bits(x, m.cols) for x in masks]
    return BinaryMatrix.from_masks(masks, m.cols)


def map_entry(t: Transform, entry: Entry, shape: tuple[int, int]) -> Entry:
    """Where ``entry`` of a matrix of ``shape`` lands under ``t``."""
    swap, rev_rows, rev_cols = t.value
    i, j = entry
    r, c = shape
    if swap:
        i, j, r, c = j, i, c, r
    if rev_rows:
        i = r + 1 - i
    if rev_cols:
        j = c + 1 - j
    return (i, j)


def transformed_shape(t: Transform, shape: tuple[int, int]) -> tuple[int, int]:
    return (shape[1], shape[0]) if t.swaps_axes else shape


def _reverse_bits(x: int, width: int) -> int:
    return int(format(x, f"0{width}b")[::-1], 2) if width else 0


_PROBE = BinaryMatrix.from_support(2, 3, [(1, 1), (1, 2), (2, 3)])


@lru_cache(maxsize=None)
def _compose_table() -> dict[tuple[Transform, Transform], Transform]:
    images = {apply_transform(_PROBE, t): t for t in Transform}
    assert len(images) == 8
    return {
        (a, b): images[apply_transform(apply_transform(_PROBE, b), a)]
        for a in Transform
        for b in Transform
    }


def compose(a: Transform, b: Transform) -> Transform:
    """``compose(a, b)(m) == a(b(m))``."""
    return _compose_table()[(a, b)]


@lru_cache(maxsize=None)
def _inverse_table() -> dict[Transform, Transform]:
    return {t: next(u for u in Transform if compose(u, t) is Transform.IDENTITY) for t in Transform}
