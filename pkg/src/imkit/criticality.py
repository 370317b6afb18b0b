"""Critical avoiders: criticality tests, greedy saturation, critical-entry
analysis, relative line complexity and exhaustive enumeration."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import tables
from .containment import contains, contains_pinned, first_contained
from .errors import UsageError
from .matrix import Axis, BinaryMatrix, Entry, column_complexity, mask_runs, row_complexity


class SaturationOrder(enum.Enum):
    ROW_MAJOR = "row"
    COLUMN_MAJOR = "column"


def _as_list(F) -> list[BinaryMatrix]:
    if isinstance(F, BinaryMatrix):
        return [F]
    return list(F)


def _require_member(m: BinaryMatrix, F: Sequence[BinaryMatrix]) -> None:
    idx = first_contained(m, F)
    if idx is not None:
        raise UsageError(
            f"matrix is not in the class: it contains forbidden pattern #{idx} "
            f"({'/'.join(F[idx].to_json())})"
        )


def _leaves_class(m: BinaryMatrix, F: Sequence[BinaryMatrix]) -> bool:
    return first_contained(m, F) is not None


def is_critical(m: BinaryMatrix, F) -> bool:
    """True iff switching on any 0-entry of ``m`` creates a forbidden pattern.

    ``m`` must avoid every pattern of ``F``."""
    F = _as_list(F)
    _require_member(m, F)
    return all(_leaves_class(m.flip(f), F) for f in m.zero_entries())


def saturation_sequence(m: BinaryMatrix, order) -> list[Entry]:
    """0-entries of ``m`` in the order saturation visits them.

    An explicit list is visited first, then any 0-entries it missed, row-major."""
    zeros = m.zero_entries()
    if order in (SaturationOrder.ROW_MAJOR, "row", None):
        return zeros
    if order in (SaturationOrder.COLUMN_MAJOR, "column"):
        return sorted(zeros, key=lambda e: (e[1], e[0]))
    explicit = [tuple(e) for e in order]
    if len(set(explicit)) != len(explicit):
        raise UsageError("explicit saturation order lists an entry twice")
    zero_set = set(zeros)
    for e in explicit:
        if e not in zero_set:
            raise UsageError(f"explicit saturation order names {e}, which is not a 0-entry")
    seen = set(explicit)
    return explicit + [e for e in zeros if e not in seen]


def saturate(m: BinaryMatrix, F, order=SaturationOrder.ROW_MAJOR) -> BinaryMatrix:
    """Greedily switch 0-entries on while the matrix stays in the class.

    One pass suffices: a rejected flip stays rejected once more entries are on."""
    F = _as_list(F)
    _require_member(m, F)
    cur = m
    for f in saturation_sequence(m, order):
        cand = cur.flip(f)
        if not _leaves_class(cand, F):
            cur = cand
    return cur


def critical_entries_for(m: BinaryMatrix, F, f: Entry) -> set[tuple[int, Entry]]:
    """Pairs ``(pattern index, e)`` such that some embedding of that pattern
    into ``m`` with ``f`` switched on sends ``e`` to ``f``."""
    F = _as_list(F)
    if m[f]:
        raise UsageError(f"{f} is not a 0-entry")
    _require_member(m, F)
    return _critical_for(m, F, f)


def _critical_for(m: BinaryMatrix, F: Sequence[BinaryMatrix], f: Entry) -> set[tuple[int, Entry]]:
    flipped = m.flip(f)
    out = set()
    for idx, P in enumerate(F):
        if not contains(flipped, P):
            continue
        for e in P.iter_ones():
            if contains_pinned(flipped, P, e, f):
                out.add((idx, e))
    return out


def is_critical_for_entry(m: BinaryMatrix, P: BinaryMatrix, e: Entry, f: Entry) -> bool:
    return contains_pinned(m.flip(f), P, e, f)


def relative_line_complexities(
    m: BinaryMatrix, P: BinaryMatrix, e: Entry, axis: Axis = Axis.ROW
) -> list[int]:
    """Per-line count of 0-runs holding at least one 0-entry critical for ``e``."""
    if not P[e]:
        raise UsageError(f"{e} is not a 1-entry of the pattern")
    if contains(m, P):
        raise UsageError("relative complexity needs a matrix avoiding the pattern")
    masks, length = (m.row_masks, m.cols) if axis is Axis.ROW else (m.col_masks, m.rows)
    counts = []
    for idx, mask in enumerate(masks, 1):
        count = 0
        for lo, hi in mask_runs(mask, length, 0):
            for t in range(lo, hi + 1):
                f = (idx, t) if axis is Axis.ROW else (t, idx)
                if contains_pinned(m.flip(f), P, e, f):
                    count += 1
                    break
        counts.append(count)
    return counts


def relative_row_complexity(m: BinaryMatrix, P: BinaryMatrix, e: Entry) -> int:
    return max(relative_line_complexities(m, P, e, Axis.ROW))


def relative_column_complexity(m: BinaryMatrix, P: BinaryMatrix, e: Entry) -> int:
    return max(relative_line_complexities(m, P, e, Axis.COLUMN))


@dataclass
class CriticalityReport:
    matrix: BinaryMatrix
    forbidden: list[BinaryMatrix]
    is_critical: bool
    per_zero_entry: dict[Entry, set[tuple[int, Entry]]]
    relative_row_complexity: dict[tuple[int, Entry], int]
    relative_column_complexity: dict[tuple[int, Entry], int] = field(default_factory=dict)
    row_complexity: int = 0
    column_complexity: int = 0

    def to_json(self) -> dict:
        def key(k):
            idx, (i, j) = k
            return f"{idx}:{i},{j}"

        return {
            "critical": self.is_critical,
            "zeroEntryMap": [
                {
                    "entry": list(f),
                    "criticalFor": [
                        {"pattern": idx, "entry": list(e)} for idx, e in sorted(pairs)
                    ],
                }
                for f, pairs in sorted(self.per_zero_entry.items())
            ],
            "relComplexity": {key(k): v for k, v in sorted(self.relative_row_complexity.items())},
            "relColComplexity": {
                key(k): v for k, v in sorted(self.relative_column_complexity.items())
            },
            "rowComplexity": self.row_complexity,
            "colComplexity": self.column_complexity,
        }


def criticality_report(m: BinaryMatrix, F) -> CriticalityReport:
    F = _as_list(F)
    _require_member(m, F)
    per_zero = {f: _critical_for(m, F, f) for f in m.zero_entries()}
    rel_row: dict[tuple[int, Entry], int] = {}
    rel_col: dict[tuple[int, Entry], int] = {}
    for idx, P in enumerate(F):
        for e in P.iter_ones():
            crit = {f for f, pairs in per_zero.items() if (idx, e) in pairs}
            rel_row[(idx, e)] = _runs_hit(m.row_masks, m.cols, crit, Axis.ROW)
            rel_col[(idx, e)] = _runs_hit(m.col_masks, m.rows, crit, Axis.COLUMN)
    return CriticalityReport(
        matrix=m,
        forbidden=F,
        is_critical=all(per_zero.values()),
        per_zero_entry=per_zero,
        relative_row_complexity=rel_row,
        relative_column_complexity=rel_col,
        row_complexity=row_complexity(m),
        column_complexity=column_complexity(m),
    )


def _runs_hit(masks, length: int, crit: set[Entry], axis: Axis) -> int:
    best = 0
    for idx, mask in enumerate(masks, 1):
        count = 0
        for lo, hi in mask_runs(mask, length, 0):
            cells = ((idx, t) if axis is Axis.ROW else (t, idx) for t in range(lo, hi + 1))
            if any(c in crit for c in cells):
                count += 1
        best = max(best, count)
    return best


# -- exhaustive enumeration ---------------------------------------------------


def enumerate_critical(
    F, m: int, n: int, max_cells: int = tables.ENUMERATION_MAX_CELLS
) -> Iterator[BinaryMatrix]:
    """Critical members of the class avoiding ``F`` in {0,1}^(m x n), in
    increasing order of their bit code."""
    F = _as_list(F)
    for code in tables.critical_codes(F, m, n, max_cells):
        yield BinaryMatrix.from_code(int(code), m, n)


def _class_extreme(F, m: int, n: int, axis: Axis, max_cells: int) -> tuple[int, BinaryMatrix]:
    F = _as_list(F)
    codes = tables.critical_codes(F, m, n, max_cells)
    # saturating the zero matrix always ends in a critical member, unless
    # every m x n matrix already contains a forbidden pattern
    if codes.size == 0:
        raise UsageError("the class has no m x n members, so no critical matrices")
    if axis is Axis.ROW:
        vals = tables.row_complexities(codes, m, n)
    else:
        vals = tables.column_complexities(codes, m, n)
    best = int(np.argmax(vals))
    return int(vals[best]), BinaryMatrix.from_code(int(codes[best]), m, n)


def class_row_complexity(
    F, m: int, n: int, max_cells: int = tables.ENUMERATION_MAX_CELLS
) -> tuple[int, BinaryMatrix]:
    """Largest row-complexity among critical m x n members, with the first
    (smallest code) matrix attaining it."""
    return _class_extreme(F, m, n, Axis.ROW, max_cells)


def class_column_complexity(
    F, m: int, n: int, max_cells: int = tables.ENUMERATION_MAX_CELLS
) -> tuple[int, BinaryMatrix]:
    return _class_extreme(F, m, n, Axis.COLUMN, max_cells)
