"""Pattern-side analysis: the bounding dichotomy, line covers, increasing
chains and walk covers, the structure of Q-avoiders and per-entry
row-bounding certificates."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .construct import Q_PERMUTATIONS, find_q_occurrence, q_pattern
from .containment import contains
from .errors import UsageError
from .matrix import (
    ROW_PRESERVING,
    Axis,
    BinaryMatrix,
    Entry,
    LineRef,
    Transform,
    apply_transform,
    map_entry,
)

# -- the dichotomy -----------------------------------------------------------


def is_row_bounding(P: BinaryMatrix) -> bool:
    """True iff P contains none of Q1..Q4."""
    return not any(contains(P, q_pattern(name)) for name in Q_PERMUTATIONS)


def q_witness(P: BinaryMatrix) -> tuple[str, tuple[int, int, int], tuple[int, int, int]] | None:
    """Smallest Q_i contained in P with its lexicographically smallest
    occurrence ``(rows, cols)``."""
    for name in Q_PERMUTATIONS:
        occ = find_q_occurrence(P, name)
        if occ is not None:
            return name, occ[:3], occ[3:]
    return None


# -- matchings and line covers ------------------------------------------------


@dataclass(frozen=True)
class LineCover:
    lines: frozenset[LineRef]

    @property
    def size(self) -> int:
        return len(self.lines)

    def covers(self, m: BinaryMatrix) -> bool:
        rows = {l.index for l in self.lines if l.axis is Axis.ROW}
        cols = {l.index for l in self.lines if l.axis is Axis.COLUMN}
        return all(i in rows or j in cols for i, j in m.iter_ones())


def _augment(adj, r, match_col, seen) -> bool:
    for c in adj[r]:
        if c in seen:
            continue
        seen.add(c)
        if match_col.get(c) is None or _augment(adj, match_col[c], match_col, seen):
            match_col[c] = r
            return True
    return False


def _matching(m: BinaryMatrix) -> dict[int, int]:
    adj = {i: [j for (r, j) in m.iter_ones() if r == i] for i in range(1, m.rows + 1)}
    match_col: dict[int, int] = {}
    for r in adj:
        _augment(adj, r, match_col, set())
    return match_col


def max_independent_ones(m: BinaryMatrix) -> list[Entry]:
    """A largest set of 1-entries with no two in a common row or column."""
    return sorted((r, c) for c, r in _matching(m).items())


def min_line_cover(m: BinaryMatrix) -> LineCover:
    """Minimum set of lines through all 1-entries (König construction from a
    maximum matching)."""
    match_col = _matching(m)
    match_row = {r: c for c, r in match_col.items()}
    adj: dict[int, list[int]] = {i: [] for i in range(1, m.rows + 1)}
    for i, j in m.iter_ones():
        adj[i].append(j)
    # alternating search from unmatched rows
    seen_rows = {r for r in adj if r not in match_row}
    seen_cols: set[int] = set()
    stack = list(seen_rows)
    while stack:
        r = stack.pop()
        for c in adj[r]:
            if c in seen_cols or match_row.get(r) == c:
                continue
            seen_cols.add(c)
            r2 = match_col.get(c)
            if r2 is not None and r2 not in seen_rows:
                seen_rows.add(r2)
                stack.append(r2)
    lines = {LineRef(Axis.ROW, r) for r in match_row if r not in seen_rows}
    lines |= {LineRef(Axis.COLUMN, c) for c in seen_cols}
    return LineCover(frozenset(lines))


# -- chains and walks ---------------------------------------------------------


def _chain_levels(m: BinaryMatrix, anti: bool = False) -> dict[Entry, int]:
    """Length of the longest chain ending at each 1-entry; chains increase in
    both coordinates (or rows up and columns down when ``anti``)."""
    ones = sorted(m.iter_ones())
    level: dict[Entry, int] = {}
    for e in ones:
        best = 0
        for f in ones:
            if f[0] >= e[0]:
                break
            if (f[1] < e[1]) if not anti else (f[1] > e[1]):
                best = max(best, level[f])
        level[e] = best + 1
    return level


def longest_increasing_chain(m: BinaryMatrix) -> int:
    """Longest run of 1-entries strictly increasing in row and column."""
    return max(_chain_levels(m).values(), default=0)


def longest_decreasing_chain(m: BinaryMatrix) -> int:
    """Longest run of 1-entries with rows increasing and columns decreasing."""
    return max(_chain_levels(m, anti=True).values(), default=0)


def avoids_dk(m: BinaryMatrix, k: int) -> bool:
    return longest_increasing_chain(m) < k


def avoids_anti_dk(m: BinaryMatrix, k: int) -> bool:
    return longest_decreasing_chain(m) < k


@dataclass(frozen=True)
class WalkCover:
    walks: tuple[tuple[Entry, ...], ...]

    def union(self) -> set[Entry]:
        return {e for w in self.walks for e in w}


def is_increasing_walk(walk, start: Entry, end: Entry) -> bool:
    """Every step goes one right or one up, from ``start`` to ``end``."""
    if not walk or tuple(walk[0]) != start or tuple(walk[-1]) != end:
        return False
    for (r0, c0), (r1, c1) in zip(walk, walk[1:]):
        if not ((r1 == r0 and c1 == c0 + 1) or (r1 == r0 - 1 and c1 == c0)):
            return False
    return True


def _best_path(support: set[Entry], a: Entry, b: Entry) -> list[Entry]:
    """Right/up path from ``a`` to ``b`` through as many support cells as
    possible; ties resolved towards moving right first."""
    (ra, ca), (rb, cb) = a, b
    h, w = ra - rb, cb - ca
    score = [[0] * (w + 1) for _ in range(h + 1)]  # score[u][v]: cell (ra-u, ca+v)
    for u in range(h + 1):
        for v in range(w + 1):
            here = 1 if (ra - u, ca + v) in support else 0
            prev = max(
                score[u - 1][v] if u else -1,
                score[u][v - 1] if v else -1,
            )
            score[u][v] = here + max(prev, 0)
    path = [(rb, cb)]
    u, v = h, w
    while u or v:
        if u and (not v or score[u - 1][v] >= score[u][v - 1]):
            u -= 1
        else:
            v -= 1
        path.append((ra - u, ca + v))
    path.reverse()
    return path


def walk_cover(m: BinaryMatrix, k: int) -> WalkCover | None:
    """k-1 increasing walks from (m,1) to (1,n) covering the support, or None
    when the matrix contains D_k.

    The support is split into antichains by chain level; each antichain is
    threaded into a corner-to-corner walk."""
    if k < 1:
        raise UsageError("k must be positive")
    level = _chain_levels(m)
    if max(level.values(), default=0) >= k:
        return None
    support = set(level)
    start, end = (m.rows, 1), (1, m.cols)
    walks = []
    for lv in range(1, max(level.values(), default=0) + 1):
        points = sorted((e for e, x in level.items() if x == lv), key=lambda e: (e[1], -e[0]))
        stops = [start] + points + [end]
        walk = [start]
        for a, b in zip(stops, stops[1:]):
            if a != b:
                walk.extend(_best_path(support, a, b)[1:])
        walks.append(tuple(walk))
    while len(walks) < k - 1:
        walks.append(tuple(_best_path(support, start, end)))
    return WalkCover(tuple(walks))


# -- structure of Q-avoiders ---------------------------------------------------


class StructureCase(enum.Enum):
    AVOIDS_D2 = "AvoidsD2"
    AVOIDS_ANTI_D2 = "AvoidsAntiD2"
    COVERABLE_BY_3_LINES = "CoverableBy3Lines"
    NOT_Q_AVOIDING = "NotQAvoiding"


def structure_classify(P: BinaryMatrix) -> frozenset[StructureCase]:
    if not is_row_bounding(P):
        return frozenset({StructureCase.NOT_Q_AVOIDING})
    out = set()
    if longest_increasing_chain(P) < 2:
        out.add(StructureCase.AVOIDS_D2)
    if longest_decreasing_chain(P) < 2:
        out.add(StructureCase.AVOIDS_ANTI_D2)
    if min_line_cover(P).size <= 3:
        out.add(StructureCase.COVERABLE_BY_3_LINES)
    return frozenset(out)


# -- the two normal forms ------------------------------------------------------

NORMAL_FORM_TRANSFORMS = (
    Transform.IDENTITY,
    Transform.TRANSPOSE,
    Transform.FLIP_H,
    Transform.FLIP_V,
    Transform.ROT180,
    Transform.ROT90,
    Transform.ROT270,
    Transform.ANTI_TRANSPOSE,
)


@dataclass(frozen=True)
class NormalForm:
    transform: Transform
    type: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "transform": self.transform.name,
            "type": f"Type{self.type}",
            "rows": list(self.rows),
            "cols": list(self.cols),
        }


def _fits_type1(S: frozenset[Entry], rows: tuple[int, ...], cols: tuple[int, ...]) -> bool:
    r, r1, r2 = rows
    c, c1 = cols
    corners = {(r, c), (r2, c), (r, c1), (r2, c1)}
    return all((x == r1 and c <= y <= c1) or (x, y) in corners for x, y in S)


def _fits_type2(S: frozenset[Entry], rows: tuple[int, ...], cols: tuple[int, ...]) -> bool:
    r, r1 = rows
    c, c1 = cols
    return all(
        (x == r and c <= y <= c1)
        or (x == r1 and y <= c)
        or (x <= r and y == c1)
        or (x, y) == (r1, c1)
        for x, y in S
    )


def match_two_types(P: BinaryMatrix) -> NormalForm | None:
    """First (transform, type, parameters) whose template contains the
    transformed support; no preconditions are checked."""
    for t in NORMAL_FORM_TRANSFORMS:
        Pt = apply_transform(P, t)
        S = Pt.support()
        k, l = Pt.shape
        for rows in combinations(range(1, k + 1), 3):
            for cols in combinations(range(1, l + 1), 2):
                if _fits_type1(S, rows, cols):
                    return NormalForm(t, 1, rows, cols)
        for rows in combinations(range(1, k + 1), 2):
            for cols in combinations(range(1, l + 1), 2):
                if _fits_type2(S, rows, cols):
                    return NormalForm(t, 2, rows, cols)
    return None


def normal_form_2types(P: BinaryMatrix) -> NormalForm | None:
    """Normal form of a Q-avoider that contains D_2 and its mirror and needs
    at least three covering lines."""
    if not is_row_bounding(P):
        raise UsageError("precondition failed: pattern contains some Q_i")
    if longest_increasing_chain(P) < 2:
        raise UsageError("precondition failed: pattern avoids D2")
    if longest_decreasing_chain(P) < 2:
        raise UsageError("precondition failed: pattern avoids the anti-diagonal D2")
    if min_line_cover(P).size < 3:
        raise UsageError("precondition failed: pattern is coverable by two lines")
    return match_two_types(P)


def meets_two_types_hypotheses(P: BinaryMatrix) -> bool:
    return (
        longest_increasing_chain(P) >= 2
        and longest_decreasing_chain(P) >= 2
        and min_line_cover(P).size >= 3
        and is_row_bounding(P)
    )


# -- row-bounding certificates --------------------------------------------------
#
# Each predicate takes the support S of a k x l pattern and a 1-entry e and
# decides whether the hypotheses of one criterion hold with e in its
# distinguished interval.


def _leftmost_interval(S, k, l, e) -> bool:
    i, j = e
    return all(c >= j for r, c in S if r != i)


def _leftmost_column(S, k, l, e) -> bool:
    return e[1] == min(c for _, c in S)


def _h_frames(S, l, e):
    """Column pairs c1 < c2 around e meeting the common hypotheses of the H
    criterion for row e[0]."""
    r, j = e
    row_cols = [c for x, c in S if x == r]
    lo, hi = min(row_cols), max(row_cols)
    for c1 in range(1, min(j, lo) + 1):
        for c2 in range(max(j, hi, c1 + 1), l + 1):
            if all(not (c1 < c < c2) or x == r for x, c in S):
                yield c1, c2


def _h_type(t: int):
    def pred(S, k, l, e) -> bool:
        r = e[0]
        above = [(x, c) for x, c in S if x < r]
        below = [(x, c) for x, c in S if x > r]
        one_row_above = len({x for x, _ in above}) <= 1
        one_row_below = len({x for x, _ in below}) <= 1
        for c1, c2 in _h_frames(S, l, e):
            right_below = all(c >= c2 for _, c in below)
            if t == 1 and one_row_above and one_row_below:
                return True
            if t == 2 and one_row_above and right_below:
                return True
            if t == 3 and all(c <= c1 for _, c in above) and right_below:
                return True
        return False

    return pred


def _i_type(t: int):
    def pred(S, k, l, e) -> bool:
        i, c = e
        for r1 in range(1, i + 1):
            for r2 in range(i, k + 1):
                if any(r1 <= x <= r2 and y != c for x, y in S):
                    continue
                above = [(x, y) for x, y in S if x < r1]
                below = [(x, y) for x, y in S if x > r2]
                near_above = all(y == c or x == r1 - 1 for x, y in above)
                near_below = all(y == c or x == r2 + 1 for x, y in below)
                right_below = all(y >= c for _, y in below)
                if t == 1 and near_above and near_below:
                    return True
                if t == 2 and near_above and right_below:
                    return True
                if t == 3 and all(y <= c for _, y in above) and right_below:
                    return True
        return False

    return pred


def _i2_type(t: int):
    def pred(S, k, l, e) -> bool:
        r1, c1 = e
        for r2 in range(r1 + 1, k + 1):
            for c2 in range(c1 + 1, l + 1):
                if t == 1:
                    ok = all(
                        (r1 <= x <= r2 and y == c1) or (x in (r1, r2) and (y <= c1 or y == c2))
                        for x, y in S
                    )
                else:
                    ok = all(
                        (r1 <= x <= r2 and y == c1)
                        or (x == r2 and (y <= c1 or y == c2))
                        or (x <= r1 and y == c2)
                        for x, y in S
                    )
                if ok:
                    return True
        return False

    return pred


CERTIFICATES: dict[str, Callable] = {
    "LeftmostInterval": _leftmost_interval,
    "LeftmostColumn": _leftmost_column,
    "H-Type1": _h_type(1),
    "H-Type2": _h_type(2),
    "H-Type3": _h_type(3),
    "I-Type1": _i_type(1),
    "I-Type2": _i_type(2),
    "I-Type3": _i_type(3),
    "I2-Type1": _i2_type(1),
    "I2-Type2": _i2_type(2),
}


def entry_certificate_details(P: BinaryMatrix, e: Entry) -> list[tuple[str, Transform]]:
    """Every (criterion, flip) pair whose hypotheses hold for ``e``.

    Criteria are tried on the four row-preserving orientations of P, since
    reversing rows or columns keeps an entry row-bounding."""
    if not (1 <= e[0] <= P.rows and 1 <= e[1] <= P.cols) or not P[e]:
        raise UsageError(f"{e} is not a 1-entry of the pattern")
    out = []
    for t in ROW_PRESERVING:
        Pt = apply_transform(P, t)
        S = Pt.support()
        et = map_entry(t, e, P.shape)
        for name, pred in CERTIFICATES.items():
            if pred(S, Pt.rows, Pt.cols, et):
                out.append((name, t))
    return out


def entry_certificates(P: BinaryMatrix, e: Entry) -> list[str]:
    names = {name for name, _ in entry_certificate_details(P, e)}
    return [name for name in CERTIFICATES if name in names]


# -- the full report -------------------------------------------------------------


@dataclass
class ClassificationReport:
    pattern: BinaryMatrix
    row_bounding: bool
    q_witness: tuple[str, tuple[int, int, int], tuple[int, int, int]] | None
    structure_case: frozenset[StructureCase]
    two_line_coverable: bool
    normal_form: NormalForm | None
    entry_certificates: dict[Entry, list[str]] = field(default_factory=dict)

    def to_json(self) -> dict:
        qw = None
        if self.q_witness is not None:
            name, rows, cols = self.q_witness
            qw = {"pattern": name, "rows": list(rows), "cols": list(cols)}
        return {
            "pattern": self.pattern.to_json(),
            "rowBounding": self.row_bounding,
            "qWitness": qw,
            "structureCase": sorted(c.value for c in self.structure_case),
            "twoLineCoverable": self.two_line_coverable,
            "normalForm": None if self.normal_form is None else self.normal_form.to_json(),
            "entryCertificates": [
                {"entry": list(e), "certificates": certs}
                for e, certs in sorted(self.entry_certificates.items())
            ],
        }


def classify(P: BinaryMatrix) -> ClassificationReport:
    qw = q_witness(P)
    bounding = qw is None
    cover = min_line_cover(P)
    nf = None
    if bounding and meets_two_types_hypotheses(P):
        nf = match_two_types(P)
    return ClassificationReport(
        pattern=P,
        row_bounding=bounding,
        q_witness=qw,
        structure_case=structure_classify(P),
        two_line_coverable=cover.size <= 2,
        normal_form=nf,
        entry_certificates={e: entry_certificates(P, e) for e in sorted(P.iter_ones())},
    )
