"""Named patterns, pattern-spec strings and the explicit matrix families:
unbounded-complexity witnesses, critical R_k-avoiders and walk matrices."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .containment import contains
from .errors import UsageError
from .matrix import (
    BinaryMatrix,
    Entry,
    Transform,
    apply_transform,
    map_entry,
)

# row i of Q_n holds its single 1-entry in column PERMS[n][i-1]
Q_PERMUTATIONS = {
    "Q1": (2, 1, 3),
    "Q2": (2, 3, 1),
    "Q3": (1, 3, 2),
    "Q4": (3, 1, 2),
}

# the row-preserving flip taking Q_i onto Q1
Q_TO_Q1 = {
    "Q1": Transform.IDENTITY,
    "Q2": Transform.FLIP_H,
    "Q3": Transform.ROT180,
    "Q4": Transform.FLIP_V,
}


def permutation_matrix(perm: Sequence[int]) -> BinaryMatrix:
    k = len(perm)
    return BinaryMatrix.from_support(k, k, [(i, c) for i, c in enumerate(perm, 1)])


def q_pattern(name: str) -> BinaryMatrix:
    return permutation_matrix(Q_PERMUTATIONS[name])


def Q(i: int) -> BinaryMatrix:
    return q_pattern(f"Q{i}")


Q_PATTERNS = tuple(Q(i) for i in range(1, 5))


def row_pattern(k: int) -> BinaryMatrix:
    """R_k: a single row of k ones."""
    return BinaryMatrix.ones(1, k)


def diagonal(k: int) -> BinaryMatrix:
    """D_k: ones at (i, i)."""
    return BinaryMatrix.from_support(k, k, [(i, i) for i in range(1, k + 1)])


def anti_diagonal(k: int) -> BinaryMatrix:
    """Mirror of D_k: ones at (i, k - i + 1)."""
    return BinaryMatrix.from_support(k, k, [(i, k - i + 1) for i in range(1, k + 1)])


# the 4x3 pattern whose class together with D_4 is row-bounded but not column-bounded
COUNTER_P = BinaryMatrix.from_support(4, 3, [(1, 2), (2, 1), (3, 2), (4, 3)])


_SPEC_RE = re.compile(
    r"^(?:(?P<q>Q[1-4])|(?P<kind>Dk|aDk|Rk):(?P<k>\d+)|ones:(?P<a>\d+)x(?P<b>\d+))$"
)


def named(spec: str) -> BinaryMatrix:
    """Build a pattern from its name: ``Q1``..``Q4``, ``Dk:<k>``, ``aDk:<k>``,
    ``Rk:<k>`` or ``ones:<a>x<b>``."""
    mt = _SPEC_RE.match(spec.strip())
    if mt is None:
        raise UsageError(f"unknown pattern name {spec!r}")
    if mt["q"]:
        return q_pattern(mt["q"])
    if mt["kind"]:
        k = int(mt["k"])
        if k < 1:
            raise UsageError("pattern size must be positive")
        return {"Dk": diagonal, "aDk": anti_diagonal, "Rk": row_pattern}[mt["kind"]](k)
    a, b = int(mt["a"]), int(mt["b"])
    if a < 1 or b < 1:
        raise UsageError("pattern size must be positive")
    return BinaryMatrix.ones(a, b)


def parse_pattern_spec(spec: str) -> BinaryMatrix:
    """A named pattern, or ``@path`` to a file in the matrix text format."""
    spec = spec.strip()
    if spec.startswith("@"):
        try:
            text = Path(spec[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read pattern file: {exc}") from None
        return BinaryMatrix.parse(text)
    return named(spec)


def parse_forbidden_specs(specs: str) -> list[BinaryMatrix]:
    """Comma-separated pattern specs."""
    out = [parse_pattern_spec(s) for s in specs.split(",") if s.strip()]
    if not out:
        raise UsageError("empty forbidden-pattern list")
    return out


# -- occurrences of the Q patterns ------------------------------------------


def find_q_occurrence(p: BinaryMatrix, name: str) -> tuple[int, ...] | None:
    """Lexicographically smallest ``(r1, r2, r3, c1, c2, c3)`` with
    ``p(r_t, c_perm(t)) = 1`` for the permutation of ``name``."""
    perm = Q_PERMUTATIONS[name]
    ones = p.support()
    for rows in combinations(range(1, p.rows + 1), 3):
        for cols in combinations(range(1, p.cols + 1), 3):
            if all((rows[t], cols[perm[t] - 1]) in ones for t in range(3)):
                return rows + cols
    return None


def find_q1_occurrence(p: BinaryMatrix) -> tuple[int, ...] | None:
    return find_q_occurrence(p, "Q1")


# -- the unbounded-complexity witness --------------------------------------


@dataclass(frozen=True)
class WitnessSpec:
    pattern: BinaryMatrix
    r1: int
    r2: int
    r3: int
    c1: int
    c2: int
    c3: int
    p: int

    def __post_init__(self):
        P = self.pattern
        if not (1 <= self.r1 < self.r2 < self.r3 <= P.rows):
            raise UsageError("witness rows must satisfy r1 < r2 < r3 inside the pattern")
        if not (1 <= self.c1 < self.c2 < self.c3 <= P.cols):
            raise UsageError("witness columns must satisfy c1 < c2 < c3 inside the pattern")
        if not (P[self.r1, self.c2] and P[self.r2, self.c1] and P[self.r3, self.c3]):
            raise UsageError("(r1,c2), (r2,c1), (r3,c3) must be 1-entries of the pattern")
        if self.p < 1:
            raise UsageError("repetition count p must be at least 1")

    @property
    def block_height(self) -> int:
        return self.r3 - self.r1

    @property
    def block_width(self) -> int:
        return self.c3 - self.c1 + 1

    @property
    def rows(self) -> int:
        return self.r1 + self.p * self.block_height + (self.pattern.rows - self.r3)

    @property
    def cols(self) -> int:
        return (self.c1 - 1) + self.p * self.block_width + (self.pattern.cols - self.c3)

    def zero_columns(self) -> list[int]:
        """Columns of the 0-entries placed in row r1."""
        return [self.c2 + i * self.block_width for i in range(self.p)]


def witness_spec(P: BinaryMatrix, p: int) -> WitnessSpec:
    occ = find_q1_occurrence(P)
    if occ is None:
        raise UsageError("the pattern does not contain Q1")
    return WitnessSpec(P, *occ, p=p)


def build_witness(spec: WitnessSpec) -> BinaryMatrix:
    P = spec.pattern
    m, n = spec.rows, spec.cols
    h, w = spec.block_height, spec.block_width
    full = (1 << n) - 1
    left = spec.c1 - 1
    right = P.cols - spec.c3
    frame_cols = ((1 << left) - 1) | (((1 << right) - 1) << (n - right))
    masks = []
    for r in range(1, m + 1):
        if r < spec.r1 or r > m - (P.rows - spec.r3):
            masks.append(full)
        elif r == spec.r1:
            row = full
            for c in spec.zero_columns():
                row &= ~(1 << (c - 1))
            masks.append(row)
        else:
            i = (r - spec.r1 - 1) // h
            j = spec.p - 1 - i
            c0 = spec.c1 + j * w
            masks.append(frame_cols | (((1 << w) - 1) << (c0 - 1)))
    return BinaryMatrix.from_masks(masks, n)


def witness(P: BinaryMatrix, p: int) -> BinaryMatrix:
    """A P-avoider whose row r1 has p 0-runs that survive saturation.

    Requires Q1 to be an interval minor of P."""
    return build_witness(witness_spec(P, p))


@dataclass(frozen=True)
class OrientedWitness:
    matrix: BinaryMatrix
    transform: Transform  # maps the given pattern onto the Q1-containing orientation
    spec: WitnessSpec  # in the Q1 orientation
    special_line: tuple[str, int]  # ("row" | "column", index) carrying the p 0-runs


def witness_any_q(P: BinaryMatrix, p: int) -> OrientedWitness:
    """Witness for any pattern containing some Q_i: orient P so that it
    contains Q1, build, and map back."""
    for name in ("Q1", "Q2", "Q3", "Q4"):
        if contains(P, q_pattern(name)):
            t = Q_TO_Q1[name]
            spec = witness_spec(apply_transform(P, t), p)
            inv = t.inverse()
            M = apply_transform(build_witness(spec), inv)
            i, _ = map_entry(inv, (spec.r1, 1), (spec.rows, spec.cols))
            return OrientedWitness(M, t, spec, ("row", i))
    raise UsageError("the pattern contains none of Q1..Q4")


def counterexample_column_witness(p: int) -> BinaryMatrix:
    """Transposed witness for the 4x3 counterexample pattern: avoids D_4 and
    the pattern and keeps p 0-runs in column 1 after saturation."""
    if p < 1:
        raise UsageError("p must be at least 1")
    return witness(COUNTER_P.transpose(), p).transpose()


# -- small families ---------------------------------------------------------


def critical_rk(m: int, n: int, k: int) -> BinaryMatrix:
    """Critical R_k-avoider whose support is the rightmost min(k-1, n) columns."""
    if m < 1 or n < 1 or k < 1:
        raise UsageError("dimensions and k must be positive")
    w = min(k - 1, n)
    mask = ((1 << w) - 1) << (n - w)
    return BinaryMatrix.from_masks([mask] * m, n)


def walk_entries(start: Entry, steps: str) -> list[Entry]:
    """Entries visited by a monotone walk; ``R`` steps right, ``U`` up, ``D`` down.
    A walk may not mix ``U`` and ``D``."""
    steps = steps.upper()
    if set(steps) - set("RUD") or ("U" in steps and "D" in steps):
        raise UsageError(f"invalid step sequence {steps!r}")
    cells = [start]
    i, j = start
    for s in steps:
        if s == "R":
            j += 1
        elif s == "U":
            i -= 1
        else:
            i += 1
        cells.append((i, j))
    return cells


def walk_matrix(rows: int, cols: int, start: Entry, steps: str) -> BinaryMatrix:
    cells = walk_entries(start, steps)
    for i, j in cells:
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise UsageError(f"walk leaves the {rows}x{cols} grid at {(i, j)}")
    return BinaryMatrix.from_support(rows, cols, cells)

