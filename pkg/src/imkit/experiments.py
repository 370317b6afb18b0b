"""Reproduction experiments: exhaustive and constructive checks of the
containment equivalences, the bounding dichotomy and the structural results,
each returning a pass flag with counters."""
from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from . import tables
from .classify import (
    LineCover,
    avoids_dk,
    entry_certificates,
    is_increasing_walk,
    is_row_bounding,
    match_two_types,
    max_independent_ones,
    meets_two_types_hypotheses,
    min_line_cover,
    structure_classify,
    walk_cover,
)
from .construct import (
    COUNTER_P,
    Q_PERMUTATIONS,
    anti_diagonal,
    counterexample_column_witness,
    diagonal,
    q_pattern,
    row_pattern,
    witness_any_q,
)
from .containment import (
    ORACLE_MAX_CELLS,
    avoids_all,
    contains,
    contains_oracle,
    embedding_from_partition,
    find_partition,
    verify_embedding,
    verify_partition,
)
from .criticality import (
    class_row_complexity,
    enumerate_critical,
    is_critical,
    relative_column_complexity,
    relative_line_complexities,
    relative_row_complexity,
    saturate,
)
from .errors import UsageError
from .matrix import (
    ROW_PRESERVING,
    Axis,
    BinaryMatrix,
    LineRef,
    append_empty_column,
    apply_transform,
    column_complexity,
    drop_last_column,
    row_complexity,
)


@dataclass
class ExperimentResult:
    name: str
    passed: bool
    counters: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "experiment": self.name,
            "passed": self.passed,
            "counters": self.counters,
            "failures": self.failures[:20],
        }


def worker_count() -> int:
    """Workers allowed by IMKIT_THREADS (0 or unset means one per CPU)."""
    raw = os.environ.get("IMKIT_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"IMKIT_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("IMKIT_THREADS must be non-negative")
    return n or (os.cpu_count() or 1)


def _parallel_map(fn: Callable, items: list) -> list:
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def all_matrices(m: int, n: int) -> Iterator[BinaryMatrix]:
    for code in range(1 << (m * n)):
        yield BinaryMatrix.from_code(code, m, n)


def all_patterns(max_rows: int, max_cols: int) -> Iterator[BinaryMatrix]:
    """Every pattern with at most the given dimensions, by shape then code."""
    for k in range(1, max_rows + 1):
        for l in range(1, max_cols + 1):
            yield from all_matrices(k, l)


def pattern_key(P: BinaryMatrix) -> str:
    return f"{P.rows}x{P.cols}:{P.code}"


FIXTURE_PATTERNS = {
    "R2": row_pattern(2),
    "R3": row_pattern(3),
    "D2": diagonal(2),
    "aD2": anti_diagonal(2),
    "D3": diagonal(3),
    "Q1": q_pattern("Q1"),
    "Q2": q_pattern("Q2"),
    "Q3": q_pattern("Q3"),
    "Q4": q_pattern("Q4"),
    "ones:2x2": BinaryMatrix.ones(2, 2),
}


# -- containment --------------------------------------------------------------


def containment_equivalence(m: int = 4, n: int = 4, patterns: dict | None = None) -> ExperimentResult:
    """contains agrees with the oracle on every m x n host, and each positive
    answer comes with a verified partition and embedding."""
    patterns = FIXTURE_PATTERNS if patterns is None else patterns
    checked = positives = 0
    failures = []
    for host in all_matrices(m, n):
        for name, P in patterns.items():
            checked += 1
            fast, slow = contains(host, P), contains_oracle(host, P)
            if fast != slow:
                failures.append({"host": host.to_json(), "pattern": name, "contains": fast})
                continue
            if fast:
                positives += 1
                part = find_partition(host, P)
                if part is None or not verify_partition(host, P, part):
                    failures.append({"host": host.to_json(), "pattern": name, "bad": "partition"})
                elif not verify_embedding(host, P, embedding_from_partition(host, P, part)):
                    failures.append({"host": host.to_json(), "pattern": name, "bad": "embedding"})
    return ExperimentResult(
        "containment-equivalence",
        not failures,
        {"pairs": checked, "positives": positives, "hosts": 1 << (m * n)},
        failures,
    )


# -- the dichotomy -------------------------------------------------------------


def _line_mask(M: BinaryMatrix, line: tuple[str, int]) -> int:
    kind, idx = line
    return M.row_masks[idx - 1] if kind == "row" else M.col_masks[idx - 1]


def non_bounding(ps=range(2, 7), names=tuple(Q_PERMUTATIONS)) -> ExperimentResult:
    """For each Q_i and p: the witness avoids Q_i, saturation keeps its special
    row, and the saturated matrix is critical with row-complexity >= p."""
    rows = []
    failures = []
    for name in names:
        P = q_pattern(name)
        for p in ps:
            W = witness_any_q(P, p)
            M = W.matrix
            if M.rows * M.cols <= ORACLE_MAX_CELLS:
                avoid = not contains_oracle(M, P)
            else:
                avoid = not contains(M, P)
            S = saturate(M, [P])
            intact = _line_mask(S, W.special_line) == _line_mask(M, W.special_line)
            crit = is_critical(S, [P])
            rc = row_complexity(S)
            ok = avoid and intact and crit and rc >= p
            rows.append({"pattern": name, "p": p, "shape": list(M.shape), "rowComplexity": rc})
            if not ok:
                failures.append(
                    {"pattern": name, "p": p, "avoids": avoid, "rowIntact": intact,
                     "critical": crit, "rowComplexity": rc}
                )
    return ExperimentResult("non-bounding", not failures, {"cases": rows}, failures)


def certificate_scan(max_rows: int = 3, max_cols: int = 3) -> ExperimentResult:
    """Every 1-entry of every bounding pattern carries a certificate."""
    bounding = entries = 0
    failures = []
    for P in all_patterns(max_rows, max_cols):
        if not is_row_bounding(P):
            continue
        bounding += 1
        for e in P.iter_ones():
            entries += 1
            if not entry_certificates(P, e):
                failures.append({"pattern": P.to_json(), "entry": list(e)})
    return ExperimentResult(
        "certificates", not failures, {"boundingPatterns": bounding, "entries": entries}, failures
    )


def _orbit_rep(P: BinaryMatrix) -> BinaryMatrix:
    # class row-complexity is invariant under the row-preserving flips
    return min((apply_transform(P, t) for t in ROW_PRESERVING), key=lambda Q: Q.code)


def _class_values(P: BinaryMatrix) -> tuple[int, int]:
    return class_row_complexity([P], 4, 4)[0], class_row_complexity([P], 4, 5)[0]


def bounding_class_complexities(max_rows: int = 3, max_cols: int = 3) -> dict[str, dict[str, int]]:
    """classRowComplexity on 4x4 and 4x5 for every bounding pattern with a
    1-entry, keyed by ``pattern_key``."""
    pats = [P for P in all_patterns(max_rows, max_cols) if not P.is_empty() and is_row_bounding(P)]
    reps = sorted({_orbit_rep(P) for P in pats}, key=pattern_key)
    values = dict(zip(reps, _parallel_map(_class_values, reps)))
    out = {}
    for P in pats:
        a, b = values[_orbit_rep(P)]
        out[pattern_key(P)] = {"4x4": a, "4x5": b}
    return out


def bounding_regression(baseline: dict, max_rows: int = 3, max_cols: int = 3) -> ExperimentResult:
    """Certificates for every bounding pattern plus class complexities compared
    with a stored baseline; any value above the baseline fails."""
    certs = certificate_scan(max_rows, max_cols)
    current = bounding_class_complexities(max_rows, max_cols)
    failures = list(certs.failures)
    changed = 0
    for key, vals in current.items():
        base = baseline.get(key)
        if base is None:
            failures.append({"pattern": key, "missing": "baseline"})
            continue
        if vals != base:
            changed += 1
            if vals["4x4"] > base["4x4"] or vals["4x5"] > base["4x5"]:
                failures.append({"pattern": key, "value": vals, "baseline": base})
    plateau = sum(v["4x4"] == v["4x5"] for v in current.values())
    grows = sum(v["4x5"] > v["4x4"] for v in current.values())
    return ExperimentResult(
        "bounding-regression",
        not failures,
        {
            **certs.counters,
            "patternsMeasured": len(current),
            "plateau4x4eq4x5": plateau,
            "grows4x5": grows,
            "max4x4": max(v["4x4"] for v in current.values()),
            "max4x5": max(v["4x5"] for v in current.values()),
            "differsFromBaseline": changed,
        },
        failures,
    )


# -- chains, walks and line covers ---------------------------------------------


def walk_machinery(m: int = 4, n: int = 4, ks=(2, 3, 4)) -> ExperimentResult:
    checked = covers = 0
    failures = []
    for M in all_matrices(m, n):
        for k in ks:
            checked += 1
            a = avoids_dk(M, k)
            if a == contains(M, diagonal(k)):
                failures.append({"matrix": M.to_json(), "k": k, "bad": "chain"})
                continue
            if not a:
                continue
            covers += 1
            wc = walk_cover(M, k)
            ok = (
                wc is not None
                and len(wc.walks) == k - 1
                and all(is_increasing_walk(w, (m, 1), (1, n)) for w in wc.walks)
                and M.support() <= wc.union()
            )
            if not ok:
                failures.append({"matrix": M.to_json(), "k": k, "bad": "walks"})
    return ExperimentResult(
        "walk-machinery", not failures, {"checked": checked, "walkCovers": covers}, failures
    )


def critical_walk_support(ks=(2, 3), max_dim: int = 4) -> ExperimentResult:
    """Critical D_k-avoiders have support equal to the union of their walks."""
    checked = 0
    failures = []
    for k in ks:
        for m in range(1, max_dim + 1):
            for n in range(1, max_dim + 1):
                for M in enumerate_critical([diagonal(k)], m, n):
                    checked += 1
                    wc = walk_cover(M, k)
                    if wc is None or wc.union() != M.support():
                        failures.append({"matrix": M.to_json(), "k": k})
    return ExperimentResult("critical-walks", not failures, {"checked": checked}, failures)


def _brute_cover_size(M: BinaryMatrix) -> int:
    lines = [LineRef(Axis.ROW, i) for i in range(1, M.rows + 1)]
    lines += [LineRef(Axis.COLUMN, j) for j in range(1, M.cols + 1)]
    for size in range(len(lines) + 1):
        for sub in combinations(lines, size):
            if LineCover(frozenset(sub)).covers(M):
                return size
    raise AssertionError("the full line set always covers")


def konig(samples: int = 1000, seed: int = 0) -> ExperimentResult:
    rng = random.Random(seed)
    mats = list(all_matrices(3, 3))
    mats += [BinaryMatrix.from_code(rng.getrandbits(25), 5, 5) for _ in range(samples)]
    failures = []
    for M in mats:
        cover = min_line_cover(M)
        match = max_independent_ones(M)
        if not (cover.covers(M) and cover.size == len(match) == _brute_cover_size(M)):
            failures.append({"matrix": M.to_json(), "cover": cover.size, "matching": len(match)})
    return ExperimentResult("konig", not failures, {"matrices": len(mats)}, failures)


# -- structure of Q-avoiders ------------------------------------------------------


def structure_scan(max_dim: int = 4) -> ExperimentResult:
    scanned = avoiders = 0
    failures = []
    for P in all_patterns(max_dim, max_dim):
        scanned += 1
        if not is_row_bounding(P):
            continue
        avoiders += 1
        if not structure_classify(P):
            failures.append(P.to_json())
    return ExperimentResult(
        "structure", not failures, {"scanned": scanned, "qAvoiders": avoiders}, failures
    )


def two_types_scan(max_dim: int = 4) -> ExperimentResult:
    scanned = meeting = 0
    by_type = {"Type1": 0, "Type2": 0}
    failures = []
    for P in all_patterns(max_dim, max_dim):
        scanned += 1
        if not meets_two_types_hypotheses(P):
            continue
        meeting += 1
        nf = match_two_types(P)
        if nf is None:
            failures.append(P.to_json())
        else:
            by_type[f"Type{nf.type}"] += 1
    return ExperimentResult(
        "lem-2types",
        not failures,
        {"scanned": scanned, "meetingHypotheses": meeting, **by_type},
        failures,
    )


# -- non-principal classes ----------------------------------------------------------


def pro_counter(ps=range(2, 6), size: int = 4) -> ExperimentResult:
    """The class avoiding D4 and the 4x3 counterexample pattern: column witness
    plus the two-run bound for entry (1,2) on critical members."""
    F = [diagonal(4), COUNTER_P]
    cases = []
    failures = []
    for p in ps:
        M = counterexample_column_witness(p)
        if M.rows * M.cols <= ORACLE_MAX_CELLS:
            avoid = not any(contains_oracle(M, P) for P in F)
        else:
            avoid = avoids_all(M, F)
        S = saturate(M, F) if avoid else M
        cc = column_complexity(S)
        cases.append({"p": p, "shape": list(M.shape), "columnComplexity": cc})
        if not (avoid and cc >= p):
            failures.append({"p": p, "avoids": avoid, "columnComplexity": cc})
    worst = 0
    members = 0
    for M in enumerate_critical(F, size, size):
        members += 1
        rel = max(relative_line_complexities(M, COUNTER_P, (1, 2), Axis.ROW))
        worst = max(worst, rel)
        if rel > 2:
            failures.append({"matrix": M.to_json(), "criticalRuns": rel})
    return ExperimentResult(
        "pro-counter",
        not failures,
        {"witnesses": cases, "criticalMembers": members, "maxCriticalRunsPerRow": worst},
        failures,
    )


def pro_unbinter(size: int = 4) -> ExperimentResult:
    """Every member of the class avoiding Q1 and Q2 has at most two 0-runs per
    row critical for (1,2) of Q1, and per column for (2,1)."""
    Q1, Q2 = q_pattern("Q1"), q_pattern("Q2")
    member = tables.avoidance_table([Q1, Q2], size, size)
    worst_row = worst_col = 0
    failures = []
    codes = np.flatnonzero(member)
    for code in codes:
        M = BinaryMatrix.from_code(int(code), size, size)
        r = relative_row_complexity(M, Q1, (1, 2))
        c = relative_column_complexity(M, Q1, (2, 1))
        worst_row, worst_col = max(worst_row, r), max(worst_col, c)
        if r > 2 or c > 2:
            failures.append({"matrix": M.to_json(), "row": r, "column": c})
    return ExperimentResult(
        "pro-unbinter",
        not failures,
        {"members": int(codes.size), "maxCriticalRunsPerRow": worst_row,
         "maxCriticalRunsPerColumn": worst_col},
        failures,
    )


def _class_rc(member: np.ndarray, m: int, n: int) -> int:
    crit = np.flatnonzero(tables.critical_table(member, m, n))
    return int(tables.row_complexities(crit, m, n).max()) if crit.size else 0


def union_intersection(m: int = 4, n: int = 4) -> ExperimentResult:
    """Row-complexity of the union and intersection of Av(D2) and Av(R2)
    against max(K1, K2) and K1 + K2."""
    a = tables.avoidance_table([diagonal(2)], m, n)
    b = tables.avoidance_table([row_pattern(2)], m, n)
    k1, k2 = _class_rc(a, m, n), _class_rc(b, m, n)
    ku, ki = _class_rc(a | b, m, n), _class_rc(a & b, m, n)
    ok = ku <= max(k1, k2) and ki <= k1 + k2
    return ExperimentResult(
        "union-intersection",
        ok,
        {"K1": k1, "K2": k2, "union": ku, "intersection": ki},
        [] if ok else [{"union": ku, "intersection": ki}],
    )


def empty_column(m: int = 4, n: int = 4) -> ExperimentResult:
    """Appending an empty column to a 2x2 pattern: avoidance reduces to the
    host without its last column, and critical avoiders are exactly those with
    a full last column over a critical avoider of the original pattern."""
    failures = []
    pairs = 0
    full_last = BinaryMatrix.ones(m, 1).col_masks[0]
    for P in all_matrices(2, 2):
        Pp = append_empty_column(P)
        for M in all_matrices(m, n):
            pairs += 1
            if contains(M, Pp) != contains(drop_last_column(M), P):
                failures.append({"pattern": P.to_json(), "host": M.to_json()})
        padded = set(enumerate_critical([Pp], m, n))
        expected = set()
        for C in enumerate_critical([P], m, n - 1):
            expected.add(BinaryMatrix.from_masks(
                [mask | (1 << (n - 1)) for mask in C.row_masks], n))
        if padded != expected:
            failures.append({"pattern": P.to_json(), "critical": "mismatch"})
        for M in padded:
            if M.col_masks[-1] != full_last:
                failures.append({"pattern": P.to_json(), "lastColumn": M.to_json()})
    return ExperimentResult("obs-empty", not failures, {"pairs": pairs}, failures)


# -- registry -----------------------------------------------------------------------


def load_baseline(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read baseline {path}: {exc}") from None


def dichotomy(p: int = 6) -> ExperimentResult:
    """Both sides of the dichotomy: witnesses for Q1..Q4 up to p, and
    certificates for every bounding pattern up to 3x3."""
    if p < 2:
        raise UsageError("p must be at least 2")
    a = non_bounding(range(2, p + 1))
    b = certificate_scan()
    return ExperimentResult(
        "dichotomy",
        a.passed and b.passed,
        {"nonBounding": a.counters["cases"], **b.counters},
        a.failures + b.failures,
    )
