"""Command-line interface: ``imkit <command> ...``.

Every command prints one JSON document (``enumerate`` streams matrices first).
Exit codes: 0 success or a "yes" answer, 1 a "no" answer from a decision
command, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import experiments
from .classify import (
    classify,
    longest_decreasing_chain,
    longest_increasing_chain,
    max_independent_ones,
    min_line_cover,
    walk_cover,
)
from .construct import parse_forbidden_specs, parse_pattern_spec, witness_any_q
from .containment import (
    ORACLE_MAX_CELLS,
    contains,
    contains_oracle,
    contains_pinned,
    contains_pinned_oracle,
    find_partition,
    find_pinned_partition,
)
from .criticality import SaturationOrder, criticality_report, is_critical, saturate
from .errors import UsageError
from .matrix import Axis, BinaryMatrix, LineRef, line_complexity
from . import tables


def dump(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def read_matrix(source: str) -> BinaryMatrix:
    """A matrix from a path or '-' (stdin), as text rows or JSON."""
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc}") from None
    stripped = text.strip()
    if stripped and stripped[0] in "[{":
        try:
            data = json.loads(stripped)
        except ValueError as exc:
            raise UsageError(f"invalid JSON matrix: {exc}") from None
        if isinstance(data, dict):
            if "matrix" not in data:
                raise UsageError('JSON input needs a "matrix" field')
            data = data["matrix"]
        return _matrix_from_json(data)
    return BinaryMatrix.parse(text)


def _matrix_from_json(rows) -> BinaryMatrix:
    if not isinstance(rows, list) or not rows:
        raise UsageError("JSON matrix must be a nonempty list of rows")
    if all(isinstance(r, str) for r in rows):
        return BinaryMatrix.parse("\n".join(rows))
    try:
        return BinaryMatrix([[int(x) for x in r] for r in rows])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid JSON matrix: {exc}") from None


_PIN_RE = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*=>\s*(\d+)\s*,\s*(\d+)\s*$")


def parse_pin(text: str):
    mt = _PIN_RE.match(text)
    if mt is None:
        raise UsageError(f"pin must look like 'i,j=>i*,j*', got {text!r}")
    a, b, c, d = map(int, mt.groups())
    return (a, b), (c, d)


def parse_order(text: str):
    if text in ("row", "column"):
        return SaturationOrder(text)
    entries = []
    for part in text.split(";"):
        mt = re.match(r"^\s*(\d+)\s*,\s*(\d+)\s*$", part)
        if mt is None:
            raise UsageError(f"order must be 'row', 'column' or 'i,j;i,j;...', got {text!r}")
        entries.append((int(mt[1]), int(mt[2])))
    return entries


# -- commands ------------------------------------------------------------------


def cmd_contains(args) -> tuple[dict, int]:
    host = read_matrix(args.host)
    pattern = parse_pattern_spec(args.pattern)
    out: dict = {}
    if args.pin:
        e, f = parse_pin(args.pin)
        answer = contains_pinned(host, pattern, e, f)
        out["pin"] = {"pattern": list(e), "host": list(f)}
        if args.witness and answer:
            out["witness"] = find_pinned_partition(host, pattern, e, f).to_json()
        if args.oracle:
            slow = contains_pinned_oracle(host, pattern, e, f, args.guard_cells)
            out["oracle"] = slow
            out["agree"] = slow == answer
    else:
        answer = contains(host, pattern)
        if args.witness and answer:
            out["witness"] = find_partition(host, pattern).to_json()
        if args.oracle:
            slow = contains_oracle(host, pattern, args.guard_cells)
            out["oracle"] = slow
            out["agree"] = slow == answer
    out["contains"] = answer
    return out, 0 if answer else 1


def cmd_classify(args) -> tuple[dict, int]:
    report = classify(parse_pattern_spec(args.pattern))
    return report.to_json(), 0 if report.row_bounding else 1


def cmd_saturate(args) -> tuple[dict, int]:
    order = parse_order(args.order)
    host = read_matrix(args.host)
    F = parse_forbidden_specs(args.forbidden)
    result = saturate(host, F, order)
    return {
        "matrix": result.to_json(),
        "added": result.count_ones() - host.count_ones(),
        "critical": is_critical(result, F),
    }, 0


def _complexity_json(m: BinaryMatrix) -> dict:
    rows = [line_complexity(m, LineRef(Axis.ROW, i)) for i in range(1, m.rows + 1)]
    cols = [line_complexity(m, LineRef(Axis.COLUMN, j)) for j in range(1, m.cols + 1)]
    return {
        "rowComplexity": max(rows),
        "colComplexity": max(cols),
        "rows": rows,
        "cols": cols,
    }


def cmd_complexity(args) -> tuple[dict, int]:
    return _complexity_json(read_matrix(args.host)), 0


def cmd_witness(args) -> tuple[dict, int]:
    if args.p < 1:
        raise UsageError("p must be at least 1")
    w = witness_any_q(parse_pattern_spec(args.pattern), args.p)
    s = w.spec
    return {
        "matrix": w.matrix.to_json(),
        "transform": w.transform.name,
        "specialLine": {"axis": w.special_line[0], "index": w.special_line[1]},
        "occurrence": {"rows": [s.r1, s.r2, s.r3], "cols": [s.c1, s.c2, s.c3]},
        "p": s.p,
    }, 0


def cmd_cover(args) -> tuple[dict, int]:
    m = read_matrix(args.host)
    cover = min_line_cover(m)
    out = {
        "size": cover.size,
        "lines": [
            {"axis": l.axis.value, "index": l.index}
            for l in sorted(cover.lines, key=lambda l: (l.axis.value, l.index))
        ],
        "independentOnes": [list(e) for e in max_independent_ones(m)],
        "increasingChain": longest_increasing_chain(m),
        "decreasingChain": longest_decreasing_chain(m),
    }
    if args.walks is not None:
        wc = walk_cover(m, args.walks)
        out["walks"] = None if wc is None else [[list(e) for e in w] for w in wc.walks]
    return out, 0


def cmd_enumerate(args, stream) -> tuple[dict, int]:
    F = parse_forbidden_specs(args.forbidden)
    m, n = args.m, args.n
    codes = tables.critical_codes(F, m, n, args.guard_cells)
    rcs = tables.row_complexities(codes, m, n) if codes.size else []
    best = int(max(rcs)) if codes.size else None
    first = next((i for i, v in enumerate(rcs) if v == best), None)
    for idx, code in enumerate(codes):
        if args.max_row_complexity and idx != first:
            continue
        stream.write(BinaryMatrix.from_code(int(code), m, n).to_text() + "\n\n")
    return {"count": int(codes.size), "maxRowComplexity": best, "witnessIndex": first}, 0


def cmd_critical_map(args) -> tuple[dict, int]:
    host = read_matrix(args.host)
    return criticality_report(host, parse_forbidden_specs(args.forbidden)).to_json(), 0


def _run_experiment(args) -> experiments.ExperimentResult:
    name = args.name
    if name == "pro-counter":
        return experiments.pro_counter(range(2, (args.p or 5) + 1), args.size or 4)
    if name == "pro-unbinter":
        return experiments.pro_unbinter(args.size or 4)
    if name == "lem-2types":
        return experiments.two_types_scan(args.max_dim or 4)
    if name == "dichotomy":
        return experiments.dichotomy(args.p or 6)
    if name == "containment":
        s = args.size or 4
        return experiments.containment_equivalence(s, s)
    if name == "walks":
        s = args.size or 4
        return experiments.walk_machinery(s, s)
    if name == "konig":
        return experiments.konig()
    if name == "structure":
        return experiments.structure_scan(args.max_dim or 4)
    if name == "boundunion":
        s = args.size or 4
        return experiments.union_intersection(s, s)
    if name == "obs-empty":
        return experiments.empty_column()
    if name == "bounding":
        if not args.baseline:
            raise UsageError("experiment bounding needs --baseline FILE")
        return experiments.bounding_regression(experiments.load_baseline(args.baseline))
    raise UsageError(f"unknown experiment {name!r}")


EXPERIMENTS = (
    "pro-counter", "pro-unbinter", "lem-2types", "dichotomy",
    "containment", "walks", "konig", "structure", "boundunion", "obs-empty", "bounding",
)


def cmd_experiment(args) -> tuple[dict, int]:
    result = _run_experiment(args)
    return result.to_json(), 0 if result.passed else 1


# -- parser ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="imkit", description="Interval minors and critical avoiders of binary matrices.")
    p.add_argument("--pretty", action="store_true", help="indented JSON")
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indented JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("contains", parents=[common], help="decide pattern containment")
    c.add_argument("host", help="matrix file or '-'")
    c.add_argument("pattern", help="pattern spec (Q1, Dk:3, ones:2x2, @file, ...)")
    c.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    c.add_argument("--witness", action="store_true", help="emit a partition witness")
    c.add_argument("--pin", help="pinned query 'i,j=>i*,j*'")
    c.add_argument("--guard-cells", type=int, default=ORACLE_MAX_CELLS)

    c = sub.add_parser("classify", parents=[common], help="classify a pattern")
    c.add_argument("pattern")

    c = sub.add_parser("saturate", parents=[common], help="greedy saturation within a class")
    c.add_argument("host")
    c.add_argument("forbidden", help="comma-separated pattern specs")
    c.add_argument("--order", default="row", help="row, column or 'i,j;i,j;...'")

    c = sub.add_parser("complexity", parents=[common], help="row and column complexities")
    c.add_argument("host")

    c = sub.add_parser("witness", parents=[common], help="unbounded-complexity witness")
    c.add_argument("pattern")
    c.add_argument("p", type=int)

    c = sub.add_parser("cover", parents=[common], help="minimum line cover and chains")
    c.add_argument("host")
    c.add_argument("--walks", type=int, metavar="K", help="also return a walk cover for D_K")

    c = sub.add_parser("enumerate", parents=[common], help="list critical members of a class")
    c.add_argument("forbidden")
    c.add_argument("m", type=int)
    c.add_argument("n", type=int)
    c.add_argument("--max-row-complexity", action="store_true",
                   help="print only the first matrix of maximum row-complexity")
    c.add_argument("--guard-cells", type=int, default=tables.ENUMERATION_MAX_CELLS)

    c = sub.add_parser("critical-map", parents=[common], help="criticality report")
    c.add_argument("host")
    c.add_argument("forbidden")

    c = sub.add_parser("experiment", parents=[common], help="run a reproduction experiment")
    c.add_argument("name", choices=EXPERIMENTS)
    c.add_argument("--max-dim", type=int)
    c.add_argument("--size", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--baseline")
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        handlers = {
            "contains": cmd_contains,
            "classify": cmd_classify,
            "saturate": cmd_saturate,
            "complexity": cmd_complexity,
            "witness": cmd_witness,
            "cover": cmd_cover,
            "critical-map": cmd_critical_map,
            "experiment": cmd_experiment,
        }
        if args.command == "enumerate":
            out, code = cmd_enumerate(args, stdout)
        else:
            out, code = handlers[args.command](args)
    except UsageError as exc:
        print(f"imkit: error: {exc}", file=stderr)
        return 2
    print(dump(out, args.pretty), file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
