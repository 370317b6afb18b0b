"""Regenerate bounding_baseline.json: class row-complexity on 4x4 and 4x5 for
every row-bounding pattern up to 3x3 that has a 1-entry.

Values come from the vectorised partition tables.  A sample of patterns is
recomputed on 4x4 with a scalar loop over the contraction oracle before
anything is written.

    python3 tests/data/generate_baseline.py
"""
import json
from pathlib import Path

from imkit.containment import contains_oracle
from imkit.experiments import all_matrices, bounding_class_complexities
from imkit.matrix import BinaryMatrix, row_complexity

OUT = Path(__file__).with_name("bounding_baseline.json")
SAMPLE = ["1x1:1", "1x2:3", "2x2:9", "2x2:15", "3x3:273", "3x3:84", "2x3:63", "3x2:21"]


def scalar_class_rc(P: BinaryMatrix, m: int, n: int) -> int:
    member = {M.code for M in all_matrices(m, n) if not contains_oracle(M, P)}
    best = 0
    for code in member:
        flips = [code | (1 << b) for b in range(m * n) if not code >> b & 1]
        if all(f not in member for f in flips):
            best = max(best, row_complexity(BinaryMatrix.from_code(code, m, n)))
    return best


def main() -> None:
    values = bounding_class_complexities()
    for key in SAMPLE:
        shape, code = key.split(":")
        k, l = map(int, shape.split("x"))
        P = BinaryMatrix.from_code(int(code), k, l)
        got = scalar_class_rc(P, 4, 4)
        assert values[key]["4x4"] == got, (key, values[key], got)
    OUT.write_text(json.dumps(values, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(values)} entries to {OUT}")


if __name__ == "__main__":
    main()
