# Which patterns keep row complexity bounded?
#
# A pattern bounds the row complexity of its critical avoiders exactly when it
# avoids all of Q1..Q4. Containing one of them means we can build avoiders
# whose special row has as many 0-runs as we like, and saturation keeps them.

from imkit import (
    COUNTER_P, Q, classify, diagonal, is_critical, is_row_bounding, q_witness, row_complexity,
    saturate, witness_any_q,
)
from imkit.matrix import LineRef, Axis, line_complexity

for name, P in [("Q1", Q(1)), ("Q3", Q(3)), ("4x3 pattern", COUNTER_P)]:
    print(f"{name}: row-bounding={is_row_bounding(P)}  witness={q_witness(P)}")

P = Q(2)
for p in (2, 3, 4):
    w = witness_any_q(P, p)
    sat = saturate(w.matrix, [P])
    axis, idx = w.special_line
    line = LineRef(Axis(axis), idx)
    print(
        f"p={p}: witness {w.matrix.shape}, special {axis} {idx} keeps "
        f"{line_complexity(sat, line)} 0-runs, critical={is_critical(sat, [P])}, "
        f"row complexity {row_complexity(sat)}"
    )

print("\nsaturated witness for p=3:")
print(saturate(witness_any_q(P, 3).matrix, [P]).to_text())

# A bounding pattern gets a certificate for each of its 1-entries.
rep = classify(diagonal(3))
for item in rep.to_json()["entryCertificates"]:
    print(item["entry"], item["certificates"])
