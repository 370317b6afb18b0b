# Saturation and line complexity.
#
# A matrix avoiding a set F is critical if flipping any 0 to 1 creates a copy of
# some pattern in F. The row complexity counts 0-runs in the worst row.

from imkit import (
    BinaryMatrix, Q, class_row_complexity, criticality_report, diagonal,
    enumerate_critical, is_critical, row_complexity, saturate,
)

F = [diagonal(2)]
start = BinaryMatrix.zeros(3, 4)
sat = saturate(start, F)
print("saturating the 3x4 zero matrix inside Av(D2):")
print(sat.to_text())
print("critical:", is_critical(sat, F), " row complexity:", row_complexity(sat))

report = criticality_report(sat, F)
print("report:", report.to_json())

# Exhaustive enumeration of the critical members, here for Av(Q1) on 3x3.
members = list(enumerate_critical([Q(1)], 3, 3))
print(f"\n{len(members)} critical Q1-avoiders on 3x3, for example:")
print(members[0].to_text())

value, attained = class_row_complexity([Q(1)], 4, 4)
print("\nlargest row complexity among critical 4x4 Q1-avoiders:", value)
print(attained.to_text())
