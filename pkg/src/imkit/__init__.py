"""Interval-minor containment and critical pattern-avoiding binary matrices."""
from .classify import (
    ClassificationReport,
    LineCover,
    NormalForm,
    StructureCase,
    WalkCover,
    avoids_anti_dk,
    avoids_dk,
    classify,
    entry_certificates,
    is_row_bounding,
    longest_decreasing_chain,
    longest_increasing_chain,
    match_two_types,
    max_independent_ones,
    min_line_cover,
    normal_form_2types,
    q_witness,
    structure_classify,
    walk_cover,
)
from .construct import (
    COUNTER_P,
    Q,
    anti_diagonal,
    counterexample_column_witness,
    critical_rk,
    diagonal,
    find_q1_occurrence,
    named,
    row_pattern,
    walk_matrix,
    witness,
    witness_any_q,
)
from .containment import (
    EmbeddingMap,
    Partition,
    avoids_all,
    contains,
    contains_oracle,
    contains_pinned,
    find_embedding,
    find_partition,
    verify_embedding,
    verify_partial_embedding,
    verify_partition,
)
from .criticality import (
    CriticalityReport,
    SaturationOrder,
    class_column_complexity,
    class_row_complexity,
    critical_entries_for,
    criticality_report,
    enumerate_critical,
    is_critical,
    relative_column_complexity,
    relative_row_complexity,
    saturate,
)
from .errors import UsageError
from .matrix import (
    Axis,
    BinaryMatrix,
    Interval,
    LineRef,
    Transform,
    apply_transform,
    column_complexity,
    contract_line,
    dominates,
    row_complexity,
    submatrix,
    zero_runs,
)

__version__ = "0.1.0"
