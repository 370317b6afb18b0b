import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from imkit.construct import Q, anti_diagonal, critical_rk, diagonal, row_pattern
from imkit.containment import (
    EmbeddingMap,
    Partition,
    avoids_all,
    canonical_partitions,
    contains,
    contains_oracle,
    contains_pinned,
    contains_pinned_oracle,
    embedding_from_partition,
    find_embedding,
    find_partition,
    find_pinned_partition,
    verify_embedding,
    verify_partial_embedding,
    verify_partition,
)
from imkit.errors import UsageError
from imkit.matrix import (
    Axis,
    BinaryMatrix,
    LineRef,
    Transform,
    append_empty_column,
    apply_transform,
    contract_line,
    dominates,
    drop_last_column,
    zero_runs,
)

FIXTURES = [
    row_pattern(2), row_pattern(3), diagonal(2), anti_diagonal(2), diagonal(3),
    Q(1), Q(2), Q(3), Q(4), BinaryMatrix.ones(2, 2),
]


def all_matrices(m, n):
    return [BinaryMatrix.from_code(c, m, n) for c in range(1 << (m * n))]


def by_contractions(host, pattern):
    """Independent oracle: search every sequence of contractions."""
    k, l = pattern.shape
    seen = set()
    stack = [host]
    while stack:
        h = stack.pop()
        if h in seen:
            continue
        seen.add(h)
        if h.shape == (k, l):
            if dominates(h, pattern):
                return True
            continue
        if h.rows > k:
            stack += [contract_line(h, Axis.ROW, i) for i in range(1, h.rows)]
        if h.cols > l:
            stack += [contract_line(h, Axis.COLUMN, j) for j in range(1, h.cols)]
    return False


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return BinaryMatrix.from_code(draw(st.integers(0, (1 << (m * n)) - 1)), m, n)


# -- examples --


def test_contains_examples():
    id4 = diagonal(4)
    assert contains(Q(1), Q(1))
    assert contains(id4, diagonal(2))
    assert not contains(id4, anti_diagonal(2))
    # Q4 against Q1 is fixed by the contraction oracle
    assert contains(Q(4), Q(1)) == by_contractions(Q(4), Q(1)) == contains_oracle(Q(4), Q(1))
    assert not contains(Q(4), Q(1))


def test_dimension_rule_for_empty_patterns():
    assert contains(BinaryMatrix.zeros(3, 3), BinaryMatrix.zeros(2, 2))
    assert not contains(BinaryMatrix.zeros(3, 3), BinaryMatrix.zeros(1, 4))


def test_oracle_examples_and_guard():
    assert not contains_oracle(BinaryMatrix.zeros(4, 4), Q(1))
    one = BinaryMatrix.ones(1, 1)
    for m in all_matrices(2, 3):
        assert contains_oracle(m, one) == (not m.is_empty())
    with pytest.raises(UsageError):
        contains_oracle(BinaryMatrix.zeros(7, 7), Q(1))


def test_find_partition_examples():
    p = find_partition(Q(1), Q(1))
    assert p.row_bounds == (0, 1, 2, 3) and p.col_bounds == (0, 1, 2, 3)
    ones4, ones2 = BinaryMatrix.ones(4, 4), BinaryMatrix.ones(2, 2)
    assert verify_partition(ones4, ones2, Partition((0, 2, 4), (0, 2, 4), (2, 2), (4, 4)))
    assert verify_partition(ones4, ones2, find_partition(ones4, ones2))
    assert p.to_json() == {"rowBounds": [0, 1, 2, 3], "colBounds": [0, 1, 2, 3]}


def test_inflated_host_groups_duplicates():
    # Q1 with its middle row and middle column duplicated
    host = BinaryMatrix.parse("0110\n1000\n1000\n0001")
    assert contains_oracle(host, Q(1)) and by_contractions(host, Q(1))
    grouped = Partition((0, 1, 3, 4), (0, 1, 3, 4), (3, 3), (4, 4))
    assert verify_partition(host, Q(1), grouped)
    p = find_partition(host, Q(1))
    assert verify_partition(host, Q(1), p)
    assert (p.row_bounds, p.col_bounds) == ((0, 1, 2, 4), (0, 1, 2, 4))


def test_verify_partition_errors_and_negatives():
    d2 = diagonal(2)
    with pytest.raises(UsageError):
        verify_partition(d2, d2, Partition((0, 2, 2), (0, 1, 2), (2, 2), (2, 2)))
    z = BinaryMatrix.zeros(4, 4)
    for rb, cb in canonical_partitions((4, 4), (2, 2)):
        assert not verify_partition(z, d2, Partition(rb, cb, (2, 2), (4, 4)))


def test_verify_embedding_examples():
    ident = {(i, j): (i, j) for i in range(1, 4) for j in range(1, 4)}
    assert verify_embedding(Q(1), Q(1), EmbeddingMap(ident))
    collapsed = dict(ident)
    collapsed[(1, 2)] = (1, 1)
    collapsed[(1, 1)] = (1, 1)
    assert not verify_embedding(BinaryMatrix.ones(3, 3), Q(1), EmbeddingMap(collapsed))
    with pytest.raises(UsageError):
        verify_embedding(Q(1), Q(1), EmbeddingMap({(1, 2): (1, 2)}))
    with pytest.raises(UsageError):
        verify_embedding(Q(1), Q(1), EmbeddingMap(ident, "partial"))


def test_verify_partial_embedding_examples():
    ident = EmbeddingMap({e: e for e in Q(1).support()}, "partial")
    assert verify_partial_embedding(Q(1), Q(1), ident)
    bad_margin = EmbeddingMap({(1, 1): (3, 1)}, "partial")
    assert not verify_partial_embedding(BinaryMatrix.ones(3, 3), BinaryMatrix.ones(3, 1), bad_margin)
    host = BinaryMatrix.ones(3, 3)
    pat = BinaryMatrix.from_support(3, 1, [(1, 1)])
    assert not verify_partial_embedding(host, pat, EmbeddingMap({(1, 1): (3, 1)}, "partial"))
    with pytest.raises(UsageError):
        verify_partial_embedding(Q(1), Q(1), EmbeddingMap({}, "partial"))


def test_pinned_examples():
    assert contains_pinned(Q(1), Q(1), (1, 2), (1, 2))
    assert not contains_pinned(Q(1), Q(1), (1, 2), (3, 3))
    host = critical_rk(3, 3, 2).flip((1, 1))
    assert contains_pinned(host, row_pattern(2), (1, 1), (1, 1))
    assert not contains_pinned(host, row_pattern(2), (1, 2), (1, 1))
    # a 0-entry cannot receive a 1-entry
    assert not contains_pinned(critical_rk(3, 3, 2), row_pattern(2), (1, 1), (1, 1))


def test_avoids_all_examples():
    id4 = diagonal(4)
    assert not avoids_all(id4, [diagonal(4)])
    assert avoids_all(id4, [Q(1), Q(2), Q(3), Q(4)])
    assert avoids_all(id4, [])


# -- equivalences --


def test_four_way_equivalence_exhaustive_3x3():
    for host in all_matrices(3, 3):
        for P in FIXTURES:
            fast = contains(host, P)
            assert fast == contains_oracle(host, P) == by_contractions(host, P)
            part = find_partition(host, P)
            assert (part is not None) == fast
            if fast:
                assert verify_partition(host, P, part)
                emb = embedding_from_partition(host, P, part)
                assert verify_embedding(host, P, emb)
                assert verify_partial_embedding(host, P, emb.as_partial())


def test_find_partition_is_lexicographically_smallest():
    for host in all_matrices(3, 3)[::7]:
        for P in (diagonal(2), row_pattern(2), BinaryMatrix.ones(2, 2)):
            valid = sorted(
                (rb, cb)
                for rb, cb in canonical_partitions(host.shape, P.shape)
                if verify_partition(host, P, Partition(rb, cb, P.shape, host.shape))
            )
            part = find_partition(host, P)
            if valid:
                assert (part.row_bounds, part.col_bounds) == valid[0]
            else:
                assert part is None


def test_non_square_and_wide_hosts_agree_with_oracle():
    pats = [BinaryMatrix.parse("101"), BinaryMatrix.parse("10\n01\n10"), row_pattern(2)]
    for host in all_matrices(2, 5) + all_matrices(5, 2):
        for P in pats:
            assert contains(host, P) == contains_oracle(host, P)


@given(matrices(), st.data())
def test_monotone_under_dominance(host, data):
    extra = data.draw(st.integers(0, (1 << (host.rows * host.cols)) - 1))
    bigger = BinaryMatrix.from_code(host.code | extra, host.rows, host.cols)
    for P in FIXTURES:
        if contains(host, P):
            assert contains(bigger, P)


@given(matrices(), st.sampled_from(list(Transform)), st.sampled_from(FIXTURES))
def test_transform_equivariance(host, t, P):
    assert contains(host, P) == contains(apply_transform(host, t), apply_transform(P, t))


def test_pinned_matches_pinned_oracle_exhaustive_3x3():
    for host in all_matrices(3, 3):
        for P in (diagonal(2), row_pattern(2), anti_diagonal(2), BinaryMatrix.ones(2, 2)):
            any_pin = False
            for e in P.iter_ones():
                hits = 0
                for f in host.iter_ones():
                    a = contains_pinned(host, P, e, f)
                    assert a == contains_pinned_oracle(host, P, e, f)
                    if a:
                        hits += 1
                        assert contains(host, P)
                any_pin = any_pin or hits > 0
                if contains(host, P):
                    assert hits > 0
            assert any_pin == contains(host, P)


def test_pinned_witness_keeps_columns_inside_the_zero_run():
    # every embedding sending e onto a flipped 0-entry f keeps e's column
    # inside the 0-run of f
    for P in (row_pattern(2), diagonal(2), BinaryMatrix.ones(2, 2), Q(1)):
        for host in all_matrices(3, 4):
            if contains(host, P):
                continue
            for f in host.zero_entries():
                flipped = host.flip(f)
                run = next(
                    z for z in zero_runs(host, LineRef(Axis.ROW, f[0])) if z.lo <= f[1] <= z.hi
                )
                for e in P.iter_ones():
                    part = find_pinned_partition(flipped, P, e, f)
                    if part is None:
                        continue
                    emb = embedding_from_partition(flipped, P, part, pin=(e, f))
                    assert verify_embedding(flipped, P, emb)
                    for i in range(1, P.rows + 1):
                        assert run.lo <= emb.mapping[(i, e[1])][1] <= run.hi


def test_empty_column_observation_exhaustive_3x3():
    for P in all_matrices(2, 2):
        Pp = append_empty_column(P)
        for host in all_matrices(3, 3):
            assert contains(host, Pp) == contains(drop_last_column(host), P)
    # a one-column host is too narrow for the padded pattern
    assert not contains(BinaryMatrix.ones(3, 1), append_empty_column(BinaryMatrix.ones(1, 1)))


def test_find_embedding_round_trip():
    host = BinaryMatrix.parse("0110\n1001\n0010\n1101")
    for P in FIXTURES:
        emb = find_embedding(host, P)
        assert (emb is not None) == contains(host, P)
        if emb is not None:
            assert verify_embedding(host, P, emb)


def test_partition_block_lookup():
    part = Partition((0, 1, 3), (0, 2, 4), (2, 2), (3, 4))
    assert part.block_of((2, 3)) == (2, 2)
    assert part.block_of((1, 1)) == (1, 1)
