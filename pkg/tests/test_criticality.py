import random

import numpy as np
import pytest

from imkit import tables
from imkit.construct import Q, critical_rk, diagonal, row_pattern, witness
from imkit.containment import avoids_all, contains, contains_oracle
from imkit.criticality import (
    SaturationOrder,
    class_column_complexity,
    class_row_complexity,
    critical_entries_for,
    criticality_report,
    enumerate_critical,
    is_critical,
    is_critical_for_entry,
    relative_column_complexity,
    relative_row_complexity,
    saturate,
    saturation_sequence,
)
from imkit.errors import UsageError
from imkit.matrix import BinaryMatrix, dominates, row_complexity

R2 = row_pattern(2)


def all_matrices(m, n):
    return [BinaryMatrix.from_code(c, m, n) for c in range(1 << (m * n))]


def scalar_critical(F, m, n):
    """Critical members by direct flipping with the contraction oracle."""
    out = []
    for M in all_matrices(m, n):
        if any(contains_oracle(M, P) for P in F):
            continue
        if all(any(contains_oracle(M.flip(f), P) for P in F) for f in M.zero_entries()):
            out.append(M)
    return out


# -- criticality and saturation --


def test_is_critical_examples():
    assert is_critical(BinaryMatrix.ones(4, 4), [BinaryMatrix.ones(5, 5)])
    assert is_critical(critical_rk(3, 3, 2), [R2])
    assert not is_critical(BinaryMatrix.zeros(3, 3), [R2])


def test_is_critical_needs_a_member():
    with pytest.raises(UsageError, match="forbidden pattern #0"):
        is_critical(BinaryMatrix.ones(2, 2), [R2])


def test_saturate_zero_matrix_against_r2():
    S = saturate(BinaryMatrix.zeros(3, 3), [R2], SaturationOrder.ROW_MAJOR)
    assert S.support() == {(1, 1), (2, 1), (3, 1)}
    assert is_critical(S, [R2])


def test_saturate_fixed_point_and_witness_row():
    C = critical_rk(3, 3, 2)
    for order in (SaturationOrder.ROW_MAJOR, SaturationOrder.COLUMN_MAJOR, [(2, 2), (1, 1)]):
        assert saturate(C, [R2], order) == C
    W = witness(Q(1), 3)
    assert saturate(W, [Q(1)]).row_masks[0] == W.row_masks[0]


def test_column_major_and_explicit_orders():
    S = saturate(BinaryMatrix.zeros(3, 3), [R2], "column")
    assert S.support() == {(1, 1), (2, 1), (3, 1)}
    S = saturate(BinaryMatrix.zeros(3, 3), [R2], [(2, 3)])
    assert S.support() == {(1, 3), (2, 3), (3, 3)}
    z = BinaryMatrix.zeros(2, 2)
    assert saturation_sequence(z, [(2, 2)]) == [(2, 2), (1, 1), (1, 2), (2, 1)]
    with pytest.raises(UsageError):
        saturation_sequence(z, [(1, 1), (1, 1)])
    with pytest.raises(UsageError):
        saturation_sequence(critical_rk(2, 2, 2), [(1, 2)])


def test_saturation_soundness_random_5x5():
    rng = random.Random(11)
    pool = [Q(1), Q(2), Q(3), Q(4), diagonal(2), diagonal(3), row_pattern(3)]
    done = 0
    while done < 60:
        F = rng.sample(pool, rng.randint(1, 3))
        M = BinaryMatrix.from_code(rng.getrandbits(25) & rng.getrandbits(25), 5, 5)
        if not avoids_all(M, F):
            continue
        zeros = M.zero_entries()
        rng.shuffle(zeros)
        for order in ("row", "column", zeros[: rng.randint(0, len(zeros))]):
            S = saturate(M, F, order)
            assert dominates(S, M)
            assert avoids_all(S, F)
            assert is_critical(S, F)
        done += 1


# -- critical entries --


def test_critical_entries_examples():
    C = critical_rk(3, 3, 2)
    assert critical_entries_for(C, [R2], (1, 1)) == {(0, (1, 1))}
    assert is_critical_for_entry(C, R2, (1, 1), (1, 1))
    assert not is_critical_for_entry(C, R2, (1, 2), (1, 1))
    # flipping keeps the matrix inside Av(R3)
    assert critical_entries_for(BinaryMatrix.zeros(2, 2), [row_pattern(3)], (1, 1)) == set()
    with pytest.raises(UsageError):
        critical_entries_for(C, [R2], (1, 3))


def test_witness_zero_entries_are_critical_for_the_top_entry():
    W = witness(Q(1), 3)
    for f in W.zero_entries():
        if f[0] == 1:
            assert (0, (1, 2)) in critical_entries_for(W, [Q(1)], f)


def test_criticality_iff_every_zero_entry_is_critical_exhaustive():
    cases = [([diagonal(2)], 4, 4), ([R2], 4, 4), ([Q(1)], 3, 4), ([diagonal(2), R2], 3, 3)]
    for F, m, n in cases:
        member = tables.avoidance_table(F, m, n)
        for code in np.flatnonzero(member):
            M = BinaryMatrix.from_code(int(code), m, n)
            rep = criticality_report(M, F)
            assert rep.is_critical == is_critical(M, F)
            assert rep.is_critical == all(rep.per_zero_entry.values())


def test_report_json_fields():
    rep = criticality_report(critical_rk(3, 3, 2), [R2])
    js = rep.to_json()
    assert set(js) == {"critical", "zeroEntryMap", "relComplexity", "relColComplexity",
                       "rowComplexity", "colComplexity"}
    assert js["critical"] is True
    assert js["relComplexity"] == {"0:1,1": 1, "0:1,2": 0}
    assert js["rowComplexity"] == 1


# -- relative complexity --


def test_relative_examples():
    assert relative_row_complexity(BinaryMatrix.ones(3, 3), BinaryMatrix.ones(4, 4), (1, 1)) == 0
    S = saturate(witness(Q(1), 4), [Q(1)])
    assert relative_row_complexity(S, Q(1), (1, 2)) >= 4
    with pytest.raises(UsageError):
        relative_row_complexity(S, Q(1), (1, 1))
    with pytest.raises(UsageError):
        relative_row_complexity(BinaryMatrix.ones(3, 3), Q(1), (1, 2))


def test_relative_report_matches_direct_computation():
    rng = random.Random(5)
    for _ in range(40):
        M = BinaryMatrix.from_code(rng.getrandbits(16), 4, 4)
        if contains(M, Q(1)):
            continue
        rep = criticality_report(M, [Q(1)])
        for e in Q(1).iter_ones():
            assert rep.relative_row_complexity[(0, e)] == relative_row_complexity(M, Q(1), e)
            assert rep.relative_column_complexity[(0, e)] == relative_column_complexity(M, Q(1), e)


def test_leftmost_relative_bound_for_r3():
    R3 = row_pattern(3)
    member = tables.avoidance_table([R3], 4, 4)
    for code in np.flatnonzero(member):
        M = BinaryMatrix.from_code(int(code), 4, 4)
        for j in (1, 2, 3):
            assert relative_row_complexity(M, R3, (1, j)) <= j


def test_i2_relative_bound_on_4x5_avoiders():
    # a pattern meeting the second I2 template at entry (2,1); its bound is
    # l(l+1) = 12 critical 0-runs per row
    P = BinaryMatrix.from_support(3, 3, [(1, 3), (2, 1), (2, 3), (3, 1), (3, 3)])
    member = tables.avoidance_table([P], 4, 5)
    codes = np.flatnonzero(member)
    # a row of length 5 has at most 3 0-runs, so the bound holds on every avoider
    assert tables.row_complexities(codes, 4, 5).max() <= 12
    rng = random.Random(2)
    crit = set(tables.critical_codes([P], 4, 5).tolist())
    sample = sorted(crit) + rng.sample(codes.tolist(), 150)
    for code in sample:
        M = BinaryMatrix.from_code(int(code), 4, 5)
        assert relative_row_complexity(M, P, (2, 1)) <= 12


# -- enumeration --


def test_enumerate_examples():
    r2 = list(enumerate_critical([R2], 3, 3))
    assert len(r2) == 3
    assert {frozenset(M.support()) for M in r2} == {
        frozenset((i, j) for i in (1, 2, 3)) for j in (1, 2, 3)
    }
    d2 = list(enumerate_critical([diagonal(2)], 2, 2))
    assert [M.to_json() for M in d2] == [["11", "10"], ["01", "11"]]
    one = list(enumerate_critical([BinaryMatrix.ones(1, 1)], 3, 4))
    assert one == [BinaryMatrix.zeros(3, 4)]


def test_enumeration_order_and_guard():
    codes = [M.code for M in enumerate_critical([diagonal(2)], 3, 3)]
    assert codes == sorted(codes)
    with pytest.raises(UsageError):
        list(enumerate_critical([R2], 6, 5))


@pytest.mark.parametrize(
    "F,m,n",
    [([R2], 3, 3), ([diagonal(2)], 3, 3), ([Q(1)], 3, 3), ([Q(2), diagonal(3)], 3, 3),
     ([BinaryMatrix.ones(2, 2)], 3, 3), ([diagonal(2)], 2, 4)],
)
def test_enumeration_matches_scalar_oracle(F, m, n):
    assert list(enumerate_critical(F, m, n)) == scalar_critical(F, m, n)


def test_class_row_complexity_examples():
    assert class_row_complexity([diagonal(2)], 3, 3)[0] == 2
    value, M = class_row_complexity([R2], 3, 3)
    assert value == 2 and M.support() == {(1, 2), (2, 2), (3, 2)}
    assert class_row_complexity([BinaryMatrix.ones(1, 1)], 3, 3)[0] == 1
    # one full column, the others empty: each empty column is a single 0-run
    assert class_column_complexity([R2], 3, 3)[0] == 1
    with pytest.raises(UsageError):
        class_row_complexity([BinaryMatrix.zeros(1, 1)], 2, 2)


def test_class_value_is_attained_by_its_witness():
    for F in ([diagonal(2)], [Q(1)], [row_pattern(3)]):
        value, M = class_row_complexity(F, 3, 4)
        assert row_complexity(M) == value
        assert is_critical(M, F)
        assert value == max(row_complexity(C) for C in enumerate_critical(F, 3, 4))
