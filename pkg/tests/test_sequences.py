import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bakergame.sequences import (
    ConstSeq,
    GeomSeq,
    PairedSeq,
    ScheduleSeq,
    SequenceError,
    ThinnedSeq,
    parse_rseq,
)


def test_const():
    s = ConstSeq(3)
    assert [s.at(i) for i in range(1, 4)] == [3, 3, 3]  # [TRIVIAL]
    assert s.tail(5).head == 3


def test_geom():
    s = GeomSeq(2, 3)
    # [DERIVED] ceil(2 * 3^i) for i = 1, 2, 3
    assert [s.at(i) for i in range(1, 4)] == [6, 18, 54]
    assert s.tail(1).at(1) == 18


def test_schedule_values():
    # [DERIVED] from the window recipes with eps_i = 2^-i / (k+1):
    # domset: 1 + 2 * (1 + max(2^(i+1) * (k+1), 6 i (i+1)))
    s = ScheduleSeq("domset", 2)
    assert s.at(1) == 1 + 2 * (1 + max(4 * 3, 12))
    assert s.at(3) == 1 + 2 * (1 + max(16 * 3, 72))
    # mis: 1 + 2 * (1 + 2^(i+1) * (k+1))
    assert ScheduleSeq("mis", 2).at(1) == 1 + 2 * (1 + 12)
    # ccolorable: 2 * (k+1) * 2^i
    assert ScheduleSeq("ccolorable", 3).at(2) == 2 * 4 * 4


def test_schedule_rejects_bad_args():
    with pytest.raises(SequenceError):
        ScheduleSeq("nope", 2)
    with pytest.raises(SequenceError):
        ScheduleSeq("mis", 0)


def test_index_limit_guards():
    with pytest.raises(SequenceError):
        ScheduleSeq("mis", 2).at(10**8)
    with pytest.raises(SequenceError):
        GeomSeq(1, 2).at(10**8)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20), st.integers(1, 10))
def test_tail_composition(a, b, i):
    # tail(a).tail(b).at(i) == at(a + b + i) for any sequence
    s = GeomSeq(2, 2)
    assert s.tail(a).tail(b).at(i) == s.at(a + b + i)


def test_paired_doubles_indices():
    s = GeomSeq(1, 2)
    p = PairedSeq(s)
    assert p.at(1) == s.at(2)
    assert p.at(3) == s.at(6)
    assert p.tail(1).at(1) == s.at(4)


def test_thinned_index_recurrence():
    # [DERIVED] i_0 = 0, i_j = i_{j-1} + d * r(i_{j-1} + 1) + 1
    s = ConstSeq(2)
    t = ThinnedSeq(s, 3)
    assert t.index(0) == 0
    assert t.index(1) == 0 + 3 * 2 + 1
    assert t.index(2) == 7 + 3 * 2 + 1
    assert t.at(1) == s.at(1)
    assert t.at(2) == s.at(8)


def test_values_must_be_at_least_one():
    with pytest.raises(SequenceError):
        ConstSeq(0)


def test_parse_rseq():
    assert parse_rseq("const:4").head == 4
    assert parse_rseq("geom:2,3").at(2) == 18
    assert parse_rseq("schedule:mis:2").at(1) == 27
    with pytest.raises(SequenceError):
        parse_rseq("mystery:1")
