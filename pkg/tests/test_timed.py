import pytest
from hypothesis import given
from hypothesis import strategies as st

from tpmatch.timed import (
    TERMINAL,
    AssumptionViolation,
    Atom,
    Guard,
    NonMonotoneTimestamp,
    NonPositiveTimestamp,
    ReservedLabel,
    InvalidInterval,
    TimedAutomaton,
    Transition,
    accepts,
    eval_clocks,
    reset_record,
    segment,
    validate_word,
)


def approx_events(w):
    return [(a, round(t, 9)) for a, t in w]


class TestValidateWord:
    def test_prefix_ok(self):
        w = validate_word([("a", 0.5), ("a", 0.9), ("b", 1.3)])
        assert w.labels == ("a", "a", "b")
        assert len(w) == 3

    def test_equal_timestamps(self):
        with pytest.raises(NonMonotoneTimestamp) as info:
            validate_word([("a", 1.0), ("a", 1.0)])
        assert info.value.index == 2

    def test_empty(self):
        assert len(validate_word([])) == 0

    def test_non_positive(self):
        with pytest.raises(NonPositiveTimestamp) as info:
            validate_word([("a", 0.0)])
        assert info.value.index == 1

    def test_terminal_reserved(self):
        with pytest.raises(ReservedLabel):
            validate_word([("a", 1.0), (TERMINAL, 2.0)])
        assert len(validate_word([(TERMINAL, 2.0)], allow_terminal=True)) == 1


class TestSegment:
    def test_fig1_window(self, fig1_word):
        seg = segment(fig1_word, 3.8, 6.5)
        assert approx_events(seg) == [("a", 1.1), ("a", 1.5), ("a", 2.2), (TERMINAL, 2.7)]

    def test_no_events(self, fig1_word):
        assert segment(fig1_word, 0.0, 0.1).events == [(TERMINAL, 0.1)]

    def test_left_boundary_is_open(self, fig1_word):
        seg = segment(fig1_word, 3.7, 5.0)
        assert approx_events(seg) == [("a", 1.2), (TERMINAL, 1.3)]

    def test_right_boundary_is_open(self, fig1_word):
        seg = segment(fig1_word, 3.7, 4.9)
        assert approx_events(seg) == [(TERMINAL, 1.2)]

    def test_invalid_interval(self, fig1_word):
        with pytest.raises(InvalidInterval):
            segment(fig1_word, 2.0, 2.0)

    @given(st.floats(0, 7), st.floats(0.001, 7))
    def test_shape(self, fig1_word, t, width):
        seg = segment(fig1_word, t, t + width)
        assert seg.labels[-1] == TERMINAL
        assert seg.times[-1] == pytest.approx(width)
        assert all(x < y for x, y in zip(seg.times, seg.times[1:]))
        assert TERMINAL not in seg.labels[:-1]


class TestAccepts:
    def test_fig1_match(self, fig1_pattern, fig1_word):
        assert accepts(fig1_pattern, segment(fig1_word, 3.8, 6.5))

    def test_fig1_no_match_early(self, fig1_pattern, fig1_word):
        assert not accepts(fig1_pattern, segment(fig1_word, 0.0, 2.0))

    def test_terminal_alone(self, fig1_pattern):
        assert not accepts(fig1_pattern, validate_word([(TERMINAL, 1.0)], allow_terminal=True))

    def test_direct_terminal_edge(self):
        A = TimedAutomaton(("s", "f"), frozenset({"s"}), frozenset({"f"}), ("x",),
                           (Transition("s", "f", TERMINAL, Guard((Atom("x", "<", 2),))),))
        assert accepts(A, validate_word([(TERMINAL, 1.0)], allow_terminal=True))
        assert not accepts(A, validate_word([(TERMINAL, 2.0)], allow_terminal=True))


class TestClocks:
    def test_eval_without_resets(self):
        assert eval_clocks({}, 5.3, 3.8, ["x", "y"]) == pytest.approx({"x": 1.5, "y": 1.5})

    def test_eval_reset_clock(self):
        assert eval_clocks({"x": 4.9}, 5.3, 3.8, ["x"])["x"] == pytest.approx(0.4)

    def test_eval_just_reset(self):
        assert eval_clocks({"x": 2.5}, 2.5, 1.0, ["x"]) == {"x": 0.0}

    def test_reset_record(self):
        rho = {"x": 1.0}
        assert reset_record(rho, "x", 2.0) == {"x": 2.0}
        assert reset_record(rho, "y", 2.0) == {"x": 1.0, "y": 2.0}
        assert reset_record(reset_record(rho, "y", 2.0), "y", 2.0) == reset_record(rho, "y", 2.0)
        assert rho == {"x": 1.0}


class TestAssumption:
    def base(self, *transitions):
        return TimedAutomaton(("s", "t", "f"), frozenset({"s"}), frozenset({"f"}), (), transitions)

    def test_plain_edge_into_final(self):
        with pytest.raises(AssumptionViolation):
            self.base(Transition("s", "f", "a"))

    def test_terminal_edge_elsewhere(self):
        with pytest.raises(AssumptionViolation):
            self.base(Transition("s", "t", TERMINAL))

    def test_edge_out_of_final(self):
        with pytest.raises(AssumptionViolation):
            self.base(Transition("s", "f", TERMINAL), Transition("f", "s", "a"))

    def test_valid(self):
        A = self.base(Transition("s", "t", "a"), Transition("t", "f", TERMINAL))
        assert A.alphabet == frozenset({"a"})
