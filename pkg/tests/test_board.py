"""Board encoding, valuation and snapshot behaviour."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yupana.board import (
    DIGIT_SQUARES,
    NEGATIVE,
    POSITIVE,
    WEIGHTS,
    BoardConfig,
    BoardState,
    SquareAddr,
    SquareContent,
    board_value,
    board_value_by_tokens,
    capacity,
    decode_simple,
    effective_value,
    encode_digit,
    encode_number,
    is_simple,
    parse_snapshot,
    snapshot,
)
from yupana.errors import DomainError, NotSimpleError, OverflowError


def place(state, entries):
    return state.apply_changes([(SquareAddr(w, r), s, c) for w, r, s, c in entries])


class TestEffectiveValue:
    def test_paper_worked_example(self):
        # five tokens on the weight-3 hundreds square are worth 1500
        assert effective_value(SquareContent(5, 0), SquareAddr(3, 2)) == 1500

    def test_empty_square(self):
        assert effective_value(SquareContent(0, 0), SquareAddr(5, 4)) == 0

    def test_mixed_signs(self):
        # (1 - 2) * 2 * 10
        assert effective_value(SquareContent(1, 2), SquareAddr(2, 1)) == -20


class TestBoardValue:
    def test_empty(self):
        assert board_value(BoardState.empty()) == 0

    def test_worked_number(self):
        assert board_value(encode_number(5347)) == 5347

    def test_two_colors(self):
        state = place(BoardState.empty(), [(5, 0, POSITIVE, 1), (3, 0, NEGATIVE, 1)])
        assert board_value(state) == 2

    def test_square_and_token_readings_agree(self):
        state = place(
            BoardState.empty(),
            [(5, 2, POSITIVE, 3), (2, 1, NEGATIVE, 2), (1, 0, POSITIVE, 7), (3, 4, NEGATIVE, 1)],
        )
        assert board_value(state) == board_value_by_tokens(state)

    @given(st.integers(0, 99999), st.integers(0, 99999))
    @settings(max_examples=200, deadline=None)
    def test_superposition_reads_identically_both_ways(self, a, b):
        state = encode_number(b, base=encode_number(a))
        assert board_value(state) == board_value_by_tokens(state) == a + b


class TestDigits:
    def test_canonical_patterns(self):
        assert encode_digit(7).squares == frozenset({5, 2})
        assert encode_digit(0).squares == frozenset()
        assert encode_digit(9).squares == frozenset({5, 3, 1})

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            encode_digit(10)
        with pytest.raises(DomainError):
            encode_digit(-1)

    def test_patterns_are_minimal_by_brute_force(self):
        # among all 16 weight subsets, the canonical pattern is the unique
        # smallest one summing to its digit
        for d in range(10):
            candidates = [
                frozenset(sub)
                for k in range(5)
                for sub in itertools.combinations(WEIGHTS, k)
                if sum(sub) == d
            ]
            smallest = min(len(c) for c in candidates)
            minimal = [c for c in candidates if len(c) == smallest]
            assert minimal == [DIGIT_SQUARES[d]]


class TestEncodeNumber:
    def test_worked_layout(self):
        state = encode_number(5347)
        expected = {(5, 3), (3, 2), (3, 1), (1, 1), (5, 0), (2, 0)}
        occupied = {(a.weight, a.row) for a, _ in state.occupied()}
        assert occupied == expected
        assert all(cell == SquareContent(1, 0) for _, cell in state.occupied())

    def test_zero_is_empty(self):
        assert encode_number(0).is_empty

    def test_superposition_of_worked_addends(self):
        state = encode_number(736, base=encode_number(532))
        assert board_value(state) == 1268

    def test_negative_sign_negates_delta(self):
        state = encode_number(413, NEGATIVE)
        assert board_value(state) == -413

    def test_over_capacity(self):
        with pytest.raises(OverflowError):
            encode_number(100000)

    def test_negative_magnitude_rejected(self):
        with pytest.raises(DomainError):
            encode_number(-1)


class TestSimpleAndDecode:
    def test_canonical_encoding_is_simple(self):
        assert is_simple(encode_number(5347))

    def test_doubled_token_is_not_simple(self):
        state = place(BoardState.empty(), [(1, 0, POSITIVE, 2)])
        assert not is_simple(state)

    def test_mixed_signs_are_not_simple(self):
        state = place(BoardState.empty(), [(5, 0, POSITIVE, 1), (2, 0, NEGATIVE, 1)])
        assert not is_simple(state)

    def test_non_canonical_row_is_not_simple(self):
        # one token on [2] and one on [1] sums to 3, but 3 is written as [3]
        state = place(BoardState.empty(), [(2, 0, POSITIVE, 1), (1, 0, POSITIVE, 1)])
        assert not is_simple(state)

    def test_decode_empty_is_positive_zero(self):
        assert decode_simple(BoardState.empty()) == 0

    def test_decode_negative(self):
        assert decode_simple(encode_number(413, NEGATIVE)) == -413

    def test_decode_rejects_non_simple(self):
        state = place(BoardState.empty(), [(1, 0, POSITIVE, 2)])
        with pytest.raises(NotSimpleError):
            decode_simple(state)

    @given(st.integers(0, 99999))
    @settings(max_examples=300, deadline=None)
    def test_round_trip(self, n):
        state = encode_number(n)
        assert is_simple(state)
        assert decode_simple(state) == n == board_value(state)

    @given(st.integers(0, 99999999))
    @settings(max_examples=100, deadline=None)
    def test_round_trip_eight_rows(self, n):
        state = encode_number(n, config=BoardConfig(rows=8))
        assert decode_simple(state) == n


class TestCapacity:
    def test_default_five_rows(self):
        assert capacity(BoardConfig()) == 99999

    def test_single_row(self):
        assert capacity(BoardConfig(rows=1)) == 9

    def test_eight_rows(self):
        assert capacity(BoardConfig(rows=8)) == 99999999


class TestConfig:
    def test_rejects_zero_rows(self):
        with pytest.raises(DomainError):
            BoardConfig(rows=0)

    def test_rejects_other_weights(self):
        with pytest.raises(DomainError):
            BoardConfig(weights=(4, 3, 2, 1))


class TestStateOps:
    def test_apply_changes_is_persistent(self):
        state = BoardState.empty()
        changed = place(state, [(5, 0, POSITIVE, 2)])
        assert state.is_empty
        assert changed.get(SquareAddr(5, 0)) == SquareContent(2, 0)

    def test_counts_never_go_negative(self):
        with pytest.raises(DomainError):
            place(BoardState.empty(), [(5, 0, POSITIVE, -1)])

    def test_out_of_bounds_rejected(self):
        with pytest.raises(OverflowError):
            place(BoardState.empty(), [(5, 5, POSITIVE, 1)])

    def test_states_are_hashable_values(self):
        a = encode_number(123)
        b = encode_number(123)
        assert a == b and hash(a) == hash(b)
        assert len({a, b}) == 1


class TestSnapshot:
    def test_format_is_ordered_and_stable(self):
        state = place(
            BoardState.empty(),
            [(1, 0, POSITIVE, 1), (5, 0, POSITIVE, 1), (3, 1, NEGATIVE, 2)],
        )
        assert snapshot(state) == "rows 5\n0 5 1 0\n0 1 1 0\n1 3 0 2\n"

    def test_round_trip(self):
        state = encode_number(532, NEGATIVE, base=encode_number(945))
        assert parse_snapshot(snapshot(state)) == state

    @given(st.integers(0, 99999))
    @settings(max_examples=100, deadline=None)
    def test_round_trip_any_encoding(self, n):
        state = encode_number(n)
        assert parse_snapshot(snapshot(state)) == state

    def test_rejects_garbage(self):
        with pytest.raises(DomainError):
            parse_snapshot("not a snapshot")
