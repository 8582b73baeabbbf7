"""Board geometry, token bookkeeping, number encoding and valuation.

The board is a grid of ``m`` rows by four columns. The columns carry the
weights 5, 3, 2, 1 from left to right, and a token on square ``(b, r)`` is
worth ``b * 10**r`` (negated for negative tokens). Row 0 holds the units,
row ``m-1`` the highest power of ten. All arithmetic is exact integer
arithmetic; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import DomainError, NotSimpleError, OverflowError

POSITIVE = 1
NEGATIVE = -1

#: Column weights in board order, left to right.
WEIGHTS = (5, 3, 2, 1)
WEIGHT_INDEX = {5: 0, 3: 1, 2: 2, 1: 3}

#: Canonical token placement per decimal digit: the smallest set of squares
#: whose weights sum to the digit (digit 0 leaves the row empty).
DIGIT_SQUARES: dict[int, frozenset[int]] = {
    0: frozenset(),
    1: frozenset({1}),
    2: frozenset({2}),
    3: frozenset({3}),
    4: frozenset({3, 1}),
    5: frozenset({5}),
    6: frozenset({5, 1}),
    7: frozenset({5, 2}),
    8: frozenset({5, 3}),
    9: frozenset({5, 3, 1}),
}
PATTERN_DIGIT = {squares: d for d, squares in DIGIT_SQUARES.items()}


class SquareAddr(NamedTuple):
    """A square identified by its column weight and row."""

    weight: int
    row: int


class SquareContent(NamedTuple):
    """Token counts on one square, kept separately per sign."""

    pos: int
    neg: int


class DigitPattern(NamedTuple):
    """A decimal digit and the squares holding exactly one token each."""

    digit: int
    squares: frozenset[int]


@dataclass(frozen=True)
class BoardConfig:
    rows: int = 5
    weights: tuple[int, ...] = WEIGHTS

    def __post_init__(self) -> None:
        if self.rows < 1:
            raise DomainError(f"board needs at least one row, got {self.rows}")
        if tuple(self.weights) != WEIGHTS:
            raise DomainError(f"column weights are fixed at {WEIGHTS}")


_EMPTY_CELL = SquareContent(0, 0)
_EMPTY_ROW = (_EMPTY_CELL,) * 4


@dataclass(frozen=True)
class BoardState:
    """Immutable token layout; every mutation returns a new state.

    ``cells[r][i]`` holds the (pos, neg) counts of the square in row ``r``
    and column ``WEIGHTS[i]``. States are hashable and freely shareable.
    """

    config: BoardConfig
    cells: tuple[tuple[SquareContent, ...], ...]

    @staticmethod
    def empty(config: BoardConfig | None = None) -> "BoardState":
        config = config or BoardConfig()
        return BoardState(config, (_EMPTY_ROW,) * config.rows)

    def get(self, addr: SquareAddr) -> SquareContent:
        return self.cells[addr.row][WEIGHT_INDEX[addr.weight]]

    def count(self, weight: int, row: int, sign: int) -> int:
        cell = self.cells[row][WEIGHT_INDEX[weight]]
        return cell.pos if sign == POSITIVE else cell.neg

    def in_bounds(self, addr: SquareAddr) -> bool:
        return 0 <= addr.row < self.config.rows and addr.weight in WEIGHT_INDEX

    def apply_changes(
        self, changes: Iterator[tuple[SquareAddr, int, int]] | list[tuple[SquareAddr, int, int]]
    ) -> "BoardState":
        """Return a new state with signed count deltas applied.

        Each change is ``(addr, sign, delta)``; counts may never go
        negative, and addresses must be on the board.
        """
        touched: dict[int, list[SquareContent]] = {}
        for addr, sign, delta in changes:
            if not self.in_bounds(addr):
                raise OverflowError(f"square {addr} is outside the board")
            r, i = addr.row, WEIGHT_INDEX[addr.weight]
            row = touched.get(r)
            if row is None:
                row = touched[r] = list(self.cells[r])
            pos, neg = row[i]
            if sign == POSITIVE:
                pos += delta
            else:
                neg += delta
            if pos < 0 or neg < 0:
                raise DomainError(f"token count on {addr} would become negative")
            row[i] = SquareContent(pos, neg)
        if not touched:
            return self
        rows = tuple(
            tuple(touched[r]) if r in touched else old for r, old in enumerate(self.cells)
        )
        return BoardState(self.config, rows)

    def tokens(self) -> Iterator[tuple[SquareAddr, int]]:
        """Yield one ``(addr, sign)`` entry per individual token."""
        for r, row in enumerate(self.cells):
            for i, (pos, neg) in enumerate(row):
                addr = SquareAddr(WEIGHTS[i], r)
                for _ in range(pos):
                    yield addr, POSITIVE
                for _ in range(neg):
                    yield addr, NEGATIVE

    def occupied(self) -> Iterator[tuple[SquareAddr, SquareContent]]:
        """Yield non-empty squares in row-ascending, weight-descending order."""
        for r, row in enumerate(self.cells):
            for i, cell in enumerate(row):
                if cell.pos or cell.neg:
                    yield SquareAddr(WEIGHTS[i], r), cell

    @property
    def is_empty(self) -> bool:
        return all(cell == _EMPTY_CELL for row in self.cells for cell in row)


def effective_value(content: SquareContent, addr: SquareAddr) -> int:
    """Signed worth of one square: ``(pos - neg) * b * 10**r``."""
    return (content.pos - content.neg) * addr.weight * 10**addr.row


def board_value(state: BoardState) -> int:
    """Total board value as the sum of per-square effective values."""
    total = 0
    for r, row in enumerate(state.cells):
        scale = 10**r
        for i, (pos, neg) in enumerate(row):
            if pos or neg:
                total += (pos - neg) * WEIGHTS[i] * scale
    return total


def board_value_by_tokens(state: BoardState) -> int:
    """Total board value read token by token (same result as board_value)."""
    return sum(sign * addr.weight * 10**addr.row for addr, sign in state.tokens())


def color_value(state: BoardState, sign: int) -> int:
    """Magnitude contributed by tokens of one sign only."""
    total = 0
    for r, row in enumerate(state.cells):
        scale = 10**r
        for i, cell in enumerate(row):
            count = cell.pos if sign == POSITIVE else cell.neg
            if count:
                total += count * WEIGHTS[i] * scale
    return total


def capacity(config: BoardConfig) -> int:
    """Largest representable number: 10**rows - 1."""
    return 10**config.rows - 1


def encode_digit(d: int) -> DigitPattern:
    """Canonical single-row placement for a decimal digit."""
    if not 0 <= d <= 9:
        raise DomainError(f"digit must be in 0..9, got {d}")
    return DigitPattern(d, DIGIT_SQUARES[d])


def encode_number(
    n: int,
    sign: int = POSITIVE,
    base: BoardState | None = None,
    config: BoardConfig | None = None,
) -> BoardState:
    """Superimpose the canonical encoding of ``n`` onto ``base``.

    One token of ``sign`` lands on each square of ``encode_digit(d_i)`` in
    row ``i``, for every decimal digit of ``n``. The board value changes by
    exactly ``+n`` or ``-n``.
    """
    if n < 0:
        raise DomainError(f"encode_number takes a non-negative magnitude, got {n}")
    if sign not in (POSITIVE, NEGATIVE):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    state = base if base is not None else BoardState.empty(config)
    if n > capacity(state.config):
        raise OverflowError(
            f"{n} exceeds the {state.config.rows}-row capacity {capacity(state.config)}"
        )
    changes = []
    row = 0
    while n:
        n, d = divmod(n, 10)
        for w in DIGIT_SQUARES[d]:
            changes.append((SquareAddr(w, row), sign, 1))
        row += 1
    return state.apply_changes(changes)


# Bitmask over weight indexes -> decimal digit, for the hot decoding path.
_MASK_DIGIT = {
    sum(1 << WEIGHT_INDEX[w] for w in squares): d for d, squares in DIGIT_SQUARES.items()
}


def simple_value(state: BoardState) -> int | None:
    """Decode the state if it is simple, else None; single fast pass."""
    has_pos = has_neg = False
    n = 0
    for r in range(state.config.rows - 1, -1, -1):
        mask = 0
        for i, (pos, neg) in enumerate(state.cells[r]):
            if pos:
                if pos > 1 or has_neg:
                    return None
                has_pos = True
                mask |= 1 << i
            if neg:
                if neg > 1 or has_pos:
                    return None
                has_neg = True
                mask |= 1 << i
        digit = _MASK_DIGIT.get(mask)
        if digit is None:
            return None
        n = n * 10 + digit
    return -n if has_neg else n


def row_pattern(state: BoardState, row: int, sign: int) -> frozenset[int] | None:
    """Weights holding exactly one token of ``sign`` in ``row``.

    Returns None when any square of the row holds more than one token
    (such a row cannot be part of a simple state).
    """
    weights = []
    for i, cell in enumerate(state.cells[row]):
        count = cell.pos if sign == POSITIVE else cell.neg
        if count > 1:
            return None
        if count == 1:
            weights.append(WEIGHTS[i])
    return frozenset(weights)


def is_simple(state: BoardState) -> bool:
    """True iff all tokens share one sign and every row is a canonical digit."""
    return simple_value(state) is not None


def decode_simple(state: BoardState) -> int:
    """Read the number off a simple state (sign taken from token color)."""
    value = simple_value(state)
    if value is None:
        raise NotSimpleError("state is not simple; simplify it first")
    return value


def split_colors(state: BoardState) -> tuple[BoardState, BoardState]:
    """Split a state into its positive-only and negative-only slices."""
    pos_rows = []
    neg_rows = []
    for row in state.cells:
        pos_rows.append(tuple(SquareContent(c.pos, 0) for c in row))
        neg_rows.append(tuple(SquareContent(0, c.neg) for c in row))
    return (
        BoardState(state.config, tuple(pos_rows)),
        BoardState(state.config, tuple(neg_rows)),
    )


def merge_colors(pos_slice: BoardState, neg_slice: BoardState) -> BoardState:
    """Recombine a positive-only and a negative-only slice of equal shape."""
    if pos_slice.config != neg_slice.config:
        raise DomainError("cannot merge slices with different configs")
    rows = []
    for prow, nrow in zip(pos_slice.cells, neg_slice.cells):
        rows.append(
            tuple(SquareContent(p.pos, n.neg) for p, n in zip(prow, nrow))
        )
    return BoardState(pos_slice.config, tuple(rows))


def snapshot(state: BoardState) -> str:
    """Canonical text snapshot: header plus one line per non-empty square.

    Lines are ``row weight pos neg`` ordered row-ascending then
    weight-descending, so equal states produce byte-identical snapshots.
    """
    lines = [f"rows {state.config.rows}"]
    for addr, cell in state.occupied():
        lines.append(f"{addr.row} {addr.weight} {cell.pos} {cell.neg}")
    return "\n".join(lines) + "\n"


def parse_snapshot(text: str) -> BoardState:
    """Rebuild a state from its snapshot text."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("rows "):
        raise DomainError("snapshot must start with a 'rows <m>' header")
    state = BoardState.empty(BoardConfig(rows=int(lines[0].split()[1])))
    changes = []
    for line in lines[1:]:
        row, weight, pos, neg = (int(f) for f in line.split())
        if pos:
            changes.append((SquareAddr(weight, row), POSITIVE, pos))
        if neg:
            changes.append((SquareAddr(weight, row), NEGATIVE, neg))
    return state.apply_changes(changes)
