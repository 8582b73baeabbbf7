"""The four board procedures: addition, subtraction, multiplication, division.

Addition (yapay) superimposes the addends and simplifies. Subtraction
(t'aqay) loads subtrahends in the opposite color, cancels pairs, then
simplifies whatever color is left. Multiplication (miray) replicates every
multiplicand token using abbreviated replication. Division (rakiy) runs
fast repeated subtraction against a row-displaced divisor, incrementing the
quotient counter by ``10**k`` per subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .board import (
    NEGATIVE,
    POSITIVE,
    BoardConfig,
    BoardState,
    SquareAddr,
    board_value,
    capacity,
    color_value,
    decode_simple,
    encode_number,
    merge_colors,
    split_colors,
)
from .engine import MoveTrace, TraceStep, _TraceBuilder, pair_and_cancel, simplify
from .errors import DomainError, OverflowError, YupanaError


class DivisionValue(NamedTuple):
    quotient: int
    remainder: int


@dataclass(frozen=True)
class OperationResult:
    """Terminal board, decoded value(s) and the audit trail of a run."""

    kind: str  # add | sub | mul | div
    terminal: BoardState
    value: int | DivisionValue
    trace: MoveTrace
    displacements: tuple[tuple[int, int], ...] = ()  # div only: (k, subtractions)


@dataclass
class DivisionState:
    """Book-keeping of a fast-repeated-subtraction run.

    ``q`` grows only by powers of ten ``10**k``; ``k`` never increases after
    its initial maximal setting; ``current`` holds the dividend tokens in
    positive and the displaced divisor in negative.
    """

    q: int
    k: int
    current: BoardState


def _merge_traces(terminal: BoardState, *parts: Sequence[TraceStep]) -> MoveTrace:
    steps: list[TraceStep] = []
    for part in parts:
        for step in part:
            steps.append(
                TraceStep(
                    len(steps), step.kind, step.rule_id, step.sign, step.anchor_row,
                    step.k, step.n, step.value_before, step.value_after, step.match,
                )
            )
    return MoveTrace(tuple(steps), terminal)


def _load(
    state: BoardState, n: int, sign: int, trace: _TraceBuilder
) -> BoardState:
    before = board_value(state)
    state = encode_number(n, sign, base=state)
    trace.add_event("load", sign, sign, n, before, board_value(state))
    return state


def _audit(condition: bool, message: str) -> None:
    if not condition:
        raise YupanaError(f"internal audit failed: {message}")


def yapay(
    addends: Sequence[int],
    config: BoardConfig | None = None,
    record: bool = True,
) -> OperationResult:
    """Add any number of non-negative integers on the board."""
    config = config or BoardConfig()
    total = sum(addends)
    if any(a < 0 for a in addends):
        raise DomainError("addends must be non-negative")
    if total > capacity(config):
        raise OverflowError(f"sum {total} exceeds capacity {capacity(config)}")
    trace = _TraceBuilder(record)
    state = BoardState.empty(config)
    for a in addends:
        state = _load(state, a, POSITIVE, trace)
    _audit(board_value(state) == total, "loaded board must already hold the sum")
    terminal, moves = simplify(state, record=record)
    value = decode_simple(terminal)
    _audit(value == total, "decoded sum must equal the integer sum")
    return OperationResult("add", terminal, value, _merge_traces(terminal, trace.steps, moves.steps))


def taqay(
    minuends: Sequence[int],
    subtrahends: Sequence[int],
    config: BoardConfig | None = None,
    record: bool = True,
) -> OperationResult:
    """Subtract the subtrahends from the minuends; the result may be negative."""
    config = config or BoardConfig()
    if any(x < 0 for x in minuends) or any(x < 0 for x in subtrahends):
        raise DomainError("operands must be non-negative")
    expected = sum(minuends) - sum(subtrahends)
    if abs(expected) > capacity(config):
        raise OverflowError(f"difference {expected} exceeds capacity {capacity(config)}")
    trace = _TraceBuilder(record)
    state = BoardState.empty(config)
    for x in minuends:
        state = _load(state, x, POSITIVE, trace)
    for x in subtrahends:
        state = _load(state, x, NEGATIVE, trace)
    _audit(board_value(state) == expected, "loaded board must already hold the difference")
    state, paired = pair_and_cancel(state, record=record)
    terminal, moves = simplify(state, record=record)
    value = decode_simple(terminal)
    _audit(value == expected, "decoded difference must equal the integer difference")
    return OperationResult(
        "sub", terminal, value, _merge_traces(terminal, trace.steps, paired.steps, moves.steps)
    )


def _digits(n: int) -> list[int]:
    """Decimal digits of n, least significant first; [0] for n = 0."""
    if n == 0:
        return [0]
    out = []
    while n:
        n, d = divmod(n, 10)
        out.append(d)
    return out


def abbreviated_replicate(state: BoardState, addr: SquareAddr, n: int) -> BoardState:
    """Replicate one positive token ``n`` times without stacking ``n`` copies.

    For each decimal digit ``d_i`` of ``n``, deposits ``d_i`` tokens in the
    token's own column ``i`` rows higher, then removes the original token.
    The board value changes by exactly ``(n - 1) * b * 10**r``.
    """
    if n < 1:
        raise DomainError(f"replication count must be positive, got {n}")
    if state.count(addr.weight, addr.row, POSITIVE) < 1:
        raise DomainError(f"no positive token on {addr} to replicate")
    digits = _digits(n)
    if addr.row + len(digits) - 1 >= state.config.rows:
        raise OverflowError(
            f"replicating by {n} from row {addr.row} would deposit above the top row"
        )
    changes: list[tuple[SquareAddr, int, int]] = [(addr, POSITIVE, -1)]
    for i, d in enumerate(digits):
        if d:
            changes.append((SquareAddr(addr.weight, addr.row + i), POSITIVE, d))
    return state.apply_changes(changes)


def miray(
    multiplicand: int,
    multiplier: int,
    config: BoardConfig | None = None,
    record: bool = True,
) -> OperationResult:
    """Multiply by replicating every multiplicand token ``multiplier`` times."""
    config = config or BoardConfig()
    if multiplicand < 0 or multiplier < 0:
        raise DomainError("operands must be non-negative")
    product = multiplicand * multiplier
    if product > capacity(config):
        raise OverflowError(f"product {product} exceeds capacity {capacity(config)}")
    trace = _TraceBuilder(record)
    if multiplier == 0:
        terminal = BoardState.empty(config)
        return OperationResult("mul", terminal, 0, trace.build(terminal))
    state = _load(BoardState.empty(config), multiplicand, POSITIVE, trace)
    # Snapshot the original tokens before any replication deposits land.
    originals = [
        addr for addr, cell in state.occupied() for _ in range(cell.pos)
    ]
    for addr in originals:
        before = board_value(state)
        state = abbreviated_replicate(state, addr, multiplier)
        trace.add_event("replicate", POSITIVE, multiplier, addr.row, before, board_value(state))
    _audit(board_value(state) == product, "replicated board must already hold the product")
    terminal, moves = simplify(state, record=record)
    value = decode_simple(terminal)
    _audit(value == product, "decoded product must equal the integer product")
    return OperationResult("mul", terminal, value, _merge_traces(terminal, trace.steps, moves.steps))


def displace_divisor(divisor_slice: BoardState, k: int) -> BoardState:
    """Shift every negative token of a divisor slice up by ``k`` rows."""
    if k < 0:
        raise DomainError(f"displacement must be non-negative, got {k}")
    rows = divisor_slice.config.rows
    changes: list[tuple[SquareAddr, int, int]] = []
    for addr, cell in divisor_slice.occupied():
        if cell.pos:
            raise DomainError("divisor slice must hold negative tokens only")
        if addr.row + k >= rows:
            raise OverflowError(f"displacing {addr} by {k} rows leaves the board")
        if k and cell.neg:
            changes.append((addr, NEGATIVE, -cell.neg))
            changes.append((SquareAddr(addr.weight, addr.row + k), NEGATIVE, cell.neg))
    return divisor_slice.apply_changes(changes)


def rakiy(
    dividend: int,
    divisor: int,
    config: BoardConfig | None = None,
    record: bool = True,
) -> OperationResult:
    """Divide by fast repeated subtraction of a row-displaced divisor.

    Returns quotient and remainder with ``dividend = q*divisor + r`` and
    ``0 <= r < divisor``; the terminal board encodes the remainder.
    """
    config = config or BoardConfig()
    if divisor == 0:
        raise DomainError("division by zero")
    if divisor < 0 or dividend < 0:
        raise DomainError("operands must be non-negative")
    if dividend > capacity(config):
        raise OverflowError(f"dividend {dividend} exceeds capacity {capacity(config)}")

    trace = _TraceBuilder(record)
    state = _load(BoardState.empty(config), dividend, POSITIVE, trace)
    divisor_base = encode_number(divisor, NEGATIVE, config=config)
    top_divisor_row = len(_digits(divisor)) - 1
    k_bound = config.rows - 1 - top_divisor_row

    remaining = dividend
    k = -1
    for candidate in range(k_bound, -1, -1):
        if divisor * 10**candidate <= remaining:
            k = candidate
            break

    displacements: list[tuple[int, int]] = []
    run = DivisionState(q=0, k=max(k, 0), current=state)
    if k >= 0:
        displaced = displace_divisor(divisor_base, k)
        before = board_value(run.current)
        run.current = merge_colors(split_colors(run.current)[0], displaced)
        trace.add_event("displace", NEGATIVE, k, k, before, board_value(run.current))
        while True:
            step_value = divisor * 10**run.k
            subtractions = 0
            while step_value <= remaining:
                # Pair on a scratch copy; keep the divisor tokens in place and
                # take only the paired dividend tokens off the real board.
                scratch, _ = pair_and_cancel(run.current, record=False)
                _audit(
                    color_value(scratch, NEGATIVE) == 0,
                    "pairing must consume the whole displaced divisor",
                )
                before = board_value(run.current)
                run.current = merge_colors(split_colors(scratch)[0], displaced)
                remaining -= step_value
                run.q += 10**run.k
                subtractions += 1
                trace.add_event("subtract", POSITIVE, run.k, 10**run.k, before, board_value(run.current))
                _audit(
                    color_value(run.current, POSITIVE) == remaining,
                    "dividend tokens must hold the running remainder",
                )
                _audit(run.q * divisor + remaining == dividend, "division loop variant")
            displacements.append((run.k, subtractions))
            if run.k == 0:
                break
            run.k -= 1
            displaced = displace_divisor(divisor_base, run.k)
            before = board_value(run.current)
            run.current = merge_colors(split_colors(run.current)[0], displaced)
            trace.add_event("displace", NEGATIVE, run.k, -1, before, board_value(run.current))
        # The divisor comes off the board; the dividend tokens that remain
        # are the (possibly non-simple) remainder.
        before = board_value(run.current)
        run.current = split_colors(run.current)[0]
        trace.add_event("unload", NEGATIVE, run.k, divisor, before, board_value(run.current))

    terminal, moves = simplify(run.current, record=record)
    remainder = decode_simple(terminal)
    _audit(remainder == remaining, "decoded remainder must equal the running remainder")
    _audit(run.q * divisor + remainder == dividend, "quotient/remainder identity")
    _audit(0 <= remainder < divisor, "remainder range")
    return OperationResult(
        "div",
        terminal,
        DivisionValue(run.q, remainder),
        _merge_traces(terminal, trace.steps, moves.steps),
        displacements=tuple(displacements),
    )
