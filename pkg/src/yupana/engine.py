"""Simplification strategies, mixed-color pairing, parallel steps, exploration.

The engine drives the detect-pattern/execute-move cycle. The canonical
strategy prefers token-shrinking moves and uses the two openings only as
enablers, which makes it terminate without ever needing expansions on a
single-color board. Mixed-color boards are handled by a deterministic
pairing planner that cancels pairs with Chinkay and walks majority-color
tokens down to unpartnered minority squares using expansion moves.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass

from .board import (
    NEGATIVE,
    POSITIVE,
    WEIGHT_INDEX,
    WEIGHTS,
    BoardState,
    SquareAddr,
    SquareContent,
    board_value,
    color_value,
    simple_value,
)
from .errors import ConflictError, CycleError, DomainError, OverflowError
from .rules import (
    CHINKAY,
    CHUNKA,
    EXPANSION_IDS,
    Match,
    all_matches,
    apply_match,
    build_generic_match,
    catalog,
    match_order_key,
    rule_by_id,
)

#: Canonical rule preference: cancellations, then carries by ten, then
#: strictly shrinking row-local rules, then carry composites, then openings.
CANONICAL_PRIORITY: tuple[str, ...] = (
    "Chinkay",
    "Chunka",
    "Kikin-5on1",
    "Kikin-3on1",
    "Kikin-2on1",
    "Pichana-23",
    "Pichana-12",
    "Pisqa",
    "HatunPichana",
    "Sonqo",
    "PañaChaska",
    "HuqIskayKimsa",
    "Kusillu",
    "Iskay",
    "Kimsa",
)

#: Expansion used to split a token within its row, by source weight.
_EXPAND_BY_WEIGHT = {5: "Expand5", 3: "Expand3", 2: "Expand2"}
#: Inverse rule that drops a token from [1] of row r+1 onto weight b of row r.
_INV_BY_TARGET = {5: "InvPisqa", 3: "InvHatunPichana", 2: "InvHatunPichana", 1: "InvHuqIskayKimsa"}

# Per-rule scan tables: takes/gives with weight indexes and anchor-row range.
_GENERIC_SCAN: dict[str, tuple] = {}
for _rule in catalog():
    if _rule.takes:
        _offs = [off for _, off, _ in _rule.gives]
        _GENERIC_SCAN[_rule.id] = (
            tuple((WEIGHT_INDEX[w], need) for w, need in _rule.takes),
            tuple((WEIGHT_INDEX[w], off, cnt) for w, off, cnt in _rule.gives),
            max(0, -min(_offs)),
            max(0, max(_offs)),
        )


@dataclass(frozen=True)
class Strategy:
    """How the next move is chosen during simplification."""

    name: str = "canonical"
    seed: int | None = None
    rule_priority: tuple[str, ...] = CANONICAL_PRIORITY
    allow_expansions: bool = False


CANONICAL = Strategy()


def random_strategy(seed: int, allow_expansions: bool = False) -> Strategy:
    return Strategy(name="random", seed=seed, allow_expansions=allow_expansions)


@dataclass(frozen=True)
class TraceStep:
    """One audited step: a rule move, or a load/displace/subtract event."""

    index: int
    kind: str  # move | load | displace | subtract | replicate | unload
    rule_id: str
    sign: int
    anchor_row: int
    k: int
    n: int
    value_before: int
    value_after: int
    match: Match | None = None

    def line(self) -> str:
        return (
            f"{self.index} {self.rule_id} {self.anchor_row} {self.k} {self.n} "
            f"{self.value_before} {self.value_after}"
        )


@dataclass(frozen=True)
class MoveTrace:
    """Ordered audit trail of applied steps plus the terminal state."""

    steps: tuple[TraceStep, ...]
    terminal: BoardState

    def export_lines(self) -> str:
        return "".join(step.line() + "\n" for step in self.steps)


class _TraceBuilder:
    """Accumulates steps; value bookkeeping is optional for bulk runs."""

    def __init__(self, record: bool = True) -> None:
        self.record = record
        self.steps: list[TraceStep] = []

    def add_move(self, match: Match, before: int, after: int) -> None:
        if not self.record:
            return
        self.steps.append(
            TraceStep(
                len(self.steps), "move", match.rule_id, match.sign,
                match.anchor_row, match.k, match.n, before, after, match,
            )
        )

    def add_event(self, kind: str, sign: int, k: int, n: int, before: int, after: int) -> None:
        if not self.record:
            return
        self.steps.append(
            TraceStep(len(self.steps), kind, kind, sign, 0, k, n, before, after)
        )

    def build(self, terminal: BoardState) -> MoveTrace:
        return MoveTrace(tuple(self.steps), terminal)


def conflicts(a: Match, b: Match) -> bool:
    """True iff the two matches read or write a common square."""
    return not a.touched.isdisjoint(b.touched)


def parallel_step(state: BoardState, matches: list[Match] | set[Match]) -> BoardState:
    """Apply pairwise non-conflicting matches as one simultaneous step."""
    ordered = sorted(matches, key=match_order_key)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if conflicts(a, b):
                raise ConflictError(f"matches {a.rule_id} and {b.rule_id} touch a common square")
    for match in ordered:
        state = apply_match(state, match)
    return state


def canonical_color_move(
    state: BoardState, sign: int, priority: tuple[str, ...] = CANONICAL_PRIORITY
) -> Match | None:
    """First canonical non-expansion move for one token color, or None.

    Scans the priority list rule by rule, each rule bottom row first; for
    Chunka the largest in-bounds shift wins.
    """
    cells = state.cells
    rows = state.config.rows
    ci = 0 if sign == POSITIVE else 1
    for rule_id in priority:
        if rule_id == CHINKAY or rule_id in EXPANSION_IDS:
            continue
        if rule_id == CHUNKA:
            for r in range(rows - 1):
                row = cells[r]
                for i in range(4):
                    count = row[i][ci]
                    if count >= 10:
                        n = 1
                        while count >= 10 ** (n + 1) and r + n + 1 < rows:
                            n += 1
                        w = WEIGHTS[i]
                        return Match(
                            CHUNKA, sign, r, w, 1, n,
                            ((SquareAddr(w, r), sign, 10**n),),
                            ((SquareAddr(w, r + n), sign, 1),),
                        )
            continue
        takes, _, lo, margin = _GENERIC_SCAN[rule_id]
        rule = rule_by_id(rule_id)
        for r in range(lo, rows - margin):
            row = cells[r]
            k = None
            for i, need in takes:
                q = row[i][ci] // need
                if k is None or q < k:
                    k = q
                    if not k:
                        break
            if k:
                return build_generic_match(rule, sign, r, k)
    return None


def _first_chinkay(state: BoardState) -> Match | None:
    for r, row in enumerate(state.cells):
        for i, (pos, neg) in enumerate(row):
            k = pos if pos < neg else neg
            if k:
                addr = SquareAddr(WEIGHTS[i], r)
                return Match(
                    CHINKAY, 0, r, WEIGHTS[i], k, 0,
                    ((addr, POSITIVE, k), (addr, NEGATIVE, k)),
                    (),
                )
    return None


def _colors_present(state: BoardState) -> tuple[bool, bool]:
    has_pos = has_neg = False
    for row in state.cells:
        for pos, neg in row:
            has_pos = has_pos or pos > 0
            has_neg = has_neg or neg > 0
    return has_pos, has_neg


def _lowest_occupied(state: BoardState, sign: int) -> SquareAddr | None:
    ci = 0 if sign == POSITIVE else 1
    for r, row in enumerate(state.cells):
        for i in range(4):
            if row[i][ci]:
                return SquareAddr(WEIGHTS[i], r)
    return None


def _descent_move(state: BoardState, sign: int, weight: int, row: int) -> Match | None:
    """One expansion step walking a ``sign`` token toward square ``(weight, row)``.

    Prefers splitting a heavier token in the same row, then dropping a token
    from [1] of the row above, then recursively fetching one from higher
    rows. Returns None when no token of ``sign`` sits above the target.
    """
    in_row = [w for w in (2, 3, 5) if w > weight and state.count(w, row, sign) >= 1]
    if in_row:
        return build_generic_match(rule_by_id(_EXPAND_BY_WEIGHT[min(in_row)]), sign, row, 1)
    if row + 1 >= state.config.rows:
        return None
    if state.count(1, row + 1, sign) >= 1:
        return build_generic_match(rule_by_id(_INV_BY_TARGET[weight]), sign, row + 1, 1)
    return _descent_move(state, sign, 1, row + 1)


def next_canonical_move(state: BoardState) -> Match | None:
    """The canonical strategy's next move on any board, or None when simple.

    Single-color boards take the canonical simplification move. Mixed
    boards cancel pairs first, then walk a majority token toward the
    lowest-addressed unpartnered minority square, falling back to
    majority-color simplification when no token sits above that square.
    """
    chinkay = _first_chinkay(state)
    if chinkay is not None:
        return chinkay
    pos_value = color_value(state, POSITIVE)
    neg_value = color_value(state, NEGATIVE)
    if pos_value and neg_value:
        majority = POSITIVE if pos_value >= neg_value else NEGATIVE
        target = _lowest_occupied(state, -majority)
        move = _descent_move(state, majority, target.weight, target.row)
        if move is not None:
            return move
        return canonical_color_move(state, majority)
    sign = NEGATIVE if neg_value else POSITIVE
    return canonical_color_move(state, sign)


def _random_move(state: BoardState, strategy: Strategy, rng: _random.Random) -> Match | None:
    ids = None if strategy.allow_expansions else frozenset(
        r.id for r in catalog() if r.kind != "expansion"
    )
    found = all_matches(state, rule_ids=ids)
    return rng.choice(found) if found else None


def simplify(
    state: BoardState, strategy: Strategy = CANONICAL, record: bool = True
) -> tuple[BoardState, MoveTrace]:
    """Drive a single-color board to its simple state, value untouched.

    Raises OverflowError when the value needs a carry above the top row,
    and CycleError if the chosen strategy ever revisits a state (the
    canonical strategy never does).
    """
    has_pos, has_neg = _colors_present(state)
    if has_pos and has_neg:
        raise DomainError("board holds both colors; run pair_and_cancel first")
    if strategy.name == "random":
        rng = _random.Random(strategy.seed)
    elif strategy.name != "canonical":
        raise DomainError(f"unknown strategy {strategy.name!r}")
    sign = NEGATIVE if has_neg else POSITIVE

    trace = _TraceBuilder(record)
    seen = {state.cells}
    while True:
        if strategy.name == "random":
            if simple_value(state) is not None:
                break
            move = _random_move(state, strategy, rng)
        else:
            move = canonical_color_move(state, sign, strategy.rule_priority)
            if move is None and simple_value(state) is not None:
                break
        if move is None:
            raise OverflowError(
                "value needs a carry above the top row; it exceeds the board capacity"
            )
        before = board_value(state) if record else 0
        state = apply_match(state, move)
        trace.add_move(move, before, board_value(state) if record else 0)
        if state.cells in seen:
            raise CycleError(f"strategy {strategy.name!r} revisited a state")
        seen.add(state.cells)
    return state, trace.build(state)


def pair_and_cancel(state: BoardState, record: bool = True) -> tuple[BoardState, MoveTrace]:
    """Cancel opposite-color pairs until a single color (or nothing) remains.

    Applies Chinkay wherever possible, and otherwise expands the
    majority-value color toward the lowest unpartnered minority square so
    the next cancellation can happen. The board value never changes.
    """
    trace = _TraceBuilder(record)
    seen = {state.cells}
    while True:
        pos_value = color_value(state, POSITIVE)
        neg_value = color_value(state, NEGATIVE)
        if not (pos_value and neg_value):
            break
        move = next_canonical_move(state)
        if move is None:  # pragma: no cover - unreachable by construction
            raise DomainError("no pairing move available on a mixed board")
        before = board_value(state) if record else 0
        state = apply_match(state, move)
        trace.add_move(move, before, board_value(state) if record else 0)
        if state.cells in seen:  # pragma: no cover - planner is monotone
            raise CycleError("pairing revisited a state")
        seen.add(state.cells)
    return state, trace.build(state)


@dataclass(frozen=True)
class ExploreReport:
    """Outcome of exhaustively rewriting under a rule subset."""

    states_visited: int
    terminals: frozenset[BoardState]
    max_depth: int
    cycle_detected: bool
    truncated: bool


def _pack_cells(cells, lane: int) -> int:
    packed = 0
    slot = 0
    for row in cells:
        for pos, neg in row:
            packed |= pos << (slot * lane) | neg << ((slot + 1) * lane)
            slot += 2
    return packed


def _unpack_cells(packed: int, rows: int, lane: int) -> tuple:
    mask = (1 << lane) - 1
    grid = []
    slot = 0
    for _ in range(rows):
        row = []
        for _ in range(4):
            row.append(
                SquareContent((packed >> (slot * lane)) & mask, (packed >> ((slot + 1) * lane)) & mask)
            )
            slot += 2
        grid.append(tuple(row))
    return tuple(grid)


def _lane_width(state: BoardState) -> int:
    """Bit width per packed count so no move can carry between lanes.

    Non-expansion moves never increase the total token count, and an
    expansion move keeps every count below that color's total value, so
    ``max(total tokens, per-color values)`` bounds every reachable count.
    """
    total_tokens = sum(pos + neg for row in state.cells for pos, neg in row)
    bound = max(
        total_tokens,
        color_value(state, POSITIVE),
        color_value(state, NEGATIVE),
        1,
    )
    return max(16, bound.bit_length() + 2)


def _packed_successor_fn(rows: int, lane: int, rule_ids: frozenset[str] | None):
    """Compile the rule subset into one scanner over packed states.

    Emitting a successor is a single multiply-add on the packed integer;
    tests pin equivalence with ``apply_match`` over ``all_matches``.
    """

    def enabled(rid: str) -> bool:
        return rule_ids is None or rid in rule_ids

    def shift(r: int, i: int, ci: int) -> int:
        return (r * 8 + i * 2 + ci) * lane

    def unit(r: int, i: int, ci: int) -> int:
        return 1 << shift(r, i, ci)

    # Per-(row, sign) delta integers; weight indexes are 5:0 3:1 2:2 1:3.
    def deltas(build):
        return [[build(r, ci) for ci in (0, 1)] for r in range(rows)]

    d_iskay = deltas(lambda r, ci: -2 * unit(r, 2, ci) + unit(r, 1, ci) + unit(r, 3, ci))
    d_kimsa = deltas(lambda r, ci: -2 * unit(r, 1, ci) + unit(r, 0, ci) + unit(r, 3, ci))
    d_k2 = deltas(lambda r, ci: -2 * unit(r, 3, ci) + unit(r, 2, ci))
    d_k3 = deltas(lambda r, ci: -3 * unit(r, 3, ci) + unit(r, 1, ci))
    d_k5 = deltas(lambda r, ci: -5 * unit(r, 3, ci) + unit(r, 0, ci))
    d_p12 = deltas(lambda r, ci: -unit(r, 2, ci) - unit(r, 3, ci) + unit(r, 1, ci))
    d_p23 = deltas(lambda r, ci: -unit(r, 1, ci) - unit(r, 2, ci) + unit(r, 0, ci))
    d_e5 = deltas(lambda r, ci: -unit(r, 0, ci) + unit(r, 1, ci) + unit(r, 2, ci))
    d_e3 = deltas(lambda r, ci: -unit(r, 1, ci) + unit(r, 2, ci) + unit(r, 3, ci))
    d_e2 = deltas(lambda r, ci: -unit(r, 2, ci) + 2 * unit(r, 3, ci))
    carry = rows > 1
    if carry:
        d_pisqa = deltas(lambda r, ci: -2 * unit(r, 0, ci) + unit(r + 1, 3, ci) if r + 1 < rows else 0)
        d_sonqo = deltas(
            lambda r, ci: -2 * unit(r, 1, ci) - 2 * unit(r, 2, ci) + unit(r + 1, 3, ci)
            if r + 1 < rows
            else 0
        )
        d_hatun = deltas(
            lambda r, ci: -unit(r, 0, ci) - unit(r, 1, ci) - unit(r, 2, ci) + unit(r + 1, 3, ci)
            if r + 1 < rows
            else 0
        )
        d_pana = deltas(
            lambda r, ci: -2 * unit(r, 1, ci) - unit(r, 2, ci) - 2 * unit(r, 3, ci) + unit(r + 1, 3, ci)
            if r + 1 < rows
            else 0
        )
        d_huq = deltas(
            lambda r, ci: -unit(r, 1, ci) - 2 * unit(r, 2, ci) - 3 * unit(r, 3, ci) + unit(r + 1, 3, ci)
            if r + 1 < rows
            else 0
        )
        d_kusillu = deltas(
            lambda r, ci: -3 * unit(r, 1, ci) - unit(r, 3, ci) + unit(r + 1, 3, ci)
            if r + 1 < rows
            else 0
        )
    d_ipisqa = deltas(lambda r, ci: -unit(r, 3, ci) + 2 * unit(r - 1, 0, ci) if r else 0)
    d_ihatun = deltas(
        lambda r, ci: -unit(r, 3, ci) + unit(r - 1, 0, ci) + unit(r - 1, 1, ci) + unit(r - 1, 2, ci)
        if r
        else 0
    )
    d_isonqo = deltas(
        lambda r, ci: -unit(r, 3, ci) + 2 * unit(r - 1, 1, ci) + 2 * unit(r - 1, 2, ci) if r else 0
    )
    d_ihuq = deltas(
        lambda r, ci: -unit(r, 3, ci) + unit(r - 1, 1, ci) + 2 * unit(r - 1, 2, ci) + 3 * unit(r - 1, 3, ci)
        if r
        else 0
    )
    d_chinkay = [
        [-unit(r, i, 0) - unit(r, i, 1) for i in range(4)] for r in range(rows)
    ]

    en_iskay = enabled("Iskay")
    en_kimsa = enabled("Kimsa")
    en_pisqa = enabled("Pisqa") and carry
    en_k2 = enabled("Kikin-2on1")
    en_k3 = enabled("Kikin-3on1")
    en_k5 = enabled("Kikin-5on1")
    en_p12 = enabled("Pichana-12")
    en_p23 = enabled("Pichana-23")
    en_e5 = enabled("Expand5")
    en_e3 = enabled("Expand3")
    en_e2 = enabled("Expand2")
    en_ipisqa = enabled("InvPisqa")
    en_ihatun = enabled("InvHatunPichana")
    en_isonqo = enabled("InvSonqo")
    en_ihuq = enabled("InvHuqIskayKimsa")
    en_chunka = enabled(CHUNKA) and carry
    en_sonqo = enabled("Sonqo") and carry
    en_hatun = enabled("HatunPichana") and carry
    en_pana = enabled("PañaChaska") and carry
    en_huq = enabled("HuqIskayKimsa") and carry
    en_kusillu = enabled("Kusillu") and carry
    en_chinkay = enabled(CHINKAY)

    mask = (1 << lane) - 1
    lane2 = 2 * lane
    row_stride = 8 * lane

    def successors(p: int) -> list[int]:
        out: list[int] = []
        ap = out.append
        base = 0
        for r in range(rows):
            c5p = (p >> base) & mask
            c5n = (p >> (base + lane)) & mask
            c3p = (p >> (base + lane2)) & mask
            c3n = (p >> (base + lane2 + lane)) & mask
            c2p = (p >> (base + 2 * lane2)) & mask
            c2n = (p >> (base + 2 * lane2 + lane)) & mask
            c1p = (p >> (base + 3 * lane2)) & mask
            c1n = (p >> (base + 3 * lane2 + lane)) & mask
            base += row_stride
            if not (c5p or c5n or c3p or c3n or c2p or c2n or c1p or c1n):
                continue
            if en_chinkay:
                dch = d_chinkay[r]
                if c5p and c5n:
                    ap(p + min(c5p, c5n) * dch[0])
                if c3p and c3n:
                    ap(p + min(c3p, c3n) * dch[1])
                if c2p and c2n:
                    ap(p + min(c2p, c2n) * dch[2])
                if c1p and c1n:
                    ap(p + min(c1p, c1n) * dch[3])
            for ci, c5, c3, c2, c1 in ((0, c5p, c3p, c2p, c1p), (1, c5n, c3n, c2n, c1n)):
                if not (c5 or c3 or c2 or c1):
                    continue
                if c2 >= 2 and en_iskay:
                    ap(p + (c2 >> 1) * d_iskay[r][ci])
                if c3 >= 2 and en_kimsa:
                    ap(p + (c3 >> 1) * d_kimsa[r][ci])
                if c1 >= 2 and en_k2:
                    ap(p + (c1 >> 1) * d_k2[r][ci])
                if c1 >= 3 and en_k3:
                    ap(p + (c1 // 3) * d_k3[r][ci])
                if c1 >= 5 and en_k5:
                    ap(p + (c1 // 5) * d_k5[r][ci])
                if c1 and c2 and en_p12:
                    ap(p + min(c1, c2) * d_p12[r][ci])
                if c2 and c3 and en_p23:
                    ap(p + min(c2, c3) * d_p23[r][ci])
                if c5 and en_e5:
                    ap(p + c5 * d_e5[r][ci])
                if c3 and en_e3:
                    ap(p + c3 * d_e3[r][ci])
                if c2 and en_e2:
                    ap(p + c2 * d_e2[r][ci])
                if r + 1 < rows:
                    if c5 >= 2 and en_pisqa:
                        ap(p + (c5 >> 1) * d_pisqa[r][ci])
                    if c3 >= 2 and c2 >= 2 and en_sonqo:
                        ap(p + min(c3 >> 1, c2 >> 1) * d_sonqo[r][ci])
                    if c5 and c3 and c2 and en_hatun:
                        ap(p + min(c5, c3, c2) * d_hatun[r][ci])
                    if c3 >= 2 and c2 and c1 >= 2 and en_pana:
                        ap(p + min(c3 >> 1, c2, c1 >> 1) * d_pana[r][ci])
                    if c3 and c2 >= 2 and c1 >= 3 and en_huq:
                        ap(p + min(c3, c2 >> 1, c1 // 3) * d_huq[r][ci])
                    if c3 >= 3 and c1 and en_kusillu:
                        ap(p + min(c3 // 3, c1) * d_kusillu[r][ci])
                    if en_chunka and (c5 >= 10 or c3 >= 10 or c2 >= 10 or c1 >= 10):
                        for i, cnt in ((0, c5), (1, c3), (2, c2), (3, c1)):
                            n = 1
                            while cnt >= 10**n and r + n < rows:
                                ap(
                                    p
                                    - (10**n) * (1 << (base - row_stride + i * lane2 + ci * lane))
                                    + (1 << (base - row_stride + n * row_stride + i * lane2 + ci * lane))
                                )
                                n += 1
                if r and c1:
                    if en_ipisqa:
                        ap(p + c1 * d_ipisqa[r][ci])
                    if en_ihatun:
                        ap(p + c1 * d_ihatun[r][ci])
                    if en_isonqo:
                        ap(p + c1 * d_isonqo[r][ci])
                    if en_ihuq:
                        ap(p + c1 * d_ihuq[r][ci])
        return out

    return successors


def successor_states(
    state: BoardState, rule_ids: frozenset[str] | set[str] | None = None
) -> set[BoardState]:
    """All one-move successors under a rule subset (explore's step relation)."""
    ids = frozenset(rule_ids) if rule_ids is not None else None
    lane = _lane_width(state)
    rows = state.config.rows
    fn = _packed_successor_fn(rows, lane, ids)
    return {
        BoardState(state.config, _unpack_cells(p, rows, lane))
        for p in fn(_pack_cells(state.cells, lane))
    }


def explore(
    state: BoardState,
    rule_ids: frozenset[str] | set[str] | None = None,
    max_states: int = 10**6,
    max_depth: int = 10**4,
) -> ExploreReport:
    """Exhaust every rewrite path from ``state`` under a rule subset.

    Depth-first over the deduplicated state graph; a back edge to a state
    on the current path marks a cycle. Terminals are states with no match
    in the subset. Hitting a limit sets ``truncated`` instead of raising.
    """
    ids = frozenset(rule_ids) if rule_ids is not None else None
    rows = state.config.rows
    lane = _lane_width(state)
    successors = _packed_successor_fn(rows, lane, ids)

    root = _pack_cells(state.cells, lane)
    terminals: set[int] = set()
    visited: set[int] = {root}
    cycle = False
    truncated = False
    deepest = 0

    first = successors(root)
    if not first:
        terminals.add(root)
    stack: list[tuple[int, list[int]]] = [(root, first)]
    # Every non-expansion rule strictly shrinks (token count, 2*#[2] + 3*#[3])
    # lexicographically, so subsets without expansions cannot cycle and the
    # path set need not be maintained for them.
    if rule_ids is not None and not (ids & EXPANSION_IDS):
        while stack:
            key, pending = stack[-1]
            if not pending:
                stack.pop()
                continue
            child = pending.pop()
            if child in visited:
                continue
            if len(visited) >= max_states or len(stack) >= max_depth:
                truncated = True
                continue
            visited.add(child)
            if len(stack) > deepest:
                deepest = len(stack)
            succ = successors(child)
            if not succ:
                terminals.add(child)
            stack.append((child, succ))
    else:
        on_path: set[int] = {root}
        while stack:
            key, pending = stack[-1]
            if not pending:
                stack.pop()
                on_path.discard(key)
                continue
            child = pending.pop()
            if child in visited:
                if child in on_path:
                    cycle = True
                continue
            if len(visited) >= max_states or len(stack) >= max_depth:
                truncated = True
                continue
            visited.add(child)
            on_path.add(child)
            if len(stack) > deepest:
                deepest = len(stack)
            succ = successors(child)
            if not succ:
                terminals.add(child)
            stack.append((child, succ))

    terminal_states = frozenset(
        BoardState(state.config, _unpack_cells(p, rows, lane)) for p in terminals
    )
    return ExploreReport(
        states_visited=len(visited),
        terminals=terminal_states,
        max_depth=deepest,
        cycle_detected=cycle,
        truncated=truncated,
    )
