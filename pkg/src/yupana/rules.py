"""The pattern-movement catalog: detection, application, value accounting.

Every rule replaces tokens on a handful of squares with tokens elsewhere so
that the board value never changes. Reducing rules shrink a square's count,
expansion rules trade one token for several on lighter squares, composite
rules carry a row's worth of value up one row (or, for Chunka, ``n`` rows).
Chinkay is the single cross-color rule: it cancels positive/negative pairs.

Most rules scale with a multiplicity ``k``; matches bind the largest ``k``
the pattern allows. Rules act on one token color at a time, so a board
holding both colors yields separate matches per color.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    NEGATIVE,
    POSITIVE,
    WEIGHT_INDEX,
    WEIGHTS,
    BoardState,
    SquareAddr,
)
from .errors import DomainError, OverflowError, StaleMatchError

REDUCING = "reducing"
EXPANSION = "expansion"
COMPOSITE = "composite"


@dataclass(frozen=True)
class Rule:
    """One catalog entry.

    ``takes`` lists ``(weight, count-per-k)`` removed from the anchor row;
    ``gives`` lists ``(weight, row-offset, count-per-k)`` deposited. Chunka
    and Chinkay have bespoke matchers and leave both tuples empty.
    """

    id: str
    name: str
    kind: str
    pattern: str
    movement: str
    takes: tuple[tuple[int, int], ...] = ()
    gives: tuple[tuple[int, int, int], ...] = ()


@dataclass(frozen=True)
class Match:
    """A rule bound to a concrete spot on a concrete board.

    ``sign`` is the token color the rule acts on (+1/-1), or 0 for Chinkay
    which removes both. ``removals`` and ``deposits`` are concrete
    ``(addr, sign, count)`` lists; applying a match is just executing them.
    """

    rule_id: str
    sign: int
    anchor_row: int
    weight: int | None
    k: int
    n: int
    removals: tuple[tuple[SquareAddr, int, int], ...]
    deposits: tuple[tuple[SquareAddr, int, int], ...]

    @property
    def touched(self) -> frozenset[SquareAddr]:
        return frozenset(a for a, _, _ in self.removals + self.deposits)

    def describe(self) -> str:
        def fmt(entries):
            return ", ".join(
                f"{c}{'+' if s == POSITIVE else '-'}@({a.weight},{a.row})"
                for a, s, c in entries
            )

        out = fmt(self.deposits) if self.deposits else "nothing"
        return f"{self.rule_id}: remove {fmt(self.removals)}; place {out}"


CHUNKA = "Chunka"
CHINKAY = "Chinkay"

_CATALOG: tuple[Rule, ...] = (
    # Table of reducing movements.
    Rule(
        "Iskay", "Iskay (short opening)", REDUCING,
        "[2] holds more than one token",
        "move half of an even count to [1] and half to [3]; an odd count leaves one token on [2]",
        takes=((2, 2),), gives=((3, 0, 1), (1, 0, 1)),
    ),
    Rule(
        "Kimsa", "Kimsa (long opening)", REDUCING,
        "[3] holds more than one token",
        "move half of an even count to [1] and half to [5]; an odd count leaves one token on [3]",
        takes=((3, 2),), gives=((5, 0, 1), (1, 0, 1)),
    ),
    Rule(
        "Pisqa", "Pisqa (big L)", REDUCING,
        "[5] holds more than one token",
        "per pair of tokens on [5], place one token on [1] one row up; an odd count leaves one token on [5]",
        takes=((5, 2),), gives=((1, 1, 1),),
    ),
    Rule(
        "Kikin-2on1", "Kikin (2 on [1] is 1 on [2])", REDUCING,
        "[1] holds two tokens",
        "replace two tokens on [1] by one token on [2]",
        takes=((1, 2),), gives=((2, 0, 1),),
    ),
    Rule(
        "Kikin-3on1", "Kikin (3 on [1] is 1 on [3])", REDUCING,
        "[1] holds three tokens",
        "replace three tokens on [1] by one token on [3]",
        takes=((1, 3),), gives=((3, 0, 1),),
    ),
    Rule(
        "Kikin-5on1", "Kikin (5 on [1] is 1 on [5])", REDUCING,
        "[1] holds five tokens",
        "replace five tokens on [1] by one token on [5]",
        takes=((1, 5),), gives=((5, 0, 1),),
    ),
    Rule(
        "Pichana-12", "Pichana (sweep [1][2])", REDUCING,
        "[1] and [2] hold one token each",
        "replace both tokens by one token on [3]",
        takes=((2, 1), (1, 1)), gives=((3, 0, 1),),
    ),
    Rule(
        "Pichana-23", "Pichana (sweep [2][3])", REDUCING,
        "[2] and [3] hold one token each",
        "replace both tokens by one token on [5]",
        takes=((3, 1), (2, 1)), gives=((5, 0, 1),),
    ),
    # Table of expansion and composite movements.
    Rule(
        "Expand5", "Expansion of 5", EXPANSION,
        "a token on [5]",
        "replace one token on [5] by one token on [3] and one on [2]",
        takes=((5, 1),), gives=((3, 0, 1), (2, 0, 1)),
    ),
    Rule(
        "Expand3", "Expansion of 3", EXPANSION,
        "a token on [3]",
        "replace one token on [3] by one token on [2] and one on [1]",
        takes=((3, 1),), gives=((2, 0, 1), (1, 0, 1)),
    ),
    Rule(
        "Expand2", "Expansion of 2", EXPANSION,
        "a token on [2]",
        "replace one token on [2] by two tokens on [1]",
        takes=((2, 1),), gives=((1, 0, 2),),
    ),
    Rule(
        "InvPisqa", "Inverse Pisqa", EXPANSION,
        "a token on [1] above row 0",
        "replace a token on [1] of row r+1 by two tokens on [5] of row r",
        takes=((1, 1),), gives=((5, -1, 2),),
    ),
    Rule(
        "InvHatunPichana", "Inverse Hatun Pichana", EXPANSION,
        "a token on [1] above row 0",
        "replace a token on [1] of row r+1 by one token each on [5], [3], [2] of row r",
        takes=((1, 1),), gives=((5, -1, 1), (3, -1, 1), (2, -1, 1)),
    ),
    Rule(
        "InvSonqo", "Inverse Sonqo (inverse heart)", EXPANSION,
        "a token on [1] above row 0",
        "replace a token on [1] of row r+1 by two tokens on [3] and two on [2] of row r",
        takes=((1, 1),), gives=((3, -1, 2), (2, -1, 2)),
    ),
    Rule(
        "InvHuqIskayKimsa", "Inverse Huq-Iskay-Kimsa (inverse 1-2-3)", EXPANSION,
        "a token on [1] above row 0",
        "replace a token on [1] of row r+1 by one token on [3], two on [2], three on [1] of row r",
        takes=((1, 1),), gives=((3, -1, 1), (2, -1, 2), (1, -1, 3)),
    ),
    Rule(
        CHUNKA, "Chunka (10; also Pachaq 100, Waranqa 1000, ...)", COMPOSITE,
        "some square [s] holds 10**n tokens",
        "replace 10**n tokens on [s] of row r by one token on [s] of row r+n",
    ),
    Rule(
        "Sonqo", "Sonqo (heart)", COMPOSITE,
        "two tokens on [2] and two on [3] of one row",
        "replace those four tokens by one token on [1] one row up",
        takes=((3, 2), (2, 2)), gives=((1, 1, 1),),
    ),
    Rule(
        "HatunPichana", "Hatun Pichana (big sweep)", COMPOSITE,
        "one token each on [5], [3], [2] of one row",
        "replace those three tokens by one token on [1] one row up",
        takes=((5, 1), (3, 1), (2, 1)), gives=((1, 1, 1),),
    ),
    Rule(
        "PañaChaska", "Paña Chaska (star at right side)", COMPOSITE,
        "two tokens on [3], one on [2], two on [1] of one row",
        "replace those five tokens by one token on [1] one row up",
        takes=((3, 2), (2, 1), (1, 2)), gives=((1, 1, 1),),
    ),
    Rule(
        "HuqIskayKimsa", "Huq-Iskay-Kimsa (1-2-3)", COMPOSITE,
        "one token on [3], two on [2], three on [1] of one row",
        "replace those six tokens by one token on [1] one row up",
        takes=((3, 1), (2, 2), (1, 3)), gives=((1, 1, 1),),
    ),
    Rule(
        "Kusillu", "K'usillu (monkey)", COMPOSITE,
        "three tokens on [3] and one on [1] of one row",
        "replace those four tokens by one token on [1] one row up",
        takes=((3, 3), (1, 1)), gives=((1, 1, 1),),
    ),
    Rule(
        CHINKAY, "Chinkay (disappear)", COMPOSITE,
        "k positive and k negative tokens on one square",
        "take away the k mixed-color pairs",
    ),
)

_BY_ID = {rule.id: rule for rule in _CATALOG}
RULE_ORDER = {rule.id: i for i, rule in enumerate(_CATALOG)}

EXPANSION_IDS = frozenset(r.id for r in _CATALOG if r.kind == EXPANSION)
NON_EXPANSION_IDS = frozenset(r.id for r in _CATALOG if r.kind != EXPANSION)
#: Rules whose application strictly reduces the total token count.
SHRINKING_IDS = frozenset(
    {"Pisqa", "Kikin-2on1", "Kikin-3on1", "Kikin-5on1", "Pichana-12", "Pichana-23",
     CHUNKA, "Sonqo", "HatunPichana", "PañaChaska", "HuqIskayKimsa", "Kusillu", CHINKAY}
)


def catalog() -> tuple[Rule, ...]:
    """The full 22-rule catalog in table order."""
    return _CATALOG


def rule_by_id(rule_id: str) -> Rule:
    try:
        return _BY_ID[rule_id]
    except KeyError:
        raise DomainError(f"unknown rule id {rule_id!r}") from None


def catalog_document() -> list[dict]:
    """Data rendering of the catalog for UIs and docs."""
    return [
        {
            "id": r.id,
            "name": r.name,
            "kind": r.kind,
            "pattern": r.pattern,
            "movement": r.movement,
            "takes": [{"weight": w, "count": c} for w, c in r.takes],
            "gives": [{"weight": w, "row_offset": off, "count": c} for w, off, c in r.gives],
        }
        for r in _CATALOG
    ]


def build_generic_match(rule: Rule, sign: int, row: int, k: int) -> Match:
    """Assemble the concrete match of a takes/gives rule at ``(row, k)``."""
    removals = tuple(
        (SquareAddr(w, row), sign, need * k) for w, need in rule.takes
    )
    deposits = tuple(
        (SquareAddr(w, row + off), sign, cnt * k) for w, off, cnt in rule.gives
    )
    weight = rule.takes[0][0] if len(rule.takes) == 1 else None
    return Match(rule.id, sign, row, weight, k, 0, removals, deposits)


def _generic_matches(rule: Rule, state: BoardState, signs: tuple[int, ...]) -> list[Match]:
    rows = state.config.rows
    offsets = [off for _, off, _ in rule.gives]
    matches = []
    for sign in signs:
        for row in range(rows):
            if any(not 0 <= row + off < rows for off in offsets):
                continue
            k = min(
                state.count(w, row, sign) // need for w, need in rule.takes
            )
            if k >= 1:
                matches.append(build_generic_match(rule, sign, row, k))
    return matches


def _chunka_matches(state: BoardState, signs: tuple[int, ...]) -> list[Match]:
    rows = state.config.rows
    matches = []
    for sign in signs:
        for row in range(rows):
            for w in WEIGHTS:
                count = state.count(w, row, sign)
                if count < 10:
                    continue
                n = 1
                while 10**n <= count and row + n < rows:
                    matches.append(
                        Match(
                            CHUNKA, sign, row, w, 1, n,
                            ((SquareAddr(w, row), sign, 10**n),),
                            ((SquareAddr(w, row + n), sign, 1),),
                        )
                    )
                    n += 1
    return matches


def _chinkay_matches(state: BoardState) -> list[Match]:
    matches = []
    for r, row in enumerate(state.cells):
        for i, cell in enumerate(row):
            k = min(cell.pos, cell.neg)
            if k >= 1:
                addr = SquareAddr(WEIGHTS[i], r)
                matches.append(
                    Match(
                        CHINKAY, 0, r, WEIGHTS[i], k, 0,
                        ((addr, POSITIVE, k), (addr, NEGATIVE, k)),
                        (),
                    )
                )
    return matches


def match_rule(rule: Rule, state: BoardState, sign: int | None = None) -> list[Match]:
    """All maximal matches of one rule, optionally restricted to one color."""
    signs = (POSITIVE, NEGATIVE) if sign is None else (sign,)
    if rule.id == CHUNKA:
        return _chunka_matches(state, signs)
    if rule.id == CHINKAY:
        return _chinkay_matches(state)
    return _generic_matches(rule, state, signs)


def match_order_key(match: Match) -> tuple:
    """Deterministic listing order: row, heaviest square, catalog order."""
    top_weight = max(a.weight for a, _, _ in match.removals)
    return (
        match.anchor_row,
        WEIGHT_INDEX[top_weight],
        RULE_ORDER[match.rule_id],
        -match.sign,
        -match.n,
    )


def all_matches(
    state: BoardState,
    rule_ids: frozenset[str] | set[str] | None = None,
    sign: int | None = None,
) -> list[Match]:
    """Every match on the board, deterministically ordered."""
    found: list[Match] = []
    for rule in _CATALOG:
        if rule_ids is not None and rule.id not in rule_ids:
            continue
        found.extend(match_rule(rule, state, sign))
    found.sort(key=match_order_key)
    return found


def apply_match(state: BoardState, match: Match) -> BoardState:
    """Execute a match: its removals must still be present on the board."""
    for addr, sign, count in match.removals:
        if not state.in_bounds(addr):
            raise OverflowError(f"match removal at {addr} is outside the board")
        if state.count(addr.weight, addr.row, sign) < count:
            raise StaleMatchError(
                f"{match.rule_id} expected {count} tokens on {addr}; board has fewer"
            )
    for addr, _, _ in match.deposits:
        if not state.in_bounds(addr):
            raise OverflowError(f"match deposit at {addr} is outside the board")
    changes = [(a, s, -c) for a, s, c in match.removals]
    changes.extend(match.deposits)
    return state.apply_changes(changes)


def rule_delta(match: Match) -> int:
    """Net board-value change a match would cause; zero for every catalog rule."""
    total = 0
    for addr, sign, count in match.deposits:
        total += sign * count * addr.weight * 10**addr.row
    for addr, sign, count in match.removals:
        total -= sign * count * addr.weight * 10**addr.row
    return total
