"""Randomized and exhaustive property suites backing the board's math claims.

Every check compares engine behaviour against an independent oracle: plain
host integer arithmetic evaluating token lists directly. Failures carry a
replayable seed and a shrunk snapshot of the offending state.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .arithmetic import abbreviated_replicate, miray, rakiy, taqay, yapay
from .board import (
    NEGATIVE,
    POSITIVE,
    WEIGHTS,
    BoardConfig,
    BoardState,
    SquareAddr,
    capacity,
    encode_number,
    snapshot,
)
from .engine import explore, parallel_step
from .rules import (
    CHINKAY,
    CHUNKA,
    NON_EXPANSION_IDS,
    Match,
    all_matches,
    apply_match,
    catalog,
    match_rule,
    rule_delta,
)


@dataclass
class Failure:
    seed: int
    message: str
    state_snapshot: str = ""


@dataclass
class PropertyReport:
    property_id: str
    trials: int
    failures: list[Failure] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def as_record(self) -> dict:
        return {
            "property": self.property_id,
            "trials": self.trials,
            "status": self.status,
            "failures": [
                {"seed": f.seed, "message": f.message, "state": f.state_snapshot}
                for f in self.failures[:10]
            ],
        }


def oracle_value(state: BoardState) -> int:
    """Board value computed token by token, independent of board_value."""
    total = 0
    for addr, sign in state.tokens():
        total += sign * addr.weight * 10**addr.row
    return total


def random_state(
    rng: random.Random,
    rows: int = 5,
    fill: float = 0.35,
    max_count: int = 4,
    mixed: bool = True,
    heavy_square: bool = False,
) -> BoardState:
    """A random board; ``heavy_square`` occasionally piles up 10+ tokens."""
    state = BoardState.empty(BoardConfig(rows=rows))
    changes = []
    for r in range(rows):
        for w in WEIGHTS:
            if rng.random() >= fill:
                continue
            count = rng.randint(1, max_count)
            sign = rng.choice((POSITIVE, NEGATIVE)) if mixed else POSITIVE
            changes.append((SquareAddr(w, r), sign, count))
            if mixed and rng.random() < 0.3:
                changes.append((SquareAddr(w, r), -sign, rng.randint(1, max_count)))
    if heavy_square:
        r = rng.randrange(rows)
        w = rng.choice(WEIGHTS)
        changes.append((SquareAddr(w, r), POSITIVE, rng.randint(10, 120)))
    return state.apply_changes(changes)


def shrink_state(
    state: BoardState, still_fails: Callable[[BoardState], bool]
) -> BoardState:
    """Greedy counterexample shrink: drop tokens, then trailing empty rows."""
    changed = True
    while changed:
        changed = False
        for addr, cell in list(state.occupied()):
            for sign, count in ((POSITIVE, cell.pos), (NEGATIVE, cell.neg)):
                if not count:
                    continue
                candidate = state.apply_changes([(addr, sign, -1)])
                if still_fails(candidate):
                    state = candidate
                    changed = True
    while state.config.rows > 1:
        top = state.cells[-1]
        if any(c.pos or c.neg for c in top):
            break
        candidate = BoardState(BoardConfig(rows=state.config.rows - 1), state.cells[:-1])
        if not still_fails(candidate):
            break
        state = candidate
    return state


def _pattern_state(rng: random.Random, rule_id: str, rows: int = 5) -> BoardState:
    """A state guaranteed to contain at least one match of the rule."""
    state = random_state(rng, rows=rows, fill=0.2, max_count=2)
    rule = next(r for r in catalog() if r.id == rule_id)
    changes = []
    if rule.id == CHUNKA:
        row = rng.randrange(rows - 1)
        w = rng.choice(WEIGHTS)
        changes.append((SquareAddr(w, row), rng.choice((POSITIVE, NEGATIVE)), 10 ** rng.randint(1, rows - 1 - row)))
    elif rule.id == CHINKAY:
        row = rng.randrange(rows)
        w = rng.choice(WEIGHTS)
        k = rng.randint(1, 4)
        changes.append((SquareAddr(w, row), POSITIVE, k))
        changes.append((SquareAddr(w, row), NEGATIVE, k))
    else:
        offsets = [off for _, off, _ in rule.gives]
        low = max(0, *(-off for off in offsets)) if offsets else 0
        high = rows - 1 - max(0, *(off for off in offsets)) if offsets else rows - 1
        row = rng.randint(low, high)
        sign = rng.choice((POSITIVE, NEGATIVE))
        k = rng.randint(1, 3)
        for w, need in rule.takes:
            changes.append((SquareAddr(w, row), sign, need * k))
    return state.apply_changes(changes)


def check_transfer(trials: int = 1000, seed: int = 0) -> PropertyReport:
    """Transfer: one square's token edits shift the board value by their delta."""
    report = PropertyReport("thm1-transfer", trials)
    rng = random.Random(seed)
    for t in range(trials):
        state = random_state(rng)
        addr = SquareAddr(rng.choice(WEIGHTS), rng.randrange(state.config.rows))
        sign = rng.choice((POSITIVE, NEGATIVE))
        count = rng.randint(0, 5)
        cell = state.get(addr)
        available = cell.pos if sign == POSITIVE else cell.neg
        removing = rng.random() < 0.5 and available > 0
        if removing:
            count = rng.randint(1, available)
        delta = sign * count * addr.weight * 10**addr.row * (-1 if removing else 1)
        edited = state.apply_changes([(addr, sign, -count if removing else count)])
        if oracle_value(edited) != oracle_value(state) + delta:
            report.failures.append(Failure(t, f"transfer delta {delta} not reflected", snapshot(state)))
    return report


def check_invariance(trials_per_rule: int = 1000, seed: int = 0) -> PropertyReport:
    """Invariance: applying any catalog match never changes the board value."""
    rules = catalog()
    report = PropertyReport("thm2-invariance", trials_per_rule * len(rules))
    rng = random.Random(seed)
    for rule in rules:
        for t in range(trials_per_rule):
            trial_seed = rng.randrange(2**31)
            trng = random.Random(trial_seed)
            state = (
                _pattern_state(trng, rule.id)
                if t % 2 == 0
                else random_state(trng, heavy_square=rule.id == CHUNKA)
            )
            for match in match_rule(rule, state)[:4]:
                if rule_delta(match) != 0:
                    report.failures.append(
                        Failure(trial_seed, f"{rule.id} match has nonzero delta", snapshot(state))
                    )
                    continue
                after = apply_match(state, match)
                if oracle_value(after) != oracle_value(state):
                    def fails(s: BoardState, m: Match = match) -> bool:
                        try:
                            return oracle_value(apply_match(s, m)) != oracle_value(s)
                        except Exception:
                            return False
                    shrunk = shrink_state(state, fails)
                    report.failures.append(
                        Failure(trial_seed, f"{rule.id} changed the value", snapshot(shrunk))
                    )
    return report


def check_superposition(samples: int = 500, seed: int = 0) -> PropertyReport:
    """Superposition: loading several numbers stacks their values additively."""
    report = PropertyReport("thm3-superposition", samples)
    rng = random.Random(seed)
    config = BoardConfig()
    for t in range(samples):
        j = rng.randint(2, 5)
        values = [rng.randint(0, capacity(config) // j) for _ in range(j)]
        state = BoardState.empty(config)
        for v in values:
            state = encode_number(v, POSITIVE, base=state)
        if oracle_value(state) != sum(values):
            report.failures.append(Failure(t, f"superposition of {values} wrong", snapshot(state)))
    return report


def check_scaling(samples: int = 500, seed: int = 0) -> PropertyReport:
    """Scaling: j copies of every token of a simple state multiply the value by j."""
    report = PropertyReport("thm4-scaling", samples)
    rng = random.Random(seed)
    for t in range(samples):
        n = rng.randint(0, 9999)
        j = t % 9 + 1  # cycle so every factor in 1..9 is exercised
        state = encode_number(n)
        scaled = state.apply_changes(
            [(addr, POSITIVE, cell.pos * (j - 1)) for addr, cell in state.occupied()]
        )
        if oracle_value(scaled) != j * n:
            report.failures.append(Failure(t, f"scaling {n} by {j} wrong", snapshot(scaled)))
    return report


def check_replication(samples: int = 1000, seed: int = 0) -> PropertyReport:
    """Abbreviated and full replication shift the board value identically."""
    report = PropertyReport("thm5-replication", samples)
    rng = random.Random(seed)
    for t in range(samples):
        n = rng.randint(2, 99)
        rows = 5
        row = rng.randrange(rows - (2 if n >= 10 else 1) + 1)
        addr = SquareAddr(rng.choice(WEIGHTS), row)
        base = random_state(rng, rows=rows, fill=0.2, mixed=False)
        base = base.apply_changes([(addr, POSITIVE, 1)])
        abbreviated = abbreviated_replicate(base, addr, n)
        full = base.apply_changes([(addr, POSITIVE, n - 1)])
        delta_abbrev = oracle_value(abbreviated) - oracle_value(base)
        delta_full = oracle_value(full) - oracle_value(base)
        expected = (n - 1) * addr.weight * 10**addr.row
        if not (delta_abbrev == delta_full == expected):
            report.failures.append(
                Failure(t, f"replication deltas differ for n={n} at {addr}", snapshot(base))
            )
    return report


def _operation_cases(rng: random.Random, samples: int | None):
    """(add, sub, mul, div) operand pair iterables; exhaustive when None."""
    if samples is None:
        add = ((a, b) for a in range(1000) for b in range(1000))
        sub = ((a, b) for a in range(1000) for b in range(1000))
        mul = ((a, b) for a in range(1000) for b in range(100) if a * b <= 99999)
        div = ((a, b) for a in range(1000) for b in range(1, 100))
        return add, sub, mul, div
    add = [(rng.randint(0, 999), rng.randint(0, 999)) for _ in range(samples)]
    sub = [(rng.randint(0, 999), rng.randint(0, 999)) for _ in range(samples)]
    mul = []
    while len(mul) < samples:
        a, b = rng.randint(0, 999), rng.randint(0, 99)
        if a * b <= 99999:
            mul.append((a, b))
    div = [(rng.randint(0, 999), rng.randint(1, 99)) for _ in range(samples)]
    return add, sub, mul, div


def check_operations(samples: int | None = 300, seed: int = 0) -> list[PropertyReport]:
    """The four operations agree with host integer arithmetic."""
    rng = random.Random(seed)
    add_cases, sub_cases, mul_cases, div_cases = _operation_cases(rng, samples)

    add_report = PropertyReport("thm6-addition", 1)
    if yapay([736, 532], record=False).value != 1268:
        add_report.failures.append(Failure(0, "736+532 must give 1268"))
    for a, b in add_cases:
        add_report.trials += 1
        if yapay([a, b], record=False).value != a + b:
            add_report.failures.append(Failure(seed, f"{a}+{b} wrong"))

    sub_report = PropertyReport("thm7-subtraction", 1)
    if taqay([945], [532], record=False).value != 413:
        sub_report.failures.append(Failure(0, "945-532 must give 413"))
    for a, b in sub_cases:
        sub_report.trials += 1
        if taqay([a], [b], record=False).value != a - b:
            sub_report.failures.append(Failure(seed, f"{a}-{b} wrong"))

    mul_report = PropertyReport("thm8-multiplication", 1)
    if miray(513, 3, record=False).value != 1539:
        mul_report.failures.append(Failure(0, "513*3 must give 1539"))
    for a, b in mul_cases:
        mul_report.trials += 1
        if miray(a, b, record=False).value != a * b:
            mul_report.failures.append(Failure(seed, f"{a}*{b} wrong"))

    div_report = PropertyReport("thm9-division", 1)
    if rakiy(1534, 322, record=False).value != (4, 246):
        div_report.failures.append(Failure(0, "1534/322 must give (4, 246)"))
    for a, b in div_cases:
        div_report.trials += 1
        q, r = rakiy(a, b, record=False).value
        if not (a == q * b + r and 0 <= r < b):
            div_report.failures.append(Failure(seed, f"{a}/{b} gave ({q}, {r})"))

    return [add_report, sub_report, mul_report, div_report]


def random_decomposition(rng: random.Random, n: int, max_parts: int = 4) -> list[int]:
    """Split n into 2..max_parts non-negative summands, uniformly cut."""
    parts = rng.randint(2, max_parts)
    cuts = sorted(rng.randint(0, n) for _ in range(parts - 1))
    values = []
    prev = 0
    for c in cuts + [n]:
        values.append(c - prev)
        prev = c
    return values


def check_confluence(
    max_value: int = 500, decompositions: int = 3, seed: int = 0
) -> PropertyReport:
    """All non-expansion rewrite paths of a superposition reach one terminal."""
    report = PropertyReport("confluence", (max_value + 1) * decompositions)
    rng = random.Random(seed)
    for n in range(max_value + 1):
        for _ in range(decompositions):
            values = random_decomposition(rng, n)
            state = BoardState.empty(BoardConfig())
            for v in values:
                state = encode_number(v, POSITIVE, base=state)
            result = explore(state, rule_ids=NON_EXPANSION_IDS)
            expected = encode_number(n)
            ok = (
                not result.truncated
                and not result.cycle_detected
                and result.terminals == frozenset({expected})
            )
            if not ok:
                report.failures.append(
                    Failure(n, f"decomposition {values} of {n} not confluent", snapshot(state))
                )
    return report


def _non_conflicting_set(rng: random.Random, state: BoardState, limit: int = 4) -> list[Match]:
    found = all_matches(state)
    rng.shuffle(found)
    chosen: list[Match] = []
    for match in found:
        if len(chosen) >= limit:
            break
        if all(match.touched.isdisjoint(c.touched) for c in chosen):
            chosen.append(match)
    return chosen


def check_parallelism(samples: int = 500, seed: int = 0) -> PropertyReport:
    """Disjoint matches give the same board in any order, and in parallel."""
    report = PropertyReport("parallelism", samples)
    rng = random.Random(seed)
    for t in range(samples):
        trial_seed = rng.randrange(2**31)
        trng = random.Random(trial_seed)
        state = random_state(trng, fill=0.5)
        chosen = _non_conflicting_set(trng, state)
        if not chosen:
            continue
        together = parallel_step(state, chosen)
        for order in itertools.permutations(chosen):
            s = state
            for match in order:
                s = apply_match(s, match)
            if s != together:
                report.failures.append(
                    Failure(trial_seed, "sequential order diverged from parallel step", snapshot(state))
                )
                break
    return report


def run_all(seed: int = 0, scale: str = "quick") -> list[PropertyReport]:
    """Every property suite; ``desk`` scale matches the acceptance ranges."""
    desk = scale == "desk"
    reports = [
        check_transfer(1000, seed),
        check_invariance(1000 if desk else 200, seed),
        check_superposition(500, seed),
        check_scaling(500, seed),
        check_replication(1000, seed),
    ]
    reports.extend(check_operations(None if desk else 300, seed))
    reports.append(check_confluence(9999 if desk else 300, 3, seed))
    reports.append(check_parallelism(500, seed))
    return reports
