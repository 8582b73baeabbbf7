"""Command-line front end: arithmetic, verification, exploration, play, serve."""

from __future__ import annotations

import argparse
import json
import sys

from .arithmetic import miray, rakiy, taqay, yapay
from .board import (
    NEGATIVE,
    POSITIVE,
    BoardConfig,
    BoardState,
    board_value,
    encode_number,
    simple_value,
)
from .engine import explore, next_canonical_move
from .errors import YupanaError
from .rules import NON_EXPANSION_IDS, all_matches, apply_match
from .verification import run_all


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip() != ""]


def _print_result(result, args) -> None:
    if result.kind == "div":
        q, r = result.value
        print(f"{q} remainder {r}")
    else:
        print(result.value)
    if args.trace:
        sys.stdout.write(result.trace.export_lines())
        if result.kind == "div" and result.displacements:
            pairs = " ".join(f"{k}:{c}" for k, c in result.displacements)
            print(f"displacements {pairs}")


def _cmd_add(args) -> int:
    result = yapay(args.addends, BoardConfig(rows=args.rows))
    _print_result(result, args)
    return 0


def _cmd_sub(args) -> int:
    minuends = args.minuends
    if minuends is None:
        minuends = [args.minuend] if args.minuend is not None else []
    subtrahends = args.subtrahends
    if subtrahends is None:
        subtrahends = [args.subtrahend] if args.subtrahend is not None else []
    if not minuends:
        print("error: provide a minuend (positional or --minuends)", file=sys.stderr)
        return 2
    result = taqay(minuends, subtrahends, BoardConfig(rows=args.rows))
    _print_result(result, args)
    return 0


def _cmd_mul(args) -> int:
    result = miray(args.multiplicand, args.multiplier, BoardConfig(rows=args.rows))
    _print_result(result, args)
    return 0


def _cmd_div(args) -> int:
    result = rakiy(args.dividend, args.divisor, BoardConfig(rows=args.rows))
    _print_result(result, args)
    return 0


def _cmd_verify(args) -> int:
    reports = run_all(seed=args.seed, scale=args.scale)
    failed = False
    for report in reports:
        record = report.as_record()
        if args.json:
            print(json.dumps(record, ensure_ascii=False))
        else:
            print(f"{report.status.upper():4s} {report.property_id} trials={report.trials}")
            for failure in report.failures[:3]:
                print(f"     seed={failure.seed} {failure.message}")
        failed = failed or report.status == "fail"
    return 1 if failed else 0


def _cmd_explore(args) -> int:
    state = BoardState.empty(BoardConfig(rows=args.rows))
    for value in args.operands:
        state = encode_number(abs(value), POSITIVE if value >= 0 else NEGATIVE, base=state)
    rule_ids = None if args.all_rules else NON_EXPANSION_IDS
    report = explore(state, rule_ids=rule_ids, max_states=args.max_states, max_depth=args.max_depth)
    record = {
        "operands": args.operands,
        "rules": "all" if args.all_rules else "non-expansion",
        "states_visited": report.states_visited,
        "terminals": len(report.terminals),
        "terminal_values": sorted(board_value(t) for t in report.terminals),
        "max_depth": report.max_depth,
        "cycle_detected": report.cycle_detected,
        "truncated": report.truncated,
    }
    print(json.dumps(record, ensure_ascii=False))
    confluent = (
        not report.truncated and not report.cycle_detected and len(report.terminals) == 1
    )
    return 0 if confluent else 1


def _render_board(state: BoardState) -> str:
    lines = ["        [5]     [3]     [2]     [1]"]
    for r in range(state.config.rows - 1, -1, -1):
        cells = []
        for i in range(4):
            pos, neg = state.cells[r][i]
            text = ""
            if pos:
                text += f"{pos}+"
            if neg:
                text += f"{neg}-"
            cells.append((text or ".").rjust(7))
        lines.append(f"x10^{r} {''.join(cells)}")
    return "\n".join(lines)


def _cmd_play(args) -> int:
    state = BoardState.empty(BoardConfig(rows=args.rows))
    print("commands: load <n>, load -<n>, list, <match #>, hint, auto, quit")
    while True:
        print()
        print(_render_board(state))
        value = board_value(state)
        print(f"value={value} simple={simple_value(state) is not None}")
        matches = all_matches(state)
        for idx, match in enumerate(matches, start=1):
            print(f"  {idx}. {match.describe()}")
        try:
            line = input("> ").strip()
        except EOFError:
            return 0
        if not line:
            continue
        if line in ("quit", "exit", "q"):
            return 0
        try:
            if line.startswith("load "):
                n = int(line.split()[1])
                state = encode_number(abs(n), POSITIVE if n >= 0 else NEGATIVE, base=state)
            elif line == "hint":
                move = next_canonical_move(state)
                print("nothing to play" if move is None else f"hint: {move.describe()}")
            elif line == "auto":
                while (move := next_canonical_move(state)) is not None:
                    print(f"  {move.describe()}")
                    state = apply_match(state, move)
            elif line == "list":
                continue
            else:
                chosen = matches[int(line) - 1]
                state = apply_match(state, chosen)
        except (YupanaError, ValueError, IndexError) as exc:
            print(f"error: {exc}")


def _cmd_serve(args) -> int:
    from .http_api import serve

    serve(host=args.host, port=args.port, data_dir=args.data_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yupana",
        description="Counting-board arithmetic via pattern movements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--rows", type=int, default=5, help="board rows (default 5)")
        p.add_argument("--trace", action="store_true", help="print the move trace")

    p_add = sub.add_parser("add", help="add numbers")
    p_add.add_argument("addends", type=int, nargs="+")
    common(p_add)
    p_add.set_defaults(func=_cmd_add)

    p_sub = sub.add_parser("sub", help="subtract: sub MINUEND SUBTRAHEND")
    p_sub.add_argument("minuend", type=int, nargs="?")
    p_sub.add_argument("subtrahend", type=int, nargs="?")
    p_sub.add_argument("--minuends", type=_int_list, help="comma list of minuends")
    p_sub.add_argument("--subtrahends", type=_int_list, help="comma list of subtrahends")
    common(p_sub)
    p_sub.set_defaults(func=_cmd_sub)

    p_mul = sub.add_parser("mul", help="multiply")
    p_mul.add_argument("multiplicand", type=int)
    p_mul.add_argument("multiplier", type=int)
    common(p_mul)
    p_mul.set_defaults(func=_cmd_mul)

    p_div = sub.add_parser("div", help="divide (prints quotient and remainder)")
    p_div.add_argument("dividend", type=int)
    p_div.add_argument("divisor", type=int)
    common(p_div)
    p_div.set_defaults(func=_cmd_div)

    p_verify = sub.add_parser("verify", help="run the property suites")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--scale", choices=("quick", "desk"), default="quick")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_explore = sub.add_parser("explore", help="exhaust rewrite paths of a superposition")
    p_explore.add_argument("operands", type=int, nargs="+")
    p_explore.add_argument("--rows", type=int, default=5)
    p_explore.add_argument("--all-rules", action="store_true", help="include expansions")
    p_explore.add_argument("--max-states", type=int, default=10**6)
    p_explore.add_argument("--max-depth", type=int, default=10**4)
    p_explore.set_defaults(func=_cmd_explore)

    p_play = sub.add_parser("play", help="interactive line-mode board")
    p_play.add_argument("--rows", type=int, default=5)
    p_play.set_defaults(func=_cmd_play)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8177)
    p_serve.add_argument("--data-dir", default=None, help="directory for session event logs")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except YupanaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
