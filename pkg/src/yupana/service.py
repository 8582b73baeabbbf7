"""Interactive session layer: loading, move listing/application, persistence.

A session wraps one board plus its full step history. Every mutation is
appended to a per-session event log (line-delimited JSON) and sessions are
reconstructed by replaying that log, so a stored log always reproduces the
exact final board snapshot.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .board import (
    BoardConfig,
    BoardState,
    SquareAddr,
    board_value,
    capacity,
    encode_number,
    simple_value,
    snapshot,
)
from .engine import MoveTrace, TraceStep, next_canonical_move
from .errors import DomainError, NoMatchError, StaleMatchError, YupanaError
from .rules import Match, all_matches, apply_match

GUIDED_OPERATIONS = ("add", "sub")


class UnknownSessionError(YupanaError):
    """No session with the requested id."""


@dataclass(frozen=True)
class SessionMode:
    name: str = "free"  # free | guided | atipanakuy
    operation: str | None = None
    operands: tuple[tuple[int, int], ...] = ()  # (value, sign)
    target: int | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "operation": self.operation,
            "operands": [{"value": v, "sign": s} for v, s in self.operands],
            "target": self.target,
        }


@dataclass
class Session:
    id: str
    config: BoardConfig
    mode: SessionMode
    state: BoardState
    steps: list[TraceStep] = field(default_factory=list)
    revision: int = 0
    move_count: int = 0
    created_at: float = 0.0
    updated_at: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def trace(self) -> MoveTrace:
        return MoveTrace(tuple(self.steps), self.state)

    def status(self) -> dict:
        value = board_value(self.state)
        simple = simple_value(self.state) is not None
        completed = simple and (self.mode.target is None or value == self.mode.target)
        return {
            "id": self.id,
            "rows": self.config.rows,
            "mode": self.mode.as_dict(),
            "snapshot": snapshot(self.state),
            "value": value,
            "is_simple": simple,
            "completed": completed,
            "revision": self.revision,
            "move_count": self.move_count,
            "elapsed_seconds": round(time.time() - self.created_at, 3),
            "created_at": self.created_at,
            "updated_at": self.updated_at,
        }


def match_id(match: Match, revision: int) -> str:
    """Stable id binding a match to a board revision, so stale applies show."""
    raw = (
        f"{match.rule_id}|{match.sign}|{match.anchor_row}|{match.weight}"
        f"|{match.k}|{match.n}|{revision}"
    )
    return hashlib.blake2b(raw.encode(), digest_size=8).hexdigest()


def match_payload(match: Match, revision: int) -> dict:
    return {
        "match_id": match_id(match, revision),
        "rule_id": match.rule_id,
        "sign": match.sign,
        "anchor_row": match.anchor_row,
        "weight": match.weight,
        "k": match.k,
        "n": match.n,
        "squares": [{"row": a.row, "weight": a.weight} for a in sorted(match.touched)],
        "removals": [
            {"row": a.row, "weight": a.weight, "sign": s, "count": c}
            for a, s, c in match.removals
        ],
        "deposits": [
            {"row": a.row, "weight": a.weight, "sign": s, "count": c}
            for a, s, c in match.deposits
        ],
        "description": match.describe(),
    }


def _match_to_record(match: Match) -> dict:
    return {
        "rule_id": match.rule_id,
        "sign": match.sign,
        "anchor_row": match.anchor_row,
        "weight": match.weight,
        "k": match.k,
        "n": match.n,
        "removals": [[a.weight, a.row, s, c] for a, s, c in match.removals],
        "deposits": [[a.weight, a.row, s, c] for a, s, c in match.deposits],
    }


def _match_from_record(record: dict) -> Match:
    return Match(
        record["rule_id"],
        record["sign"],
        record["anchor_row"],
        record["weight"],
        record["k"],
        record["n"],
        tuple((SquareAddr(w, r), s, c) for w, r, s, c in record["removals"]),
        tuple((SquareAddr(w, r), s, c) for w, r, s, c in record["deposits"]),
    )


def step_payload(step: TraceStep) -> dict:
    return {
        "index": step.index,
        "kind": step.kind,
        "rule_id": step.rule_id,
        "sign": step.sign,
        "anchor_row": step.anchor_row,
        "k": step.k,
        "n": step.n,
        "value_before": step.value_before,
        "value_after": step.value_after,
    }


class SessionStore:
    """In-memory sessions with optional append-only event logs on disk."""

    def __init__(self, root: Path | str | None = None) -> None:
        self.root = Path(root) if root is not None else None
        self.sessions: dict[str, Session] = {}
        self._store_lock = threading.Lock()
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)
            for log in sorted(self.root.glob("*.jsonl")):
                session = self._replay_log(log)
                self.sessions[session.id] = session

    # -- persistence ----------------------------------------------------

    def _log_path(self, sid: str) -> Path | None:
        return self.root / f"{sid}.jsonl" if self.root is not None else None

    def _append_event(self, sid: str, record: dict) -> None:
        path = self._log_path(sid)
        if path is None:
            return
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")

    def _replay_log(self, path: Path) -> Session:
        session: Session | None = None
        with path.open(encoding="utf-8") as fh:
            for line in fh:
                record = json.loads(line)
                event = record["event"]
                if event == "create":
                    session = self._make_session(
                        record["id"],
                        BoardConfig(rows=record["rows"]),
                        SessionMode(
                            record["mode"],
                            record.get("operation"),
                            tuple((v, s) for v, s in record.get("operands", [])),
                            record.get("target"),
                        ),
                        created_at=record["ts"],
                    )
                elif event == "load":
                    self._do_load(session, record["value"], record["sign"], ts=record["ts"])
                elif event == "move":
                    self._do_move(session, _match_from_record(record["match"]), ts=record["ts"])
        if session is None:
            raise DomainError(f"event log {path} holds no create event")
        return session

    # -- internals ------------------------------------------------------

    def _make_session(
        self, sid: str, config: BoardConfig, mode: SessionMode, created_at: float
    ) -> Session:
        return Session(
            id=sid,
            config=config,
            mode=mode,
            state=BoardState.empty(config),
            created_at=created_at,
            updated_at=created_at,
        )

    def _do_load(self, session: Session, value: int, sign: int, ts: float) -> None:
        before = board_value(session.state)
        session.state = encode_number(value, sign, base=session.state)
        session.steps.append(
            TraceStep(len(session.steps), "load", "load", sign, 0, sign, value,
                      before, board_value(session.state))
        )
        session.revision += 1
        session.updated_at = ts

    def _do_move(self, session: Session, match: Match, ts: float) -> None:
        before = board_value(session.state)
        session.state = apply_match(session.state, match)
        session.steps.append(
            TraceStep(len(session.steps), "move", match.rule_id, match.sign,
                      match.anchor_row, match.k, match.n, before,
                      board_value(session.state), match)
        )
        session.revision += 1
        session.move_count += 1
        session.updated_at = ts

    # -- public API -----------------------------------------------------

    def create_session(
        self,
        rows: int = 5,
        mode: str = "free",
        operation: str | None = None,
        operands: list[dict] | None = None,
    ) -> Session:
        if mode not in ("free", "guided", "atipanakuy"):
            raise DomainError(f"unknown session mode {mode!r}")
        config = BoardConfig(rows=rows)
        loaded: list[tuple[int, int]] = []
        target: int | None = None
        if mode in ("guided", "atipanakuy") and operation is not None:
            if operation not in GUIDED_OPERATIONS:
                raise DomainError(
                    f"guided sessions support operations {GUIDED_OPERATIONS}, not {operation!r}"
                )
            for op in operands or []:
                value = int(op["value"])
                sign = int(op.get("sign", 1))
                if sign not in (1, -1):
                    raise DomainError("operand sign must be +1 or -1")
                if operation == "add" and sign != 1:
                    raise DomainError("addition loads positive operands only")
                loaded.append((value, sign))
            target = sum(v * s for v, s in loaded)
            if abs(target) > capacity(config):
                raise DomainError(f"target {target} exceeds the board capacity")
        elif operands:
            raise DomainError("operands require a guided or atipanakuy session with an operation")

        sid = uuid.uuid4().hex[:12]
        now = time.time()
        session = self._make_session(sid, config, SessionMode(mode, operation, tuple(loaded), target), now)
        with self._store_lock:
            self.sessions[sid] = session
        self._append_event(sid, {
            "event": "create", "id": sid, "rows": rows, "mode": mode,
            "operation": operation, "operands": [[v, s] for v, s in loaded],
            "target": target, "ts": now,
        })
        for value, sign in loaded:
            now = time.time()
            self._do_load(session, value, sign, now)
            self._append_event(sid, {"event": "load", "value": value, "sign": sign, "ts": now})
        return session

    def get_session(self, sid: str) -> Session:
        try:
            return self.sessions[sid]
        except KeyError:
            raise UnknownSessionError(f"unknown session {sid!r}") from None

    def load_operand(self, sid: str, value: int, sign: int) -> Session:
        session = self.get_session(sid)
        with session.lock:
            if sign not in (1, -1):
                raise DomainError("sign must be +1 or -1")
            now = time.time()
            self._do_load(session, value, sign, now)
            self._append_event(sid, {"event": "load", "value": value, "sign": sign, "ts": now})
        return session

    def list_matches(self, sid: str, rule_filter: list[str] | None = None) -> list[dict]:
        session = self.get_session(sid)
        with session.lock:
            found = all_matches(
                session.state,
                rule_ids=frozenset(rule_filter) if rule_filter else None,
            )
            return [match_payload(m, session.revision) for m in found]

    def apply_move(self, sid: str, target_id: str) -> Session:
        session = self.get_session(sid)
        with session.lock:
            for match in all_matches(session.state):
                if match_id(match, session.revision) == target_id:
                    now = time.time()
                    self._do_move(session, match, now)
                    self._append_event(
                        sid, {"event": "move", "match": _match_to_record(match), "ts": now}
                    )
                    return session
            raise StaleMatchError(
                f"match {target_id!r} is not applicable to revision {session.revision}"
            )

    def hint(self, sid: str) -> dict:
        session = self.get_session(sid)
        with session.lock:
            move = next_canonical_move(session.state)
            if move is None:
                raise NoMatchError("board is already simple; nothing to play")
            return match_payload(move, session.revision)

    def auto_run(self, sid: str, step_budget: int | None = None) -> dict:
        """Play canonical moves until the board is simple or the budget runs out."""
        session = self.get_session(sid)
        applied = 0
        with session.lock:
            while step_budget is None or applied < step_budget:
                move = next_canonical_move(session.state)
                if move is None:
                    break
                now = time.time()
                self._do_move(session, move, now)
                self._append_event(
                    sid, {"event": "move", "match": _match_to_record(move), "auto": True, "ts": now}
                )
                applied += 1
            finished = next_canonical_move(session.state) is None
        return {"applied": applied, "finished": finished, "session": session}

    def trace(self, sid: str) -> list[dict]:
        session = self.get_session(sid)
        with session.lock:
            return [step_payload(s) for s in session.steps]

    def trace_lines(self, sid: str) -> str:
        session = self.get_session(sid)
        with session.lock:
            return session.trace().export_lines()
