/** Pure view-model: snapshot parsing, grid building, move-log bookkeeping.
 *
 * Nothing here mutates board state; the service snapshot is the single
 * source of truth and the grid is rebuilt from it after every action.
 */

import type { MatchInfo, SessionStatus, TraceStep } from "./api.js";

export const COLUMN_WEIGHTS = [5, 3, 2, 1] as const;

export interface CellView {
  row: number;
  weight: number;
  pos: number;
  neg: number;
  highlighted: boolean;
}

export interface BoardView {
  sessionId: string;
  rows: number;
  /** Rows in render order: highest power first (top), units last (bottom). */
  grid: CellView[][];
  value: number;
  isSimple: boolean;
  completed: boolean;
}

export interface MoveLogEntry {
  rule_id: string;
  sign: number;
  anchor_row: number;
  k: number;
  n: number;
  value: number;
}

export function squareKey(row: number, weight: number): string {
  return `${row}:${weight}`;
}

/** Parse the service's text snapshot ("rows m" header + non-empty squares). */
export function parseSnapshot(snapshot: string): {
  rows: number;
  cells: Map<string, { pos: number; neg: number }>;
} {
  const lines = snapshot.split("\n").filter((line) => line.trim() !== "");
  const header = lines[0];
  if (!header || !header.startsWith("rows ")) {
    throw new Error(`snapshot is missing its header: ${JSON.stringify(header)}`);
  }
  const rows = Number(header.slice(5));
  const cells = new Map<string, { pos: number; neg: number }>();
  for (const line of lines.slice(1)) {
    const [row, weight, pos, neg] = line.split(" ").map(Number);
    cells.set(squareKey(row, weight), { pos, neg });
  }
  return { rows, cells };
}

/** Squares a match touches, as highlight keys. */
export function matchSquares(match: MatchInfo): Set<string> {
  const keys = new Set<string>();
  for (const square of match.squares) {
    keys.add(squareKey(square.row, square.weight));
  }
  return keys;
}

/** Build the renderable grid from a status payload plus highlight keys. */
export function buildBoardView(
  status: SessionStatus,
  highlights: Set<string> = new Set()
): BoardView {
  const { rows, cells } = parseSnapshot(status.snapshot);
  const grid: CellView[][] = [];
  for (let row = rows - 1; row >= 0; row--) {
    const line: CellView[] = [];
    for (const weight of COLUMN_WEIGHTS) {
      const content = cells.get(squareKey(row, weight)) ?? { pos: 0, neg: 0 };
      line.push({
        row,
        weight,
        pos: content.pos,
        neg: content.neg,
        highlighted: highlights.has(squareKey(row, weight)),
      });
    }
    grid.push(line);
  }
  return {
    sessionId: status.id,
    rows,
    grid,
    value: status.value,
    isSimple: status.is_simple,
    completed: status.completed,
  };
}

export function totalTokens(view: BoardView): number {
  return view.grid.flat().reduce((sum, cell) => sum + cell.pos + cell.neg, 0);
}

export function logEntryFromMatch(match: MatchInfo, valueAfter: number): MoveLogEntry {
  return {
    rule_id: match.rule_id,
    sign: match.sign,
    anchor_row: match.anchor_row,
    k: match.k,
    n: match.n,
    value: valueAfter,
  };
}

/**
 * Compare the UI move log against the service trace record for record.
 * Only "move" steps count; loads and other events belong to the service.
 */
export function moveLogMatchesTrace(log: MoveLogEntry[], trace: TraceStep[]): boolean {
  const moves = trace.filter((step) => step.kind === "move");
  if (moves.length !== log.length) {
    return false;
  }
  return moves.every((step, i) => {
    const entry = log[i];
    return (
      step.rule_id === entry.rule_id &&
      step.sign === entry.sign &&
      step.anchor_row === entry.anchor_row &&
      step.k === entry.k &&
      step.n === entry.n &&
      step.value_after === entry.value
    );
  });
}

export function formatElapsed(seconds: number): string {
  const total = Math.max(0, Math.floor(seconds));
  const minutes = Math.floor(total / 60);
  const rest = total % 60;
  return `${minutes}:${String(rest).padStart(2, "0")}`;
}
