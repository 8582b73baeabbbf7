import { describe, expect, it } from "vitest";

import type { MatchInfo, SessionStatus, TraceStep } from "../src/api.js";
import {
  buildBoardView,
  formatElapsed,
  matchSquares,
  moveLogMatchesTrace,
  parseSnapshot,
  squareKey,
  totalTokens,
} from "../src/model.js";

function status(snapshot: string, value: number, isSimple: boolean): SessionStatus {
  return {
    id: "s1",
    rows: 5,
    mode: { name: "free", operation: null, operands: [], target: null },
    snapshot,
    value,
    is_simple: isSimple,
    completed: isSimple,
    revision: 0,
    move_count: 0,
    elapsed_seconds: 0,
    created_at: 0,
    updated_at: 0,
  };
}

// canonical layout of 5347 as served by the board snapshot schema
const SNAP_5347 = "rows 5\n0 5 1 0\n0 2 1 0\n1 3 1 0\n1 1 1 0\n2 3 1 0\n3 5 1 0\n";

describe("parseSnapshot", () => {
  it("reads the header and the non-empty squares", () => {
    const parsed = parseSnapshot(SNAP_5347);
    expect(parsed.rows).toBe(5);
    expect(parsed.cells.get(squareKey(0, 5))).toEqual({ pos: 1, neg: 0 });
    expect(parsed.cells.get(squareKey(3, 5))).toEqual({ pos: 1, neg: 0 });
    expect(parsed.cells.size).toBe(6);
  });

  it("rejects snapshots without a header", () => {
    expect(() => parseSnapshot("0 5 1 0\n")).toThrow(/header/);
  });

  it("keeps both token colors", () => {
    const parsed = parseSnapshot("rows 5\n0 3 2 1\n");
    expect(parsed.cells.get(squareKey(0, 3))).toEqual({ pos: 2, neg: 1 });
  });
});

describe("buildBoardView", () => {
  it("renders 4 columns in 5/3/2/1 order with the top row first", () => {
    const view = buildBoardView(status(SNAP_5347, 5347, true));
    expect(view.grid).toHaveLength(5);
    expect(view.grid[0].map((c) => c.weight)).toEqual([5, 3, 2, 1]);
    expect(view.grid[0][0].row).toBe(4); // highest power on top
    expect(view.grid[4][0].row).toBe(0); // units at the bottom
    // 5347: row 3 has [5], row 2 has [3], row 1 has [3],[1], row 0 has [5],[2]
    expect(view.grid[1].find((c) => c.weight === 5)?.pos).toBe(1);
    expect(view.grid[4].filter((c) => c.pos > 0).map((c) => c.weight)).toEqual([5, 2]);
    expect(totalTokens(view)).toBe(6);
  });

  it("renders an empty snapshot as an empty grid", () => {
    const view = buildBoardView(status("rows 5\n", 0, true));
    expect(totalTokens(view)).toBe(0);
  });

  it("marks highlighted squares from match keys", () => {
    const highlights = new Set([squareKey(0, 5), squareKey(0, 2)]);
    const view = buildBoardView(status(SNAP_5347, 5347, true), highlights);
    const bottom = view.grid[4];
    expect(bottom.find((c) => c.weight === 5)?.highlighted).toBe(true);
    expect(bottom.find((c) => c.weight === 2)?.highlighted).toBe(true);
    expect(bottom.find((c) => c.weight === 3)?.highlighted).toBe(false);
  });

  it("mixed-color cells carry both counts", () => {
    const view = buildBoardView(status("rows 5\n0 3 1 1\n", 0, false));
    const cell = view.grid[4].find((c) => c.weight === 3)!;
    expect(cell.pos).toBe(1);
    expect(cell.neg).toBe(1);
  });
});

describe("matchSquares", () => {
  it("collects every touched square", () => {
    const match = {
      match_id: "m",
      rule_id: "Pisqa",
      sign: 1,
      anchor_row: 0,
      weight: 5,
      k: 1,
      n: 0,
      squares: [
        { row: 0, weight: 5 },
        { row: 1, weight: 1 },
      ],
      removals: [],
      deposits: [],
      description: "",
    } as unknown as MatchInfo;
    expect(matchSquares(match)).toEqual(new Set(["0:5", "1:1"]));
  });
});

describe("moveLogMatchesTrace", () => {
  const move = (rule: string, value: number): TraceStep => ({
    index: 0,
    kind: "move",
    rule_id: rule,
    sign: 1,
    anchor_row: 0,
    k: 1,
    n: 0,
    value_before: value,
    value_after: value,
  });
  const load: TraceStep = {
    index: 0,
    kind: "load",
    rule_id: "load",
    sign: 1,
    anchor_row: 0,
    k: 1,
    n: 736,
    value_before: 0,
    value_after: 736,
  };

  it("ignores loads and compares moves one to one", () => {
    const trace = [load, move("Pichana-12", 1268), move("Pisqa", 1268)];
    const log = [
      { rule_id: "Pichana-12", sign: 1, anchor_row: 0, k: 1, n: 0, value: 1268 },
      { rule_id: "Pisqa", sign: 1, anchor_row: 0, k: 1, n: 0, value: 1268 },
    ];
    expect(moveLogMatchesTrace(log, trace)).toBe(true);
  });

  it("detects a missing or different record", () => {
    const trace = [move("Pisqa", 10)];
    expect(moveLogMatchesTrace([], trace)).toBe(false);
    expect(
      moveLogMatchesTrace(
        [{ rule_id: "Kimsa", sign: 1, anchor_row: 0, k: 1, n: 0, value: 10 }],
        trace
      )
    ).toBe(false);
  });
});

describe("formatElapsed", () => {
  it("renders minutes and zero-padded seconds", () => {
    expect(formatElapsed(0)).toBe("0:00");
    expect(formatElapsed(61.8)).toBe("1:01");
    expect(formatElapsed(600)).toBe("10:00");
  });
});
