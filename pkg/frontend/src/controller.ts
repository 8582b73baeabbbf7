/** Session controller: every action round-trips the service and re-renders
 * from the response, so the view can never drift from the board. */

import { MatchInfo, ServiceClient, ServiceError, SessionStatus } from "./api.js";
import {
  BoardView,
  MoveLogEntry,
  buildBoardView,
  logEntryFromMatch,
  matchSquares,
  moveLogMatchesTrace,
} from "./model.js";

export interface ControllerState {
  status: SessionStatus;
  matches: MatchInfo[];
  moveLog: MoveLogEntry[];
  staleNotice: boolean;
  hintId: string | null;
}

export class BoardController {
  private status!: SessionStatus;
  private matches: MatchInfo[] = [];
  readonly moveLog: MoveLogEntry[] = [];
  staleNotice = false;
  hintId: string | null = null;

  constructor(
    private readonly client: ServiceClient,
    readonly sessionId: string
  ) {}

  static async open(client: ServiceClient, sessionId: string): Promise<BoardController> {
    const controller = new BoardController(client, sessionId);
    await controller.refresh();
    return controller;
  }

  get currentStatus(): SessionStatus {
    return this.status;
  }

  get currentMatches(): MatchInfo[] {
    return this.matches;
  }

  /** Re-fetch status and the match list; the snapshot is authoritative. */
  async refresh(): Promise<void> {
    this.status = await this.client.getSession(this.sessionId);
    this.matches = (await this.client.listMatches(this.sessionId)).matches;
    this.hintId = null;
  }

  view(selected?: string | null): BoardView {
    const highlights = new Set<string>();
    const chosen = selected ?? this.hintId;
    if (chosen) {
      const match = this.matches.find((m) => m.match_id === chosen);
      if (match) {
        for (const key of matchSquares(match)) {
          highlights.add(key);
        }
      }
    }
    return buildBoardView(this.status, highlights);
  }

  findMatch(matchId: string): MatchInfo | undefined {
    return this.matches.find((m) => m.match_id === matchId);
  }

  /** Apply a highlighted match; a stale id raises the refresh prompt. */
  async selectAndApply(matchId: string): Promise<BoardView> {
    const match = this.findMatch(matchId);
    if (!match) {
      return this.view();
    }
    try {
      this.status = await this.client.applyMove(this.sessionId, matchId);
      this.moveLog.push(logEntryFromMatch(match, this.status.value));
      this.staleNotice = false;
    } catch (error) {
      if (error instanceof ServiceError && error.isStale) {
        this.staleNotice = true;
      } else {
        throw error;
      }
    }
    this.matches = (await this.client.listMatches(this.sessionId)).matches;
    this.hintId = null;
    return this.view();
  }

  async loadOperand(value: number, sign: number): Promise<BoardView> {
    this.status = await this.client.loadOperand(this.sessionId, value, sign);
    this.matches = (await this.client.listMatches(this.sessionId)).matches;
    return this.view();
  }

  /** Ask the service for the canonical next move and flash it. */
  async requestHint(): Promise<MatchInfo | null> {
    try {
      const hint = await this.client.hint(this.sessionId);
      this.hintId = hint.match_id;
      return hint;
    } catch (error) {
      if (error instanceof ServiceError) {
        this.hintId = null;
        return null;
      }
      throw error;
    }
  }

  /** Verify the local move log against the service's trace. */
  async logConsistent(): Promise<boolean> {
    const trace = await this.client.trace(this.sessionId);
    return moveLogMatchesTrace(this.moveLog, trace.steps);
  }

  snapshotState(): ControllerState {
    return {
      status: this.status,
      matches: this.matches,
      moveLog: [...this.moveLog],
      staleNotice: this.staleNotice,
      hintId: this.hintId,
    };
  }
}
