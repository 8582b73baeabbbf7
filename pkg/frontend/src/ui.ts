/** DOM rendering: the dotted grid, token circles, match list and panels. */

import { MatchInfo } from "./api.js";
import { BoardController } from "./controller.js";
import { BoardView, formatElapsed, squareKey } from "./model.js";

export interface UiOptions {
  /** Hide the decoded value readout (challenge mode default). */
  hideValue: boolean;
  /** Reveal every match at once instead of hover-only highlights. */
  showAllMatches: boolean;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function dotMarks(weight: number): string {
  return "●".repeat(weight);
}

function renderCell(cell: BoardView["grid"][number][number]): HTMLElement {
  const box = el("td", "square");
  box.dataset.key = squareKey(cell.row, cell.weight);
  if (cell.highlighted) {
    box.classList.add("highlight");
  }
  const dots = el("div", "dots", dotMarks(cell.weight));
  box.appendChild(dots);
  const tokens = el("div", "tokens");
  for (let i = 0; i < cell.pos; i++) {
    tokens.appendChild(el("span", "token positive"));
  }
  for (let i = 0; i < cell.neg; i++) {
    tokens.appendChild(el("span", "token negative"));
  }
  box.appendChild(tokens);
  return box;
}

export function renderBoard(view: BoardView): HTMLTableElement {
  const table = el("table", "board");
  const head = el("tr");
  head.appendChild(el("th", "", ""));
  for (const weight of [5, 3, 2, 1]) {
    head.appendChild(el("th", "col-label", `[${weight}]`));
  }
  table.appendChild(head);
  for (const line of view.grid) {
    const row = el("tr");
    row.appendChild(el("th", "row-label", `×10^${line[0].row}`));
    for (const cell of line) {
      row.appendChild(renderCell(cell));
    }
    table.appendChild(row);
  }
  return table;
}

export class BoardPage {
  private readonly boardHost: HTMLElement;
  private readonly matchHost: HTMLElement;
  private readonly logHost: HTMLElement;
  private readonly valueHost: HTMLElement;
  private readonly noticeHost: HTMLElement;
  private readonly panelHost: HTMLElement;
  private timer: number | undefined;

  constructor(
    private readonly controller: BoardController,
    root: HTMLElement,
    private readonly options: UiOptions
  ) {
    this.boardHost = el("div", "board-host");
    this.matchHost = el("div", "match-host");
    this.logHost = el("div", "log-host");
    this.valueHost = el("div", "value-host");
    this.noticeHost = el("div", "notice-host");
    this.panelHost = el("div", "panel-host");
    for (const host of [
      this.panelHost,
      this.valueHost,
      this.noticeHost,
      this.boardHost,
      this.matchHost,
      this.logHost,
    ]) {
      root.appendChild(host);
    }
  }

  start(): void {
    this.redraw();
    this.timer = window.setInterval(() => this.renderPanel(), 1000);
  }

  stop(): void {
    if (this.timer !== undefined) {
      window.clearInterval(this.timer);
    }
  }

  private redraw(selected?: string | null): void {
    const view = this.controller.view(selected);
    this.boardHost.replaceChildren(renderBoard(view));
    this.renderValue(view);
    this.renderMatches();
    this.renderLog();
    this.renderPanel();
    this.renderNotice();
  }

  private renderValue(view: BoardView): void {
    const toggle = el("button", "value-toggle", this.options.hideValue ? "show value" : "hide value");
    toggle.addEventListener("click", () => {
      this.options.hideValue = !this.options.hideValue;
      this.redraw();
    });
    const readout = this.options.hideValue
      ? el("span", "value hidden-value", view.isSimple ? "simple" : "working…")
      : el("span", "value", `value ${view.value}${view.isSimple ? " (simple)" : ""}`);
    this.valueHost.replaceChildren(readout, toggle);
  }

  private renderNotice(): void {
    this.noticeHost.replaceChildren();
    if (this.controller.staleNotice) {
      const note = el("div", "stale", "Board changed under you; matches refreshed.");
      this.noticeHost.appendChild(note);
    }
  }

  private renderPanel(): void {
    const status = this.controller.currentStatus;
    this.panelHost.replaceChildren();
    if (status.mode.name === "atipanakuy") {
      const row = el("div", "atipanakuy");
      row.appendChild(el("span", "clock", formatElapsed(status.elapsed_seconds)));
      row.appendChild(el("span", "moves", `${status.move_count} moves`));
      if (status.completed) {
        row.appendChild(
          el(
            "span",
            "result",
            `solved in ${status.move_count} moves / ${formatElapsed(status.elapsed_seconds)}`
          )
        );
      }
      this.panelHost.appendChild(row);
    } else if (status.completed && status.mode.target !== null) {
      this.panelHost.appendChild(el("div", "result", `target ${status.mode.target} reached`));
    }
  }

  private matchButton(match: MatchInfo): HTMLElement {
    const item = el("button", "match", `${match.rule_id} – ${match.description}`);
    item.dataset.matchId = match.match_id;
    item.addEventListener("mouseenter", () => this.redraw(match.match_id));
    item.addEventListener("mouseleave", () => this.redraw(null));
    item.addEventListener("click", () => {
      void this.controller.selectAndApply(match.match_id).then(() => this.redraw());
    });
    return item;
  }

  private renderMatches(): void {
    const list = el("div", "matches");
    const hintButton = el("button", "hint", "hint");
    hintButton.addEventListener("click", () => {
      void this.controller.requestHint().then(() => this.redraw(this.controller.hintId));
    });
    list.appendChild(hintButton);
    for (const match of this.controller.currentMatches) {
      const button = this.matchButton(match);
      if (!this.options.showAllMatches) {
        button.classList.add("hover-reveal");
      }
      if (match.match_id === this.controller.hintId) {
        button.classList.add("flash");
      }
      list.appendChild(button);
    }
    this.matchHost.replaceChildren(list);
  }

  private renderLog(): void {
    const list = el("ol", "move-log");
    for (const entry of this.controller.moveLog) {
      list.appendChild(el("li", "", `${entry.rule_id} @ row ${entry.anchor_row} (k=${entry.k})`));
    }
    this.logHost.replaceChildren(list);
  }
}
