// DOM rendering: a plain grid of square cells (y increases upward), with
// translucent overlays for the filling, decomposition outlines per part,
// and packed-excess markers.  All state lives in the controller.

import { Cell } from "./api.js";
import { BoardController, keyOf } from "./controller.js";

const PART_COLORS = ["#7fb069", "#5c80bc", "#c97b84", "#b8a04a", "#8d6fa8"];

export class BoardView {
  private board: HTMLElement;
  private status: HTMLElement;
  private shakeTimer: number | undefined;

  constructor(
    root: HTMLElement,
    private ctl: BoardController,
  ) {
    this.board = root.querySelector("#board") as HTMLElement;
    this.status = root.querySelector("#status") as HTMLElement;
    ctl.onChange = () => this.render();
  }

  private bounds() {
    const keys = [...this.ctl.filling, ...this.ctl.stones];
    if (keys.length === 0) return { x0: 0, x1: 4, y0: 0, y1: 4 };
    const xs = keys.map((k) => Number(k.split(",")[0]));
    const ys = keys.map((k) => Number(k.split(",")[1]));
    return {
      x0: Math.min(...xs) - 1,
      x1: Math.max(...xs) + 1,
      y0: Math.min(...ys) - 1,
      y1: Math.max(...ys) + 1,
    };
  }

  private partIndexOf(x: number, y: number): number {
    for (let i = 0; i < this.ctl.parts.length; i++) {
      const { v, n } = this.ctl.parts[i];
      const [a, b] = [x - v[0], y - v[1]];
      if (a >= 0 && a < n && b >= 0 && b < n && a + b >= n - 1) return i;
    }
    return -1;
  }

  render(): void {
    const { x0, x1, y0, y1 } = this.bounds();
    const cols = x1 - x0 + 1;
    this.board.style.gridTemplateColumns = `repeat(${cols}, var(--cell))`;
    this.board.textContent = "";
    const targets = new Set(
      this.ctl.selected ? this.ctl.targetsFor(this.ctl.selected).map(keyOf) : [],
    );
    for (let y = y1; y >= y0; y--) {
      for (let x = x0; x <= x1; x++) {
        const cell = document.createElement("div");
        const k = keyOf([x, y] as Cell);
        cell.className = "cell";
        cell.dataset.cell = k;
        const part = this.partIndexOf(x, y);
        if (this.ctl.filling.has(k)) {
          cell.classList.add("fill");
          if (part >= 0) cell.style.outlineColor = PART_COLORS[part % PART_COLORS.length];
        }
        if (this.ctl.stones.has(k)) {
          const stone = document.createElement("div");
          stone.className = "stone";
          cell.appendChild(stone);
        }
        // excess marker at the top-right corner cell of each part
        if (part >= 0 && this.ctl.parts[part].k > 0) {
          const { v, n } = this.ctl.parts[part];
          if (x === v[0] + n - 1 && y === v[1] + n - 1) {
            const badge = document.createElement("span");
            badge.className = "excess-badge";
            badge.textContent = `+${this.ctl.parts[part].k}`;
            cell.appendChild(badge);
          }
        }
        if (this.ctl.selected && keyOf(this.ctl.selected) === k) cell.classList.add("selected");
        if (targets.has(k)) cell.classList.add("target");
        cell.addEventListener("click", () => {
          void this.ctl.clickCell([x, y]);
        });
        this.board.appendChild(cell);
      }
    }
    const a = this.ctl.animation;
    const steps = a
      ? ` — step ${a.index}/${a.sequence.moves.length} (budget ${a.budget})`
      : "";
    this.status.textContent =
      `stones ${this.ctl.stoneCount} · excess ${this.ctl.excess}` +
      ` · parts ${this.ctl.parts.length}${steps}` +
      (this.ctl.hint ? ` · ${this.ctl.hint.replace("-", " ")}` : "");
    if (this.ctl.hint === "illegal-target") this.shake();
  }

  private shake(): void {
    this.board.classList.add("shake");
    window.clearTimeout(this.shakeTimer);
    this.shakeTimer = window.setTimeout(
      () => this.board.classList.remove("shake"),
      300,
    );
  }
}
