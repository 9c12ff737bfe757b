// Board state machine.  Keeps the last server-confirmed pattern plus the
// overlays (filling, decomposition, excess) and the legal-move list; all
// mutations round-trip through the API, and the filling overlay is
// asserted constant across every move, which is the game's invariant.

import {
  ApiError,
  Cell,
  Client,
  MoveJson,
  NormalFormPart,
  SequenceJson,
} from "./api.js";

export type CellKey = string; // "x,y"

export const keyOf = (c: Cell): CellKey => `${c[0]},${c[1]}`;

export interface AnimationState {
  sequence: SequenceJson;
  index: number; // moves applied so far
  playing: boolean;
  budget: number; // step budget C n^2 (n + k)
}

export type Hint =
  | ""
  | "empty-cell"
  | "no-moves"
  | "illegal-target"
  | "animating";

const LENGTH_CONSTANT = 2;

export class BoardController {
  stones = new Set<CellKey>();
  legal: MoveJson[] = [];
  filling = new Set<CellKey>();
  parts: NormalFormPart[] = [];
  excess = 0;
  selected: Cell | null = null;
  hint: Hint = "";
  busy = false;
  animation: AnimationState | null = null;
  speedMs = 120;
  onChange: () => void = () => {};

  constructor(
    private api: Client,
    private sleep: (ms: number) => Promise<void> = (ms) =>
      new Promise((res) => setTimeout(res, ms)),
  ) {}

  patternJson() {
    const cells = [...this.stones].map((k) => k.split(",").map(Number) as Cell);
    cells.sort((a, b) => b[1] - a[1] || a[0] - b[0]);
    return { cells };
  }

  get stoneCount(): number {
    return this.stones.size;
  }

  targetsFor(cell: Cell): Cell[] {
    const k = keyOf(cell);
    return this.legal.filter((m) => keyOf(m.from) === k).map((m) => m.to);
  }

  private async refresh(expectSameFilling: boolean): Promise<void> {
    const pattern = this.patternJson();
    const [moves, fill] = await Promise.all([
      this.api.moves(pattern),
      this.api.fill(pattern),
    ]);
    const newFilling = new Set(fill.filling.cells.map(keyOf));
    if (expectSameFilling) {
      const same =
        newFilling.size === this.filling.size &&
        [...newFilling].every((c) => this.filling.has(c));
      if (!same || fill.excess !== this.excess) {
        throw new Error("invariant violation: filling or excess changed by a move");
      }
    }
    this.legal = moves;
    this.filling = newFilling;
    this.parts = fill.decomposition;
    this.excess = fill.excess;
    this.onChange();
  }

  async setPattern(cells: Cell[]): Promise<void> {
    this.stones = new Set(cells.map(keyOf));
    this.selected = null;
    this.hint = "";
    this.animation = null;
    await this.refresh(false);
  }

  private edgesCycle = 0;

  async loadPreset(name: string, seed = 0): Promise<void> {
    const preset = await this.api.preset(name, seed);
    if (name.startsWith("edges-")) {
      // repeated loads cycle through the three equivalent edges
      const faces = [
        preset.cells,
        (preset as unknown as { vertical: Cell[] }).vertical,
        (preset as unknown as { diagonal: Cell[] }).diagonal,
      ];
      const face = faces[this.edgesCycle % faces.length];
      this.edgesCycle += 1;
      await this.setPattern(face);
      return;
    }
    this.edgesCycle = 0;
    await this.setPattern(preset.cells);
  }

  /** The click flow: first click selects an occupied cell, the second
   * either plays a highlighted move, reselects, or clears. */
  async clickCell(cell: Cell): Promise<void> {
    if (this.busy || this.animation?.playing) {
      this.hint = "animating";
      this.onChange();
      return;
    }
    const k = keyOf(cell);
    if (this.selected === null) {
      if (!this.stones.has(k)) {
        this.hint = "empty-cell";
      } else if (this.targetsFor(cell).length === 0) {
        this.hint = "no-moves";
      } else {
        this.selected = cell;
        this.hint = "";
      }
      this.onChange();
      return;
    }
    const move = this.legal.find(
      (m) => keyOf(m.from) === keyOf(this.selected!) && keyOf(m.to) === k,
    );
    if (move) {
      this.selected = null;
      await this.playMove(move);
      return;
    }
    if (this.stones.has(k)) {
      this.selected = cell;
      this.hint = "";
    } else {
      this.selected = null;
      this.hint = "illegal-target";
    }
    this.onChange();
  }

  /** Optimistically applies the move, confirms with the server, and rolls
   * back on a 422.  Resolves to true when the move stood. */
  async playMove(move: MoveJson): Promise<boolean> {
    const before = new Set(this.stones);
    this.busy = true;
    this.stones.delete(keyOf(move.from));
    this.stones.add(keyOf(move.to));
    this.onChange();
    try {
      const confirmed = await this.api.apply({ cells: [...before].map(
        (k) => k.split(",").map(Number) as Cell,
      ) }, move);
      this.stones = new Set(confirmed.cells.map(keyOf));
      await this.refresh(true);
      return true;
    } catch (e) {
      if (e instanceof ApiError && e.status === 422) {
        this.stones = before; // rollback; shake handled by the view
        this.hint = "illegal-target";
        this.onChange();
        return false;
      }
      throw e;
    } finally {
      this.busy = false;
    }
  }

  /** Fetches the normalization path and prepares the playback queue. */
  async prepareNormalization(): Promise<AnimationState> {
    const seq = await this.api.normalizePath(this.patternJson());
    const n = this.stoneCount - this.excess;
    const budget = LENGTH_CONSTANT * n * n * (n + this.excess);
    this.animation = { sequence: seq, index: 0, playing: false, budget };
    this.onChange();
    return this.animation;
  }

  private applyLocally(move: MoveJson, forward: boolean): void {
    const [src, dst] = forward ? [move.from, move.to] : [move.to, move.from];
    this.stones.delete(keyOf(src));
    this.stones.add(keyOf(dst));
  }

  stepForward(): void {
    const a = this.animation;
    if (!a || a.index >= a.sequence.moves.length) return;
    this.applyLocally(a.sequence.moves[a.index], true);
    a.index += 1;
    this.onChange();
  }

  stepBack(): void {
    const a = this.animation;
    if (!a || a.index === 0) return;
    a.index -= 1;
    this.applyLocally(a.sequence.moves[a.index], false);
    this.onChange();
  }

  pause(): void {
    if (this.animation) {
      this.animation.playing = false;
      this.onChange();
    }
  }

  /** Plays the prepared sequence to its end (or until paused). */
  async play(): Promise<void> {
    const a = this.animation;
    if (!a) return;
    a.playing = true;
    this.onChange();
    while (a.playing && a.index < a.sequence.moves.length) {
      this.stepForward();
      if (a.index < a.sequence.moves.length) {
        await this.sleep(this.speedMs);
      }
    }
    a.playing = false;
    if (a.index === a.sequence.moves.length) {
      await this.refresh(true); // board now shows the canonical form
    }
    this.onChange();
  }

  /** Convenience used by the scripted test: normalize to completion. */
  async animateNormalization(): Promise<void> {
    await this.prepareNormalization();
    await this.play();
  }
}
