"""Constructive move-sequence synthesis.

Everything here emits explicit legal solitaire moves.  The two building
blocks are:

* an order-3 affine symmetry of the solitaire (linear part
  (x, y) -> (y, -x-y)) that fixes any triangle while cycling its three
  edges, which turns one explicit horizontal-to-diagonal rotation
  schedule into all six edge rotations;

* a tolerant replayer: a move schedule computed for a sub-board stays
  valid when extra stones are present, because the only way an extra
  stone can interfere is by already occupying the target of a move, in
  which case the move is simply skipped and the roles of the two stones
  swap.  Stones are indistinguishable, so the set evolution is the
  intended one plus the extra stones.

Normalization runs in two phases.  Phase 1 grows and merges lines by
absorbing one touching point at a time (a point above the line costs m
moves; the other two sides are handled by conjugating with the symmetry
after an edge rotation).  Phase 2 moves the surplus stones, which travel
along their own anti-diagonal: a partial rotation of the line leaves a
staircase of support stones one anti-diagonal over, the surplus stone
climbs, and unwinding the exact moves of the partial rotation restores
every other stone, netting a pure relocation.  Phase 1 is O(n^2) moves
per absorbed point and phase 2 is O(n^2) per surplus stone, giving the
O(n^2 (n + k)) total, and O(n^3) when there is no excess.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Move,
    Pattern,
    Point,
    edges_of_triangle,
    is_legal_move,
    neighbourhood,
    parse_pattern,
    render_pattern,
    size_n_triangle,
    touches,
    triangle_at,
)
from .errors import IllegalMove, InternalError, NotSameOrbit, ParseError
from .normalform import excess_slots, normal_form, realize

EDGES = ("horizontal", "vertical", "diagonal")


# ---------------------------------------------------------------------------
# affine solitaire symmetries


@dataclass(frozen=True)
class AffineMap:
    """z -> L z + t with L in the group preserving the triangle family."""

    a: int
    b: int
    c: int
    d: int
    tx: int
    ty: int

    def __call__(self, p) -> Point:
        return Point(self.a * p[0] + self.b * p[1] + self.tx,
                     self.c * p[0] + self.d * p[1] + self.ty)

    def inverse(self) -> "AffineMap":
        det = self.a * self.d - self.b * self.c
        if det not in (1, -1):
            raise InternalError("affine map is not unimodular")
        ia, ib, ic, id_ = self.d * det, -self.b * det, -self.c * det, self.a * det
        return AffineMap(ia, ib, ic, id_,
                         -(ia * self.tx + ib * self.ty),
                         -(ic * self.tx + id_ * self.ty))

    def map_move(self, m: Move) -> Move:
        cells = [self(c) for c in triangle_at(m.anchor)]
        anchor = Point(min(c.x for c in cells), min(c.y for c in cells))
        return Move(anchor, self(m.src), self(m.dst))


def edge_cycle_map(n: int, v) -> AffineMap:
    """The symmetry fixing the size-n triangle at v; maps the horizontal edge
    to the vertical one, vertical to diagonal, diagonal to horizontal."""
    v = Point(*v)
    # z -> ROT(z - v) + v + (0, 2n-2)  with ROT(x, y) = (y, -x-y)
    return AffineMap(0, 1, -1, -1,
                     v.x - v.y,
                     v.x + 2 * v.y + 2 * n - 2)


# ---------------------------------------------------------------------------
# edge rotations


def rotation_waves(n: int, v) -> list:
    """The horizontal-to-diagonal rotation, grouped into waves.  Wave j pulls
    one more line stone down and pushes the existing staircase one row
    deeper; concatenated they take the top edge to the anti-diagonal."""
    v = Point(*v)
    waves = []
    for j in range(2, n + 1):
        w = v + Point(n - j, n - j)
        wave = [
            Move(w + Point(a - 1, j - 1 - a), w + Point(a, j - a), w + Point(a, j - 1 - a))
            for a in range(1, j)
        ]
        waves.append(wave)
    return waves


def _reversed_moves(moves) -> list:
    return [m.inverse() for m in reversed(moves)]


def edge_rotation_moves(n: int, v, from_edge: str, to_edge: str) -> list:
    """Moves turning one edge of the size-n triangle at v into another,
    never leaving the triangle; at most n(n-1)/2 moves."""
    if from_edge not in EDGES or to_edge not in EDGES:
        raise ValueError(f"edges must be in {EDGES}")
    if from_edge == to_edge:
        return []
    hd = [m for wave in rotation_waves(n, v) for m in wave]
    f = edge_cycle_map(n, v)
    f2 = AffineMap(
        f.b * f.c + f.a * f.a, f.a * f.b + f.b * f.d,
        f.c * f.a + f.d * f.c, f.c * f.b + f.d * f.d,
        f.a * f.tx + f.b * f.ty + f.tx, f.c * f.tx + f.d * f.ty + f.ty,
    )
    table = {
        ("horizontal", "diagonal"): hd,
        ("vertical", "horizontal"): [f.map_move(m) for m in hd],
        ("diagonal", "vertical"): [f2.map_move(m) for m in hd],
    }
    if (from_edge, to_edge) in table:
        return table[(from_edge, to_edge)]
    return _reversed_moves(table[(to_edge, from_edge)])


# ---------------------------------------------------------------------------
# sequences


@dataclass(frozen=True)
class MoveSequence:
    start: Pattern
    moves: tuple

    def __len__(self):
        return len(self.moves)


def replay(seq: MoveSequence) -> Pattern:
    """Apply the moves in order; raises IllegalMove with the failing index."""
    current = frozenset(seq.start)
    for i, m in enumerate(seq.moves):
        if not is_legal_move(current, m):
            raise IllegalMove(f"illegal move at index {i}: {m}", index=i)
        current = (current - {m.src}) | {m.dst}
    return current


def edge_rotation(n: int, v, from_edge: str, to_edge: str) -> MoveSequence:
    v = Point(*v)
    start = dict(zip(EDGES, edges_of_triangle(n, v)))[from_edge]
    return MoveSequence(start=start, moves=tuple(edge_rotation_moves(n, v, from_edge, to_edge)))


def render_move_sequence(seq: MoveSequence) -> str:
    out = render_pattern(seq.start)
    for m in seq.moves:
        out += f"move {m.anchor.x} {m.anchor.y} {m.src.x} {m.src.y} {m.dst.x} {m.dst.y}\n"
    return out


def parse_move_sequence(text: str) -> MoveSequence:
    point_lines = []
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("move"):
            tokens = line.split()
            if len(tokens) != 7:
                raise ParseError(f"line {lineno}: bad move line {raw!r}", line=lineno)
            try:
                ax, ay, sx, sy, tx, ty = (int(t) for t in tokens[1:])
            except ValueError:
                raise ParseError(f"line {lineno}: bad move line {raw!r}", line=lineno) from None
            moves.append(Move(Point(ax, ay), Point(sx, sy), Point(tx, ty)))
        else:
            point_lines.append(line)
    return MoveSequence(start=parse_pattern("\n".join(point_lines)), moves=tuple(moves))


# ---------------------------------------------------------------------------
# guarded executor


class _Exec:
    """Board with a move log.  `push` is strict; `push_tolerant` skips moves
    whose target is already occupied (the role-swap rule)."""

    def __init__(self, start):
        self.board = set(start)
        self.moves = []

    def push(self, m: Move):
        if not is_legal_move(self.board, m):
            raise InternalError(f"generated an illegal move: {m}")
        self.board.discard(m.src)
        self.board.add(m.dst)
        self.moves.append(m)

    def push_tolerant(self, m: Move) -> bool:
        if m.dst in self.board:
            return False
        self.push(m)
        return True

    def run_tolerant(self, moves) -> list:
        return [m for m in moves if self.push_tolerant(m)]


# ---------------------------------------------------------------------------
# phase 1: forming lines

# A working line is (x0, y0, m): stones on row y0, columns x0 .. x0+m-1,
# the top edge of the size-m triangle anchored at (x0, y0-m+1).


def _line_cells(line):
    x0, y0, m = line
    return [Point(x0 + i, y0) for i in range(m)]


def _line_triangle(line):
    x0, y0, m = line
    return size_n_triangle(m, Point(x0, y0 - m + 1))


def _classify_layer(line, p):
    """Where a point in the neighbourhood of the line's triangle sits: the
    row above the line, the column right of the triangle, or the
    anti-diagonal layer below-left.  None if it is not adjacent."""
    x0, y0, m = line
    if p.y == y0 + 1 and x0 - 1 <= p.x <= x0 + m - 1:
        return "top"
    if p.x == x0 + m and y0 - m <= p.y <= y0:
        return "right"
    a = y0 - p.y
    if 0 <= a <= m and p.x == x0 + a - 1:
        return "diag"
    return None


def _grown_line(line, layer):
    x0, y0, m = line
    if layer == "top":
        return (x0 - 1, y0 + 1, m + 1)
    if layer == "right":
        return (x0, y0, m + 1)
    return (x0 - 1, y0, m + 1)


def _ext_top_moves(line, xp):
    """Line plus a stone at (xp, y0+1): everything climbs one row.  Stones
    right of xp hop up-right under the growing upper row; the rest hop
    up-left.  Exactly m moves."""
    x0, y0, m = line
    moves = []
    for i in range(1, x0 + m - 1 - xp + 1):
        moves.append(Move(Point(xp + i - 1, y0), Point(xp + i, y0), Point(xp + i, y0 + 1)))
    for x in range(xp, x0 - 1, -1):
        moves.append(Move(Point(x - 1, y0), Point(x, y0), Point(x - 1, y0 + 1)))
    return moves


def _absorb(ex: _Exec, line, p):
    """Extend the working line by the touching stone at p; returns the new
    line.  The side cases rotate the line toward p, extend via the
    symmetry-conjugated top case, and rotate back."""
    x0, y0, m = line
    layer = _classify_layer(line, p)
    if layer is None:
        raise InternalError(f"{p} does not touch the line triangle {line}")
    if layer == "top":
        ex.run_tolerant(_ext_top_moves(line, p.x))
        return _grown_line(line, layer)
    if layer == "right" and p.y == y0:
        return _grown_line(line, layer)
    if layer == "diag" and p.y == y0:  # p = (x0-1, y0)
        return _grown_line(line, layer)
    if layer == "right" and p.y == y0 - 1:
        # hop onto the row using the line's right end as support
        ex.run_tolerant([Move(Point(x0 + m - 1, y0 - 1), p, Point(x0 + m, y0))])
        return _grown_line(line, layer)
    if layer == "diag" and p.y == y0 - 1:  # p = (x0, y0-1)
        ex.run_tolerant([Move(Point(x0 - 1, y0 - 1), p, Point(x0 - 1, y0))])
        return _grown_line(line, layer)

    w = Point(x0, y0 - m + 1)
    if layer == "right":
        grown_anchor = Point(x0, y0 - m)
        mid_edge = "vertical"
        stones = [Point(x0 + m - 1, y0 - i) for i in range(m)]
        conj = edge_cycle_map(m + 1, grown_anchor).inverse()
    else:
        grown_anchor = Point(x0 - 1, y0 - m)
        mid_edge = "diagonal"
        stones = [Point(x0 + i, y0 - i) for i in range(m)]
        conj = edge_cycle_map(m + 1, grown_anchor)

    ex.run_tolerant(edge_rotation_moves(m, w, "horizontal", mid_edge))
    q_cells = sorted(conj(c) for c in stones)
    qy = q_cells[0].y
    if any(c.y != qy for c in q_cells) or q_cells[-1].x - q_cells[0].x != m - 1:
        raise InternalError("conjugated configuration is not a line")
    q_line = (q_cells[0].x, qy, m)
    qp = conj(p)
    if _classify_layer(q_line, qp) != "top":
        raise InternalError("conjugated stone is not a top neighbour")
    back = conj.inverse()
    ex.run_tolerant(back.map_move(mv) for mv in _ext_top_moves(q_line, qp.x))
    ex.run_tolerant(edge_rotation_moves(m + 1, grown_anchor, mid_edge, "horizontal"))
    return _grown_line(line, layer)


def _dissolve_overlapping(parts, idx, new_tri):
    """Drop any other part whose triangle meets the about-to-grow triangle;
    its stones simply become unplaced again."""
    keep = []
    for j, other in enumerate(parts):
        if j != idx and _line_triangle(other) & new_tri:
            continue
        keep.append(other)
    return keep


def _absorb_into_part(ex, parts, idx, p):
    line = parts[idx]
    layer = _classify_layer(line, p)
    new_tri = _line_triangle(_grown_line(line, layer))
    survivors = _dissolve_overlapping(parts, idx, new_tri)
    idx = survivors.index(line)
    survivors[idx] = _absorb(ex, line, p)
    return survivors


def _contact_cells(tri_a, tri_b):
    return sorted((q for q in tri_b if neighbourhood(q) & tri_a), key=lambda q: (-q.y, q.x))


def _anchor_key(line):
    x0, y0, m = line
    return (-(y0 - m + 1), x0)


def _phase1(ex: _Exec) -> list:
    """Grow, merge and absorb until the board is a set of non-touching lines
    plus surplus stones strictly inside their triangles."""
    parts = []
    guard = 0
    limit = 40 * (len(ex.board) + 2) ** 2
    while True:
        guard += 1
        if guard > limit:
            raise InternalError("phase 1 failed to converge")

        tris = [_line_triangle(p) for p in parts]
        # merge one touching pair, smallest anchor pair first
        pair = None
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if touches(tris[i], tris[j]):
                    key = tuple(sorted([_anchor_key(parts[i]), _anchor_key(parts[j])]))
                    if pair is None or key < pair[0]:
                        pair = (key, i, j)
        if pair is not None:
            _, i, j = pair
            big, small = (i, j) if parts[i][2] >= parts[j][2] else (j, i)
            parts = _merge_one(ex, parts, big, small)
            continue

        covered = set()
        for p in parts:
            covered.update(_line_cells(p))
        strays = sorted((s for s in ex.board if s not in covered), key=lambda s: (-s.y, s.x))
        acted = False
        for s in strays:
            if any(s in t for t in tris):
                continue  # surplus stone inside a triangle; phase 2 material
            touching = [i for i, t in enumerate(tris) if neighbourhood(s) & t]
            if touching:
                pick = min(touching, key=lambda i: _anchor_key(parts[i]))
                parts = _absorb_into_part(ex, parts, pick, s)
            else:
                parts.append((s.x, s.y, 1))
            acted = True
            break
        if not acted:
            return parts


def _merge_one(ex, parts, ia, ib):
    """Merge part ib into part ia: rotate ib's line onto the edge of its
    triangle touching ia's triangle, then absorb that edge cell by cell,
    walking outward from the contact point."""
    line_a, line_b = parts[ia], parts[ib]
    tri_a, tri_b = _line_triangle(line_a), _line_triangle(line_b)
    q = _contact_cells(tri_a, tri_b)[0]
    xb, yb, mb = line_b
    vb = Point(xb, yb - mb + 1)
    edge_sets = dict(zip(EDGES, edges_of_triangle(mb, vb)))
    edge_name = next(name for name in EDGES if q in edge_sets[name])
    ex.run_tolerant(edge_rotation_moves(mb, vb, "horizontal", edge_name))

    key = (lambda c: c.x) if edge_name != "vertical" else (lambda c: c.y)
    cells = sorted(edge_sets[edge_name], key=key)
    pos = cells.index(q)
    order = [q] + cells[pos + 1:] + cells[:pos][::-1]

    parts = [part for k, part in enumerate(parts) if k != ib]
    current = line_a
    for e in order:
        idx = parts.index(current)
        layer = _classify_layer(current, e)
        if layer is None:
            raise InternalError(f"edge stone {e} fails to touch the growing line")
        new_line = _grown_line(current, layer)
        parts = _dissolve_overlapping(parts, parts.index(current), _line_triangle(new_line))
        idx = parts.index(current)
        parts[idx] = _absorb(ex, current, e)
        current = parts[idx]
    return parts


# ---------------------------------------------------------------------------
# phase 2: packing the excess

# Inside the size-N triangle at v with its line on row Y, a surplus stone
# at depth d = Y - y and column offset i = x - x0 lives on the
# anti-diagonal "track" lv = d - i (lv <= 0).  The cells of a track are a
# one-dimensional ladder which a stone can slide along whenever the
# neighbouring track lv-1 carries the support staircase produced by a
# partial rotation of the line.


class _Tracks:
    def __init__(self, ex, v, N, k):
        self.ex = ex
        self.v = Point(*v)
        self.N = N
        self.x0 = self.v.x
        self.Y = self.v.y + N - 1
        slots = excess_slots(N, self.v)[:k]
        self.slot_depths = {}
        for c in slots:
            lv = self.level_of(c)
            self.slot_depths.setdefault(lv, []).append(self.Y - c.y)
        for lv, ds in self.slot_depths.items():
            if sorted(ds) != list(range(1, len(ds) + 1)):
                raise InternalError("slot block is not top-contiguous per track")

    def level_of(self, c) -> int:
        return (self.Y - c.y) - (c.x - self.x0)

    def cell(self, lv: int, depth: int) -> Point:
        return Point(self.x0 + depth - lv, self.Y - depth)

    def capacity(self, lv: int) -> int:
        return self.N - 1 + lv

    def natives(self, lv: int) -> list:
        return [
            d
            for d in range(1, self.capacity(lv) + 1)
            if self.cell(lv, d) in self.ex.board
        ]

    def want(self, lv: int) -> int:
        return len(self.slot_depths.get(lv, []))

    # -- primitive moves under an active support staircase ----------------

    def _up(self, lv, d):
        src, dst = self.cell(lv, d), self.cell(lv, d - 1)
        self.ex.push(Move(Point(src.x - 1, src.y), src, dst))

    def _down(self, lv, d):
        src, dst = self.cell(lv, d), self.cell(lv, d + 1)
        self.ex.push(Move(Point(dst.x - 1, dst.y), src, dst))

    def sandwich(self, lv, ops):
        """Run track ops between a partial line rotation and its exact
        unwind.  The rotation only ever touches cells on tracks below lv,
        and the ops only move stones along track lv, so the unwind restores
        every bystander: the net effect is whatever ops did on the track."""
        jstar = self.N + lv - 1
        emitted = []
        if jstar >= 2:
            waves = rotation_waves(self.N, self.v)
            for wave in waves[: jstar - 1]:
                for m in wave:
                    if self.ex.push_tolerant(m):
                        emitted.append(m)
        ops()
        for m in reversed(emitted):
            self.ex.push(m.inverse())

    def climb_to_top(self, lv):
        """Bring the shallowest stone of the track to depth 1."""
        ds = self.natives(lv)
        d = ds[0]
        if d == 1:
            return
        self.sandwich(lv, lambda: [self._up(lv, dd) for dd in range(d, 1, -1)])

    def shift_run_down(self, lv):
        """Free the depth-1 cell by sliding the contiguous top run one step
        deeper (deepest stone first)."""
        ds = self.natives(lv)
        r = 0
        while r + 1 in ds:
            r += 1
        if r == 0:
            return
        if r >= self.capacity(lv):
            raise InternalError("track is full; cannot make room")

        def ops():
            for dd in range(r, 0, -1):
                self._down(lv, dd)

        self.sandwich(lv, ops)

    def compact(self, lv):
        """Slide the track's stones into depths 1..count."""
        ds = self.natives(lv)
        if ds == list(range(1, len(ds) + 1)):
            return

        def ops():
            current = list(ds)
            for target, d in enumerate(sorted(current), start=1):
                for dd in range(d, target, -1):
                    self._up(lv, dd)

        self.sandwich(lv, ops)

    # -- rides along the row under the line --------------------------------

    def ride(self, src_col, dst_col):
        """Walk the stone on (src_col, Y-1) to (dst_col, Y-1).  Occupied
        cells along the way swap roles with the rider; the destination must
        be free.  Each actual step is a two-move exchange with the line."""
        Y = self.Y
        if Point(dst_col, Y - 1) in self.ex.board:
            raise InternalError("ride destination is occupied")
        c = src_col
        step = 1 if dst_col > src_col else -1
        while c != dst_col:
            nxt = c + step
            if Point(nxt, Y - 1) in self.ex.board:
                c = nxt
                continue
            if step == 1:
                self.ex.push(Move(Point(c, Y - 1), Point(c, Y), Point(c + 1, Y - 1)))
                self.ex.push(Move(Point(c - 1, Y - 1), Point(c, Y - 1), Point(c, Y)))
            else:
                self.ex.push(Move(Point(c - 2, Y - 1), Point(c - 1, Y), Point(c - 1, Y - 1)))
                self.ex.push(Move(Point(c - 1, Y - 1), Point(c, Y - 1), Point(c - 1, Y)))
            c = nxt


def _phase2(ex: _Exec, v, N, k):
    """Pack the k surplus stones inside the size-N triangle at v into the
    canonical cells, processing anti-diagonal tracks from the top-right
    corner leftward; stones change tracks only on the row just under the
    line, where placed tracks are always out of the way."""
    if k == 0:
        return
    tr = _Tracks(ex, v, N, k)
    lo, hi = 2 - N, 0
    processed = set()
    while True:
        pending = [
            lv
            for lv in range(lo, hi + 1)
            if lv not in processed and (tr.want(lv) or tr.natives(lv))
        ]
        if not pending:
            break
        lv = pending[0]
        col = tr.cell(lv, 1).x
        want = tr.want(lv)

        while len(tr.natives(lv)) > want:
            tr.climb_to_top(lv)
            dest = None
            for c in range(col - 1, tr.x0, -1):
                if Point(c, tr.Y - 1) not in ex.board:
                    dest = c
                    break
            if dest is None:
                for c in range(col - 1, tr.x0, -1):
                    lv2 = 1 - (c - tr.x0)
                    if len(tr.natives(lv2)) < tr.capacity(lv2):
                        tr.shift_run_down(lv2)
                        dest = c
                        break
            if dest is None:
                raise InternalError("no room to park a surplus stone")
            tr.ride(col, dest)

        while len(tr.natives(lv)) < want:
            donor = None
            for c in range(col - 1, tr.x0, -1):
                lv2 = 1 - (c - tr.x0)
                if len(tr.natives(lv2)) > tr.want(lv2):
                    donor = lv2
                    break
            if donor is None:
                raise InternalError("no donor track for an unfilled cell")
            tr.climb_to_top(donor)
            if 1 in tr.natives(lv):
                tr.shift_run_down(lv)
            tr.ride(tr.cell(donor, 1).x, col)

        tr.compact(lv)
        processed.add(lv)


# ---------------------------------------------------------------------------
# public operations


def to_normal_form(P) -> MoveSequence:
    """A legal move sequence from P to the canonical representative of its
    orbit (verified before returning)."""
    P = frozenset(P)
    nf = normal_form(P)
    target = realize(nf)
    ex = _Exec(P)
    lines = _phase1(ex)
    got = sorted((Point(x0, y0 - m + 1), m) for x0, y0, m in lines)
    expected = sorted((p[0], p[1]) for p in nf.parts)
    if got != expected:
        raise InternalError(f"line formation ended at {got}, expected {expected}")
    for v, n, k in nf.parts:
        _phase2(ex, v, n, k)
    if frozenset(ex.board) != target:
        raise InternalError("normalization missed its target")
    return MoveSequence(start=P, moves=tuple(ex.moves))


def path_between(P, Q) -> MoveSequence:
    """A legal move sequence from P to Q; they must share an orbit.

    Built from the two normalization paths, with their common tail
    cancelled (so identical patterns yield the empty sequence)."""
    P, Q = frozenset(P), frozenset(Q)
    if normal_form(P) != normal_form(Q):
        raise NotSameOrbit("the patterns are not in the same orbit")
    onward = list(to_normal_form(P).moves)
    backward = list(to_normal_form(Q).moves)
    while onward and backward and onward[-1] == backward[-1]:
        onward.pop()
        backward.pop()
    moves = tuple(onward) + tuple(_reversed_moves(backward))
    return MoveSequence(start=P, moves=moves)
