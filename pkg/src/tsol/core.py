"""Lattice geometry, patterns, and the legal moves of the triangle solitaire.

A pattern is a finite set of occupied cells of the integer lattice
(x to the right, y upward).  The solitaire acts on triangles: for an
anchor v the active cells are v + {(0,1), (1,1), (1,0)}, and whenever
exactly two of the three cells are occupied, either stone may be moved
onto the empty cell.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

from .errors import BadSize, IllegalMove, ParseError


class Point(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Point(-self.x, -self.y)


# Offsets of the triangle shape, in fixed order: up, up-right, right.
TRIANGLE = (Point(0, 1), Point(1, 1), Point(1, 0))

# Cells that can share a triangle with the origin.
NEIGHBOUR_OFFSETS = (
    Point(1, 0),
    Point(-1, 0),
    Point(0, 1),
    Point(0, -1),
    Point(1, -1),
    Point(-1, 1),
)

Pattern = frozenset


def pattern(points: Iterable) -> Pattern:
    """Normalize an iterable of (x, y) pairs into a Pattern."""
    return frozenset(Point(int(p[0]), int(p[1])) for p in points)


class Move(NamedTuple):
    """One solitaire rewrite: within the triangle at `anchor`, the stone at
    `src` jumps to the empty cell `dst`."""

    anchor: Point
    src: Point
    dst: Point

    def inverse(self) -> "Move":
        return Move(self.anchor, self.dst, self.src)


def triangle_at(v) -> Pattern:
    """The three cells of the triangle anchored at v."""
    v = Point(*v)
    return frozenset(v + t for t in TRIANGLE)


def neighbourhood(p) -> Pattern:
    """The six cells that can share a triangle with p."""
    p = Point(*p)
    return frozenset(p + d for d in NEIGHBOUR_OFFSETS)


def pattern_neighbourhood(P) -> Pattern:
    """Union of the neighbourhoods of the cells of P (may overlap P)."""
    return frozenset(p + d for p in P for d in NEIGHBOUR_OFFSETS)


def touches(A, B) -> bool:
    """True if some cell of B lies in the neighbourhood of A (symmetric)."""
    if len(A) > len(B):
        A, B = B, A
    near = pattern_neighbourhood(A)
    return any(b in near for b in B)


def triangle_completion(p, q) -> Point:
    """The third cell of the unique triangle containing the neighbours p, q."""
    p, q = Point(*p), Point(*q)
    d = (q.x - p.x, q.y - p.y)
    if d == (1, 0):
        return Point(p.x + 1, p.y - 1)
    if d == (0, 1):
        return Point(p.x - 1, p.y + 1)
    if d == (1, -1):
        return Point(p.x + 1, p.y)
    if d in ((-1, 0), (0, -1), (-1, 1)):
        return triangle_completion(q, p)
    raise ValueError(f"{p} and {q} are not neighbours")


def legal_moves(P) -> list:
    """All legal moves on P, sorted, each listed exactly once.

    An anchor with exactly two occupied cells contributes two moves;
    fully occupied or nearly empty triangles contribute none.
    """
    moves = []
    anchors = {p - t for p in P for t in TRIANGLE}
    for v in anchors:
        cells = [v + t for t in TRIANGLE]
        occupied = [c for c in cells if c in P]
        if len(occupied) == 2:
            empty = next(c for c in cells if c not in P)
            for src in occupied:
                moves.append(Move(v, src, empty))
    moves.sort()
    return moves


def is_legal_move(P, m: Move) -> bool:
    cells = triangle_at(m.anchor)
    if m.src not in cells or m.dst not in cells or m.src == m.dst:
        return False
    occupied = sum(1 for c in cells if c in P)
    return occupied == 2 and m.src in P and m.dst not in P


def apply_move(P, m: Move) -> Pattern:
    """Apply a legal move; raises IllegalMove otherwise."""
    if not is_legal_move(P, m):
        raise IllegalMove(f"move {m} is not legal here")
    return (P - {m.src}) | {m.dst}


def size_n_triangle(n: int, v=(0, 0)) -> Pattern:
    """The triangle of size n anchored at v: cells (a,b) in [0,n)^2 with a+b >= n-1."""
    if n < 1:
        raise BadSize(f"triangle size must be >= 1, got {n}")
    v = Point(*v)
    return frozenset(v + Point(a, b) for a in range(n) for b in range(n) if a + b >= n - 1)


def line_pattern(n: int, v=(0, 0)) -> Pattern:
    """The horizontal line of length n sitting on the top row of the size-n
    triangle anchored at v."""
    if n < 1:
        raise BadSize(f"line length must be >= 1, got {n}")
    v = Point(*v)
    return frozenset(v + Point(a, n - 1) for a in range(n))


def edges_of_triangle(n: int, v=(0, 0)):
    """The horizontal, vertical and diagonal edges of the size-n triangle at v."""
    if n < 1:
        raise BadSize(f"triangle size must be >= 1, got {n}")
    v = Point(*v)
    horizontal = frozenset(v + Point(a, n - 1) for a in range(n))
    vertical = frozenset(v + Point(n - 1, b) for b in range(n))
    diagonal = frozenset(v + Point(a, n - 1 - a) for a in range(n))
    return horizontal, vertical, diagonal


def sorted_cells(P) -> list:
    """Cells in rendering order: top row first, left to right within a row."""
    return sorted(P, key=lambda p: (-p.y, p.x))


def parse_pattern(text: str) -> Pattern:
    """Parse the `.pts` format: one "<x> <y>" pair per line, '#' comments."""
    cells = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<x> <y>', got {raw!r}", line=lineno)
        try:
            p = Point(int(parts[0]), int(parts[1]))
        except ValueError:
            raise ParseError(f"line {lineno}: not integers: {raw!r}", line=lineno) from None
        if p in cells:
            raise ParseError(f"line {lineno}: duplicate point {tuple(p)}", line=lineno)
        cells.add(p)
    return frozenset(cells)


def render_pattern(P) -> str:
    """Render a pattern in `.pts` format, points sorted by (y desc, x asc)."""
    lines = [f"{p.x} {p.y}" for p in sorted_cells(P)]
    return "\n".join(lines) + ("\n" if lines else "")


def render_ascii(P) -> str:
    """ASCII art: '#' occupied, '.' empty, with a header naming the lower-left corner."""
    if not P:
        return "# origin 0 0\n"
    xs = [p.x for p in P]
    ys = [p.y for p in P]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    rows = []
    for y in range(y1, y0 - 1, -1):
        rows.append("".join("#" if Point(x, y) in P else "." for x in range(x0, x1 + 1)))
    return f"# origin {x0} {y0}\n" + "\n".join(rows) + "\n"
