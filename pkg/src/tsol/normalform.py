"""Canonical orbit representatives.

Every pattern is solitaire-equivalent to a unique union of non-touching
"line plus packed excess" shapes, one per triangle of its filling.  The
representative is computed in O(n^2) from the filling alone.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Pattern, Point, line_pattern, size_n_triangle
from .errors import BadParams, ParseError
from .filling import decompose, fill


def excess_slots(n: int, v=(0, 0)) -> list:
    """Cells under the top line of the size-n triangle at v, ordered row by
    row from the top, each row right to left.  Packed excess occupies a
    prefix of this list."""
    v = Point(*v)
    cells = []
    for b in range(n - 2, -1, -1):
        for a in range(n - 1, n - 2 - b, -1):
            cells.append(v + Point(a, b))
    return cells


def line_with_excess(n: int, k: int, v=(0, 0)) -> Pattern:
    """The canonical shape: a line of length n over k packed excess cells."""
    if not 0 <= k <= n * (n - 1) // 2:
        raise BadParams(f"excess count {k} out of range for size {n}")
    v = Point(*v)
    return line_pattern(n, v) | frozenset(excess_slots(n, v)[:k])


@dataclass(frozen=True)
class NormalForm:
    """Sorted (anchor, size, excess) parts; the orbit invariant."""

    parts: tuple  # of (Point, int, int)

    def __iter__(self):
        return iter(self.parts)


def realize(nf: NormalForm) -> Pattern:
    """The pattern the normal form denotes."""
    cells = set()
    for v, n, k in nf.parts:
        cells |= line_with_excess(n, k, v)
    return frozenset(cells)


def normal_form(P) -> NormalForm:
    """Identify the orbit of P.

    Fill, split the filling into triangles, and count the surplus stones
    inside each triangle; the triple list determines the orbit completely.
    """
    P = frozenset(P)
    if not P:
        return NormalForm(parts=())
    dec = decompose(fill(P))
    parts = []
    for v, n in dec.parts:
        cells = size_n_triangle(n, v)
        k = sum(1 for p in P if p in cells) - n
        parts.append((v, n, k))
    return NormalForm(parts=tuple(parts))


def same_orbit(P, Q) -> bool:
    return normal_form(P) == normal_form(Q)


def render_normal_form(nf: NormalForm) -> str:
    lines = [f"part {v.x} {v.y} n={n} k={k}" for v, n, k in nf.parts]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_normal_form(text: str) -> NormalForm:
    parts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            if len(tokens) != 5 or tokens[0] != "part":
                raise ValueError
            vx, vy = int(tokens[1]), int(tokens[2])
            if not tokens[3].startswith("n=") or not tokens[4].startswith("k="):
                raise ValueError
            n, k = int(tokens[3][2:]), int(tokens[4][2:])
        except ValueError:
            raise ParseError(f"line {lineno}: bad part line {raw!r}", line=lineno) from None
        parts.append((Point(vx, vy), n, k))
    parts.sort(key=lambda part: (-part[0].y, part[0].x))
    return NormalForm(parts=tuple(parts))
