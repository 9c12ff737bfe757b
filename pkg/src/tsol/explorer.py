"""Exhaustive desk-scale exploration of solitaire orbits.

Orbits live inside the filling of the seed pattern, so states are encoded
as bit words over the filling's cells (top row first, left to right) and
neighbours are generated with precomputed triangle masks.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

from .core import (
    Pattern,
    Point,
    apply_move,
    legal_moves,
    line_pattern,
    size_n_triangle,
    sorted_cells,
    triangle_at,
)
from .errors import CapExceeded, TooLarge
from .filling import fill

DEFAULT_VERTEX_CAP = 5_000_000


@dataclass
class OrbitGraph:
    """BFS closure of a pattern under solitaire moves.

    States are bit words over `cells`; `states[i]` was discovered at
    distance `dist[i]` from the source (states[0]).
    """

    cells: tuple          # cell order used by the encoding
    index: dict           # Point -> bit position
    triangles: tuple      # (mask, bit, bit, bit) per anchor inside the filling
    states: list          # int encodings, in BFS discovery order
    dist: list            # BFS distance per state
    state_index: dict     # encoding -> position in `states`
    _adjacency: list = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.states)

    def encode(self, P) -> int:
        word = 0
        for p in P:
            word |= 1 << self.index[p]
        return word

    def decode(self, word: int) -> Pattern:
        return frozenset(c for c in self.cells if word & (1 << self.index[c]))

    def vertices(self) -> list:
        return [self.decode(s) for s in self.states]

    def distance_of(self, P) -> int:
        return self.dist[self.state_index[self.encode(P)]]

    def neighbours_of_state(self, word: int):
        out = []
        for mask, bits in self.triangles:
            inside = word & mask
            if inside.bit_count() == 2:
                empty = mask ^ inside
                for b in bits:
                    if inside & b:
                        out.append(word ^ (b | empty))
        return out

    def adjacency(self) -> list:
        """Neighbour indices per state (built once, reused by diameter)."""
        if self._adjacency is None:
            adj = []
            for word in self.states:
                adj.append([self.state_index[w] for w in self.neighbours_of_state(word)])
            self._adjacency = adj
        return self._adjacency


def _triangle_masks(cells, index):
    triangles = []
    cellset = frozenset(cells)
    anchors = set()
    for c in cells:
        for t in ((0, -1), (-1, -1), (-1, 0), (0, 0)):
            anchors.add(Point(c.x + t[0], c.y + t[1]))
    for v in sorted(anchors):
        tri = triangle_at(v)
        if tri <= cellset:
            bits = tuple(1 << index[c] for c in tri)
            triangles.append((bits[0] | bits[1] | bits[2], bits))
    return tuple(triangles)


def orbit_bfs(P, vertex_cap: int = DEFAULT_VERTEX_CAP) -> OrbitGraph:
    """All patterns reachable from P, with BFS distances.

    Raises CapExceeded (carrying the partial count) once more than
    `vertex_cap` states have been discovered.
    """
    P = frozenset(P)
    cells = tuple(sorted_cells(fill(P)))
    index = {c: i for i, c in enumerate(cells)}
    triangles = _triangle_masks(cells, index)
    graph = OrbitGraph(
        cells=cells,
        index=index,
        triangles=triangles,
        states=[],
        dist=[],
        state_index={},
    )
    start = graph.encode(P)
    graph.states.append(start)
    graph.dist.append(0)
    graph.state_index[start] = 0
    queue = deque([start])
    while queue:
        word = queue.popleft()
        d = graph.dist[graph.state_index[word]]
        for nxt in graph.neighbours_of_state(word):
            if nxt in graph.state_index:
                continue
            if len(graph.states) >= vertex_cap:
                raise CapExceeded(
                    f"orbit exceeds vertex cap {vertex_cap}", partial=len(graph.states)
                )
            graph.state_index[nxt] = len(graph.states)
            graph.states.append(nxt)
            graph.dist.append(d + 1)
            queue.append(nxt)
    return graph


def orbit_size(P, vertex_cap: int = DEFAULT_VERTEX_CAP) -> int:
    return orbit_bfs(P, vertex_cap).size


def diameter(P, vertex_cap: int = DEFAULT_VERTEX_CAP) -> int:
    """Exact diameter of the orbit graph (BFS from every vertex)."""
    graph = orbit_bfs(P, vertex_cap)
    adj = graph.adjacency()
    n = graph.size
    best = 0
    dist = [-1] * n
    stamp = [0] * n
    for source in range(n):
        dist[source] = 0
        stamp[source] = source + 1
        frontier = [source]
        ecc = 0
        while frontier:
            nxt = []
            for u in frontier:
                du = dist[u]
                for w in adj[u]:
                    if stamp[w] != source + 1:
                        stamp[w] = source + 1
                        dist[w] = du + 1
                        ecc = max(ecc, du + 1)
                        nxt.append(w)
            frontier = nxt
        best = max(best, ecc)
    return best


FILL_MATRIX_GUARD = 8


def enumerate_fill_matrices(n: int) -> list:
    """All n-point subsets of the size-n triangle that fill it.

    Column-by-column search; a candidate may keep at most k points in its
    first k columns, which prunes most of the C(n(n+1)/2, n) space.
    """
    if n < 1:
        return []
    if n > FILL_MATRIX_GUARD:
        raise TooLarge(f"fill-matrix enumeration supports n <= {FILL_MATRIX_GUARD}")
    target = size_n_triangle(n)
    columns = []
    for a in range(n):
        columns.append([Point(a, b) for b in range(n - 1, n - 2 - a, -1)])
    suffix = [0] * (n + 1)
    for a in range(n - 1, -1, -1):
        suffix[a] = suffix[a + 1] + len(columns[a])
    out = []

    def subsets(col, need):
        cells = columns[col]
        for r in range(min(need, len(cells)) + 1):
            yield from _k_subsets(cells, r)

    def _k_subsets(cells, r):
        if r == 0:
            yield []
            return
        for i in range(len(cells) - r + 1):
            for rest in _k_subsets(cells[i + 1:], r - 1):
                yield [cells[i]] + rest

    def rec(col, chosen):
        placed = len(chosen)
        if placed > col + 1:
            return
        if col == n:
            if placed == n and fill(chosen) == target:
                out.append(frozenset(chosen))
            return
        if placed + suffix[col] < n:
            return
        for extra in subsets(col, n - placed):
            rec(col + 1, chosen + extra)

    rec(0, [])
    out.sort(key=lambda P: sorted((-p.y, p.x) for p in P))
    return out


def count_upper_bound(n: int) -> float:
    """Closed-form count of patterns obeying the column property, used as the
    reported upper bound on the line-orbit size."""
    from scipy.special import lambertw

    if n < 2:
        return float("nan")
    c = (4 + 2 * lambertw(-2 * math.exp(-2)).real) / (math.e**3 * math.sqrt(2 * math.pi))
    return c * (math.e / 2) ** n * (n - 1) ** (n - 2.5)


@dataclass(frozen=True)
class OrbitSizeReport:
    n: int
    orbit_size: int
    lower_bound: int        # 3 n! - 3, from the corner construction
    upper_bound_expr: float
    lower_ok: bool
    upper_comparison: str   # reported, not asserted


def check_orbit_size_bounds(n: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> OrbitSizeReport:
    size = orbit_size(line_pattern(n), vertex_cap)
    lower = 3 * math.factorial(n) - 3
    upper = count_upper_bound(n)
    cmp = "n/a" if math.isnan(upper) else ("size <= bound" if size <= upper else "size > bound")
    return OrbitSizeReport(
        n=n,
        orbit_size=size,
        lower_bound=lower,
        upper_bound_expr=upper,
        lower_ok=size >= lower,
        upper_comparison=cmp,
    )


def random_walk(P, steps: int, seed: int = 0) -> Pattern:
    """Apply `steps` uniformly random legal moves; deterministic under seed."""
    rng = random.Random(seed)
    current = frozenset(P)
    for _ in range(steps):
        moves = legal_moves(current)
        if not moves:
            break
        current = apply_move(current, rng.choice(moves))
    return current


def _closure_word(word: int, triangles) -> int:
    """Filling closure on a bit-encoded pattern (all cells inside the region
    the triangle masks were built for)."""
    changed = True
    while changed:
        changed = False
        for mask, _bits in triangles:
            if (word & mask).bit_count() == 2:
                word |= mask
                changed = True
    return word


def _word_bits(word: int) -> list:
    bits = []
    while word:
        b = word & -word
        bits.append(b)
        word ^= b
    return bits


def find_irreducible_excess_pattern(max_points: int = 8):
    """Search for a pattern with excess 1 whose only excess set is empty,
    i.e. an overfilled pattern in which every stone is essential.

    The candidates with excess 1 over a size-m triangle are exactly the
    orbit of the line-with-one-excess shape, so the search walks those
    orbits for m = 3, 4, ... and keeps the first pattern none of whose
    stones can be dropped without shrinking the filling.  Returns None if
    no witness exists within the point budget.
    """
    from .normalform import line_with_excess

    for m in range(3, max_points):
        if m + 1 > max_points:
            break
        graph = orbit_bfs(line_with_excess(m, 1))
        full = (1 << len(graph.cells)) - 1
        for word in graph.states:
            if all(
                _closure_word(word ^ b, graph.triangles) != full
                for b in _word_bits(word)
            ):
                return graph.decode(word)
    return None


def find_mixed_maximal_excess_pattern(max_points: int = 16):
    """Search for a pattern whose inclusion-maximal excess sets come in two
    different cardinalities.

    Maximal excess sets are complements of minimal filling subsets, so the
    witness must contain minimal fillers of two sizes: an all-essential
    overfilled pattern (the excess-1 witness) together with one more stone
    that lets a plain fill matrix appear.  The search finds the former and
    then scans single-stone extensions.
    """
    from .filling import fill

    base = find_irreducible_excess_pattern(max_points=max_points - 1)
    if base is None:
        return None
    target = fill(base)
    for z in sorted(target - base, key=lambda p: (-p.y, p.x)):
        P = base | {z}
        if any(fill(P - {x}) == target for x in base):
            return P
    return None
