"""The filling closure, triangle decomposition, excess, and excess sets.

Filling a pattern repeatedly adds the third cell of any doubly occupied
triangle until nothing more can be added.  The result is always a union
of pairwise non-touching triangles, which is what decompose() recovers.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .core import (
    NEIGHBOUR_OFFSETS,
    Pattern,
    Point,
    size_n_triangle,
    triangle_completion,
)
from .errors import NotAFilling, TooLarge

EXCESS_SET_GUARD = 24


def _fill_impl(P, policy: str):
    filled = set(P)
    pending = deque(P)
    pop = pending.popleft if policy == "queue" else pending.pop
    visits = 0
    while pending:
        x = pop()
        for d in NEIGHBOUR_OFFSETS:
            y = x + d
            if y in filled:
                visits += 1
                z = triangle_completion(x, y)
                if z not in filled:
                    filled.add(z)
                    pending.append(z)
    return frozenset(filled), visits


def fill(P, policy: str = "queue") -> Pattern:
    """Least fixed point of completing doubly occupied triangles.

    The closure is confluent, so the worklist policy ("queue" or "stack")
    only changes the order of work, never the result.
    """
    return _fill_impl(P, policy)[0]


def fill_with_stats(P, policy: str = "queue"):
    """fill() plus the number of neighbour-pair inspections performed."""
    return _fill_impl(P, policy)


@dataclass(frozen=True)
class TriangleDecomposition:
    """The unique non-touching triangles covering a filling.

    parts are (anchor, size) pairs sorted by (y desc, x asc) of the anchor.
    """

    parts: tuple
    total_filled: int

    def cells_of(self, i: int) -> Pattern:
        v, k = self.parts[i]
        return size_n_triangle(k, v)


@dataclass(frozen=True)
class ExcessReport:
    excess: int
    per_part: tuple  # (part index, excess within that part)


def _components(F):
    """Connected components of F under the touching relation."""
    seen = set()
    comps = []
    for start in F:
        if start in seen:
            continue
        comp = set()
        queue = deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            comp.add(x)
            for d in NEIGHBOUR_OFFSETS:
                y = x + d
                if y in F and y not in seen:
                    seen.add(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def decompose(F) -> TriangleDecomposition:
    """Split a filling into its non-touching triangles.

    Raises NotAFilling when some component is not a translated triangle
    (equivalently, when F is not closed under completion).
    """
    parts = []
    for comp in _components(F):
        xs = [p.x for p in comp]
        ys = [p.y for p in comp]
        k = max(xs) - min(xs) + 1
        v = Point(min(xs), min(ys))
        if max(ys) - min(ys) + 1 != k or comp != size_n_triangle(k, v):
            raise NotAFilling(f"component at {tuple(v)} is not a triangle")
        parts.append((v, k))
    parts.sort(key=lambda part: (-part[0].y, part[0].x))
    return TriangleDecomposition(parts=tuple(parts), total_filled=len(F))


def excess(P) -> ExcessReport:
    """|P| minus the total size of the triangles in the decomposition of fill(P)."""
    if not P:
        return ExcessReport(excess=0, per_part=())
    dec = decompose(fill(P))
    per_part = []
    for i, (v, k) in enumerate(dec.parts):
        cells = size_n_triangle(k, v)
        count = sum(1 for p in P if p in cells) - k
        per_part.append((i, count))
    total = len(P) - sum(k for _, k in dec.parts)
    assert total == sum(c for _, c in per_part)
    return ExcessReport(excess=total, per_part=tuple(per_part))


def is_fill_matrix(P) -> bool:
    """True when P fills a single triangle of size exactly |P|."""
    if not P:
        return False
    dec = decompose(fill(P))
    return len(dec.parts) == 1 and dec.parts[0][1] == len(P)


def excess_sets(P, max_card=None) -> list:
    """All subsets U of P (|U| <= max_card) with fill(P \\ U) = fill(P).

    The family is downward closed, so candidates of size c+1 are built
    only on top of members of size c.  Output is sorted by cardinality,
    then lexicographically.
    """
    P = frozenset(P)
    if len(P) > EXCESS_SET_GUARD:
        raise TooLarge(f"|P| = {len(P)} exceeds the enumeration guard {EXCESS_SET_GUARD}")
    target = fill(P)
    bound = excess(P).excess
    if max_card is not None:
        bound = min(bound, max_card)
    current = [frozenset()]
    result = [frozenset()]
    points = sorted(P, key=lambda p: (-p.y, p.x))
    for _ in range(bound):
        seen = set()
        nxt = []
        for U in current:
            for x in points:
                if x in U:
                    continue
                cand = U | {x}
                if cand in seen:
                    continue
                seen.add(cand)
                if fill(P - cand) == target:
                    nxt.append(cand)
        if not nxt:
            break
        current = nxt
        result.extend(nxt)
    result.sort(key=lambda U: (len(U), sorted((-p.y, p.x) for p in U)))
    return result


def maximal_excess_sets(P) -> list:
    """Inclusion-maximal excess sets of P."""
    P = frozenset(P)
    family = set(excess_sets(P))
    maximal = [
        U
        for U in family
        if all((U | {x}) not in family for x in P - U)
    ]
    maximal.sort(key=lambda U: (len(U), sorted((-p.y, p.x) for p in U)))
    return maximal
