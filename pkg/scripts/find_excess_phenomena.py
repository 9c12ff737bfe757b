#!/usr/bin/env python3
"""Search for the two excess-set phenomena and print the witnesses:

(a) a pattern with excess 1 whose only excess set is empty, i.e. the
    excess cannot be removed by deleting stones (smallest witness: 8
    stones over the size-7 triangle);
(b) a pattern whose inclusion-maximal excess sets have two different
    cardinalities (smallest witness found: 9 stones).

The (a) search is exhaustive over all excess-1 patterns per triangle
size; (b) extends the (a) witness so that a plain fill matrix appears
next to the all-essential filler.
"""
from tsol.core import render_ascii, sorted_cells
from tsol.explorer import find_irreducible_excess_pattern, find_mixed_maximal_excess_pattern
from tsol.filling import excess, excess_sets, maximal_excess_sets


def show(P):
    print("  cells:", " ".join(f"({p.x},{p.y})" for p in sorted_cells(P)))
    print("\n".join("  " + line for line in render_ascii(P).splitlines()))


def main():
    print("(a) excess 1, only the empty excess set:")
    W = find_irreducible_excess_pattern(max_points=8)
    show(W)
    print(f"  excess = {excess(W).excess}, excess sets = {excess_sets(W)}")

    print("(b) maximal excess sets of two cardinalities:")
    M = find_mixed_maximal_excess_pattern()
    show(M)
    for U in maximal_excess_sets(M):
        print("  maximal:", sorted((p.x, p.y) for p in U))


if __name__ == "__main__":
    main()
