import math
from itertools import combinations

import pytest

from tsol.core import legal_moves, line_pattern, pattern, size_n_triangle
from tsol.errors import CapExceeded, TooLarge
from tsol.explorer import (
    check_orbit_size_bounds,
    diameter,
    enumerate_fill_matrices,
    find_irreducible_excess_pattern,
    orbit_bfs,
    orbit_size,
    random_walk,
)
from tsol.filling import excess, fill
from tsol.normalform import line_with_excess, normal_form, same_orbit


def test_orbit_sizes_small():
    assert orbit_size(line_pattern(1)) == 1
    assert orbit_size(line_pattern(2)) == 3  # all 2-subsets of the triangle
    for n in range(3, 7):
        assert orbit_size(line_pattern(n)) >= 3 * math.factorial(n) - 3


def test_orbit_sizes_golden():
    # exact counts, frozen once computed by BFS
    golden = {1: 1, 2: 3, 3: 16, 4: 122, 5: 1188, 6: 13844}
    for n, size in golden.items():
        assert orbit_size(line_pattern(n)) == size


def test_orbit_vertices_of_l2():
    g = orbit_bfs(line_pattern(2))
    tri = sorted(size_n_triangle(2))
    expected = {frozenset(c) for c in combinations(tri, 2)}
    assert set(g.vertices()) == expected


def test_orbit_cap():
    with pytest.raises(CapExceeded) as ei:
        orbit_bfs(line_pattern(5), vertex_cap=10)
    assert ei.value.partial == 10


def test_vertex_degree_cross_check():
    for n in range(2, 6):
        g = orbit_bfs(line_pattern(n))
        start = g.states[0]
        assert len(g.neighbours_of_state(start)) == len(legal_moves(line_pattern(n)))


def test_bfs_distances_symmetric_sampled():
    g = orbit_bfs(line_pattern(4))
    adj = g.adjacency()

    def bfs_from(src):
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    d0 = bfs_from(0)
    for probe in (1, 7, 33, 100):
        dp = bfs_from(probe)
        assert dp[0] == d0[probe]


def test_enumerate_fill_matrices_small():
    assert enumerate_fill_matrices(1) == [size_n_triangle(1)]
    two = enumerate_fill_matrices(2)
    tri = sorted(size_n_triangle(2))
    assert set(two) == {frozenset(c) for c in combinations(tri, 2)}
    with pytest.raises(TooLarge):
        enumerate_fill_matrices(9)


def test_fill_matrices_equal_orbit():
    for n in range(1, 6):
        assert set(enumerate_fill_matrices(n)) == set(orbit_bfs(line_pattern(n)).vertices())


def test_diameters():
    assert diameter(line_pattern(1)) == 0
    assert diameter(line_pattern(2)) == 1
    values = [diameter(line_pattern(n)) for n in range(1, 5)]
    assert values == sorted(values)
    assert values[2] > values[1] > values[0]


def test_orbit_partition_small():
    # all 3-subsets of the size-3 triangle split into BFS components that
    # match the canonical-form equivalence exactly
    cells = sorted(size_n_triangle(3))
    subsets = [frozenset(c) for c in combinations(cells, 3)]
    by_nf = {}
    for P in subsets:
        by_nf.setdefault(normal_form(P), set()).add(P)
    for P in subsets:
        component = set(orbit_bfs(P).vertices())
        assert component == by_nf[normal_form(P)]


def test_check_orbit_size_bounds():
    r = check_orbit_size_bounds(2)
    assert r.orbit_size == 3 and r.lower_bound == 3 and r.lower_ok
    r = check_orbit_size_bounds(3)
    assert r.orbit_size >= 15 and r.lower_ok
    assert r.upper_comparison in ("size <= bound", "size > bound")


def test_random_walk():
    P = line_pattern(4)
    assert random_walk(P, 0, seed=1) == P
    a = random_walk(P, 10_000, seed=42)
    b = random_walk(P, 10_000, seed=42)
    assert a == b
    assert fill(a) == fill(P)
    assert excess(a).excess == 0
    assert same_orbit(a, P)


def test_excess_orbit_matches_enumeration_n4():
    tri = sorted(size_n_triangle(4))
    full = frozenset(tri)
    for k in (1, 2):
        expected = {
            frozenset(c)
            for c in combinations(tri, 4 + k)
            if fill(frozenset(c)) == full and excess(frozenset(c)).excess == k
        }
        got = set(orbit_bfs(line_with_excess(4, k)).vertices())
        assert got == expected
