import pytest
from hypothesis import given, settings, strategies as st

from tsol.core import (
    apply_move,
    legal_moves,
    line_pattern,
    pattern,
    size_n_triangle,
)
from tsol.errors import NotAFilling, TooLarge
from tsol.filling import (
    decompose,
    excess,
    excess_sets,
    fill,
    fill_with_stats,
    is_fill_matrix,
    maximal_excess_sets,
)

points = st.tuples(st.integers(-5, 5), st.integers(-5, 5))
patterns = st.frozensets(points, min_size=0, max_size=10).map(pattern)


def test_fill_examples():
    assert fill(pattern([(0, 1), (1, 1)])) == size_n_triangle(2)
    assert fill(pattern([(0, 0)])) == pattern([(0, 0)])
    assert fill(frozenset()) == frozenset()
    for n in range(2, 9):
        assert fill(line_pattern(n)) == size_n_triangle(n)


def test_fill_is_closed_and_contains_input():
    P = pattern([(0, 5), (1, 5), (4, 0), (5, 0), (4, 1)])
    F = fill(P)
    assert P <= F
    assert fill(F) == F


@settings(max_examples=1000, deadline=None)
@given(patterns)
def test_fill_confluence(P):
    assert fill(P, policy="queue") == fill(P, policy="stack")


@settings(max_examples=300)
@given(patterns, st.integers(0, 10**6))
def test_fill_and_excess_invariant_under_moves(P, pick):
    moves = legal_moves(P)
    if not moves:
        return
    Q = apply_move(P, moves[pick % len(moves)])
    assert fill(Q) == fill(P)
    assert excess(Q).excess == excess(P).excess


@settings(max_examples=300)
@given(patterns, st.integers(0, 10**6))
def test_excess_monotone_under_subpatterns(P, pick):
    if not P:
        return
    x = sorted(P)[pick % len(P)]
    assert excess(P - {x}).excess <= excess(P).excess


@settings(max_examples=200)
@given(patterns)
def test_fill_size_bound(P):
    n = len(P)
    assert len(fill(P)) <= n * (n + 1) // 2


def test_decompose_examples():
    dec = decompose(size_n_triangle(3))
    assert dec.parts == (((0, 0), 3),)
    dec = decompose(pattern([(0, 0), (10, 10)]))
    assert [tuple(v) for v, k in dec.parts] == [(10, 10), (0, 0)]
    assert [k for _, k in dec.parts] == [1, 1]

    P = pattern([(0, 5), (1, 5), (4, 0), (5, 0), (4, 1)])
    dec = decompose(fill(P))
    assert sorted(k for _, k in dec.parts) == [2, 3]


def test_decompose_rejects_non_fillings():
    with pytest.raises(NotAFilling):
        decompose(line_pattern(3))  # a bare line is not closed


@settings(max_examples=200)
@given(patterns)
def test_decompose_parts_are_non_touching_and_bounded(P):
    from tsol.core import touches

    F = fill(P)
    if not F:
        return
    dec = decompose(F)
    cells = [size_n_triangle(k, v) for v, k in dec.parts]
    assert frozenset().union(*cells) == F
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            assert not touches(cells[i], cells[j])
    assert sum(k for _, k in dec.parts) <= len(P)


def test_excess_examples():
    for n in range(1, 9):
        assert excess(line_pattern(n)).excess == 0
    assert excess(size_n_triangle(2)).excess == 1
    assert excess(size_n_triangle(3)).excess == 3
    assert excess(frozenset()).excess == 0


def test_is_fill_matrix():
    for n in range(1, 9):
        assert is_fill_matrix(line_pattern(n))
    assert not is_fill_matrix(size_n_triangle(2))
    assert is_fill_matrix(pattern([(0, 1), (1, 0)]))
    assert not is_fill_matrix(frozenset())


def test_excess_sets_of_lines():
    for n in range(1, 7):
        assert excess_sets(line_pattern(n)) == [frozenset()]
        assert maximal_excess_sets(line_pattern(n)) == [frozenset()]


def test_excess_sets_downward_closed_and_bounded():
    P = size_n_triangle(3)
    family = excess_sets(P)
    fam = set(family)
    e = excess(P).excess
    for U in family:
        assert len(U) <= e
        for x in U:
            assert (U - {x}) in fam


def test_excess_sets_guard():
    with pytest.raises(TooLarge):
        excess_sets(frozenset(size_n_triangle(7)))  # 28 points


def test_maximal_excess_sets_are_maximal():
    P = size_n_triangle(3)
    fam = set(excess_sets(P))
    for U in maximal_excess_sets(P):
        for x in P - U:
            assert (U | {x}) not in fam


def test_fill_work_is_quadratic():
    # instrumented inspection count stays within a fixed quadratic envelope
    import random

    rng = random.Random(7)
    for n in (20, 50, 100, 200):
        base = line_pattern(n)
        noise = {(rng.randrange(n), rng.randrange(n)) for _ in range(5)}
        P = base | pattern(noise)
        _, visits = fill_with_stats(P)
        assert visits <= 10 * n * n + 200
