#!/usr/bin/env python3
"""Fit the constants in the normalization-path length bounds.

Reports max len/n^3 over excess-free orbits and max len/(n^2 (n+k)) for
small excess, over many seeded random orbit elements.
"""
from tsol.core import line_pattern
from tsol.explorer import random_walk
from tsol.normalform import line_with_excess
from tsol.pathfinder import to_normal_form


def main():
    worst = 0.0
    for n in range(2, 9):
        for trial in range(100):
            P = random_walk(line_pattern(n), 12 * n * n, seed=trial * 101 + n)
            L = len(to_normal_form(P).moves)
            worst = max(worst, L / n**3)
        print(f"n={n}: running max len/n^3 = {worst:.4f}")
    worst_k = 0.0
    for n in range(3, 8):
        for k in range(1, 5):
            if k > n * (n - 1) // 2:
                continue
            for trial in range(40):
                P = random_walk(line_with_excess(n, k), 12 * n * n, seed=trial * 7 + k)
                L = len(to_normal_form(P).moves)
                worst_k = max(worst_k, L / (n * n * (n + k)))
        print(f"n={n}: running max len/(n^2(n+k)) = {worst_k:.4f}")


if __name__ == "__main__":
    main()
