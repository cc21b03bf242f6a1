"""Shared constructions for tests: flags placed in Schubert cells by geometry."""

import math
import random
from fractions import Fraction

from realschubert.combinatorics import FlagType, Permutation
from realschubert.schubert import coordinate_pattern


def translation_matrix(t, n):
    """U with gamma(s + t) = gamma(s) U for gamma(s) = (s^{n-1}, ..., 1); it carries
    the osculating flag at 0 to the one at t."""
    t = Fraction(t)
    U = [[Fraction(0)] * n for _ in range(n)]
    for c in range(1, n + 1):
        e = n - c
        for k in range(e + 1):
            U[n - k - 1][c - 1] = math.comb(e, k) * t ** (e - k)
    return U


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def random_cell_point(w: Permutation, ft: FlagType, rng: random.Random, t=0):
    """Random a_k x n matrix whose flag lies in the open cell X_w(t)."""
    pattern = coordinate_pattern(w, ft)
    values = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(pattern.variable_count)]
    return matmul(pattern.instantiate(values), translation_matrix(t, ft.n))


def identity_chart(E, ft: FlagType):
    """Coordinates of the flag of E in the identity chart, or None off the chart.

    Row operations respect the flag: a row may absorb rows of its own block or of
    earlier blocks only.
    """
    E = [row[:] for row in E]
    n, k = ft.n, ft.a[-1]
    bounds = (0,) + ft.a
    block_of = {i: l for l in range(len(ft.a)) for i in range(bounds[l], bounds[l + 1])}
    for c in range(k):
        l = block_of[c]
        pivot = next((r for r in range(c, bounds[l + 1]) if E[r][c]), None)
        if pivot is None:
            return None
        E[c], E[pivot] = E[pivot], E[c]
        inv = 1 / E[c][c]
        E[c] = [x * inv for x in E[c]]
        for r in range(bounds[l], k):
            if r != c and E[r][c]:
                f = E[r][c]
                E[r] = [x - f * y for x, y in zip(E[r], E[c])]
    chart = coordinate_pattern(Permutation.identity(n), ft)
    values = [None] * chart.variable_count
    for i, row in enumerate(chart.entries):
        for j, entry in enumerate(row):
            if isinstance(entry, int):
                assert E[i][j] == entry
            else:
                values[entry.index] = E[i][j]
    return values
