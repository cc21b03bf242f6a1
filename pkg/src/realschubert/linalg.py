"""Exact linear algebra over Q."""

from __future__ import annotations

__all__ = ["exact_dependence", "rank", "nullspace"]

from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

_ZERO, _ONE = mpq(0), mpq(1)


def _to_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def exact_dependence(vectors: Sequence[Sequence]) -> tuple[int, list[Fraction]] | None:
    """Find the first prefix of ``vectors`` that is linearly dependent.

    Returns ``(k, coeffs)`` where ``k`` is the 0-based index of the first vector lying
    in the span of its predecessors and ``sum(coeffs[i] * vectors[i]) == 0`` with
    ``coeffs[k] == 1``; returns None when all vectors are independent.
    """
    if not vectors:
        return None
    dim = len(vectors[0])
    # echelon rows, each paired with its expression in terms of the inputs
    rows: list[tuple[int, list, list]] = []
    for k, vec in enumerate(vectors):
        if len(vec) != dim:
            raise ValueError("vectors must have equal length")
        v = [_to_mpq(x) for x in vec]
        combo = [_ZERO] * (k + 1)
        combo[k] = _ONE
        for pivot, row, row_combo in rows:
            c = v[pivot]
            if c:
                for j in range(pivot, dim):
                    if row[j]:
                        v[j] -= c * row[j]
                for j, x in enumerate(row_combo):
                    if x:
                        combo[j] -= c * x
        pivot = next((j for j, x in enumerate(v) if x), None)
        if pivot is None:
            return k, [Fraction(int(x.numerator), int(x.denominator)) for x in combo]
        inv = 1 / v[pivot]
        rows.append((pivot, [x * inv for x in v], [x * inv for x in combo]))
    return None


def _echelon(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    for col in range(ncols):
        pivot = next((i for i, r in enumerate(rows) if r[col]), None)
        if pivot is None:
            continue
        prow = rows.pop(pivot)
        inv = 1 / prow[col]
        prow = [x * inv for x in prow]
        for r in rows + out:
            c = r[col]
            if c:
                for j in range(col, ncols):
                    r[j] -= c * prow[j]
        out.append(prow)
    return out


def rank(matrix: Sequence[Sequence]) -> int:
    return len(_echelon(matrix))


def nullspace(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {v : matrix @ v = 0}."""
    if not matrix:
        raise ValueError("empty matrix")
    ncols = len(matrix[0])
    ech = _echelon(matrix)
    pivots = {next(j for j, x in enumerate(r) if x): r for r in ech}
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for p, r in pivots.items():
            v[p] = -r[free]
        basis.append(v)
    return basis
