"""Decide Schubert instances: Groebner basis, quotient dimension, eliminant, real roots."""

from __future__ import annotations

__all__ = [
    "GroebnerBasis", "SolveResult", "Status", "groebner", "quotient_dimension",
    "standard_monomials", "eliminant", "solve_instance", "linear_form", "MAX_FORM_RETRIES",
]

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq, mpz

from .groebner import Engine, EnginePoly, ExhaustedBudget
from .linalg import exact_dependence
from .polynomials import MultiPoly
from .schubert import Instance
from .univariate import UniPoly, squarefree_part, sturm_count

MAX_FORM_RETRIES = 5
FORM_COEFF_BOUND = 10


class Status(str, enum.Enum):
    SOLVED = "Solved"
    NON_TRANSVERSE = "NonTransverse"
    ELIMINANT_FAILED = "EliminantFailed"
    POSITIVE_DIMENSIONAL = "PositiveDimensional"
    INCONSISTENT = "Inconsistent"
    EXHAUSTED_BUDGET = "ExhaustedBudget"


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis in degrevlex order, sorted by increasing leading monomial."""
    generators: list[MultiPoly]
    nvars: int
    order: str = "degrevlex"
    steps: int = 0
    _engine: Engine = field(default=None, repr=False, compare=False)
    _basis: list[EnginePoly] = field(default=None, repr=False, compare=False)
    _monic: list[EnginePoly] = field(default=None, repr=False, compare=False)

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [g.lead for g in self._basis]

    def monic_basis(self) -> list[EnginePoly]:
        if self._monic is None:
            self._monic = self._engine.monic_copy(self._basis)
        return self._monic

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        eng = self._engine
        return eng.to_multipoly(eng.normal_form(eng.rational_terms(p), self.monic_basis()),
                                monic=False)


def groebner(generators: Sequence[MultiPoly], budget: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis; raises ExhaustedBudget past ``budget`` reduction steps."""
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ValueError("generators must share the variable count")
    eng = Engine(nvars, budget)
    basis = eng.groebner(gens)
    return GroebnerBasis([eng.to_multipoly(g) for g in basis], nvars, steps=eng.steps,
                         _engine=eng, _basis=basis)


def _is_zero_dimensional(leads: list[tuple[int, ...]], nvars: int) -> bool:
    for i in range(nvars):
        if not any(e[i] > 0 and sum(e) == e[i] for e in leads):
            return False
    return True


def standard_monomials(gb: GroebnerBasis) -> list[tuple[int, ...]] | None:
    """Monomials outside the leading-term ideal, or None if there are infinitely many."""
    leads = gb.leading_exponents()
    n = gb.nvars
    if gb.is_unit():
        return []
    if not _is_zero_dimensional(leads, n):
        return None

    def standard(e):
        return not any(all(x >= y for x, y in zip(e, l)) for l in leads)

    found = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                if f not in found and standard(f):
                    found.add(f)
                    nxt.append(f)
        frontier = nxt
    eng = gb._engine
    return sorted(found, key=eng.pack)


def quotient_dimension(gb: GroebnerBasis) -> float | int:
    """dim_Q of the quotient ring, or math.inf for positive-dimensional ideals."""
    std = standard_monomials(gb)
    return math.inf if std is None else len(std)


def linear_form(nvars: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randint(-FORM_COEFF_BOUND, FORM_COEFF_BOUND) for _ in range(nvars)]
        if any(coeffs):
            return coeffs


def _minimal_polynomial(gb: GroebnerBasis, coeffs: Sequence[int],
                        std: list[tuple[int, ...]]) -> UniPoly:
    eng, basis = gb._engine, gb._basis
    index = {eng.pack(e): i for i, e in enumerate(std)}
    form = [(eng.pack(tuple(1 if j == i else 0 for j in range(gb.nvars))), mpz(c))
            for i, c in enumerate(coeffs) if c]
    # the current power of the form is scale * current, with integer coefficients
    current = {eng.pack((0,) * gb.nvars): mpz(1)}
    scale = mpq(1)
    vectors = []
    for _ in range(len(std) + 1):
        vec = [mpq(0)] * len(std)
        for k, c in current.items():
            vec[index[k]] = scale * c
        vectors.append(vec)
        product: dict[int, object] = {}
        for k, c in current.items():
            for fk, fc in form:
                nk = k + fk
                v = product.get(nk, 0) + c * fc
                if v:
                    product[nk] = v
                else:
                    product.pop(nk, None)
        current, factor = eng.reduce_scaled(product, basis)
        scale *= factor
    dep = exact_dependence(vectors)
    assert dep is not None, "powers of a form in a D-dimensional algebra are dependent"
    k, combo = dep
    return UniPoly(combo[: k + 1])


def eliminant(gb: GroebnerBasis, seed: int = 0) -> tuple[UniPoly, list[int], Status]:
    """Minimal polynomial of a random integer linear form on the quotient algebra.

    Forms whose minimal polynomial has degree below the quotient dimension are
    retried with fresh seeds; after MAX_FORM_RETRIES failures the status is
    ELIMINANT_FAILED and the last attempt is returned.
    """
    std = standard_monomials(gb)
    if std is None:
        raise ValueError("eliminants are only defined for zero-dimensional ideals")
    if not std:
        raise ValueError("the ideal is the unit ideal")
    D = len(std)
    poly, coeffs = None, None
    for attempt in range(MAX_FORM_RETRIES):
        coeffs = linear_form(gb.nvars, seed * 7919 + attempt)
        poly = _minimal_polynomial(gb, coeffs, std)
        if poly.degree == D:
            return poly.primitive(), coeffs, Status.SOLVED
    return poly.primitive(), coeffs, Status.ELIMINANT_FAILED


@dataclass
class SolveResult:
    status: Status
    quotient_dimension: float | int | None = None
    eliminant: UniPoly | None = None
    real_count: int | None = None
    steps: int = 0
    form: list[int] | None = None

    @property
    def eliminant_degree(self) -> int | None:
        return None if self.eliminant is None else self.eliminant.degree

    def record(self) -> dict:
        qd = self.quotient_dimension
        return {
            "status": self.status.value,
            "quotient_dimension": "inf" if qd == math.inf else qd,
            "eliminant_degree": self.eliminant_degree,
            "real_count": self.real_count,
            "steps": self.steps,
        }


def solve_instance(inst: Instance, expected_degree: int | None = None, seed: int = 0,
                   budget: int | None = None) -> SolveResult:
    """groebner -> quotient dimension -> eliminant -> square-free check -> Sturm count."""
    try:
        gb = groebner(list(inst.generators), budget=budget)
    except ExhaustedBudget:
        return SolveResult(Status.EXHAUSTED_BUDGET, steps=budget or 0)
    if gb.is_unit():
        return SolveResult(Status.INCONSISTENT, 0, steps=gb.steps)
    D = quotient_dimension(gb)
    if D == math.inf:
        return SolveResult(Status.POSITIVE_DIMENSIONAL, D, steps=gb.steps)
    poly, coeffs, status = eliminant(gb, seed)
    result = SolveResult(status, D, poly, steps=gb.steps, form=coeffs)
    if status is not Status.SOLVED:
        return result
    if squarefree_part(poly).degree != poly.degree:
        result.status = Status.NON_TRANSVERSE
        return result
    result.real_count = sturm_count(poly)
    if expected_degree is not None and D != expected_degree:
        result.status = Status.NON_TRANSVERSE
    return result
