"""
Buchberger's algorithm over Q in graded reverse lexicographic order.

Monomials are packed into single Python integers

    key(x^e) = deg(e) << K  -  sum_i e_i << (i * BITS)

so that integer comparison is the term order and monomial multiplication is
integer addition.  The exponent block ``deg << K - key`` supports a branch-free
divisibility test with one guard bit per field.

Buchberger runs fraction-free: polynomials carry gmpy2 integer coefficients,
reduction scales by the cofactor of the reducer's leading coefficient, and the
content is removed once per reduction.  Exact normal forms over Q (needed for
eliminants) use a monic rational copy of the basis.
"""

from __future__ import annotations

__all__ = ["Engine", "ExhaustedBudget", "EnginePoly"]

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .polynomials import MultiPoly

BITS = 16


class ExhaustedBudget(RuntimeError):
    """The configured number of reduction steps ran out before the basis was complete."""


@dataclass
class EnginePoly:
    lm: int                         # packed leading monomial
    exps: int                       # exponent block of the leading monomial
    lead: tuple[int, ...]           # leading exponent tuple
    lc: object                      # leading coefficient (mpz, or mpq 1 when monic)
    tail: list[tuple[int, object]]  # (packed monomial, coefficient), decreasing


def _content(values: Iterable) -> object:
    g = mpz(0)
    for v in values:
        g = gmpy2.gcd(g, v)
        if g == 1:
            break
    return g


class Engine:
    """Packed-monomial arithmetic and Buchberger's algorithm for a fixed variable count."""

    def __init__(self, nvars: int, budget: int | None = None):
        self.nvars = nvars
        self.K = nvars * BITS
        self.guard = sum(1 << (i * BITS + BITS - 1) for i in range(nvars))
        self.budget = budget
        self.steps = 0

    # -- monomials

    def pack(self, e: Sequence[int]) -> int:
        block = 0
        for i, x in enumerate(e):
            if x >= 1 << (BITS - 1):
                raise OverflowError("exponent too large for packed monomials")
            block |= x << (i * BITS)
        return (sum(e) << self.K) - block

    def degree(self, key: int) -> int:
        return -((-key) >> self.K)

    def exps(self, key: int) -> int:
        return (self.degree(key) << self.K) - key

    def unpack(self, key: int) -> tuple[int, ...]:
        block = self.exps(key)
        mask = (1 << BITS) - 1
        return tuple((block >> (i * BITS)) & mask for i in range(self.nvars))

    def divides(self, a_exps: int, b_exps: int) -> bool:
        g = self.guard
        return ((b_exps | g) - a_exps) & g == g

    def lcm(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        return self.pack(tuple(x if x > y else y for x, y in zip(a, b)))

    # -- conversion

    def from_multipoly(self, p: MultiPoly) -> dict[int, object]:
        """Integer multiple of ``p`` with packed monomials."""
        den = math.lcm(*(c.denominator for c in p.terms.values())) if p.terms else 1
        return {self.pack(e): mpz(c.numerator * (den // c.denominator)) for e, c in p.terms.items()}

    def rational_terms(self, p: MultiPoly) -> dict[int, object]:
        return {self.pack(e): mpq(c.numerator, c.denominator) for e, c in p.terms.items()}

    def to_multipoly(self, terms: dict[int, object] | EnginePoly, monic: bool = True) -> MultiPoly:
        if isinstance(terms, EnginePoly):
            items = [(terms.lm, terms.lc)] + terms.tail
        else:
            items = list(terms.items())
        scale = Fraction(1)
        if monic and items:
            lead = max(items)[1]
            scale = 1 / Fraction(int(lead.numerator), int(lead.denominator))
        return MultiPoly(self.nvars, {
            self.unpack(k): Fraction(int(c.numerator), int(c.denominator)) * scale
            for k, c in items})

    def make_primitive(self, terms: dict[int, object]) -> EnginePoly:
        """Integer polynomial with content 1 and positive leading coefficient."""
        order = sorted(terms, reverse=True)
        lm = order[0]
        g = _content(terms.values())
        if terms[lm] < 0:
            g = -g
        tail = [(k, terms[k] // g) for k in order[1:]]
        return EnginePoly(lm, self.exps(lm), self.unpack(lm), terms[lm] // g, tail)

    def make_monic(self, terms: dict[int, object]) -> EnginePoly:
        """Rational polynomial with leading coefficient 1."""
        order = sorted(terms, reverse=True)
        lm = order[0]
        inv = 1 / mpq(terms[lm])
        tail = [(k, terms[k] * inv) for k in order[1:]]
        return EnginePoly(lm, self.exps(lm), self.unpack(lm), mpq(1), tail)

    def monic_copy(self, basis: Sequence[EnginePoly]) -> list[EnginePoly]:
        return [self.make_monic({g.lm: g.lc, **dict(g.tail)}) for g in basis]

    # -- reduction

    def _charge(self, steps: int):
        self.steps += steps
        if self.budget is not None and self.steps > self.budget:
            raise ExhaustedBudget(f"exceeded {self.budget} reduction steps")

    def reduce(self, terms: dict[int, object], reducers: Sequence[EnginePoly]) -> dict[int, object]:
        """A nonzero integer multiple of the normal form of ``terms`` (consumed), with
        content 1.  Reducers must carry integer coefficients."""
        return self.reduce_scaled(terms, reducers)[0]

    def reduce_scaled(self, terms: dict[int, object],
                      reducers: Sequence[EnginePoly]) -> tuple[dict[int, object], object]:
        """Like ``reduce``, also returning the rational ``s`` with normal form = s * result."""
        K, guard = self.K, self.guard
        lead_data = [(g.exps, g) for g in reducers]
        heap = [-k for k in terms]
        heapq.heapify(heap)
        rem: dict[int, object] = {}
        steps = 0
        mult = mpz(1)
        while heap:
            k = -heapq.heappop(heap)
            c = terms.pop(k, None)
            if c is None:
                continue
            block = ((-((-k) >> K)) << K) - k
            for g_exps, g in lead_data:
                if ((block | guard) - g_exps) & guard == guard:
                    break
            else:
                rem[k] = c
                continue
            steps += 1
            lc = g.lc
            if lc != 1:
                h = gmpy2.gcd(c, lc)
                a = lc // h
                if a != 1:
                    mult *= a
                    for kk in terms:
                        terms[kk] *= a
                    for kk in rem:
                        rem[kk] *= a
                c //= h
            q = k - g.lm
            for gk, gc in g.tail:
                nk = gk + q
                v = terms.get(nk)
                if v is None:
                    terms[nk] = -c * gc
                    heapq.heappush(heap, -nk)
                else:
                    v -= c * gc
                    if v:
                        terms[nk] = v
                    else:
                        del terms[nk]
        self._charge(steps)
        g = mpz(1)
        if rem:
            g = _content(rem.values())
            if g != 1:
                rem = {k: v // g for k, v in rem.items()}
        return rem, mpq(g, mult)

    def normal_form(self, terms: dict[int, object], monic_basis: Sequence[EnginePoly]) -> dict[int, object]:
        """Exact normal form over Q; ``monic_basis`` from ``monic_copy``."""
        K, guard = self.K, self.guard
        lead_data = [(g.exps, g) for g in monic_basis]
        terms = dict(terms)
        heap = [-k for k in terms]
        heapq.heapify(heap)
        rem: dict[int, object] = {}
        while heap:
            k = -heapq.heappop(heap)
            c = terms.pop(k, None)
            if c is None:
                continue
            block = ((-((-k) >> K)) << K) - k
            for g_exps, g in lead_data:
                if ((block | guard) - g_exps) & guard == guard:
                    break
            else:
                rem[k] = c
                continue
            q = k - g.lm
            for gk, gc in g.tail:
                nk = gk + q
                v = terms.get(nk)
                if v is None:
                    terms[nk] = -c * gc
                    heapq.heappush(heap, -nk)
                else:
                    v -= c * gc
                    if v:
                        terms[nk] = v
                    else:
                        del terms[nk]
        return rem

    def spoly(self, f: EnginePoly, g: EnginePoly, lcm: int) -> dict[int, object]:
        qf, qg = lcm - f.lm, lcm - g.lm
        h = gmpy2.gcd(f.lc, g.lc)
        a, b = g.lc // h, f.lc // h
        out = {k + qf: a * c for k, c in f.tail}
        for k, c in g.tail:
            nk = k + qg
            v = out.get(nk)
            if v is None:
                out[nk] = -b * c
            else:
                v -= b * c
                if v:
                    out[nk] = v
                else:
                    del out[nk]
        return out

    # -- Buchberger

    def groebner(self, generators: Iterable[MultiPoly]) -> list[EnginePoly]:
        """Reduced Groebner basis (primitive integer elements), by increasing leading monomial.

        Normal selection strategy; pairs are pruned with the Gebauer-Moeller
        installation of Buchberger's product and chain criteria.
        """
        inputs = [self.from_multipoly(p) for p in generators if not p.is_zero()]
        if not inputs:
            return []
        polys: list[EnginePoly] = []
        active: list[int] = []
        live: dict[tuple[int, int], int] = {}
        heap: list[tuple[int, int, int]] = []

        def disjoint(a, b):
            return all(x == 0 or y == 0 for x, y in zip(a, b))

        def update(h: int):
            hp = polys[h]
            cands = [(g, self.lcm(hp.lead, polys[g].lead), disjoint(hp.lead, polys[g].lead))
                     for g in active]
            cand_exps = [self.exps(L) for _, L, _ in cands]
            kept = []
            for idx, (g1, L1, dis) in enumerate(cands):
                if not dis:
                    e1 = cand_exps[idx]
                    if any(self.divides(e2, e1) for e2 in cand_exps[idx + 1:]):
                        continue
                    if any(self.divides(e2, e1) for _, _, _, e2 in kept):
                        continue
                kept.append((g1, L1, dis, cand_exps[idx]))
            for pair, L in list(live.items()):
                g1, g2 = pair
                if self.divides(hp.exps, self.exps(L)) \
                        and self.lcm(polys[g1].lead, hp.lead) != L \
                        and self.lcm(polys[g2].lead, hp.lead) != L:
                    del live[pair]
            for g, L, dis, _ in kept:
                if not dis:
                    live[(g, h)] = L
                    heapq.heappush(heap, (L, g, h))
            active[:] = [g for g in active if not self.divides(hp.exps, polys[g].exps)] + [h]

        def add(terms: dict[int, object]) -> bool:
            if len(terms) == 1 and self.degree(next(iter(terms))) == 0:
                return True
            polys.append(self.make_primitive(terms))
            update(len(polys) - 1)
            return False

        for terms in sorted(inputs, key=max):
            r = self.reduce(terms, [polys[g] for g in active])
            if r and add(r):
                return [self.make_primitive(r)]
        while heap:
            L, g1, g2 = heapq.heappop(heap)
            if live.pop((g1, g2), None) is None:
                continue
            r = self.reduce(self.spoly(polys[g1], polys[g2], L), [polys[g] for g in active])
            if r and add(r):
                return [self.make_primitive(r)]
        return self._interreduce([polys[g] for g in active])

    def _interreduce(self, basis: list[EnginePoly]) -> list[EnginePoly]:
        basis = sorted(basis, key=lambda g: g.lm)
        out = []
        for i, g in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            # the leading monomial is irreducible by the others in a minimal basis
            terms = dict(g.tail)
            terms[g.lm] = g.lc
            out.append(self.make_primitive(self.reduce(terms, others)))
        return out
