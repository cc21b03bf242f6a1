"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

__all__ = [
    "MultiPoly", "degrevlex_key", "poly_arith", "det_poly", "det_cofactor", "variable_names",
]

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def degrevlex_key(e: Exponent):
    """Sort key realizing graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(e), tuple(-x for x in reversed(e)))


def variable_names(nvars: int) -> list[str]:
    return [f"x{i}" for i in range(1, nvars + 1)]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    # gmpy2.mpq and friends expose numerator/denominator
    return Fraction(int(c.numerator), int(c.denominator))


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as {exponent tuple: nonzero Fraction}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                c = _as_fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        """The i-th variable, 0-based."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    # -- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self, key: Callable = degrevlex_key) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def leading_term(self, key: Callable = degrevlex_key) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def __len__(self):
        return len(self.terms)

    # -- arithmetic

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable counts differ: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        c = _as_fraction(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict[Exponent, Fraction] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def divmod_lead(self, divisor: "MultiPoly", key: Callable = degrevlex_key):
        """Multivariate division by a single polynomial; returns (quotient, remainder)."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = divisor.leading_term(key)
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        out_rem: dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem, key=key)
            c = rem.pop(e)
            if all(x >= y for x, y in zip(e, le)):
                q = tuple(x - y for x, y in zip(e, le))
                qc = c / lc
                quot[q] = qc
                for de, dc in divisor.terms.items():
                    if de == le:
                        continue
                    ne = tuple(x + y for x, y in zip(de, q))
                    v = rem.get(ne, 0) - qc * dc
                    if v:
                        rem[ne] = v
                    else:
                        rem.pop(ne, None)
            else:
                out_rem[e] = c
        return MultiPoly._raw(self.nvars, quot), MultiPoly._raw(self.nvars, out_rem)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod_lead(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    # -- evaluation and normalization

    def evaluate(self, values: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute(self, i: int, value) -> "MultiPoly":
        """Replace variable i by a rational constant, keeping the variable count."""
        value = _as_fraction(value)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            v = out.get(ne, 0) + c * value ** k
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return MultiPoly._raw(self.nvars, out)

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(math.gcd(*nums), math.lcm(*dens))

    def primitive(self, key: Callable = degrevlex_key) -> "MultiPoly":
        """Integer coefficients with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term(key)[1] < 0:
            c = -c
        return MultiPoly._raw(self.nvars, {e: v / c for e, v in self.terms.items()})

    def extend(self, nvars: int) -> "MultiPoly":
        """Embed into a ring with more variables (appended at the end)."""
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly._raw(nvars, {e + pad: c for e, c in self.terms.items()})

    # -- text

    def to_text(self, names: Sequence[str] | None = None, key: Callable = degrevlex_key) -> str:
        """Canonical text: terms in decreasing order, coefficients as num/den."""
        names = list(names) if names is not None else variable_names(self.nvars)
        if not self.terms:
            return "0/1"
        parts = []
        for e, c in self.sorted_terms(key):
            factors = [f"{c.numerator}/{c.denominator}"]
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, names: Sequence[str]) -> "MultiPoly":
        names = list(names)
        index = {name: i for i, name in enumerate(names)}
        out: dict[Exponent, Fraction] = {}
        text = text.strip()
        if text == "0/1":
            return cls.zero(len(names))
        for part in text.split(" + "):
            factors = part.split("*")
            c = Fraction(factors[0])
            e = [0] * len(names)
            for f in factors[1:]:
                name, _, power = f.partition("^")
                e[index[name]] += int(power) if power else 1
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return cls(len(names), out)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"


def poly_arith(op: str, p: MultiPoly, q) -> MultiPoly:
    """Dispatch for add / sub / mul / scalar_mul; ``q`` is a scalar for scalar_mul."""
    if op == "scalar_mul":
        return p.scale(q)
    if not isinstance(q, MultiPoly) or q.nvars != p.nvars:
        raise ValueError("operands must be polynomials over the same variables")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def det_cofactor(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Laplace expansion along the sparsest row, skipping zero entries."""
    size = len(m)
    if size == 0:
        raise ValueError("empty matrix")
    nvars = m[0][0].nvars
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    row = min(range(size), key=lambda r: sum(1 for x in m[r] if not x.is_zero()))
    total = MultiPoly.zero(nvars)
    for col, entry in enumerate(m[row]):
        if entry.is_zero():
            continue
        minor = [[x for j, x in enumerate(r) if j != col] for i, r in enumerate(m) if i != row]
        sub = entry * det_cofactor(minor)
        total = total + sub if (row + col) % 2 == 0 else total - sub
    return total


def _det_bareiss(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    a = [list(r) for r in m]
    size = len(a)
    nvars = a[0][0].nvars
    sign = 1
    prev = MultiPoly.constant(1, nvars)
    for k in range(size - 1):
        if a[k][k].is_zero():
            pivot = next((i for i in range(k + 1, size) if not a[i][k].is_zero()), None)
            if pivot is None:
                return MultiPoly.zero(nvars)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if not num.is_zero() else num
        prev = a[k][k]
    result = a[size - 1][size - 1]
    return result if sign > 0 else -result


def det_poly(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant: cofactor expansion up to 5x5, fraction-free elimination above."""
    size = len(m)
    if any(len(r) != size for r in m):
        raise ValueError("matrix must be square")
    if size <= 5:
        return det_cofactor(m)
    return _det_bareiss(m)
