"""
Dense univariate polynomials over Q, square-free parts and Sturm real-root counting.

Coefficient lists are stored lowest degree first.
"""

from __future__ import annotations

__all__ = ["UniPoly", "squarefree_part", "sturm_sequence", "sturm_count", "count_roots_in"]

import math
from fractions import Fraction
from typing import Iterable, Sequence


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([]), UniPoly(rem)
        quot = [Fraction(0)] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lc
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return UniPoly(quot), UniPoly(rem[: other.degree])

    def primitive(self) -> "UniPoly":
        """Integer coefficients, content 1, positive leading coefficient."""
        if self.is_zero():
            return self
        g = math.gcd(*(c.numerator for c in self.coeffs))
        l = math.lcm(*(c.denominator for c in self.coeffs))
        scale = Fraction(l, g) * (1 if self.lc > 0 else -1)
        return UniPoly(c * scale for c in self.coeffs)

    def to_text(self, var: str = "t") -> str:
        if self.is_zero():
            return "0/1"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (f"*{var}" if k == 1 else f"*{var}^{k}")
            parts.append(f"{c.numerator}/{c.denominator}{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.to_text()!r})"


def _int_coeffs(p: UniPoly) -> list[int]:
    q = p.primitive()
    return [int(c) for c in q.coeffs]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over the integers."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lead = r[-1]
        r = [c * lc for c in r]
        for j, c in enumerate(b):
            r[shift + j] -= lead * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive_int(cs: list[int]) -> list[int]:
    g = math.gcd(*cs)
    return [c // g for c in cs] if g > 1 else cs


def _gcd_int(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd by the primitive pseudo-remainder sequence."""
    a, b = _primitive_int(a), _primitive_int(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive_int(r) if r else r)
    if a[-1] < 0:
        a = [-c for c in a]
    return a


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial is undefined")
    if p.degree == 0:
        return UniPoly([1])
    a = _int_coeffs(p)
    g = _gcd_int(a, _int_coeffs(p.derivative()))
    q, r = UniPoly(a).divmod(UniPoly(g))
    assert r.is_zero()
    return q.primitive()


def sturm_sequence(p: UniPoly) -> list[list[int]]:
    """Sturm chain with each member replaced by a positive multiple of itself.

    Each step takes a pseudo-remainder, fixes its sign so it is a positive multiple of
    the true remainder, negates, and removes the content.
    """
    seq = [_int_coeffs(p)]
    if p.degree >= 1:
        seq.append(_int_coeffs(p.derivative()))
    while len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        r = _prem(a, b)
        if not r:
            break
        power = len(a) - len(b) + 1
        if b[-1] < 0 and power % 2 == 1:
            r = [-c for c in r]
        seq.append(_primitive_int([-c for c in r]))
    return seq


def _variations(signs: Iterable[int]) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for x, y in zip(nonzero, nonzero[1:]) if x != y)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_count(p: UniPoly) -> int:
    """Number of distinct real roots of a square-free polynomial."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    seq = sturm_sequence(p)
    at_plus = [_sign(s[-1]) for s in seq]
    at_minus = [_sign(s[-1]) * (-1) ** (len(s) - 1) for s in seq]
    return _variations(at_minus) - _variations(at_plus)


def count_roots_in(p: UniPoly, lo, hi) -> int:
    """Distinct real roots of a square-free polynomial in the half-open interval (lo, hi]."""
    seq = sturm_sequence(p)

    def at(x):
        x = Fraction(x)
        signs = []
        for s in seq:
            acc = Fraction(0)
            for c in reversed(s):
                acc = acc * x + c
            signs.append(_sign(acc))
        return _variations(signs)

    return at(lo) - at(hi)
