"""
Polynomial systems for Schubert problems in the big-cell chart of a flag manifold.

Flags E_{a_1} < ... < E_{a_k} are row spaces of initial row blocks of a matrix in
the identity pattern M_iota.  A Schubert condition X_w(t) relative to the flag
osculating the rational normal curve (t^{n-1}, ..., t, 1) at t becomes rank
conditions rank[E_{a_i}; F_j(t)] <= a_i + j - r_w(a_i, j), i.e. vanishing minors.
"""

from __future__ import annotations

__all__ = [
    "Var", "CoordMatrix", "RankCondition", "Instance",
    "coordinate_pattern", "osculating_matrix", "annihilator_matrix", "condition_set",
    "condition_polynomials", "projected_condition_polynomials", "build_instance",
    "membership_check", "condition_labels", "instance_to_text", "instance_from_text",
]

import itertools
import math
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .combinatorics import (
    FlagType, Necklace, Permutation, SchubertData, descent_data, flag_dimension,
    format_labels, length, rank_function, validate_schubert_data, _in_Wa,
)
from .linalg import rank
from .polynomials import MultiPoly, det_poly, variable_names

Scalar = Union[int, Fraction, MultiPoly]


class Var(NamedTuple):
    index: int  # 0-based, row-major
    row: int    # 1-based position in the matrix
    col: int


Entry = Union[int, Var]


@dataclass(frozen=True)
class CoordMatrix:
    """Local coordinate pattern M_w: each entry is 0, 1 or a free variable."""
    rows: int
    cols: int
    entries: tuple[tuple[Entry, ...], ...]
    variable_count: int

    def variables(self) -> list[Var]:
        return [e for row in self.entries for e in row if isinstance(e, Var)]

    def as_polynomials(self, nvars: int | None = None) -> list[list[MultiPoly]]:
        """The pattern as a matrix over the polynomial ring in its variables
        (padded with extra trailing variables when ``nvars`` is larger)."""
        nvars = self.variable_count if nvars is None else nvars
        out = []
        for row in self.entries:
            out.append([MultiPoly.variable(e.index, nvars) if isinstance(e, Var)
                        else MultiPoly.constant(e, nvars) for e in row])
        return out

    def instantiate(self, values: Sequence) -> list[list[Fraction]]:
        if len(values) != self.variable_count:
            raise ValueError(f"expected {self.variable_count} values, got {len(values)}")
        return [[Fraction(values[e.index]) if isinstance(e, Var) else Fraction(e)
                 for e in row] for row in self.entries]

    def render(self) -> str:
        cells = [["1" if e == 1 else "0" if e == 0 else f"x{e.row}{e.col}" for e in row]
                 for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


@dataclass(frozen=True)
class RankCondition:
    """dim(E_block cap F_order) >= r, equivalently rank <= rank_bound on the stacked matrix."""
    block: int
    order: int
    r: int

    @property
    def rank_bound(self) -> int:
        return self.block + self.order - self.r

    @property
    def minor_size(self) -> int:
        return 1 + self.block + self.order - self.r

    def implies(self, other: "RankCondition") -> bool:
        # dim(E_b cap F_j) loses at most one per dropped row of E or F
        slack = max(0, self.block - other.block) + max(0, self.order - other.order)
        return self.r - slack >= other.r


def coordinate_pattern(w: Permutation, ft: FlagType) -> CoordMatrix:
    if w.n != ft.n or not _in_Wa(w, ft):
        raise ValueError(f"{w} is not in W^a for {ft}")
    n, rows = ft.n, ft.a[-1]
    winv = w.inverse()
    bounds = (0,) + ft.a
    entries = []
    count = 0
    for i in range(1, rows + 1):
        l = next(b for b in range(len(bounds) - 1) if bounds[b] < i <= bounds[b + 1])
        lo, hi = bounds[l], bounds[l + 1]
        row: list[Entry] = []
        for j in range(1, n + 1):
            if j == w(i):
                row.append(1)
            elif j < w(i) or winv(j) < i or lo < i < winv(j) <= hi:
                row.append(0)
            else:
                row.append(Var(count, i, j))
                count += 1
        entries.append(tuple(row))
    return CoordMatrix(rows, n, tuple(entries), count)


def _falling(e: int, d: int) -> int:
    return math.perm(e, d)


def osculating_matrix(t: Scalar, j: int, n: int) -> list[list[Scalar]]:
    """Rows gamma(t), gamma'(t), ..., gamma^{(j-1)}(t) with gamma(t) = (t^{n-1}, ..., 1).

    ``t`` may be a rational number or a MultiPoly (for symbolic parameters).
    """
    if not 1 <= j <= n:
        raise ValueError(f"need 1 <= j <= n, got j={j}, n={n}")
    rows = []
    for d in range(j):
        row = []
        for c in range(1, n + 1):
            e = n - c
            row.append(_falling(e, d) * t ** (e - d) if e >= d else 0 * t ** 0)
        rows.append(row)
    if not isinstance(t, MultiPoly):
        rows = [[Fraction(x) for x in row] for row in rows]
    return rows


def annihilator_matrix(t: Scalar, j: int, n: int) -> list[list[Scalar]]:
    """(n-j) x n matrix whose rows span the linear forms vanishing on F_j(t).

    Row m holds the coefficients of (s - t)^j s^m, paired with gamma(s) coordinates.
    """
    rows = []
    for m in range(n - j):
        row = []
        for c in range(1, n + 1):
            q = n - c - m  # power of s taken from (s - t)^j
            row.append(math.comb(j, q) * (-t) ** (j - q) if 0 <= q <= j else 0 * t ** 0)
        rows.append(row)
    if not isinstance(t, MultiPoly):
        rows = [[Fraction(x) for x in row] for row in rows]
    return rows


def condition_set(w: Permutation, ft: FlagType, prune: bool = True) -> list[RankCondition]:
    """Non-automatic rank conditions of X_w, optionally dropping ones implied by others."""
    if not _in_Wa(w, ft):
        raise ValueError(f"{w} is not in W^a for {ft}")
    n = ft.n
    conds = [RankCondition(b, j, r)
             for b in ft.a for j in range(1, n + 1)
             if (r := rank_function(w, b, j)) > max(0, b + j - n)]
    if prune:
        conds = [c for c in conds if not any(o != c and o.implies(c) for o in conds)]
    return conds


def _lift(x: Scalar, nvars: int) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    return MultiPoly.constant(x, nvars)


def _all_minors(matrix: list[list[MultiPoly]], size: int) -> list[MultiPoly]:
    nrows, ncols = len(matrix), len(matrix[0])
    out = []
    for rs in itertools.combinations(range(nrows), size):
        for cs in itertools.combinations(range(ncols), size):
            d = det_poly([[matrix[r][c] for c in cs] for r in rs])
            if not d.is_zero():
                out.append(d)
    return out


def _pattern_ring(pattern: CoordMatrix, t: Scalar) -> int:
    return t.nvars if isinstance(t, MultiPoly) else pattern.variable_count


def condition_polynomials(c: RankCondition, t: Scalar, pattern: CoordMatrix) -> list[MultiPoly]:
    """All nonzero minors of size ``c.minor_size`` of [first c.block rows of pattern; F_j(t)].

    With a symbolic ``t`` (a MultiPoly), the pattern variables come first in its ring.
    """
    nvars = _pattern_ring(pattern, t)
    n = pattern.cols
    rows = c.block + c.order
    if c.minor_size > min(rows, n):
        raise ValueError(f"minor size {c.minor_size} exceeds the {rows}x{n} stacked matrix")
    e_rows = pattern.as_polynomials(nvars)[: c.block]
    f_rows = [[_lift(x, nvars) for x in row] for row in osculating_matrix(t, c.order, n)]
    return _all_minors(e_rows + f_rows, c.minor_size)


def projected_condition_polynomials(c: RankCondition, t: Scalar,
                                    pattern: CoordMatrix) -> list[MultiPoly]:
    """Same ideal as ``condition_polynomials`` with smaller minors.

    With K the annihilator of F_j(t), dim(E cap F_j) = block - rank(E K^T), so the
    condition is the vanishing of the (block - r + 1)-minors of E K^T.
    """
    nvars = _pattern_ring(pattern, t)
    n = pattern.cols
    e_rows = pattern.as_polynomials(nvars)[: c.block]
    ann = [[_lift(x, nvars) for x in row] for row in annihilator_matrix(t, c.order, n)]
    zero = MultiPoly.zero(nvars)
    product = []
    for er in e_rows:
        row = []
        for kr in ann:
            acc = zero
            for x, y in zip(er, kr):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            row.append(acc)
        product.append(row)
    size = c.block - c.r + 1
    if size > min(len(product), len(ann)):
        raise ValueError("condition is not satisfiable by any subspace")
    return _all_minors(product, size)


def condition_labels(conditions: Sequence[Permutation]) -> list[Union[int, str]]:
    """Descent for Grassmannian conditions, a letter per distinct other condition."""
    letters: dict[Permutation, str] = {}
    labels: list[Union[int, str]] = []
    for w in conditions:
        dd = descent_data(w)
        if dd.is_grassmannian:
            labels.append(dd.delta)
        else:
            if w not in letters:
                letters[w] = string.ascii_uppercase[len(letters)]
            labels.append(letters[w])
    return labels


@dataclass(frozen=True)
class Instance:
    schubert_data: SchubertData
    points: tuple[Fraction, ...]
    generators: tuple[MultiPoly, ...]
    necklace: Necklace
    nvars: int

    def labels_in_point_order(self) -> tuple:
        labels = condition_labels(self.schubert_data.conditions)
        order = sorted(range(len(self.points)), key=lambda i: self.points[i])
        return tuple(labels[i] for i in order)


def _dedupe(polys: Sequence[MultiPoly]) -> list[MultiPoly]:
    seen = {}
    for p in polys:
        q = p.primitive()
        seen.setdefault(q.to_text(), q)
    return list(seen.values())


def build_instance(sd: SchubertData, points: Sequence, *, form: str = "projected",
                   prune: bool = True, check_dimension: bool = True) -> Instance:
    """Generators of X_{w_1}(t_1) cap ... cap X_{w_m}(t_m) in the M_iota chart.

    ``form`` selects the minors used for each rank condition: "stacked" takes the
    minors of [E; F_j(t)] literally, "projected" the equivalent smaller minors of
    E K^T.  ``check_dimension=False`` admits data whose lengths do not sum to the
    dimension (excess-codimension experiments).
    """
    ft = sd.flag_type
    valid = validate_schubert_data(sd)
    if check_dimension and not valid:
        raise ValueError(f"{sd.describe()} is not Schubert data on {ft}")
    pts = tuple(Fraction(p) for p in points)
    if len(pts) != sd.m:
        raise ValueError(f"need {sd.m} points, got {len(pts)}")
    if len(set(pts)) != len(pts):
        raise ValueError("evaluation points must be distinct")
    if 0 in pts:
        # the chart is the open cell relative to F(0): a condition there has no chart points
        raise ValueError("evaluation points must be nonzero in the identity chart")
    if form not in ("projected", "stacked"):
        raise ValueError(f"unknown generator form {form!r}")
    pattern = coordinate_pattern(Permutation.identity(ft.n), ft)
    make = projected_condition_polynomials if form == "projected" else condition_polynomials
    gens: list[MultiPoly] = []
    for w, t in zip(sd.conditions, pts):
        for c in condition_set(w, ft, prune=prune):
            gens.extend(make(c, t, pattern))
    labels = condition_labels(sd.conditions)
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    necklace = Necklace(tuple(labels[i] for i in order))
    return Instance(sd, pts, tuple(_dedupe(gens)), necklace, pattern.variable_count)


def membership_check(values, w: Permutation, ft: FlagType, t) -> bool:
    """Whether the flag given by ``values`` lies in X_w(t).

    ``values`` is either a full assignment of the M_iota variables or an explicit
    a_k x n numeric matrix whose initial row blocks span the flag.
    """
    n = ft.n
    if values and isinstance(values[0], (list, tuple)):
        matrix = [[Fraction(x) for x in row] for row in values]
        if len(matrix) != ft.a[-1] or any(len(row) != n for row in matrix):
            raise ValueError(f"expected a {ft.a[-1]}x{n} matrix")
    else:
        pattern = coordinate_pattern(Permutation.identity(n), ft)
        matrix = pattern.instantiate(values)
    for c in condition_set(w, ft, prune=False):
        stacked = matrix[: c.block] + osculating_matrix(Fraction(t), c.order, n)
        if rank(stacked) > c.rank_bound:
            return False
    return True


# --- text form -----------------------------------------------------------------

def instance_to_text(inst: Instance) -> str:
    sd = inst.schubert_data
    names = variable_names(inst.nvars)
    lines = [
        f"flag_type: {','.join(map(str, sd.flag_type.a))};{sd.flag_type.n}",
        f"conditions: {' '.join(str(w) for w in sd.conditions)}",
        f"points: {' '.join(str(p) for p in inst.points)}",
        f"necklace: {inst.necklace}",
        f"variables: {inst.nvars}",
        f"generators: {len(inst.generators)}",
    ]
    lines.extend(g.to_text(names) for g in inst.generators)
    return "\n".join(lines) + "\n"


def instance_from_text(text: str) -> Instance:
    lines = text.splitlines()
    header = dict(line.split(": ", 1) for line in lines[:6])
    a_part, n_part = header["flag_type"].split(";")
    ft = FlagType(tuple(int(x) for x in a_part.split(",")), int(n_part))
    sd = SchubertData(ft, tuple(Permutation.parse(s) for s in header["conditions"].split()))
    points = tuple(Fraction(p) for p in header["points"].split())
    nvars = int(header["variables"])
    names = variable_names(nvars)
    gens = tuple(MultiPoly.from_text(line, names) for line in lines[6:6 + int(header["generators"])])
    labels = condition_labels(sd.conditions)
    order = sorted(range(len(points)), key=lambda i: points[i])
    return Instance(sd, points, gens, Necklace(tuple(labels[i] for i in order)), nvars)
