import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from realschubert.linalg import exact_dependence, nullspace, rank
from realschubert.polynomials import (
    MultiPoly, _det_bareiss, det_cofactor, det_poly, poly_arith, variable_names,
)
from realschubert.univariate import (
    UniPoly, count_roots_in, squarefree_part, sturm_count, sturm_sequence,
)

NV = 3
NAMES = variable_names(NV)
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(-6, 6)


@st.composite
def polys(draw, nvars=NV, max_terms=5, max_deg=3):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg)] * nvars), fractions, max_size=max_terms))
    return MultiPoly(nvars, terms)


points = st.tuples(*[fractions] * NV)


# --- multivariate polynomials ------------------------------------------------

@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero(NV)


@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(p, q, x):
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p ** 2).evaluate(x) == p.evaluate(x) ** 2


@given(polys())
def test_text_round_trip(p):
    assert MultiPoly.from_text(p.to_text(NAMES), NAMES) == p


def test_text_format():
    x1, x2 = MultiPoly.variable(0, 2), MultiPoly.variable(1, 2)
    p = x1 ** 2 * x2 * Fraction(3, 2) - 4 * x2 + 1
    assert p.to_text(variable_names(2)) == "3/2*x1^2*x2 + -4/1*x2 + 1/1"
    assert MultiPoly.zero(2).to_text(variable_names(2)) == "0/1"


def test_degrevlex_leading_terms():
    x, y, z = (MultiPoly.variable(i, 3) for i in range(3))
    assert (x * z + y ** 2).leading_term()[0] == (0, 2, 0)  # y^2 > xz in degrevlex
    assert (x * y * z + x ** 3).leading_term()[0] == (3, 0, 0)
    assert (x + y ** 2).leading_term()[0] == (0, 2, 0)


@given(polys(), polys())
def test_exact_division(p, q):
    assume(not q.is_zero())
    assert (p * q).exact_div(q) == p


@given(polys(), st.integers(0, NV - 1), fractions, points)
def test_substitute(p, i, v, x):
    y = list(x)
    y[i] = v
    assert p.substitute(i, v).evaluate(y) == p.evaluate(y)


@given(polys())
def test_primitive(p):
    assume(not p.is_zero())
    q = p.primitive()
    assert all(c.denominator == 1 for c in q.terms.values())
    assert q.leading_term()[1] > 0
    ratio = {c / d for c, d in ((q.terms[e], p.terms[e]) for e in p.terms)}
    assert len(ratio) == 1


def test_poly_arith():
    x = MultiPoly.variable(0, 1)
    assert poly_arith("add", x, x) == 2 * x
    assert poly_arith("mul", x, x) == x ** 2
    assert poly_arith("scalar_mul", x, Fraction(1, 2)) == x * Fraction(1, 2)
    with pytest.raises(ValueError):
        poly_arith("pow", x, x)


# --- determinants --------------------------------------------------------------

def _leibniz(m):
    """Determinant by the permutation expansion (independent oracle)."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = sign
        for i in range(n):
            term = term * m[i][perm[i]]
        total = total + term
    return total


@st.composite
def poly_matrices(draw, size=None):
    n = size or draw(st.integers(1, 4))
    return [[draw(polys(max_terms=2, max_deg=1)) for _ in range(n)] for _ in range(n)]


@settings(max_examples=40, deadline=None)
@given(poly_matrices())
def test_det_methods_agree_with_leibniz(m):
    d = _leibniz(m)
    d = d if isinstance(d, MultiPoly) else MultiPoly.constant(d, NV)
    assert det_cofactor(m) == d
    assert _det_bareiss(m) == d
    assert det_poly(m) == d


@settings(max_examples=40, deadline=None)
@given(poly_matrices(), st.data())
def test_det_alternates(m, data):
    n = len(m)
    assume(n >= 2)
    i, j = data.draw(st.sampled_from(list(itertools.combinations(range(n), 2))))
    swapped = [row[:] for row in m]
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert det_poly(swapped) == -det_poly(m)
    repeated = [row[:] for row in m]
    repeated[j] = repeated[i]
    assert det_poly(repeated).is_zero()


@settings(max_examples=30, deadline=None)
@given(poly_matrices(size=3), points)
def test_det_commutes_with_evaluation(m, x):
    numeric = [[p.evaluate(x) for p in row] for row in m]
    assert det_poly(m).evaluate(x) == _leibniz(numeric)


def test_large_det_uses_bareiss():
    x = [MultiPoly.variable(i, 6) for i in range(6)]
    # Vandermonde in six variables: product of differences
    m = [[xi ** k for k in range(6)] for xi in x]
    expected = MultiPoly.constant(1, 6)
    for i, j in itertools.combinations(range(6), 2):
        expected = expected * (x[j] - x[i])
    assert det_poly(m) == expected


# --- univariate: Sturm and square-free -------------------------------------------

distinct_roots = st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=9),
                          min_size=0, max_size=7, unique=True)
positive = st.fractions(min_value=Fraction(1, 9), max_value=50, max_denominator=9)


@settings(max_examples=80, deadline=None)
@given(distinct_roots, st.lists(st.tuples(fractions, positive), max_size=3))
def test_sturm_counts_constructed_factorizations(roots, quadratics):
    # real roots from linear factors; (x - a)^2 + b with b > 0 contributes none
    p = UniPoly.from_roots(roots)
    for a, b in quadratics:
        p = p * UniPoly([a * a + b, -2 * a, 1])
    assume(p.degree >= 1)
    sf = squarefree_part(p)
    assert sturm_count(sf) == len(roots)


@settings(max_examples=60, deadline=None)
@given(distinct_roots.filter(lambda r: len(r) >= 1), st.data())
def test_squarefree_laws(roots, data):
    mult = [data.draw(st.integers(1, 3)) for _ in roots]
    p = UniPoly([1])
    for r, k in zip(roots, mult):
        p = p * UniPoly.from_roots([r] * k)
    sf = squarefree_part(p)
    assert sf.degree == len(roots)
    assert all(sf(r) == 0 for r in roots)
    assert squarefree_part(sf) == sf
    assert squarefree_part(p * 7) == sf
    _, rem = p.divmod(sf)
    assert rem.is_zero()


@settings(max_examples=60, deadline=None)
@given(distinct_roots.filter(lambda r: len(r) >= 1), fractions, fractions)
def test_count_roots_in_interval(roots, lo, hi):
    assume(lo < hi)
    p = UniPoly.from_roots(roots)
    assert count_roots_in(p, lo, hi) == sum(1 for r in roots if lo < r <= hi)


def test_sturm_small_cases():
    assert sturm_count(UniPoly([-2, 0, 1])) == 2
    assert sturm_count(UniPoly([1, 0, 1])) == 0
    assert sturm_count(UniPoly([5])) == 0
    assert sturm_count(UniPoly([0, 1])) == 1
    # x^5 - x - 1 has one real root
    assert sturm_count(UniPoly([-1, -1, 0, 0, 0, 1])) == 1
    # Chebyshev T_7 has 7 real roots
    t = [UniPoly([1]), UniPoly([0, 1])]
    for _ in range(6):
        t.append(UniPoly([0, 2]) * t[-1] - t[-2])
    assert sturm_count(t[7]) == 7
    with pytest.raises(ValueError):
        sturm_count(UniPoly([]))
    with pytest.raises(ValueError):
        squarefree_part(UniPoly([]))


def test_sturm_sequence_ends_in_constant_for_squarefree():
    seq = sturm_sequence(UniPoly.from_roots([1, 2, 3, 4]))
    assert len(seq[-1]) == 1


def test_univariate_arithmetic():
    p = UniPoly.from_roots([1, -2])
    assert p.coeffs == (-2, 1, 1)
    q, r = UniPoly([1, 0, 0, 1]).divmod(UniPoly([1, 1]))
    assert q * UniPoly([1, 1]) + r == UniPoly([1, 0, 0, 1])
    assert UniPoly([Fraction(1, 2), Fraction(3, 4)]).primitive().coeffs == (2, 3)
    assert UniPoly([-1, 0, 1]).to_text("t") == "1/1*t^2 + -1/1"


# --- linear algebra ----------------------------------------------------------------

vectors = st.lists(fractions, min_size=3, max_size=3)


@given(st.lists(vectors, min_size=1, max_size=5))
def test_exact_dependence(vs):
    dep = exact_dependence(vs)
    if dep is None:
        assert rank(vs) == len(vs)
        return
    k, coeffs = dep
    assert coeffs[k] == 1 and len(coeffs) == k + 1
    for j in range(3):
        assert sum(c * v[j] for c, v in zip(coeffs, vs)) == 0
    assert rank(vs[:k]) == k  # the prefix before k is independent


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace(m):
    basis = nullspace(m)
    assert len(basis) + rank(m) == 4
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    assert rank(basis) == len(basis) if basis else True
