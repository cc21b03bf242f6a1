import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from realschubert.combinatorics import (
    FlagType, Necklace, Permutation, SchubertData, ai_bruhat_covers, descent_data,
    enumerate_necklaces, enumerate_Wa, flag_dimension, is_monotone, length, necklace_canonical,
    pieri_degree, pieri_lambda, rank_function, special_condition, validate_schubert_data,
)

P = Permutation.parse


def test_parse_and_format():
    w = P("25316748")
    assert w(1) == 2 and w(8) == 8 and str(w) == "25316748"
    assert P("2,1,3") == P("213")
    assert str(Permutation(tuple(range(10, 0, -1)))) == "10,9,8,7,6,5,4,3,2,1"
    with pytest.raises(ValueError):
        P("1134")
    with pytest.raises(ValueError):
        P("12a")


def test_inverse_and_length():
    w = P("32514")
    assert w.inverse().inverse() == w
    assert length(w) == 5
    assert length(P("21435")) == 2
    assert length(P("142536")) == 3


@st.composite
def permutations(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@given(permutations())
def test_length_counts_inversions_of_inverse(w):
    assert length(w) == length(w.inverse())


@given(permutations())
def test_descents(w):
    dd = descent_data(w)
    assert dd.descents == frozenset(i for i in range(1, w.n) if w(i) > w(i + 1))
    assert dd.is_grassmannian == (len(dd.descents) == 1)


def _random_flag_type(draw, n):
    a = sorted(draw(st.sets(st.integers(1, n - 1), min_size=1)))
    return FlagType(tuple(a), n)


@st.composite
def flag_types(draw, max_n=6):
    return _random_flag_type(draw, draw(st.integers(2, max_n)))


@given(flag_types())
def test_Wa_size_is_multinomial(ft):
    sizes = [hi - lo for lo, hi in ft.blocks()] + [ft.n - ft.a[-1]]
    expected = math.factorial(ft.n)
    for s in sizes:
        expected //= math.factorial(s)
    Wa = enumerate_Wa(ft)
    assert len(Wa) == expected
    assert Wa == sorted(Wa, key=lambda w: w.images)
    assert max(length(w) for w in Wa) == flag_dimension(ft)


def test_flag_dimensions():
    assert flag_dimension(FlagType((2, 3), 5)) == 8
    assert flag_dimension(FlagType((2, 3), 4)) == 5
    assert flag_dimension(FlagType((1, 3, 5), 6)) == 13
    assert flag_dimension(FlagType((2, 4), 6)) == 12
    assert flag_dimension(FlagType((2, 3), 6)) == 11


@given(flag_types(), st.data())
def test_rank_function_monotone(ft, data):
    w = data.draw(st.sampled_from(enumerate_Wa(ft)))
    n = ft.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r = rank_function(w, i, j)
            assert max(0, i + j - n) <= r <= min(i, j)
            if i < n:
                assert r <= rank_function(w, i + 1, j) <= r + 1
            if j < n:
                assert r <= rank_function(w, i, j + 1) <= r + 1


def test_rank_function_identity_is_generic():
    n = 5
    iota = Permutation.identity(n)
    assert all(rank_function(iota, i, j) == max(0, i + j - n)
               for i in range(1, n + 1) for j in range(1, n + 1))


def test_validate_schubert_data():
    ft = FlagType((2, 3), 5)
    assert validate_schubert_data(SchubertData.from_counts(ft, [("13245", 4), ("12435", 4)]))
    assert not validate_schubert_data(SchubertData.from_counts(ft, [("13245", 3)]))
    with pytest.raises(ValueError):
        validate_schubert_data(SchubertData.from_counts(ft, [("21345", 8)]))
    ft = FlagType((1, 3), 5)
    excess = SchubertData.from_counts(ft, [("32514", 1), ("21435", 2)])
    assert not validate_schubert_data(excess)


@given(flag_types(max_n=5), st.data())
def test_covers_raise_length_by_one(ft, data):
    w = data.draw(st.sampled_from(enumerate_Wa(ft)))
    for a_i in ft.a:
        for v in ai_bruhat_covers(w, a_i, ft):
            assert length(v) == length(w) + 1
            diff = [p for p in range(1, w.n + 1) if v(p) != w(p)]
            assert len(diff) == 2 and diff[0] <= a_i < diff[1]


def test_covers_brute_force():
    # oracle: all transpositions across a_i that raise the length by exactly one
    ft = FlagType((2, 3), 5)
    for w in enumerate_Wa(ft):
        for a_i in ft.a:
            brute = sorted((w.swap_positions(b, c) for b in range(1, a_i + 1)
                            for c in range(a_i + 1, 6)
                            if length(w.swap_positions(b, c)) == length(w) + 1
                            and w.swap_positions(b, c) in set(enumerate_Wa(ft))),
                           key=lambda v: v.images)
            assert ai_bruhat_covers(w, a_i, ft) == brute


def test_pieri_lambda_zero_and_one():
    ft = FlagType((2, 3), 5)
    w = Permutation.identity(5)
    assert pieri_lambda(w, ft, 1, 0) == {w}
    assert pieri_lambda(w, ft, 1, 1) == {P("13245")}
    assert pieri_lambda(w, ft, 2, 1) == {P("12435")}


def test_special_condition():
    assert special_condition(2, 1, 5) == P("13245")
    assert special_condition(3, 1, 5) == P("12435")
    assert special_condition(2, 2, 6) == P("142356")
    assert special_condition(3, 2, 6) == P("125346")
    for b, m, n in [(2, 3, 6), (1, 4, 5)]:
        w = special_condition(b, m, n)
        assert length(w) == m and descent_data(w).delta == b


@pytest.mark.parametrize("a, n, counts, degree", [
    ((2, 3), 5, [("13245", 4), ("12435", 4)], 12),
    ((2, 3), 4, [("1324", 3), ("1243", 2)], 2),
    ((2, 3), 6, [("132456", 5), ("125346", 3)], 14),
    ((2,), 5, [("13245", 6)], 5),             # lines in P^4 meeting six 2-planes
    ((2,), 4, [("1324", 4)], 2),              # lines in P^3 meeting four lines
    # full flags in C^3, by Monk's rule: s1 s2 s2 = 1, s1 s1 s2 = 1, s1^3 = 0
    ((1, 2), 3, [("213", 1), ("132", 2)], 1),
    ((1, 2), 3, [("213", 2), ("132", 1)], 1),
    ((1, 2), 3, [("213", 3)], 0),
])
def test_pieri_degree(a, n, counts, degree):
    assert pieri_degree(SchubertData.from_counts(FlagType(a, n), counts)) == degree


def test_pieri_degree_rejects_nonspecial():
    ft = FlagType((1, 3, 5), 6)
    with pytest.raises(ValueError):
        pieri_degree(SchubertData.from_counts(ft, [("312564", 2), ("124356", 5)]))


# --- necklaces ---------------------------------------------------------------

def _burnside_bracelets(counts: dict) -> int:
    """Independent count: orbits of the dihedral group on arrangements, by brute force."""
    labels = [x for x, c in counts.items() for _ in range(c)]
    seen, orbits = set(), 0
    for arr in set(itertools.permutations(labels)):
        if arr in seen:
            continue
        orbits += 1
        m = len(arr)
        for seq in (arr, arr[::-1]):
            for r in range(m):
                seen.add(seq[r:] + seq[:r])
    return orbits


@pytest.mark.parametrize("counts, expected", [
    ({2: 4, 3: 4}, 8),
    ({2: 5, 3: 3}, 5),
    ({"A": 2, 3: 5}, 3),
    ({2: 3, 3: 2}, 2),
])
def test_bracelet_counts(counts, expected):
    nks = enumerate_necklaces(counts)
    assert len(nks) == expected == _burnside_bracelets(counts)
    assert len(set(nks)) == len(nks)


@settings(max_examples=60)
@given(st.dictionaries(st.sampled_from([1, 2, 3, "A"]), st.integers(0, 3), min_size=1)
       .filter(lambda d: 1 <= sum(d.values()) <= 8))
def test_bracelet_count_matches_brute_force(counts):
    assert len(enumerate_necklaces(counts)) == _burnside_bracelets(
        {k: v for k, v in counts.items() if v})


@given(st.lists(st.sampled_from([2, 3, "A"]), min_size=1, max_size=9), st.integers(0, 20),
       st.booleans())
def test_canonical_invariant_under_dihedral_action(labels, shift, flip):
    labels = tuple(labels)
    r = shift % len(labels)
    moved = labels[r:] + labels[:r]
    if flip:
        moved = moved[::-1]
    a, b = Necklace(labels), Necklace(moved)
    assert a == b and hash(a) == hash(b) and a.canonical == b.canonical
    # the canonical form is a fixed point and is itself in the orbit
    assert Necklace(a.canonical).canonical == a.canonical
    assert Counter(a.canonical) == Counter(labels)


def test_canonical_strings():
    assert str(necklace_canonical("33332222")) == "22223333"
    assert str(necklace_canonical("32323232")) == "23232323"
    # the same bracelet written two ways
    assert necklace_canonical("22332323") == necklace_canonical("22323233")
    assert [str(nk) for nk in enumerate_necklaces({"A": 2, 3: 5})] == [
        "AA33333", "A3A3333", "A33A333"]
    assert {necklace_canonical(s) for s in ["A33A333", "A3A3333", "AA33333"]} == \
        set(enumerate_necklaces({"A": 2, 3: 5}))


def test_table_one_necklaces_all_present():
    rows = ["22223333", "22322333", "22233233", "22332233", "22323323", "22332323",
            "22232333", "23232323"]
    assert {necklace_canonical(r) for r in rows} == set(enumerate_necklaces({2: 4, 3: 4}))


def test_monotone():
    assert is_monotone(necklace_canonical("22223333"))
    assert is_monotone(necklace_canonical("33222233"))
    assert not is_monotone(necklace_canonical("23232323"))
    monotone = [nk for nk in enumerate_necklaces({2: 4, 3: 4}) if is_monotone(nk)]
    assert [str(nk) for nk in monotone] == ["22223333"]
    assert not any(is_monotone(nk) for nk in enumerate_necklaces({"A": 2, 3: 5}))
    assert is_monotone(necklace_canonical("123"))
    assert not is_monotone(necklace_canonical("1324"))
