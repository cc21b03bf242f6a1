"""
Permutation and necklace combinatorics for Schubert problems on flag manifolds.

Permutations are stored 1-indexed in one-line notation, so ``Permutation.parse("13245")``
is the transposition of 2 and 3 in S_5.  A flag type ``a = (a_1 < ... < a_k)`` in C^n
restricts Schubert conditions to W^a, the permutations whose descents lie in ``a``.

>>> w = Permutation.parse("32514")
>>> length(w)
5
>>> flag_dimension(FlagType((1, 3), 5))
8
"""

from __future__ import annotations

__all__ = [
    "Permutation", "FlagType", "SchubertData", "Necklace", "DescentData",
    "enumerate_Wa", "length", "descent_data", "rank_function", "flag_dimension",
    "validate_schubert_data", "ai_bruhat_covers", "pieri_lambda", "special_condition",
    "pieri_degree", "necklace_canonical", "enumerate_necklaces", "is_monotone",
    "label_key", "format_labels", "parse_labels",
]

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation."""
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if len(images) < 2:
            raise ValueError("permutations must act on at least 2 letters")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"13245"`` (n <= 9) or ``"2,5,3,1,6,7,4,8"``."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(part) for part in text.split(",")))
        if not text.isdigit():
            raise ValueError(f"malformed permutation literal {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def swap_positions(self, b: int, c: int) -> "Permutation":
        """Right multiplication by the transposition of positions b and c."""
        images = list(self.images)
        images[b - 1], images[c - 1] = images[c - 1], images[b - 1]
        return Permutation(tuple(images))

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


@dataclass(frozen=True)
class FlagType:
    """Flags E_{a_1} < ... < E_{a_k} in C^n."""
    a: tuple[int, ...]
    n: int

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        object.__setattr__(self, "a", a)
        if not a:
            raise ValueError("flag type must have at least one step")
        if any(x >= y for x, y in zip(a, a[1:])) or a[0] <= 0 or a[-1] >= self.n:
            raise ValueError(f"need 0 < a_1 < ... < a_k < n, got a={a}, n={self.n}")

    @property
    def k(self) -> int:
        return len(self.a)

    def blocks(self) -> list[tuple[int, int]]:
        """Row blocks (a_{l-1}, a_l] as half-open index pairs, with a_0 = 0."""
        bounds = (0,) + self.a
        return list(zip(bounds, bounds[1:]))

    def __str__(self) -> str:
        return f"Fl({','.join(map(str, self.a))};{self.n})"


@dataclass(frozen=True)
class SchubertData:
    flag_type: FlagType
    conditions: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        for w in self.conditions:
            if w.n != self.flag_type.n:
                raise ValueError(f"condition {w} does not act on {self.flag_type.n} letters")

    @classmethod
    def from_counts(cls, ft: FlagType, counts: Iterable[tuple[Union[str, Permutation], int]]):
        conditions = []
        for w, count in counts:
            if isinstance(w, str):
                w = Permutation.parse(w)
            conditions.extend([w] * int(count))
        return cls(ft, tuple(conditions))

    @property
    def m(self) -> int:
        return len(self.conditions)

    def describe(self) -> str:
        """Compact ``13245^4 12435^4`` description, preserving first-appearance order."""
        counts = Counter(self.conditions)
        seen = dict.fromkeys(self.conditions)
        return " ".join(f"{w}^{counts[w]}" if counts[w] > 1 else str(w) for w in seen)


@dataclass(frozen=True)
class DescentData:
    descents: frozenset[int]
    is_grassmannian: bool
    delta: int | None


def _in_Wa(w: Permutation, ft: FlagType) -> bool:
    allowed = set(ft.a)
    return all(w(i) < w(i + 1) for i in range(1, w.n) if i not in allowed)


def enumerate_Wa(ft: FlagType) -> list[Permutation]:
    """All of W^a in lexicographic order of one-line notation.

    A permutation with descents in ``a`` is the concatenation of the sorted blocks
    w(a_{l-1}+1..a_l), so W^a is enumerated by choosing the blocks in turn.
    """
    sizes = [hi - lo for lo, hi in ft.blocks()] + [ft.n - ft.a[-1]]
    out: list[Permutation] = []

    def extend(prefix: tuple[int, ...], remaining: tuple[int, ...], level: int):
        if level == len(sizes) - 1:
            out.append(Permutation(prefix + remaining))
            return
        for block in itertools.combinations(remaining, sizes[level]):
            rest = tuple(v for v in remaining if v not in block)
            extend(prefix + block, rest, level + 1)

    extend((), tuple(range(1, ft.n + 1)), 0)
    return out


def length(w: Permutation) -> int:
    images = w.images
    return sum(1 for i, j in itertools.combinations(range(w.n), 2) if images[i] > images[j])


def descent_data(w: Permutation) -> DescentData:
    descents = frozenset(i for i in range(1, w.n) if w(i) > w(i + 1))
    grassmannian = len(descents) == 1
    return DescentData(descents, grassmannian, next(iter(descents)) if grassmannian else None)


def rank_function(w: Permutation, i: int, j: int) -> int:
    """r_w(i, j) = #{l <= i : j + w(l) > n}."""
    n = w.n
    return sum(1 for l in range(1, i + 1) if j + w(l) > n)


def flag_dimension(ft: FlagType) -> int:
    return sum((ft.n - hi) * (hi - lo) for lo, hi in ft.blocks())


def validate_schubert_data(sd: SchubertData) -> bool:
    """True iff the lengths of the conditions add up to dim Fl(a;n).

    Raises ValueError if some condition is not in W^a.
    """
    for w in sd.conditions:
        if not _in_Wa(w, sd.flag_type):
            raise ValueError(f"{w} has a descent outside {sd.flag_type.a}; not in W^a")
    return sum(length(w) for w in sd.conditions) == flag_dimension(sd.flag_type)


def ai_bruhat_covers(w: Permutation, a_i: int, ft: FlagType | None = None) -> list[Permutation]:
    """Covers v = w.sigma_{bc} with b <= a_i < c and l(v) = l(w) + 1.

    With ``ft`` given, only covers inside W^a are kept.
    """
    base = length(w)
    covers = []
    for b in range(1, a_i + 1):
        for c in range(a_i + 1, w.n + 1):
            # the length goes up by exactly one iff w(b) < w(c) and no value between
            # them sits in a position strictly between b and c
            lo, hi = w(b), w(c)
            if lo > hi or any(lo < w(p) < hi for p in range(b + 1, c)):
                continue
            v = w.swap_positions(b, c)
            if ft is not None and not _in_Wa(v, ft):
                continue
            covers.append(v)
    assert all(length(v) == base + 1 for v in covers)
    return sorted(covers, key=lambda v: v.images)


def pieri_lambda(w: Permutation, ft: FlagType, i: int, m: int) -> set[Permutation]:
    """The set of v in W^a with w <_{a_i} v, l(v) = l(w) + m and exactly m positions
    beyond a_i where v differs from w.  ``i`` is the 1-based index of the step a_i.

    m = 0 returns {w}.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return {w}
    a_i = ft.a[i - 1]
    level = {w}
    for _ in range(m):
        level = {v for u in level for v in ai_bruhat_covers(u, a_i, ft)}
    return {v for v in level
            if sum(1 for l in range(a_i + 1, w.n + 1) if v(l) != w(l)) == m}


def special_condition(b: int, m: int, n: int) -> Permutation:
    """Grassmannian permutation with descent b for dim(E_b cap F_{n-b+1-m}) >= 1.

    Its length is m; m = 1 gives the simple transposition s_b.
    """
    if not 1 <= m <= n - b:
        raise ValueError(f"codimension {m} out of range for Gr({b},{n})")
    first = list(range(1, b)) + [b + m]
    rest = [v for v in range(1, n + 1) if v not in first]
    return Permutation(tuple(first + rest))


def _special_codimension(w: Permutation) -> tuple[int, int] | None:
    dd = descent_data(w)
    if not dd.is_grassmannian:
        return None
    b = dd.delta
    m = length(w)
    return (b, m) if w == special_condition(b, m, w.n) else None


def pieri_degree(sd: SchubertData) -> int:
    """Number of chains from the identity to the top of W^a built by iterating the
    Pieri Lambda-sets, one condition at a time.

    Every condition must be special (see ``special_condition``); the length of the
    condition is used as the increment m.
    """
    ft = sd.flag_type
    steps = []
    for w in sd.conditions:
        special = _special_codimension(w)
        if special is None or special[0] not in ft.a:
            raise ValueError(f"{w} is not a special Grassmannian condition on {ft}")
        steps.append((ft.a.index(special[0]) + 1, special[1]))
    if sum(m for _, m in steps) != flag_dimension(ft):
        return 0
    counts: dict[Permutation, int] = {Permutation.identity(ft.n): 1}
    for i, m in steps:
        nxt: Counter[Permutation] = Counter()
        for u, c in counts.items():
            for v in pieri_lambda(u, ft, i, m):
                nxt[v] += c
        counts = dict(nxt)
    top = max(enumerate_Wa(ft), key=length)
    return counts.get(top, 0)


# --- necklaces ---------------------------------------------------------------

Label = Union[int, str]


def label_key(label: Label) -> tuple[int, object]:
    """Sort key for necklace labels: opaque (string) labels sort before descents."""
    if isinstance(label, str):
        return (0, label)
    return (1, label)


def format_labels(labels: Sequence[Label]) -> str:
    tokens = [str(x) for x in labels]
    if all(len(t) == 1 for t in tokens):
        return "".join(tokens)
    return ",".join(tokens)


def parse_labels(text: str) -> tuple[Label, ...]:
    tokens = text.split(",") if "," in text else list(text)
    return tuple(int(t) if t.isdigit() else t for t in tokens)


def _variants(labels: tuple[Label, ...]) -> Iterator[tuple[Label, ...]]:
    m = len(labels)
    for seq in (labels, labels[::-1]):
        for r in range(m):
            yield seq[r:] + seq[:r]


@dataclass(frozen=True)
class Necklace:
    """A circular label sequence up to rotation and reflection."""
    labels: tuple[Label, ...]
    canonical: tuple[Label, ...] = field(init=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("a necklace needs at least one label")
        object.__setattr__(self, "labels", labels)
        key = lambda seq: tuple(label_key(x) for x in seq)
        object.__setattr__(self, "canonical", min(_variants(labels), key=key))

    def __eq__(self, other):
        if not isinstance(other, Necklace):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self) -> str:
        return format_labels(self.canonical)

    def sort_key(self):
        return tuple(label_key(x) for x in self.canonical)


def necklace_canonical(labels: Sequence[Label] | str) -> Necklace:
    if isinstance(labels, str):
        labels = parse_labels(labels)
    return Necklace(tuple(labels))


def _multiset_arrangements(counts: dict[Label, int]) -> Iterator[tuple[Label, ...]]:
    items = sorted(counts, key=label_key)
    total = sum(counts.values())
    remaining = dict(counts)
    prefix: list[Label] = []

    def rec():
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for x in items:
            if remaining[x]:
                remaining[x] -= 1
                prefix.append(x)
                yield from rec()
                prefix.pop()
                remaining[x] += 1

    yield from rec()


def enumerate_necklaces(multiset: Mapping[Label, int]) -> list[Necklace]:
    """All bracelets over the multiset, each once, sorted by canonical form.

    Arrangements are generated in lexicographic order and kept only when they are
    their own canonical representative.
    """
    counts = {x: int(c) for x, c in multiset.items() if c}
    if sum(counts.values()) < 1:
        raise ValueError("need at least one label")
    out = []
    for arrangement in _multiset_arrangements(counts):
        nk = Necklace(arrangement)
        if nk.canonical == arrangement:
            out.append(nk)
    return out


def is_monotone(nk: Necklace) -> bool:
    """Whether some rotation, in either orientation, is weakly increasing.

    Necklaces carrying opaque (non-Grassmannian) labels are never monotone.
    """
    if any(isinstance(x, str) for x in nk.canonical):
        return False
    return any(all(x <= y for x, y in zip(seq, seq[1:])) for seq in _variants(nk.canonical))
