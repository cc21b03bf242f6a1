"""Named Schubert problems used by the CLI and the verification scenarios."""

from __future__ import annotations

__all__ = ["Problem", "CATALOG", "get_problem"]

from dataclasses import dataclass

from .combinatorics import FlagType, SchubertData


@dataclass(frozen=True)
class Problem:
    name: str
    flag_type: FlagType
    counts: tuple[tuple[str, int], ...]
    degree: int | None  # None for overdetermined systems
    summary: str

    @property
    def schubert_data(self) -> SchubertData:
        return SchubertData.from_counts(self.flag_type, self.counts)

    def config_dict(self, iterations: int = 1, **overrides) -> dict:
        if self.degree is None:
            raise ValueError(f"{self.name} is not a square Schubert problem")
        doc = {
            "flag_type": {"a": list(self.flag_type.a), "n": self.flag_type.n},
            "schubert_data": [{"permutation": w, "count": c} for w, c in self.counts],
            "expected_degree": self.degree,
            "iterations": iterations,
        }
        doc.update(overrides)
        return doc


CATALOG: dict[str, Problem] = {p.name: p for p in [
    Problem("monotone-12", FlagType((2, 3), 5), (("13245", 4), ("12435", 4)), 12,
            "eight codimension-one conditions; all 12 solutions real for monotone necklaces"),
    Problem("lines-in-planes", FlagType((2, 3), 4), (("1324", 3), ("1243", 2)), 2,
            "line-in-plane flags in 3-space; real when the two condition groups are separated"),
    Problem("lower-bound-14", FlagType((2, 3), 6), (("132456", 5), ("125346", 3)), 14,
            "degree 14 problem with an apparent lower bound on real solutions"),
    Problem("gaps-10", FlagType((1, 3, 5), 6), (("312564", 2), ("124356", 5)), 10,
            "degree 10 problem whose real counts avoid 0, 4 and 8"),
    Problem("always-real-6", FlagType((2, 4), 6), (("142536", 4),), 6,
            "four identical non-Grassmannian conditions; always 6 real solutions"),
    Problem("excess-nonempty", FlagType((1, 3), 5), (("32514", 1), ("21435", 2)), None,
            "codimension 9 on an 8-dimensional manifold, yet nonempty for osculating flags"),
]}


def get_problem(name: str) -> Problem:
    try:
        return CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown problem {name!r}; known: {', '.join(CATALOG)}") from None
