"""
Reproducible verification scenarios: each draws seeded random instances of a
catalogued problem, solves them and checks the predicted outcome exactly.

The ``verify`` CLI subcommand runs them at small scale; the test suite runs
them at full scale.
"""

from __future__ import annotations

__all__ = [
    "ScenarioOutcome", "InstanceRecord", "witness_matrix",
    "monotone_all_real", "separated_groups_all_real", "interleaved_groups_search",
    "alternating_below_degree", "always_real", "excess_never_empty", "witness_membership",
    "degree_crosscheck", "gap_counts", "solver_degree", "SCENARIOS",
]

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .combinatorics import Permutation, SchubertData, necklace_canonical, pieri_degree
from .harness import ExperimentConfig, run_experiment, run_round, sample_points
from .problems import get_problem
from .schubert import build_instance, condition_labels, membership_check
from .solver import solve_instance
from .univariate import squarefree_part

SMALL_RANGE = 1000


@dataclass
class InstanceRecord:
    points: tuple[Fraction, ...]
    order: str
    status: str
    quotient_dimension: object
    eliminant_degree: int | None
    squarefree: bool
    real_count: int | None


@dataclass
class ScenarioOutcome:
    name: str
    passed: bool
    summary: str
    records: list[InstanceRecord] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.summary}"


def _solve_ordered(sd: SchubertData, points, expected: int | None, seed: int,
                   check_dimension: bool = True) -> InstanceRecord:
    """Solve with the i-th condition of ``sd`` at the i-th point."""
    inst = build_instance(sd, points, check_dimension=check_dimension)
    res = solve_instance(inst, expected, seed=seed)
    squarefree = (res.eliminant is not None
                  and squarefree_part(res.eliminant).degree == res.eliminant.degree)
    return InstanceRecord(tuple(inst.points), "".join(map(str, inst.labels_in_point_order())),
                          res.status.value, res.quotient_dimension, res.eliminant_degree,
                          squarefree, res.real_count)


def _arrange(labels_order: str, problem) -> SchubertData:
    """Conditions ordered to match a label string such as '22233'."""
    sd = problem.schubert_data
    by_label = {str(label): w for label, w in zip(condition_labels(sd.conditions), sd.conditions)}
    return SchubertData(sd.flag_type, tuple(by_label[ch] for ch in labels_order))


def monotone_all_real(instances: int = 100, seed: int = 1, sampling_range: int = SMALL_RANGE):
    """Monotone necklace 22223333 of the degree-12 problem: always 12 real solutions."""
    problem = get_problem("monotone-12")
    rng = random.Random(f"monotone:{seed}")
    sd = _arrange("22223333", problem)
    records = []
    for i in range(instances):
        pts = sample_points(8, rng, sampling_range)
        records.append(_solve_ordered(sd, pts, 12, seed=i))
    bad = [r for r in records if not (r.status == "Solved" and r.quotient_dimension == 12
                                      and r.eliminant_degree == 12 and r.squarefree
                                      and r.real_count == 12)]
    return ScenarioOutcome("monotone 13245^4 12435^4 all real", not bad and len(records) >= instances,
                           f"{len(records) - len(bad)}/{len(records)} instances Solved with 12 of 12 real",
                           records)


def _cyclic_orders(rng: random.Random, base: str) -> str:
    """A random rotation or reflection of ``base``."""
    r = rng.randrange(len(base))
    s = base[r:] + base[:r]
    return s[::-1] if rng.random() < 0.5 else s


def separated_groups_all_real(instances: int = 100, seed: int = 2,
                              sampling_range: int = SMALL_RANGE):
    """1324 at s,t,u and 1243 at v,w in disjoint arcs of the circle: 2 real solutions."""
    problem = get_problem("lines-in-planes")
    rng = random.Random(f"separated:{seed}")
    records = []
    for i in range(instances):
        order = _cyclic_orders(rng, "22233")
        pts = sample_points(5, rng, sampling_range)
        records.append(_solve_ordered(_arrange(order, problem), pts, 2, seed=i))
    bad = [r for r in records if not (r.status == "Solved" and r.real_count == 2)]
    return ScenarioOutcome("separated groups on Fl(2,3;4) all real", not bad,
                           f"{len(records) - len(bad)}/{len(records)} instances with 2 real", records)


def interleaved_groups_search(max_configs: int = 500, seed: int = 3,
                              sampling_range: int = SMALL_RANGE):
    """Search interleaved placements for an instance with no real solutions."""
    problem = get_problem("lines-in-planes")
    rng = random.Random(f"interleaved:{seed}")
    records = []
    for i in range(max_configs):
        order = _cyclic_orders(rng, "22323")
        pts = sample_points(5, rng, sampling_range)
        rec = _solve_ordered(_arrange(order, problem), pts, 2, seed=i)
        assert necklace_canonical(rec.order) == necklace_canonical("22323")
        records.append(rec)
        if rec.status == "Solved" and rec.real_count == 0:
            break
    found = bool(records) and records[-1].status == "Solved" and records[-1].real_count == 0
    summary = (f"0 real solutions at configuration {len(records)} (points "
               f"{', '.join(map(str, records[-1].points))})" if found
               else f"no instance without real solutions among {len(records)}")
    return ScenarioOutcome("interleaved groups on Fl(2,3;4) can be non-real", found, summary, records)


def alternating_below_degree(max_rounds: int = 200, seed: int = 4,
                             sampling_range: int = SMALL_RANGE):
    """Harness rounds on necklace 23232323 until some instance has fewer than 12 real."""
    problem = get_problem("monotone-12")
    cfg = ExperimentConfig.from_dict(problem.config_dict(
        iterations=max_rounds, seed=seed, sampling_range=sampling_range))
    nk = necklace_canonical("23232323")
    rounds = 0
    hit = None
    for r in range(max_rounds):
        outcome = run_round(cfg, r, [nk])
        rounds += 1
        _, status, real = outcome.results[0]
        if status == "Solved" and real < 12:
            hit = (r, real, outcome.points)
            break
    summary = (f"round {hit[0]}: {hit[1]} of 12 real" if hit
               else f"every Solved instance had 12 real in {rounds} rounds")
    return ScenarioOutcome("alternating necklace 23232323 drops below 12", hit is not None,
                           summary, extra={"rounds": rounds, "hit": hit})


def always_real(instances: int = 50, seed: int = 5, sampling_range: int = SMALL_RANGE):
    """142536^4 on Fl(2,4;6): transverse with 6 real solutions for distinct points."""
    problem = get_problem("always-real-6")
    rng = random.Random(f"always-real:{seed}")
    sd = problem.schubert_data
    records = [_solve_ordered(sd, sample_points(4, rng, sampling_range), 6, seed=i)
               for i in range(instances)]
    bad = [r for r in records if not (r.status == "Solved" and r.quotient_dimension == 6
                                      and r.real_count == 6)]
    return ScenarioOutcome("142536^4 always 6 real", not bad,
                           f"{len(records) - len(bad)}/{len(records)} instances Solved, D=6, 6 real",
                           records)


def excess_never_empty(triples: int = 20, seed: int = 6, sampling_range: int = SMALL_RANGE):
    """(32514, 21435, 21435) on Fl(1,3;5) at distinct points is never inconsistent."""
    problem = get_problem("excess-nonempty")
    rng = random.Random(f"excess:{seed}")
    sd = problem.schubert_data
    records = []
    for i in range(triples):
        pts = sample_points(3, rng, sampling_range)
        rng.shuffle(pts)
        records.append(_solve_ordered(sd, pts, None, seed=i, check_dimension=False))
    bad = [r for r in records if r.status == "Inconsistent"]
    return ScenarioOutcome("excess problem on Fl(1,3;5) nonempty", not bad,
                           f"{len(records) - len(bad)}/{len(records)} triples consistent "
                           f"(statuses: {sorted({r.status for r in records})})", records)


def witness_matrix(s, t) -> list[list[Fraction]]:
    """A flag in X_32514(0) cap X_21435(1/s) cap X_21435(1/t), for nonzero s != t.

    Writing the curve as (1, s, ..., s^4) exchanges s with 1/s relative to
    (t^4, ..., 1), so this matrix witnesses the excess intersection at u = 0.
    """
    s, t = Fraction(s), Fraction(t)
    return [[0, 0, 1, Fraction(3, 2) * (s + t), 6 * s * t],
            [0, 1, 0, -3 * s * t, 0],
            [0, 0, 0, 0, 1]]


def witness_membership(pairs: int = 10, seed: int = 7, sampling_range: int = SMALL_RANGE):
    problem = get_problem("excess-nonempty")
    ft = problem.flag_type
    big, small = Permutation.parse("32514"), Permutation.parse("21435")
    rng = random.Random(f"witness:{seed}")
    checked = []
    for _ in range(pairs):
        while True:
            s = Fraction(rng.randint(-sampling_range, sampling_range), rng.randint(1, sampling_range))
            t = Fraction(rng.randint(-sampling_range, sampling_range), rng.randint(1, sampling_range))
            if s and t and s != t:
                break
        m = witness_matrix(s, t)
        ok = (membership_check(m, big, ft, 0) and membership_check(m, small, ft, 1 / s)
              and membership_check(m, small, ft, 1 / t))
        checked.append(((s, t), ok))
    good = sum(ok for _, ok in checked)
    return ScenarioOutcome("explicit witness lies in the excess intersection", good == len(checked),
                           f"{good}/{len(checked)} (s,t) pairs verified", extra={"pairs": checked})


def solver_degree(name: str, seed: int = 0, sampling_range: int = 16) -> tuple[object, str]:
    """Quotient dimension of one random instance of a catalogued problem, with its status."""
    problem = get_problem(name)
    sd = problem.schubert_data
    rng = random.Random(f"degree:{name}:{seed}")
    pts = sample_points(sd.m, rng, sampling_range)
    inst = build_instance(sd, pts, check_dimension=problem.degree is not None)
    res = solve_instance(inst, problem.degree, seed=seed)
    return res.quotient_dimension, res.status.value


def degree_crosscheck(names=("monotone-12", "lines-in-planes", "lower-bound-14", "gaps-10"),
                      seed: int = 0):
    """Solver quotient dimensions against the stated degrees and the Pieri chain counts."""
    rows = {}
    ok = True
    for name in names:
        problem = get_problem(name)
        qd, status = solver_degree(name, seed)
        try:
            chains = pieri_degree(problem.schubert_data)
        except ValueError:
            chains = None
        rows[name] = {"stated": problem.degree, "solver": qd, "status": status, "pieri": chains}
        ok &= qd == problem.degree and (chains is None or chains == qd)
    summary = "; ".join(f"{n}: solver {r['solver']}, pieri {r['pieri']}, stated {r['stated']}"
                        for n, r in rows.items())
    return ScenarioOutcome("degrees agree", ok, summary, extra=rows)


def gap_counts(rounds: int = 100, seed: int = 8, sampling_range: int = SMALL_RANGE):
    """Harness rounds of 312564^2 124356^5: Solved real counts lie in {2, 6, 10}."""
    problem = get_problem("gaps-10")
    cfg = ExperimentConfig.from_dict(problem.config_dict(
        iterations=rounds, seed=seed, sampling_range=sampling_range))
    table = run_experiment(cfg)
    seen = sorted({k for c in table.counts.values() for k, v in c.items() if v})
    set_aside = sum(sum(c.values()) for c in table.set_aside.values())
    ok = set(seen) <= {2, 6, 10}
    return ScenarioOutcome("gaps in real counts for 312564^2 124356^5", ok,
                           f"observed real counts {seen} over {table.rounds} rounds "
                           f"({set_aside} set aside)", extra={"table": table})


SCENARIOS: dict[str, tuple[Callable[..., ScenarioOutcome], dict]] = {
    # name: (function, small-scale keyword arguments for `verify`)
    "monotone": (monotone_all_real, {"instances": 5}),
    "separated": (separated_groups_all_real, {"instances": 20}),
    "interleaved": (interleaved_groups_search, {"max_configs": 500}),
    "alternating": (alternating_below_degree, {"max_rounds": 200}),
    "always-real": (always_real, {"instances": 10}),
    "excess": (excess_never_empty, {"triples": 5}),
    "witness": (witness_membership, {"pairs": 10}),
    "degrees": (degree_crosscheck, {"names": ("monotone-12", "lines-in-planes", "gaps-10")}),
    "gaps": (gap_counts, {"rounds": 5}),
}
