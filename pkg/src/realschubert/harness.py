"""
Monte Carlo experiments over necklaces of a Schubert problem.

Each round samples a fresh set of real points, then solves one instance per
necklace: the conditions are placed on the sorted points in the order given by
the necklace's canonical label string.  Real-solution counts are tallied into a
FrequencyTable which is checkpointed after every round.
"""

from __future__ import annotations

__all__ = [
    "ExperimentConfig", "FrequencyTable", "sample_points", "assign_by_necklace",
    "run_experiment", "report", "round_rng", "load_checkpoint", "sidecar_path",
    "problem_necklaces", "run_round", "RoundOutcome", "save_checkpoint",
    "DEFAULT_SAMPLING_RANGE",
]

import csv
import io
import json
import logging
import os
import random
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .combinatorics import (
    FlagType, Necklace, SchubertData, enumerate_necklaces, flag_dimension, is_monotone,
    necklace_canonical, pieri_degree, validate_schubert_data,
)
from .schubert import Instance, build_instance, condition_labels
from .solver import Status, solve_instance

log = logging.getLogger(__name__)

DEFAULT_SAMPLING_RANGE = 2 ** 16
CHECKPOINT_VERSION = 1


# --- configuration -------------------------------------------------------------

@dataclass
class ExperimentConfig:
    flag_type: FlagType
    schubert_data: SchubertData
    expected_degree: int
    iterations: int
    seed: int = 0
    point_pool_size: int | None = None
    sampling_range: int = DEFAULT_SAMPLING_RANGE
    output_path: str | None = None
    worker_count: int = 1
    budget: int | None = None

    def __post_init__(self):
        if self.schubert_data.flag_type != self.flag_type:
            raise ValueError("schubert_data lives on a different flag type")
        if not validate_schubert_data(self.schubert_data):
            raise ValueError(f"{self.schubert_data.describe()} is not Schubert data on "
                             f"{self.flag_type}: lengths do not sum to {flag_dimension(self.flag_type)}")
        if self.expected_degree < 1:
            raise ValueError("expected_degree must be positive")
        try:
            chains = pieri_degree(self.schubert_data)
        except ValueError:
            chains = None
        if chains is not None and chains != self.expected_degree:
            raise ValueError(f"expected_degree {self.expected_degree} disagrees with the "
                             f"Pieri chain count {chains}")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if self.point_pool_size is None:
            self.point_pool_size = self.schubert_data.m
        if self.point_pool_size < self.schubert_data.m:
            raise ValueError(f"point_pool_size must be at least {self.schubert_data.m}")
        if self.sampling_range < 1 or 2 * self.sampling_range < self.point_pool_size:
            raise ValueError(f"sampling range [-{self.sampling_range}, {self.sampling_range}] "
                             f"has fewer than {self.point_pool_size} nonzero integers")
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        if not -2 ** 63 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {"flag_type", "schubert_data", "expected_degree", "iterations", "seed",
                 "point_pool_size", "sampling_range", "output_path", "worker_count", "budget"}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config fields: {', '.join(sorted(unknown))}")
        try:
            ft_doc = doc["flag_type"]
            ft = FlagType(tuple(ft_doc["a"]), int(ft_doc["n"]))
            sd = SchubertData.from_counts(
                ft, [(entry["permutation"], entry["count"]) for entry in doc["schubert_data"]])
            return cls(
                flag_type=ft,
                schubert_data=sd,
                expected_degree=int(doc["expected_degree"]),
                iterations=int(doc["iterations"]),
                seed=int(doc.get("seed", 0)),
                point_pool_size=doc.get("point_pool_size"),
                sampling_range=int(doc.get("sampling_range", DEFAULT_SAMPLING_RANGE)),
                output_path=doc.get("output_path"),
                worker_count=int(doc.get("worker_count", 1)),
                budget=doc.get("budget"),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed config: {exc!r}") from exc

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        counts = Counter(self.schubert_data.conditions)
        return {
            "flag_type": {"a": list(self.flag_type.a), "n": self.flag_type.n},
            "schubert_data": [{"permutation": str(w), "count": c} for w, c in counts.items()],
            "expected_degree": self.expected_degree,
            "iterations": self.iterations,
            "seed": self.seed,
            "point_pool_size": self.point_pool_size,
            "sampling_range": self.sampling_range,
            "output_path": self.output_path,
            "worker_count": self.worker_count,
            "budget": self.budget,
        }

    def identity(self) -> dict:
        """Fields that determine the per-round results (a resumed run must match them)."""
        doc = self.to_dict()
        for key in ("iterations", "output_path", "worker_count"):
            del doc[key]
        return doc

    def problem_title(self) -> str:
        return f"{self.schubert_data.describe()} = {self.expected_degree} on {self.flag_type}"


# --- sampling and assignment ---------------------------------------------------

def round_rng(seed: int, round_index: int) -> random.Random:
    """Generator for one round, derived from (seed, round) alone so rounds can run anywhere."""
    return random.Random(f"realschubert:{seed}:{round_index}")


def sample_points(count: int, rng: random.Random,
                  sampling_range: int = DEFAULT_SAMPLING_RANGE) -> list[Fraction]:
    """``count`` distinct nonzero integers drawn uniformly from [-B, B], sorted."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if count > 2 * sampling_range:
        raise ValueError(f"cannot draw {count} distinct points from 2*{sampling_range} values")
    chosen: set[int] = set()
    while len(chosen) < count:
        x = rng.randint(-sampling_range, sampling_range)
        if x:
            chosen.add(x)
    return sorted(Fraction(x) for x in chosen)


def assign_by_necklace(nk: Necklace, sd: SchubertData, points: Sequence,
                       **build_options) -> Instance:
    """Instance with the condition carrying the i-th canonical label at the i-th smallest point."""
    points = sorted(Fraction(p) for p in points)
    if len(points) != sd.m:
        raise ValueError(f"need {sd.m} points, got {len(points)}")
    labels = condition_labels(sd.conditions)
    if Counter(labels) != Counter(nk.canonical):
        raise ValueError(f"necklace {nk} does not match the labels of {sd.describe()}")
    by_label = {label: w for label, w in zip(labels, sd.conditions)}
    ordered = SchubertData(sd.flag_type, tuple(by_label[label] for label in nk.canonical))
    return build_instance(ordered, points, **build_options)


# --- frequency table -----------------------------------------------------------

@dataclass
class FrequencyTable:
    title: str
    degree: int
    necklaces: list[str]
    monotone: list[str]
    counts: dict[str, Counter] = field(default_factory=dict)
    set_aside: dict[str, Counter] = field(default_factory=dict)
    rounds: int = 0
    violations: list[dict] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        for nk in self.necklaces:
            self.counts.setdefault(nk, Counter())
            self.set_aside.setdefault(nk, Counter())

    @classmethod
    def empty(cls, cfg: ExperimentConfig) -> "FrequencyTable":
        nks = problem_necklaces(cfg.schubert_data)
        return cls(cfg.problem_title(), cfg.expected_degree, [str(nk) for nk in nks],
                   [str(nk) for nk in nks if is_monotone(nk)], config=cfg.to_dict())

    @property
    def columns(self) -> list[int]:
        return list(range(self.degree % 2, self.degree + 1, 2))

    @property
    def total_instances(self) -> int:
        return sum(sum(c.values()) for c in self.counts.values()) + \
            sum(sum(c.values()) for c in self.set_aside.values())

    def row_order(self) -> list[str]:
        mono = set(self.monotone)
        return sorted(self.necklaces,
                      key=lambda s: (s not in mono, necklace_canonical(s).sort_key()))

    def record(self, necklace: str, status: str, real_count: int | None, round_index: int,
               points: Sequence | None = None):
        if status == Status.SOLVED.value:
            self.counts[necklace][real_count] += 1
            if necklace in self.monotone and real_count < self.degree:
                violation = {"round": round_index, "necklace": necklace,
                             "real_count": real_count,
                             "points": [str(p) for p in points or ()]}
                self.violations.append(violation)
                log.error("MONOTONE VIOLATION: necklace %s had %d < %d real solutions "
                          "(round %d, points %s)", necklace, real_count, self.degree,
                          round_index, violation["points"])
        else:
            self.set_aside[necklace][status] += 1

    def check_conservation(self) -> bool:
        return all(sum(self.counts[nk].values()) + sum(self.set_aside[nk].values()) == self.rounds
                   for nk in self.necklaces)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "degree": self.degree,
            "necklaces": self.necklaces,
            "monotone": self.monotone,
            "counts": {nk: {str(k): v for k, v in sorted(c.items())} for nk, c in self.counts.items()},
            "set_aside": {nk: dict(sorted(c.items())) for nk, c in self.set_aside.items()},
            "rounds": self.rounds,
            "violations": self.violations,
            "config": self.config,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FrequencyTable":
        return cls(
            title=doc["title"], degree=int(doc["degree"]), necklaces=list(doc["necklaces"]),
            monotone=list(doc["monotone"]),
            counts={nk: Counter({int(k): v for k, v in c.items()}) for nk, c in doc["counts"].items()},
            set_aside={nk: Counter(c) for nk, c in doc["set_aside"].items()},
            rounds=int(doc["rounds"]), violations=list(doc.get("violations", [])),
            config=dict(doc.get("config", {})),
        )


def problem_necklaces(sd: SchubertData) -> list[Necklace]:
    return enumerate_necklaces(Counter(condition_labels(sd.conditions)))


def report(table: FrequencyTable, fmt: str = "csv") -> str:
    """Render as CSV or as an aligned text table; monotone rows come first."""
    if fmt not in ("csv", "text"):
        raise ValueError(f"unknown report format {fmt!r}")
    cols = table.columns
    rows = [[nk] + [table.counts[nk][c] for c in cols] + [sum(table.set_aside[nk].values())]
            for nk in table.row_order() if table.rounds]
    header = ["necklace"] + [str(c) for c in cols] + ["set_aside"]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    cells = [header] + [[str(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    fmt_row = lambda r: "  ".join(r[0].ljust(widths[0]) if i == 0 else r[i].rjust(widths[i])
                                  for i in range(len(r)))
    lines = [f"{table.title}", "real solutions per necklace",
             fmt_row(cells[0]), "-" * (sum(widths) + 2 * (len(widths) - 1))]
    lines += [fmt_row(r) for r in cells[1:]]
    lines.append(f"rounds: {table.rounds}   instances: {table.total_instances}")
    if table.violations:
        lines.append(f"MONOTONE VIOLATIONS: {len(table.violations)}")
    return "\n".join(lines) + "\n"


# --- persistence -----------------------------------------------------------------

def sidecar_path(output_path: str | os.PathLike) -> Path:
    p = Path(output_path)
    return p.with_name(p.name + ".state.json")


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_checkpoint(cfg: ExperimentConfig, table: FrequencyTable):
    state = {"version": CHECKPOINT_VERSION, "identity": cfg.identity(),
             "rounds_completed": table.rounds, "table": table.to_dict()}
    # sidecar first: a crash between the two writes leaves a CSV one round behind,
    # never a CSV ahead of the resumable state
    _atomic_write(sidecar_path(cfg.output_path), json.dumps(state, indent=1, sort_keys=True))
    _atomic_write(Path(cfg.output_path), report(table, "csv"))


def load_checkpoint(path: str | os.PathLike) -> tuple[dict, FrequencyTable]:
    """Read a checkpoint given its CSV path or its sidecar path."""
    p = Path(path)
    side = p if p.name.endswith(".state.json") else sidecar_path(p)
    with open(side) as fh:
        state = json.load(fh)
    if state.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {state.get('version')!r}")
    return state, FrequencyTable.from_dict(state["table"])


# --- rounds ------------------------------------------------------------------------

@dataclass(frozen=True)
class RoundOutcome:
    index: int
    points: tuple[Fraction, ...]
    results: tuple[tuple[str, str, int | None], ...]  # (necklace, status, real count)


def run_round(cfg: ExperimentConfig, index: int,
              necklaces: Sequence[Necklace] | None = None) -> RoundOutcome:
    rng = round_rng(cfg.seed, index)
    pool = sample_points(cfg.point_pool_size, rng, cfg.sampling_range)
    points = sorted(rng.sample(pool, cfg.schubert_data.m))
    form_seed = rng.getrandbits(32)
    necklaces = necklaces if necklaces is not None else problem_necklaces(cfg.schubert_data)
    results = []
    for nk in necklaces:
        inst = assign_by_necklace(nk, cfg.schubert_data, points)
        res = solve_instance(inst, cfg.expected_degree, seed=form_seed, budget=cfg.budget)
        results.append((str(nk), res.status.value, res.real_count))
    return RoundOutcome(index, tuple(points), tuple(results))


def _round_worker(args) -> RoundOutcome:
    doc, index = args
    return run_round(ExperimentConfig.from_dict(doc), index)


def run_experiment(cfg: ExperimentConfig, *, resume: bool = True,
                   on_round: Callable[[RoundOutcome, FrequencyTable], None] | None = None,
                   stop_after: int | None = None) -> FrequencyTable:
    """Run (or continue) the experiment described by ``cfg``.

    With an ``output_path`` the table is checkpointed after every round and an
    existing checkpoint for the same problem and seed is resumed.  ``stop_after``
    ends the run after that many new rounds (used to simulate interruption).
    """
    table = FrequencyTable.empty(cfg)
    if cfg.output_path and resume and sidecar_path(cfg.output_path).exists():
        state, saved = load_checkpoint(cfg.output_path)
        if state["identity"] != cfg.identity():
            raise ValueError(f"checkpoint at {cfg.output_path} belongs to a different experiment")
        table = saved
        table.config = cfg.to_dict()
        log.info("resuming after %d rounds", table.rounds)
    start = table.rounds
    end = cfg.iterations if stop_after is None else min(cfg.iterations, start + stop_after)
    indices = range(start, end)

    def merge(outcome: RoundOutcome):
        assert outcome.index == table.rounds, "rounds must merge in order"
        for nk, status, real in outcome.results:
            table.record(nk, status, real, outcome.index, outcome.points)
        table.rounds += 1
        if cfg.output_path:
            save_checkpoint(cfg, table)
        if on_round is not None:
            on_round(outcome, table)

    if cfg.worker_count == 1 or len(indices) <= 1:
        necklaces = problem_necklaces(cfg.schubert_data)
        for index in indices:
            merge(run_round(cfg, index, necklaces))
    else:
        doc = cfg.to_dict()
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            # map yields in submission order, which fixes the merge order
            for outcome in pool.map(_round_worker, [(doc, i) for i in indices]):
                merge(outcome)
    if cfg.output_path and not indices:
        save_checkpoint(cfg, table)
    return table
