"""Command-line interface: enumerate, degree, run, verify, report."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import scenarios
from .combinatorics import (
    FlagType, SchubertData, descent_data, enumerate_Wa, flag_dimension, is_monotone, length,
    pieri_degree, validate_schubert_data,
)
from .harness import (
    DEFAULT_SAMPLING_RANGE, ExperimentConfig, load_checkpoint, problem_necklaces, report,
    run_experiment, round_rng, sample_points,
)
from .problems import CATALOG, get_problem
from .schubert import build_instance
from .solver import solve_instance


class UsageError(Exception):
    pass


def _parse_flag_type(text: str) -> FlagType:
    """'2,3;5' -> FlagType((2, 3), 5)."""
    try:
        a_part, n_part = text.split(";")
        return FlagType(tuple(int(x) for x in a_part.split(",")), int(n_part))
    except ValueError as exc:
        raise UsageError(f"malformed flag type {text!r} (expected e.g. '2,3;5'): {exc}") from None


def _parse_conditions(ft: FlagType, items: list[str]) -> SchubertData:
    """['13245^4', '12435^4'] -> SchubertData."""
    counts = []
    for item in items:
        w, _, c = item.partition("^")
        counts.append((w, int(c) if c else 1))
    return SchubertData.from_counts(ft, counts)


def _problem_from_args(args) -> tuple[SchubertData, int | None, ExperimentConfig | None]:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
        return cfg.schubert_data, cfg.expected_degree, cfg
    if args.problem:
        p = get_problem(args.problem)
        return p.schubert_data, p.degree, None
    if args.flag_type and args.conditions:
        ft = _parse_flag_type(args.flag_type)
        return _parse_conditions(ft, args.conditions), None, None
    raise UsageError("give --config, --problem, or --flag-type with --conditions")


def cmd_enumerate(args) -> int:
    if args.flag_type and not args.conditions and not args.problem and not args.config:
        ft = _parse_flag_type(args.flag_type)
        sd = None
    else:
        sd, _, _ = _problem_from_args(args)
        ft = sd.flag_type
    print(f"W^a for {ft} (dimension {flag_dimension(ft)}):")
    for w in enumerate_Wa(ft):
        dd = descent_data(w)
        print(f"  {w}  length {length(w)}  descents {sorted(dd.descents)}")
    if sd is not None:
        valid = validate_schubert_data(sd)
        print(f"necklaces for {sd.describe()}"
              + ("" if valid else " (lengths do not sum to the dimension)") + ":")
        for nk in problem_necklaces(sd):
            print(f"  {nk}" + ("  monotone" if is_monotone(nk) else ""))
    return 0


def _all_codimension_one(sd: SchubertData) -> bool:
    return all(length(w) == 1 for w in sd.conditions)


def cmd_degree(args) -> int:
    sd, stated, _ = _problem_from_args(args)
    method = args.method
    if method == "auto":
        method = "pieri" if _all_codimension_one(sd) else "solve"
    if method == "pieri":
        d = pieri_degree(sd)
        print(f"degree: {d}")
        print("method: pieri chain count")
        return 0
    check = validate_schubert_data(sd)
    rng = round_rng(args.seed, 0)
    pts = sample_points(sd.m, rng, args.range)
    inst = build_instance(sd, pts, check_dimension=check)
    res = solve_instance(inst, stated, seed=args.seed)
    qd = res.quotient_dimension
    print(f"degree: {'inf' if qd == float('inf') else qd}")
    print(f"method: quotient dimension of one instance at points "
          f"{', '.join(map(str, inst.points))} (status {res.status.value})")
    return 0


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    doc = cfg.to_dict()
    for flag, key in (("seed", "seed"), ("iterations", "iterations"),
                      ("workers", "worker_count"), ("output", "output_path")):
        value = getattr(args, flag, None)
        if value is not None:
            doc[key] = value
    return ExperimentConfig.from_dict(doc)


def cmd_run(args) -> int:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
    elif args.problem:
        p = get_problem(args.problem)
        cfg = ExperimentConfig.from_dict(p.config_dict(
            iterations=args.iterations or 1, sampling_range=args.range or DEFAULT_SAMPLING_RANGE))
    else:
        raise UsageError("run needs --config or --problem")
    cfg = _apply_overrides(cfg, args)

    def progress(outcome, table):
        if args.verbose:
            print(f"round {outcome.index + 1}/{cfg.iterations} done", file=sys.stderr)

    table = run_experiment(cfg, resume=not args.fresh, on_round=progress)
    print(report(table, args.format), end="")
    if table.violations:
        print(f"WARNING: {len(table.violations)} monotone instance(s) with fewer than "
              f"{table.degree} real solutions:", file=sys.stderr)
        for v in table.violations:
            print(f"  {json.dumps(v)}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    names = args.scenario or list(scenarios.SCENARIOS)
    failed = 0
    for name in names:
        if name not in scenarios.SCENARIOS:
            raise UsageError(f"unknown scenario {name!r}; known: {', '.join(scenarios.SCENARIOS)}")
        fn, kwargs = scenarios.SCENARIOS[name]
        outcome = fn(**kwargs)
        print(outcome.line(), flush=True)
        failed += not outcome.passed
    return 1 if failed else 0


def cmd_report(args) -> int:
    path = args.path or args.output
    if not path:
        raise UsageError("report needs a checkpoint path")
    _, table = load_checkpoint(path)
    print(report(table, args.format), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realschubert",
        description="Real solutions of Schubert problems given by osculating flags.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def problem_flags(p):
        p.add_argument("--config", help="experiment config (JSON)")
        p.add_argument("--problem", choices=sorted(CATALOG), help="a built-in problem")
        p.add_argument("--flag-type", help="flag type such as '2,3;5'")
        p.add_argument("--conditions", nargs="+", metavar="W^K",
                       help="conditions with repetition counts, e.g. 13245^4 12435^4")

    p = sub.add_parser("enumerate", help="list W^a and the necklaces of a problem")
    problem_flags(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("degree", help="number of complex solutions of a problem")
    problem_flags(p)
    p.add_argument("--method", choices=["auto", "pieri", "solve"], default="auto",
                   help="auto: Pieri count for codimension-one data, otherwise solve")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=int, default=16, help="sampling bound for the instance")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("run", help="run an experiment, checkpointing as it goes")
    p.add_argument("--config")
    p.add_argument("--problem", choices=sorted(k for k, v in CATALOG.items() if v.degree))
    p.add_argument("--seed", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--output")
    p.add_argument("--range", type=int, help="sampling bound B (with --problem)")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--fresh", action="store_true", help="ignore an existing checkpoint")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run the built-in verification scenarios (small scale)")
    p.add_argument("scenario", nargs="*", help=f"subset of: {', '.join(scenarios.SCENARIOS)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="render a checkpoint")
    p.add_argument("path", nargs="?", help="checkpoint CSV or its .state.json sidecar")
    p.add_argument("--output", help="same as the positional path")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
