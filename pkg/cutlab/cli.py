"""
Command-line entry point: ``cutlab <command> ...``.

Commands:
    solve                 branch-and-cut on one instance
    bench corpus|run|stats|export
    regress train|predict|pick|regions
    dominance check|suite|counterexample

Exit codes: 0 on success, 2 on input errors, 3 on solver failures.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from cutlab.bench import CorpusKind, CorpusSize
from cutlab.config import LabSettings
from cutlab.errors import CutLabError, DimensionError, InstanceFormatError, MissingContextError, NotBasicError
from cutlab.lab import CutLab
from cutlab.measures import parse_variant
from cutlab.model import is_mip_feasible
from cutlab.readers import read_instance
from cutlab.render.tables import (
    render_consistency,
    render_cv,
    render_density,
    render_error,
    render_head_to_head,
    render_node_stats,
    render_picker,
    render_predictions,
    render_ratios,
    render_separation,
    render_sgm,
    render_suite,
    render_verdict,
)
from cutlab.types.instance import Incumbent
from cutlab.types.measures import MeasureKind
from cutlab.validate import parse_cut, parse_feature_values, validate_seeds, validate_variants

logger = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)

SUITES = ("euclidean", "directed", "mineff")
STATS_TABLES = ("h2h", "sgm", "vbr", "density", "picker", "centers")
METRICS = ("nodes", "time", "gap", "gap_after_root", "cuts", "rounds", "lp_iterations")


# ----- solve -----
def cmd_solve(lab: CutLab, args: argparse.Namespace) -> None:
    inst = read_instance(args.instance)
    kind, threshold = parse_variant(args.measure)
    if args.density_threshold is not None:
        threshold = args.density_threshold
    cfg = lab.separation.config(
        measure=kind,
        density_threshold=threshold,
        rounds=args.rounds if args.rounds is not None else lab.settings.rounds,
        max_cuts_per_round=args.max_cuts if args.max_cuts is not None else lab.settings.max_cuts,
        seed=args.seed,
    )
    incumbent = None
    if args.incumbent:
        incumbent = Incumbent.model_validate(json.loads(Path(args.incumbent).read_text()))
        if not is_mip_feasible(inst, incumbent.point, lab.settings.tolerances):
            raise ValueError(f"incumbent in {args.incumbent} is not feasible for {inst.name}")

    run = lab.bnb.solve(inst, cfg, args.time_limit, incumbent)
    if args.json:
        console.print_json(run.stats.model_dump_json())
        return
    if run.separation is not None:
        render_separation(run.separation, console)
    render_node_stats(run.stats, console)


# ----- bench -----
def cmd_bench_corpus(lab: CutLab, args: argparse.Namespace) -> None:
    size = CorpusSize(n=args.n, m=args.m, density=args.density)
    corpus = lab.bench.corpus(args.kind, args.count, args.seed, size)
    paths = lab.bench.write_corpus(corpus, args.out)
    console.print(f"[green]wrote {len(paths)} instances to {args.out}[/green]")


def cmd_bench_run(lab: CutLab, args: argparse.Namespace) -> None:
    corpus = lab.bench.load_corpus(args.corpus)
    if not corpus:
        raise ValueError(f"no .json or .mps instances in {args.corpus}")
    variants = validate_variants(args.variants)
    seeds = validate_seeds(args.seeds) if args.seeds else lab.settings.seeds
    overrides = {}
    if args.rounds is not None:
        overrides["rounds"] = args.rounds
    if args.max_cuts is not None:
        overrides["max_cuts_per_round"] = args.max_cuts
    records = lab.bench.run(
        corpus, variants, seeds, jobs=args.jobs, out=args.out, time_limit=args.time_limit,
        cfg=lab.separation.config(**overrides),
    )
    console.print(
        f"[green]{len(records)} records for {len(corpus)} instances x {len(variants)} variants x "
        f"{len(seeds)} seeds in {args.out}[/green]"
    )


def cmd_bench_stats(lab: CutLab, args: argparse.Namespace) -> None:
    records = lab.bench.load(args.input)
    if not records:
        raise ValueError(f"no records in {args.input}")
    table = args.table
    if table == "h2h":
        render_head_to_head(lab.bench.head_to_head(records, args.metric), console)
    elif table == "sgm":
        shift = args.shift if args.shift is not None else 10.0
        render_sgm(lab.bench.sgm(records, args.metric, shift), f"Shifted geometric mean of {args.metric}", console)
    elif table == "vbr":
        ratios = lab.bench.virtual_best(records, args.metric)
        render_ratios(ratios, f"{args.metric} relative to the virtual best", console)
    elif table == "density":
        render_density(lab.bench.density(records), console)
    elif table == "picker":
        if not args.model:
            raise ValueError("--model is required for the picker table")
        render_picker(lab.bench.evaluate_picker(records, lab.regress.load(args.model)), console)
    elif table == "centers":
        rate = lab.bench.center_invalidation_rate(records)
        console.print(f"cached center invalidated in {100 * rate:.1f}% of app-a-dcd rounds")


def cmd_bench_export(lab: CutLab, args: argparse.Namespace) -> None:
    records = lab.bench.load(args.input)
    samples = lab.bench.export_training(records, args.out)
    if not samples:
        logger.warning(f"no instance-seed pair in {args.input} has all eight measures; wrote an empty corpus")
    console.print(f"[green]wrote {len(samples)} training records to {args.out}[/green]")


# ----- regress -----
def cmd_regress_train(lab: CutLab, args: argparse.Namespace) -> None:
    samples = lab.regress.read_training(args.input)
    model = lab.regress.train(samples, ridge=args.ridge, seed=args.seed, gamma=args.gamma)
    lab.regress.save(model, args.out)
    if model.cv is not None:
        render_cv(model.cv, console)
    console.print(f"[green]model trained on {len(samples)} records saved to {args.out}[/green]")


def cmd_regress_predict(lab: CutLab, args: argparse.Namespace) -> None:
    model = lab.regress.load(args.model)
    features = parse_feature_values(args.features)
    render_predictions(lab.regress.predict(model, features), console)


def cmd_regress_pick(lab: CutLab, args: argparse.Namespace) -> None:
    model = lab.regress.load(args.model)
    features = parse_feature_values(args.features)
    console.print(lab.regress.pick(model, features).value)


def cmd_regress_regions(lab: CutLab, args: argparse.Namespace) -> None:
    model = lab.regress.load(args.model)
    cells = lab.regress.regions(model, args.resolution)
    lab.regress.write_regions(cells, args.out)
    console.print(f"[green]wrote {len(cells)} grid cells to {args.out}[/green]")


# ----- dominance -----
def cmd_dominance_check(lab: CutLab, args: argparse.Namespace) -> None:
    inst = read_instance(args.instance)
    cut_a = parse_cut(args.cut_a, inst.n)
    cut_b = parse_cut(args.cut_b, inst.n)
    render_verdict(lab.dominance.check(inst, cut_a, cut_b), console)


def cmd_dominance_suite(lab: CutLab, args: argparse.Namespace) -> None:
    names = SUITES if args.name == "all" else (args.name,)
    violations = 0
    for name in names:
        report = lab.dominance.suite(name, trials=args.trials, seed=args.seed)
        render_suite(report, console)
        violations += report.violations
    if violations:
        logger.warning(f"{violations} consistency violations found")


def cmd_dominance_counterexample(lab: CutLab, args: argparse.Namespace) -> None:
    example = lab.dominance.counterexample(args.kind)
    measure = MeasureKind(args.measure) if args.measure else None
    render_consistency(lab.dominance.counterexample_report(example, measure), console)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cutlab", description="Desk-scale branch-and-cut laboratory")
    parser.add_argument("--log-level", default=None, help="logging level (default: CUTLAB_LOG_LEVEL or WARNING)")
    parser.add_argument("--env-file", default=None, help="dotenv file with CUTLAB_* settings")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="branch-and-cut on one instance")
    solve.add_argument("instance")
    solve.add_argument("--measure", default="eff", help="measure or density variant, e.g. a-dcd or eff-20")
    solve.add_argument("--rounds", type=int, default=None)
    solve.add_argument("--max-cuts", type=int, default=None)
    solve.add_argument("--seed", type=int, default=1)
    solve.add_argument("--density-threshold", type=float, default=None)
    solve.add_argument("--incumbent", default=None, help="JSON file with 'point' and 'value'")
    solve.add_argument("--time-limit", type=float, default=None)
    solve.add_argument("--json", action="store_true", help="print the run statistics as JSON")
    solve.set_defaults(func=cmd_solve)

    bench = commands.add_parser("bench", help="experiment corpora, runs and statistics")
    bench_commands = bench.add_subparsers(dest="bench_command", required=True)

    corpus = bench_commands.add_parser("corpus", help="generate a seeded instance corpus")
    corpus.add_argument("--kind", choices=[k.value for k in CorpusKind], required=True)
    corpus.add_argument("--count", type=int, required=True)
    corpus.add_argument("--seed", type=int, default=0)
    corpus.add_argument("--n", type=int, default=12)
    corpus.add_argument("--m", type=int, default=3)
    corpus.add_argument("--density", type=float, default=0.5)
    corpus.add_argument("--out", required=True)
    corpus.set_defaults(func=cmd_bench_corpus)

    run = bench_commands.add_parser("run", help="run every instance x variant x seed")
    run.add_argument("--corpus", required=True)
    run.add_argument("--variants", required=True, help="comma-separated, e.g. eff,dcd,eff-05")
    run.add_argument("--seeds", default=None, help="comma-separated (default: CUTLAB_SEEDS or 1,2,3)")
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--out", required=True, help="JSON-lines results store")
    run.add_argument("--time-limit", type=float, default=None)
    run.add_argument("--rounds", type=int, default=None)
    run.add_argument("--max-cuts", type=int, default=None)
    run.set_defaults(func=cmd_bench_run)

    stats = bench_commands.add_parser("stats", help="tables over a results store")
    stats.add_argument("--in", dest="input", required=True)
    stats.add_argument("--table", choices=STATS_TABLES, default="h2h")
    stats.add_argument("--metric", choices=METRICS, default="nodes")
    stats.add_argument("--shift", type=float, default=None)
    stats.add_argument("--model", default=None, help="regression model for the picker table")
    stats.set_defaults(func=cmd_bench_stats)

    export = bench_commands.add_parser("export", help="write the regression training corpus")
    export.add_argument("--in", dest="input", required=True)
    export.add_argument("--out", required=True)
    export.set_defaults(func=cmd_bench_export)

    regress = commands.add_parser("regress", help="measure recommendation")
    regress_commands = regress.add_subparsers(dest="regress_command", required=True)

    train = regress_commands.add_parser("train", help="fit the kernel ridge model")
    train.add_argument("--in", dest="input", required=True)
    train.add_argument("--out", required=True)
    train.add_argument("--ridge", type=float, default=1e-2)
    train.add_argument("--gamma", type=float, default=None)
    train.add_argument("--seed", type=int, default=0)
    train.set_defaults(func=cmd_regress_train)

    for name, func, text in (
        ("predict", cmd_regress_predict, "predicted relative performance per measure"),
        ("pick", cmd_regress_pick, "best predicted measure"),
    ):
        sub = regress_commands.add_parser(name, help=text)
        sub.add_argument("--model", required=True)
        sub.add_argument("--features", required=True, help="five values or name=value pairs")
        sub.set_defaults(func=func)

    regions = regress_commands.add_parser("regions", help="decision regions over the first two principal components")
    regions.add_argument("--model", required=True)
    regions.add_argument("--out", required=True)
    regions.add_argument("--resolution", type=int, default=50)
    regions.set_defaults(func=cmd_regress_regions)

    dominance = commands.add_parser("dominance", help="dominance between cuts")
    dominance_commands = dominance.add_subparsers(dest="dominance_command", required=True)

    check = dominance_commands.add_parser("check", help="compare two cuts over an instance's LP relaxation")
    check.add_argument("instance")
    check.add_argument("--cut-a", required=True, help="e.g. '1,0<=3'")
    check.add_argument("--cut-b", required=True)
    check.set_defaults(func=cmd_dominance_check)

    suite = dominance_commands.add_parser("suite", help="randomized consistency suite")
    suite.add_argument("name", choices=SUITES + ("all",))
    suite.add_argument("--trials", type=int, default=1000)
    suite.add_argument("--seed", type=int, default=0)
    suite.set_defaults(func=cmd_dominance_suite)

    counter = dominance_commands.add_parser("counterexample", help="fixed constructions with a consistency violation")
    counter.add_argument("--kind", choices=("exp-improv", "projection"), required=True)
    counter.add_argument("--measure", choices=[k.value for k in MeasureKind], default=None)
    counter.set_defaults(func=cmd_dominance_counterexample)

    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = LabSettings.from_env(args.env_file)
    except ValidationError as exc:
        render_error(f"invalid CUTLAB_* setting: {exc}", err_console)
        return 2
    _configure_logging((args.log_level or settings.log_level).upper())

    lab = CutLab(settings)
    try:
        args.func(lab, args)
    except (InstanceFormatError, DimensionError, MissingContextError, NotBasicError, ValidationError) as exc:
        render_error(str(exc), err_console)
        return 2
    except CutLabError as exc:
        logger.debug("solver failure", exc_info=True)
        render_error(str(exc), err_console)
        return 3
    except (ValueError, OSError) as exc:
        render_error(str(exc), err_console)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
