"""
Rich renderers for cutlab results.

Each function prints one result object to a console as a table or panel,
so the CLI stays free of formatting code.
"""

import math
from typing import Dict, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from cutlab.types.dominance import ConsistencyReport, DominanceRelation, DominanceVerdict, SuiteReport
from cutlab.types.learning import CrossValidationReport
from cutlab.types.measures import MeasureKind
from cutlab.types.records import MipStatus, NodeStats, SeparationResult
from cutlab.types.stats import DensityRow, HeadToHead, PickerSummary


def fmt(value: float, digits: int = 6) -> str:
    """Compact number for table cells; infinities and NaN spelled out."""
    if value is None:
        return "-"
    if isinstance(value, float) and math.isnan(value):
        return "-"
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def render_separation(result: SeparationResult, console: Console) -> None:
    table = Table(title="Separation rounds")
    for column in ("round", "generated", "filtered", "added", "LP value", "measure", "infeasible proj."):
        table.add_column(column, justify="right")
    for report in result.reports:
        table.add_row(
            str(report.round),
            str(report.generated),
            str(report.after_density_filter),
            str(report.added),
            fmt(report.lp_value),
            report.measure_used.value,
            str(report.infeasible_projections),
        )
    console.print(table)
    features = ", ".join(f"{name}={fmt(value, 3)}" for name, value in result.features.model_dump().items())
    console.print(f"[dim]root features:[/dim] {features}")


def render_node_stats(stats: NodeStats, console: Console) -> None:
    color = {MipStatus.OPTIMAL: "green", MipStatus.TIME_LIMIT: "yellow", MipStatus.INFEASIBLE: "red"}[stats.status]
    lines = [
        f"[bold {color}]{stats.status.value}[/bold {color}]",
        f"nodes: {stats.nodes_processed}",
        f"LP iterations: {stats.lp_iterations_total}",
        f"primal bound: {fmt(stats.primal_bound)}",
        f"dual bound: {fmt(stats.dual_bound)}",
        f"root LP after cuts: {fmt(stats.root_lp_value)} ({stats.cuts_added} cuts)",
        f"gap after root: {fmt(stats.gap_after_root)}",
    ]
    if stats.solve_time is not None:
        lines.append(
            f"time: {stats.solve_time:.3f}s ({fmt(stats.nodes_per_second, 4)} nodes/s, "
            f"{fmt(stats.iterations_per_second, 4)} it/s)"
        )
    console.print(Panel("\n".join(lines), title="Branch-and-cut", expand=False))


def render_head_to_head(h2h: HeadToHead, console: Console) -> None:
    """Cell (i, j) reads 'win% / loss%' of row variant i against column variant j."""
    table = Table(title=f"Head-to-head on {h2h.metric} (win% / loss%)")
    table.add_column("")
    for name in h2h.variants:
        table.add_column(name, justify="center")
    for i, row_name in enumerate(h2h.variants):
        cells = []
        for j in range(len(h2h.variants)):
            if i == j:
                cells.append("")
            else:
                cells.append(f"{100 * h2h.win[i, j]:.0f} / {100 * h2h.loss[i, j]:.0f}")
        table.add_row(row_name, *cells)
    console.print(table)


def render_ratios(ratios: Dict[str, Dict[str, float]], title: str, console: Console) -> None:
    variants = sorted({v for row in ratios.values() for v in row})
    table = Table(title=title)
    table.add_column("instance")
    for name in variants:
        table.add_column(name, justify="right")
    for instance in sorted(ratios):
        table.add_row(instance, *(fmt(ratios[instance].get(v, math.nan), 4) for v in variants))
    console.print(table)


def render_sgm(values: Dict[str, float], title: str, console: Console) -> None:
    table = Table(title=title)
    table.add_column("variant")
    table.add_column("shifted geo. mean", justify="right")
    for name, value in values.items():
        table.add_row(name, fmt(value, 5))
    console.print(table)


def render_density(rows: Sequence[DensityRow], console: Console) -> None:
    table = Table(title="Density filters relative to eff")
    for column in ("subset", "variant", "instances", "gap", "cuts", "rounds", "LP iter.", "nodes"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(
            f"[{row.min_density:.1f}, 1]", row.variant, str(row.instances),
            fmt(row.gap, 4), fmt(row.cuts, 4), fmt(row.rounds, 4), fmt(row.lp_iterations, 4), fmt(row.nodes, 4),
        )
    console.print(table)


def render_picker(summary: PickerSummary, console: Console) -> None:
    render_sgm(summary.sgm_nodes, f"Node SGM over {summary.pairs} instance-seed pairs", console)
    picks = ", ".join(f"{name}: {count}" for name, count in sorted(summary.picks.items()))
    console.print(f"[dim]picks:[/dim] {picks}")


def render_predictions(predictions: Sequence[float], console: Console) -> None:
    table = Table(title="Predicted relative performance")
    table.add_column("measure")
    table.add_column("prediction", justify="right")
    best = max(range(len(predictions)), key=lambda k: (predictions[k], -k))
    for k, kind in enumerate(MeasureKind.ordered()):
        label = f"[bold]{kind.value}[/bold]" if k == best else kind.value
        table.add_row(label, fmt(float(predictions[k]), 4))
    console.print(table)


def render_cv(cv: CrossValidationReport, console: Console) -> None:
    mse = ", ".join(f"{kind.value}={fmt(v, 3)}" for kind, v in zip(MeasureKind.ordered(), cv.mse_per_output))
    console.print(Panel(f"{cv.folds}-fold CV mean squared error\n{mse}", title="Training", expand=False))


def render_verdict(verdict: DominanceVerdict, console: Console) -> None:
    color = "yellow" if verdict.relation == DominanceRelation.INCOMPARABLE else "green"
    lines = [
        f"[bold {color}]{verdict.relation.value}[/bold {color}]",
        f"max violation of A where B holds: {fmt(verdict.a_only)}",
        f"max violation of B where A holds: {fmt(verdict.b_only)}",
    ]
    if verdict.witness_a is not None:
        lines.append(f"cut by A only: {[round(float(v), 6) for v in verdict.witness_a]}")
    if verdict.witness_b is not None:
        lines.append(f"cut by B only: {[round(float(v), 6) for v in verdict.witness_b]}")
    console.print(Panel("\n".join(lines), title="Dominance", expand=False))


def render_consistency(report: ConsistencyReport, console: Console) -> None:
    border = "green" if report.consistent else "red"
    lines = [f"pairs checked: {report.pairs_checked}", f"pairs excluded: {len(report.pairs_excluded)}"]
    for v in report.violations:
        lines.append(
            f"[red]cut {v.higher} (score {fmt(v.higher_score, 4)}) is dominated by "
            f"cut {v.lower} (score {fmt(v.lower_score, 4)})[/red]"
        )
    if report.consistent:
        lines.append("[green]no consistency violations[/green]")
    console.print(Panel("\n".join(lines), title=f"Consistency of {report.measure}", border_style=border))


def render_suite(report: SuiteReport, console: Console) -> None:
    border = "green" if report.violations == 0 else "red"
    console.print(Panel(
        f"measures: {', '.join(report.measures)}\n"
        f"trials: {report.trials} (seed {report.seed}), instances used: {report.instances_used}\n"
        f"pairs checked: {report.pairs_checked}, excluded: {report.pairs_excluded}\n"
        f"violations: {report.violations}",
        title=f"{report.suite} suite",
        border_style=border,
    ))


def render_error(message: str, console: Console) -> None:
    console.print(Panel(f"[bold red]Error: {message}[/bold red]", border_style="red"))
