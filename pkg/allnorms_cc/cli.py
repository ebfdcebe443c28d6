"""Command-line interface for the all-norms clustering toolkit."""

import asyncio
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from .algorithms.metric import adjust_metric, correlation_metric
from .analyzers.objective import check_rounding_guarantee
from .baselines.exact import MAX_EXACT_N, brute_force_profile
from .core.clustering import load_clustering
from .core.config import Config, setup_logging
from .core.errors import ClusteringError, InvalidParameterError
from .core.graph import format_graph, load_graph
from .core.pipeline import ADJUSTED_METRIC_FACTOR, AllNormsClusterer, score_clustering
from .core.semimetric import dump_metric
from .core.types import NormSpec, Report, VerificationReport
from .generators.graph_generator import generator_names, make_graph
from .harness.bench import FAMILIES, run_bench, scaling_summary, write_csv
from .harness.verify import SUITES, InvariantVerifier, input_corpus, instance_from_label


# stdout carries machine-readable output only
console = Console(stderr=True)

EXIT_VIOLATION = 1
EXIT_USAGE = 2

DEFAULT_NORMS = "1,2,inf"
GRAPH_KINDS = sorted({name.replace('_', '-') for name in generator_names()} | set(generator_names()))


class AllNormsGroup(click.Group):
    """Maps library errors to exit code 2 for every subcommand."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (ClusteringError, ValidationError, OSError) as e:
            console.print(f"[red]Error: {e}[/red]")
            if "--debug" in sys.argv:
                console.print_exception()
            raise click.exceptions.Exit(EXIT_USAGE)


def parse_norms(tokens: Sequence[str]) -> List[NormSpec]:
    """Comma-separated and repeated ``-p`` values, in order."""
    specs = [
        NormSpec.parse(part.strip())
        for token in tokens
        for part in token.split(",")
        if part.strip()
    ]
    if not specs:
        raise InvalidParameterError("the p-list must not be empty")
    return specs


def parse_sizes(value: str) -> List[int]:
    try:
        sizes = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise InvalidParameterError(f"sizes must be comma-separated integers, got {value!r}")
    if not sizes or min(sizes) < 1:
        raise InvalidParameterError(f"sizes must be positive, got {value!r}")
    return sizes


def with_overrides(
    config: Config,
    threshold: Optional[float] = None,
    singleton_factor: Optional[float] = None,
    radius: Optional[float] = None,
) -> Config:
    """Copy of ``config`` with per-command overrides, validated again."""
    adjustment = config.adjustment.model_dump()
    rounding = config.rounding.model_dump()
    if threshold is not None:
        adjustment["round_up_threshold"] = threshold
    if singleton_factor is not None:
        adjustment["singleton_factor"] = singleton_factor
    if radius is not None:
        rounding["radius"] = radius
    return Config(
        adjustment=adjustment,
        rounding=rounding,
        harness=config.harness,
        logging=config.logging,
    )


def write_output(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


def metric_options(func: Any) -> Any:
    func = click.option("--radius", type=float, help="Rounding radius r")(func)
    func = click.option("--singleton-factor", type=float, help="Singleton isolation factor")(func)
    func = click.option("--threshold", type=float, help="Round-up threshold for negative edges")(func)
    return func


@click.group(cls=AllNormsGroup)
@click.option('--config', type=click.Path(exists=True, dir_okay=False), help='Configuration file path (YAML)')
@click.option('--debug', is_flag=True, help='Enable debug logging')
@click.option('--verbose', is_flag=True, help='Enable info logging')
@click.pass_context
def cli(ctx: click.Context, config: Optional[str], debug: bool, verbose: bool) -> None:
    """All-norms correlation clustering toolkit."""
    ctx.ensure_object(dict)

    if config:
        ctx.obj['config'] = Config.load(config)
    else:
        ctx.obj['config'] = Config.from_env()

    if debug:
        ctx.obj['config'].logging.debug = True
    if verbose:
        ctx.obj['config'].logging.verbose = True
    setup_logging(ctx.obj['config'].logging)


@cli.command()
@click.argument('kind', type=click.Choice(GRAPH_KINDS))
@click.option('--n', 'n', type=int, required=True, help='Number of vertices')
@click.option('--q', type=float, help='Positive-edge probability (random)')
@click.option('--degree', type=int, help='Even positive degree (regular_circulant)')
@click.option('--seed', type=click.IntRange(min=0), help='Generator seed (random)')
@click.option('-o', '--output', type=click.Path(dir_okay=False), help='Graph file to write (default stdout)')
@click.pass_context
def gen(ctx: click.Context, kind: str, n: int, q: Optional[float], degree: Optional[int],
        seed: Optional[int], output: Optional[str]) -> None:
    """Generate a named graph family."""
    params: Dict[str, Any] = {"n": n}
    if q is not None:
        params["q"] = q
    if degree is not None:
        params["degree"] = degree
    if kind == "random":
        params["seed"] = seed if seed is not None else ctx.obj['config'].harness.seed
    elif seed is not None:
        raise InvalidParameterError(f"{kind} takes no seed")
    graph = make_graph(kind, **params)
    write_output(format_graph(graph), output)


@cli.command()
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('-p', '--p', 'norms', multiple=True, default=[DEFAULT_NORMS], show_default=True,
              help="Norms to report, e.g. '1,2,inf'")
@click.option('-o', '--output', type=click.Path(dir_okay=False), help='Clustering JSON to write (default stdout)')
@click.option('--report', type=click.Path(dir_okay=False), help='Report JSON to write')
@click.option('--raw-metric', is_flag=True, help='Round the unadjusted correlation metric')
@click.option('--seed', type=click.IntRange(min=0), help='Seed for randomized baselines')
@click.option('--exact', is_flag=True, help='Add the exhaustive optimum for the first norm (n <= 12)')
@click.option('--no-baselines', is_flag=True, help='Skip the baseline clusterings')
@metric_options
@click.pass_context
def cluster(ctx: click.Context, graph_path: str, norms: Sequence[str], output: Optional[str],
            report: Optional[str], raw_metric: bool, seed: Optional[int], exact: bool, no_baselines: bool,
            threshold: Optional[float], singleton_factor: Optional[float], radius: Optional[float]) -> None:
    """Cluster a graph once and report every requested norm."""
    config = with_overrides(ctx.obj['config'], threshold, singleton_factor, radius)
    graph = load_graph(graph_path)
    clusterer = AllNormsClusterer(config)
    result = clusterer.run(graph, adjust=not raw_metric)
    write_output(result.clustering.to_json() + "\n", output)

    # norms are read only once the clustering exists
    specs = parse_norms(norms)
    evaluation = clusterer.evaluate(
        graph,
        result,
        specs,
        seed=seed if seed is not None else config.harness.seed,
        include_baselines=not no_baselines,
        exact=exact,
        source=graph_path,
    )
    if report:
        write_output(evaluation.model_dump_json(indent=2) + "\n", report)
    display_report(evaluation)


@cli.command(name="eval")
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.argument('clustering_path', type=click.Path(exists=True, dir_okay=False))
@click.option('-p', '--p', 'norms', multiple=True, default=[DEFAULT_NORMS], show_default=True)
@click.option('--guarantee', is_flag=True, help='Check the 12x per-vertex bound against the adjusted metric')
@metric_options
@click.pass_context
def eval_command(ctx: click.Context, graph_path: str, clustering_path: str, norms: Sequence[str],
                 guarantee: bool, threshold: Optional[float], singleton_factor: Optional[float],
                 radius: Optional[float]) -> None:
    """Score an existing clustering."""
    config = with_overrides(ctx.obj['config'], threshold, singleton_factor, radius)
    graph = load_graph(graph_path)
    clustering = load_clustering(clustering_path)
    score = score_clustering("input", graph, clustering, parse_norms(norms))

    violations: List[int] = []
    if guarantee:
        f = adjust_metric(graph, correlation_metric(graph), config.adjustment)
        violations = check_rounding_guarantee(graph, f, clustering, ADJUSTED_METRIC_FACTOR)
        score.metadata["guarantee_violations"] = violations
    click.echo(score.model_dump_json(indent=2))

    table = Table(title=f"Clustering {clustering_path}")
    table.add_column("Norm", style="cyan")
    table.add_column("Value", style="white")
    for token, value in score.norms.items():
        table.add_row(f"l_{token}", f"{value:.6g}")
    table.add_row("edge disagreements", str(score.edge_disagreements))
    console.print(table)
    if violations:
        console.print(f"[red]{len(violations)} vertices exceed {ADJUSTED_METRIC_FACTOR:g}x their fractional cost[/red]")
        ctx.exit(EXIT_VIOLATION)


@cli.command()
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('-p', '--p', 'norms', multiple=True, default=[DEFAULT_NORMS], show_default=True)
@click.option('--max-n', type=click.IntRange(1, MAX_EXACT_N), default=MAX_EXACT_N, show_default=True)
def exact(graph_path: str, norms: Sequence[str], max_n: int) -> None:
    """Exhaustive optimum for small graphs."""
    graph = load_graph(graph_path)
    with console.status(f"[bold green]Enumerating partitions of n={graph.n}...[/bold green]"):
        results = brute_force_profile(graph, parse_norms(norms), max_n=max_n)
    click.echo(json.dumps([r.to_summary().model_dump(mode="json") for r in results], indent=2))


@cli.command()
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--raw', is_flag=True, help='Dump the correlation metric d instead of the adjusted metric')
@click.option('-o', '--output', type=click.Path(dir_okay=False), help='File to write (default stdout)')
@metric_options
@click.pass_context
def metric(ctx: click.Context, graph_path: str, raw: bool, output: Optional[str],
           threshold: Optional[float], singleton_factor: Optional[float], radius: Optional[float]) -> None:
    """Dump the stored entries of the (adjusted) correlation metric."""
    config = with_overrides(ctx.obj['config'], threshold, singleton_factor, radius)
    graph = load_graph(graph_path)
    z = correlation_metric(graph)
    if not raw:
        z = adjust_metric(graph, z, config.adjustment)
    if output:
        with open(output, "w", encoding="utf-8") as f:
            dump_metric(z, f)
    else:
        dump_metric(z, click.get_text_stream("stdout"))


@cli.command()
@click.option('--suite', 'suites', multiple=True, type=click.Choice(SUITES),
              help='Suite to run (repeatable; default all)')
@click.option('--input', 'inputs', multiple=True, type=click.Path(exists=True, dir_okay=False),
              help='Graph file to verify instead of the generated corpora (repeatable)')
@click.option('--replay', 'replays', multiple=True,
              help="Instance label from a finding, e.g. 'random(n=60,q=0.2,seed=7)' (repeatable)")
@click.option('--seed', type=click.IntRange(min=0), help='Base seed of the random corpus')
@click.option('--trials', type=click.IntRange(min=1), help='Random instances per suite')
@click.option('--n', 'n', type=click.IntRange(min=1), help='Vertex count of the metric corpus')
@click.option('--max-n', type=click.IntRange(1, MAX_EXACT_N), help='Largest n compared with the exact oracle')
@click.option('--workers', type=click.IntRange(1, 64), help='Concurrent instances')
@click.option('-o', '--output', type=click.Path(dir_okay=False), help='Findings JSON to write (default stdout)')
@metric_options
@click.pass_context
def verify(ctx: click.Context, suites: Sequence[str], inputs: Sequence[str], replays: Sequence[str],
           seed: Optional[int], trials: Optional[int],
           n: Optional[int], max_n: Optional[int], workers: Optional[int], output: Optional[str],
           threshold: Optional[float], singleton_factor: Optional[float], radius: Optional[float]) -> None:
    """Check the proved bounds on generated corpora."""
    config = with_overrides(ctx.obj['config'], threshold, singleton_factor, radius)
    harness = config.harness.model_dump()
    overrides = {"seed": seed, "trials": trials, "cost_trials": trials, "n": n, "max_n": max_n, "workers": workers}
    harness.update({key: value for key, value in overrides.items() if value is not None})
    config = Config(adjustment=config.adjustment, rounding=config.rounding,
                    harness=harness, logging=config.logging)

    instances = None
    if inputs or replays:
        instances = input_corpus(inputs) + [instance_from_label(label) for label in replays]
    verifier = InvariantVerifier(config, instances)
    result = asyncio.run(verifier.run(list(suites) or list(SUITES)))
    write_output(result.model_dump_json(indent=2) + "\n", output)
    display_verification(result)
    if not result.passed:
        ctx.exit(EXIT_VIOLATION)


@cli.command()
@click.option('--sizes', default='1000,2000', show_default=True, help='Ascending comma-separated vertex counts')
@click.option('--delta', type=click.IntRange(min=0), default=16, show_default=True, help='Positive degree')
@click.option('--trials', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--seed', type=click.IntRange(min=0), help='Base seed')
@click.option('--family', 'families', multiple=True, type=click.Choice(FAMILIES),
              help='Instance family (repeatable; default both)')
@click.option('--workers', type=click.IntRange(1, 64), default=1, show_default=True)
@click.option('--csv', 'csv_path', type=click.Path(dir_okay=False), help='CSV file to write (default stdout)')
@click.option('--summary', type=click.Path(dir_okay=False), help='Scaling summary JSON to write')
@click.pass_context
def bench(ctx: click.Context, sizes: str, delta: int, trials: int, seed: Optional[int], families: Sequence[str],
          workers: int, csv_path: Optional[str], summary: Optional[str]) -> None:
    """Time the pipeline over growing instances."""
    config: Config = ctx.obj['config']
    rows = asyncio.run(run_bench(
        parse_sizes(sizes),
        delta,
        trials,
        seed=seed if seed is not None else config.harness.seed,
        families=list(families) or list(FAMILIES),
        config=config,
        workers=workers,
    ))
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="") as f:
            write_csv(rows, f)
    else:
        write_csv(rows, click.get_text_stream("stdout"))

    scaling = scaling_summary(rows)
    if summary:
        write_output(json.dumps(scaling, indent=2) + "\n", summary)
    table = Table(title=f"Median pipeline time (delta={delta})")
    table.add_column("Family", style="cyan")
    table.add_column("n", style="cyan")
    table.add_column("Median ms", style="white")
    for family, stats in scaling["families"].items():
        for size, median in stats["median_total_ms"].items():
            table.add_row(family, str(size), f"{median:.1f}")
    console.print(table)


def display_report(report: Report) -> None:
    """Norm table of the algorithm and every baseline."""
    tokens = [spec.token for spec in report.p_list]
    table = Table(title=f"Clustering of n={report.graph.n}")
    table.add_column("Clustering", style="cyan")
    table.add_column("Clusters", style="white")
    for token in tokens:
        table.add_column(f"l_{token}", style="white")
    table.add_column("Edges", style="white")

    for score in [report.algorithm] + report.baselines:
        table.add_row(
            score.name,
            str(score.num_clusters),
            *[f"{score.norms[token]:.6g}" for token in tokens],
            str(score.edge_disagreements),
        )
    console.print(table)

    if report.dual_lower_bound is not None:
        bound = report.dual_lower_bound
        note = "" if bound.is_regular else " (irregular: maximum degree)"
        console.print(f"Dual lower bound on disagreeing edges: {bound.value:.6g}{note}")
    if report.guarantee_violations:
        console.print(f"[red]Per-vertex guarantee violated at {len(report.guarantee_violations)} vertices[/red]")


def display_verification(report: VerificationReport) -> None:
    table = Table(title=f"Verification (seed {report.seed})")
    table.add_column("Suite", style="cyan")
    table.add_column("Instances", style="white")
    table.add_column("Findings", style="white")
    table.add_column("Worst ratios", style="white")
    table.add_column("Status", style="white")
    for suite in report.suites:
        ratios = ", ".join(f"{key}={value:.3g}" for key, value in sorted(suite.max_ratios.items()))
        status = "[green]pass[/green]" if suite.passed else "[red]FAIL[/red]"
        table.add_row(suite.suite, str(suite.instances), str(len(suite.findings)), ratios or "-", status)
    console.print(table)
    for finding in report.findings[:20]:
        console.print(f"[red]{finding.suite}[/red] {finding.instance}: {finding.message}")


def main() -> None:
    """Main entry point for the CLI."""
    try:
        cli()
    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted by user.[/yellow]")
        sys.exit(EXIT_USAGE)


if __name__ == '__main__':
    main()
