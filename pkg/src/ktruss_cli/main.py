"""Main entry point for the ktruss CLI."""

import io
import logging
from pathlib import Path

import typer
from pydantic import ValidationError

from eager_ktruss.models.graph import EdgeList, LoadedGraph
from eager_ktruss.models.truss import Strategy, SupportOverflowError, SupportWidth
from eager_ktruss.services.config_service import (
    ConfigurationError,
    EnvironmentConfiguration,
    get_configuration_service,
    initialize_configuration_service,
)
from eager_ktruss.utils.bench_harness import (
    StrategyMismatchError,
    check_strategy_agreement,
    geometric_mean_speedup,
    resolve_k,
    speedup_rows,
    thread_sweep,
)
from eager_ktruss.utils.graph_io import (
    GraphInputError,
    load_graph,
    write_csr_cache,
    write_edge_list,
)
from eager_ktruss.utils.kernels import hardware_workers
from eager_ktruss.utils.oracle import (
    oracle_edge_supports,
    oracle_kmax,
    oracle_ktruss,
    random_graph,
    skewed_graph,
)
from eager_ktruss.utils.record_format import emit_records
from eager_ktruss.utils.truss_engine import InvalidParameterError, kmax_search, ktruss

from .models.cli_config import CliConfig, Command
from .utils.display import (
    display_check,
    display_error_message,
    display_summary,
    write_output,
)

logger = logging.getLogger(__name__)

EXIT_MISMATCH = 1
EXIT_INPUT = 2

# Everything a user can cause with a bad file or flag.
INPUT_ERRORS = (
    GraphInputError,
    InvalidParameterError,
    SupportOverflowError,
    ConfigurationError,
    ValidationError,
    OSError,
)

app = typer.Typer(
    name="ktruss",
    help="Parallel Eager K-truss over zero-terminated CSR graphs",
    rich_markup_mode="rich",
)


def version_callback(value: bool):
    if value:
        from . import __description__, __version__

        typer.echo(f"ktruss {__version__}")
        typer.echo(__description__)
        raise typer.Exit()


def _input_failure(error: Exception, suggestions: list[str] | None = None) -> None:
    if isinstance(error, ValidationError):
        messages = [e["msg"] for e in error.errors()]
        display_error_message("; ".join(messages), suggestions)
    else:
        display_error_message(str(error), suggestions)
    raise typer.Exit(EXIT_INPUT)


def _default_threads() -> int | None:
    return get_configuration_service().effective_threads()


def _support_width(bits: int | None) -> SupportWidth:
    if bits is None:
        return get_configuration_service().get_truss_config().support_width
    try:
        return SupportWidth(bits)
    except ValueError:
        raise InvalidParameterError(  # noqa: B904
            f"support width must be 16 or 32, got {bits}"
        )


def _label(graph: LoadedGraph, vertex: int) -> int:
    return graph.edge_list.original_label(vertex)


@app.callback()
def main(
    version: bool | None = typer.Option(
        None,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
    log_level: str | None = typer.Option(
        None,
        "--log-level",
        envvar="KTRUSS_LOG_LEVEL",
        help="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    ),
):
    """Parallel Eager K-truss toolkit: convert, truss, verify, bench, generate."""
    try:
        environment = (
            EnvironmentConfiguration(log_level=log_level.upper())
            if log_level
            else EnvironmentConfiguration()
        )
        service = initialize_configuration_service(environment_config=environment)
    except ConfigurationError as e:
        _input_failure(e, ["Check KTRUSS_THREADS and KTRUSS_LOG_LEVEL"])

    logging.basicConfig(
        level=service.log_level(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@app.command()
def convert(
    input_path: Path = typer.Argument(..., help="Edge-list text file or CSR cache"),  # noqa: B008
    cache_output: Path = typer.Argument(..., help="Binary CSR cache to write"),  # noqa: B008
):
    """Parse, canonicalize and cache a graph as a zero-terminated CSR."""
    try:
        config = CliConfig(command=Command.CONVERT, input_path=input_path)
        graph = load_graph(config.input_path)
        with open(cache_output, "wb") as f:
            write_csr_cache(graph.csr, f)
    except INPUT_ERRORS as e:
        _input_failure(e)

    typer.echo(
        f"vertices={graph.num_vertices} edges={graph.num_edges} "
        f"slots={graph.csr.total_slots}"
    )


@app.command()
def truss(
    input_path: Path = typer.Argument(..., help="Edge-list text file or CSR cache"),  # noqa: B008
    k: int | None = typer.Option(None, "--k", "-k", help="Truss parameter (>= 2)"),
    kmax: bool = typer.Option(False, "--kmax", help="Find the largest non-empty k"),
    strategy: Strategy | None = typer.Option(
        None, "--strategy", "-s", case_sensitive=False, help="serial, coarse or fine"
    ),
    threads: int | None = typer.Option(
        None, "--threads", "-t", envvar="KTRUSS_THREADS", help="Worker count"
    ),
    support_width: int | None = typer.Option(
        None,
        "--support-width",
        help="Support counter width in bits, 16 or 32 (default: configured width)",
    ),
    output: Path | None = typer.Option(  # noqa: B008
        None, "--output", "-o", help="Write 'u v support' lines here instead of stdout"
    ),
):
    """Compute the maximal k-truss and print surviving edges with supports."""
    try:
        truss_config = get_configuration_service().get_truss_config()
        config = CliConfig(
            command=Command.TRUSS,
            input_path=input_path,
            k=k,
            kmax=kmax,
            strategies=[strategy or truss_config.strategy],
            threads=[threads] if threads is not None else [],
            output=output,
            support_width=_support_width(support_width),
        )
        graph = load_graph(config.input_path)
        workers = config.worker_count or _default_threads()
        chosen = config.strategies[0]
        logger.info(
            "%s: n=%d m=%d strategy=%s workers=%s",
            graph.name,
            graph.num_vertices,
            graph.num_edges,
            chosen.value,
            workers or "auto",
        )

        if config.kmax:
            found, result = kmax_search(graph.csr, chosen, workers, config.support_width)
            display_summary(f"kmax={found}")
        else:
            result = ktruss(graph.csr, config.k, chosen, workers, config.support_width)

        lines = [
            f"{_label(graph, u)} {_label(graph, v)} {support}\n"
            for u, v, support in result.edges
        ]
        write_output("".join(lines), config.output)
    except INPUT_ERRORS as e:
        _input_failure(e)

    display_summary(
        f"k={result.k} kept={len(result.edges)} iterations={result.iterations}"
    )


def _expected_truss(edge_list: EdgeList, k: int) -> dict[tuple[int, int], int]:
    survivors = sorted(oracle_ktruss(edge_list, k))
    subgraph = EdgeList(
        num_vertices=edge_list.num_vertices,
        edges=survivors,
        original_ids=edge_list.original_ids,
    )
    return oracle_edge_supports(subgraph)


def _first_divergence(
    expected: dict[tuple[int, int], int], actual: dict[tuple[int, int], int]
) -> tuple[tuple[int, int], int | None, int | None]:
    for edge in sorted(expected.keys() | actual.keys()):
        if expected.get(edge) != actual.get(edge):
            return edge, expected.get(edge), actual.get(edge)
    raise AssertionError("no divergence between equal truss outputs")


@app.command()
def verify(
    input_path: Path = typer.Argument(..., help="Edge-list text file or CSR cache"),  # noqa: B008
    max_k: int | None = typer.Option(
        None, "--max-k", help="Largest k to check (default: oracle kmax + 1)"
    ),
    threads: int | None = typer.Option(
        None, "--threads", "-t", envvar="KTRUSS_THREADS", help="Worker count"
    ),
):
    """Check every strategy against the brute-force oracle for k = 2..max-k."""
    try:
        config = CliConfig(
            command=Command.VERIFY,
            input_path=input_path,
            max_k=max_k,
            strategies=list(Strategy),
            threads=[threads] if threads is not None else [],
        )
        graph = load_graph(config.input_path)
        workers = config.worker_count or _default_threads()
        upper = config.max_k or oracle_kmax(graph.edge_list) + 1

        failures = []
        for k in range(2, upper + 1):
            expected = _expected_truss(graph.edge_list, k)
            for strategy in config.strategies:
                result = ktruss(graph.csr, k, strategy, workers)
                actual = {(u, v): support for u, v, support in result.edges}
                passed = actual == expected
                display_check(f"k={k} strategy={strategy.value}", passed)
                if not passed:
                    failures.append((k, strategy, expected, actual))
    except INPUT_ERRORS as e:
        _input_failure(e)

    if failures:
        k, strategy, expected, actual = failures[0]
        (u, v), want, got = _first_divergence(expected, actual)
        display_error_message(
            f"{len(failures)} case(s) failed; first at k={k} strategy={strategy.value}: "
            f"edge ({_label(graph, u)}, {_label(graph, v)}) "
            f"expected support {want}, got {got}"
        )
        raise typer.Exit(EXIT_MISMATCH)


@app.command()
def bench(
    input_path: Path = typer.Argument(..., help="Edge-list text file or CSR cache"),  # noqa: B008
    k: int | None = typer.Option(None, "--k", "-k", help="Truss parameter (>= 2)"),
    kmax: bool = typer.Option(False, "--kmax", help="Benchmark at the largest k"),
    strategies: list[Strategy] | None = typer.Option(  # noqa: B008
        None,
        "--strategy",
        "-s",
        case_sensitive=False,
        help="Strategy to time; repeat for several (default: coarse and fine)",
    ),
    threads: list[int] | None = typer.Option(  # noqa: B008
        None, "--threads", "-t", help="Worker count; repeat for a sweep"
    ),
    trials: int | None = typer.Option(
        None, "--trials", help="Timed repetitions per record (default 10)"
    ),
    output_format: str | None = typer.Option(
        None, "--format", "-f", help="Record format: csv or md"
    ),
    support_width: int | None = typer.Option(
        None,
        "--support-width",
        help="Support counter width in bits, 16 or 32 (default: configured width)",
    ),
    output: Path | None = typer.Option(  # noqa: B008
        None, "--output", "-o", help="Write records here instead of stdout"
    ),
):
    """Time the truss fixpoint across strategies and thread counts."""
    try:
        bench_config = get_configuration_service().get_bench_config()
        default_threads = _default_threads() or hardware_workers()
        config = CliConfig(
            command=Command.BENCH,
            input_path=input_path,
            k=k,
            kmax=kmax,
            strategies=strategies or [Strategy.COARSE, Strategy.FINE],
            threads=threads or [default_threads],
            trials=trials if trials is not None else bench_config.trials,
            output_format=output_format or bench_config.output_format,
            output=output,
            support_width=_support_width(support_width),
        )
        graph = load_graph(config.input_path)
        widest = max(config.threads)
        resolved = resolve_k(
            graph.csr, config.k_spec, Strategy.FINE, widest, config.support_width
        )
        check_strategy_agreement(
            graph.csr, resolved, config.strategies, widest, config.support_width
        )

        records = []
        for strategy in config.strategies:
            records.extend(
                thread_sweep(
                    graph.csr,
                    resolved,
                    strategy,
                    config.threads,
                    config.trials,
                    graph_name=graph.name,
                    num_edges=graph.num_edges,
                    support_width=config.support_width,
                    warmup=bench_config.warmup,
                )
            )
        write_output(emit_records(records, config.output_format), config.output)
    except StrategyMismatchError as e:
        display_error_message(str(e))
        raise typer.Exit(EXIT_MISMATCH)  # noqa: B904
    except INPUT_ERRORS as e:
        _input_failure(e)

    rows = speedup_rows(records)
    for row in rows:
        display_summary(
            f"speedup fine/coarse k={row.k} threads={row.threads}: {row.speedup:.3f}x"
        )
    if rows:
        display_summary(f"geometric mean speedup: {geometric_mean_speedup(rows):.3f}x")


@app.command()
def generate(
    kind: str = typer.Option("random", "--kind", help="random or skewed"),
    n: int = typer.Option(64, "-n", help="Vertex count (background size if skewed)"),
    p: float = typer.Option(0.1, "-p", help="Edge probability for random graphs"),
    seed: int = typer.Option(0, "--seed", help="Generator seed"),
    hub_degree: int = typer.Option(4096, "--hub-degree", help="Hub degree if skewed"),
    background_edges: int = typer.Option(
        100_000, "--background-edges", help="Background edge draws if skewed"
    ),
    output: Path | None = typer.Option(  # noqa: B008
        None, "--output", "-o", help="Write the edge list here instead of stdout"
    ),
):
    """Write a seeded synthetic graph as a canonical edge list."""
    try:
        config = CliConfig(command=Command.GENERATE, seed=seed, output=output)
        if kind == "random":
            edge_list = random_graph(n, p, config.seed)
        elif kind == "skewed":
            edge_list = skewed_graph(hub_degree, n, background_edges, config.seed)
        else:
            raise InvalidParameterError(
                f"unknown graph kind '{kind}' (expected random or skewed)"
            )

        buffer = io.StringIO()
        write_edge_list(edge_list, buffer)
        write_output(buffer.getvalue(), config.output)
    except INPUT_ERRORS as e:
        _input_failure(e)

    display_summary(f"vertices={edge_list.num_vertices} edges={edge_list.num_edges}")


if __name__ == "__main__":
    app()
