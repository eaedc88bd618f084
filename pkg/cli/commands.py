"""
Subcommand handlers of the edge-coloring command line
"""
from argparse import Namespace
from enum import IntEnum
from pathlib import Path
from typing import Callable, Optional, Tuple
import csv
import io
import logging
import sys

import numpy as np
from pydantic import ValidationError

from cli.schemas import ColoringDocument, EnumerationDocument, WitnessDocument
from models.coloring import ColoringError, EdgeColoring
from models.generators import parse_family_spec
from models.graph import Graph, GraphError, read_edge_list, write_edge_list
from services.analysis import (
    BudgetExceededError,
    KRule,
    enumerate_proper_colorings,
    run_ensemble,
    scaling_experiment,
    write_scaling_csv,
)
from services.vizing import DriverError, PreconditionError, find_proper_coloring
from services.walk import (
    InitMode,
    SamplerMode,
    WalkConfig,
    WalkError,
    WalkOutcome,
    detect_frozen,
    run_walk,
    write_trace,
)
from services.witness import verify_witness

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    USAGE = 1
    BUDGET = 2
    STUCK = 3
    INVALID_WITNESS = 4
    ENUMERATION_BUDGET = 5


class UsageError(ValueError):
    """Raised on inconsistent command-line flags"""


# ----------------------------------------------------------------------
# helpers

def _emit(text: str, out: Optional[str]) -> None:
    """Write ``text`` to the ``-o`` path, or to standard output"""
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _say(message: str, out: Optional[str]) -> None:
    """Human-readable summary; stays off standard output when data goes there"""
    print(message, file=sys.stdout if out else sys.stderr)


def _init_document(args: Namespace) -> Optional[ColoringDocument]:
    init = getattr(args, "init", None)
    if init is None or init in {mode.value for mode in InitMode}:
        return None
    return ColoringDocument.model_validate_json(Path(init).read_text(encoding="utf-8"))


def load_graph(args: Namespace) -> Tuple[Graph, Optional[ColoringDocument]]:
    """
    Resolve the graph from ``--graph`` or ``--family``, falling back to the
    graph of an ``--init`` coloring file.

    Returns:
        The graph and the parsed init document, if any
    """
    document = _init_document(args)
    if getattr(args, "graph", None):
        graph = read_edge_list(Path(args.graph).read_text(encoding="utf-8"))
    elif getattr(args, "family", None):
        graph = parse_family_spec(args.family)
    elif document is not None:
        graph = document.to_graph()
    else:
        raise UsageError("a graph is required: pass --graph, --family or an --init coloring file")
    return graph, document


def _resolve_k(args: Namespace, graph: Graph, document: Optional[ColoringDocument]) -> int:
    if getattr(args, "k", None) is not None:
        return args.k
    if document is not None:
        return document.k
    return graph.max_degree + 1


def _start_coloring(
    args: Namespace,
    graph: Graph,
    k: int,
    document: Optional[ColoringDocument],
) -> Optional[EdgeColoring]:
    """Initial coloring named by ``--init``; None means draw it from the walk's generator"""
    if document is not None:
        if document.k != k:
            raise UsageError(f"--init coloring uses k={document.k} but k={k} was requested")
        return document.to_coloring(graph)
    if args.init == InitMode.MONOCHROMATIC.value:
        return EdgeColoring.monochromatic(graph, k)
    if args.init == InitMode.GIVEN.value:
        raise UsageError("--init given needs a coloring file; pass its path to --init")
    return None


# ----------------------------------------------------------------------
# subcommands

def cmd_gen(args: Namespace) -> int:
    """Write a family member as an edge list and print n, m and the maximum degree"""
    graph = parse_family_spec(args.family)
    _emit(write_edge_list(graph), args.output)
    _say(f"n={graph.n} m={graph.m} max_degree={graph.max_degree}", args.output)
    return ExitCode.OK


def cmd_walk(args: Namespace) -> int:
    """Run one walk and write its final coloring"""
    graph, document = load_graph(args)
    k = _resolve_k(args, graph, document)
    start = _start_coloring(args, graph, k, document)
    cfg = WalkConfig(
        k=k,
        max_steps=args.max_steps,
        seed=args.seed,
        sampler_mode=SamplerMode(args.mode),
        init=InitMode.MONOCHROMATIC if args.init == InitMode.MONOCHROMATIC.value else InitMode.RANDOM,
        record_trace=bool(args.trace),
    )
    result = run_walk(graph, cfg, start)

    _emit(ColoringDocument.from_coloring(result.final).model_dump_json(indent=2, by_alias=True) + "\n", args.output)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as stream:
            write_trace(result, stream)

    summary = f"outcome={result.outcome.value} steps={result.steps_taken} potential={result.final.potential}"
    if cfg.sampler_mode == SamplerMode.REJECTION:
        summary += f" accepted={result.accepted} rejected={result.rejected}"
    if result.outcome == WalkOutcome.PROPER:
        summary += f" frozen={str(detect_frozen(result.final)).lower()}"
    _say(summary, args.output)

    if result.outcome == WalkOutcome.BUDGET_EXHAUSTED:
        logger.warning(f"Step budget of {cfg.max_steps} exhausted")
        return ExitCode.BUDGET
    if result.outcome == WalkOutcome.STUCK:
        logger.warning("No out-neighbor left: the walk is stuck")
        return ExitCode.STUCK
    return ExitCode.OK


def cmd_vizing(args: Namespace) -> int:
    """Compute a monotone witness to a proper coloring"""
    graph, document = load_graph(args)
    k = _resolve_k(args, graph, document)
    if k < graph.max_degree + 1:
        raise PreconditionError(
            f"k={k} is too small: the monotone recoloring guarantee needs k >= max degree + 1 = {graph.max_degree + 1}"
        )
    start = _start_coloring(args, graph, k, document)
    if start is None:
        start = EdgeColoring.random(graph, k, np.random.default_rng(args.seed))

    witness = find_proper_coloring(graph, k, start)
    _emit(WitnessDocument.from_witness(witness).model_dump_json(indent=2, by_alias=True) + "\n", args.output)
    _say(f"steps={len(witness)} initial_potential={start.potential}", args.output)
    return ExitCode.OK


def cmd_verify(args: Namespace) -> int:
    """Replay a witness file; exit 0 iff it is sound"""
    try:
        witness = WitnessDocument.model_validate_json(
            Path(args.witness).read_text(encoding="utf-8")
        ).to_witness()
    except (ValidationError, GraphError, ColoringError, ValueError) as e:
        logger.error(f"Unreadable witness {args.witness}: {e}")
        print(f"invalid: {e}", file=sys.stderr)
        return ExitCode.INVALID_WITNESS

    report = verify_witness(witness)
    if not report.valid:
        print(f"invalid at step {report.failed_step}: {report.reason}")
        return ExitCode.INVALID_WITNESS
    print(f"valid: {report.steps_checked} steps, final potential {report.final_potential}")
    return ExitCode.OK


def cmd_enumerate(args: Namespace) -> int:
    """List every proper k-edge-coloring"""
    graph, document = load_graph(args)
    k = _resolve_k(args, graph, document)
    colorings = enumerate_proper_colorings(graph, k)

    if args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([f"e{i}" for i in range(graph.m)])
        writer.writerows(coloring.key() for coloring in colorings)
        text = buffer.getvalue()
    else:
        text = EnumerationDocument(
            n=graph.n,
            k=k,
            edges=[list(e) for e in graph.edges],
            count=len(colorings),
            assignments=[list(c.key()) for c in colorings],
        ).model_dump_json(indent=2) + "\n"
    _emit(text, args.output)
    _say(f"count={len(colorings)}", args.output)
    return ExitCode.OK


def cmd_stats(args: Namespace) -> int:
    """Run an ensemble of walks and report outcome and uniformity statistics"""
    graph, document = load_graph(args)
    k = _resolve_k(args, graph, document)
    start = _start_coloring(args, graph, k, document)
    cfg = WalkConfig(k=k, max_steps=args.max_steps, seed=args.seed, sampler_mode=SamplerMode(args.mode))
    report = run_ensemble(graph, cfg, args.runs, workers=args.workers, start=start)
    _emit(report.model_dump_json(indent=2) + "\n", args.output)
    _say(f"runs={report.runs} outcomes={report.outcomes} tv={report.tv_distance}", args.output)
    return ExitCode.OK


def cmd_scaling(args: Namespace) -> int:
    """Tabulate walk lengths against n for a graph family"""
    try:
        sizes = [int(token) for token in args.sizes.split(",") if token.strip()]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    rows = scaling_experiment(
        args.family,
        sizes,
        k_rule=KRule(args.k_rule),
        runs=args.runs,
        seed=args.seed,
        max_steps=args.max_steps,
    )
    if args.format == "json":
        text = "[\n" + ",\n".join(row.model_dump_json() for row in rows) + ("\n" if rows else "") + "]\n"
    else:
        buffer = io.StringIO()
        write_scaling_csv(rows, buffer)
        text = buffer.getvalue()
    _emit(text, args.output)
    return ExitCode.OK


COMMANDS = {
    "gen": cmd_gen,
    "walk": cmd_walk,
    "vizing": cmd_vizing,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "stats": cmd_stats,
    "scaling": cmd_scaling,
}


def run_command(args: Namespace) -> int:
    """
    Dispatch to a subcommand handler and map errors to exit codes.

    Returns:
        Process exit code
    """
    handler: Callable[[Namespace], int] = COMMANDS[args.command]
    try:
        return int(handler(args))
    except BudgetExceededError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.ENUMERATION_BUDGET
    except (
        UsageError,
        GraphError,
        ColoringError,
        WalkError,
        PreconditionError,
        ValidationError,
        ValueError,
        OSError,
    ) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except DriverError as e:
        logger.error(f"{args.command}: driver failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE


__all__ = ["ExitCode", "COMMANDS", "run_command", "load_graph"]

