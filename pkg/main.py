"""
Command-line entry point
"""
import argparse
import logging
import sys
from typing import List, Optional

from config import settings
from cli.commands import ExitCode, run_command
from services.analysis import SCALING_FAMILIES, KRule
from services.walk import SamplerMode

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Exits with the usage code instead of argparse's default 2"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--graph", help="Edge-list file")
    source.add_argument("--family", help="Family spec such as kneser:5,2 or random:20,0.3,7")


def _add_walk_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-steps", type=int, default=settings.DEFAULT_MAX_STEPS, help="Step budget per walk")
    parser.add_argument(
        "--mode",
        choices=[m.value for m in SamplerMode],
        default=settings.SAMPLER_MODE,
        help="Out-neighbor sampler",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog="edgecolor", description=settings.APP_NAME)
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at INFO level")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    gen = sub.add_parser("gen", help="Write a generated graph as an edge list")
    gen.add_argument("--family", required=True, help="Family spec such as kneser:5,2")
    gen.add_argument("-o", "--output", help="Output path (default: standard output)")

    walk = sub.add_parser("walk", help="Run one walk to a proper coloring")
    _add_graph_source(walk)
    walk.add_argument("-k", type=int, help="Number of colors (default: the init file's k, else max degree + 1)")
    walk.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    walk.add_argument("--init", default="random", help="random, monochromatic, or a coloring JSON file")
    walk.add_argument("--trace", help="Write a per-step CSV trace to this path")
    walk.add_argument("-o", "--output", help="Final coloring JSON path")
    _add_walk_flags(walk)

    vizing = sub.add_parser("vizing", help="Compute a monotone witness to a proper coloring")
    _add_graph_source(vizing)
    vizing.add_argument("-k", type=int)
    vizing.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="Seed of a random init")
    vizing.add_argument("--init", default="random", help="random, monochromatic, or a coloring JSON file")
    vizing.add_argument("-o", "--output", help="Witness JSON path")

    verify = sub.add_parser("verify", help="Replay a witness")
    verify.add_argument("witness", help="Witness JSON file")

    enumerate_ = sub.add_parser("enumerate", help="List all proper colorings")
    _add_graph_source(enumerate_)
    enumerate_.add_argument("-k", type=int)
    enumerate_.add_argument("--format", choices=["json", "csv"], default="json")
    enumerate_.add_argument("-o", "--output")

    stats = sub.add_parser("stats", help="Ensemble statistics of independent walks")
    _add_graph_source(stats)
    stats.add_argument("-k", type=int)
    stats.add_argument("--runs", type=int, default=1000)
    stats.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="Base seed")
    stats.add_argument("--init", default="random", help="random, monochromatic, or a coloring JSON file")
    stats.add_argument("--workers", type=int, default=settings.ENSEMBLE_WORKERS)
    stats.add_argument("-o", "--output")
    _add_walk_flags(stats)

    scaling = sub.add_parser("scaling", help="Walk length against n for a family")
    scaling.add_argument("--family", required=True, choices=SCALING_FAMILIES)
    scaling.add_argument("--sizes", required=True, help="Comma-separated size parameters, e.g. 2,3,4")
    scaling.add_argument("--k-rule", choices=[r.value for r in KRule], default=KRule.DELTA_PLUS_ONE.value)
    scaling.add_argument("--runs", type=int, default=10)
    scaling.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    scaling.add_argument("--max-steps", type=int, default=settings.DEFAULT_MAX_STEPS)
    scaling.add_argument("--format", choices=["csv", "json"], default="csv")
    scaling.add_argument("-o", "--output")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    # Configure logging
    logging.basicConfig(
        level=logging.INFO if (settings.DEBUG or args.verbose) else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    logger.info(f"Starting {settings.APP_NAME} v{settings.APP_VERSION}: {args.command}")

    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
