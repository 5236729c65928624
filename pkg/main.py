"""
relhyp: decide and certify relative hyperbolicity from combinatorial data.

Exit codes: 0 for any verdict, 2 for input errors, 3 when a resource cap is hit.
"""

import argparse
import json
import shlex
import sys
from typing import List, Optional, Sequence

from src import __version__
from src.commands import (
    CSV, JSON, cmd_curves_classify, cmd_curves_survey, cmd_experiment_rh_delta, cmd_hhs, cmd_metric_delta,
    cmd_racg_classify,
)
from src.utils.error_handler import InputError, ResourceCapError
from src.utils.logger import DEBUG, WARNING, add_file_handler, set_level, setup_logger
from src.utils.toolkit_config import ConfigManager

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relhyp", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=str, default=None, help="Path to a toolkit configuration JSON file.")
    parser.add_argument("--log-file", type=str, default=None, help="Also write detailed logs to this file.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log per-item detail.")
    verbosity.add_argument("--quiet", action="store_true", help="Only log warnings and errors.")
    commands = parser.add_subparsers(dest="command", required=True)

    racg = commands.add_parser("racg-classify", help="Classify a right-angled Coxeter group.")
    racg.add_argument("graph", help="Defining graph text file ('v name' and 'e a b' lines).")

    curves = commands.add_parser("curves-classify", help="Classify one graph of multicurves.")
    curves.add_argument("--kind", required=True, choices=["sep", "pants", "cut"])
    curves.add_argument("--surface", required=True, help="Surface type as 'g,n'.")

    survey = commands.add_parser("curves-survey", help="Classify every surface up to a 2g + n bound.")
    survey.add_argument("--kind", required=True, choices=["sep", "pants", "cut"])
    survey.add_argument("--max-bound", type=int, default=None, help="Largest 2g + n surveyed.")
    survey.add_argument("--format", choices=[CSV, JSON], default=CSV)

    experiment = commands.add_parser("experiment-rh-delta", help="δ of plain, factored and cusped Cayley balls.")
    experiment.add_argument("graph", help="Defining graph text file.")
    radii = experiment.add_mutually_exclusive_group(required=True)
    radii.add_argument("--radii", type=str, help="Radius range '2..5' or list '2,3,4'.")
    radii.add_argument("--radius", type=int, help="A single radius.")
    experiment.add_argument("--depth", type=int, default=None, help="Horoball depth; derived from the ball when omitted.")
    experiment.add_argument("--prune", action=argparse.BooleanOptionalAction, default=True,
                            help="Drop horizontal horoball edges that never lie on a geodesic.")
    experiment.add_argument("--cap-vertices", type=int, default=None, help="Largest space handed to exact δ.")
    experiment.add_argument("--format", choices=[CSV, JSON], default=CSV)

    delta = commands.add_parser("metric-delta", help="Four-point δ of a metric graph JSON document.")
    delta.add_argument("graph", help="Metric graph JSON file.")
    delta.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    delta.add_argument("--seed", type=int, default=None, help="Required in sampled mode.")
    delta.add_argument("--cap-vertices", type=int, default=None)

    hhs = commands.add_parser("hhs", help="Validate an index structure or search for an isolating collection.")
    hhs.add_argument("action", choices=["validate", "isolate"])
    hhs.add_argument("structure", help="Index structure JSON file.")
    hhs.add_argument("--clean-containers", action="store_true", help="Also check clean containers.")
    return parser


def run(args: argparse.Namespace, argv: Sequence[str] = ()) -> str:
    """Dispatch one parsed command; argv is recorded in the provenance of the result."""
    config = ConfigManager(args.config).get_config()
    config = config.with_overrides(delta_vertex_cap=getattr(args, "cap_vertices", None))
    if config.detailed_logging and not args.quiet:
        set_level(DEBUG)
    command = shlex.join(argv) if argv else None

    if args.command == "racg-classify":
        return cmd_racg_classify(args.graph, command)
    if args.command == "curves-classify":
        return cmd_curves_classify(args.kind, args.surface, config, command)
    if args.command == "curves-survey":
        return cmd_curves_survey(args.kind, args.max_bound, config, args.format)
    if args.command == "experiment-rh-delta":
        radii = args.radii if args.radii is not None else str(args.radius)
        return cmd_experiment_rh_delta(args.graph, radii, config, args.depth, args.prune, args.format)
    if args.command == "metric-delta":
        return cmd_metric_delta(args.graph, config, args.mode, args.seed, command)
    return cmd_hhs(args.action, args.structure, config, args.clean_containers, command)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(argv) if argv is not None else sys.argv[1:]
    args = build_parser().parse_args(argv)
    logger = setup_logger()
    if args.verbose:
        set_level(DEBUG)
    elif args.quiet:
        set_level(WARNING)
    if args.log_file:
        add_file_handler(args.log_file)

    try:
        output = run(args, argv)
    except ResourceCapError as e:
        logger.error(f"Resource cap exceeded: {e}")
        return EXIT_CAP
    except (InputError, json.JSONDecodeError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return EXIT_INPUT

    sys.stdout.write(output if output.endswith("\n") else output + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
