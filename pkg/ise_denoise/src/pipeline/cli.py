"""Command-line surface: ``ise-denoise <subcommand> ...``.

Exit codes: 0 success, 1 validation or usage error, 2 I/O or parse error.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Sequence

from pydantic import ValidationError

from ise_denoise.src.errors import DomainError, ParseError, StateError
from ise_denoise.src.pipeline import commands
from ise_denoise.src.pipeline.config import load_config
from ise_denoise.src.pipeline.dataset import SplitSpec
from ise_denoise.src.settings import VALID_LOG_LEVELS, settings
from ise_denoise.utils.pylogger import force_reconfigure_all_loggers, get_python_logger
from ise_denoise.utils.toon_utils import format_response

logger = get_python_logger()

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class UsageError(Exception):
    """Raised instead of argparse's own exit so usage errors share exit code 1."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _config_options() -> argparse.ArgumentParser:
    parent = ArgumentParser(add_help=False)
    parent.add_argument(
        "--config",
        default=None,
        help="pipeline config file, or 'default' for the built-in protocol",
    )
    parent.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override one config key (repeatable)",
    )
    return parent


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="ise-denoise",
        description="Simulate ion-selective electrode traces, fit calibrations and "
        "train the artifact-removal network.",
    )
    parser.add_argument(
        "--log-level",
        choices=VALID_LOG_LEVELS,
        type=str.upper,
        default=None,
        help="overrides PYTHON_LOG_LEVEL",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    config_parent = _config_options()

    simulate = sub.add_parser("simulate", parents=[config_parent], help="write synthetic traces")
    simulate.add_argument("--out", type=Path, required=True, help="output directory")

    calibrate = sub.add_parser(
        "calibrate", parents=[config_parent], help="fit exponential calibrations"
    )
    calibrate.add_argument("--traces", required=True, help="glob of trace CSV files")
    calibrate.add_argument("--ion", required=True, help="ion name, or 'all'")
    calibrate.add_argument("--out", type=Path, required=True, help="calibration CSV")

    dataset = sub.add_parser("dataset", help="build and split a dataset from traces")
    dataset.add_argument("--traces", required=True, help="glob of trace CSV files")
    dataset.add_argument("--floor", type=float, default=1e-6, help="mmol/L")
    dataset.add_argument("--split", type=float, default=0.2, help="test fraction")
    dataset.add_argument("--seed", type=int, default=42)
    dataset.add_argument("--window", type=int, default=1)
    dataset.add_argument("--stable-only", action="store_true")
    dataset.add_argument("--out-train", type=Path, required=True)
    dataset.add_argument("--out-test", type=Path, required=True)

    train = sub.add_parser("train", parents=[config_parent], help="train the network")
    train.add_argument("--train", type=Path, required=True, help="training dataset CSV")
    train.add_argument("--test", type=Path, required=True, help="test dataset CSV")
    train.add_argument("--arch", default=None, help="preset (model1..model5) or widths")
    train.add_argument("--out", type=Path, required=True, help="model file")

    infer = sub.add_parser("infer", help="predict concentrations from voltages")
    infer.add_argument("--model", type=Path, required=True)
    infer.add_argument("--in", dest="in_path", type=Path, required=True)
    infer.add_argument("--out", type=Path, required=True)

    evaluate = sub.add_parser(
        "eval", parents=[config_parent], help="score the network and the baselines"
    )
    evaluate.add_argument("--model", type=Path, required=True)
    evaluate.add_argument("--test", type=Path, required=True)
    evaluate.add_argument("--baselines", type=Path, default=None, help="calibration CSV")
    evaluate.add_argument(
        "--train", type=Path, default=None, help="training CSV for the quadratic baseline"
    )
    evaluate.add_argument("--report", type=Path, required=True)

    report = sub.add_parser("report", help="tabulate report files")
    report.add_argument("--inputs", type=Path, nargs="+", required=True)
    report.add_argument("--out", type=Path, required=True)

    reproduce = sub.add_parser(
        "reproduce", parents=[config_parent], help="run the whole experiment"
    )
    reproduce.add_argument("--out", type=Path, required=True, help="output directory")
    return parser


def dispatch(args: argparse.Namespace) -> Dict[str, Any]:
    command = args.command
    if command in ("dataset", "infer", "report"):
        config = None
    else:
        config = load_config(args.config or settings.ISE_CONFIG, args.overrides)

    if command == "simulate":
        return commands.simulate_command(config, args.out)
    if command == "calibrate":
        return commands.calibrate_command(config, args.traces, args.ion, args.out)
    if command == "dataset":
        return commands.dataset_command(
            args.traces,
            args.floor,
            SplitSpec(test_fraction=args.split, seed=args.seed),
            args.out_train,
            args.out_test,
            args.stable_only,
            args.window,
        )
    if command == "train":
        return commands.train_command(config, args.train, args.test, args.out, args.arch)
    if command == "infer":
        return commands.infer_command(args.model, args.in_path, args.out)
    if command == "eval":
        return commands.eval_command(
            config, args.model, args.test, args.baselines, args.report, args.train
        )
    if command == "report":
        return commands.report_command(args.inputs, args.out)
    return commands.reproduce_command(config, args.out)


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_VALIDATION

    if args.log_level:
        force_reconfigure_all_loggers(args.log_level)

    try:
        summary = dispatch(args)
    except (DomainError, StateError, ValidationError) as e:
        logger.error("Validation error", command=args.command, error=str(e))
        return EXIT_VALIDATION
    except (ParseError, OSError) as e:
        logger.error("Input/output error", command=args.command, error=str(e))
        return EXIT_IO
    except Exception as e:
        logger.critical(
            "Unexpected error", command=args.command, error=str(e), exc_info=True
        )
        return EXIT_VALIDATION

    print(format_response(summary))
    return EXIT_OK
