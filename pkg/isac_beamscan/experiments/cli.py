"""``isac-beamscan`` command line.

Usage:
    isac-beamscan fig3 --config scenario.conf --out results/ --workers 4
    isac-beamscan sweep --out results/ --sweep n_ses:4:16:3:doubling

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

import argparse
import asyncio
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from isac_beamscan import __version__
from isac_beamscan.core.logging import PACKAGE_LOGGER, get_logger
from isac_beamscan.core.pipeline import StageFailedError
from isac_beamscan.errors import ConfigError, IsacError
from isac_beamscan.experiments.main import run_experiment
from isac_beamscan.experiments.spec import (
    ExperimentSpec,
    Figure,
    parse_multiples,
    parse_sweep,
    parse_theta_set,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isac-beamscan",
        description="Reproduce the beam-scanning sensing and rate experiments as CSV files.",
    )
    parser.add_argument("figure", choices=[f.value for f in Figure])
    parser.add_argument(
        "--config", type=Path, default=None, help="scenario file (default: packaged scenario)"
    )
    parser.add_argument("--out", type=Path, required=True, help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="noise seed (unsigned 64-bit)")
    parser.add_argument("--trials", type=int, default=None, help="Monte Carlo trials per point")
    parser.add_argument("--workers", type=int, default=1, help="Monte Carlo worker processes")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a scenario key (repeatable)",
    )
    parser.add_argument(
        "--theta-set", default=None, metavar="DEG,DEG,...", help="target angles for fig3"
    )
    parser.add_argument(
        "--sweep", default=None, metavar="KEY:START:STOP:POINTS:SCALE", help="axis for sweep"
    )
    parser.add_argument("--grid-points", type=int, default=2048, help="coarse MLE grid size")
    parser.add_argument(
        "--scan-multiples",
        default=None,
        metavar="M,M,...",
        help="codebook sizes of fig4/fig5 in units of n_res (default 1,2,4,8)",
    )
    parser.add_argument("--log-level", choices=_LOG_LEVELS, default="WARNING")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    """Validate parsed arguments into an ExperimentSpec.

    Raises:
        ConfigError: An argument value is invalid.
    """
    extra = {}
    if args.scan_multiples:
        extra["scan_multiples"] = parse_multiples(args.scan_multiples)
    return ExperimentSpec(
        figure=Figure(args.figure),
        output_dir=args.out,
        config_path=args.config,
        workers=args.workers,
        trials=args.trials,
        seed=args.seed,
        overrides=tuple(args.overrides),
        theta_set_deg=parse_theta_set(args.theta_set) if args.theta_set else (),
        sweep=parse_sweep(args.sweep) if args.sweep else None,
        grid_points=args.grid_points,
        **extra,
    )


def _report(log: logging.Logger, message: str, error: Exception) -> None:
    log.debug(message, extra={"error": str(error), "error_type": type(error).__name__})
    print(f"isac-beamscan: {message}: {error}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    log = get_logger(PACKAGE_LOGGER, getattr(logging, args.log_level))

    try:
        spec = spec_from_args(args)
        result = asyncio.run(run_experiment(spec))
    except ConfigError as e:
        _report(log, "configuration error", e)
        return EXIT_CONFIG
    except StageFailedError as e:
        if isinstance(e.original, ConfigError):
            _report(log, "configuration error", e.original)
            return EXIT_CONFIG
        _report(log, "run failed", e)
        return EXIT_RUNTIME
    except ValidationError as e:
        _report(log, "configuration error", e)
        return EXIT_CONFIG
    except (IsacError, OSError) as e:
        _report(log, "run failed", e)
        return EXIT_RUNTIME

    print(result.csv_path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
