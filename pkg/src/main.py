"""Command-line entry point for the SINR capacity game experiments."""

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from config.settings import (
    ALGORITHMS,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_RUNTIME_ERROR,
    EXIT_VERIFY_FAILED,
    EXPERIMENT_KINDS,
    FIXED_POWER_SCHEMES,
    LOG_DIR,
)
from src.core.experiment import emit_summary, run_experiment
from src.models.errors import SinrGameError
from src.models.experiment import ExperimentConfig
from src.parsers.config_parser import apply_overrides, load_config
from src.utils.logger import get_logger, log_error, setup_logging

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; every flag overrides the matching config field."""
    parser = argparse.ArgumentParser(
        description="Simulate the SINR capacity game and verify its structural guarantees"
    )

    parser.add_argument("-c", "--config", type=Path, help="Experiment config JSON")
    parser.add_argument("-e", "--experiment", choices=EXPERIMENT_KINDS, help="Experiment to run")
    parser.add_argument("--n", type=int, help="Number of links")
    parser.add_argument("--dmax", type=float, help="Maximum link length of generated instances")
    parser.add_argument("--world", type=float, help="Side of the square generated points lie in")
    parser.add_argument("--alpha", type=float, help="Path-loss exponent")
    parser.add_argument("--beta", type=float, help="SINR threshold")
    parser.add_argument("--noise", type=float, help="Ambient noise")
    parser.add_argument("--model", choices=("unbounded", "bounded"), help="Received-power model")
    parser.add_argument("--scheme", action="append", choices=FIXED_POWER_SCHEMES,
                        help="Power scheme (repeatable)")
    parser.add_argument("--algo", action="append", choices=ALGORITHMS, help="Algorithm (repeatable)")
    parser.add_argument("--rounds", type=int, help="Rounds per game")
    parser.add_argument("--replicates", type=int, help="Replicates per point")
    parser.add_argument("--seed", type=int, help="Root random seed")
    parser.add_argument("-o", "--out", type=Path, help="Output directory for CSV files")
    parser.add_argument("--instance", type=Path, help="Instance JSON to use instead of a generated one")
    parser.add_argument("--workers", type=int, help="Worker processes")
    parser.add_argument("-v", "--verbose", action="store_true", help="Verbose logging")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (if any) with command-line overrides applied on top."""
    config = load_config(args.config) if args.config else ExperimentConfig()
    return apply_overrides(config, {
        "kind": args.experiment,
        "n": args.n,
        "dmax": args.dmax,
        "world": args.world,
        "alpha": args.alpha,
        "beta": args.beta,
        "noise": args.noise,
        "model": args.model,
        "schemes": args.scheme,
        "algorithms": args.algo,
        "rounds": args.rounds,
        "replicates": args.replicates,
        "seed": args.seed,
        "out": args.out,
        "instance": args.instance,
        "workers": args.workers,
    })


def main(argv: Optional[List[str]] = None) -> None:
    """
    Run one experiment and exit.

    Exit codes: 0 success, 1 configuration or input error, 2 a verification check failed,
    3 unexpected runtime failure.
    """
    args = build_parser().parse_args(argv)
    log_dir = args.out / "logs" if args.out else LOG_DIR
    setup_logging(verbose=args.verbose, log_dir=log_dir)

    start_time = time.time()

    try:
        config = resolve_config(args)
        outputs = run_experiment(config)
        emit_summary(outputs)
    except (SinrGameError, FileNotFoundError) as e:
        log_error(f"Configuration error: {e}", args.config)
        sys.exit(EXIT_CONFIG_ERROR)
    except KeyboardInterrupt:
        logger.info("Experiment interrupted by user")
        sys.exit(130)
    except Exception as e:
        log_error(f"Runtime error: {type(e).__name__}: {e}")
        logger.debug("Traceback", exc_info=True)
        sys.exit(EXIT_RUNTIME_ERROR)

    elapsed_time = time.time() - start_time
    logger.info(f"Time elapsed: {elapsed_time:.1f} seconds")
    logger.info(f"Results saved to: {outputs.output_dir}")

    if outputs.failed_checks:
        logger.error(f"{outputs.failed_checks} verification checks failed")
        sys.exit(EXIT_VERIFY_FAILED)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
