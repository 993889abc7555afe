"""Logging configuration and utilities."""

import logging
import colorlog
from pathlib import Path
from typing import Any, Dict, Optional
from config.settings import LOG_DIR, LOG_FILENAME, LOG_FORMAT, LOG_DATE_FORMAT

# Global error log file
ERROR_LOG_PATH = LOG_DIR / LOG_FILENAME


def setup_logging(verbose: bool = False, log_dir: Optional[Path] = None) -> None:
    """
    Set up logging configuration.

    Args:
        verbose: Enable verbose (DEBUG) logging
        log_dir: Directory for the error log (defaults to LOG_DIR)
    """
    global ERROR_LOG_PATH

    log_level = logging.DEBUG if verbose else logging.INFO

    log_dir = Path(log_dir) if log_dir else LOG_DIR
    log_dir.mkdir(parents=True, exist_ok=True)
    ERROR_LOG_PATH = log_dir / LOG_FILENAME

    file_formatter = logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT)

    # Console formatter with colors
    console_formatter = colorlog.ColoredFormatter(
        '%(log_color)s' + LOG_FORMAT,
        LOG_DATE_FORMAT,
        log_colors={
            'DEBUG': 'cyan',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'red,bg_white',
        }
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)

    # File handler for errors
    error_handler = logging.FileHandler(ERROR_LOG_PATH, mode='a')
    error_handler.setLevel(logging.ERROR)
    error_handler.setFormatter(file_formatter)
    root_logger.addHandler(error_handler)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


def log_error(message: str, file_path: Optional[Path] = None) -> None:
    """
    Log an error, tagging it with the related file if there is one.

    Args:
        message: Error message
        file_path: Optional file path related to the error (config, instance)
    """
    logger = get_logger("ERROR_LOGGER")

    if file_path:
        error_msg = f"[{file_path}] {message}"
    else:
        error_msg = message

    logger.error(error_msg)


def log_summary(stats: Dict[str, Any]) -> None:
    """
    Log an experiment summary.

    Args:
        stats: Statistics dictionary; ``rows`` holds per-(algorithm, scheme) means
    """
    logger = get_logger("SUMMARY")

    logger.info("=" * 60)
    logger.info("EXPERIMENT SUMMARY")
    logger.info("=" * 60)

    if "experiment" in stats:
        logger.info(f"Experiment: {stats['experiment']}")

    if "runs" in stats:
        logger.info(f"Runs: {stats['runs']}")

    for row in stats.get("rows", []):
        logger.info(
            f"{row['algorithm']:<12} {row['scheme']:<10} "
            f"mean={row['mean']:.3f} std={row['std']:.3f} (runs={row['count']})"
        )

    if stats.get("failed", 0) > 0:
        logger.warning(f"{stats['failed']} checks failed, see {ERROR_LOG_PATH}")

    logger.info("=" * 60)
