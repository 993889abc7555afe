"""Parser for experiment configuration files and command-line overrides."""

import dataclasses
from pathlib import Path
from typing import Any, Dict, Optional

from src.core.file_handler import FileHandler
from src.models.errors import ConfigError
from src.models.experiment import ExperimentConfig, GenConfig
from src.models.sinr import SINRParams
from src.utils.logger import get_logger

logger = get_logger(__name__)

_TUPLE_FIELDS = {"schemes", "algorithms", "n_values", "d_max_values"}


def _build(cls, data: Dict[str, Any], prefix: str):
    known = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in known:
            raise ConfigError(f"{prefix}{key}", "unknown field")
    try:
        return cls(**data)
    except TypeError as e:
        raise ConfigError(prefix.rstrip(".") or "config", str(e)) from e


def config_from_dict(data: Dict[str, Any]) -> ExperimentConfig:
    """
    Build an ExperimentConfig from a JSON-like dictionary.

    Nested ``params`` and ``gen`` objects map to SINRParams and GenConfig.

    Raises:
        ConfigError: unknown or ill-typed fields
    """
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be an object")

    data = dict(data)
    if "params" in data:
        data["params"] = _build(SINRParams, data["params"], "params.")
    if "gen" in data:
        data["gen"] = _build(GenConfig, data["gen"], "gen.")
    for key in _TUPLE_FIELDS & data.keys():
        value = data[key]
        if isinstance(value, str):
            value = [value]
        if not isinstance(value, list):
            raise ConfigError(key, "expected a list")
        data[key] = tuple(value)
    for key in ("instance_path", "output_dir"):
        if data.get(key) is not None:
            data[key] = Path(data[key])

    return _build(ExperimentConfig, data, "")


def load_config(path: Path) -> ExperimentConfig:
    """Read an experiment configuration JSON file."""
    logger.info(f"Loading experiment config from: {path}")
    return config_from_dict(FileHandler().read_json(Path(path)))


def apply_overrides(config: ExperimentConfig, overrides: Dict[str, Optional[Any]]) -> ExperimentConfig:
    """
    Apply command-line overrides; None values are ignored.

    Recognized keys: kind, n, dmax, world, alpha, beta, noise, model, schemes,
    algorithms, rounds, replicates, seed, out, instance, workers.
    """
    overrides = {k: v for k, v in overrides.items() if v is not None}

    params_changes = {
        field: overrides[key]
        for key, field in (("alpha", "alpha"), ("beta", "beta"), ("noise", "noise"), ("model", "model"))
        if key in overrides
    }
    gen_changes = {
        field: overrides[key]
        for key, field in (("n", "n"), ("dmax", "d_max"), ("world", "world"))
        if key in overrides
    }

    changes: Dict[str, Any] = {}
    if params_changes:
        changes["params"] = dataclasses.replace(config.params, **params_changes)
    if gen_changes:
        changes["gen"] = dataclasses.replace(config.gen, **gen_changes)
    for key, field in (("kind", "kind"), ("rounds", "rounds"), ("replicates", "replicates"),
                       ("seed", "seed"), ("workers", "workers")):
        if key in overrides:
            changes[field] = overrides[key]
    if "schemes" in overrides:
        changes["schemes"] = tuple(overrides["schemes"])
    if "algorithms" in overrides:
        changes["algorithms"] = tuple(overrides["algorithms"])
    if "out" in overrides:
        changes["output_dir"] = Path(overrides["out"])
    if "instance" in overrides:
        changes["instance_path"] = Path(overrides["instance"])
    if "n" in overrides:
        changes["n_values"] = (overrides["n"],)
    if "dmax" in overrides:
        changes["d_max_values"] = (overrides["dmax"],)

    return dataclasses.replace(config, **changes)
