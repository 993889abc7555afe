"""Data models for instance generation and experiment configuration."""

from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from config.settings import (
    ALGORITHMS,
    DEFAULT_D_MAX,
    DEFAULT_D_MAX_VALUES,
    DEFAULT_N,
    DEFAULT_N_VALUES,
    DEFAULT_REPLICATES,
    DEFAULT_ROUNDS,
    DEFAULT_SEED,
    DEFAULT_TIGHT_D,
    DEFAULT_WORKERS,
    DEFAULT_WORLD_SIZE,
    EXPERIMENT_KINDS,
    FIXED_POWER_SCHEMES,
    OUTPUT_DIR,
)
from src.models.errors import ConfigError
from src.models.sinr import SINRParams


@dataclass(frozen=True)
class GenConfig:
    """Parameters of the random topology generator."""
    n: int = DEFAULT_N
    d_max: float = DEFAULT_D_MAX
    world: float = DEFAULT_WORLD_SIZE
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError("n", f"must be an integer >= 1, got {self.n}")
        if not self.d_max > 0:
            raise ConfigError("d_max", f"must be > 0, got {self.d_max}")
        if not self.world > 0:
            raise ConfigError("world", f"must be > 0, got {self.world}")


@dataclass
class ExperimentConfig:
    """Everything an experiment run depends on; outputs are a pure function of it."""
    kind: str = "convergence"
    params: SINRParams = field(default_factory=SINRParams)
    gen: GenConfig = field(default_factory=GenConfig)
    instance_path: Optional[Path] = None
    schemes: Tuple[str, ...] = ("uniform", "mean", "linear")
    algorithms: Tuple[str, ...] = ("game_rwm",)
    rounds: int = DEFAULT_ROUNDS
    replicates: int = DEFAULT_REPLICATES
    seed: int = DEFAULT_SEED
    output_dir: Path = OUTPUT_DIR
    n_values: Tuple[int, ...] = DEFAULT_N_VALUES
    d_max_values: Tuple[float, ...] = DEFAULT_D_MAX_VALUES
    tight_d: float = DEFAULT_TIGHT_D
    workers: int = DEFAULT_WORKERS

    def validate(self) -> None:
        """Raise ConfigError naming the first invalid field."""
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError("kind", f"unknown experiment '{self.kind}'")
        if not self.schemes:
            raise ConfigError("schemes", "at least one scheme is required")
        for scheme in self.schemes:
            if scheme not in FIXED_POWER_SCHEMES:
                raise ConfigError("schemes", f"unknown scheme '{scheme}'")
        if not self.algorithms:
            raise ConfigError("algorithms", "at least one algorithm is required")
        for algorithm in self.algorithms:
            if algorithm not in ALGORITHMS:
                raise ConfigError("algorithms", f"unknown algorithm '{algorithm}'")
        if self.rounds < 1:
            raise ConfigError("rounds", f"must be >= 1, got {self.rounds}")
        if self.replicates < 1:
            raise ConfigError("replicates", f"must be >= 1, got {self.replicates}")
        if self.workers < 1:
            raise ConfigError("workers", f"must be >= 1, got {self.workers}")
        if any(n < 1 for n in self.n_values):
            raise ConfigError("n_values", "all values must be >= 1")
        if any(d <= 0 for d in self.d_max_values):
            raise ConfigError("d_max_values", "all values must be > 0")
        if self.tight_d < 3:
            raise ConfigError("tight_d", f"must be >= 3, got {self.tight_d}")

    def to_dict(self) -> Dict[str, Any]:
        """JSON-friendly view used in CSV provenance headers (output location excluded)."""
        data = asdict(self)
        data["instance_path"] = str(self.instance_path) if self.instance_path else None
        del data["output_dir"]
        data["schemes"] = list(self.schemes)
        data["algorithms"] = list(self.algorithms)
        data["n_values"] = list(self.n_values)
        data["d_max_values"] = list(self.d_max_values)
        return data
