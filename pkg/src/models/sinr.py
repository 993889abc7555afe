"""Data models for SINR parameters, power assignments and partitions."""

from dataclasses import dataclass, field, asdict
from typing import Any, Dict, FrozenSet, List, Tuple

import numpy as np

from config.settings import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_MODEL, DEFAULT_NOISE, DEFAULT_P_MAX
from src.models.errors import ConfigError


@dataclass(frozen=True)
class SINRParams:
    """Physical model parameters."""
    alpha: float = DEFAULT_ALPHA   # path-loss exponent
    beta: float = DEFAULT_BETA     # SINR threshold
    noise: float = DEFAULT_NOISE   # ambient noise N
    p_max: float = DEFAULT_P_MAX
    model: str = DEFAULT_MODEL     # "unbounded" or "bounded"
    strict: bool = False           # enforce c_v <= 2 * beta

    def __post_init__(self):
        if not self.alpha > 0:
            raise ConfigError("alpha", f"must be > 0, got {self.alpha}")
        if not self.beta > 0:
            raise ConfigError("beta", f"must be > 0, got {self.beta}")
        if not self.noise >= 0:
            raise ConfigError("noise", f"must be >= 0, got {self.noise}")
        if not self.p_max > 0:
            raise ConfigError("p_max", f"must be > 0, got {self.p_max}")
        if self.model not in ("unbounded", "bounded"):
            raise ConfigError("model", f"unknown model '{self.model}'")

    @property
    def bounded(self) -> bool:
        return self.model == "bounded"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class PowerAssignment:
    """Per-link transmit powers produced by a named scheme."""
    scheme: str
    powers: Tuple[float, ...]

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.powers, dtype=float)

    def __len__(self) -> int:
        return len(self.powers)


@dataclass
class Partition:
    """Disjoint groups of link ids produced by signal strengthening."""
    groups: List[FrozenSet[int]]
    target_count: int
    strength: float
    exceeds_target: bool = False
    max_loads: List[float] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.groups)

    def members(self) -> FrozenSet[int]:
        """Union of all groups."""
        return frozenset().union(*self.groups) if self.groups else frozenset()
