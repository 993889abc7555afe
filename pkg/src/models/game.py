"""Data models for the transmission game: learners, rounds, histories and statistics."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from src.models.network import Instance
from src.models.sinr import PowerAssignment, SINRParams

TRANSMIT = 1
SILENT = 0


@dataclass(frozen=True)
class LearnerState:
    """State of one link's learner (two actions: transmit / stay silent)."""
    kind: str  # "rwm" or "exp3"
    weight_transmit: float = 1.0
    weight_silent: float = 1.0
    gamma: float = 0.0  # exploration rate, EXP3 only
    rng: Optional[np.random.Generator] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RoundRecord:
    """Actions and outcomes of one round; utilities are +1 / -1 / 0."""
    round: int
    actions: Tuple[int, ...]
    successes: Tuple[int, ...]
    utilities: Tuple[int, ...]

    @property
    def attempts(self) -> int:
        return sum(self.actions)

    @property
    def success_count(self) -> int:
        return sum(self.successes)

    def transmitting(self) -> List[int]:
        return [i for i, a in enumerate(self.actions) if a == TRANSMIT]

    def succeeded(self) -> List[int]:
        return [i for i, s in enumerate(self.successes) if s]


@dataclass
class History:
    """Ordered round records of one game run, with its provenance."""
    instance: Instance
    params: SINRParams
    power: PowerAssignment
    learner_kind: str
    seed: int
    records: List[RoundRecord] = field(default_factory=list)

    @property
    def scheme(self) -> str:
        return self.power.scheme

    @property
    def rounds(self) -> int:
        return len(self.records)

    def actions_matrix(self) -> np.ndarray:
        """Boolean T x n matrix of transmit decisions."""
        if not self.records:
            return np.zeros((0, self.instance.n), dtype=bool)
        return np.array([r.actions for r in self.records], dtype=bool).reshape(self.rounds, self.instance.n)

    def successes_matrix(self) -> np.ndarray:
        """Boolean T x n matrix of successful transmissions."""
        if not self.records:
            return np.zeros((0, self.instance.n), dtype=bool)
        return np.array([r.successes for r in self.records], dtype=bool).reshape(self.rounds, self.instance.n)

    def utilities_matrix(self) -> np.ndarray:
        if not self.records:
            return np.zeros((0, self.instance.n), dtype=int)
        return np.array([r.utilities for r in self.records], dtype=int).reshape(self.rounds, self.instance.n)

    def attempts_per_round(self) -> np.ndarray:
        return np.array([r.attempts for r in self.records], dtype=int)

    def successes_per_round(self) -> np.ndarray:
        return np.array([r.success_count for r in self.records], dtype=int)

    def success_sets(self) -> List[List[int]]:
        """Per-round sets of links that transmitted successfully."""
        return [r.succeeded() for r in self.records]

    def to_frame(self) -> pd.DataFrame:
        """Per-round table with columns round, attempts, successes."""
        return pd.DataFrame({
            "round": [r.round for r in self.records],
            "attempts": self.attempts_per_round(),
            "successes": self.successes_per_round(),
        })


@dataclass
class GameStats:
    """Per-link fractions and aggregates derived from a history."""
    q: np.ndarray       # fraction of rounds transmitting
    x: np.ndarray       # fraction of rounds transmitting successfully
    f: np.ndarray       # fraction of rounds a transmission would have failed
    regret: np.ndarray  # measured external regret per link
    rounds: int

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def Q(self) -> float:
        return float(self.q.sum())

    @property
    def X(self) -> float:
        return float(self.x.sum())

    @property
    def epsilon(self) -> float:
        """Largest measured regret, floored at 0."""
        if not len(self.regret):
            return 0.0
        return max(0.0, float(self.regret.max()))

    def to_frame(self) -> pd.DataFrame:
        """Per-link table with columns link_id, q, x, f, regret."""
        return pd.DataFrame({
            "link_id": np.arange(self.n),
            "q": self.q,
            "x": self.x,
            "f": self.f,
            "regret": self.regret,
        })
