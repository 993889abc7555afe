"""Result models for schedules and verification reports."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.models.sinr import PowerAssignment


@dataclass(frozen=True)
class ScheduleResult:
    """Active set chosen by a centralized algorithm."""
    algorithm: str
    active: Tuple[int, ...]
    power: PowerAssignment
    feasible: bool
    threshold: Optional[float] = None  # HW constant c, where applicable

    @property
    def size(self) -> int:
        return len(self.active)

    def to_row(self) -> Dict[str, Any]:
        """Row for the experiment CSV: algorithm, c, active_count, feasible."""
        return {
            "algorithm": self.algorithm,
            "c": self.threshold,
            "active_count": self.size,
            "feasible": self.feasible,
        }


@dataclass
class Report:
    """Outcome of a structural check."""
    check: str
    passed: bool
    witnesses: List[Any] = field(default_factory=list)
    measured: Dict[str, Any] = field(default_factory=dict)
    inconclusive: bool = False
    notes: str = ""

    def __post_init__(self):
        if not self.passed and not self.witnesses:
            raise ValueError(f"failed report '{self.check}' must carry witnesses")

    @property
    def key_metric(self) -> Any:
        """Headline value written to the run log."""
        return self.measured.get("key_metric")

    def to_row(self, instance_id: Any) -> Dict[str, Any]:
        return {
            "check": self.check,
            "instance_id": instance_id,
            "pass": self.passed,
            "key_metric": self.key_metric,
        }
