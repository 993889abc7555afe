"""Exception types raised by the simulator."""

from typing import Optional, Tuple


class SinrGameError(Exception):
    """Base class for all simulator errors."""


class MetricValidationError(SinrGameError, ValueError):
    """A distance table violates a metric axiom."""

    def __init__(self, axiom: str, witness: Tuple[int, ...], message: str):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} violated at {witness}: {message}")


class InstanceFormatError(SinrGameError, ValueError):
    """An instance file or structure is malformed."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"invalid field '{field}': {message}")


class InfeasibleLinkError(SinrGameError, ValueError):
    """A link cannot reach the SINR threshold even when transmitting alone."""

    def __init__(self, link_id: int, message: str = "link infeasible under noise"):
        self.link_id = link_id
        super().__init__(f"link {link_id}: {message}")


class InfeasibleSetError(SinrGameError, ValueError):
    """An operation that needs a feasible (or signal) set received one that is not."""

    def __init__(self, message: str, witness: Optional[int] = None):
        self.witness = witness
        super().__init__(message)


class OracleSizeError(SinrGameError, ValueError):
    """An exact oracle was asked to enumerate an instance that is too large."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"oracle limited to {limit} links, got {n}")


class FormulaDomainError(SinrGameError, ValueError):
    """A closed-form constant is evaluated outside its domain."""


class ConfigError(SinrGameError, ValueError):
    """An experiment configuration is invalid."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"config field '{field}': {message}")
