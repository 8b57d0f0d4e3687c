from __future__ import annotations

from typing import Any, Optional


class GraphError(ValueError):
    """Invalid operation on a probabilistic graph."""


class InfeasibleEnumeration(GraphError):
    """An exhaustive oracle would exceed its configured cap."""


class DatasetError(ValueError):
    """Malformed or inconsistent dataset input."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(ValueError):
    """Run configuration that cannot be executed."""


class TimeLimitExceeded(RuntimeError):
    """Raised when a run passes its deadline; carries what was done so far."""

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial
