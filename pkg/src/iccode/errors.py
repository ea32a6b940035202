"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class ICError(Exception):
    """Base class for all library errors."""


class InputError(ICError, ValueError):
    """Malformed input: unknown vertices, bad labels, dimension mismatches."""


class ValidationError(ICError):
    """The digraph is not an IC structure with outer cycles.

    ``kind`` is one of ``i-cycle-found``, ``i-path-missing``,
    ``i-path-multiple``, ``dangling-vertex``, ``dangling-arc`` or
    ``too-few-inner``; ``witness`` carries the structured evidence.
    """

    def __init__(self, kind: str, message: str, witness: Any = None):
        super().__init__(message)
        self.kind = kind
        self.witness = witness

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": str(self), "witness": _jsonable(self.witness)}


class InconsistentClassification(ICError):
    """An inner vertex both reaches and is reached from the outer cycles."""

    def __init__(self, vertex: int):
        super().__init__(f"inner vertex {vertex} is in both V_I^in and V_I^out")
        self.vertex = vertex


class PartitionError(ICError):
    """A proposed inner bipartition breaks one of its invariants."""

    def __init__(self, kind: str, message: str, witness: Any = None):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


class PartitionMismatch(ICError):
    """The partition handed to the constructor does not fit the instance."""


class OuterCyclePresent(ICError):
    """The baseline construction needs an instance without outer cycles."""


class WitnessConstructionFailed(ICError):
    """No acyclic induced subgraph of the lower-bound shape could be built."""

    def __init__(self, component: str, message: str):
        super().__init__(message)
        self.component = component


class ResourceExceeded(ICError):
    """An exact search was asked to run beyond its configured size bound."""


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(x) for x in obj]
        return sorted(items) if isinstance(obj, (set, frozenset)) else items
    return obj
