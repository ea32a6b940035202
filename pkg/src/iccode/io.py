"""JSON instance files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Any, Dict, List, Optional, Tuple, Union

from .digraph import Digraph
from .errors import InputError

EXPECTED_KEYS = ("alg1_len", "baseline_len", "t", "mais_lower_bound", "verdict", "status", "error_kind", "interlocking")


@dataclass(frozen=True)
class InstanceFile:
    vertices: Tuple[int, ...]
    arcs: Tuple[Tuple[int, int], ...]
    inner: Tuple[int, ...]
    partition_override: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    expected: Dict[str, Any] = field(default_factory=dict)
    comment: str = ""
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.vertices)

    def digraph(self) -> Digraph:
        return Digraph(self.vertices, self.arcs)

    def to_dict(self) -> dict:
        out: Dict[str, Any] = {}
        if self.comment:
            out["comment"] = self.comment
        out["n"] = self.n
        out["vertices"] = list(self.vertices)
        out["arcs"] = [list(a) for a in self.arcs]
        out["inner"] = list(self.inner)
        if self.partition_override is not None:
            out["partition_override"] = [list(p) for p in self.partition_override]
        if self.expected:
            out["expected"] = dict(self.expected)
        return out


def _int_list(value: Any, what: str) -> List[int]:
    if not isinstance(value, list):
        raise InputError(f"{what} must be a list")
    for x in value:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InputError(f"{what} must contain integers, got {x!r}")
    return list(value)


def parse_instance(data: Any, name: str = "") -> InstanceFile:
    if not isinstance(data, dict):
        raise InputError("instance must be a JSON object")
    for key in ("vertices", "arcs", "inner"):
        if key not in data:
            raise InputError(f"missing field {key!r}")
    vertices = _int_list(data["vertices"], "vertices")
    if len(set(vertices)) != len(vertices):
        raise InputError("vertex labels must be unique")
    if "n" in data and data["n"] != len(vertices):
        raise InputError(f"n={data['n']} but {len(vertices)} vertices listed")
    if not isinstance(data["arcs"], list):
        raise InputError("arcs must be a list")
    arcs = []
    for a in data["arcs"]:
        pair = _int_list(a, "arc")
        if len(pair) != 2:
            raise InputError(f"arc must have two endpoints, got {a!r}")
        arcs.append((pair[0], pair[1]))
    inner = _int_list(data["inner"], "inner")
    if not set(inner) <= set(vertices):
        raise InputError(f"inner vertices {sorted(set(inner) - set(vertices))} are not declared")
    override = None
    if data.get("partition_override") is not None:
        po = data["partition_override"]
        if not isinstance(po, list) or len(po) != 2:
            raise InputError("partition_override must be a list of two label lists")
        override = (tuple(_int_list(po[0], "partition_override")), tuple(_int_list(po[1], "partition_override")))
    expected = data.get("expected") or {}
    if not isinstance(expected, dict):
        raise InputError("expected must be an object")
    unknown = sorted(set(expected) - set(EXPECTED_KEYS))
    if unknown:
        raise InputError(f"unknown expected keys {unknown}")
    inst = InstanceFile(
        tuple(sorted(vertices)),
        tuple(sorted(arcs)),
        tuple(sorted(inner)),
        override,
        dict(expected),
        str(data.get("comment", "")),
        name,
    )
    inst.digraph()  # surfaces self-loops, duplicates, unknown endpoints
    return inst


def load_instance(path: Union[str, FsPath]) -> InstanceFile:
    p = FsPath(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: malformed JSON: {exc}") from exc
    return parse_instance(data, p.stem)


def dump_instance(inst: InstanceFile) -> str:
    return json.dumps(inst.to_dict(), indent=2) + "\n"


def parse_override(text: str) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Parse ``"a,b,c/d,e"`` into two label tuples."""
    halves = text.split("/")
    if len(halves) != 2:
        raise InputError(f"partition override must look like 'a,b/c,d', got {text!r}")
    try:
        parts = tuple(tuple(int(x) for x in h.split(",") if x.strip()) for h in halves)
    except ValueError as exc:
        raise InputError(f"bad partition override {text!r}") from exc
    return parts[0], parts[1]
