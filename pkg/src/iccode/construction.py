"""Scalar-linear XOR index codes over GF(2).

Algorithm 1 builds, in order: the two inner sums, the chain symbols of each
chosen disjoint cycle, the out-neighbourhood XORs of the non-inner vertices
of both sub-structures, and uncoded symbols for whatever is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InputError, OuterCyclePresent, PartitionMismatch
from .structure import CycleFamily, ICInstance, InnerPartition


@dataclass(frozen=True)
class CodeSymbol:
    support: Tuple[int, ...]  # sorted message labels XORed together
    provenance: str

    def to_dict(self) -> dict:
        return {"support": list(self.support), "provenance": self.provenance}


@dataclass(frozen=True)
class IndexCode:
    vertices: Tuple[int, ...]
    rows: Tuple[CodeSymbol, ...]

    @property
    def n_messages(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.rows)

    def bitmasks(self) -> List[int]:
        """Rows as int bitsets, bit k standing for the k-th smallest label."""
        pos = {v: k for k, v in enumerate(self.vertices)}
        masks = []
        for row in self.rows:
            m = 0
            for v in row.support:
                m ^= 1 << pos[v]
            masks.append(m)
        return masks

    def to_dict(self) -> dict:
        return {
            "n": self.n_messages,
            "vertices": list(self.vertices),
            "rows": [r.to_dict() for r in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IndexCode":
        n = int(data["n"])
        vertices = tuple(data.get("vertices", range(1, n + 1)))
        if len(vertices) != n:
            raise InputError(f"code declares n={n} but lists {len(vertices)} vertices")
        known = set(vertices)
        rows = []
        for r in data["rows"]:
            support = tuple(sorted(r["support"]))
            if not support or len(set(support)) != len(support) or not set(support) <= known:
                raise InputError(f"bad row support {r['support']!r}")
            rows.append(CodeSymbol(support, str(r["provenance"])))
        return cls(vertices, tuple(rows))


def _symbol(support: Iterable[int], provenance: str) -> CodeSymbol:
    s = tuple(sorted(set(support)))
    if not s:
        raise PartitionMismatch(f"empty support for {provenance}")
    return CodeSymbol(s, provenance)


def _ic_rows(sub: ICInstance, which: int) -> List[CodeSymbol]:
    rows = [_symbol(sub.inner, f"inner-sum-{which}")]
    for j in sub.non_inner:
        rows.append(_symbol((j,) + sub.graph.successors(j), f"non-inner-xor:{j}"))
    return rows


def construct_algorithm1(inst: ICInstance, fam: CycleFamily, partition: InnerPartition) -> IndexCode:
    if fam.chosen is None:
        raise PartitionMismatch("disjoint cycle selection missing")
    v1 = set(partition.sub1.graph.vertices)
    v2 = set(partition.sub2.graph.vertices)
    if set(partition.part1) | set(partition.part2) != set(inst.inner) or set(partition.part1) & set(partition.part2):
        raise PartitionMismatch("partition does not split the inner set")
    if v1 & v2:
        raise PartitionMismatch(f"sub-structures overlap on {sorted(v1 & v2)}")
    cycle_vertices = set()
    for idx in fam.chosen:
        cyc = set(fam.cycles[idx])
        if cyc & cycle_vertices:
            raise PartitionMismatch(f"chosen cycles are not disjoint (cycle {idx})")
        cycle_vertices |= cyc
    if cycle_vertices & (v1 | v2):
        raise PartitionMismatch("sub-structures meet the chosen cycles")

    inner_rows1 = _ic_rows(partition.sub1, 1)
    inner_rows2 = _ic_rows(partition.sub2, 2)
    rows = [inner_rows1[0], inner_rows2[0]]
    for idx in sorted(fam.chosen):
        cyc = fam.cycles[idx]
        for pos in range(len(cyc) - 1):
            rows.append(_symbol((cyc[pos], cyc[pos + 1]), f"cycle-chain:{idx}:{pos}"))
    rows.extend(inner_rows1[1:])
    rows.extend(inner_rows2[1:])
    for j in inst.graph.vertices:
        if j not in cycle_vertices and j not in v1 and j not in v2:
            rows.append(_symbol((j,), f"uncoded:{j}"))
    code = IndexCode(inst.graph.vertices, tuple(rows))
    expected = inst.n - inst.k + 2 - len(fam.chosen)
    if len(code) != expected:
        raise PartitionMismatch(f"emitted {len(code)} symbols, expected N-K+2-t = {expected}")
    return code


def construct_baseline_toj(inst: ICInstance) -> IndexCode:
    """One inner sum plus one out-neighbourhood XOR per non-inner vertex."""
    if inst.cycles:
        raise OuterCyclePresent("baseline construction needs an instance without outer cycles")
    return IndexCode(inst.graph.vertices, tuple(_ic_rows(inst, 1)))


def identity_code(vertices: Sequence[int]) -> IndexCode:
    return IndexCode(tuple(vertices), tuple(_symbol((v,), f"uncoded:{v}") for v in vertices))


def code_length_report(inst: ICInstance, fam: CycleFamily, code: IndexCode = None) -> Dict[str, int]:
    alg1 = inst.n - inst.k + 2 - fam.t
    if code is not None and len(code) != alg1:
        raise PartitionMismatch(f"code has {len(code)} rows but N-K+2-t = {alg1}")
    return {"alg1_len": alg1, "baseline_len": inst.n - inst.k + 1, "saving": fam.t - 1}
