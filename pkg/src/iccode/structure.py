"""Structural analysis of IC structures with outer cycles.

Covers validation of the inner vertex set, the table of unique I-paths,
the outer-cycle family and its interlocking verdict, the in/out/star split
of the inner vertices, the two optimality conditions, maximum disjoint
cycle selection and the inner-set bipartition used by the encoder.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .digraph import (
    Arc,
    Cycle,
    Digraph,
    Path,
    cycle_arcs,
    enumerate_simple_cycles,
    induced_subgraph,
    reachable,
    simple_paths,
)
from .errors import InconsistentClassification, InputError, PartitionError, ResourceExceeded, ValidationError

Pair = Tuple[int, int]

MAX_SEARCH_INNER = 24


class IPathTable(Mapping[Pair, Path]):
    """The unique I-path for every ordered pair of distinct inner vertices."""

    def __init__(self, paths: Mapping[Pair, Path]):
        self._paths = dict(sorted(paths.items()))

    def __getitem__(self, pair: Pair) -> Path:
        return self._paths[pair]

    def __iter__(self):
        return iter(self._paths)

    def __len__(self) -> int:
        return len(self._paths)

    def interior(self, pair: Pair) -> Path:
        return self._paths[pair][1:-1]

    def non_inner_usage(self) -> Counter:
        """Multiset of non-inner vertices over all stored I-paths."""
        usage: Counter = Counter()
        for path in self._paths.values():
            usage.update(path[1:-1])
        return usage


@dataclass(frozen=True)
class ICInstance:
    graph: Digraph
    inner: Tuple[int, ...]
    ipaths: IPathTable = field(repr=False, compare=False)
    cycles: Tuple[Cycle, ...] = field(default=(), repr=False, compare=False)

    @property
    def non_inner(self) -> Tuple[int, ...]:
        inner = set(self.inner)
        return tuple(v for v in self.graph.vertices if v not in inner)

    @property
    def n(self) -> int:
        return len(self.graph)

    @property
    def k(self) -> int:
        return len(self.inner)

    @property
    def outer_cycle_vertices(self) -> FrozenSet[int]:
        return frozenset(v for c in self.cycles for v in c)


def validate_ic_with_outer_cycles(g: Digraph, inner: Iterable[int], *, min_inner: int = 2) -> ICInstance:
    """Check Conditions 1-3 of an IC structure and tabulate the I-paths.

    Raises ValidationError with a structured witness on the first failure:
    I-cycles are looked for first, then missing or repeated I-paths (pairs
    in lexicographic order), then coverage.
    """
    inner_t = tuple(sorted(set(inner)))
    g.require(inner_t)
    if len(inner_t) < min_inner:
        raise ValidationError("too-few-inner", f"need at least {min_inner} inner vertices, got {len(inner_t)}")
    inner_set = set(inner_t)

    for i in inner_t:
        found = simple_paths(g, i, i, inner_set - {i}, limit=1)
        if found:
            raise ValidationError("i-cycle-found", f"I-cycle through inner vertex {i}: {found[0]}", found[0])

    paths: Dict[Pair, Path] = {}
    for i, j in itertools.permutations(inner_t, 2):
        found = simple_paths(g, i, j, inner_set - {i, j}, limit=2)
        if not found:
            raise ValidationError("i-path-missing", f"no I-path from {i} to {j}", (i, j))
        if len(found) > 1:
            raise ValidationError(
                "i-path-multiple",
                f"more than one I-path from {i} to {j}: {found[0]} and {found[1]}",
                {"pair": (i, j), "paths": [found[0], found[1]]},
            )
        paths[(i, j)] = found[0]

    non_inner = [v for v in g.vertices if v not in inner_set]
    cycles = tuple(enumerate_simple_cycles(induced_subgraph(g, non_inner)))
    _check_coverage(g, inner_set, paths.values(), cycles)
    return ICInstance(g, inner_t, IPathTable(paths), cycles)


def _check_coverage(g: Digraph, inner: set, paths: Iterable[Path], cycles: Sequence[Cycle]) -> None:
    # Pragmatic form of the rooted-tree condition: every arc must sit on an
    # I-path, on an outer cycle, or on an inner-free walk joining an outer
    # cycle vertex and an inner vertex (either direction).
    covered = set()
    for p in paths:
        covered.update(zip(p, p[1:]))
    for c in cycles:
        covered.update(cycle_arcs(c))
    oc = {v for c in cycles for v in c}
    if oc:
        ni = set(g.vertices) - inner
        from_oc = oc | (reachable(g, oc, through=ni) & ni)
        to_inner = reachable(g, inner, through=ni, reverse=True) & ni
        from_inner = reachable(g, inner, through=ni) & ni
        to_oc = oc | (reachable(g, oc, through=ni, reverse=True) & ni)
        for u, v in g.arcs:
            if u in from_oc and u in ni and (v in inner or v in to_inner):
                covered.add((u, v))
            if (u in inner or u in from_inner) and v in to_oc:
                covered.add((u, v))
    touched = {v for arc in covered for v in arc} | inner
    for v in g.vertices:
        if v not in touched:
            raise ValidationError("dangling-vertex", f"vertex {v} lies on no I-path or outer cycle", v)
    for arc in sorted(g.arcs):
        if arc not in covered:
            raise ValidationError("dangling-arc", f"arc {arc} lies on no I-path or outer cycle", arc)


@dataclass(frozen=True)
class CycleFamily:
    """Outer cycles with their pairwise intersections.

    ``central`` and ``chosen`` stay None until check_interlocking and
    max_disjoint_cycles fill them in.
    """

    cycles: Tuple[Cycle, ...]
    intersections: Mapping[Pair, FrozenSet[int]] = field(repr=False)
    exclusive: Tuple[FrozenSet[int], ...] = field(repr=False)
    central: Optional[Tuple[bool, ...]] = None
    chosen: Optional[Tuple[int, ...]] = None

    def __len__(self) -> int:
        return len(self.cycles)

    def vertex_set(self, i: int) -> FrozenSet[int]:
        return frozenset(self.cycles[i])

    def intersection(self, i: int, j: int) -> FrozenSet[int]:
        if i == j:
            return self.vertex_set(i)
        return self.intersections[(min(i, j), max(i, j))]

    @property
    def outer_vertices(self) -> FrozenSet[int]:
        return frozenset(v for c in self.cycles for v in c)

    @property
    def t(self) -> int:
        if self.chosen is None:
            raise ValueError("disjoint cycles not selected yet")
        return len(self.chosen)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Cycle]) -> "CycleFamily":
        sets = [frozenset(c) for c in cycles]
        inter = {(i, j): sets[i] & sets[j] for i, j in itertools.combinations(range(len(sets)), 2)}
        exclusive = []
        for j, s in enumerate(sets):
            others = set()
            for i in range(len(sets)):
                if i != j:
                    others |= s & sets[i]
            exclusive.append(frozenset(s - others))
        return cls(tuple(cycles), inter, tuple(exclusive))


def outer_cycles(inst: ICInstance) -> CycleFamily:
    return CycleFamily.from_cycles(inst.cycles)


@dataclass(frozen=True)
class InterlockVerdict:
    status: str  # interlocked | ilc-violation | ccc-violation | no-outer-cycles
    family: CycleFamily
    pair: Optional[Pair] = None
    shared: FrozenSet[int] = frozenset()

    @property
    def interlocked(self) -> bool:
        return self.status == "interlocked"


def _shares_one_path(a: Cycle, b: Cycle, shared: FrozenSet[int]) -> bool:
    if len(shared) == 1:
        return True
    arcs_a = {arc for arc in cycle_arcs(a) if arc[0] in shared and arc[1] in shared}
    arcs_b = {arc for arc in cycle_arcs(b) if arc[0] in shared and arc[1] in shared}
    return arcs_a == arcs_b and len(arcs_a) == len(shared) - 1


def central_flags(fam: CycleFamily) -> Tuple[bool, ...]:
    n = len(fam)
    flags = []
    for c in range(n):
        vc = fam.vertex_set(c)
        ok = all(fam.intersection(c, k) for k in range(n) if k != c)
        if ok:
            for i, k in itertools.combinations([x for x in range(n) if x != c], 2):
                shared = fam.intersection(i, k)
                if shared and not (shared & vc):
                    ok = False
                    break
        flags.append(ok)
    return tuple(flags)


def check_interlocking(fam: CycleFamily) -> InterlockVerdict:
    """ILC then CCC; the returned family carries the central-cycle flags."""
    if not fam.cycles:
        return InterlockVerdict("no-outer-cycles", fam)
    for (i, k), shared in sorted(fam.intersections.items()):
        if shared and not _shares_one_path(fam.cycles[i], fam.cycles[k], shared):
            flagged = replace(fam, central=central_flags(fam))
            return InterlockVerdict("ilc-violation", flagged, (i, k), shared)
    flagged = replace(fam, central=central_flags(fam))
    if not any(flagged.central):
        return InterlockVerdict("ccc-violation", flagged)
    return InterlockVerdict("interlocked", flagged)


@dataclass(frozen=True)
class InnerClassification:
    v_in: Tuple[int, ...]
    v_out: Tuple[int, ...]
    v_star: Tuple[int, ...]


def classify_inner(inst: ICInstance, fam: CycleFamily) -> InnerClassification:
    oc = fam.outer_vertices
    inner = set(inst.inner)
    ni = set(inst.non_inner)
    v_out, v_in = [], []
    for k in inst.inner:
        if reachable(inst.graph, [k], through=ni) & oc:
            v_out.append(k)
        if reachable(inst.graph, [k], through=ni, reverse=True) & oc:
            v_in.append(k)
    both = sorted(set(v_in) & set(v_out))
    if both:
        raise InconsistentClassification(both[0])
    star = tuple(k for k in inst.inner if k not in set(v_in) | set(v_out))
    assert inner == set(v_in) | set(v_out) | set(star)
    return InnerClassification(tuple(v_in), tuple(v_out), star)


@dataclass(frozen=True)
class OptConditionVerdict:
    which: str
    holds: bool
    witness: Optional[Tuple[int, int, int, int, int]] = None  # p, q, u, v, shared vertex


def check_opt_condition(inst: ICInstance, cls: InnerClassification, which: str) -> OptConditionVerdict:
    """Condition 1 ("cond1") or Condition 2 ("cond2") on I-path disjointness."""
    if which == "cond1":
        left, right = sorted(cls.v_in + cls.v_star), list(cls.v_out)
    elif which == "cond2":
        left, right = sorted(cls.v_out + cls.v_star), list(cls.v_in)
    else:
        raise InputError(f"unknown condition {which!r}")
    right_paths = [((u, v), set(inst.ipaths[(u, v)])) for u, v in itertools.permutations(right, 2)]
    for p, q in itertools.permutations(left, 2):
        pq = set(inst.ipaths[(p, q)])
        for (u, v), uv in right_paths:
            shared = pq & uv
            if shared:
                return OptConditionVerdict(which, False, (p, q, u, v, min(shared)))
    return OptConditionVerdict(which, True)


def max_disjoint_cycles(fam: CycleFamily) -> CycleFamily:
    """Maximum set of pairwise vertex-disjoint cycles, exact.

    Branch and bound on the cycle-intersection graph.  Include-first
    branching over ascending indices means the first maximum found is the
    lexicographically smallest one.
    """
    n = len(fam)
    conflict = [0] * n
    for (i, j), shared in fam.intersections.items():
        if shared:
            conflict[i] |= 1 << j
            conflict[j] |= 1 << i
    best: List[int] = []

    def search(idx: int, allowed: int, current: List[int]) -> None:
        nonlocal best
        if len(current) + bin(allowed >> idx).count("1") <= len(best):
            return
        while idx < n and not (allowed >> idx) & 1:
            idx += 1
        if idx == n:
            best = list(current)
            return
        current.append(idx)
        search(idx + 1, allowed & ~conflict[idx] & ~(1 << idx), current)
        current.pop()
        search(idx + 1, allowed & ~(1 << idx), current)

    search(0, (1 << n) - 1, [])
    return replace(fam, chosen=tuple(best))


@dataclass(frozen=True)
class InnerPartition:
    part1: Tuple[int, ...]
    part2: Tuple[int, ...]
    sub1: ICInstance
    sub2: ICInstance
    origin: str  # condition1 | condition2 | exhaustive-search | user-supplied


def sub_instance(inst: ICInstance, part: Sequence[int]) -> ICInstance:
    """The induced IC structure on ``part`` plus its internal I-path vertices.

    Raises PartitionError(kind="sub-invalid") when the induced structure is
    not itself an IC structure.
    """
    keep = set(part)
    for pair in itertools.permutations(sorted(part), 2):
        keep.update(inst.ipaths[pair])
    sub = induced_subgraph(inst.graph, keep)
    try:
        return validate_ic_with_outer_cycles(sub, part, min_inner=1)
    except ValidationError as exc:
        raise PartitionError("sub-invalid", f"sub-structure on {sorted(part)} is not an IC structure: {exc}", exc.kind)


def check_partition(
    inst: ICInstance, fam: CycleFamily, part1: Iterable[int], part2: Iterable[int], origin: str
) -> InnerPartition:
    p1, p2 = tuple(sorted(set(part1))), tuple(sorted(set(part2)))
    inner = set(inst.inner)
    if not p1 or not p2:
        raise PartitionError("empty-part", "both parts of the bipartition must be non-empty")
    if set(p1) & set(p2):
        raise PartitionError("overlap", f"parts overlap on {sorted(set(p1) & set(p2))}")
    if set(p1) | set(p2) != inner:
        raise PartitionError("not-a-bipartition", f"parts do not cover the inner set {sorted(inner)}")
    sub1 = sub_instance(inst, p1)
    sub2 = sub_instance(inst, p2)
    _check_subs(fam, sub1, sub2)
    return InnerPartition(p1, p2, sub1, sub2, origin)


def _check_subs(fam: CycleFamily, sub1: ICInstance, sub2: ICInstance) -> None:
    v1, v2 = set(sub1.graph.vertices), set(sub2.graph.vertices)
    common = v1 & v2
    if common:
        raise PartitionError("sub-overlap", f"sub-structures share vertex {min(common)}", min(common))
    oc = fam.outer_vertices
    for sub in (sub1, sub2):
        touch = set(sub.graph.vertices) & oc
        if touch:
            raise PartitionError("touches-outer-cycle", f"sub-structure contains outer-cycle vertex {min(touch)}", min(touch))
        if sub.cycles:
            raise PartitionError("sub-has-outer-cycle", f"sub-structure has a non-inner cycle {sub.cycles[0]}", sub.cycles[0])


def partition_inner(
    inst: ICInstance,
    fam: CycleFamily,
    cls: InnerClassification,
    cond1_holds: bool,
    cond2_holds: bool,
    override: Optional[Tuple[Sequence[int], Sequence[int]]] = None,
    max_inner: int = MAX_SEARCH_INNER,
) -> InnerPartition:
    """Split the inner set into two disjoint sub-structures clear of the outer cycles.

    Raises PartitionError(kind="infeasible") when exhaustive search finds
    nothing, or the specific invariant violation for a bad override.
    """
    if override is not None:
        return check_partition(inst, fam, override[0], override[1], "user-supplied")
    candidates = []
    if cond1_holds:
        candidates.append((cls.v_star + cls.v_in, cls.v_out, "condition1"))
    if cond2_holds:
        candidates.append((cls.v_in, cls.v_star + cls.v_out, "condition2"))
    for p1, p2, origin in candidates:
        if p1 and p2:
            return check_partition(inst, fam, p1, p2, origin)
    return _search_partition(inst, fam, max_inner)


def _search_partition(inst: ICInstance, fam: CycleFamily, max_inner: int) -> InnerPartition:
    inner = inst.inner
    k = len(inner)
    if k > max_inner:
        raise ResourceExceeded(f"exhaustive bipartition search capped at {max_inner} inner vertices, got {k}")
    cache: Dict[Tuple[int, ...], Optional[ICInstance]] = {}

    def sub_or_none(part: Tuple[int, ...]) -> Optional[ICInstance]:
        if part not in cache:
            try:
                sub = sub_instance(inst, part)
                cache[part] = None if sub.cycles or (set(sub.graph.vertices) & fam.outer_vertices) else sub
            except PartitionError:
                cache[part] = None
        return cache[part]

    for size in range(1, k // 2 + 1):
        for combo in itertools.combinations(inner, size):
            if 2 * size == k and combo[0] != inner[0]:
                continue
            rest = tuple(v for v in inner if v not in combo)
            sub1 = sub_or_none(combo)
            if sub1 is None:
                continue
            sub2 = sub_or_none(rest)
            if sub2 is None:
                continue
            if set(sub1.graph.vertices) & set(sub2.graph.vertices):
                continue
            return InnerPartition(combo, rest, sub1, sub2, "exhaustive-search")
    raise PartitionError("infeasible", "no bipartition of the inner set yields two disjoint IC structures clear of the outer cycles")
