"""Immutable digraph substrate: paths, simple cycles, induced subgraphs.

Vertices are non-negative integer labels, never assumed contiguous.  Every
enumeration walks vertices and successors in ascending label order so that
results are deterministic.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .errors import InputError

Arc = Tuple[int, int]
Path = Tuple[int, ...]
Cycle = Tuple[int, ...]


class Digraph:
    """A simple directed graph (no self-loops, no parallel arcs)."""

    __slots__ = ("_vertices", "_succ", "_pred", "_arcs")

    def __init__(self, vertices: Iterable[int], arcs: Iterable[Arc] = ()):
        verts = sorted(set(vertices))
        for v in verts:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InputError(f"vertex labels must be non-negative integers, got {v!r}")
        vset = set(verts)
        succ: Dict[int, Set[int]] = {v: set() for v in verts}
        pred: Dict[int, Set[int]] = {v: set() for v in verts}
        arc_set = set()
        for tail, head in arcs:
            if tail not in vset or head not in vset:
                raise InputError(f"arc ({tail}, {head}) references an unknown vertex")
            if tail == head:
                raise InputError(f"self-loop at vertex {tail}")
            if (tail, head) in arc_set:
                raise InputError(f"duplicate arc ({tail}, {head})")
            arc_set.add((tail, head))
            succ[tail].add(head)
            pred[head].add(tail)
        self._vertices: Tuple[int, ...] = tuple(verts)
        self._succ = {v: tuple(sorted(s)) for v, s in succ.items()}
        self._pred = {v: tuple(sorted(p)) for v, p in pred.items()}
        self._arcs: FrozenSet[Arc] = frozenset(arc_set)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def arcs(self) -> FrozenSet[Arc]:
        return self._arcs

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self._arcs)

    def successors(self, v: int) -> Tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> Tuple[int, ...]:
        return self._pred[v]

    def has_arc(self, tail: int, head: int) -> bool:
        return (tail, head) in self._arcs

    def __contains__(self, v: object) -> bool:
        return v in self._succ

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._vertices, self._arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={len(self._vertices)}, m={len(self._arcs)})"

    def require(self, vertices: Iterable[int]) -> None:
        """Raise InputError if any of ``vertices`` is not in the graph."""
        missing = sorted(v for v in vertices if v not in self._succ)
        if missing:
            raise InputError(f"unknown vertices: {missing}")


def induced_subgraph(g: Digraph, keep: Iterable[int]) -> Digraph:
    keep = set(keep)
    g.require(keep)
    arcs = [(u, v) for (u, v) in g.arcs if u in keep and v in keep]
    return Digraph(keep, arcs)


def is_acyclic(g: Digraph) -> bool:
    indeg = {v: len(g.predecessors(v)) for v in g.vertices}
    queue = deque(v for v, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in g.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(g)


def is_acyclic_on(g: Digraph, keep: Iterable[int]) -> bool:
    """Acyclicity of the subgraph induced by ``keep``, without building it."""
    keep = set(keep)
    indeg = {v: sum(1 for u in g.predecessors(v) if u in keep) for v in keep}
    queue = deque(v for v, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in g.successors(v):
            if w in keep:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
    return seen == len(keep)


def simple_paths(
    g: Digraph,
    source: int,
    target: int,
    forbidden_interior: Iterable[int] = (),
    limit: Optional[int] = None,
) -> List[Path]:
    """All simple paths from ``source`` to ``target`` avoiding ``forbidden_interior``.

    Endpoints are exempt from the ban.  Paths come out in lexicographic
    order of their vertex sequences.  With ``source == target`` the result
    is the simple cycles through ``source``, written with the source
    repeated at the end.  ``limit`` stops the search early once that many
    paths have been found.
    """
    g.require((source, target))
    banned = set(forbidden_interior) - {source, target}
    found: List[Path] = []
    path = [source]
    on_path = {source}
    stack: List[Iterator[int]] = [iter(g.successors(source))]
    while stack:
        if limit is not None and len(found) >= limit:
            break
        w = next(stack[-1], None)
        if w is None:
            stack.pop()
            on_path.discard(path.pop())
            continue
        if w == target:
            found.append(tuple(path) + (w,))
            continue
        if w in on_path or w in banned:
            continue
        path.append(w)
        on_path.add(w)
        stack.append(iter(g.successors(w)))
    return found


def strongly_connected_components(g: Digraph, within: Optional[Set[int]] = None) -> List[FrozenSet[int]]:
    """Tarjan's algorithm, iterative; optionally restricted to ``within``."""
    verts = [v for v in g.vertices if within is None or v in within]
    allowed = set(verts)
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Set[int] = set()
    stack: List[int] = []
    comps: List[FrozenSet[int]] = []
    counter = 0
    for root in verts:
        if root in index:
            continue
        work = [(root, iter(g.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in allowed:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return comps


def canonical_cycle(vertices: Iterable[int]) -> Cycle:
    """Rotate a cycle so that it starts at its minimum label."""
    seq = list(vertices)
    if not seq:
        raise InputError("empty cycle")
    k = seq.index(min(seq))
    return tuple(seq[k:] + seq[:k])


def is_cycle_of(g: Digraph, cycle: Cycle) -> bool:
    if len(set(cycle)) != len(cycle) or len(cycle) < 2:
        return False
    return all(g.has_arc(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


def cycle_arcs(cycle: Cycle) -> List[Arc]:
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def enumerate_simple_cycles(g: Digraph) -> List[Cycle]:
    """Every simple directed cycle once, canonically rotated, sorted.

    Johnson's algorithm: for each start vertex s (ascending) search the
    strongly connected component of s inside the subgraph on labels >= s,
    with the blocked-set bookkeeping that keeps the search output-sensitive.
    """
    cycles: List[Cycle] = []
    verts = g.vertices
    for pos, s in enumerate(verts):
        allowed = set(verts[pos:])
        comp = next(c for c in strongly_connected_components(g, allowed) if s in c)
        if len(comp) < 2:
            continue
        succ = {v: [w for w in g.successors(v) if w in comp] for v in comp}
        blocked = {s}
        blocked_by: Dict[int, Set[int]] = defaultdict(set)
        path = [s]
        closed = [False]
        stack = [(s, iter(succ[s]))]
        while stack:
            v, nbrs = stack[-1]
            w = next(nbrs, None)
            if w is not None:
                if w == s:
                    cycles.append(tuple(path))
                    closed[-1] = True
                elif w not in blocked:
                    path.append(w)
                    closed.append(False)
                    stack.append((w, iter(succ[w])))
                    blocked.add(w)
                continue
            stack.pop()
            path.pop()
            if closed.pop():
                _unblock(v, blocked, blocked_by)
                if closed:
                    closed[-1] = True
            else:
                for u in succ[v]:
                    blocked_by[u].add(v)
    cycles.sort()
    return cycles


def _unblock(v: int, blocked: Set[int], blocked_by: Dict[int, Set[int]]) -> None:
    todo = [v]
    while todo:
        u = todo.pop()
        if u in blocked:
            blocked.discard(u)
            todo.extend(blocked_by[u])
            blocked_by[u].clear()


def reachable(g: Digraph, sources: Iterable[int], through: Optional[Set[int]] = None, reverse: bool = False) -> Set[int]:
    """Vertices reachable from ``sources`` by at least one arc.

    When ``through`` is given, only vertices in ``through`` may be
    expanded (entered and left); vertices outside it are still reported
    when they are hit, but the walk stops there.
    """
    step = g.predecessors if reverse else g.successors
    seen: Set[int] = set()
    frontier = list(sources)
    expanded: Set[int] = set()
    while frontier:
        v = frontier.pop()
        if v in expanded:
            continue
        expanded.add(v)
        for w in step(v):
            if w not in seen:
                seen.add(w)
            if (through is None or w in through) and w not in expanded:
                frontier.append(w)
    return seen
