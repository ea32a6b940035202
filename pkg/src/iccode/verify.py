"""Decodability, MAIS and the optimality certificate."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .construction import IndexCode
from .digraph import Digraph, is_acyclic_on
from .errors import InputError, ResourceExceeded, WitnessConstructionFailed
from .gf2 import EchelonBasis
from .structure import CycleFamily, ICInstance, InnerClassification

DEFAULT_MAX_EXACT = 40


@dataclass(frozen=True)
class SideInfoModel:
    """Single-unicast receivers: receiver i wants x_i and knows x_j for each arc (i, j)."""

    vertices: Tuple[int, ...]
    knowledge: Dict[int, frozenset]

    @classmethod
    def from_digraph(cls, g: Digraph) -> "SideInfoModel":
        return cls(g.vertices, {v: frozenset(g.successors(v)) for v in g.vertices})

    def demand(self, i: int) -> frozenset:
        return frozenset((i,))


@dataclass(frozen=True)
class DecodeVerdict:
    ok: bool
    undecodable: Tuple[int, ...] = ()


def verify_decodable(model: SideInfoModel, code: IndexCode) -> DecodeVerdict:
    """Receiver i decodes iff e_i lies in rowspan(code) + span{e_j : j in K_i}."""
    if code.vertices != model.vertices:
        raise InputError(
            f"code is over {code.n_messages} messages {list(code.vertices)[:5]}..., "
            f"model has {len(model.vertices)} receivers"
        )
    pos = {v: k for k, v in enumerate(model.vertices)}
    rows = code.bitmasks()
    failed = []
    for i in model.vertices:
        known = 0
        for j in model.knowledge[i]:
            known |= 1 << pos[j]
        basis = EchelonBasis(r & ~known for r in rows)
        if not basis.contains(1 << pos[i]):
            failed.append(i)
    return DecodeVerdict(not failed, tuple(failed))


# --- minimum feedback vertex set -------------------------------------------

class _Graph:
    """Mutable adjacency used by the feedback-vertex-set search; self-loops allowed."""

    __slots__ = ("succ", "pred")

    def __init__(self, succ: Dict[int, Set[int]], pred: Dict[int, Set[int]]):
        self.succ = succ
        self.pred = pred

    @classmethod
    def of(cls, g: Digraph) -> "_Graph":
        return cls({v: set(g.successors(v)) for v in g.vertices}, {v: set(g.predecessors(v)) for v in g.vertices})

    def copy(self) -> "_Graph":
        return _Graph({v: set(s) for v, s in self.succ.items()}, {v: set(p) for v, p in self.pred.items()})

    def restrict(self, keep: Set[int]) -> "_Graph":
        return _Graph(
            {v: self.succ[v] & keep for v in keep},
            {v: self.pred[v] & keep for v in keep},
        )

    def remove(self, v: int) -> None:
        for w in self.succ.pop(v):
            if w != v:
                self.pred[w].discard(v)
        for u in self.pred.pop(v):
            if u != v:
                self.succ[u].discard(v)

    def bypass(self, v: int) -> None:
        """Delete v, joining each predecessor to each successor."""
        ins = self.pred[v] - {v}
        outs = self.succ[v] - {v}
        self.remove(v)
        for u in ins:
            for w in outs:
                self.succ[u].add(w)
                self.pred[w].add(u)

    def __len__(self) -> int:
        return len(self.succ)


def _reduce(g: _Graph, forced: Set[int]) -> None:
    # Safe rules: self-loop => must delete; in/out-degree 0 => on no cycle;
    # in/out-degree 1 => some min solution avoids v, so bypass it.
    changed = True
    while changed:
        changed = False
        for v in sorted(g.succ):
            if v not in g.succ:
                continue
            if v in g.succ[v]:
                forced.add(v)
                g.remove(v)
                changed = True
            elif not g.pred[v] or not g.succ[v]:
                g.remove(v)
                changed = True
            elif len(g.pred[v]) == 1 or len(g.succ[v]) == 1:
                g.bypass(v)
                changed = True


def _sccs(g: _Graph) -> List[Set[int]]:
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    stack: List[int] = []
    on: Set[int] = set()
    out: List[Set[int]] = []
    counter = 0
    for root in sorted(g.succ):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        work = [(root, iter(sorted(g.succ[root])))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(sorted(g.succ[w]))))
                    pushed = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _shortest_cycle(g: _Graph) -> Optional[List[int]]:
    best: Optional[List[int]] = None
    for s in sorted(g.succ):
        parent = {s: None}
        frontier = [s]
        found = None
        while frontier and found is None:
            nxt = []
            for u in frontier:
                for w in sorted(g.succ[u]):
                    if w == s:
                        found = u
                        break
                    if w not in parent:
                        parent[w] = u
                        nxt.append(w)
                if found is not None:
                    break
            frontier = nxt
        if found is not None:
            cyc = []
            u = found
            while u is not None:
                cyc.append(u)
                u = parent[u]
            if best is None or len(cyc) < len(best):
                best = cyc
                if len(best) <= 2:
                    break
    return best


def _packing_bound(g: _Graph) -> int:
    h = g.copy()
    count = 0
    while True:
        cyc = _shortest_cycle(h)
        if cyc is None:
            return count
        count += 1
        for v in cyc:
            h.remove(v)


def _greedy(g: _Graph) -> Set[int]:
    h = g.copy()
    sol: Set[int] = set()
    while True:
        _reduce(h, sol)
        if not len(h):
            return sol
        v = max(sorted(h.succ), key=lambda x: len(h.pred[x]) * len(h.succ[x]))
        sol.add(v)
        h.remove(v)


def _solve(g: _Graph) -> Set[int]:
    forced: Set[int] = set()
    g = g.copy()
    _reduce(g, forced)
    result = set(forced)
    for comp in _sccs(g):
        if len(comp) > 1:
            result |= _solve_component(g.restrict(comp))
    return result


def _solve_component(g: _Graph) -> Set[int]:
    upper = _greedy(g)
    for budget in range(_packing_bound(g), len(upper)):
        sol = _decide(g, budget)
        if sol is not None:
            return sol
    return upper


def _decide(g: _Graph, budget: int) -> Optional[Set[int]]:
    """A feedback vertex set of size <= budget, or None."""
    forced: Set[int] = set()
    g = g.copy()
    _reduce(g, forced)
    budget -= len(forced)
    if budget < 0:
        return None
    if not len(g):
        return forced
    if budget == 0:
        return None
    comps = [c for c in _sccs(g) if len(c) > 1]
    if len(comps) > 1:
        total = set(forced)
        for comp in comps:
            total |= _solve(g.restrict(comp))
            if len(total) - len(forced) > budget:
                return None
        return total
    if _packing_bound(g) > budget:
        return None
    v = max(sorted(g.succ), key=lambda x: len(g.pred[x]) * len(g.succ[x]))
    deleted = g.copy()
    deleted.remove(v)
    sol = _decide(deleted, budget - 1)
    if sol is not None:
        return forced | sol | {v}
    kept = g.copy()
    kept.bypass(v)
    sol = _decide(kept, budget)
    if sol is not None:
        return forced | sol
    return None


def min_feedback_vertex_set(g: Digraph) -> Set[int]:
    return _solve(_Graph.of(g))


@dataclass(frozen=True)
class MaisResult:
    value: int
    witness: Tuple[int, ...]


def mais_exact(g: Digraph, max_vertices: int = DEFAULT_MAX_EXACT) -> MaisResult:
    """Order of a maximum induced acyclic subgraph: |V| minus a minimum FVS."""
    if len(g) > max_vertices:
        raise ResourceExceeded(f"exact MAIS limited to {max_vertices} vertices, graph has {len(g)}")
    fvs = min_feedback_vertex_set(g)
    keep = tuple(v for v in g.vertices if v not in fvs)
    if not is_acyclic_on(g, keep):
        raise AssertionError("feedback vertex set search returned a non-feedback set")
    return MaisResult(len(keep), keep)


# --- lower-bound witness ----------------------------------------------------

@dataclass(frozen=True)
class MaisWitness:
    removed: Tuple[int, ...]
    pair: Tuple[int, int]  # (i in V_I^out, j in V_I^in)
    vertices: Tuple[int, ...]
    hitting_matches_t: bool

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "removed": list(self.removed),
            "pair": list(self.pair),
            "size": self.size,
            "vertices": list(self.vertices),
            "hitting_set_matches_t": self.hitting_matches_t,
        }


MAX_HITTING_COMBINATIONS = 2_000_000


def minimum_hitting_sets(fam: CycleFamily) -> List[Tuple[int, ...]]:
    """All minimum vertex sets meeting every outer cycle, in lexicographic order."""
    universe = sorted(fam.outer_vertices)
    sets = [fam.vertex_set(i) for i in range(len(fam))]
    if not sets:
        return [()]
    examined = 0
    for size in range(1, len(universe) + 1):
        hits = []
        for combo in itertools.combinations(universe, size):
            examined += 1
            if examined > MAX_HITTING_COMBINATIONS:
                raise ResourceExceeded("hitting-set search exceeded its combination budget")
            chosen = set(combo)
            if all(s & chosen for s in sets):
                hits.append(combo)
        if hits:
            return hits
    raise AssertionError("unreachable: the full universe hits every cycle")


def mais_witness_check(inst: ICInstance, fam: CycleFamily, cls: InnerClassification) -> MaisWitness:
    """Build the acyclic set V_NI + {i, j} - S that proves MAIS >= N-K+2-t.

    Pairs (i, j) with i in V_I^out and j in V_I^in are tried in
    lexicographic order, and for each pair every minimum hitting set S in
    lexicographic order; the first combination whose I-path from i to j
    meets S and whose induced subgraph is acyclic wins.
    """
    if fam.chosen is None:
        raise WitnessConstructionFailed("input", "disjoint cycle selection missing")
    if not fam.cycles:
        raise WitnessConstructionFailed("cycles", "no outer cycles")
    hitting = minimum_hitting_sets(fam)
    matches = len(hitting[0]) == fam.t
    ni = set(inst.non_inner)
    if not cls.v_out or not cls.v_in:
        raise WitnessConstructionFailed("classification", "V_I^out or V_I^in is empty")
    for i in cls.v_out:
        for j in cls.v_in:
            path = set(inst.ipaths[(i, j)])
            for s in hitting:
                if not path & set(s):
                    continue
                keep = (ni | {i, j}) - set(s)
                if is_acyclic_on(inst.graph, keep):
                    return MaisWitness(tuple(s), (i, j), tuple(sorted(keep)), matches)
    raise WitnessConstructionFailed(
        "acyclicity", "no (pair, hitting set) combination gives an acyclic induced subgraph"
    )


# --- certificate ------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    verdict: str  # optimal | lower-bound-met | unproven | inapplicable
    code_length: Optional[int]
    bound: int  # N - K + 2 - t
    decodable: Optional[bool]
    mais_value: Optional[int] = None
    mais_lower_bound: Optional[int] = None
    witness: Optional[MaisWitness] = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "code_length": self.code_length,
            "bound": self.bound,
            "decodable": self.decodable,
            "mais_value": self.mais_value,
            "mais_lower_bound": self.mais_lower_bound,
            "witness": self.witness.to_dict() if self.witness else None,
            "reason": self.reason,
        }


def certify(
    inst: ICInstance,
    fam: CycleFamily,
    code: Optional[IndexCode],
    decode_verdict: Optional[DecodeVerdict],
    mais_info: Optional[object],
    reason: str = "",
    bound: Optional[int] = None,
) -> Certificate:
    """Combine decodability and a MAIS lower bound into a verdict.

    ``mais_info`` is a MaisResult (exact), a MaisWitness (lower bound
    only) or None.  ``bound`` overrides N-K+2-t, e.g. with N-K+1 for
    instances without outer cycles.
    """
    if bound is None:
        bound = inst.n - inst.k + 2 - fam.t
    exact = mais_info.value if isinstance(mais_info, MaisResult) else None
    witness = mais_info if isinstance(mais_info, MaisWitness) else None
    lower = exact if exact is not None else (witness.size if witness else None)
    if code is None:
        return Certificate("inapplicable", None, bound, None, exact, lower, witness, reason)
    ok = bool(decode_verdict and decode_verdict.ok)
    length = len(code)
    if ok and lower is not None and length == bound and lower >= bound:
        verdict = "optimal"
    elif ok and lower is not None and length == lower:
        verdict = "lower-bound-met"
    else:
        verdict = "unproven"
    return Certificate(verdict, length, bound, ok, exact, lower, witness, reason)
