"""Independent brute-force oracles used to cross-check the library."""

from __future__ import annotations

import itertools
from typing import List, Sequence, Set, Tuple

import numpy as np

from iccode.digraph import Digraph


def brute_simple_cycles(g: Digraph) -> List[Tuple[int, ...]]:
    """Grow every vertex sequence that starts at its minimum and keeps arcs between neighbours."""
    found = []
    for start in g.vertices:
        prefixes = [(start,)]
        while prefixes:
            nxt = []
            for p in prefixes:
                if len(p) >= 2 and g.has_arc(p[-1], start):
                    found.append(p)
                for w in g.vertices:
                    if w > start and w not in p and g.has_arc(p[-1], w):
                        nxt.append(p + (w,))
            prefixes = nxt
    return sorted(found)


def brute_path_count(g: Digraph) -> int:
    """Number of simple paths with at least one arc, over all ordered endpoint pairs."""
    total = 0
    stack = [(v,) for v in g.vertices]
    while stack:
        p = stack.pop()
        for w in g.successors(p[-1]):
            if w not in p:
                total += 1
                stack.append(p + (w,))
    return total


def brute_mais(g: Digraph) -> int:
    """Largest induced acyclic subgraph by scanning all 2^n vertex subsets with numpy."""
    verts = list(g.vertices)
    n = len(verts)
    pos = {v: k for k, v in enumerate(verts)}
    succ = np.zeros(n, dtype=np.int64)
    for a, b in g.arcs:
        succ[pos[a]] |= 1 << pos[b]
    subsets = np.arange(1 << n, dtype=np.int64)
    masks = subsets.copy()
    # Peel sinks n times; a subset is acyclic iff nothing survives.
    for _ in range(n):
        for v in range(n):
            inside = (masks >> v) & 1
            sink = inside & ((masks & succ[v]) == 0)
            masks &= ~(sink << v)
    acyclic = masks == 0
    return int(_popcount(subsets)[acyclic].max())


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    count = np.zeros_like(a)
    while a.any():
        count += a & 1
        a >>= 1
    return count


def brute_max_disjoint(sets: Sequence[Set[int]]) -> int:
    best = 0
    for r in range(len(sets), 0, -1):
        for combo in itertools.combinations(range(len(sets)), r):
            if all(not (sets[i] & sets[j]) for i, j in itertools.combinations(combo, 2)):
                return r
    return best


def brute_decodable(g: Digraph, rows: Sequence[Sequence[int]]) -> Tuple[bool, List[int]]:
    """Simulate every message vector: receiver i decodes iff (codeword, side info) pins x_i."""
    verts = list(g.vertices)
    n = len(verts)
    pos = {v: k for k, v in enumerate(verts)}
    x = np.arange(1 << n, dtype=np.int64)
    code = np.zeros_like(x)
    for r, support in enumerate(rows):
        bit = np.zeros_like(x)
        for v in support:
            bit ^= (x >> pos[v]) & 1
        code |= bit << r
    failed = []
    for i in verts:
        side = 0
        for j in g.successors(i):
            side |= 1 << pos[j]
        key = (code << n) | (x & side)
        xi = (x >> pos[i]) & 1
        pairs = np.unique(key * 2 + xi)
        if len(np.unique(pairs >> 1)) != len(pairs):
            failed.append(i)
    return not failed, failed
