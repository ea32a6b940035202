"""Random generators for digraphs and small IC structures with interlocked outer cycles."""

from __future__ import annotations

import itertools
import random
from typing import List, Optional, Tuple

from iccode.digraph import Digraph
from iccode.errors import ValidationError
from iccode.structure import ICInstance, check_interlocking, outer_cycles, validate_ic_with_outer_cycles


def random_digraph(rng: random.Random, n: int, p: float, labels: Optional[List[int]] = None) -> Digraph:
    labels = labels or list(range(n))
    arcs = [(a, b) for a, b in itertools.permutations(labels, 2) if rng.random() < p]
    return Digraph(labels, arcs)


def _flower(rng: random.Random, fresh) -> Tuple[List[Tuple[int, int]], List[int]]:
    """A central cycle plus petals that each reuse one contiguous stretch of it."""
    length = rng.randint(2, 4)
    core = [fresh() for _ in range(length)]
    arcs = [(core[i], core[(i + 1) % length]) for i in range(length)]
    for _ in range(rng.randint(0, 2)):
        start = rng.randrange(length)
        span = rng.randint(0, min(1, length - 2))
        seg = [core[(start + k) % length] for k in range(span + 1)]
        extra = [fresh() for _ in range(rng.randint(1, 2))]
        route = [seg[-1]] + extra + [seg[0]]
        arcs += list(zip(route, route[1:]))
    return arcs, core


def random_ic_candidate(rng: random.Random, max_n: int = 14):
    """Arcs and inner set of a candidate instance; may fail validation."""
    counter = itertools.count(1)
    out = [next(counter) for _ in range(rng.randint(1, 3))]
    inn = [next(counter) for _ in range(rng.randint(1, 3))]
    star = [next(counter) for _ in range(rng.choice((0, 1, 1, 2)))]
    inner = out + inn + star
    fresh = lambda: next(counter)  # noqa: E731
    arcs, core = _flower(rng, fresh)
    entry, exit_ = rng.sample(core, 2) if len(core) > 1 else (core[0], core[0])
    arcs += [(o, entry) for o in out] + [(exit_, i) for i in inn]

    def link(a: int, b: int) -> None:
        if rng.random() < 0.25:
            s = fresh()
            arcs.extend([(a, s), (s, b)])
        else:
            arcs.append((a, b))

    outs = set(out)
    pairs = {(a, b) for a, b in itertools.permutations(inner, 2) if not (a in outs and b in inn)}
    if rng.random() < 0.5:
        h = fresh()
        arcs += [(i, h) for i in inn] + [(h, o) for o in out]
        pairs -= {(i, o) for i in inn for o in out}
    # Shared relays carry several I-paths at once, which is what breaks the
    # optimality conditions and forces the partition search.
    for _ in range(rng.choice((0, 2, 4, 8))):
        if len(inner) < 3:
            break
        srcs = rng.sample(inner, 2)
        dsts = rng.sample([v for v in inner if v not in srcs], 2 if len(inner) > 3 else 1)
        cover = {(a, b) for a in srcs for b in dsts}
        if not cover <= pairs:
            continue
        h = fresh()
        arcs += [(a, h) for a in srcs] + [(h, b) for b in dsts]
        pairs -= cover
    for a, b in sorted(pairs):
        link(a, b)
    n = next(counter) - 1
    if n > max_n:
        return None
    return list(range(1, n + 1)), sorted(set(arcs)), sorted(inner)


def relabel(rng: random.Random, vertices, arcs, inner):
    """Spread labels out with gaps so nothing relies on 1..N."""
    new = rng.sample(range(0, 4 * len(vertices)), len(vertices))
    m = dict(zip(vertices, new))
    return sorted(new), sorted((m[a], m[b]) for a, b in arcs), sorted(m[v] for v in inner)


def random_interlocked_instance(rng: random.Random, max_n: int = 14, attempts: int = 200) -> ICInstance:
    for _ in range(attempts):
        cand = random_ic_candidate(rng, max_n)
        if cand is None:
            continue
        vertices, arcs, inner = cand
        if rng.random() < 0.5:
            vertices, arcs, inner = relabel(rng, vertices, arcs, inner)
        try:
            inst = validate_ic_with_outer_cycles(Digraph(vertices, arcs), inner)
        except ValidationError:
            continue
        if check_interlocking(outer_cycles(inst)).interlocked:
            return inst
    raise RuntimeError("generator failed to produce a valid instance")
