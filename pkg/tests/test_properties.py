"""Structural invariants checked on a random corpus plus every valid fixture."""

import random
from functools import lru_cache

import pytest

from conftest import load_fixture
from generators import random_interlocked_instance
from iccode.construction import construct_algorithm1
from iccode.errors import PartitionError
from iccode.pipeline import StageFailure, analyse
from iccode.structure import (
    check_interlocking,
    check_opt_condition,
    check_partition,
    classify_inner,
    max_disjoint_cycles,
    outer_cycles,
    partition_inner,
)
from iccode.verify import SideInfoModel, verify_decodable
from oracles import brute_decodable

CORPUS_SIZE = 500
CORPUS_SEED = 1
FIXTURES = ("fig1", "fig2", "fig4", "fig5", "fig6", "fig7", "fig9", "fig13", "fig21", "fig25")


class Case:
    def __init__(self, name, inst):
        self.name = name
        self.inst = inst
        verdict = check_interlocking(outer_cycles(inst))
        self.interlocked = verdict.interlocked
        self.family = max_disjoint_cycles(verdict.family)
        self.cls = classify_inner(inst, self.family)
        self.cond1 = check_opt_condition(inst, self.cls, "cond1").holds
        self.cond2 = check_opt_condition(inst, self.cls, "cond2").holds


@lru_cache(maxsize=None)
def corpus():
    rng = random.Random(CORPUS_SEED)
    cases = [Case(f"random-{k}", random_interlocked_instance(rng)) for k in range(CORPUS_SIZE)]
    for name in FIXTURES:
        try:
            a = analyse(load_fixture(name))
        except StageFailure:
            continue
        cases.append(Case(name, a.inst))
    return tuple(cases)


def ipaths_between(case, sources, targets):
    return [case.inst.ipaths.interior((a, b)) for a in sources for b in targets if a != b]


def test_classification_is_a_partition():
    for c in corpus():
        parts = (set(c.cls.v_in), set(c.cls.v_out), set(c.cls.v_star))
        assert not (parts[0] & parts[1]) and not (parts[0] & parts[2]) and not (parts[1] & parts[2]), c.name
        assert parts[0] | parts[1] | parts[2] == set(c.inst.inner), c.name


def test_same_side_ipaths_avoid_outer_cycles():
    for c in corpus():
        outer = c.inst.outer_cycle_vertices
        for side in (c.cls.v_out, c.cls.v_in):
            for interior in ipaths_between(c, side, side):
                assert not set(interior) & outer, c.name


def test_no_relay_on_both_same_side_families():
    for c in corpus():
        outer = c.inst.outer_cycle_vertices
        on_out = {v for p in ipaths_between(c, c.cls.v_out, c.cls.v_out) for v in p}
        on_in = {v for p in ipaths_between(c, c.cls.v_in, c.cls.v_in) for v in p}
        relays = set(c.inst.non_inner) - outer
        assert not (on_out & on_in & relays), c.name


def test_common_intersection_implies_all_central():
    seen = 0
    for c in corpus():
        fam = check_interlocking(outer_cycles(c.inst)).family
        common = set(c.inst.graph.vertices)
        for k in range(len(fam)):
            common &= fam.vertex_set(k)
        if common:
            seen += 1
            assert all(fam.central), c.name
    assert seen > 0


def test_partition_from_conditions_revalidates():
    checked = 0
    for c in corpus():
        if not c.interlocked or not (c.cond1 or c.cond2):
            continue
        part = partition_inner(c.inst, c.family, c.cls, c.cond1, c.cond2)
        again = check_partition(c.inst, c.family, part.part1, part.part2, "user-supplied")
        assert {again.part1, again.part2} == {part.part1, part.part2}
        checked += 1
    assert checked > 400


def test_code_length_and_decodability():
    exhaustive = 0
    built = 0
    for k, c in enumerate(corpus()):
        if not c.interlocked:
            continue
        try:
            part = partition_inner(c.inst, c.family, c.cls, c.cond1, c.cond2)
        except PartitionError as exc:
            assert exc.kind == "infeasible", c.name
            continue
        code = construct_algorithm1(c.inst, c.family, part)
        built += 1
        assert len(code) == c.inst.n - c.inst.k + 2 - c.family.t, c.name
        g = c.inst.graph
        assert verify_decodable(SideInfoModel.from_digraph(g), code).ok, c.name
        if k % 10 == 0 and len(g) <= 14:
            assert brute_decodable(g, [r.support for r in code.rows])[0], c.name
            exhaustive += 1
    assert built > 450 and exhaustive > 30


@pytest.mark.parametrize("seed", [21, 22, 23])
def test_t_is_a_maximum_disjoint_count(seed):
    from oracles import brute_max_disjoint

    rng = random.Random(seed)
    for _ in range(40):
        inst = random_interlocked_instance(rng)
        fam = outer_cycles(inst)
        sets = [fam.vertex_set(i) for i in range(len(fam))]
        assert max_disjoint_cycles(fam).t == brute_max_disjoint(sets)
