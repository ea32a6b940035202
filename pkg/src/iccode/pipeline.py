"""End-to-end pipeline: validate, analyse, encode, verify, certify.

Each ``run_*`` function returns a JSON-ready report and an exit code so the
CLI stays a thin shell around it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from .construction import (
    IndexCode,
    code_length_report,
    construct_algorithm1,
    construct_baseline_toj,
    identity_code,
)
from .errors import (
    ICError,
    InconsistentClassification,
    InputError,
    PartitionError,
    PartitionMismatch,
    ResourceExceeded,
    ValidationError,
    WitnessConstructionFailed,
    _jsonable,
)
from .io import InstanceFile
from .structure import (
    CycleFamily,
    ICInstance,
    InnerClassification,
    InnerPartition,
    InterlockVerdict,
    OptConditionVerdict,
    check_interlocking,
    check_opt_condition,
    classify_inner,
    max_disjoint_cycles,
    outer_cycles,
    partition_inner,
    validate_ic_with_outer_cycles,
)
from .verify import (
    DEFAULT_MAX_EXACT,
    MaisResult,
    SideInfoModel,
    certify,
    mais_exact,
    mais_witness_check,
    verify_decodable,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INAPPLICABLE = 2
EXIT_INVALID = 3
EXIT_RESOURCE = 4
EXIT_NOT_OPTIMAL = 5

Override = Optional[Tuple[Sequence[int], Sequence[int]]]


@dataclass(frozen=True)
class Analysis:
    inst: ICInstance
    interlock: InterlockVerdict
    family: CycleFamily  # central flags and C^S filled in
    classification: Optional[InnerClassification]
    cond1: Optional[OptConditionVerdict]
    cond2: Optional[OptConditionVerdict]

    @property
    def t(self) -> int:
        return self.family.t


class StageFailure(Exception):
    """A pipeline stage failed; carries the report fragment and exit code."""

    def __init__(self, stage: str, status: str, exit_code: int, error: Dict[str, Any]):
        super().__init__(error.get("message", status))
        self.stage = stage
        self.status = status
        self.exit_code = exit_code
        self.error = error


def analyse(ifile: InstanceFile) -> Analysis:
    try:
        inst = validate_ic_with_outer_cycles(ifile.digraph(), ifile.inner)
    except ValidationError as exc:
        raise StageFailure("validate", "invalid", EXIT_INVALID, exc.to_dict())
    verdict = check_interlocking(outer_cycles(inst))
    fam = max_disjoint_cycles(verdict.family)
    cls = cond1 = cond2 = None
    if fam.cycles:
        try:
            cls = classify_inner(inst, fam)
        except InconsistentClassification as exc:
            raise StageFailure(
                "classify", "invalid", EXIT_INVALID,
                {"kind": "inconsistent-classification", "message": str(exc), "witness": exc.vertex},
            )
        cond1 = check_opt_condition(inst, cls, "cond1")
        cond2 = check_opt_condition(inst, cls, "cond2")
    return Analysis(inst, verdict, fam, cls, cond1, cond2)


def _cond_dict(v: Optional[OptConditionVerdict]) -> Optional[dict]:
    if v is None:
        return None
    w = None
    if v.witness is not None:
        p, q, a, b, s = v.witness
        w = {"outer_pair": [p, q], "inner_pair": [a, b], "shared_vertex": s}
    return {"holds": v.holds, "witness": w}


def analysis_report(a: Analysis) -> dict:
    fam = a.family
    table = [
        {"cycles": [i, j], "shared": sorted(fam.intersection(i, j))}
        for i in range(len(fam))
        for j in range(i + 1, len(fam))
    ]
    central = [i for i, c in enumerate(fam.central or ()) if c]
    report = {
        "n": a.inst.n,
        "k": a.inst.k,
        "valid": True,
        "inner": list(a.inst.inner),
        "outer_cycles": [list(c) for c in fam.cycles],
        "intersections": table,
        "interlocking": {
            "status": a.interlock.status,
            "pair": list(a.interlock.pair) if a.interlock.pair else None,
            "shared": sorted(a.interlock.shared),
        },
        "central_cycles": central,
        "all_central": bool(fam.cycles) and len(central) == len(fam),
        "inner_split": None,
        "conditions": {"cond1": _cond_dict(a.cond1), "cond2": _cond_dict(a.cond2)},
        "t": fam.t,
        "disjoint_cycles": list(fam.chosen),
        "lengths": {"alg1_bound": a.inst.n - a.inst.k + 2 - fam.t, "baseline_len": a.inst.n - a.inst.k + 1},
        "suggestion": "baseline" if not fam.cycles else None,
    }
    if a.classification is not None:
        c = a.classification
        report["inner_split"] = {"in": list(c.v_in), "out": list(c.v_out), "star": list(c.v_star)}
    return report


@dataclass(frozen=True)
class Encoding:
    analysis: Analysis
    code: IndexCode
    algorithm: str  # algorithm1 | baseline
    partition: Optional[InnerPartition]


def encode(ifile: InstanceFile, override: Override = None) -> Encoding:
    a = analyse(ifile)
    if not a.family.cycles:
        return Encoding(a, construct_baseline_toj(a.inst), "baseline", None)
    if not a.interlock.interlocked:
        raise StageFailure(
            "interlock", "inapplicable", EXIT_INAPPLICABLE,
            {"kind": a.interlock.status, "message": f"outer cycles are not interlocked ({a.interlock.status})",
             "witness": {"pair": a.interlock.pair, "shared": sorted(a.interlock.shared)}},
        )
    if override is None:
        override = ifile.partition_override
    try:
        part = partition_inner(
            a.inst, a.family, a.classification, a.cond1.holds, a.cond2.holds, override=override
        )
    except PartitionError as exc:
        raise StageFailure(
            "partition", "inapplicable", EXIT_INAPPLICABLE,
            {"kind": exc.kind, "message": str(exc), "witness": _jsonable(exc.witness),
             "cond1": _cond_dict(a.cond1), "cond2": _cond_dict(a.cond2)},
        )
    try:
        code = construct_algorithm1(a.inst, a.family, part)
    except PartitionMismatch as exc:
        raise StageFailure("construct", "inapplicable", EXIT_INAPPLICABLE, {"kind": "partition-mismatch", "message": str(exc)})
    return Encoding(a, code, "algorithm1", part)


def _partition_dict(p: Optional[InnerPartition]) -> Optional[dict]:
    if p is None:
        return None
    return {"part1": list(p.part1), "part2": list(p.part2), "origin": p.origin,
            "sub1_vertices": list(p.sub1.graph.vertices), "sub2_vertices": list(p.sub2.graph.vertices)}


def encoding_report(e: Encoding) -> dict:
    inst, fam = e.analysis.inst, e.analysis.family
    if e.algorithm == "algorithm1":
        lengths = code_length_report(inst, fam, e.code)
    else:
        lengths = {"alg1_len": None, "baseline_len": len(e.code), "saving": None}
    return {
        "algorithm": e.algorithm,
        "t": fam.t,
        "partition": _partition_dict(e.partition),
        "lengths": lengths,
        "code": e.code.to_dict(),
    }


def _self_check(ifile: InstanceFile, facts: Dict[str, Any]) -> Optional[dict]:
    if not ifile.expected:
        return None
    mismatches = []
    for key in sorted(ifile.expected):
        if key in facts and facts[key] != ifile.expected[key]:
            mismatches.append({"key": key, "expected": ifile.expected[key], "actual": facts[key]})
    checked = sorted(k for k in ifile.expected if k in facts)
    return {"ok": not mismatches, "checked": checked, "mismatches": mismatches}


def _finish(ifile: InstanceFile, report: dict, facts: Dict[str, Any], code: int) -> Tuple[dict, int]:
    check = _self_check(ifile, facts)
    if check is not None:
        report["self_check"] = check
        if not check["ok"]:
            code = EXIT_INTERNAL
    return report, code


def _failure(ifile: InstanceFile, command: str, f: StageFailure, facts: Dict[str, Any],
             default_run: bool = True) -> Tuple[dict, int]:
    if default_run:
        facts.setdefault("status", f.status)
        facts.setdefault("error_kind", f.error.get("kind"))
    report = {"command": command, "instance": ifile.name, "status": f.status, "stage": f.stage,
              "error": _jsonable(f.error)}
    report.update({k: v for k, v in facts.items() if k in ("t", "baseline_len")})
    return _finish(ifile, report, facts, f.exit_code)


def _guard(fn):
    def wrapped(ifile: InstanceFile, *args, **kwargs):
        try:
            return fn(ifile, *args, **kwargs)
        except ResourceExceeded as exc:
            return {"command": fn.__name__[4:], "instance": ifile.name, "status": "resource-exceeded",
                    "error": {"kind": "resource-exceeded", "message": str(exc)}}, EXIT_RESOURCE
        except InputError as exc:
            return {"command": fn.__name__[4:], "instance": ifile.name, "status": "input-error",
                    "error": {"kind": "input-error", "message": str(exc)}}, EXIT_INVALID
    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


@_guard
def run_analyze(ifile: InstanceFile) -> Tuple[dict, int]:
    facts: Dict[str, Any] = {}
    try:
        a = analyse(ifile)
    except StageFailure as f:
        return _failure(ifile, "analyze", f, facts)
    body = analysis_report(a)
    facts.update(interlocking=a.interlock.status, t=a.t, baseline_len=body["lengths"]["baseline_len"])
    report = {"command": "analyze", "instance": ifile.name, "status": "ok"}
    report.update(body)
    return _finish(ifile, report, facts, EXIT_OK)


@_guard
def run_encode(ifile: InstanceFile, override: Override = None) -> Tuple[dict, int]:
    facts: Dict[str, Any] = {}
    try:
        e = encode(ifile, override)
    except StageFailure as f:
        _partial_facts(ifile, facts)
        return _failure(ifile, "encode", f, facts, default_run=override is None)
    body = encoding_report(e)
    facts.update(status="ok", t=body["t"], baseline_len=e.analysis.inst.n - e.analysis.inst.k + 1)
    if e.algorithm == "algorithm1":
        facts["alg1_len"] = len(e.code)
    if override is not None:
        _drop_run_dependent(facts)
    report = {"command": "encode", "instance": ifile.name, "status": "ok"}
    report.update(body)
    return _finish(ifile, report, facts, EXIT_OK)


# Expected values in an instance file describe the default run; these facts
# change when the caller overrides the partition or swaps in the identity code.
_RUN_DEPENDENT = ("status", "verdict", "alg1_len", "error_kind", "mais_lower_bound")


def _drop_run_dependent(facts: Dict[str, Any]) -> None:
    for key in _RUN_DEPENDENT:
        facts.pop(key, None)


def _partial_facts(ifile: InstanceFile, facts: Dict[str, Any]) -> Optional[Analysis]:
    try:
        a = analyse(ifile)
    except StageFailure:
        return None
    facts.update(t=a.t, baseline_len=a.inst.n - a.inst.k + 1)
    return a


def _mais(a: Analysis, mode: str, max_exact: int):
    """MaisResult, MaisWitness or None plus a note on how it was obtained."""
    g = a.inst.graph
    if mode == "exact" or (mode == "auto" and len(g) <= max_exact):
        return mais_exact(g, max_exact), "exact"
    if not a.family.cycles or a.classification is None:
        return None, "witness-unavailable"
    try:
        return mais_witness_check(a.inst, a.family, a.classification), "witness"
    except WitnessConstructionFailed as exc:
        return None, f"witness-construction-failed:{exc.component}"


@_guard
def run_certify(
    ifile: InstanceFile,
    override: Override = None,
    mais_mode: str = "auto",
    max_exact: int = DEFAULT_MAX_EXACT,
    identity: bool = False,
) -> Tuple[dict, int]:
    if mais_mode not in ("exact", "witness", "auto"):
        raise InputError(f"unknown MAIS mode {mais_mode!r}")
    facts: Dict[str, Any] = {}
    try:
        e = encode(ifile, override)
    except StageFailure as f:
        if f.status != "inapplicable":
            return _failure(ifile, "certify", f, facts, default_run=override is None)
        a = _partial_facts(ifile, facts)
        info, how = _mais(a, mais_mode, max_exact)
        cert = certify(a.inst, a.family, None, None, info, reason=f.error.get("message", ""))
        facts.update(verdict=cert.verdict, mais_lower_bound=cert.mais_lower_bound, error_kind=f.error.get("kind"))
        if override is not None:
            _drop_run_dependent(facts)
        report = {"command": "certify", "instance": ifile.name, "status": "inapplicable", "stage": f.stage,
                  "error": _jsonable(f.error), "mais_method": how, "certificate": cert.to_dict()}
        return _finish(ifile, report, facts, EXIT_INAPPLICABLE)

    a = e.analysis
    code = identity_code(a.inst.graph.vertices) if identity else e.code
    decoded = verify_decodable(SideInfoModel.from_digraph(a.inst.graph), code)
    info, how = _mais(a, mais_mode, max_exact)
    bound = None if e.algorithm == "algorithm1" else a.inst.n - a.inst.k + 1
    cert = certify(a.inst, a.family, code, decoded, info, bound=bound)
    facts.update(status="ok", verdict=cert.verdict, t=a.t, baseline_len=a.inst.n - a.inst.k + 1,
                 mais_lower_bound=cert.mais_lower_bound)
    if e.algorithm == "algorithm1" and not identity:
        facts["alg1_len"] = len(code)
    if override is not None or identity:
        _drop_run_dependent(facts)
    report = {
        "command": "certify",
        "instance": ifile.name,
        "status": "ok",
        "algorithm": "identity" if identity else e.algorithm,
        "decodable": decoded.ok,
        "undecodable": list(decoded.undecodable),
        "mais_method": how,
        "certificate": cert.to_dict(),
        "code": code.to_dict(),
    }
    return _finish(ifile, report, facts, EXIT_OK if cert.verdict == "optimal" else EXIT_NOT_OPTIMAL)


def run_command(command: str, ifile: InstanceFile, **kwargs) -> Tuple[dict, int]:
    try:
        if command == "analyze":
            return run_analyze(ifile)
        if command == "encode":
            return run_encode(ifile, kwargs.get("override"))
        if command == "certify":
            return run_certify(ifile, **kwargs)
        raise InputError(f"unknown command {command!r}")
    except ICError as exc:
        return {"command": command, "instance": ifile.name, "status": "internal-error",
                "error": {"kind": type(exc).__name__, "message": str(exc)}}, EXIT_INTERNAL
