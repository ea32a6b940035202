"""Scalar-linear index codes for IC structures with interlocked outer cycles."""

from .construction import CodeSymbol, IndexCode, construct_algorithm1, construct_baseline_toj, identity_code
from .digraph import Digraph, enumerate_simple_cycles, induced_subgraph, is_acyclic, simple_paths
from .errors import (
    ICError,
    InputError,
    PartitionError,
    ResourceExceeded,
    ValidationError,
    WitnessConstructionFailed,
)
from .io import InstanceFile, load_instance, parse_instance
from .structure import (
    CycleFamily,
    ICInstance,
    check_interlocking,
    check_opt_condition,
    classify_inner,
    max_disjoint_cycles,
    outer_cycles,
    partition_inner,
    validate_ic_with_outer_cycles,
)
from .verify import Certificate, SideInfoModel, certify, mais_exact, mais_witness_check, verify_decodable

__all__ = [
    "Certificate",
    "CodeSymbol",
    "CycleFamily",
    "Digraph",
    "ICError",
    "ICInstance",
    "IndexCode",
    "InputError",
    "InstanceFile",
    "PartitionError",
    "ResourceExceeded",
    "SideInfoModel",
    "ValidationError",
    "WitnessConstructionFailed",
    "certify",
    "check_interlocking",
    "check_opt_condition",
    "classify_inner",
    "construct_algorithm1",
    "construct_baseline_toj",
    "enumerate_simple_cycles",
    "identity_code",
    "induced_subgraph",
    "is_acyclic",
    "load_instance",
    "mais_exact",
    "mais_witness_check",
    "max_disjoint_cycles",
    "outer_cycles",
    "parse_instance",
    "partition_inner",
    "simple_paths",
    "validate_ic_with_outer_cycles",
    "verify_decodable",
]
