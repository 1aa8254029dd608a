"""Exact computation of generalized spline modules over Z/mZ.

A generalized spline on an edge-labeled graph assigns a residue to every
vertex so that adjacent values differ by a multiple of the edge label.  This
package computes the full structure of the module of splines: flow-up
generating sets, invariant factors, minimum generating sets, rank,
prime-power decomposition, closed forms for cycles, and rank-prescribed
graph constructions, all in exact integer arithmetic and all verifiable
against a brute-force oracle at desk scale.
"""

from .arith import Factorization, crt_combine, factorize, is_prime, xgcd
from .construct import ConstructionRecipe, build_rank_1, build_rank_k, sharpness_check
from .cycles import (
    CycleInstance,
    GeneratingSet,
    cycle_instance,
    mgs_merge,
    power_label_cycle_gens,
    single_label_mgs,
    two_label_cycle_gens,
)
from .decompose import Decomposition, decompose, recombine, reduce_graph
from .engine import (
    ExtensionAnalysis,
    LatticeBasis,
    SplineModule,
    extension_analysis,
    flow_up_generators,
    integer_lattice,
    invariant_factors,
    module_isomorphic,
    rank,
)
from .graph import (
    EdgeLabeledGraph,
    NormalizationReport,
    load_graph,
    normalize,
    parse_graph,
    parse_graph_json,
    spline_check,
)
from .matrix import IntMatrix, SnfResult, det, hnf, kernel_basis, snf
from .oracle import (
    ModuleFingerprint,
    additive_order,
    enumerate_splines,
    fingerprint,
    span,
    span_equals,
)

__all__ = [
    "ConstructionRecipe",
    "CycleInstance",
    "Decomposition",
    "EdgeLabeledGraph",
    "ExtensionAnalysis",
    "Factorization",
    "GeneratingSet",
    "IntMatrix",
    "LatticeBasis",
    "ModuleFingerprint",
    "NormalizationReport",
    "SnfResult",
    "SplineModule",
    "additive_order",
    "build_rank_1",
    "build_rank_k",
    "crt_combine",
    "cycle_instance",
    "decompose",
    "det",
    "enumerate_splines",
    "extension_analysis",
    "factorize",
    "fingerprint",
    "flow_up_generators",
    "hnf",
    "integer_lattice",
    "invariant_factors",
    "is_prime",
    "kernel_basis",
    "load_graph",
    "mgs_merge",
    "module_isomorphic",
    "normalize",
    "parse_graph",
    "parse_graph_json",
    "power_label_cycle_gens",
    "rank",
    "recombine",
    "reduce_graph",
    "sharpness_check",
    "single_label_mgs",
    "snf",
    "span",
    "span_equals",
    "spline_check",
    "two_label_cycle_gens",
    "xgcd",
]
