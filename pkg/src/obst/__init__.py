"""Optimum and near-optimum binary search trees on hierarchical memory."""

from .approx import approx_bst, approx_certificates, build_split_sequence
from .assign import fixed_assignment_dp, greedy_assign
from .cost import (
    CostConvention,
    Solution,
    approx_gap_bound,
    cost_report,
    entropy,
    hmm_cost,
    lower_bounds,
    ram_cost,
)
from .errors import InfeasibleError, ObstError, ParseError, SizeGuardError
from .hmm import parts, split, trunks, twolevel
from .model import (
    MemoryModel,
    ProblemInstance,
    instance_text,
    parse_instance,
    tower_model,
)
from .oracle import (
    conjecture_scan,
    constrained_optimum,
    enumerate_shapes,
    naive_optimum,
    unimodal_sweep,
)
from .ram import check_quadrangle, k1, k2
from .tree import (
    AssignmentMode,
    MemoryAssignment,
    TreeShape,
    parse_assignment,
    parse_shape,
    serialize_assignment,
    serialize_shape,
)

__all__ = [
    "AssignmentMode",
    "CostConvention",
    "InfeasibleError",
    "MemoryAssignment",
    "MemoryModel",
    "ObstError",
    "ParseError",
    "ProblemInstance",
    "SizeGuardError",
    "Solution",
    "TreeShape",
    "approx_bst",
    "approx_certificates",
    "approx_gap_bound",
    "build_split_sequence",
    "check_quadrangle",
    "conjecture_scan",
    "constrained_optimum",
    "cost_report",
    "entropy",
    "enumerate_shapes",
    "fixed_assignment_dp",
    "greedy_assign",
    "hmm_cost",
    "instance_text",
    "k1",
    "k2",
    "lower_bounds",
    "naive_optimum",
    "parse_assignment",
    "parse_instance",
    "parse_shape",
    "parts",
    "ram_cost",
    "serialize_assignment",
    "serialize_shape",
    "split",
    "tower_model",
    "trunks",
    "twolevel",
    "unimodal_sweep",
]

__version__ = "0.1.0"
