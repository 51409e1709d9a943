"""Cost evaluation under every convention, entropy, and lower bounds.

The hierarchical model admits several reasonable definitions of what a
search pays for; they differ by tree-dependent terms, so conflating
them silently corrupts comparisons. Every cost in this package is
therefore tagged with one of four conventions:

  RamSearch       sum p_i*depth(x_i) + sum q_j*(depth(z_j)-1); ignores
                  the memory assignment entirely (unit-cost memory).
  SearchAccess    sum over internal nodes v of w(T_v)*mu(address(v)):
                  a search touches v once for every probe that lands
                  anywhere in v's subtree. This is what the exact HMM
                  solvers optimize.
  PaperHmm        SearchAccess plus, for each gap z_j, q_j times the
                  access cost of z_j's parent (an unsuccessful search
                  pays one extra probe at the parent).
  StoredExternal  sum over ALL 2n+1 nodes of w(T_v)*mu(address(v));
                  external nodes occupy their own locations. The
                  embedded reference experiments use this convention.

With unit access cost everywhere: SearchAccess = RamSearch, and both
PaperHmm and StoredExternal equal RamSearch + sum(q).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import MemoryModel, ProblemInstance
from .tree import AssignmentMode, MemoryAssignment, TreeShape


class CostConvention(enum.Enum):
    RAM_SEARCH = "ram"
    SEARCH_ACCESS = "search"
    PAPER_HMM = "paper"
    STORED_EXTERNAL = "stored"


@dataclass(frozen=True)
class Solution:
    shape: TreeShape
    assignment: MemoryAssignment | None
    cost: int
    convention: CostConvention
    algorithm: str


def ram_cost(inst: ProblemInstance, shape: TreeShape) -> int:
    if (shape.lo, shape.hi) != (1, inst.n):
        raise ValueError(f"shape spans {shape.lo}..{shape.hi}, instance has keys 1..{inst.n}")
    total = 0
    for (kind, idx), depth, _, _ in shape.nodes_preorder():
        if kind == "x":
            total += inst.p[idx - 1] * depth
        else:
            total += inst.q[idx] * (depth - 1)
    return total


def internal_weight_sum(inst: ProblemInstance, shape: TreeShape) -> int:
    """Sum of subtree weights over internal nodes; equals ram_cost."""
    return sum(
        inst.weight(lo, hi)
        for (kind, _), _, lo, hi in shape.nodes_preorder()
        if kind == "x"
    )


def hmm_cost(
    inst: ProblemInstance,
    shape: TreeShape,
    assignment: MemoryAssignment | None,
    model: MemoryModel | None,
    convention: CostConvention,
) -> int:
    if convention is CostConvention.RAM_SEARCH:
        return ram_cost(inst, shape)
    if assignment is None or model is None:
        raise ValueError(f"convention {convention.value} needs an assignment and a model")
    if (
        convention is CostConvention.STORED_EXTERNAL
        and assignment.mode is not AssignmentMode.ALL_NODES
    ):
        raise ValueError("stored-external cost needs every node located, externals included")

    weights = shape.subtree_weights(inst)
    total = 0
    for node, w in weights.items():
        if node[0] == "x" or convention is CostConvention.STORED_EXTERNAL:
            total += w * model.mu(assignment.address_of(node))
    if convention is CostConvention.PAPER_HMM:
        parents = shape.parent_map()
        for j, qj in enumerate(inst.q):
            total += qj * model.mu(assignment.address_of(parents[("z", j)]))
    return total


def entropy(inst: ProblemInstance) -> float:
    """Shannon entropy (bits) of the normalized search-outcome
    distribution; zero-frequency outcomes contribute nothing."""
    w = inst.total_weight
    h = 0.0
    for f in list(inst.p) + list(inst.q):
        if f:
            h += (f / w) * math.log2(w / f)
    return h


def lower_bounds(inst: ProblemInstance) -> dict[str, float]:
    """Known lower bounds on the normalized optimal unit-cost search
    cost, all functions of the entropy (and the success mass for the
    second). Any of them may be negative, in which case it is vacuous."""
    h = entropy(inst)
    n = inst.n
    psum = sum(inst.p) / inst.total_weight
    hlgh = h * math.log2(h) if h > 0 else 0.0
    h1 = (h + 1) * math.log2(h + 1)
    return {
        "mehlhorn": h / math.log2(3),
        "deprisco_n": h - 1 - psum * (math.log2(math.log2(n + 1)) - 1),
        "deprisco_h": h + hlgh - h1,
    }


def approx_gap_bound(c1: int, c2: int, h: float) -> float:
    """Upper bound on the normalized cost gap between the near-optimal
    tree (greedily placed) and the exact two-level optimum."""
    if c1 > c2:
        raise ValueError("cheap level must not cost more than the expensive one")
    if h < 0:
        raise ValueError("entropy must be nonnegative")
    hlgh = h * math.log2(h) if h > 0 else 0.0
    return (c2 - c1) * h + c1 * ((h + 1) * math.log2(h + 1) - hlgh) + c2


@dataclass(frozen=True)
class CostReport:
    costs: dict[CostConvention, int]
    entropy: float
    bounds: dict[str, float]

    def render(self) -> str:
        lines = [f"cost {conv.value} {c}" for conv, c in self.costs.items()]
        lines.append(f"entropy {self.entropy!r}")
        lines.extend(f"bound {name} {val!r}" for name, val in self.bounds.items())
        return "\n".join(lines) + "\n"


def cost_report(
    inst: ProblemInstance,
    shape: TreeShape,
    assignment: MemoryAssignment | None = None,
    model: MemoryModel | None = None,
) -> CostReport:
    costs = {CostConvention.RAM_SEARCH: ram_cost(inst, shape)}
    if assignment is not None and model is not None:
        costs[CostConvention.SEARCH_ACCESS] = hmm_cost(
            inst, shape, assignment, model, CostConvention.SEARCH_ACCESS
        )
        costs[CostConvention.PAPER_HMM] = hmm_cost(
            inst, shape, assignment, model, CostConvention.PAPER_HMM
        )
        if assignment.mode is AssignmentMode.ALL_NODES:
            costs[CostConvention.STORED_EXTERNAL] = hmm_cost(
                inst, shape, assignment, model, CostConvention.STORED_EXTERNAL
            )
    return CostReport(costs, entropy(inst), lower_bounds(inst))
