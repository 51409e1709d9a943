"""Placement for a fixed tree, and the optimal tree for a fixed placement.

For a fixed shape the optimal placement is heap-ordered: a parent never
sits in a costlier location than a child, because swapping the two
addresses would save (w(parent) - w(child)) * (cost difference) >= 0.
The greedy construction below is therefore exact, not a heuristic.
"""
from __future__ import annotations

import heapq

from .cost import CostConvention, Solution
from .errors import InfeasibleError
from .model import MemoryModel, ProblemInstance
from .ram import shape_from_roots
from .tree import AssignmentMode, MemoryAssignment, TreeShape


def _inorder_pos(node) -> int:
    kind, idx = node
    return 2 * idx - 1 if kind == "x" else 2 * idx


def greedy_assign(
    inst: ProblemInstance,
    shape: TreeShape,
    model: MemoryModel,
    mode: AssignmentMode = AssignmentMode.INTERNAL_ONLY,
) -> MemoryAssignment:
    """Place nodes into addresses cheapest-first, always serving the
    heaviest not-yet-placed node whose parent is already placed.

    Optimal for the fixed shape: under the convention matching the mode
    (internal comparisons only, or every stored node), cost is the dot
    product of subtree weights and location costs, and any optimum can
    be reordered into this one by weight-preserving swaps. Ties go to
    the leftmost node in symmetric order.
    """
    need = shape.size if mode is AssignmentMode.INTERNAL_ONLY else 2 * shape.size + 1
    if model.total < need:
        raise InfeasibleError(f"{need} nodes to place, model has {model.total} locations")
    weights = shape.subtree_weights(inst)

    def push(heap, node):
        heapq.heappush(heap, (-weights[node], _inorder_pos(node), node))

    children: dict = {}
    for node in weights:
        children[node] = []
    stack = [shape.root]
    while stack:
        nd = stack.pop()
        k = nd[0]
        for child, gap in ((nd[1], k - 1), (nd[2], k)):
            if child is None:
                if mode is AssignmentMode.ALL_NODES:
                    children[("x", k)].append(("z", gap))
            else:
                children[("x", k)].append(("x", child[0]))
                stack.append(child)

    heap: list = []
    push(heap, ("x", shape.root[0]))
    addresses: dict = {}
    next_addr = 1
    while heap:
        _, _, node = heapq.heappop(heap)
        addresses[node] = next_addr
        next_addr += 1
        for child in children[node]:
            push(heap, child)
    return MemoryAssignment(mode, addresses)


def fixed_assignment_dp(
    inst: ProblemInstance, model: MemoryModel, phi_keys: dict[int, int]
) -> Solution:
    """Optimal shape when each key's memory address is already decided.

    Cubic DP like the uniform-cost solver, except the root term of each
    range is scaled by the access cost of that root's fixed address. The
    root-window speedup does not carry over, so every candidate root is
    scanned.
    """
    n = inst.n
    if sorted(phi_keys) != list(range(1, n + 1)):
        raise ValueError("placement must cover exactly keys 1..n")
    if len(set(phi_keys.values())) != n:
        raise ValueError("placement must be injective")
    mu = {k: model.mu(a) for k, a in phi_keys.items()}

    from .ram import DpTables

    c = [[0] * (n + 1) for _ in range(n + 2)]
    r = [[None] * (n + 1) for _ in range(n + 2)]
    for d in range(0, n):
        for i in range(1, n - d + 1):
            j = i + d
            w = inst.weight(i, j)
            best = None
            best_k = None
            for k in range(i, j + 1):
                v = w * mu[k] + c[i][k - 1] + c[k + 1][j]
                if best is None or v < best:
                    best = v
                    best_k = k
            c[i][j] = best
            r[i][j] = best_k
    tables = DpTables(n, tuple(tuple(row) for row in c), tuple(tuple(row) for row in r), 0)
    shape = shape_from_roots(tables)
    assignment = MemoryAssignment(
        AssignmentMode.INTERNAL_ONLY, {("x", k): a for k, a in phi_keys.items()}
    )
    return Solution(shape, assignment, c[1][n], CostConvention.SEARCH_ACCESS, "fixed_dp")
