"""Optimum BSTs on uniform-cost memory.

Two exact constructions: a cubic full-scan DP and the quadratic variant
that restricts each root search to the window given by root
monotonicity. Plus runtime-checkable verifiers for the structural
properties (monotone weights, concave quadrangle inequality, monotone
root table) that justify the speedup.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cost import CostConvention, Solution
from .model import ProblemInstance
from .tree import Node, TreeShape


@dataclass(frozen=True)
class DpTables:
    """Cost and root tables, 1-based.

    c[i][j] is the optimal sum of subtree weights over internal nodes of
    a tree on keys i..j; the empty range j = i-1 costs 0. This base
    differs from the common textbook base q_i by the constant sum(q),
    which is independent of the tree, so the two conventions pick the
    same roots; dp_raw() reports the shifted value.
    """

    n: int
    c: tuple
    r: tuple
    inner_iterations: int

    def cost(self, i: int, j: int) -> int:
        return self.c[i][j]

    def root(self, i: int, j: int) -> int | None:
        return self.r[i][j]

    def dp_raw(self, inst: ProblemInstance, i: int = 1, j: int | None = None) -> int:
        """The same optimum under the base-q_i accumulation: every
        subrange adds its boundary gap weights once per node on the
        range's span, which totals c + sum of q over the range's gaps."""
        if j is None:
            j = self.n
        return self.c[i][j] + sum(inst.q[i - 1 : j + 1])


def shape_from_roots(tables: DpTables, i: int = 1, j: int | None = None) -> TreeShape:
    """Extract the optimal shape from the root table in linear time."""
    if j is None:
        j = tables.n
    # build bottom-up with an explicit stack of (i, j) jobs
    built: dict[tuple[int, int], Node] = {}
    stack: list[tuple[int, int, bool]] = [(i, j, False)]
    while stack:
        lo, hi, expanded = stack.pop()
        if hi < lo:
            built[(lo, hi)] = None
            continue
        k = tables.r[lo][hi]
        if expanded:
            built[(lo, hi)] = (k, built[(lo, k - 1)], built[(k + 1, hi)])
        else:
            stack.append((lo, hi, True))
            stack.append((lo, k - 1, False))
            stack.append((k + 1, hi, False))
    return TreeShape(i, j, built[(i, j)])


def _solve(inst: ProblemInstance, speedup: bool, max_d: int | None = None) -> tuple[DpTables, Solution | None]:
    n = inst.n
    if max_d is None:
        max_d = n - 1
    c = [[0] * (n + 1) for _ in range(n + 2)]
    r = [[None] * (n + 1) for _ in range(n + 2)]
    inner = 0
    for i in range(1, n + 1):
        c[i][i] = inst.weight(i, i)
        r[i][i] = i
        inner += 1
    for d in range(1, max_d + 1):
        for i in range(1, n - d + 1):
            j = i + d
            if speedup:
                klo, khi = r[i][j - 1], r[i + 1][j]
            else:
                klo, khi = i, j
            w = inst.weight(i, j)
            best = None
            best_k = None
            for k in range(klo, khi + 1):
                inner += 1
                v = w + c[i][k - 1] + c[k + 1][j]
                if best is None or v < best:
                    best = v
                    best_k = k
            c[i][j] = best
            r[i][j] = best_k
    tables = DpTables(n, tuple(tuple(row) for row in c), tuple(tuple(row) for row in r), inner)
    if max_d < n - 1:
        return tables, None
    shape = shape_from_roots(tables)
    sol = Solution(shape, None, tables.c[1][n], CostConvention.RAM_SEARCH, "k2" if speedup else "k1")
    return tables, sol


def k1(inst: ProblemInstance) -> tuple[DpTables, Solution]:
    """Cubic DP: every cell scans all candidate roots."""
    return _solve(inst, speedup=False)


def k2(inst: ProblemInstance) -> tuple[DpTables, Solution]:
    """Quadratic DP: each cell scans only the window between the roots
    of its two one-shorter subranges. Ties keep the smallest root, which
    is what makes the window bounds valid."""
    return _solve(inst, speedup=True)


def k2_tables(inst: ProblemInstance, max_d: int) -> DpTables:
    """Quadratic DP stopped after diagonal max_d; cells for longer
    ranges are left unfilled (cost 0, root None)."""
    tables, _ = _solve(inst, speedup=True, max_d=max_d)
    return tables


@dataclass(frozen=True)
class QuadrangleReport:
    weight_monotone: bool
    weight_qi: bool
    cost_qi: bool
    root_monotone: bool
    first_violation: tuple | None

    @property
    def ok(self) -> bool:
        return self.weight_monotone and self.weight_qi and self.cost_qi and self.root_monotone


def check_quadrangle(inst: ProblemInstance, tables: DpTables | None = None) -> QuadrangleReport:
    """Verify the properties the quadratic speedup rests on: interval
    weights monotone under inclusion and quadrangle-concave (here with
    equality, being an additive set function), the computed cost table
    quadrangle-concave, and the root table monotone along rows and
    columns. O(n^4) scan; intended for modest n."""
    if tables is None:
        tables, _ = k2(inst)
    n = inst.n
    first = None

    def fail(tag, *ixs):
        nonlocal first
        if first is None:
            first = (tag, *ixs)

    w_mono = True
    for i in range(1, n + 1):
        for j in range(i - 1, n + 1):
            for i2 in range(1, i + 1):
                for j2 in range(j, n + 1):
                    if i2 <= j2 + 1 and inst.weight(i, j) > inst.weight(i2, j2):
                        w_mono = False
                        fail("weight_monotone", i, i2, j, j2)
    w_qi = True
    c_qi = True
    for i in range(1, n + 2):
        for i2 in range(i, n + 2):
            for j in range(i2 - 1, n + 1):
                for j2 in range(j, n + 1):
                    # quadruple i <= i2 <= j <= j2, all four ranges valid
                    if inst.weight(i, j) + inst.weight(i2, j2) > inst.weight(i2, j) + inst.weight(i, j2):
                        w_qi = False
                        fail("weight_qi", i, i2, j, j2)
                    if tables.c[i][j] + tables.c[i2][j2] > tables.c[i2][j] + tables.c[i][j2]:
                        c_qi = False
                        fail("cost_qi", i, i2, j, j2)
    r_mono = True
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if not (tables.r[i][j - 1] <= tables.r[i][j] <= tables.r[i + 1][j]):
                r_mono = False
                fail("root_monotone", i, j)
    return QuadrangleReport(w_mono, w_qi, c_qi, r_mono, first)
