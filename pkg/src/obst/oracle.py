"""Ground truth by exhaustive search.

Everything here is deliberately brute force: enumerate shapes, place
optimally per shape, take the minimum. The solvers in the rest of the
package are held to exact agreement with these results on small
instances. Also implements the constrained optima (fixed root, fixed
cheap-location split) used to probe monotonicity conjectures, and a
randomized scanner that hunts for violating instances.
"""
from __future__ import annotations

from dataclasses import dataclass

from .assign import greedy_assign
from .cost import CostConvention, Solution, hmm_cost, ram_cost
from .errors import InfeasibleError, SizeGuardError
from .model import MemoryModel, ProblemInstance, instance_text
from .ram import k1
from .tree import AssignmentMode, MemoryAssignment, TreeShape, serialize_shape

ENUM_CAP = 15
NAIVE_CAP = 8
MULTINOMIAL_CAP = 6

_ROOT_CACHE: dict[tuple[int, int], list] = {}


def _iter_roots(i: int, j: int):
    """All subtree structures over keys i..j, roots ascending. Small
    ranges are cached as lists; larger ones stream to bound memory."""
    if j < i:
        yield None
        return
    if j - i + 1 <= 10:
        cached = _ROOT_CACHE.get((i, j))
        if cached is None:
            cached = [
                (k, left, right)
                for k in range(i, j + 1)
                for left in _iter_roots(i, k - 1)
                for right in _iter_roots(k + 1, j)
            ]
            _ROOT_CACHE[(i, j)] = cached
        yield from cached
        return
    for k in range(i, j + 1):
        for left in _iter_roots(i, k - 1):
            for right in _iter_roots(k + 1, j):
                yield (k, left, right)


def enumerate_shapes(i: int, j: int):
    """Yield every BST shape over keys i..j (Catalan(j-i+1) of them)."""
    if j - i + 1 > ENUM_CAP:
        raise SizeGuardError(f"refusing to enumerate shapes for {j - i + 1} keys > {ENUM_CAP}")
    if j < i:
        raise ValueError("range must contain at least one key")
    for root in _iter_roots(i, j):
        yield TreeShape(i, j, root)


def _mode_for(convention: CostConvention) -> AssignmentMode:
    if convention is CostConvention.STORED_EXTERNAL:
        return AssignmentMode.ALL_NODES
    return AssignmentMode.INTERNAL_ONLY


def _paper_hmm_coefficients(inst: ProblemInstance, shape: TreeShape) -> dict:
    """Per internal node: subtree weight plus the gap frequencies of its
    external children (an unsuccessful search ends with one extra probe
    at the gap's parent)."""
    coeffs = shape.subtree_weights(inst)
    out = {}
    stack = [shape.root]
    while stack:
        nd = stack.pop()
        k = nd[0]
        extra = 0
        for child, gap in ((nd[1], k - 1), (nd[2], k)):
            if child is None:
                extra += inst.q[gap]
            else:
                stack.append(child)
        out[("x", k)] = coeffs[("x", k)] + extra
    return out


def _sorted_pairing(coeffs: dict, costs: list[int], model: MemoryModel) -> tuple[int, MemoryAssignment, AssignmentMode]:
    """Optimal free placement: heaviest coefficient to cheapest cost.
    Returns the cost and a concrete assignment over the model's
    cheapest len(coeffs) addresses."""
    order = sorted(coeffs.items(), key=lambda t: (-t[1], t[0][1], t[0][0]))
    total = sum(c * a for (_, c), a in zip(order, costs))
    mode = AssignmentMode.ALL_NODES if any(k == "z" for k, _ in coeffs) else AssignmentMode.INTERNAL_ONLY
    addresses = {node: addr for (node, _), addr in zip(order, range(1, len(order) + 1))}
    return total, MemoryAssignment(mode, addresses), mode


def best_placement(
    inst: ProblemInstance,
    shape: TreeShape,
    model: MemoryModel,
    convention: CostConvention,
) -> MemoryAssignment:
    """Cost-optimal placement of a fixed shape under the convention."""
    mode = _mode_for(convention)
    if convention is CostConvention.PAPER_HMM:
        coeffs = _paper_hmm_coefficients(inst, shape)
        costs = model.location_costs(len(coeffs))
        _, assignment, _ = _sorted_pairing(coeffs, costs, model)
        return assignment
    return greedy_assign(inst, shape, model, mode)


def naive_optimum(
    inst: ProblemInstance, model: MemoryModel | None, convention: CostConvention
) -> Solution:
    """Global optimum by trying every shape with its best placement.

    Valid because for any fixed shape the placement problem is solved
    exactly (heaviest-subtree-to-cheapest-location). Ties between shapes
    go to the lexicographically smallest serialization.
    """
    n = inst.n
    if n > NAIVE_CAP:
        raise SizeGuardError(f"naive search refuses n={n} > {NAIVE_CAP}")
    if convention is not CostConvention.RAM_SEARCH:
        if model is None:
            raise ValueError("HMM conventions need a memory model")
        need = 2 * n + 1 if convention is CostConvention.STORED_EXTERNAL else n
        if model.total < need:
            raise InfeasibleError(f"need {need} locations, model has {model.total}")
        model = model.restrict(need)
    best = None
    best_key = None
    for shape in enumerate_shapes(1, n):
        if convention is CostConvention.RAM_SEARCH:
            cost = ram_cost(inst, shape)
            assignment = None
        else:
            assignment = best_placement(inst, shape, model, convention)
            cost = hmm_cost(inst, shape, assignment, model, convention)
        key = (cost, serialize_shape(shape))
        if best_key is None or key < best_key:
            best_key = key
            best = Solution(shape, assignment, cost, convention, "naive")
    return best


def multinomial_optimum(inst: ProblemInstance, model: MemoryModel) -> Solution:
    """Independent second oracle for the search-access convention:
    enumerate every distinct way the cost multiset can be dealt to the
    keys, and solve the fixed-placement tree DP for each."""
    import itertools

    from .assign import fixed_assignment_dp

    n = inst.n
    if n > MULTINOMIAL_CAP:
        raise SizeGuardError(f"multinomial search refuses n={n} > {MULTINOMIAL_CAP}")
    if model.total < n:
        raise InfeasibleError(f"need {n} locations, model has {model.total}")
    m = model.restrict(n)
    costs = m.location_costs()
    # addresses grouped by cost so a cost permutation maps to addresses
    by_cost: dict[int, list[int]] = {}
    for addr in range(1, n + 1):
        by_cost.setdefault(m.mu(addr), []).append(addr)
    best = None
    for perm in sorted(set(itertools.permutations(costs))):
        pools = {c: list(addrs) for c, addrs in by_cost.items()}
        phi = {k: pools[perm[k - 1]].pop(0) for k in range(1, n + 1)}
        sol = fixed_assignment_dp(inst, m, phi)
        if best is None or sol.cost < best.cost:
            best = Solution(sol.shape, sol.assignment, sol.cost, sol.convention, "multinomial")
    return best


# ---------------------------------------------------------------------------
# constrained optima over two-level models


def _side_catalog(inst: ProblemInstance, lo: int, hi: int, convention: CostConvention, cache: dict):
    """For every shape of the side range, the list of (coefficient,
    node) pairs sorted heaviest first. Empty side: one gap node under
    the all-nodes convention, nothing otherwise."""
    key = (lo, hi, convention)
    hit = cache.get(key)
    if hit is not None:
        return hit
    mode = _mode_for(convention)
    out = []
    if hi < lo:
        if mode is AssignmentMode.ALL_NODES:
            out.append((None, ((inst.q[lo - 1], ("z", lo - 1)),)))
        else:
            out.append((None, ()))
    else:
        for shape in enumerate_shapes(lo, hi):
            if convention is CostConvention.PAPER_HMM:
                coeffs = _paper_hmm_coefficients(inst, shape)
            else:
                coeffs = shape.subtree_weights(inst)
                if mode is AssignmentMode.INTERNAL_ONLY:
                    coeffs = {nd: w for nd, w in coeffs.items() if nd[0] == "x"}
            order = tuple(
                sorted(((w, nd) for nd, w in coeffs.items()), key=lambda t: (-t[0], t[1][1], t[1][0]))
            )
            out.append((shape.root, order))
    cache[key] = out
    return out


def _side_best(catalog, costs: list[int]) -> tuple[int, tuple, tuple]:
    """Minimum dot product of a side's sorted coefficients with the
    sorted cost multiset, over all side shapes."""
    costs = sorted(costs)
    best = None
    best_entry = None
    for root, order in catalog:
        v = sum(w * c for (w, _), c in zip(order, costs))
        if best is None or v < best:
            best = v
            best_entry = (root, order)
    return best, best_entry[0], best_entry[1]


@dataclass(frozen=True)
class ConstrainedResult:
    solution: Solution
    root: int
    left_cheap: int
    left_cost: int
    right_cost: int


def constrained_optimum(
    inst: ProblemInstance,
    model: MemoryModel,
    convention: CostConvention,
    root_k: int | None = None,
    left_cheap: int | None = None,
    _cache: dict | None = None,
) -> ConstrainedResult:
    """Exact optimum over a two-level model subject to a fixed root
    and/or a fixed number of cheap locations in the root's left subtree.
    The root itself always occupies one cheap location and counts toward
    neither side.

    Once the root and the per-side location multisets are fixed, the two
    sides are independent, so each is optimized by enumerating its
    shapes; that keeps n up to 15 tractable where whole-tree enumeration
    is not.
    """
    n = inst.n
    if n > ENUM_CAP:
        raise SizeGuardError(f"constrained search refuses n={n} > {ENUM_CAP}")
    if convention is CostConvention.RAM_SEARCH:
        raise ValueError("constrained search needs a location-sensitive convention")
    mode = _mode_for(convention)
    need = 2 * n + 1 if mode is AssignmentMode.ALL_NODES else n
    if model.total < need:
        raise InfeasibleError(f"need {need} locations, model has {model.total}")
    m = model.restrict(need)
    if m.h > 2:
        raise ValueError("constrained search is defined for two-level models")
    if m.h == 1:
        # degenerate: every location is "cheap"
        m1, c1 = m.levels[0]
        c2 = c1
    else:
        (m1, c1), (_, c2) = m.levels
    cache = _cache if _cache is not None else {}
    per_key = 2 if mode is AssignmentMode.ALL_NODES else 1
    extra = 1 if mode is AssignmentMode.ALL_NODES else 0
    root_coeff_base = inst.weight(1, n)

    best = None  # (total, serialized tiebreak) -> full record
    best_rec = None
    for k in [root_k] if root_k is not None else range(1, n + 1):
        if not (1 <= k <= n):
            raise ValueError(f"root index {k} out of range")
        sl = per_key * (k - 1) + extra
        sr = per_key * (n - k) + extra
        m_lo = max(0, (m1 - 1) - sr)
        m_hi = min(m1 - 1, sl)
        m_values = [left_cheap] if left_cheap is not None else range(m_lo, m_hi + 1)
        root_coeff = root_coeff_base
        if convention is CostConvention.PAPER_HMM:
            if k == 1:
                root_coeff += inst.q[0]
            if k == n:
                root_coeff += inst.q[n]
        for mc in m_values:
            if not (m_lo <= mc <= m_hi):
                if root_k is not None:
                    raise InfeasibleError(
                        f"{mc} cheap locations on the left are infeasible for root {k}"
                    )
                continue
            left_costs = [c1] * mc + [c2] * (sl - mc)
            right_costs = [c1] * (m1 - 1 - mc) + [c2] * (sr - (m1 - 1 - mc))
            lcat = _side_catalog(inst, 1, k - 1, convention, cache)
            rcat = _side_catalog(inst, k + 1, n, convention, cache)
            lbest, lroot, lorder = _side_best(lcat, left_costs)
            rbest, rroot, rorder = _side_best(rcat, right_costs)
            total = root_coeff * c1 + lbest + rbest
            root_node = (k, lroot, rroot)
            key = (total, serialize_shape(TreeShape(1, n, root_node)))
            if best is None or key < best:
                best = key
                best_rec = (total, k, mc, lbest, rbest, root_node, lorder, rorder, left_costs, right_costs)
    if best_rec is None:
        raise InfeasibleError("no feasible root/split satisfies the constraints")

    total, k, mc, lbest, rbest, root_node, lorder, rorder, left_costs, right_costs = best_rec
    shape = TreeShape(1, n, root_node)
    # concrete addresses: cheap block is 1..m1; root at 1, left cheap next
    addresses = {("x", k): 1}
    cheap_next = 2
    exp_next = m1 + 1
    for order, costs in ((lorder, sorted(left_costs)), (rorder, sorted(right_costs))):
        for (_, node), c in zip(order, costs):
            if c == c1:
                addresses[node] = cheap_next
                cheap_next += 1
            else:
                addresses[node] = exp_next
                exp_next += 1
    assignment = MemoryAssignment(mode, addresses)
    sol = Solution(shape, assignment, total, convention, "constrained")
    return ConstrainedResult(sol, k, mc, lbest, rbest)


def unimodal_sweep(
    inst: ProblemInstance,
    model: MemoryModel,
    root_k: int,
    left_cheap_values,
    convention: CostConvention = CostConvention.STORED_EXTERNAL,
) -> list[tuple[int, int, int, int]]:
    """Rows (left_cheap, left_cost, right_cost, sum) for a fixed root.
    The root's own term is constant across rows and excluded from sum."""
    cache: dict = {}
    rows = []
    for mc in left_cheap_values:
        res = constrained_optimum(inst, model, convention, root_k=root_k, left_cheap=mc, _cache=cache)
        rows.append((mc, res.left_cost, res.right_cost, res.left_cost + res.right_cost))
    return rows


# ---------------------------------------------------------------------------
# conjecture scanning


@dataclass(frozen=True)
class Finding:
    kind: str
    detail: str
    instance: str


def scan_instance(
    inst: ProblemInstance,
    model: MemoryModel,
    convention: CostConvention = CostConvention.STORED_EXTERNAL,
) -> list[Finding]:
    """Check one instance for shape divergence between uniform-cost and
    hierarchical optima, and for violations of three tempting
    monotonicity properties of the constrained optima:

      1. the optimal root index never decreases as the left subtree is
         granted one more cheap location;
      2. moving the root one key right never decreases the optimal
         number of cheap locations on the left;
      3. for a fixed root, cost is unimodal in the cheap-left count.

    None of the three holds in general; this scanner finds witnesses.
    """
    findings = []
    text = instance_text(inst, model)
    cache: dict = {}

    _, ram_sol = k1(inst)
    hmm_sol = naive_optimum(inst, model, convention)
    if serialize_shape(ram_sol.shape) != serialize_shape(hmm_sol.shape):
        findings.append(
            Finding(
                "shape_divergence",
                f"uniform-cost optimum {serialize_shape(ram_sol.shape)} vs "
                f"hierarchical optimum {serialize_shape(hmm_sol.shape)}",
                text,
            )
        )

    n = inst.n
    mode = _mode_for(convention)
    need = 2 * n + 1 if mode is AssignmentMode.ALL_NODES else n
    m = model.restrict(need)
    if m.h != 2:
        return findings
    m1 = m.levels[0][0]

    # optimum for each feasible cheap-left count, root free
    by_m: dict[int, ConstrainedResult] = {}
    for mc in range(m1):
        try:
            by_m[mc] = constrained_optimum(inst, model, convention, left_cheap=mc, _cache=cache)
        except InfeasibleError:
            continue
    for mc in sorted(by_m):
        if mc + 1 in by_m and by_m[mc + 1].root < by_m[mc].root:
            findings.append(
                Finding(
                    "root_vs_cheap_monotonicity",
                    f"cheap-left {mc} -> root x{by_m[mc].root}, "
                    f"cheap-left {mc + 1} -> root x{by_m[mc + 1].root}",
                    text,
                )
            )

    # optimum for each fixed root
    by_k = {
        k: constrained_optimum(inst, model, convention, root_k=k, _cache=cache)
        for k in range(1, n + 1)
    }
    for mc, res in sorted(by_m.items()):
        k = res.root
        if k + 1 <= n and by_k[k + 1].left_cheap < mc:
            findings.append(
                Finding(
                    "cheap_vs_root_monotonicity",
                    f"root x{k} optimal with cheap-left {mc}, but root x{k + 1} "
                    f"optimum uses cheap-left {by_k[k + 1].left_cheap}",
                    text,
                )
            )
            break

    for k in range(1, n + 1):
        sweep = []
        for mc in range(m1):
            try:
                res = constrained_optimum(
                    inst, model, convention, root_k=k, left_cheap=mc, _cache=cache
                )
            except InfeasibleError:
                continue
            sweep.append((mc, res.left_cost + res.right_cost))
        for t in range(1, len(sweep) - 1):
            if sweep[t][1] > sweep[t - 1][1] and sweep[t][1] > sweep[t + 1][1]:
                findings.append(
                    Finding(
                        "unimodality",
                        f"root x{k}: cost at cheap-left {sweep[t][0]} exceeds both neighbors",
                        text,
                    )
                )
                break
    return findings


def conjecture_scan(
    seed: int,
    trials: int,
    n_max: int = 6,
    convention: CostConvention = CostConvention.STORED_EXTERNAL,
) -> list[Finding]:
    """Randomized hunt for conjecture-violating instances; reproducible
    for a fixed seed. Each trial draws a small instance and a two-level
    model covering all its nodes."""
    import random

    if n_max > NAIVE_CAP:
        raise ValueError(f"per-trial size must stay within the naive guard {NAIVE_CAP}")
    rng = random.Random(seed)
    findings = []
    for _ in range(trials):
        n = rng.randint(2, n_max)
        p = tuple(rng.randint(0, 10) for _ in range(n))
        q = tuple(rng.randint(0, 10) for _ in range(n + 1))
        if sum(p) + sum(q) == 0:
            continue
        inst = ProblemInstance(p, q)
        need = 2 * n + 1 if convention is CostConvention.STORED_EXTERNAL else n
        m1 = rng.randint(1, need - 1)
        c1 = rng.randint(1, 10)
        c2 = c1 + rng.randint(1, 20)
        model = MemoryModel(((m1, c1), (need - m1, c2)))
        findings.extend(scan_instance(inst, model, convention))
    return findings
