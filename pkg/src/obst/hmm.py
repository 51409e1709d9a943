"""Exact solvers for optimum BSTs on hierarchical memory.

All four solvers minimize the search-access cost (sum over internal
nodes of subtree weight times the access cost of the node's location)
over every shape and every placement of the keys into the cheapest n
locations of the model. They differ only in how they organize the
search:

  parts     DP over (key range, per-level location budget); general h.
  trunks    DP over the nodes placed outside the last level; the bulk
            of every subtree lives in the last level and is resolved by
            one shared uniform-cost DP. Pays off when the cheap levels
            are small.
  split     top-down enumeration of which locations go left of the
            root; exponential, guarded, useful as a reference.
  twolevel  two-level models only; pure all-cheap/all-expensive
            subtrees come from a truncated uniform-cost DP, mixed ones
            from a four-index DP.

Every solver returns the same exact cost (the oracle suite holds them
to that), a shape, and the heap-ordered placement for it.
"""
from __future__ import annotations

from .assign import greedy_assign
from .cost import CostConvention, Solution
from .errors import InfeasibleError, SizeGuardError
from .model import MemoryModel, ProblemInstance
from .ram import k2, k2_tables, shape_from_roots
from .tree import AssignmentMode, TreeShape


def _bounded_compositions(caps: tuple[int, ...], total: int) -> list[tuple[int, ...]]:
    """All vectors 0 <= v_l <= caps[l] with sum(v) = total, lexicographic."""
    h = len(caps)
    if total < 0 or total > sum(caps):
        return []
    if h == 0:
        return [()]
    out: list[tuple[int, ...]] = []
    cur = [0] * h

    def rec(l: int, rem: int):
        if l == h - 1:
            if rem <= caps[l]:
                cur[l] = rem
                out.append(tuple(cur))
            return
        # keep at least rem - sum(later caps) here so the tail can absorb the rest
        lo = max(0, rem - sum(caps[l + 1 :]))
        for v in range(lo, min(caps[l], rem) + 1):
            cur[l] = v
            rec(l + 1, rem - v)

    rec(0, total)
    return out


def _restrict_for(inst: ProblemInstance, model: MemoryModel) -> MemoryModel:
    if model.total < inst.n:
        raise InfeasibleError(f"{inst.n} keys to place, model has {model.total} locations")
    return model.restrict(inst.n)


def _uniform_solution(inst: ProblemInstance, model: MemoryModel, algorithm: str) -> Solution:
    # one level left after restriction: every location costs the same
    _, base = k2(inst)
    c1 = model.levels[0][1]
    assignment = greedy_assign(inst, base.shape, model, AssignmentMode.INTERNAL_ONLY)
    return Solution(base.shape, assignment, c1 * base.cost, CostConvention.SEARCH_ACCESS, algorithm)


def _finish(inst: ProblemInstance, model: MemoryModel, root, cost: int, algorithm: str) -> Solution:
    shape = TreeShape(1, inst.n, root)
    assignment = greedy_assign(inst, shape, model, AssignmentMode.INTERNAL_ONLY)
    return Solution(shape, assignment, cost, CostConvention.SEARCH_ACCESS, algorithm)


def parts(inst: ProblemInstance, model: MemoryModel) -> Solution:
    """General-h DP over (range, per-level budget).

    A budget for a range says how many of that range's nodes sit in
    each memory level. The range's root always takes one location from
    the cheapest nonempty level of the budget (heap order makes that
    optimal); the remainder is split between the two child ranges every
    feasible way.
    """
    m = _restrict_for(inst, model)
    if m.h == 1:
        return _uniform_solution(inst, m, "parts")
    n = inst.n
    caps = tuple(ml for ml, _ in m.levels)
    lcost = tuple(cl for _, cl in m.levels)
    h = m.h
    zero = (0,) * h
    configs_by_size = [_bounded_compositions(caps, s) for s in range(n + 1)]
    splits_cache: dict[tuple[tuple[int, ...], int], list[tuple[int, ...]]] = {}

    C: dict[tuple, int] = {}
    B: dict[tuple, tuple] = {}
    for i in range(1, n + 2):
        C[(i, i - 1, zero)] = 0
    for d in range(n):
        size = d + 1
        for i in range(1, n - d + 1):
            j = i + d
            w = inst.weight(i, j)
            for cfg in configs_by_size[size]:
                lam = next(l for l in range(h) if cfg[l])
                rem = list(cfg)
                rem[lam] -= 1
                rem = tuple(rem)
                root_term = lcost[lam] * w
                best = None
                best_bp = None
                for k in range(i, j + 1):
                    key = (rem, k - i)
                    lefts = splits_cache.get(key)
                    if lefts is None:
                        lefts = _bounded_compositions(rem, k - i)
                        splits_cache[key] = lefts
                    for L in lefts:
                        R = tuple(rem[l] - L[l] for l in range(h))
                        right = C.get((k + 1, j, R))
                        if right is None:
                            continue
                        v = root_term + C[(i, k - 1, L)] + right
                        if best is None or v < best:
                            best = v
                            best_bp = (k, L, R)
                if best is not None:
                    C[(i, j, cfg)] = best
                    B[(i, j, cfg)] = best_bp

    top = caps  # the restricted model has exactly n locations
    cost = C[(1, n, top)]

    def build(i: int, j: int, cfg):
        if j < i:
            return None
        k, L, R = B[(i, j, cfg)]
        return (k, build(i, k - 1, L), build(k + 1, j, R))

    return _finish(inst, m, build(1, n, top), cost, "parts")


def trunks(inst: ProblemInstance, model: MemoryModel) -> Solution:
    """DP over the trunk: the per-level counts of nodes occupying the
    levels below the last one. A subtree whose trunk budget is empty is
    entirely in the last level, where locations are interchangeable, so
    its cost is the last-level cost times the uniform-cost optimum of
    the range, precomputed once for all ranges by the quadratic DP.
    Exact, and fast when the cheap levels hold few nodes.
    """
    m = _restrict_for(inst, model)
    if m.h == 1:
        return _uniform_solution(inst, m, "trunks")
    n = inst.n
    tcaps = tuple(ml for ml, _ in m.levels[:-1])
    lcost = tuple(cl for _, cl in m.levels[:-1])
    ch = m.levels[-1][1]
    ht = len(tcaps)
    zero = (0,) * ht
    tables, _ = k2(inst)

    T: dict[tuple, int] = {}
    B: dict[tuple, tuple] = {}
    for i in range(1, n + 2):
        for j in range(i - 1, n + 1):
            T[(i, j, zero)] = ch * tables.c[i][j]
    for d in range(n):
        size = d + 1
        for i in range(1, n - d + 1):
            j = i + d
            w = inst.weight(i, j)
            max_s = min(size, sum(tcaps))
            for s in range(1, max_s + 1):
                for kappa in _bounded_compositions(tcaps, s):
                    lam = next(l for l in range(ht) if kappa[l])
                    rem = list(kappa)
                    rem[lam] -= 1
                    rem = tuple(rem)
                    root_term = lcost[lam] * w
                    best = None
                    best_bp = None
                    for k in range(i, j + 1):
                        lsize, rsize = k - i, j - k
                        # left trunk gets at most lsize nodes, right the rest
                        for t in range(max(0, s - 1 - rsize), min(s - 1, lsize) + 1):
                            for L in _bounded_compositions(rem, t):
                                R = tuple(rem[l] - L[l] for l in range(ht))
                                v = root_term + T[(i, k - 1, L)] + T[(k + 1, j, R)]
                                if best is None or v < best:
                                    best = v
                                    best_bp = (k, L, R)
                    T[(i, j, kappa)] = best
                    B[(i, j, kappa)] = best_bp

    top = tcaps
    cost = T[(1, n, top)]

    def build(i: int, j: int, kappa):
        if j < i:
            return None
        if kappa == zero:
            return shape_from_roots(tables, i, j).root
        k, L, R = B[(i, j, kappa)]
        return (k, build(i, k - 1, L), build(k + 1, j, R))

    return _finish(inst, m, build(1, n, top), cost, "trunks")


SPLIT_CAP = 20


def split(inst: ProblemInstance, location_costs, memoize: bool = False) -> Solution:
    """Top-down exponential reference solver over an explicit cost
    multiset, one cost per key. The root of a range takes the cheapest
    remaining cost; every way of sending a subset of the rest to the
    left subtree is tried (the subset's size fixes the root key).

    memoize=True collapses states that share a range and a remaining
    multiset; the plain recursion mirrors the brute-force procedure and
    is the default.
    """
    n = inst.n
    costs = tuple(sorted(int(c) for c in location_costs))
    if len(costs) != n:
        raise ValueError(f"need exactly {n} location costs, got {len(costs)}")
    if n > SPLIT_CAP:
        raise SizeGuardError(f"split is exponential; refusing n={n} > {SPLIT_CAP}")

    cache: dict[tuple, tuple] = {}

    def solve(i: int, j: int, pool: tuple[int, ...]):
        if j < i:
            return 0, None
        if memoize:
            hit = cache.get((i, j, pool))
            if hit is not None:
                return hit
        c0 = pool[0]
        rest = pool[1:]
        w = inst.weight(i, j)
        s = len(rest)
        best = None
        best_node = None
        if memoize:
            # grouped enumeration: equal costs are interchangeable
            groups = []
            for c in rest:
                if groups and groups[-1][0] == c:
                    groups[-1][1] += 1
                else:
                    groups.append([c, 1])
            gcaps = tuple(cnt for _, cnt in groups)
            for lsize in range(s + 1):
                k = i + lsize
                for take in _bounded_compositions(gcaps, lsize):
                    L = tuple(
                        v for (vc, _), t in zip(groups, take) for v in [vc] * t
                    )
                    R = tuple(
                        v
                        for (vc, _), t, cnt in zip(groups, take, gcaps)
                        for v in [vc] * (cnt - t)
                    )
                    lcost, lnode = solve(i, k - 1, L)
                    rcost, rnode = solve(k + 1, j, R)
                    v = c0 * w + lcost + rcost
                    if best is None or v < best:
                        best = v
                        best_node = (k, lnode, rnode)
        else:
            for mask in range(1 << s):
                L = tuple(rest[t] for t in range(s) if mask >> t & 1)
                R = tuple(rest[t] for t in range(s) if not mask >> t & 1)
                k = i + len(L)
                lcost, lnode = solve(i, k - 1, L)
                rcost, rnode = solve(k + 1, j, R)
                v = c0 * w + lcost + rcost
                if best is None or v < best:
                    best = v
                    best_node = (k, lnode, rnode)
        if memoize:
            cache[(i, j, pool)] = (best, best_node)
        return best, best_node

    cost, root = solve(1, n, costs)
    return _finish(inst, MemoryModel.from_costs(costs), root, cost, "split")


def twolevel(inst: ProblemInstance, model: MemoryModel) -> Solution:
    """Hybrid solver for two-level models.

    Subtrees living entirely in one level are uniform-cost problems,
    solved once by the quadratic DP truncated at the larger level size.
    Mixed subtrees are resolved by a DP over (range, cheap count,
    expensive count); the root of a mixed subtree always takes a cheap
    location.
    """
    m = _restrict_for(inst, model)
    if m.h == 1:
        return _uniform_solution(inst, m, "twolevel")
    if m.h != 2:
        raise ValueError(f"twolevel needs a two-level model, got h={m.h}")
    n = inst.n
    (m1, c1), (m2, c2) = m.levels

    tables = k2_tables(inst, max_d=max(m1, m2) - 1)

    C: dict[tuple, int] = {}
    B: dict[tuple, tuple] = {}
    for i in range(1, n + 2):
        C[(i, i - 1, 0, 0)] = 0
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            s = j - i + 1
            if s <= m2:
                C[(i, j, 0, s)] = c2 * tables.c[i][j]
            if s <= m1:
                C[(i, j, s, 0)] = c1 * tables.c[i][j]

    for d in range(1, n):
        for i in range(1, n - d + 1):
            j = i + d
            s = d + 1
            w = inst.weight(i, j)
            for n1 in range(max(1, s - m2), min(m1, s - 1) + 1):
                n2 = s - n1
                best = None
                best_bp = None
                for k in range(i, j + 1):
                    l, r = k - i, j - k
                    for n1l in range(max(0, (n1 - 1) - r), min(l, n1 - 1) + 1):
                        n1r = n1 - 1 - n1l
                        n2l = l - n1l
                        n2r = r - n1r
                        if n2l < 0 or n2r < 0 or n2l > m2 or n2r > m2:
                            continue
                        left = C.get((i, k - 1, n1l, n2l))
                        right = C.get((k + 1, j, n1r, n2r))
                        if left is None or right is None:
                            continue
                        v = c1 * w + left + right
                        if best is None or v < best:
                            best = v
                            best_bp = (k, n1l, n2l, n1r, n2r)
                if best is not None:
                    C[(i, j, n1, n2)] = best
                    B[(i, j, n1, n2)] = best_bp

    cost = C[(1, n, m1, m2)]

    def build(i: int, j: int, n1: int, n2: int):
        if j < i:
            return None
        if n1 == 0 or n2 == 0:
            return shape_from_roots(tables, i, j).root
        k, n1l, n2l, n1r, n2r = B[(i, j, n1, n2)]
        return (k, build(i, k - 1, n1l, n2l), build(k + 1, j, n1r, n2r))

    return _finish(inst, m, build(1, n, m1, m2), cost, "twolevel")
