"""Shared helpers for the test suite. Everything is seeded so every
run sees the same instances."""
import random
from itertools import combinations

from obst.model import MemoryModel, ProblemInstance
from obst.tree import TreeShape


def rand_instance(rng: random.Random, n: int, max_freq: int = 10, nonzero: bool = False):
    lo = 1 if nonzero else 0
    p = tuple(rng.randint(lo, max_freq) for _ in range(n))
    q = tuple(rng.randint(lo, max_freq) for _ in range(n + 1))
    if sum(p) + sum(q) == 0:
        q = (1,) + q[1:]
    return ProblemInstance(p, q)


def rand_model(rng: random.Random, total: int, h: int, max_cost: int = 32) -> MemoryModel:
    h = min(h, total)
    costs = sorted(rng.sample(range(1, max_cost + 1), h))
    cuts = sorted(rng.sample(range(1, total), h - 1)) if h > 1 else []
    bounds = [0, *cuts, total]
    return MemoryModel(tuple((bounds[l + 1] - bounds[l], costs[l]) for l in range(h)))


def rand_root(rng: random.Random, lo: int, hi: int):
    if hi < lo:
        return None
    k = rng.randint(lo, hi)
    return (k, rand_root(rng, lo, k - 1), rand_root(rng, k + 1, hi))


def rand_shape(rng: random.Random, n: int) -> TreeShape:
    return TreeShape(1, n, rand_root(rng, 1, n))


def grouped_assignments(node_count: int, groups):
    """Every distinct way to hand cost groups [(count, cost), ...] to
    node slots 0..node_count-1; yields cost-by-slot tuples. Equal costs
    are interchangeable, so this is exponentially smaller than all
    permutations of addresses."""
    assert sum(c for c, _ in groups) == node_count

    def rec(slots, remaining):
        if not remaining:
            yield {}
            return
        (count, cost), rest = remaining[0], remaining[1:]
        for chosen in combinations(slots, count):
            left = tuple(s for s in slots if s not in chosen)
            for tail in rec(left, rest):
                out = dict(tail)
                for s in chosen:
                    out[s] = cost
                yield out

    for mapping in rec(tuple(range(node_count)), tuple(groups)):
        yield tuple(mapping[i] for i in range(node_count))
