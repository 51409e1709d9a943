import random

import pytest

from obst.assign import fixed_assignment_dp, greedy_assign
from obst.cost import CostConvention, hmm_cost
from obst.errors import InfeasibleError
from obst.model import MemoryModel
from obst.ram import k1
from obst.tree import AssignmentMode

from conftest import grouped_assignments, rand_instance, rand_model, rand_shape


def _enum_minimum(inst, shape, model, mode, convention):
    """Exhaustive minimum over placements, grouping equal-cost addresses."""
    nodes = [
        nid for nid, *_ in shape.nodes_preorder()
        if mode is AssignmentMode.ALL_NODES or nid[0] == "x"
    ]
    weights = shape.subtree_weights(inst)
    m = model.restrict(len(nodes))
    best = None
    for costs in grouped_assignments(len(nodes), m.levels):
        total = sum(weights[nid] * c for nid, c in zip(nodes, costs))
        if best is None or total < best:
            best = total
    return best


@pytest.mark.parametrize("mode,conv", [
    (AssignmentMode.INTERNAL_ONLY, CostConvention.SEARCH_ACCESS),
    (AssignmentMode.ALL_NODES, CostConvention.STORED_EXTERNAL),
])
def test_greedy_matches_enumeration(mode, conv):
    rng = random.Random(41)
    for _ in range(40):
        inst = rand_instance(rng, rng.randint(1, 6))
        shape = rand_shape(rng, inst.n)
        need = inst.n if mode is AssignmentMode.INTERNAL_ONLY else 2 * inst.n + 1
        model = rand_model(rng, need + rng.randint(0, 3), rng.randint(1, 3))
        assignment = greedy_assign(inst, shape, model, mode)
        got = hmm_cost(inst, shape, assignment, model, conv)
        assert got == _enum_minimum(inst, shape, model, mode, conv)
        assert assignment.check_heap_order(shape, model)
        assert len(assignment.addresses) == need


def test_greedy_uses_a_prefix_of_addresses():
    rng = random.Random(42)
    inst = rand_instance(rng, 5)
    shape = rand_shape(rng, 5)
    model = rand_model(rng, 11, 2)
    a = greedy_assign(inst, shape, model, AssignmentMode.ALL_NODES)
    assert sorted(a.addresses.values()) == list(range(1, 12))


def test_greedy_infeasible():
    rng = random.Random(43)
    inst = rand_instance(rng, 4)
    shape = rand_shape(rng, 4)
    with pytest.raises(InfeasibleError):
        greedy_assign(inst, shape, MemoryModel(((3, 1),)))
    with pytest.raises(InfeasibleError):
        greedy_assign(inst, shape, MemoryModel(((8, 1),)), AssignmentMode.ALL_NODES)


def test_fixed_dp_unit_cost_equals_k1():
    rng = random.Random(44)
    for _ in range(30):
        inst = rand_instance(rng, rng.randint(1, 9))
        unit = MemoryModel(((inst.n, 1),))
        keys = list(range(1, inst.n + 1))
        rng.shuffle(keys)
        phi = {k: a for a, k in enumerate(keys, start=1)}
        sol = fixed_assignment_dp(inst, unit, phi)
        _, ram_sol = k1(inst)
        assert sol.cost == ram_sol.cost


def test_fixed_dp_cost_is_consistent():
    rng = random.Random(45)
    for _ in range(20):
        inst = rand_instance(rng, rng.randint(1, 7))
        model = rand_model(rng, inst.n, rng.randint(1, 3))
        keys = list(range(1, inst.n + 1))
        rng.shuffle(keys)
        phi = {k: a for a, k in enumerate(keys, start=1)}
        sol = fixed_assignment_dp(inst, model, phi)
        assert sol.cost == hmm_cost(
            inst, sol.shape, sol.assignment, model, CostConvention.SEARCH_ACCESS
        )


def test_fixed_dp_validation():
    rng = random.Random(46)
    inst = rand_instance(rng, 3)
    model = MemoryModel(((3, 1),))
    with pytest.raises(ValueError):
        fixed_assignment_dp(inst, model, {1: 1, 2: 2})
    with pytest.raises(ValueError):
        fixed_assignment_dp(inst, model, {1: 1, 2: 1, 3: 2})
