import math
import random

import pytest

from obst.cost import (
    CostConvention,
    approx_gap_bound,
    cost_report,
    entropy,
    hmm_cost,
    internal_weight_sum,
    lower_bounds,
    ram_cost,
)
from obst.assign import greedy_assign
from obst.model import MemoryModel, ProblemInstance
from obst.tree import AssignmentMode, TreeShape

from conftest import rand_instance, rand_shape


def test_ram_cost_hand_check():
    # root 1, right child 2: p1*1 + p2*2 + q0*(2-1) + q1*(3-1) + q2*(3-1)
    inst = ProblemInstance((5, 3), (2, 1, 4))
    shape = TreeShape(1, 2, (1, None, (2, None, None)))
    assert ram_cost(inst, shape) == 5 + 6 + 2 + 2 + 8


def test_ram_cost_equals_internal_weight_sum():
    rng = random.Random(21)
    for _ in range(50):
        inst = rand_instance(rng, rng.randint(1, 10))
        shape = rand_shape(rng, inst.n)
        assert ram_cost(inst, shape) == internal_weight_sum(inst, shape)


def test_ram_cost_range_check():
    inst = ProblemInstance((1, 1), (0, 0, 0))
    with pytest.raises(ValueError):
        ram_cost(inst, TreeShape(1, 1, (1, None, None)))


def test_unit_cost_equivalences():
    rng = random.Random(22)
    for _ in range(40):
        inst = rand_instance(rng, rng.randint(1, 8))
        shape = rand_shape(rng, inst.n)
        unit = MemoryModel(((2 * inst.n + 1, 1),))
        a_int = greedy_assign(inst, shape, unit, AssignmentMode.INTERNAL_ONLY)
        a_all = greedy_assign(inst, shape, unit, AssignmentMode.ALL_NODES)
        base = ram_cost(inst, shape)
        assert hmm_cost(inst, shape, a_int, unit, CostConvention.SEARCH_ACCESS) == base
        assert hmm_cost(inst, shape, a_int, unit, CostConvention.PAPER_HMM) == base + inst.q_total
        assert (
            hmm_cost(inst, shape, a_all, unit, CostConvention.STORED_EXTERNAL)
            == base + inst.q_total
        )
        assert hmm_cost(inst, shape, None, None, CostConvention.RAM_SEARCH) == base


def test_hmm_cost_guards():
    inst = ProblemInstance((1,), (1, 1))
    shape = TreeShape(1, 1, (1, None, None))
    model = MemoryModel(((3, 1),))
    internal = greedy_assign(inst, shape, model, AssignmentMode.INTERNAL_ONLY)
    with pytest.raises(ValueError):
        hmm_cost(inst, shape, None, model, CostConvention.SEARCH_ACCESS)
    with pytest.raises(ValueError):
        hmm_cost(inst, shape, internal, model, CostConvention.STORED_EXTERNAL)


def test_entropy():
    assert entropy(ProblemInstance((1, 1), (1, 1, 0))) == pytest.approx(2.0)
    assert entropy(ProblemInstance((8,), (0, 0))) == 0.0


def test_lower_bounds_values():
    inst = ProblemInstance((3, 1), (2, 0, 2))
    h = entropy(inst)
    b = lower_bounds(inst)
    assert set(b) == {"mehlhorn", "deprisco_n", "deprisco_h"}
    assert b["mehlhorn"] == pytest.approx(h / math.log2(3))
    psum = 4 / 8
    assert b["deprisco_n"] == pytest.approx(h - 1 - psum * (math.log2(math.log2(3)) - 1))
    assert b["deprisco_h"] == pytest.approx(
        h + h * math.log2(h) - (h + 1) * math.log2(h + 1)
    )


def test_approx_gap_bound():
    assert approx_gap_bound(1, 1, 0.0) == pytest.approx(1.0)
    assert approx_gap_bound(2, 5, 1.0) == pytest.approx(3 * 1 + 2 * 2 + 5)
    with pytest.raises(ValueError):
        approx_gap_bound(5, 2, 1.0)
    with pytest.raises(ValueError):
        approx_gap_bound(1, 2, -0.5)


def test_cost_report_render():
    inst = ProblemInstance((2, 1), (1, 0, 1))
    shape = TreeShape(1, 2, (1, None, (2, None, None)))
    model = MemoryModel(((5, 1), (2, 3)))
    plain = cost_report(inst, shape)
    assert set(plain.costs) == {CostConvention.RAM_SEARCH}
    a_all = greedy_assign(inst, shape, model, AssignmentMode.ALL_NODES)
    full = cost_report(inst, shape, a_all, model)
    assert set(full.costs) == set(CostConvention)
    text = full.render()
    assert text.startswith("cost ram ")
    assert "entropy " in text and "bound mehlhorn " in text
