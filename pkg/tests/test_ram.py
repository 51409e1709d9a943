import random

from obst.cost import CostConvention, ram_cost
from obst.model import ProblemInstance
from obst.ram import check_quadrangle, k1, k2, k2_tables, shape_from_roots

from conftest import rand_instance


def test_hand_example():
    inst = ProblemInstance((1, 2), (0, 0, 0))
    tables, sol = k1(inst)
    assert sol.cost == 4
    assert sol.shape.root[0] == 2
    assert tables.cost(1, 2) == 4 and tables.root(1, 2) == 2


def test_k1_equals_k2():
    rng = random.Random(31)
    for _ in range(60):
        inst = rand_instance(rng, rng.randint(1, 12))
        t1, s1 = k1(inst)
        t2, s2 = k2(inst)
        assert s1.cost == s2.cost
        assert t1.c == t2.c
        assert s1.cost == ram_cost(inst, s1.shape)
        assert s2.cost == ram_cost(inst, s2.shape)
        assert s1.convention is CostConvention.RAM_SEARCH
        # the speedup must not scan more cells than the full DP
        assert t2.inner_iterations <= t1.inner_iterations


def test_dp_raw_matches_textbook_recursion():
    rng = random.Random(32)

    def textbook(inst, i, j, memo):
        if j < i:
            return inst.q[i - 1]
        hit = memo.get((i, j))
        if hit is None:
            hit = inst.weight(i, j) + min(
                textbook(inst, i, k - 1, memo) + textbook(inst, k + 1, j, memo)
                for k in range(i, j + 1)
            )
            memo[(i, j)] = hit
        return hit

    for _ in range(20):
        inst = rand_instance(rng, rng.randint(1, 8))
        tables, _ = k1(inst)
        memo = {}
        for i in range(1, inst.n + 1):
            for j in range(i, inst.n + 1):
                assert tables.dp_raw(inst, i, j) == textbook(inst, i, j, memo)


def test_k2_tables_prefix():
    rng = random.Random(33)
    for _ in range(20):
        inst = rand_instance(rng, rng.randint(2, 10))
        full, _ = k2(inst)
        cut = rng.randint(0, inst.n - 2)
        part = k2_tables(inst, cut)
        for i in range(1, inst.n + 1):
            for j in range(i, inst.n + 1):
                if j - i <= cut:
                    assert part.c[i][j] == full.c[i][j]
                    assert part.r[i][j] == full.r[i][j]
                else:
                    assert part.r[i][j] is None


def test_shape_from_roots_subranges():
    rng = random.Random(34)
    for _ in range(20):
        inst = rand_instance(rng, rng.randint(2, 9))
        tables, sol = k2(inst)
        assert list(sol.shape.inorder_keys()) == list(range(1, inst.n + 1))
        i = rng.randint(1, inst.n)
        j = rng.randint(i, inst.n)
        sub = shape_from_roots(tables, i, j)
        assert (sub.lo, sub.hi) == (i, j)
        assert sub.root[0] == tables.root(i, j)


def test_quadrangle_report():
    rng = random.Random(35)
    for _ in range(25):
        inst = rand_instance(rng, rng.randint(1, 8))
        report = check_quadrangle(inst)
        assert report.ok, report.first_violation
        assert report.first_violation is None
