"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 infeasible input or a
size-guard refusal, 3 reproduction mismatch.
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from . import approx as approx_mod
from . import hmm, oracle, ram
from .assign import greedy_assign
from .cost import (
    CostConvention,
    Solution,
    cost_report,
    entropy,
    hmm_cost,
    lower_bounds,
    ram_cost,
)
from .errors import InfeasibleError, ObstError, ParseError, SizeGuardError
from .instances import REPRODUCTIONS
from .model import MemoryModel, ProblemInstance, instance_text, parse_instance
from .tree import (
    AssignmentMode,
    parse_assignment,
    parse_shape,
    serialize_assignment,
    serialize_shape,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e}") from None


def _load_instance(path: str):
    return parse_instance(_read(path))


def _require_model(model: MemoryModel | None) -> MemoryModel:
    if model is None:
        raise _UsageError("this command needs an instance file with a memory section")
    return model


def _print_solution(sol: Solution):
    print(f"cost {sol.convention.value} {sol.cost}")
    print(serialize_shape(sol.shape))
    if sol.assignment is not None:
        sys.stdout.write(serialize_assignment(sol.assignment))


def gen_instance(
    n: int,
    h: int,
    seed: int,
    max_freq: int = 10,
    max_cost: int = 32,
    locations: str = "n",
) -> str:
    """Deterministic random instance in the flat file format. The model
    offers exactly n locations, or 2n+1 when every node must be stored."""
    if n < 1 or h < 1:
        raise ValueError("n and h must be positive")
    if max_cost < h:
        raise ValueError("need max_cost >= h for strictly increasing level costs")
    total = n if locations == "n" else 2 * n + 1
    if h > total:
        raise ValueError(f"cannot split {total} locations into {h} nonempty levels")
    rng = random.Random(seed)
    p = [rng.randint(0, max_freq) for _ in range(n)]
    q = [rng.randint(0, max_freq) for _ in range(n + 1)]
    if sum(p) + sum(q) == 0:
        q[0] = 1
    costs = sorted(rng.sample(range(1, max_cost + 1), h))
    cuts = sorted(rng.sample(range(1, total), h - 1))
    bounds = [0, *cuts, total]
    levels = tuple((bounds[l + 1] - bounds[l], costs[l]) for l in range(h))
    return instance_text(ProblemInstance(tuple(p), tuple(q)), MemoryModel(levels))


def _cmd_solve(args) -> int:
    inst, model = _load_instance(args.input)
    algo = args.algorithm
    if algo in ("k1", "k2"):
        _, sol = (ram.k1 if algo == "k1" else ram.k2)(inst)
    elif algo == "parts":
        sol = hmm.parts(inst, _require_model(model))
    elif algo == "trunks":
        sol = hmm.trunks(inst, _require_model(model))
    elif algo == "twolevel":
        sol = hmm.twolevel(inst, _require_model(model))
    elif algo == "split":
        m = _require_model(model)
        if m.total < inst.n:
            raise InfeasibleError(f"{inst.n} keys, model has {m.total} locations")
        sol = hmm.split(inst, m.location_costs(inst.n), memoize=args.memoize)
    else:  # naive
        conv = CostConvention(args.convention)
        sol = oracle.naive_optimum(inst, model, conv)
    _print_solution(sol)
    return 0


def _cmd_assign(args) -> int:
    inst, model = _load_instance(args.input)
    model = _require_model(model)
    shape = parse_shape(_read(args.tree))
    mode = AssignmentMode(args.mode)
    assignment = greedy_assign(inst, shape, model, mode)
    conv = (
        CostConvention.STORED_EXTERNAL
        if mode is AssignmentMode.ALL_NODES
        else CostConvention.SEARCH_ACCESS
    )
    print(f"cost {conv.value} {hmm_cost(inst, shape, assignment, model, conv)}")
    sys.stdout.write(serialize_assignment(assignment))
    return 0


def _cmd_eval(args) -> int:
    inst, model = _load_instance(args.input)
    shape = parse_shape(_read(args.tree))
    assignment = parse_assignment(_read(args.assignment)) if args.assignment else None
    report = cost_report(inst, shape, assignment, model)
    sys.stdout.write(report.render())
    return 0


def _cmd_approx(args) -> int:
    inst, model = _load_instance(args.input)
    sol = approx_mod.approx_bst(inst, model if args.assign == "greedy" else None)
    _print_solution(sol)
    if args.certify:
        m = _require_model(model)
        optimum = None
        if inst.n <= 12 and m.restrict(inst.n).h <= 2:
            optimum = hmm.twolevel(inst, m).cost
        report = approx_mod.approx_certificates(inst, m, sol.shape, optimum)
        print(f"certificate pessimistic {'PASS' if report.pessimistic_ok else 'FAIL'} "
              f"margin {report.pessimistic_margin:.6g}")
        if report.gap_ok is not None:
            print(f"certificate gap {'PASS' if report.gap_ok else 'FAIL'} "
                  f"margin {report.gap_margin:.6g}")
    return 0


def _cmd_bounds(args) -> int:
    inst, _ = _load_instance(args.input)
    print(f"entropy {entropy(inst)!r}")
    for name, val in lower_bounds(inst).items():
        print(f"bound {name} {val!r}")
    return 0


def _cmd_oracle(args) -> int:
    inst, model = _load_instance(args.input)
    conv = CostConvention(args.convention)
    if args.root is None and args.left_cheap is None:
        sol = oracle.naive_optimum(inst, model, conv)
        _print_solution(sol)
    else:
        res = oracle.constrained_optimum(
            inst, _require_model(model), conv, root_k=args.root, left_cheap=args.left_cheap
        )
        _print_solution(res.solution)
        print(f"root {res.root}")
        print(f"left_cheap {res.left_cheap}")
    return 0


def _cmd_sweep(args) -> int:
    inst, model = _load_instance(args.input)
    rows = oracle.unimodal_sweep(
        inst,
        _require_model(model),
        args.root,
        range(args.start, args.stop + 1),
        CostConvention(args.convention),
    )
    print("left_cheap,left_cost,right_cost,sum")
    for row in rows:
        print(",".join(str(v) for v in row))
    return 0


def _cmd_repro(args) -> int:
    names = list(REPRODUCTIONS) if args.name == "all" else [args.name]
    code = 0
    for name in names:
        result = REPRODUCTIONS[name]()
        print(result.summary())
        if not result.ok:
            code = 3
    return code


def _cmd_gen(args) -> int:
    sys.stdout.write(
        gen_instance(args.n, args.h, args.seed, args.max_freq, args.max_cost, args.locations)
    )
    return 0


_BENCH_GUARDS = {"split": hmm.SPLIT_CAP, "naive": oracle.NAIVE_CAP}


def _cmd_bench(args) -> int:
    algorithms = args.algorithms.split(",")
    sizes = [int(s) for s in args.sizes.split(",")]
    for algo in algorithms:
        cap = _BENCH_GUARDS.get(algo)
        if cap is not None and max(sizes) > cap:
            raise SizeGuardError(f"{algo} refuses n > {cap}")
    print("algorithm,n,h,m,millis")
    for algo in algorithms:
        for n in sizes:
            inst, model = parse_instance(gen_instance(n, args.h, args.seed))
            for _ in range(args.reps):
                t0 = time.perf_counter()
                if algo == "k1":
                    ram.k1(inst)
                elif algo == "k2":
                    ram.k2(inst)
                elif algo == "approx":
                    approx_mod.approx_bst(inst)
                elif algo == "parts":
                    hmm.parts(inst, model)
                elif algo == "trunks":
                    hmm.trunks(inst, model)
                elif algo == "twolevel":
                    hmm.twolevel(inst, model)
                elif algo == "split":
                    hmm.split(inst, model.location_costs(n), memoize=True)
                elif algo == "naive":
                    oracle.naive_optimum(inst, model, CostConvention.SEARCH_ACCESS)
                else:
                    raise _UsageError(f"unknown algorithm '{algo}'")
                millis = (time.perf_counter() - t0) * 1000.0
                m1 = model.levels[0][0] if model.h > 1 else n
                print(f"{algo},{n},{args.h},{m1},{millis:.3f}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="obst", description="Optimum BSTs for hierarchical memory")
    sub = parser.add_subparsers(dest="command", required=True)

    conv_choices = [c.value for c in CostConvention]

    p = sub.add_parser("solve", help="run an exact solver")
    p.add_argument("--input", required=True)
    p.add_argument(
        "--algorithm",
        required=True,
        choices=["k1", "k2", "parts", "trunks", "split", "twolevel", "naive"],
    )
    p.add_argument("--convention", default="search", choices=conv_choices)
    p.add_argument("--memoize", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("assign", help="optimal placement for a given tree")
    p.add_argument("--input", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--mode", default="internal", choices=[m.value for m in AssignmentMode])
    p.set_defaults(func=_cmd_assign)

    p = sub.add_parser("eval", help="evaluate a tree (and assignment) under all conventions")
    p.add_argument("--input", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--assignment")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("approx", help="near-optimum tree in linear time")
    p.add_argument("--input", required=True)
    p.add_argument("--assign", choices=["greedy"])
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("bounds", help="entropy and lower bounds")
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("oracle", help="exhaustive or constrained exact search")
    p.add_argument("--input", required=True)
    p.add_argument("--convention", default="search", choices=conv_choices)
    p.add_argument("--root", type=int)
    p.add_argument("--left-cheap", type=int, dest="left_cheap")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("sweep", help="constrained-cost sweep over cheap-left counts")
    p.add_argument("--input", required=True)
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--stop", type=int, required=True)
    p.add_argument("--convention", default="stored", choices=conv_choices)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("repro", help="rerun the embedded reference experiments")
    p.add_argument("name", choices=[*REPRODUCTIONS, "all"])
    p.set_defaults(func=_cmd_repro)

    p = sub.add_parser("gen", help="deterministic random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-freq", type=int, default=10, dest="max_freq")
    p.add_argument("--max-cost", type=int, default=32, dest="max_cost")
    p.add_argument("--locations", default="n", choices=["n", "2n+1"])
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="wall-time table (CSV)")
    p.add_argument("--algorithms", required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=1)
    p.set_defaults(func=_cmd_bench)

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 1
    except (InfeasibleError, SizeGuardError) as e:
        print(f"refused: {e}", file=sys.stderr)
        return 2
    except (ObstError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
