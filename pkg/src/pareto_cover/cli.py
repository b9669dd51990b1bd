"""Command-line front end.

Subcommands: gen, solve, eval, brute, discretize, count-vc, plot.  All
numeric I/O uses canonical rational strings; a --decimal flag adds
display-only decimal renderings at a stated precision.  Exit codes:
0 success, 2 input error, 3 resource cap, 4 oracle-contract violation.
"""

from __future__ import annotations

import argparse
import sys

import mpmath

from . import __version__
from .bruteforce import brute_force_optimum
from .discretizer import discretize
from .errors import (
    OracleContractError,
    ParetoCoverError,
    ResourceLimitError,
    ValidationError,
)
from .evaluator import expected_cost, expected_cost_naive, point_costs
from .fptas import solve_continuous, solve_discrete
from .measures import (
    ContinuousInstance,
    Cover,
    DiscreteProductInstance,
    UniformOracle,
    bernoulli_instance,
)
from .numerics import rat, rat_str
from .plotting import render_csv, render_svg
from .reductions import (
    Graph,
    PartitionInstance,
    count_vertex_covers_via_cost,
    graph_to_cover_gadget,
    numpart_has_solution,
    numpart_to_k,
    partition_has_solution,
    partition_to_k2,
    partition_to_k3,
)
from .serialization import (
    cover_to_json,
    discrete_to_json,
    dumps,
    instance_to_json,
    load_cover,
    load_instance,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_ORACLE = 4


def _rat_list(text: str):
    return [rat(part) for part in text.split(",") if part.strip()]


def _int_list(text: str):
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_edges(text: str):
    edges = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            u, v = part.split("-")
            edges.append((int(u), int(v)))
        except ValueError as exc:
            raise ValidationError(f"cannot parse edge {part!r}; use u-v") from exc
    return edges


def _write_output(payload: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(payload)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _decimal(value, digits: int) -> str:
    with mpmath.workdps(digits):
        return mpmath.nstr(
            mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator),
            digits,
        )


def _maybe_decimal(obj: dict, key: str, value, digits) -> None:
    if digits:
        obj[f"{key}_decimal"] = _decimal(value, digits)


def cmd_gen(args) -> int:
    payload: dict
    if args.reduction:
        if args.reduction in ("k2", "k3"):
            if not args.partition:
                raise ValidationError("--reduction k2/k3 needs --partition")
            inst = PartitionInstance(a=tuple(_int_list(args.partition)))
            if args.reduction == "k2":
                instance, gamma = partition_to_k2(inst)
            else:
                instance, gamma = partition_to_k3(inst)
            label = "yes" if partition_has_solution(inst) else "no"
            payload = {
                "instance": discrete_to_json(instance),
                "gamma": rat_str(gamma),
                "label": label,
            }
        elif args.reduction == "numpart":
            if not args.partition:
                raise ValidationError("--reduction numpart needs --partition")
            inst = PartitionInstance(a=tuple(_int_list(args.partition)))
            instance, gamma = numpart_to_k(args.t, inst)
            label = "yes" if numpart_has_solution(args.t, inst) else "no"
            payload = {
                "instance": discrete_to_json(instance),
                "gamma": rat_str(gamma),
                "label": label,
                "t": args.t,
            }
        elif args.reduction == "vc-gadget":
            if args.nodes is None:
                raise ValidationError("--reduction vc-gadget needs --nodes")
            graph = Graph(n=args.nodes, edges=tuple(_parse_edges(args.edges or "")))
            instance, cover = graph_to_cover_gadget(graph)
            payload = {
                "instance": discrete_to_json(instance),
                "cover": cover_to_json(cover)["cover"],
            }
        else:
            raise ValidationError(f"unknown reduction {args.reduction!r}")
    elif args.bernoulli:
        p = _rat_list(args.bernoulli)
        c = _rat_list(args.costs or "")
        if len(c) != len(p):
            raise ValidationError("--costs must match --bernoulli in length")
        payload = instance_to_json(bernoulli_instance(p, c, args.k))
    elif args.uniform:
        n = int(args.uniform)
        c = _rat_list(args.costs or "")
        if len(c) != n:
            raise ValidationError("--costs must have --uniform many entries")
        if not args.alpha:
            raise ValidationError("--uniform needs --alpha")
        instance = ContinuousInstance(
            oracles=tuple(UniformOracle() for _ in range(n)),
            costs=tuple(c),
            k=args.k,
            alpha=rat(args.alpha),
        )
        payload = instance_to_json(instance)
    else:
        raise ValidationError("gen needs --bernoulli, --uniform, or --reduction")
    _write_output(dumps(payload), args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    if args.eps is not None and args.gamma is not None:
        raise ValidationError("pass exactly one of --eps and --gamma")
    if args.eps is not None:
        if not isinstance(instance, DiscreteProductInstance):
            raise ValidationError("--eps drives the discrete solver")
        result = solve_discrete(
            instance, rat(args.eps), work_budget=args.work_budget
        )
        out = {
            "cover": cover_to_json(result.cover)["cover"],
            "cost": rat_str(result.cost),
            "guarantee": f"1+{rat_str(rat(args.eps))}",
            "diagnostics": result.diagnostics.to_json(),
        }
        _maybe_decimal(out, "cost", result.cost, args.decimal)
    elif args.gamma is not None:
        if not isinstance(instance, ContinuousInstance):
            raise ValidationError("--gamma drives the continuous solver")
        result = solve_continuous(
            instance, rat(args.gamma), work_budget=args.work_budget
        )
        out = {
            "cover": cover_to_json(result.cover)["cover"],
            "cost": rat_str(result.discrete_cost),
            "guarantee": f"1+{rat_str(result.gamma)}",
            "diagnostics": result.inner.diagnostics.to_json(),
        }
        if result.continuous_cost is not None:
            out["continuous_cost"] = rat_str(result.continuous_cost)
            _maybe_decimal(out, "continuous_cost", result.continuous_cost, args.decimal)
        _maybe_decimal(out, "cost", result.discrete_cost, args.decimal)
    else:
        raise ValidationError("pass --eps (discrete) or --gamma (continuous)")
    _write_output(dumps(out), args.output)
    return EXIT_OK


def cmd_eval(args) -> int:
    instance = load_instance(args.instance)
    cover = load_cover(args.cover)
    if args.naive:
        if not isinstance(instance, DiscreteProductInstance):
            raise ValidationError("--naive needs a discrete instance")
        cost = expected_cost_naive(instance, cover)
    else:
        cost = expected_cost(instance, cover)
    out = {"cost": rat_str(cost)}
    _maybe_decimal(out, "cost", cost, args.decimal)
    _write_output(dumps(out), args.output)
    return EXIT_OK


def cmd_brute(args) -> int:
    instance = load_instance(args.instance)
    if not isinstance(instance, DiscreteProductInstance):
        raise ValidationError("brute force needs a discrete instance")
    cover, cost = brute_force_optimum(instance)
    out = {
        "cover": cover_to_json(cover)["cover"],
        "cost": rat_str(cost),
        "guarantee": "exact",
    }
    _maybe_decimal(out, "cost", cost, args.decimal)
    _write_output(dumps(out), args.output)
    return EXIT_OK


def cmd_discretize(args) -> int:
    instance = load_instance(args.instance)
    if not isinstance(instance, ContinuousInstance):
        raise ValidationError("discretize needs a continuous instance")
    discrete, grid = discretize(instance, rat(args.gamma))
    out = {
        "instance": discrete_to_json(discrete),
        "grid": [rat_str(v) for v in grid.values],
        "epsilon": rat_str(grid.epsilon),
    }
    _write_output(dumps(out), args.output)
    return EXIT_OK


def cmd_count_vc(args) -> int:
    graph = Graph(n=args.nodes, edges=tuple(_parse_edges(args.edges or "")))
    count = count_vertex_covers_via_cost(graph, method=args.method)
    _write_output(dumps({"vertex_covers": count}), args.output)
    return EXIT_OK


def cmd_plot(args) -> int:
    instance = load_instance(args.instance)
    cover = load_cover(args.cover)
    if cover.n != 2 or instance.n != 2:
        raise ValidationError("plot needs a two-dimensional instance and cover")
    costs = point_costs(instance, cover)
    _write_output(render_svg(cover, costs), args.output)
    if args.csv:
        _write_output(render_csv(cover, costs), args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-cover",
        description="Exact and approximate solvers for stochastic Pareto covers",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instance files")
    gen.add_argument("--bernoulli", help="comma-separated success probabilities")
    gen.add_argument("--uniform", help="number of uniform coordinates")
    gen.add_argument("--costs", help="comma-separated costs")
    gen.add_argument("--k", type=int, default=1, help="cover size")
    gen.add_argument("--alpha", help="expectation lower bound (continuous)")
    gen.add_argument(
        "--reduction", choices=["k2", "k3", "numpart", "vc-gadget"]
    )
    gen.add_argument("--partition", help="comma-separated positive integers")
    gen.add_argument("--t", type=int, default=2, help="parts for numpart")
    gen.add_argument("--nodes", type=int, help="node count (vc-gadget)")
    gen.add_argument("--edges", help="comma-separated u-v pairs (vc-gadget)")
    gen.add_argument("-o", "--output", help="output file (default stdout)")
    gen.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="run the approximation scheme")
    solve.add_argument("instance")
    solve.add_argument("--eps", help="accuracy for discrete instances")
    solve.add_argument("--gamma", help="accuracy for continuous instances")
    solve.add_argument("--work-budget", type=int, default=None)
    solve.add_argument("--decimal", type=int, default=0)
    solve.add_argument("-o", "--output", help="output file (default stdout)")
    solve.set_defaults(func=cmd_solve)

    ev = sub.add_parser("eval", help="exact expected cost of a cover")
    ev.add_argument("instance")
    ev.add_argument("cover")
    ev.add_argument("--naive", action="store_true", help="use full enumeration")
    ev.add_argument("--decimal", type=int, default=0)
    ev.add_argument("-o", "--output", help="output file (default stdout)")
    ev.set_defaults(func=cmd_eval)

    brute = sub.add_parser("brute", help="exhaustive exact optimum")
    brute.add_argument("instance")
    brute.add_argument("--decimal", type=int, default=0)
    brute.add_argument("-o", "--output", help="output file (default stdout)")
    brute.set_defaults(func=cmd_brute)

    disc = sub.add_parser("discretize", help="reduce a continuous instance")
    disc.add_argument("instance")
    disc.add_argument("--gamma", required=True)
    disc.add_argument("-o", "--output", help="output file (default stdout)")
    disc.set_defaults(func=cmd_discretize)

    vc = sub.add_parser("count-vc", help="count vertex covers via one evaluation")
    vc.add_argument("--nodes", type=int, required=True)
    vc.add_argument("--edges", default="")
    vc.add_argument("--method", choices=["auto", "naive", "jset"], default="auto")
    vc.add_argument("-o", "--output", help="output file (default stdout)")
    vc.set_defaults(func=cmd_count_vc)

    plot = sub.add_parser("plot", help="staircase SVG for an n=2 cover")
    plot.add_argument("instance")
    plot.add_argument("cover")
    plot.add_argument("--csv", help="also write region boundaries as CSV")
    plot.add_argument("-o", "--output", help="output file (default stdout)")
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, ParetoCoverError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
