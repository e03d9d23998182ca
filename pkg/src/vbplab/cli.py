"""Command-line front door: gen / reduce / run / verify / bench.

Reports are canonical JSON (sorted keys) or CSV (the flat "aggregates"
block only); re-running a fixed config reproduces the JSON byte for byte
except the wall_time_s field (and the timing blocks of `bench kernels`,
which measure the host). Exit codes: 0 success, 1 invariant failure,
2 bad input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .benchmark import run_kernel_benchmark
from .copies import (
    CopiesInstance,
    GreedyCcp,
    chromatic_number_copies_exact,
    greedy_online_ccp,
)
from .errors import InputError, ProtocolError, ResourceLimitError
from .generators import (
    gen_complete,
    gen_crown,
    gen_cycle,
    gen_empty,
    gen_gnp,
    gen_path,
)
from .graphs import (
    Graph,
    chromatic_number_exact,
    events_from_graph,
    format_graph_text,
    greedy_online_coloring,
    parse_instance_text,
    validate_coloring,
)
from .kernels import BACKEND
from .pool import monte_carlo_verify, run_algorithm_b, sampling_probability
from .reductions import reduce_copies, reduce_graph
from .rng import trial_seed
from .vbp import (
    VbpInstance,
    first_fit_online,
    format_vbp_text,
    opt_exact,
    parse_vbp_text,
)
from .verify import run_verification_suite

_FAMILIES = ("cycle", "path", "complete", "empty", "crown", "gnp")


def _fmt(x) -> str | int | float:
    """Fractions render as 'p/q' (or 'p'), everything else passes through."""
    return str(x) if isinstance(x, Fraction) else x


def _emit(report: dict, fmt: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        agg = report.get("aggregates", {})
        keys = sorted(agg)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(keys)
        writer.writerow([agg[k] for k in keys])
        out.write(buf.getvalue())


def _write_text(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config_echo(args, **extra) -> dict:
    cfg = {
        "subcommand": args.subcommand,
        "seed": args.seed,
        "jobs": args.jobs,
        "max_n": args.max_n,
        "max_items": args.max_items,
    }
    cfg.update(extra)
    return cfg


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _build_family(args) -> tuple[Graph, int | None]:
    fam = args.family
    if fam in ("cycle", "path", "complete", "empty", "gnp") and args.n is None:
        raise InputError(f"family {fam!r} requires --n")
    if fam == "cycle":
        g = gen_cycle(args.n)
    elif fam == "path":
        g = gen_path(args.n)
    elif fam == "complete":
        g = gen_complete(args.n)
    elif fam == "empty":
        g = gen_empty(args.n)
    elif fam == "crown":
        if args.k is None:
            raise InputError("family 'crown' requires --k")
        g = gen_crown(args.k)
    elif fam == "gnp":
        g = gen_gnp(args.n, args.p, args.seed)
    else:
        raise InputError(f"unknown family {fam!r}")
    return g, args.t


def _load_graph(args) -> tuple[Graph, int | None]:
    """Instance from --input (graph/copies file) or --family; returns (G, t)."""
    if getattr(args, "input", None) and getattr(args, "family", None):
        raise InputError("give either --input or --family, not both")
    if getattr(args, "input", None):
        graph, file_t = parse_instance_text(_read_text(args.input))
        return graph, args.t if args.t is not None else file_t
    if getattr(args, "family", None):
        return _build_family(args)
    raise InputError("need an instance: --input FILE or --family NAME")


def _load_vbp(args) -> VbpInstance:
    """VBP instance from a vbp file, or the reduction of a graph/copies source."""
    if getattr(args, "input", None):
        text = _read_text(args.input)
        first = next(
            (ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")),
            "",
        )
        if first.split()[:1] == ["vbp"]:
            return parse_vbp_text(text)
        graph, file_t = parse_instance_text(text)
        t = args.t if args.t is not None else file_t
        return reduce_copies(CopiesInstance(graph, t)) if t else reduce_graph(graph)
    graph, t = _load_graph(args)
    return reduce_copies(CopiesInstance(graph, t)) if t else reduce_graph(graph)


def _pack_lower_bound(inst: VbpInstance) -> int:
    per_coord = [sum(item[j] for item in inst.items) for j in range(inst.d)]
    heaviest = max(per_coord, default=Fraction(0))
    return max(1, -(-heaviest.numerator // heaviest.denominator)) if inst.n else 0


# ---------------------------------------------------------------- subcommands


def cmd_gen(args) -> int:
    graph, t = _build_family(args)
    _write_text(format_graph_text(graph, t=t), args.output)
    return 0


def cmd_reduce(args) -> int:
    graph, t = parse_instance_text(_read_text(args.input))
    if args.t is not None:
        t = args.t
    inst = reduce_copies(CopiesInstance(graph, t)) if t else reduce_graph(graph)
    _write_text(format_vbp_text(inst), args.output)
    return 0


def _run_greedy(args, report: dict) -> int:
    graph, _ = _load_graph(args)
    coloring = greedy_online_coloring(graph)
    n_colors = len(set(coloring.values()))
    record = {"colors": n_colors}
    agg = {"colors": n_colors, "n": graph.n}
    if graph.n <= args.max_n:
        chi, _w = chromatic_number_exact(graph, limit=args.max_n)
        agg["chi"] = chi
        agg["gap"] = _fmt(Fraction(n_colors, chi)) if chi else None
    trials = args.trials or 1
    report["per_trial"] = [record] * trials
    report["aggregates"] = agg
    return 0


def _run_greedy_ccp(args, report: dict) -> int:
    graph, t = _load_graph(args)
    if not t:
        raise InputError("greedy-ccp needs a copies instance: add --t or a t line")
    inst = CopiesInstance(graph, t)
    coloring = greedy_online_ccp(inst)
    n_colors = len(set(coloring.values()))
    agg = {"colors": n_colors, "colors_over_t": _fmt(Fraction(n_colors, t)), "n": graph.n, "t": t}
    if graph.n * t <= args.max_n:
        chi_t, _w = chromatic_number_copies_exact(inst, limit=args.max_n)
        agg["chi_blowup"] = chi_t
    trials = args.trials or 1
    report["per_trial"] = [{"colors": n_colors}] * trials
    report["aggregates"] = agg
    return 0


def _run_first_fit(args, report: dict) -> int:
    inst = _load_vbp(args)
    packing = first_fit_online(inst)
    bins = packing.num_bins
    agg = {"bins": bins, "items": inst.n, "d": inst.d}
    if inst.n <= args.max_items:
        opt, _w = opt_exact(inst, limit=args.max_items)
        agg["opt"] = opt
        agg["gap"] = _fmt(Fraction(bins, opt)) if opt else None
    else:
        lower = _pack_lower_bound(inst)
        agg["lower_bound"] = lower
        agg["gap_vs_lower"] = _fmt(Fraction(bins, lower)) if lower else None
    trials = args.trials or 1
    report["per_trial"] = [{"bins": bins}] * trials
    report["aggregates"] = agg
    return 0


def _run_algorithm_b(args, report: dict) -> int:
    graph, t = _load_graph(args)
    if not t:
        raise InputError("algorithm-b needs a copies parameter: add --t or a t line")
    trials = args.trials or 1
    per_trial = []
    infeasible = 0
    for i in range(trials):
        coloring, stats = run_algorithm_b(
            graph.n, events_from_graph(graph), GreedyCcp(), t, trial_seed(args.seed, i)
        )
        try:
            validate_coloring(graph, coloring)
        except InputError:
            infeasible += 1
        per_trial.append(
            {"colors_b": stats.colors_b, "colors_a": stats.colors_a, "fails": stats.fails}
        )
    report["per_trial"] = per_trial
    report["aggregates"] = {
        "mean_colors_b": sum(r["colors_b"] for r in per_trial) / trials,
        "mean_colors_a": sum(r["colors_a"] for r in per_trial) / trials,
        "fail_rate": sum(r["fails"] > 0 for r in per_trial) / trials,
        "infeasible": infeasible,
        "p": sampling_probability(graph.n, t),
        "t": t,
        "n": graph.n,
        "trials": trials,
    }
    return 1 if infeasible else 0


def cmd_run(args) -> int:
    report = {
        "config": _config_echo(
            args,
            algorithm=args.algorithm,
            input=getattr(args, "input", None),
            family=getattr(args, "family", None),
            n=args.n,
            k=args.k,
            p=args.p,
            t=args.t,
            trials=args.trials or 1,
        ),
        "version": __version__,
    }
    start = time.perf_counter()
    runner = {
        "greedy": _run_greedy,
        "greedy-ccp": _run_greedy_ccp,
        "first-fit": _run_first_fit,
        "algorithm-b": _run_algorithm_b,
    }[args.algorithm]
    code = runner(args, report)
    report["wall_time_s"] = round(time.perf_counter() - start, 6)
    _emit(report, args.format)
    return code


def cmd_verify(args) -> int:
    start = time.perf_counter()
    suite = run_verification_suite(
        max_n=args.max_n, samples=args.trials or 50, seed=args.seed
    )
    d = suite.to_dict()
    report = {
        "config": _config_echo(args, trials=args.trials or 50),
        "version": __version__,
        "suite": d,
        "aggregates": {
            "passed": d["passed"],
            "checks": len(d["checks"]),
            "checks_failed": sum(not c["ok"] for c in d["checks"]),
            "instances": sum(c["instances"] for c in d["checks"]),
        },
        "wall_time_s": round(time.perf_counter() - start, 6),
    }
    _emit(report, args.format)
    return 0 if suite.passed else 1


def _bench_first_fit(args, report: dict) -> int:
    trials = args.trials or 1
    per_trial = []
    if args.family == "gnp" and args.input is None:
        if args.n is None:
            raise InputError("family 'gnp' requires --n")
        instances = []
        for i in range(trials):
            graph = gen_gnp(args.n, args.p, trial_seed(args.seed, i))
            instances.append(
                reduce_copies(CopiesInstance(graph, args.t)) if args.t else reduce_graph(graph)
            )
    else:
        instances = [_load_vbp(args)]
    gaps = []
    for inst in instances:
        bins = first_fit_online(inst).num_bins
        rec = {"bins": bins, "items": inst.n}
        if inst.n <= args.max_items:
            opt, _w = opt_exact(inst, limit=args.max_items)
            rec["opt"] = opt
            gap = Fraction(bins, opt) if opt else None
        else:
            lower = _pack_lower_bound(inst)
            rec["lower_bound"] = lower
            gap = Fraction(bins, lower) if lower else None
        rec["gap"] = _fmt(gap)
        if gap is not None:
            gaps.append(gap)
        per_trial.append(rec)
    report["per_trial"] = per_trial
    agg = {"instances": len(per_trial)}
    if gaps:
        agg["mean_gap"] = _fmt(sum(gaps, Fraction(0)) / len(gaps))
        agg["max_gap"] = _fmt(max(gaps))
        agg["min_gap"] = _fmt(min(gaps))
        agg["mean_bins"] = sum(r["bins"] for r in per_trial) / len(per_trial)
    report["aggregates"] = agg
    return 0


def _bench_algorithm_b(args, report: dict) -> int:
    graph, t = _load_graph(args)
    if not t:
        raise InputError("algorithm-b needs a copies parameter: add --t or a t line")
    mc = monte_carlo_verify(
        graph, GreedyCcp(), t, args.trials or 100, args.seed, jobs=args.jobs
    )
    report["per_trial"] = [
        {"colors_b": cb, "colors_a": ca, "fails": fl}
        for cb, ca, fl in zip(mc.colors_b_per_trial, mc.colors_a_per_trial, mc.fails_per_trial)
    ]
    report["rng"] = {
        "master_seed": mc.master_seed,
        "derivation": mc.seed_derivation,
        "generator": mc.generator,
    }
    report["aggregates"] = {
        "mean_colors_b": mc.mean_colors_b,
        "mean_colors_a": mc.mean_colors_a,
        "fail_rate": mc.empirical_fail_rate,
        "bound_lhs": mc.bound_lhs,
        "bound_rhs": mc.bound_rhs,
        "slack": mc.slack,
        "bound_holds": mc.bound_holds,
        "invariant_ok": mc.per_trial_invariant_ok,
        "p": mc.p,
        "t": mc.t,
        "n": mc.graph_n,
        "trials": mc.trials,
    }
    return 0 if mc.bound_holds and mc.per_trial_invariant_ok else 1


def _bench_kernels(args, report: dict) -> int:
    bench = run_kernel_benchmark(seed=args.seed, repeats=args.trials or 3)
    report["kernel_benchmark"] = bench
    report["aggregates"] = {
        "backend_selected": bench["backend_selected"],
        "compiled_available": bench["compiled_available"],
        "all_agree": bench["all_agree"],
        "cases": len(bench["cases"]),
    }
    return 0 if bench["all_agree"] else 1


def cmd_bench(args) -> int:
    report = {
        "config": _config_echo(
            args,
            target=args.target,
            input=getattr(args, "input", None),
            family=getattr(args, "family", None),
            n=args.n,
            k=args.k,
            p=args.p,
            t=args.t,
            trials=args.trials,
        ),
        "version": __version__,
        "backend": BACKEND,
    }
    start = time.perf_counter()
    runner = {
        "first-fit": _bench_first_fit,
        "algorithm-b": _bench_algorithm_b,
        "kernels": _bench_kernels,
    }[args.target]
    code = runner(args, report)
    report["wall_time_s"] = round(time.perf_counter() - start, 6)
    _emit(report, args.format)
    return code


# ---------------------------------------------------------------- arg parsing


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--trials", type=int, default=None, help="trial/sample count")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for trials")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--max-n", type=int, default=16, dest="max_n",
                   help="largest graph the exact coloring oracle may attempt")
    p.add_argument("--max-items", type=int, default=14, dest="max_items",
                   help="largest instance the exact packing oracle may attempt")
    return p


def _instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="instance file (graph, copies, or vbp)")
    p.add_argument("--family", choices=_FAMILIES, help="generated instance family")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="crown half-size")
    p.add_argument("--p", type=float, default=0.5, help="gnp edge probability")
    p.add_argument("--t", type=int, default=None, help="copies per vertex")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vbplab",
        description="Online coloring / vector bin packing reduction lab",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = [_global_flags()]

    p_gen = sub.add_parser("gen", parents=common, help="write an instance file")
    p_gen.add_argument("family", choices=_FAMILIES)
    p_gen.add_argument("--n", type=int, default=None)
    p_gen.add_argument("--k", type=int, default=None)
    p_gen.add_argument("--p", type=float, default=0.5)
    p_gen.add_argument("--t", type=int, default=None)
    p_gen.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_red = sub.add_parser("reduce", parents=common, help="graph/copies file -> vbp file")
    p_red.add_argument("input")
    p_red.add_argument("--t", type=int, default=None, help="override copies per vertex")
    p_red.add_argument("-o", "--output", default=None)
    p_red.set_defaults(func=cmd_reduce)

    p_run = sub.add_parser("run", parents=common, help="run one online algorithm")
    p_run.add_argument(
        "algorithm", choices=("greedy", "greedy-ccp", "first-fit", "algorithm-b")
    )
    _instance_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_ver = sub.add_parser("verify", parents=common, help="run the invariant suite")
    p_ver.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", parents=common, help="measurement harness")
    p_bench.add_argument("target", choices=("first-fit", "algorithm-b", "kernels"))
    _instance_flags(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ProtocolError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
