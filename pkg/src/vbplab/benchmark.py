"""Timing comparison of the compiled and pure-Python search kernels.

Runs both backends on identical seeded inputs, checks they return the same
optimum and the same witness, and reports per-case timings. Everything in
the report except the "timing" blocks is deterministic for a given seed;
timings obviously vary run to run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import _exactcore_py, kernels
from .generators import gen_gnp
from .graphs import Graph, _adjacency0, _greedy_assignment, _greedy_clique_size
from .rng import trial_seed

try:
    from . import _exactcore as _compiled
except ImportError:
    _compiled = None


@dataclass(frozen=True)
class KernelCase:
    kind: str          # "coloring" | "packing"
    label: str
    optimum: int
    backends_agree: bool
    pure_seconds: float
    compiled_seconds: float | None

    @property
    def speedup(self) -> float | None:
        if self.compiled_seconds is None or self.compiled_seconds == 0:
            return None
        return self.pure_seconds / self.compiled_seconds

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "optimum": self.optimum,
            "backends_agree": self.backends_agree,
            "timing": {
                "pure_seconds": self.pure_seconds,
                "compiled_seconds": self.compiled_seconds,
                "speedup": self.speedup,
            },
        }


def _time_best(fn, args, repeats: int) -> tuple[float, tuple]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def _coloring_args(graph: Graph) -> tuple[list[list[int]], int, list[int]]:
    adj = _adjacency0(graph)
    return adj, _greedy_clique_size(adj), _greedy_assignment(adj)


def _packing_args(graph: Graph) -> tuple[list[tuple[int, ...]], int, int, list[int]]:
    """Integer-scaled items of the coloring reduction: scale factor n makes

    vertex v's vector (…, 1, …, n, 0, …, 0) with capacity n.
    """
    n = graph.n
    items = []
    for v in range(1, n + 1):
        row = [0] * n
        row[v - 1] = n
        for u in graph.neighbors(v):
            if u < v:
                row[u - 1] = 1
        items.append(tuple(row))
    order = sorted(range(n), key=lambda i: (-max(items[i]), -sum(items[i]), items[i], i))
    items = [items[i] for i in order]
    incumbent = _first_fit_assign(items, n)
    return items, n, 1, incumbent


def _first_fit_assign(items, capacity) -> list[int]:
    loads: list[list[int]] = []
    assign = []
    for w in items:
        for b, load in enumerate(loads):
            if all(load[j] + w[j] <= capacity for j in range(len(w))):
                assign.append(b)
                for j in range(len(w)):
                    load[j] += w[j]
                break
        else:
            assign.append(len(loads))
            loads.append(list(w))
    return assign


def run_kernel_benchmark(
    seed: int = 0,
    repeats: int = 3,
    coloring_sizes: tuple[int, ...] = (30, 38, 42),
    packing_sizes: tuple[int, ...] = (20, 24, 28),
) -> dict:
    cases = []
    for i, n in enumerate(coloring_sizes):
        graph = gen_gnp(n, 0.5, trial_seed(seed, i))
        args = _coloring_args(graph)
        py_t, py_res = _time_best(_exactcore_py.chromatic_bnb, args, repeats)
        if _compiled is not None:
            cx_t, cx_res = _time_best(_compiled.chromatic_bnb, args, repeats)
            agree = tuple(cx_res[1]) == tuple(py_res[1]) and cx_res[0] == py_res[0]
        else:
            cx_t, agree = None, True
        cases.append(
            KernelCase("coloring", f"gnp n={n} p=0.5", py_res[0], agree, py_t, cx_t)
        )
    for i, n in enumerate(packing_sizes):
        graph = gen_gnp(n, 0.5, trial_seed(seed, 100 + i))
        items, cap, lb, incumbent = _packing_args(graph)
        args = (items, cap, lb, incumbent)
        py_t, py_res = _time_best(_exactcore_py.packing_bnb, args, repeats)
        if _compiled is not None:
            cx_t, cx_res = _time_best(_compiled.packing_bnb, args, repeats)
            agree = tuple(cx_res[1]) == tuple(py_res[1]) and cx_res[0] == py_res[0]
        else:
            cx_t, agree = None, True
        cases.append(
            KernelCase("packing", f"reduced gnp n={n} p=0.5", py_res[0], agree, py_t, cx_t)
        )
    return {
        "backend_selected": kernels.BACKEND,
        "compiled_available": _compiled is not None,
        "repeats": repeats,
        "seed": seed,
        "all_agree": all(c.backends_agree for c in cases),
        "cases": [c.to_dict() for c in cases],
    }
