"""Randomized pool-sampling simulation: copies-coloring algorithm -> coloring.

Algorithm B runs a copies-coloring algorithm A on t copies of each arriving
vertex. Every color newly used by A enters B's pool independently with
probability p = min(1, 2 ln(n)/t). B colors the vertex with the smallest
pooled color among its copies' colors; if no copy's color made the pool, B
"fails" at that step and burns a reserved special color "s:<step>".

The simulation is deterministic given the seed: one uniform draw per new
color of A, consumed in step order and ascending color id within a step
(drawn as one array per step). A never observes the pool, so B first
drives A across the full arrival sequence recording a per-step trace, then
replays the seeded pool phase over the trace; Monte-Carlo verification
reuses a cached trace when A declares itself deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, ProtocolError
from .graphs import ColorId, Coloring, Graph, OnlineVertexEvent, events_from_graph
from .rng import GENERATOR_NAME, SEED_DERIVATION, Seed, make_rng, trial_seed

_REL_TOL = 1e-12


def special_color(step: int) -> str:
    return f"s:{step}"


def sampling_probability(n: int, t: int) -> float:
    """p = min(1, 2 ln(n)/t); n = 1 is pinned to 1 so it cannot fail."""
    if n < 1 or t < 1:
        raise InputError("need n >= 1 and t >= 1")
    if n == 1:
        return 1.0
    return min(1.0, 2.0 * math.log(n) / t)


@dataclass
class PoolState:
    """Runtime state of the simulation; rng is the only source of randomness."""

    p: float
    t: int
    rng: np.random.Generator
    colors_used_by_a: set[int] = field(default_factory=set)
    pool: set[int] = field(default_factory=set)
    fail_steps: set[int] = field(default_factory=set)
    b_assignment: dict[int, ColorId] = field(default_factory=dict)


def sample_pool(state: PoolState, new_colors: list[int]) -> PoolState:
    """Admit each genuinely new color of A to the pool with probability p.

    Draws are consumed in ascending color order; callers pass new_colors
    sorted. Colors already known to A must not be resampled.
    """
    assert not set(new_colors) & state.colors_used_by_a, "colors resampled"
    state.colors_used_by_a.update(new_colors)
    if new_colors:
        draws = state.rng.random(len(new_colors))
        for color, draw in zip(new_colors, draws):
            if draw < state.p:
                state.pool.add(color)
    return state


@dataclass(frozen=True)
class StepRecord:
    vertex: int
    new_colors: int
    candidates: int   # |P_i|, pooled colors among this vertex's copy colors
    hit: bool
    color: ColorId


@dataclass(frozen=True)
class SimulationStats:
    colors_a: int
    colors_b: int
    fails: int
    pool_size: int
    p: float
    steps: tuple[StepRecord, ...]


@dataclass(frozen=True)
class _TraceStep:
    vertex: int
    copy_colors: tuple[int, ...]
    new_colors: tuple[int, ...]   # sorted, first seen at this step


def _record_trace(n, events, algo, t) -> list[_TraceStep]:
    """Drive A over the arrival sequence, checking the protocol as we go."""
    algo.start(n, t)
    per_vertex: dict[int, set[int]] = {}
    seen: set[int] = set()
    trace: list[_TraceStep] = []
    for ev in events:
        colors = tuple(algo.color_copies(ev.vertex, ev.back_edges))
        if len(colors) != t or len(set(colors)) != t:
            raise ProtocolError(
                f"algorithm returned {len(set(colors))} distinct colors for "
                f"vertex {ev.vertex}, expected {t}"
            )
        if any(not isinstance(c, int) or c < 0 for c in colors):
            raise ProtocolError("copy colors must be nonnegative integers")
        cset = set(colors)
        for u in ev.back_edges:
            if per_vertex[u] & cset:
                raise ProtocolError(
                    f"algorithm reused a neighbor's color at vertex {ev.vertex}"
                )
        per_vertex[ev.vertex] = cset
        new = tuple(sorted(cset - seen))
        seen |= cset
        trace.append(_TraceStep(ev.vertex, colors, new))
    return trace


def _pool_phase(trace, p, rng) -> tuple[PoolState, SimulationStats]:
    state = PoolState(p=p, t=0, rng=rng)
    records = []
    for step, ts in enumerate(trace, 1):
        sample_pool(state, list(ts.new_colors))
        candidates = state.pool.intersection(ts.copy_colors)
        if candidates:
            color: ColorId = min(candidates)
        else:
            state.fail_steps.add(step)
            color = special_color(step)
        state.b_assignment[ts.vertex] = color
        records.append(StepRecord(ts.vertex, len(ts.new_colors), len(candidates), bool(candidates), color))
    stats = SimulationStats(
        colors_a=len(state.colors_used_by_a),
        colors_b=len(set(state.b_assignment.values())),
        fails=len(state.fail_steps),
        pool_size=len(state.pool),
        p=p,
        steps=tuple(records),
    )
    return state, stats


def run_algorithm_b(
    n: int,
    events,
    algo,
    t: int,
    seed: Seed,
    p: float | None = None,
) -> tuple[Coloring, SimulationStats]:
    """One seeded simulation run; returns B's coloring and its statistics.

    p defaults to min(1, 2 ln(n)/t). The output coloring is feasible for
    the underlying graph whenever A honors the copies-coloring protocol
    (violations raise ProtocolError).
    """
    if n < 1 or t < 1:
        raise InputError("need n >= 1 and t >= 1")
    if p is None:
        p = sampling_probability(n, t)
    trace = _record_trace(n, events, algo, t)
    state, stats = _pool_phase(trace, p, make_rng(seed))
    return dict(state.b_assignment), stats


@dataclass(frozen=True)
class FailBoundReport:
    n: int
    t: int
    p: float
    per_step_fail: float
    per_step_limit: float   # 1/n^2
    union_fail: float       # n * per_step_fail
    union_limit: float      # 1/n
    bound_holds: bool


def fail_probability_bound(n: int, t: int) -> FailBoundReport:
    """Arithmetic check that a step misses the pool with probability <= 1/n^2.

    per-step fail = (1-p)^t with p = min(1, 2 ln(n)/t); the union bound
    over n steps then gives overall fail probability <= 1/n. Checked in
    floating point with relative tolerance 1e-12 (p is irrational).
    """
    if n < 2:
        raise InputError("fail bound needs n >= 2")
    if t < 1:
        raise InputError("need t >= 1")
    p = sampling_probability(n, t)
    per_step = 0.0 if p >= 1.0 else math.exp(t * math.log1p(-p))
    per_limit = 1.0 / (n * n)
    union = n * per_step
    union_limit = 1.0 / n
    holds = per_step <= per_limit * (1 + _REL_TOL) and union <= union_limit * (1 + _REL_TOL)
    return FailBoundReport(n, t, p, per_step, per_limit, union, union_limit, holds)


@dataclass(frozen=True)
class ExpectedColorsReport:
    full_bound: float        # (alpha*t*chi + q_n) * (2 ln n)/t + 1
    simplified_bound: float  # 2 ln(n)*alpha*chi + 3
    holds: bool


def expected_colors_bound(alpha, q_n, n: int, t: int, chi_g: int) -> ExpectedColorsReport:
    """Expected-color accounting for B when A is (alpha, q(n))-competitive.

    Requires t >= q_n * ln(n) (the reduction's choice of t); under it the
    full expression collapses into the simplified 2 ln(n)*alpha*chi + 3.
    """
    if n < 1 or t < 1:
        raise InputError("need n >= 1 and t >= 1")
    alpha = float(alpha)
    q_n = float(q_n)
    log_n = math.log(n)
    if t < q_n * log_n:
        raise InputError(
            f"hypothesis t >= q(n) ln(n) violated: t = {t} < {q_n * log_n:.6g}"
        )
    full = (alpha * t * chi_g + q_n) * (2.0 * log_n) / t + 1.0
    simplified = 2.0 * log_n * alpha * chi_g + 3.0
    return ExpectedColorsReport(
        full_bound=full,
        simplified_bound=simplified,
        holds=full <= simplified * (1 + _REL_TOL) + _REL_TOL,
    )


@dataclass(frozen=True)
class MonteCarloReport:
    graph_n: int
    t: int
    p: float
    trials: int
    master_seed: int
    seed_derivation: str
    generator: str
    mean_colors_a: float
    mean_colors_b: float
    empirical_fail_rate: float
    bound_lhs: float         # mean colors_B
    bound_rhs: float         # mean|R(A)|*p + n*fail_rate + slack
    slack: float             # 3 standard errors of the difference statistic
    bound_holds: bool
    per_trial_invariant_ok: bool   # colors_B <= |pool| + fails in every trial
    colors_b_per_trial: tuple[int, ...]
    colors_a_per_trial: tuple[int, ...]
    fails_per_trial: tuple[int, ...]


def _fast_trials(trace, p, n, master_seed, trial_indices):
    """Vectorized pool phase over a fixed trace, one derived stream per trial.

    Consumes randomness exactly like _pool_phase (one random(k) array per
    step, ascending color order), so trial i reproduces
    run_algorithm_b(seed=trial_seed(master_seed, i)) bit for bit.
    """
    flat_index: dict[int, int] = {}
    for ts in trace:
        for c in ts.new_colors:
            flat_index[c] = len(flat_index)
    total_new = len(flat_index)
    step_cand_colors = []
    step_cand_idx = []
    for ts in trace:
        cand = sorted(ts.copy_colors)
        step_cand_colors.append(cand)
        step_cand_idx.append(np.array([flat_index[c] for c in cand], dtype=np.intp))

    colors_b, colors_a, fails, pool_sizes, invariant_ok = [], [], [], [], True
    for trial in trial_indices:
        rng = make_rng(trial_seed(master_seed, trial))
        pooled = np.zeros(total_new, dtype=bool)
        offset = 0
        n_fail = 0
        chosen: set = set()
        for i, ts in enumerate(trace):
            k = len(ts.new_colors)
            if k:
                pooled[offset:offset + k] = rng.random(k) < p
                offset += k
            mask = pooled[step_cand_idx[i]]
            if mask.any():
                chosen.add(step_cand_colors[i][int(np.argmax(mask))])
            else:
                n_fail += 1
                chosen.add(special_color(i + 1))
        n_pool = int(pooled.sum())
        colors_b.append(len(chosen))
        colors_a.append(total_new)
        fails.append(n_fail)
        pool_sizes.append(n_pool)
        if len(chosen) > n_pool + n_fail:
            invariant_ok = False
    return colors_b, colors_a, fails, pool_sizes, invariant_ok


def monte_carlo_verify(
    graph: Graph,
    algo,
    t: int,
    trials: int,
    master_seed: int,
    jobs: int = 1,
) -> MonteCarloReport:
    """Seeded Monte-Carlo estimate of B's color usage and fail rate.

    Checks mean colors_B <= mean|R(A)|*p + n*fail_rate + 3 standard errors
    (standard error of the per-trial difference), plus the exact per-trial
    invariant colors_B <= |pool| + fails. Trials are independent streams,
    so jobs > 1 only parallelizes; aggregation is in trial order either way.
    """
    if trials < 1:
        raise InputError("need at least one trial")
    n = graph.n
    p = sampling_probability(n, t)
    events = events_from_graph(graph)
    cacheable = getattr(algo, "deterministic", False)

    if cacheable:
        trace = _record_trace(n, events, algo, t)
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            chunks = [list(range(trials))[i::jobs] for i in range(jobs)]
            chunks = [c for c in chunks if c]
            results: dict[int, tuple] = {}
            with ProcessPoolExecutor(max_workers=len(chunks)) as pool_exec:
                futures = [
                    (chunk, pool_exec.submit(_fast_trials, trace, p, n, master_seed, chunk))
                    for chunk in chunks
                ]
                for chunk, fut in futures:
                    cb, ca, fl, ps, ok = fut.result()
                    for j, trial in enumerate(chunk):
                        results[trial] = (cb[j], ca[j], fl[j], ps[j], ok)
            ordered = [results[i] for i in range(trials)]
            colors_b = [r[0] for r in ordered]
            colors_a = [r[1] for r in ordered]
            fails = [r[2] for r in ordered]
            invariant_ok = all(r[4] for r in ordered)
        else:
            colors_b, colors_a, fails, _, invariant_ok = _fast_trials(
                trace, p, n, master_seed, range(trials)
            )
    else:
        colors_b, colors_a, fails = [], [], []
        invariant_ok = True
        for trial in range(trials):
            trace = _record_trace(n, events, algo, t)
            state, stats = _pool_phase(trace, p, make_rng(trial_seed(master_seed, trial)))
            colors_b.append(stats.colors_b)
            colors_a.append(stats.colors_a)
            fails.append(stats.fails)
            if stats.colors_b > stats.pool_size + stats.fails:
                invariant_ok = False

    cb = np.asarray(colors_b, dtype=float)
    ca = np.asarray(colors_a, dtype=float)
    failed = np.asarray(fails, dtype=float) > 0
    diff = cb - p * ca - n * failed
    se = float(diff.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    slack = 3.0 * se
    lhs = float(cb.mean())
    rhs = float(p * ca.mean() + n * failed.mean() + slack)
    return MonteCarloReport(
        graph_n=n,
        t=t,
        p=p,
        trials=trials,
        master_seed=master_seed,
        seed_derivation=SEED_DERIVATION,
        generator=GENERATOR_NAME,
        mean_colors_a=float(ca.mean()),
        mean_colors_b=lhs,
        empirical_fail_rate=float(failed.mean()),
        bound_lhs=lhs,
        bound_rhs=rhs,
        slack=slack,
        bound_holds=lhs <= rhs + _REL_TOL * max(1.0, abs(rhs)),
        per_trial_invariant_ok=invariant_ok,
        colors_b_per_trial=tuple(int(x) for x in colors_b),
        colors_a_per_trial=tuple(int(x) for x in colors_a),
        fails_per_trial=tuple(int(x) for x in fails),
    )
