# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact search kernels.

Twin of _exactcore_py: identical vertex/bin orderings and pruning rules, so
optima and witnesses match the pure-Python backend bit for bit. The caller
(vbplab.kernels) guarantees n <= 62 for the coloring kernel (color bitmask
lives in a uint64) and capacity <= 2**61 for the packing kernel (int64
loads); larger inputs are routed to the pure-Python twin.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef struct _ColorCtx:
    int n
    int lb
    int best
    int *adj_flat
    int *adj_start
    int *order
    int *colors
    int *best_colors


cdef void _color_dfs(_ColorCtx *ctx, int idx, int used) noexcept:
    cdef int v, u, c, k
    cdef unsigned long long forbid
    if used >= ctx.best or ctx.best == ctx.lb:
        return
    if idx == ctx.n:
        ctx.best = used
        memcpy(ctx.best_colors, ctx.colors, ctx.n * sizeof(int))
        return
    v = ctx.order[idx]
    forbid = 0
    for k in range(ctx.adj_start[v], ctx.adj_start[v + 1]):
        u = ctx.adj_flat[k]
        if ctx.colors[u] >= 0:
            forbid |= (<unsigned long long>1) << ctx.colors[u]
    c = 0
    while c <= used and c <= ctx.best - 2:
        if not (forbid >> c) & 1:
            ctx.colors[v] = c
            _color_dfs(ctx, idx + 1, used if c < used else used + 1)
            ctx.colors[v] = -1
            if ctx.best == ctx.lb:
                return
        c += 1


def chromatic_bnb(adj, int lb, incumbent):
    """Minimum proper coloring; see _exactcore_py.chromatic_bnb."""
    cdef int n = len(adj)
    if n == 0:
        return 0, []
    cdef int ub = max(incumbent) + 1
    if ub == lb:
        return ub, list(incumbent)
    if n > 62:
        raise ValueError("compiled coloring kernel requires n <= 62")

    order_py = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    cdef int m = 0
    for nbrs in adj:
        m += len(nbrs)

    cdef _ColorCtx ctx
    ctx.n = n
    ctx.lb = lb
    ctx.best = ub
    ctx.adj_flat = <int *> malloc(max(m, 1) * sizeof(int))
    ctx.adj_start = <int *> malloc((n + 1) * sizeof(int))
    ctx.order = <int *> malloc(n * sizeof(int))
    ctx.colors = <int *> malloc(n * sizeof(int))
    ctx.best_colors = <int *> malloc(n * sizeof(int))
    if (ctx.adj_flat == NULL or ctx.adj_start == NULL or ctx.order == NULL
            or ctx.colors == NULL or ctx.best_colors == NULL):
        free(ctx.adj_flat); free(ctx.adj_start); free(ctx.order)
        free(ctx.colors); free(ctx.best_colors)
        raise MemoryError()

    cdef int i, k
    k = 0
    for i in range(n):
        ctx.adj_start[i] = k
        for u in adj[i]:
            ctx.adj_flat[k] = u
            k += 1
    ctx.adj_start[n] = k
    for i in range(n):
        ctx.order[i] = order_py[i]
        ctx.colors[i] = -1
        ctx.best_colors[i] = incumbent[i]

    try:
        _color_dfs(&ctx, 0, 0)
        return ctx.best, [ctx.best_colors[i] for i in range(n)]
    finally:
        free(ctx.adj_flat); free(ctx.adj_start); free(ctx.order)
        free(ctx.colors); free(ctx.best_colors)


cdef struct _PackCtx:
    int n
    int d
    int lb
    int best
    long long capacity
    long long *items
    long long *loads
    unsigned char *same_prev
    int *assign
    int *best_assign


cdef void _pack_dfs(_PackCtx *ctx, int idx, int used) noexcept:
    cdef int b, j, start
    cdef long long *w
    cdef long long *load
    cdef bint ok
    if used >= ctx.best or ctx.best == ctx.lb:
        return
    if idx == ctx.n:
        ctx.best = used
        memcpy(ctx.best_assign, ctx.assign, ctx.n * sizeof(int))
        return
    w = ctx.items + idx * ctx.d
    start = ctx.assign[idx - 1] if ctx.same_prev[idx] else 0
    for b in range(start, used):
        load = ctx.loads + b * ctx.d
        ok = True
        for j in range(ctx.d):
            if load[j] + w[j] > ctx.capacity:
                ok = False
                break
        if not ok:
            continue
        for j in range(ctx.d):
            load[j] += w[j]
        ctx.assign[idx] = b
        _pack_dfs(ctx, idx + 1, used)
        for j in range(ctx.d):
            load[j] -= w[j]
        if ctx.best == ctx.lb:
            ctx.assign[idx] = -1
            return
    if used + 1 < ctx.best:
        load = ctx.loads + used * ctx.d
        for j in range(ctx.d):
            load[j] += w[j]
        ctx.assign[idx] = used
        _pack_dfs(ctx, idx + 1, used + 1)
        for j in range(ctx.d):
            load[j] -= w[j]
    ctx.assign[idx] = -1


def packing_bnb(items, capacity, int lb, incumbent):
    """Minimum-bin vector packing; see _exactcore_py.packing_bnb."""
    cdef int n = len(items)
    if n == 0:
        return 0, []
    cdef int d = len(items[0])
    cdef int ub = max(incumbent) + 1
    if ub == lb:
        return ub, list(incumbent)

    cdef _PackCtx ctx
    ctx.n = n
    ctx.d = d
    ctx.lb = lb
    ctx.best = ub
    ctx.capacity = capacity
    ctx.items = <long long *> malloc(n * d * sizeof(long long))
    ctx.loads = <long long *> malloc(n * d * sizeof(long long))
    ctx.same_prev = <unsigned char *> malloc(n * sizeof(unsigned char))
    ctx.assign = <int *> malloc(n * sizeof(int))
    ctx.best_assign = <int *> malloc(n * sizeof(int))
    if (ctx.items == NULL or ctx.loads == NULL or ctx.same_prev == NULL
            or ctx.assign == NULL or ctx.best_assign == NULL):
        free(ctx.items); free(ctx.loads); free(ctx.same_prev)
        free(ctx.assign); free(ctx.best_assign)
        raise MemoryError()

    cdef int i, j
    for i in range(n):
        for j in range(d):
            ctx.items[i * d + j] = items[i][j]
            ctx.loads[i * d + j] = 0
        ctx.same_prev[i] = 1 if (i > 0 and items[i] == items[i - 1]) else 0
        ctx.assign[i] = -1
        ctx.best_assign[i] = incumbent[i]

    try:
        _pack_dfs(&ctx, 0, 0)
        return ctx.best, [ctx.best_assign[i] for i in range(n)]
    finally:
        free(ctx.items); free(ctx.loads); free(ctx.same_prev)
        free(ctx.assign); free(ctx.best_assign)
