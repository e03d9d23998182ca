"""Backend selection for the exact search kernels.

Importing this module picks the compiled Cython kernels when the extension
built, otherwise the pure-Python twins. Set VBPLAB_PURE_PYTHON=1 to force
the fallback (used by the benchmark and the parity tests). The two
backends implement the same search, so results are identical either way.
"""

from __future__ import annotations

import os

from . import _exactcore_py

_FORCE_PURE = os.environ.get("VBPLAB_PURE_PYTHON", "") not in ("", "0")

if _FORCE_PURE:
    _compiled = None
else:
    try:
        from . import _exactcore as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "pure-python"

# Compiled-kernel representation limits; beyond them the pure twins
# (unbounded Python ints) take over transparently.
_MAX_COMPILED_COLOR_N = 62
_MAX_COMPILED_CAPACITY = 2**61


def chromatic_bnb(adj, lb, incumbent):
    if _compiled is not None and len(adj) <= _MAX_COMPILED_COLOR_N:
        return _compiled.chromatic_bnb(adj, lb, incumbent)
    return _exactcore_py.chromatic_bnb(adj, lb, incumbent)


def packing_bnb(items, capacity, lb, incumbent):
    if _compiled is not None and capacity <= _MAX_COMPILED_CAPACITY:
        return _compiled.packing_bnb(items, capacity, lb, incumbent)
    return _exactcore_py.packing_bnb(items, capacity, lb, incumbent)
