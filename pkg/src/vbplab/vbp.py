"""Vector bin packing with exact rational arithmetic.

Items are d-dimensional vectors of Fractions in [0,1]; bins have unit
capacity per coordinate. Everything that decides feasibility compares
rationals exactly, so boundary sums like n * (1/n) land on 1, never on
0.999... The exact optimum oracle scales an instance to integers and hands
it to the branch-and-bound kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import kernels
from .errors import InputError, ResourceLimitError

Vector = tuple[Fraction, ...]

DEFAULT_EXACT_PACK_LIMIT = 14


def make_item(coords: Sequence) -> Vector:
    """Validated item vector; accepts ints, Fractions, or 'p/q' strings."""
    out = []
    for c in coords:
        f = Fraction(c)
        if not 0 <= f <= 1:
            raise InputError(f"coordinate {f} outside [0,1]")
        out.append(f)
    return tuple(out)


@dataclass(frozen=True)
class VbpInstance:
    """Ordered d-dimensional items; sequence order is the online arrival order."""

    d: int
    items: tuple[Vector, ...]

    @property
    def n(self) -> int:
        return len(self.items)


def make_instance(d: int, items: Iterable[Sequence]) -> VbpInstance:
    if d < 1:
        raise InputError("dimension must be >= 1")
    validated = []
    for i, coords in enumerate(items):
        item = make_item(coords)
        if len(item) != d:
            raise InputError(f"item {i} has dimension {len(item)}, expected {d}")
        validated.append(item)
    return VbpInstance(d=d, items=tuple(validated))


def fits(load: Vector, item: Vector) -> bool:
    """Exact test: load + item stays <= 1 in every coordinate."""
    if len(load) != len(item):
        raise InputError(f"dimension mismatch: load {len(load)}, item {len(item)}")
    return all(l + c <= 1 for l, c in zip(load, item))


def fits_together(items: Iterable[Vector], d: int) -> bool:
    """True iff all given items can share one bin."""
    total = [Fraction(0)] * d
    for item in items:
        if len(item) != d:
            raise InputError("dimension mismatch")
        for j, c in enumerate(item):
            total[j] += c
    return all(t <= 1 for t in total)


@dataclass
class Bin:
    items: list[int]
    load: Vector


@dataclass
class PackingState:
    d: int
    bins: list[Bin]

    @property
    def num_bins(self) -> int:
        return len(self.bins)

    def bin_of(self) -> dict[int, int]:
        """Item index -> bin index (items packed in exactly one bin assumed)."""
        out: dict[int, int] = {}
        for b, bin_ in enumerate(self.bins):
            for i in bin_.items:
                out[i] = b
        return out


class FirstFitPacker:
    """Online First-Fit: each item goes to the lowest-indexed bin it fits in."""

    deterministic = True

    def start(self, d: int) -> None:
        if d < 1:
            raise InputError("dimension must be >= 1")
        self.d = d
        self.loads: list[list[Fraction]] = []

    def place(self, coords: Vector) -> int:
        if len(coords) != self.d:
            raise InputError("dimension mismatch")
        for b, load in enumerate(self.loads):
            if all(l + c <= 1 for l, c in zip(load, coords)):
                self.loads[b] = [l + c for l, c in zip(load, coords)]
                return b
        self.loads.append(list(coords))
        return len(self.loads) - 1


def first_fit_online(inst: VbpInstance) -> PackingState:
    """Deterministic First-Fit packing of the items in arrival order."""
    packer = FirstFitPacker()
    packer.start(inst.d)
    bins: list[list[int]] = []
    for i, item in enumerate(inst.items):
        b = packer.place(item)
        if b == len(bins):
            bins.append([])
        bins[b].append(i)
    return PackingState(
        d=inst.d,
        bins=[Bin(items=members, load=tuple(packer.loads[b])) for b, members in enumerate(bins)],
    )


def validate_packing(inst: VbpInstance, packing: PackingState) -> bool:
    """Exact check: items partitioned, stored loads consistent, capacity held."""
    if packing.d != inst.d:
        return False
    seen: set[int] = set()
    for bin_ in packing.bins:
        total = [Fraction(0)] * inst.d
        for i in bin_.items:
            if i in seen or not 0 <= i < inst.n:
                return False
            seen.add(i)
            for j, c in enumerate(inst.items[i]):
                total[j] += c
        if tuple(total) != bin_.load:
            return False
        if any(t > 1 for t in total):
            return False
    return len(seen) == inst.n


def opt_exact(inst: VbpInstance, limit: int = DEFAULT_EXACT_PACK_LIMIT) -> tuple[int, PackingState]:
    """Minimum bin count with a witness packing, by exact branch and bound.

    Items are scaled by the lcm of all denominators so the kernel works on
    integers. Search order: max coordinate then coordinate sum, both
    descending, which also groups identical items for symmetry pruning.
    """
    if inst.n > limit:
        raise ResourceLimitError(
            f"exact packing limited to {limit} items, got {inst.n}"
        )
    if inst.n == 0:
        return 0, PackingState(d=inst.d, bins=[])

    scale = math.lcm(*(c.denominator for item in inst.items for c in item))
    scaled = [tuple(int(c * scale) for c in item) for item in inst.items]

    order = sorted(
        range(inst.n),
        key=lambda i: (-max(scaled[i]), -sum(scaled[i]), scaled[i], i),
    )
    sorted_items = [scaled[i] for i in order]

    # First-Fit incumbent on the search order seeds the upper bound.
    ff_loads: list[list[int]] = []
    incumbent = []
    for w in sorted_items:
        for b, load in enumerate(ff_loads):
            if all(l + c <= scale for l, c in zip(load, w)):
                ff_loads[b] = [l + c for l, c in zip(load, w)]
                incumbent.append(b)
                break
        else:
            ff_loads.append(list(w))
            incumbent.append(len(ff_loads) - 1)

    totals = [sum(w[j] for w in sorted_items) for j in range(inst.d)]
    lower = max(1, max(-(-t // scale) for t in totals))

    count, assign = kernels.packing_bnb(sorted_items, scale, lower, incumbent)

    bins: list[list[int]] = [[] for _ in range(count)]
    for pos, b in enumerate(assign):
        bins[b].append(order[pos])
    state = PackingState(
        d=inst.d,
        bins=[
            Bin(
                items=sorted(members),
                load=tuple(
                    sum((inst.items[i][j] for i in members), Fraction(0))
                    for j in range(inst.d)
                ),
            )
            for members in bins
        ],
    )
    return count, state


def competitive_gap(alg_bins: int, opt_bins: int) -> Fraction:
    """alg/opt as an exact rational."""
    if opt_bins < 1:
        raise InputError("optimal bin count must be >= 1")
    return Fraction(alg_bins, opt_bins)


# --- text format -----------------------------------------------------------
# line 1: "vbp <n> <d>", then n lines of d whitespace-separated rationals
# ("p/q" or integers); line order is arrival order. "#" starts a comment.

def parse_vbp_text(text: str) -> VbpInstance:
    header = None
    rows: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "vbp" or len(parts) != 3:
                raise InputError(f"line {lineno}: expected 'vbp <n> <d>' header")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError as exc:
                raise InputError(f"line {lineno}: {exc}") from exc
        else:
            rows.append(parts)
    if header is None:
        raise InputError("missing 'vbp <n> <d>' header")
    n, d = header
    if len(rows) != n:
        raise InputError(f"header declares {n} items but {len(rows)} found")
    try:
        items = [[Fraction(tok) for tok in row] for row in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad coordinate: {exc}") from exc
    return make_instance(d, items)


def _fmt_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_vbp_text(inst: VbpInstance) -> str:
    lines = [f"vbp {inst.n} {inst.d}"]
    lines.extend(" ".join(_fmt_fraction(c) for c in item) for item in inst.items)
    return "\n".join(lines) + "\n"


def read_vbp_file(path: str | Path) -> VbpInstance:
    return parse_vbp_text(Path(path).read_text())


def write_vbp_file(inst: VbpInstance, path: str | Path) -> None:
    Path(path).write_text(format_vbp_text(inst))
