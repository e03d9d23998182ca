"""Coloring -> VBP and copies -> VBP reductions, and the inverse mappings."""

from fractions import Fraction
from itertools import combinations

import pytest

from vbplab.copies import CopiesInstance, validate_copies_coloring
from vbplab.errors import InputError, ProtocolError
from vbplab.generators import all_connected_graphs, gen_complete, gen_cycle, gen_empty, gen_gnp, gen_path
from vbplab.graphs import (
    OnlineVertexEvent,
    chromatic_number_exact,
    events_from_graph,
    graph_from_edges,
    greedy_online_coloring,
    is_independent_set,
)
from vbplab.reductions import (
    ccp_to_vbp,
    coloring_to_vbp,
    packing_to_copies_coloring,
    reduce_copies,
    reduce_graph,
    vbp_algorithm_to_ccp_algorithm,
)
from vbplab.vbp import FirstFitPacker, first_fit_online, fits_together, opt_exact

F = Fraction


# ------------------------------------------------------------ item emission


def test_k3_vectors_match_rule():
    inst = reduce_graph(gen_complete(3))
    assert inst.d == 3
    assert inst.items == (
        (F(1), F(0), F(0)),
        (F(1, 3), F(1), F(0)),
        (F(1, 3), F(1, 3), F(1)),
    )


def test_empty_graph_gives_basis():
    inst = reduce_graph(gen_empty(3))
    assert inst.items == (
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
    )


def test_p3_vectors():
    inst = reduce_graph(gen_path(3))
    assert inst.items == (
        (F(1), F(0), F(0)),
        (F(1, 3), F(1), F(0)),
        (F(0), F(1, 3), F(1)),
    )
    assert opt_exact(inst)[0] == 2 == chromatic_number_exact(gen_path(3))[0]


def test_streaming_upper_coords_zero():
    for i in range(10):
        g = gen_gnp(6, 0.5, 21000 + i)
        for idx, item in enumerate(reduce_graph(g).items, 1):
            assert item[idx - 1] == 1
            assert all(item[j] == 0 for j in range(idx, g.n))


def test_rejects_forward_back_edge():
    events = [
        OnlineVertexEvent(1, frozenset()),
        OnlineVertexEvent(2, frozenset({2})),
    ]
    with pytest.raises(InputError):
        list(coloring_to_vbp(2, events))


def test_rejects_out_of_order_events():
    events = [OnlineVertexEvent(2, frozenset()), OnlineVertexEvent(1, frozenset())]
    with pytest.raises(InputError):
        list(coloring_to_vbp(2, events))


def test_ccp_reduction_emits_t_copies():
    inst = reduce_copies(CopiesInstance(gen_complete(2), 2))
    assert inst.items == (
        (F(1), F(0)),
        (F(1), F(0)),
        (F(1, 2), F(1)),
        (F(1, 2), F(1)),
    )
    assert opt_exact(inst)[0] == 4  # = chi(K2^2) = chi(K4)


def test_ccp_reduction_trivial_cases():
    assert opt_exact(reduce_copies(CopiesInstance(gen_empty(2), 2)))[0] == 2
    assert opt_exact(reduce_copies(CopiesInstance(graph_from_edges(1, []), 3)))[0] == 3


# ------------------------------------------------ subset-level equivalence


def test_subset_fits_iff_independent():
    for i in range(8):
        g = gen_gnp(6, 0.5, 22000 + i)
        inst = reduce_graph(g)
        for r in range(g.n + 1):
            for subset in combinations(range(1, g.n + 1), r):
                items = [inst.items[v - 1] for v in subset]
                assert fits_together(items, inst.d) == is_independent_set(g, subset)


def test_opt_equals_chi_small_exhaustive():
    for n in range(1, 5):
        for g in all_connected_graphs(n):
            assert opt_exact(reduce_graph(g))[0] == chromatic_number_exact(g)[0]


def test_bin_holds_at_most_one_copy_per_vertex():
    for i in range(6):
        g = gen_gnp(3, 0.6, 23000 + i)
        inst_c = CopiesInstance(g, 3)
        packing = first_fit_online(reduce_copies(inst_c))
        for b in packing.bins:
            owners = [idx // inst_c.t for idx in b.items]
            assert len(owners) == len(set(owners))


# ------------------------------------------------------------ inverse maps


def test_packing_to_coloring_trivial_cases():
    inst = CopiesInstance(gen_empty(2), 1)
    packing = first_fit_online(reduce_copies(inst))
    coloring = packing_to_copies_coloring(inst, packing)
    assert coloring == {(1, 1): 0, (2, 1): 0}

    inst = CopiesInstance(gen_complete(2), 1)
    packing = first_fit_online(reduce_copies(inst))
    coloring = packing_to_copies_coloring(inst, packing)
    assert coloring == {(1, 1): 0, (2, 1): 1}


def test_packing_to_coloring_c5_witness():
    inst = CopiesInstance(gen_cycle(5), 2)
    opt, witness = opt_exact(reduce_copies(inst))
    assert opt == 5
    coloring = packing_to_copies_coloring(inst, witness)
    assert validate_copies_coloring(inst, coloring)
    assert len(set(coloring.values())) == 5


def test_packing_to_coloring_rejects_infeasible():
    from vbplab.vbp import Bin, PackingState

    inst = CopiesInstance(gen_complete(2), 1)
    # both items in one bin: coordinate 1 sums to 1 + 1/2 > 1
    vbp = reduce_copies(inst)
    load = tuple(vbp.items[0][j] + vbp.items[1][j] for j in range(2))
    bad = PackingState(d=2, bins=[Bin(items=[0, 1], load=load)])
    with pytest.raises(InputError):
        packing_to_copies_coloring(inst, bad)


def test_opt_equals_blowup_chi():
    from vbplab.copies import chromatic_number_copies_exact

    for i in range(5):
        g = gen_gnp(3, 0.5, 24000 + i)
        for t in (1, 2, 3):
            inst = CopiesInstance(g, t)
            assert (
                opt_exact(reduce_copies(inst))[0]
                == chromatic_number_copies_exact(inst)[0]
            )


# ------------------------------------------------------- algorithm adapter


def test_adapter_single_vertex():
    algo = vbp_algorithm_to_ccp_algorithm(FirstFitPacker())
    algo.start(1, 2)
    assert algo.color_copies(1, frozenset()) == (0, 1)


def test_adapter_empty_graph_reuses_bin():
    algo = vbp_algorithm_to_ccp_algorithm(FirstFitPacker())
    algo.start(2, 1)
    assert algo.color_copies(1, frozenset()) == (0,)
    assert algo.color_copies(2, frozenset()) == (0,)


def test_adapter_k2_t2_four_colors():
    algo = vbp_algorithm_to_ccp_algorithm(FirstFitPacker())
    algo.start(2, 2)
    assert algo.color_copies(1, frozenset()) == (0, 1)
    assert algo.color_copies(2, frozenset({1})) == (2, 3)


def test_adapter_matches_first_fit_bin_count():
    for i in range(8):
        g = gen_gnp(5, 0.5, 25000 + i)
        t = 2
        algo = vbp_algorithm_to_ccp_algorithm(FirstFitPacker())
        algo.start(g.n, t)
        coloring = {}
        for ev in events_from_graph(g):
            for k, c in enumerate(algo.color_copies(ev.vertex, ev.back_edges), 1):
                coloring[(ev.vertex, k)] = c
        inst_c = CopiesInstance(g, t)
        assert validate_copies_coloring(inst_c, coloring)
        ff_bins = first_fit_online(reduce_copies(inst_c)).num_bins
        assert len(set(coloring.values())) == ff_bins


def test_adapter_surfaces_bad_packer():
    class BrokenPacker:
        deterministic = True

        def start(self, d):
            pass

        def place(self, coords):
            return 0  # everything into bin 0, eventually infeasible

    algo = vbp_algorithm_to_ccp_algorithm(BrokenPacker())
    algo.start(2, 1)
    algo.color_copies(1, frozenset())
    with pytest.raises(ProtocolError):
        algo.color_copies(2, frozenset({1}))


# ---------------------------------------------------- first-fit correspondence


def test_first_fit_equals_greedy_partition():
    for i in range(12):
        g = gen_gnp(9, 0.5, 26000 + i)
        packing = first_fit_online(reduce_graph(g))
        coloring = greedy_online_coloring(g)
        assert packing.num_bins == len(set(coloring.values()))
        bins = {
            frozenset(idx + 1 for idx in b.items) for b in packing.bins
        }
        classes = {
            frozenset(v for v, c in coloring.items() if c == color)
            for color in set(coloring.values())
        }
        assert bins == classes
