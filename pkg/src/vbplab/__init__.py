"""Online graph coloring / vector bin packing reduction laboratory.

Exact small-instance oracles (chromatic number, fractional chromatic
number, optimal vector packing), the coloring -> packing reductions that
tie them together, blow-up ("copies") colorings, the randomized
pool-sampling simulation, adversarial generators, and a verification
harness. Hot search kernels run compiled when the extension built; see
vbplab.kernels.BACKEND.
"""

__version__ = "0.1.0"

from .copies import (
    CopiesInstance,
    GreedyCcp,
    blow_up_explicit,
    check_sandwich,
    chromatic_number_copies_exact,
    fractional_coloring_from_copies,
    greedy_online_ccp,
    product_coloring,
    validate_copies_coloring,
)
from .errors import InputError, ProtocolError, ResourceLimitError
from .generators import (
    CrownAdversary,
    ReplayAdversary,
    all_connected_graphs,
    all_graphs,
    gen_complete,
    gen_crown,
    gen_cycle,
    gen_empty,
    gen_gnp,
    gen_path,
    run_adversary,
)
from .graphs import (
    FractionalColoring,
    Graph,
    GreedyColoring,
    OnlineVertexEvent,
    chromatic_number_exact,
    events_from_graph,
    fractional_chromatic_exact,
    graph_from_edges,
    greedy_online_coloring,
    is_independent_set,
    read_graph_file,
    validate_coloring,
    validate_fractional_coloring,
    write_graph_file,
)
from .kernels import BACKEND
from .pool import (
    expected_colors_bound,
    fail_probability_bound,
    monte_carlo_verify,
    run_algorithm_b,
    sampling_probability,
)
from .reductions import (
    ccp_to_vbp,
    coloring_to_vbp,
    packing_to_copies_coloring,
    reduce_copies,
    reduce_graph,
    vbp_algorithm_to_ccp_algorithm,
)
from .vbp import (
    Bin,
    FirstFitPacker,
    PackingState,
    VbpInstance,
    competitive_gap,
    first_fit_online,
    fits,
    make_instance,
    make_item,
    opt_exact,
    read_vbp_file,
    validate_packing,
    write_vbp_file,
)
from .verify import run_verification_suite
