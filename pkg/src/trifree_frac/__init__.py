"""Exact fractional colouring of triangle-free plane graphs.

The package computes fractional chromatic numbers with certificates,
implements the reductions used to bound them (folding, safe-face collapse,
cut and degree-2 splitting) and rebuilds colourings of a graph from
colourings of its reductions.
"""

from .coloring import (
    ColoringCheck,
    SetColoring,
    best_color_class,
    constant_demand,
    lift_mono_coloring,
    mono_neighborhood_coloring,
    three_coloring,
    verify_set_coloring,
)
from .corpus import Corpus, default_corpus, generate, random_tfp, run_lemma_suite, verify_bounds
from .errors import TrifreeError
from .graph import (
    INF,
    FacialWalk,
    PlaneGraph,
    build_graph,
    cut_vertices,
    distance,
    faces,
    is_triangle_free,
    is_two_connected,
    load_graph,
    odd_girth,
    power_graph,
    save_graph,
    separating_four_cycles,
)
from .lp import (
    FractionalResult,
    chi_f,
    find_witness,
    has_f_coloring,
    max_weight_independent_set,
    to_set_coloring,
)
from .proof import (
    OracleCertificate,
    b,
    bound_deg4,
    bound_main,
    class_partition_oracle,
    delta_deg4_nosep,
    extend_deg2,
    extend_safe_face,
    heavy_vertex_oracle,
    merge_cut_colorings,
    proof_oracle,
    recursive_coloring,
    verify_no_minimal_counterexample,
)
from .reductions import (
    SafeFace,
    collapse_safe_face,
    delete_vertex,
    find_safe_faces,
    fold_face,
    identify_vertices,
    split_at_cut_vertex,
)

__version__ = "0.1.0"
