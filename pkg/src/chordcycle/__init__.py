"""Detectors, decompositions and bounded colorers for graphs without cycles
carrying exactly two or three chords, with an exact-coloring oracle."""

__version__ = "0.1.0"

from chordcycle.coloring import (
    K4_FREE_BOUND,
    TRIANGLE_FREE_BOUND,
    XV_FREE_BOUND,
    Coloring,
    FalsificationReport,
    color_3cycle_free,
    color_by_parity_levels,
    color_k4_3cycle_free,
    color_triangle_3cycle_free,
    color_xv_free,
    exact_chromatic_number,
    verify_coloring,
    verify_falsification,
)
from chordcycle.decompose import (
    CliqueCutset,
    CompleteTripartite,
    DiamondFree,
    HittingSet,
    find_clique_cutset,
    minimal_triangle_hitting_set,
    trichotomy,
    verify_trichotomy,
)
from chordcycle.detectors import (
    CycleWitness,
    PatternName,
    TwoChordKind,
    clique_number,
    find_induced_pattern,
    find_induced_subgraph,
    find_k_chord_cycle,
    find_two_chord_cycle_of_kind,
    is_in_class_Ck,
    is_xv_free,
)
from chordcycle.errors import (
    ChordCycleError,
    DisconnectedGraphError,
    FalsificationError,
    Graph6Error,
    NotInClassError,
    ResourceCapExceeded,
    SizeCapExceeded,
)
from chordcycle.generators import (
    complete_graph,
    complete_multipartite,
    cycle_graph,
    enumerate_labeled,
    hajos_join,
    petersen_graph,
    random_graph,
    random_stream,
)
from chordcycle.graph import Graph, bfs_levels, from_edge_list, induced_subgraph, parse_graph6, to_graph6

__all__ = [name for name in dir() if not name.startswith("_")]
