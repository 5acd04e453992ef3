"""Pair-coloring hypergraph constructions with 0/2/4 induced-edge sweeps,
exact independence certificates, and convex-position checks."""

from .construction import (
    Coloring,
    LinkHypergraph,
    PairColor,
    Params,
    ParityHypergraph,
    build_link_hypergraph,
    build_parity_hypergraph,
    is_link_edge,
    load_coloring,
    sample_coloring,
    save_coloring,
)
from .geometry import (
    GeometricHypergraph,
    PointConfiguration,
    build_geometric_hypergraph,
    is_convex_position,
    is_general_position,
    motzkin_count,
    sample_configuration,
)
from .hypergraph import (
    EdgeSet,
    OrderedTuple,
    VertexSet,
    enumerate_subsets,
    induced_count,
    load_edge_set,
    save_edge_set,
)
from .independence import (
    AlphaResult,
    EdgeProbability,
    LowerBoundCertificate,
    SteinerPacking,
    UnionBoundResult,
    alpha_exact,
    edge_probability,
    edge_probability_exact,
    edge_probability_monte_carlo,
    greedy_steiner_packing,
    load_certificate,
    save_certificate,
    search_colorings,
    union_bound,
    verify_certificate,
)
from .verifier import (
    InducedProfile,
    InternalInconsistencyError,
    SweepReport,
    check_degree_bound,
    check_matching_free,
    check_parity,
    classify_profile,
    full_sweep,
    merge_reports,
)

__version__ = "0.1.0"
