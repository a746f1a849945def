"""Bond percolation on Hamming graphs H(d, n)."""
from .graph import (
    GraphParams,
    HyperplaneId,
    decode_vertex,
    edge_count,
    edge_from_index,
    encode_vertex,
    hyperplane_of,
    index_from_edge,
    neighbors,
)
from .percolation import (
    ConnectivityReport,
    DisjointSetForest,
    PercolationParam,
    ResourceLimitError,
    SampleGraph,
    build_sample,
    connectivity_report,
    count_isolated,
    coupled_pair,
    hyperplane_connected,
    hyperplane_connectivity,
    sample_from_edges,
    sample_occupied_edges,
)
from .theory import (
    alpha_parameter,
    brute_force_connectivity,
    brute_force_factorial_moment,
    convert,
    factorial_moment_bounds,
    hyperplane_window,
    poisson_pmf,
    predicted_connectivity,
)

__version__ = "0.1.0"
