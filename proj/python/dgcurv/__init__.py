"""Curvature-dimension analysis of strongly connected directed graphs."""

from ._dgcurv import (
    ConnectivityError,
    CurvatureReport,
    DirectedGraph,
    NumericalError,
    OperatorBundle,
    ParseError,
    VertexReport,
    distance,
    is_strongly_connected,
    make_bidirected_complete,
    make_bundle,
    make_cycle,
    make_random_strongly_connected,
    parse_edge_list,
    parse_json_graph,
    perron_vector,
    probability_matrix,
    theorem_bound,
    to_edge_list,
    verify_graph,
)

__version__ = "0.1.0"
