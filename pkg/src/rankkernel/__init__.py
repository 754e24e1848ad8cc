"""Polynomial kernels for vertex-deletion problems via low-rank incidence vectors."""

from __future__ import annotations

from .errors import DEFAULT_CAPS, Caps, ParseError, PreconditionError, RankKernelError, ResourceError
from .gf2 import BitVec, Gf2Basis
from .graph import (
    DeletionInstance,
    Graph,
    VertexCoverCert,
    approx_vertex_cover,
    complement,
    format_graph,
    format_instance,
    induced_subgraph,
    parse_cover,
    parse_graph,
    parse_instance,
    random_planted_instance,
    verify_vertex_cover,
)
from .incidence import (
    CoordinateIndex,
    IncVector,
    adjacency_share_subset,
    check_sum,
    coordinate_count,
    enumerate_coords,
    inc_vector,
    project,
)
from .kernel import PRESETS, Kernel, ProblemPreset, ReduceTrace, get_preset, kernelize, reduce
from .obstructions import PROPERTIES, PropertySpec, check_rank_c, get_property
from .solver import SolveResult, brute_force_decide, local_search_confirm, min_witness

__all__ = [
    "BitVec", "Caps", "CoordinateIndex", "DEFAULT_CAPS", "DeletionInstance", "Gf2Basis", "Graph",
    "IncVector", "Kernel", "PRESETS", "PROPERTIES", "ParseError", "PreconditionError",
    "ProblemPreset", "PropertySpec", "RankKernelError", "ReduceTrace", "ResourceError",
    "SolveResult", "VertexCoverCert", "adjacency_share_subset", "approx_vertex_cover",
    "brute_force_decide", "check_rank_c", "check_sum", "complement", "coordinate_count",
    "enumerate_coords", "format_graph", "format_instance", "get_preset", "get_property",
    "inc_vector", "induced_subgraph", "kernelize", "local_search_confirm", "min_witness",
    "parse_cover", "parse_graph", "parse_instance", "project", "random_planted_instance",
    "reduce", "verify_vertex_cover",
]
