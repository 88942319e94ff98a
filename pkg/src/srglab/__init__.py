"""Strongly regular graphs, codegree counting and regularity checks at desk scale."""

from srglab.graph import (
    Graph,
    GraphFormatError,
    build_graph,
    codegree,
    codegree_in,
    complement,
    degree,
    degree_in,
    density,
    edges_between,
    induced_edge_count,
    read_edgelist,
    write_edgelist,
)
from srglab.families import (
    SrgParams,
    SrgVerdict,
    complement_params,
    disjoint_cliques,
    eigen_feasibility,
    from_spec,
    identity_check,
    is_trivial,
    lattice,
    paley,
    triangular,
    verify_srg,
)

__version__ = "0.1.0"
