"""plancon: decide whether a graph becomes planar after at most k edge
contractions, with independently checkable certificates either way."""

from .graph import (
    EdgeSet,
    Graph,
    GraphError,
    Instance,
    WitnessStructure,
    connected_components,
    contract_edge,
    contract_edge_set,
    contract_sequence,
    verify_witness_structure,
)
from .planarity import (
    CycleRegion,
    Embedding,
    KuratowskiSubdivision,
    PlanarityError,
    cycle_interior,
    embed,
    faces,
    find_kuratowski,
    is_planar,
    test_planarity,
)

__all__ = [
    "EdgeSet",
    "Graph",
    "GraphError",
    "Instance",
    "WitnessStructure",
    "connected_components",
    "contract_edge",
    "contract_edge_set",
    "contract_sequence",
    "verify_witness_structure",
    "CycleRegion",
    "Embedding",
    "KuratowskiSubdivision",
    "PlanarityError",
    "cycle_interior",
    "embed",
    "faces",
    "find_kuratowski",
    "is_planar",
    "test_planarity",
]
