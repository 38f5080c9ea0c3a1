"""Exact face, vertex, facet, volume and mixed-volume data of the harmonic polytope H_{n,n}."""

from .combinatorics import (
    OrderedSetPartition,
    SetPartition,
    enumerate_ordered_set_partitions,
    enumerate_set_partitions,
    forest_sum,
    fubini,
    join_partitions,
    mobius_to_top,
    stirling2,
    tree_weight,
)
from .config import DomainError, LimitError, Limits, get_limits, set_limits
from .faces import (
    FVector,
    FacetInequality,
    HarmonicTriple,
    VertexPoint,
    enumerate_triples,
    f_vector_via_tables,
    facet_system,
    fine_triples,
    is_harmonic_triple,
    polytope_face_dim,
    vertex_coordinates,
    vertex_count_formula,
)
from .volume import (
    BipartiteMultigraph,
    Graph,
    SubmodularProfile,
    gamma_from_graphs,
    harmonic_volume,
    nonzero_mixed_volume_count,
    scaled_mixed_volume,
    trimmed_lattice_count,
)

__version__ = "0.1.0"
