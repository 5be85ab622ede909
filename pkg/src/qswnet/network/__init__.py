from .topology import (
    ModelSpec,
    Topology,
    build_topology,
    classical_transition_from_adjacency,
    format_model_spec,
    parse_model_spec,
)

__all__ = [
    "ModelSpec",
    "Topology",
    "build_topology",
    "classical_transition_from_adjacency",
    "format_model_spec",
    "parse_model_spec",
]
