from graphs.certificate import CertificateForests, ni_certificate_explicit, place_edge
from graphs.cuts import (
    CutWitness,
    block_weights,
    contract,
    cut_edges,
    edge_set_min_cut,
    exact_min_cut,
    exhaustive_min_cut,
    min_degree,
)
from graphs.directed import DirectedSubgraph
from graphs.gadget import degree_to_connectivity_gadget
from graphs.io import graph_from_text, graph_to_text, load_graph, save_certificate, save_graph
from graphs.partition import VertexPartition, component_partition
from graphs.simple_graph import Edge, SimpleGraph, VertexSet, as_mask, normalize_edge

__all__ = [
    "CertificateForests",
    "CutWitness",
    "DirectedSubgraph",
    "Edge",
    "SimpleGraph",
    "VertexPartition",
    "VertexSet",
    "as_mask",
    "block_weights",
    "component_partition",
    "contract",
    "cut_edges",
    "degree_to_connectivity_gadget",
    "edge_set_min_cut",
    "exact_min_cut",
    "exhaustive_min_cut",
    "graph_from_text",
    "graph_to_text",
    "load_graph",
    "min_degree",
    "ni_certificate_explicit",
    "normalize_edge",
    "place_edge",
    "save_certificate",
    "save_graph",
]
