"""Exact minimum cuts, contraction and degree helpers on explicit graphs.

Supports:
- Stoer-Wagner global minimum cut (networkx) on graphs and contractions
- Exhaustive bipartition enumeration as a second oracle for small graphs
- Contraction of an edge set into a VertexPartition
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from errors import ContractViolationError, InvalidInputError
from graphs.partition import VertexPartition
from graphs.simple_graph import SimpleGraph, as_mask, normalize_edge

logger = logging.getLogger(__name__)

EXHAUSTIVE_AUTO_LIMIT = 16
EXHAUSTIVE_HARD_LIMIT = 22


@dataclass(frozen=True, eq=False)
class CutWitness:
    """A cut value together with one side of a cut achieving it."""
    value: int
    side: np.ndarray

    def __post_init__(self):
        size = int(np.count_nonzero(self.side))
        if not 0 < size < self.side.size:
            raise InvalidInputError("witness side must be a proper non-empty subset")

    @property
    def members(self) -> List[int]:
        return [int(v) for v in np.flatnonzero(self.side)]

    def verify(self, graph: SimpleGraph) -> bool:
        """Recompute the cut against the graph."""
        return graph.cut_size(self.side) == self.value

    def is_trivial(self) -> bool:
        """True when the smaller side is a single vertex."""
        size = int(np.count_nonzero(self.side))
        return min(size, self.side.size - size) == 1

    def __repr__(self) -> str:
        return f"CutWitness(value={self.value}, side={self.members})"


def min_degree(graph: SimpleGraph) -> int:
    """Minimum vertex degree."""
    if graph.n < 1:
        raise InvalidInputError("min_degree needs at least one vertex")
    return int(graph.degrees.min())


def contract(graph: SimpleGraph, edges: Iterable[Sequence[int]],
             base: Optional[VertexPartition] = None) -> VertexPartition:
    """Partition whose blocks are the components of (V, F).

    Args:
        graph: The graph F is taken from.
        edges: Edge set F; every edge must be in the graph.
        base: Optional partition to start from (contracting a contraction).
    """
    partition = base.copy() if base is not None else VertexPartition(graph.n)
    for u, v in edges:
        u, v = int(u), int(v)
        if not graph.has_edge(u, v):
            raise InvalidInputError(f"edge ({u}, {v}) is not in the graph")
        partition.union(u, v)
    return partition


def block_weights(n: int, edges: Iterable[Sequence[int]],
                  labels: np.ndarray) -> Dict[Tuple[int, int], int]:
    """Edge multiplicities between blocks; intra-block edges are dropped."""
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                     dtype=np.int64).reshape(-1, 2)
    if arr.size == 0:
        return {}
    a = labels[arr[:, 0]]
    b = labels[arr[:, 1]]
    keep = a != b
    lo = np.minimum(a[keep], b[keep])
    hi = np.maximum(a[keep], b[keep])
    if lo.size == 0:
        return {}
    pairs, counts = np.unique(np.stack([lo, hi], axis=1), axis=0, return_counts=True)
    return {(int(p[0]), int(p[1])): int(c) for p, c in zip(pairs, counts)}


def _block_side_to_mask(labels: np.ndarray, blocks: Iterable[int]) -> np.ndarray:
    return np.isin(labels, np.fromiter(blocks, dtype=np.int64))


def _exhaustive_block_cut(q: int, weights: Dict[Tuple[int, int], int]
                          ) -> Tuple[int, np.ndarray]:
    """Minimum over all 2^(q-1)-1 bipartitions of q blocks."""
    if q > EXHAUSTIVE_HARD_LIMIT:
        raise InvalidInputError(f"exhaustive enumeration limited to {EXHAUSTIVE_HARD_LIMIT} blocks")
    w = np.zeros((q, q), dtype=np.int64)
    for (a, b), c in weights.items():
        w[a, b] = c
        w[b, a] = c
    # block q-1 is pinned to the outside so each bipartition appears once
    codes = np.arange(1, 2 ** (q - 1), dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(q - 1)) & 1).astype(np.int64)
    x = np.concatenate([bits, np.zeros((codes.size, 1), dtype=np.int64)], axis=1)
    values = ((x @ w) * (1 - x)).sum(axis=1)
    best = int(np.argmin(values))
    return int(values[best]), x[best].astype(bool)


def exhaustive_min_cut(n: int, edges: Iterable[Sequence[int]],
                       partition: Optional[VertexPartition] = None) -> CutWitness:
    """Minimum cut by enumerating every bipartition of the blocks."""
    labels = partition.labels() if partition is not None else np.arange(n, dtype=np.int64)
    q = int(labels.max()) + 1 if n else 0
    if q < 2:
        raise InvalidInputError("minimum cut needs at least two (super)vertices")
    value, block_side = _exhaustive_block_cut(q, block_weights(n, edges, labels))
    return CutWitness(value, _block_side_to_mask(labels, np.flatnonzero(block_side)))


def edge_set_min_cut(n: int, edges: Iterable[Sequence[int]],
                     partition: Optional[VertexPartition] = None,
                     exhaustive_limit: int = EXHAUSTIVE_AUTO_LIMIT) -> CutWitness:
    """Global minimum cut of the multigraph (V, edges) contracted by partition.

    Stoer-Wagner is the primary oracle. Up to exhaustive_limit blocks the
    answer is cross-checked by enumeration; a disagreement raises.
    Disconnected inputs return 0 with a component as the witness.
    """
    labels = partition.labels() if partition is not None else np.arange(n, dtype=np.int64)
    q = int(labels.max()) + 1 if n else 0
    if q < 2:
        raise InvalidInputError("minimum cut needs at least two (super)vertices")
    weights = block_weights(n, edges, labels)

    g = nx.Graph()
    g.add_nodes_from(range(q))
    for (a, b), c in weights.items():
        g.add_edge(a, b, weight=c)

    if not nx.is_connected(g):
        component = nx.node_connected_component(g, 0)
        value, block_side = 0, component
    else:
        value, (part, _) = nx.stoer_wagner(g, weight="weight")
        block_side = part
    witness = CutWitness(int(value), _block_side_to_mask(labels, block_side))

    if q <= exhaustive_limit:
        check, _ = _exhaustive_block_cut(q, weights)
        if check != witness.value:
            raise ContractViolationError(
                "Stoer-Wagner and enumeration disagree",
                {"stoer_wagner": witness.value, "exhaustive": check})
    return witness


def exact_min_cut(graph: SimpleGraph, partition: Optional[VertexPartition] = None,
                  exhaustive_limit: int = EXHAUSTIVE_AUTO_LIMIT) -> CutWitness:
    """Exact global minimum cut of a graph or of its contraction."""
    if graph.n < 2:
        raise InvalidInputError("exact_min_cut needs n >= 2")
    return edge_set_min_cut(graph.n, graph.edge_array, partition, exhaustive_limit)


def cut_edges(graph: SimpleGraph, side) -> List[Tuple[int, int]]:
    """Edges crossing the cut (side, V - side)."""
    mask = as_mask(graph.n, side)
    return [normalize_edge(u, v) for u, v in graph.edges() if mask[u] != mask[v]]
