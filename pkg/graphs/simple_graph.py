"""Immutable simple undirected graph used as the hidden ground truth.

Supports:
- Validated construction (symmetric, no self-loops, ids in [0, n))
- Degree, adjacency and edge iteration
- Direct cut and crossing-edge counts over vertex sets
- Sparse adjacency (scipy CSR) for fast set counting
- Stable digests for caching and report keys
"""

import hashlib
import logging
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from scipy import sparse

from errors import InvalidInputError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
VertexSet = Union[np.ndarray, Iterable[int]]


def normalize_edge(u: int, v: int) -> Edge:
    """Order an undirected edge as (min, max)."""
    return (u, v) if u < v else (v, u)


def as_mask(n: int, vertices: VertexSet) -> np.ndarray:
    """Convert a vertex set (ids or a Boolean mask) into a Boolean mask.

    Args:
        n: Number of vertices.
        vertices: Iterable of ids, or a Boolean numpy array of length n.

    Returns:
        Boolean numpy array of length n.
    """
    if isinstance(vertices, np.ndarray) and vertices.dtype == bool:
        if vertices.shape != (n,):
            raise InvalidInputError(
                f"mask has shape {vertices.shape}, expected ({n},)")
        return vertices
    ids = np.fromiter((int(v) for v in vertices), dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= n):
        raise InvalidInputError("vertex id out of range", {"n": n})
    mask = np.zeros(n, dtype=bool)
    mask[ids] = True
    return mask


class SimpleGraph:
    """Undirected simple graph on vertices 0..n-1.

    The graph is immutable after construction and can be shared across
    concurrent trials.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (),
                 allow_duplicates: bool = False):
        if n < 0:
            raise InvalidInputError(f"vertex count must be >= 0, got {n}")
        neighbor_sets: List[set] = [set() for _ in range(n)]
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if v in neighbor_sets[u]:
                if allow_duplicates:
                    continue
                raise InvalidInputError(f"duplicate edge ({u}, {v})")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)

        self.n = n
        self._adj: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in neighbor_sets)
        self._adj_sets: Tuple[FrozenSet[int], ...] = tuple(
            frozenset(s) for s in neighbor_sets)
        degrees = np.fromiter((len(a) for a in self._adj), dtype=np.int64, count=n)
        degrees.setflags(write=False)
        self._degrees = degrees
        self.m = int(degrees.sum()) // 2

        for u in range(n):
            for v in self._adj[u]:
                assert u in self._adj_sets[v], "adjacency must be symmetric"

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimpleGraph":
        """Build from a networkx graph, relabelling nodes in sorted order."""
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in graph.edges() if u != v]
        return cls(len(nodes), edges, allow_duplicates=True)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    # -- structure ------------------------------------------------------------

    def adjacency(self, v: int) -> Tuple[int, ...]:
        """Sorted neighbour tuple of v."""
        return self._adj[v]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj_sets[v]

    def degree(self, v: int) -> int:
        return int(self._degrees[v])

    @property
    def degrees(self) -> np.ndarray:
        """Read-only degree vector."""
        return self._degrees

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adj_sets[u]

    def edges(self) -> Iterator[Edge]:
        """Edges as (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) int64 array, rows ascending."""
        arr = np.array(list(self.edges()), dtype=np.int64)
        return arr.reshape(-1, 2)

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix."""
        arr = self.edge_array
        rows = np.concatenate([arr[:, 0], arr[:, 1]])
        cols = np.concatenate([arr[:, 1], arr[:, 0]])
        data = np.ones(rows.size, dtype=np.int64)
        matrix = sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        matrix.sort_indices()
        return matrix

    # -- set counting ---------------------------------------------------------

    def mask(self, vertices: VertexSet) -> np.ndarray:
        return as_mask(self.n, vertices)

    def volume(self, vertices: VertexSet) -> int:
        return int(self._degrees[self.mask(vertices)].sum())

    def count_between(self, s: VertexSet, t: VertexSet) -> int:
        """|E(S, T)| for disjoint S, T, counted from the smaller-volume side."""
        s_mask = self.mask(s)
        t_mask = self.mask(t)
        s_idx = np.flatnonzero(s_mask)
        t_idx = np.flatnonzero(t_mask)
        if s_idx.size == 0 or t_idx.size == 0:
            return 0
        if self._degrees[s_idx].sum() > self._degrees[t_idx].sum():
            s_idx, t_mask = t_idx, s_mask
        rows = self.csr[s_idx]
        return int(np.count_nonzero(t_mask[rows.indices]))

    def cut_size(self, vertices: VertexSet) -> int:
        """|cut(S)|: edges with exactly one endpoint in S."""
        s_mask = self.mask(vertices)
        return self.count_between(s_mask, ~s_mask)

    # -- identity -------------------------------------------------------------

    def digest(self) -> str:
        """SHA-256 over n and the sorted edge list."""
        h = hashlib.sha256()
        h.update(f"{self.n}:".encode())
        h.update(np.ascontiguousarray(self.edge_array).tobytes())
        return h.hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self.digest())

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m})"
