"""Cut-query oracle over a hidden graph, and induced/edge-removed views.

Algorithms see the hidden graph only through the methods here. Every
method charges the shared QueryLedger:

- cut(S): 1 cut unit
- cross(S, T), bip_product, induced_cut: 3 cut units per call
- mv_query: 1 mv unit
- modeled_min_cut: modeled units for an exact solver standing in for an
  external cut-query min-cut procedure
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set

import numpy as np
from scipy import sparse

from errors import InvalidInputError
from graphs import CutWitness, SimpleGraph, VertexPartition, as_mask, exact_min_cut, normalize_edge
from graphs.simple_graph import Edge, VertexSet
from oracles.ledger import DERIVED_QUERY_UNITS, QueryCategory, QueryLedger, modeled_mincut_units

logger = logging.getLogger(__name__)

EVALUATION_MODES = ("direct", "identity")


class QueryPrimitives:
    """Queries derived from cross(S, T), shared by the oracle and its views."""

    n: int
    ledger: QueryLedger

    def _cross_value(self, s_mask: np.ndarray, t_mask: np.ndarray) -> int:
        raise NotImplementedError

    def _check_disjoint(self, s_mask: np.ndarray, t_mask: np.ndarray) -> None:
        if np.any(s_mask & t_mask):
            raise InvalidInputError("S and T must be disjoint")

    def cross(self, s: VertexSet, t: VertexSet) -> int:
        """|E(S, T)| for disjoint S and T; charges 3 cut units."""
        s_mask, t_mask = as_mask(self.n, s), as_mask(self.n, t)
        self._check_disjoint(s_mask, t_mask)
        self.ledger.charge(QueryCategory.CROSS, DERIVED_QUERY_UNITS)
        return self._cross_value(s_mask, t_mask)

    def bip_product(self, s: Sequence[int], t: Sequence[int],
                    x: Sequence[int], y: Sequence[int]) -> int:
        """x^T A y for the bipartite adjacency between ordered S and T."""
        s_arr = np.asarray(s, dtype=np.int64)
        t_arr = np.asarray(t, dtype=np.int64)
        x_arr = np.asarray(x, dtype=bool)
        y_arr = np.asarray(y, dtype=bool)
        if x_arr.shape != s_arr.shape or y_arr.shape != t_arr.shape:
            raise InvalidInputError("bit-vectors must match the lengths of S and T")
        self._check_disjoint(as_mask(self.n, s_arr), as_mask(self.n, t_arr))
        self.ledger.charge(QueryCategory.BIP_PRODUCT, DERIVED_QUERY_UNITS)
        return self._cross_value(as_mask(self.n, s_arr[x_arr]), as_mask(self.n, t_arr[y_arr]))

    def degree_into(self, v: int, r: VertexSet) -> int:
        """d_R(v) with v removed from R; one cross call."""
        r_mask = as_mask(self.n, r).copy()
        r_mask[v] = False
        return self.cross([v], r_mask)

    def random_neighbor(self, v: int, r: VertexSet, rng: np.random.Generator) -> Optional[int]:
        """Uniformly random neighbour of v in R, or None if there is none.

        One cross call checks existence, then each halving step costs one
        more cross call. The lower-id half of the candidates gets
        ceil(|R|/2) ids, and a half is chosen with probability proportional
        to v's degree into it.
        """
        r_mask = as_mask(self.n, r)
        if r_mask[v]:
            raise InvalidInputError(f"vertex {v} must not be in R")
        v_mask = as_mask(self.n, [v])
        degree = self.cross(v_mask, r_mask)
        if degree == 0:
            return None
        candidates = np.flatnonzero(r_mask)
        while candidates.size > 1:
            half = (candidates.size + 1) // 2
            low, high = candidates[:half], candidates[half:]
            low_degree = self.cross(v_mask, as_mask(self.n, low))
            if rng.random() * degree < low_degree:
                candidates, degree = low, low_degree
            else:
                candidates, degree = high, degree - low_degree
        return int(candidates[0])


class CutOracle(QueryPrimitives):
    """Instrumented cut oracle over a hidden SimpleGraph.

    Args:
        graph: The hidden graph.
        ledger: Shared ledger; a fresh one is created when omitted.
        evaluation: "direct" counts |E(S,T)| from the smaller-volume side;
            "identity" evaluates (cut(S) + cut(T) - cut(S u T)) / 2
            literally. Both charge identically.
    """

    def __init__(self, graph: SimpleGraph, ledger: Optional[QueryLedger] = None,
                 evaluation: str = "direct"):
        if evaluation not in EVALUATION_MODES:
            raise InvalidInputError(f"unknown evaluation mode {evaluation!r}")
        self._graph = graph
        self.ledger = ledger if ledger is not None else QueryLedger()
        self.evaluation = evaluation

    @property
    def n(self) -> int:
        return self._graph.n

    def _cross_value(self, s_mask: np.ndarray, t_mask: np.ndarray) -> int:
        if self.evaluation == "identity":
            g = self._graph
            total = g.cut_size(s_mask) + g.cut_size(t_mask) - g.cut_size(s_mask | t_mask)
            return total // 2
        return self._graph.count_between(s_mask, t_mask)

    def cut(self, s: VertexSet) -> int:
        """|cut(S)|; charges 1."""
        s_mask = as_mask(self.n, s)
        self.ledger.charge(QueryCategory.CUT, 1)
        return self._graph.cut_size(s_mask)

    def induced_cut(self, vertices: VertexSet, removed: Iterable[Sequence[int]],
                    s: VertexSet) -> int:
        """|cut(S)| in (V', E[V'] minus X); charges 3."""
        w_mask = as_mask(self.n, vertices)
        s_mask = as_mask(self.n, s)
        if np.any(s_mask & ~w_mask):
            raise InvalidInputError("S must be a subset of V'")
        rest = w_mask & ~s_mask
        self.ledger.charge(QueryCategory.INDUCED_CUT, DERIVED_QUERY_UNITS)
        value = self._graph.count_between(s_mask, rest)
        seen = set()
        for u, v in removed:
            e = normalize_edge(int(u), int(v))
            if e in seen or not self._graph.has_edge(*e):
                continue
            seen.add(e)
            if (s_mask[e[0]] and rest[e[1]]) or (s_mask[e[1]] and rest[e[0]]):
                value -= 1
        return value

    def mv_query(self, x: Sequence[int], restricted: bool = False) -> np.ndarray:
        """A x, or A x o (1 - x) when restricted; charges 1 mv unit."""
        x_arr = np.asarray(x, dtype=np.int64)
        if x_arr.shape != (self.n,):
            raise InvalidInputError(f"mv query vector must have length {self.n}")
        self.ledger.charge(QueryCategory.MV, 1)
        product = np.asarray(self._graph.csr @ x_arr, dtype=np.int64)
        if restricted:
            product = product * (1 - x_arr)
        return product

    def modeled_min_cut(self, partition: VertexPartition, exponent: int = 8) -> CutWitness:
        """Exact min cut of the contraction, charged as N log2^exponent N modeled units."""
        blocks = partition.block_count
        self.ledger.charge(QueryCategory.MODELED, modeled_mincut_units(blocks, exponent))
        self.ledger.tag("mn_modeled")
        return exact_min_cut(self._graph, partition, exhaustive_limit=0)

    def bipartite_block(self, rows: np.ndarray, cols: np.ndarray,
                        removed: Optional["RemovedEdges"] = None) -> sparse.csr_matrix:
        """Adjacency block rows x cols, for answering products quickly.

        Only product-answering views call this; the values they return are
        exactly bip_product answers.
        """
        block = self._graph.csr[rows][:, cols].tocsr()
        if removed is not None and len(removed):
            block = block.tolil()
            row_pos = {int(v): i for i, v in enumerate(rows)}
            col_pos = {int(v): j for j, v in enumerate(cols)}
            for u, v in removed.edges():
                for a, b in ((u, v), (v, u)):
                    if a in row_pos and b in col_pos:
                        block[row_pos[a], col_pos[b]] = 0
            block = block.tocsr()
            block.eliminate_zeros()
        return block

    def view(self, vertices: Optional[VertexSet] = None,
             removed: Optional[Iterable[Sequence[int]]] = None) -> "GraphView":
        return GraphView(self, vertices, removed)

    def __repr__(self) -> str:
        return f"CutOracle(n={self.n}, ledger={self.ledger!r})"


class RemovedEdges:
    """Explicitly known edge set X with per-vertex lookup."""

    def __init__(self, edges: Iterable[Sequence[int]] = ()):
        self._adjacent: Dict[int, Set[int]] = {}
        self._edges: List[Edge] = []
        self.add(edges)

    def add(self, edges: Iterable[Sequence[int]]) -> None:
        for u, v in edges:
            u, v = int(u), int(v)
            if v in self._adjacent.get(u, ()):
                continue
            self._adjacent.setdefault(u, set()).add(v)
            self._adjacent.setdefault(v, set()).add(u)
            self._edges.append(normalize_edge(u, v))
        self._array = None

    def edges(self) -> List[Edge]:
        return list(self._edges)

    def count_between(self, s_mask: np.ndarray, t_mask: np.ndarray) -> int:
        if not self._edges:
            return 0
        s_idx = np.flatnonzero(s_mask)
        if s_idx.size <= 8:
            return sum(1 for u in s_idx for w in self._adjacent.get(int(u), ()) if t_mask[w])
        if self._array is None:
            self._array = np.array(self._edges, dtype=np.int64).reshape(-1, 2)
        a, b = self._array[:, 0], self._array[:, 1]
        return int(np.count_nonzero((s_mask[a] & t_mask[b]) | (s_mask[b] & t_mask[a])))

    def __len__(self) -> int:
        return len(self._edges)


class GraphView(QueryPrimitives):
    """Queries on (W, E[W] minus X) simulated through the base oracle.

    cross on the view is the base cross minus the known edges of X
    between S and T; cut on the view is charged as an induced cut.
    """

    def __init__(self, base: CutOracle, vertices: Optional[VertexSet] = None,
                 removed: Optional[Iterable[Sequence[int]]] = None):
        self.base = base
        self.ledger = base.ledger
        self.vertices = (np.ones(base.n, dtype=bool) if vertices is None
                         else as_mask(base.n, vertices).copy())
        self.removed = RemovedEdges(removed or ())

    @property
    def n(self) -> int:
        return self.base.n

    def add_removed(self, edges: Iterable[Sequence[int]]) -> None:
        self.removed.add(edges)

    def _check_inside(self, mask: np.ndarray) -> None:
        if np.any(mask & ~self.vertices):
            raise InvalidInputError("query set leaves the view's vertex set")

    def _cross_value(self, s_mask: np.ndarray, t_mask: np.ndarray) -> int:
        self._check_inside(s_mask)
        self._check_inside(t_mask)
        return self.base._cross_value(s_mask, t_mask) - self.removed.count_between(s_mask, t_mask)

    def cut(self, s: VertexSet) -> int:
        """|cut(S)| inside the view; charged as one induced cut."""
        s_mask = as_mask(self.n, s)
        self._check_inside(s_mask)
        self.ledger.charge(QueryCategory.INDUCED_CUT, DERIVED_QUERY_UNITS)
        return self._cross_value(s_mask, self.vertices & ~s_mask)

    def bipartite_block(self, rows: np.ndarray, cols: np.ndarray) -> sparse.csr_matrix:
        self._check_inside(as_mask(self.n, rows))
        self._check_inside(as_mask(self.n, cols))
        return self.base.bipartite_block(rows, cols, self.removed)

    def __repr__(self) -> str:
        return (f"GraphView(vertices={int(self.vertices.sum())}, "
                f"removed={len(self.removed)})")
