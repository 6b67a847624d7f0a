"""Union-find partition of the vertex set (supervertices of a contraction)."""

import logging
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from errors import InvalidInputError

logger = logging.getLogger(__name__)


class VertexPartition:
    """Disjoint blocks covering 0..n-1, merged by union-find.

    Single-owner mutable; use copy() before handing it to another run.
    """

    def __init__(self, n: int):
        if n < 0:
            raise InvalidInputError(f"vertex count must be >= 0, got {n}")
        self.n = n
        self._parent: List[int] = list(range(n))
        self._rank: List[int] = [0] * n
        self._blocks = n

    @classmethod
    def identity(cls, n: int) -> "VertexPartition":
        return cls(n)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        """Partition whose blocks are the vertices sharing a label."""
        partition = cls(len(labels))
        first: Dict[int, int] = {}
        for v, label in enumerate(labels):
            label = int(label)
            if label in first:
                partition.union(first[label], v)
            else:
                first[label] = v
        return partition

    def find(self, v: int) -> int:
        parent = self._parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(self, u: int, v: int) -> bool:
        """Merge the blocks of u and v; False if they were already merged."""
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self._rank[ru] < self._rank[rv]:
            ru, rv = rv, ru
        self._parent[rv] = ru
        if self._rank[ru] == self._rank[rv]:
            self._rank[ru] += 1
        self._blocks -= 1
        return True

    def union_all(self, edges: Iterable[Sequence[int]]) -> int:
        """Union every pair; returns the number of successful merges."""
        return sum(1 for u, v in edges if self.union(int(u), int(v)))

    def same(self, u: int, v: int) -> bool:
        return self.find(u) == self.find(v)

    @property
    def block_count(self) -> int:
        return self._blocks

    def labels(self) -> np.ndarray:
        """Canonical block index per vertex, blocks ordered by smallest member."""
        labels = np.empty(self.n, dtype=np.int64)
        index: Dict[int, int] = {}
        for v in range(self.n):
            root = self.find(v)
            if root not in index:
                index[root] = len(index)
            labels[v] = index[root]
        return labels

    def blocks(self) -> List[List[int]]:
        """Blocks as ascending member lists, ordered by smallest member."""
        out: List[List[int]] = []
        index: Dict[int, int] = {}
        for v in range(self.n):
            root = self.find(v)
            if root not in index:
                index[root] = len(out)
                out.append([])
            out[index[root]].append(v)
        return out

    def block_of(self, v: int) -> List[int]:
        root = self.find(v)
        return [u for u in range(self.n) if self.find(u) == root]

    def refines(self, other: "VertexPartition") -> bool:
        """True when every block of self lies inside a block of other."""
        if other.n != self.n:
            return False
        seen: Dict[int, int] = {}
        for v in range(self.n):
            root = self.find(v)
            outer = other.find(v)
            if seen.setdefault(root, outer) != outer:
                return False
        return True

    def copy(self) -> "VertexPartition":
        clone = VertexPartition.__new__(VertexPartition)
        clone.n = self.n
        clone._parent = list(self._parent)
        clone._rank = list(self._rank)
        clone._blocks = self._blocks
        return clone

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexPartition):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.labels(), other.labels()))

    def __repr__(self) -> str:
        return f"VertexPartition(n={self.n}, blocks={self.block_count})"


def component_partition(n: int, edges: Iterable[Sequence[int]],
                        base: Optional[VertexPartition] = None) -> VertexPartition:
    """Connected components of (V, edges), optionally starting from base."""
    partition = base.copy() if base is not None else VertexPartition(n)
    partition.union_all(edges)
    return partition
