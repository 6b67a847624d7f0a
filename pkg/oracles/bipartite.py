"""Product access x^T M y to a hidden Boolean matrix.

The recovery algorithms only ever call product(); implementations charge
one bip_product call (3 cut units) per product.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from errors import InvalidInputError
from oracles.cut_oracle import QueryPrimitives
from oracles.ledger import DERIVED_QUERY_UNITS, QueryCategory, QueryLedger

logger = logging.getLogger(__name__)


def _block_product(block: sparse.csr_matrix, x: np.ndarray, y: np.ndarray) -> int:
    rows = np.flatnonzero(x)
    if rows.size == 0:
        return 0
    return int(np.count_nonzero(y[block[rows].indices]))


class BipartiteOracle:
    """Base class: shape (m, n), a ledger, and product(x, y)."""

    shape: Tuple[int, int]
    ledger: QueryLedger

    @property
    def m(self) -> int:
        return self.shape[0]

    @property
    def n_cols(self) -> int:
        return self.shape[1]

    def _check(self, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=bool)
        y = np.asarray(y, dtype=bool)
        if x.shape != (self.shape[0],) or y.shape != (self.shape[1],):
            raise InvalidInputError(
                f"product vectors must have shapes ({self.shape[0]},), ({self.shape[1]},)")
        return x, y

    def product(self, x: Sequence[int], y: Sequence[int]) -> int:
        raise NotImplementedError

    def row_product(self, i: int, y: Sequence[int]) -> int:
        x = np.zeros(self.shape[0], dtype=bool)
        x[i] = True
        return self.product(x, y)

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "SubmatrixOracle":
        return SubmatrixOracle(self, rows, cols)


class MatrixOracle(BipartiteOracle):
    """Products against an explicit Boolean matrix."""

    def __init__(self, matrix: np.ndarray, ledger: Optional[QueryLedger] = None):
        dense = np.asarray(matrix, dtype=bool)
        if dense.ndim != 2:
            raise InvalidInputError("matrix must be two-dimensional")
        self.shape = dense.shape
        self._block = sparse.csr_matrix(dense.astype(np.int8))
        self.ledger = ledger if ledger is not None else QueryLedger()

    def product(self, x: Sequence[int], y: Sequence[int]) -> int:
        x, y = self._check(x, y)
        self.ledger.charge(QueryCategory.BIP_PRODUCT, DERIVED_QUERY_UNITS)
        return _block_product(self._block, x, y)


class BipartiteView(BipartiteOracle):
    """M = A(S, T): the bipartite adjacency between rows S and columns T.

    Args:
        oracle: CutOracle or GraphView answering the products.
        rows: Ordered row vertices S.
        cols: Ordered column vertices T, disjoint from S.
    """

    def __init__(self, oracle: QueryPrimitives, rows: Sequence[int], cols: Sequence[int]):
        self.oracle = oracle
        self.ledger = oracle.ledger
        self.rows = np.asarray(rows, dtype=np.int64)
        self.cols = np.asarray(cols, dtype=np.int64)
        if np.intersect1d(self.rows, self.cols).size:
            raise InvalidInputError("row and column vertex sets must be disjoint")
        self.shape = (int(self.rows.size), int(self.cols.size))
        self._block: Optional[sparse.csr_matrix] = None
        direct = getattr(oracle, "evaluation", getattr(getattr(oracle, "base", None), "evaluation", None))
        if direct == "direct" and hasattr(oracle, "bipartite_block") and self.rows.size and self.cols.size:
            self._block = oracle.bipartite_block(self.rows, self.cols)

    def product(self, x: Sequence[int], y: Sequence[int]) -> int:
        x, y = self._check(x, y)
        if self._block is None:
            return self.oracle.bip_product(self.rows, self.cols, x, y)
        self.ledger.charge(QueryCategory.BIP_PRODUCT, DERIVED_QUERY_UNITS)
        return _block_product(self._block, x, y)

    def vertex_of_row(self, i: int) -> int:
        return int(self.rows[i])

    def vertex_of_col(self, j: int) -> int:
        return int(self.cols[j])


class SubmatrixOracle(BipartiteOracle):
    """M(K, Q) for row indices K and column indices Q of a parent oracle."""

    def __init__(self, parent: BipartiteOracle, rows: Sequence[int], cols: Sequence[int]):
        self.parent = parent
        self.ledger = parent.ledger
        self.row_index = np.asarray(rows, dtype=np.int64)
        self.col_index = np.asarray(cols, dtype=np.int64)
        self.shape = (int(self.row_index.size), int(self.col_index.size))

    def product(self, x: Sequence[int], y: Sequence[int]) -> int:
        x, y = self._check(x, y)
        big_x = np.zeros(self.parent.shape[0], dtype=bool)
        big_y = np.zeros(self.parent.shape[1], dtype=bool)
        big_x[self.row_index[x]] = True
        big_y[self.col_index[y]] = True
        return self.parent.product(big_x, big_y)
