"""Learn a Boolean matrix with at most ell ones per row from x^T M y products.

Rows are grouped by how many ones remain unknown. For a group, columns are
hashed into buckets; a row whose residual count in a bucket is exactly one
has a singleton there, and the bits of that column's index are read off with
one measurement per bit. Those measurements are shared across the group's
rows through signed weighing designs, so each costs far fewer products than
one per row. Found ones are peeled and the process repeats with fresh
hashes. Small groups and stragglers use per-row binary search.
"""

import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from errors import ContractViolationError, InvalidInputError
from graphs import SimpleGraph, save_graph
from oracles import BipartiteOracle, BipartiteView, log2_ceil
from recovery.coin_weighing import identify_coins, signed_query_cost

logger = logging.getLogger(__name__)

C_LEARN = 24
C_ZERO = 64
BATCH_MIN_ROWS = 32
MAX_HASH_ROUNDS = 16
HASH_SEED = 0x5EED


def learning_budget(m: int, n: int, ell: int) -> int:
    """Product budget: C_LEARN*ell*m*ceil(log2 2n)/ceil(log2 2m) + C_ZERO.

    The ratio is floored at 1: a tall matrix still needs about one product
    per row to read its total.
    """
    if m <= 0 or n <= 0:
        return C_ZERO
    ratio = max(1.0, log2_ceil(2 * n) / log2_ceil(2 * m))
    return math.ceil(C_LEARN * max(ell, 1) * m * ratio) + C_ZERO


class _RowLearner:
    """Working state for one learning run."""

    def __init__(self, oracle: BipartiteOracle, totals: np.ndarray):
        self.oracle = oracle
        self.m, self.n = oracle.shape
        self.totals = totals
        self.known = np.zeros((self.m, self.n), dtype=bool)
        self.residual = totals.copy()
        bits = max(1, log2_ceil(self.n))
        self.bit_masks = ((np.arange(self.n)[:, None] >> np.arange(bits)[None, :]) & 1).astype(bool)

    def raw(self, i: int, cols: np.ndarray) -> int:
        if not cols.any():
            return 0
        return self.oracle.row_product(i, cols)

    def unknown_in(self, i: int, cols: np.ndarray) -> int:
        value = self.raw(i, cols) - int(np.count_nonzero(self.known[i] & cols))
        if value < 0 or value > self.residual[i]:
            raise ContractViolationError(
                f"row {i}: product inconsistent with learned entries", {"value": value})
        return value

    def mark(self, i: int, j: int) -> None:
        if j >= self.n or self.known[i, j] or self.residual[i] <= 0:
            raise ContractViolationError(f"row {i}: decoded column {j} is not a fresh one")
        self.known[i, j] = True
        self.residual[i] -= 1

    def search_row(self, i: int) -> None:
        """Adaptive binary search over the row's unknown columns."""
        stack = [(np.flatnonzero(~self.known[i]), int(self.residual[i]))]
        while stack:
            cols, count = stack.pop()
            if count == 0:
                continue
            if count > cols.size:
                raise ContractViolationError(f"row {i}: more ones than candidate columns")
            if count == cols.size:
                for j in cols:
                    self.mark(i, int(j))
                continue
            low, high = cols[: cols.size // 2], cols[cols.size // 2:]
            mask = np.zeros(self.n, dtype=bool)
            mask[low] = True
            low_count = self.unknown_in(i, mask)
            stack.append((high, count - low_count))
            stack.append((low, low_count))

    def measure_group(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Unknown ones of each row inside `cols`, for rows known to hold 0 or 1 there."""
        known_counts = (self.known[rows] & cols).sum(axis=1).astype(np.int64)
        if not cols.any():
            return np.zeros(rows.size, dtype=bool)
        if signed_query_cost(rows.size) >= rows.size:
            values = np.array([self.unknown_in(int(i), cols) for i in rows], dtype=np.int64)
            if np.any(values > 1):
                raise ContractViolationError("singleton bucket holds more than one unknown one")
            return values == 1

        def weigh(signs: np.ndarray) -> int:
            total = 0
            for sign in (1, -1):
                chosen = signs == sign
                if chosen.any():
                    x = np.zeros(self.m, dtype=bool)
                    x[rows[chosen]] = True
                    total += sign * (self.oracle.product(x, cols) - int(known_counts[chosen].sum()))
            return total

        return identify_coins(rows.size, weigh)

    def hash_round(self, rows: np.ndarray, band: int, round_no: int) -> None:
        buckets = 1 if band == 0 else 2 ** (band + 2)
        if buckets == 1:
            assignment = np.zeros(self.n, dtype=np.int64)
            counts = np.ones((rows.size, 1), dtype=np.int64)
        else:
            rng = np.random.default_rng([HASH_SEED, self.n, buckets, round_no, band])
            assignment = rng.integers(0, buckets, size=self.n)
            counts = np.zeros((rows.size, buckets), dtype=np.int64)
            for r, i in enumerate(rows):
                for b in range(buckets - 1):
                    counts[r, b] = self.unknown_in(int(i), assignment == b)
                counts[r, -1] = self.residual[i] - counts[r, :-1].sum()
                if counts[r, -1] < 0:
                    raise ContractViolationError(f"row {i}: bucket counts exceed the residual")
        for b in range(buckets):
            single = rows[counts[:, b] == 1]
            if single.size == 0:
                continue
            in_bucket = assignment == b
            index = np.zeros(single.size, dtype=np.int64)
            for bit in range(self.bit_masks.shape[1]):
                hits = self.measure_group(single, in_bucket & self.bit_masks[:, bit])
                index |= hits.astype(np.int64) << bit
            for i, j in zip(single, index):
                if j >= self.n or assignment[j] != b:
                    raise ContractViolationError(f"row {i}: decoded column {j} outside bucket {b}")
                self.mark(int(i), int(j))

    def run(self, batch_min_rows: int, max_rounds: int) -> None:
        for round_no in range(max_rounds):
            alive = np.flatnonzero(self.residual > 0)
            if alive.size == 0:
                return
            bands = np.floor(np.log2(self.residual[alive])).astype(np.int64)
            for band in np.unique(bands):
                rows = alive[bands == band]
                if rows.size < batch_min_rows:
                    for i in rows:
                        self.search_row(int(i))
                else:
                    self.hash_round(rows, int(band), round_no)
        for i in np.flatnonzero(self.residual > 0):
            self.search_row(int(i))


def learn_bounded_matrix(oracle: BipartiteOracle, ell: int,
                         row_totals: Optional[Sequence[int]] = None,
                         batch_min_rows: int = BATCH_MIN_ROWS,
                         max_rounds: int = MAX_HASH_ROUNDS) -> np.ndarray:
    """Learn M exactly, assuming every row has at most `ell` ones.

    Args:
        oracle: Product access to M.
        ell: Row sparsity bound.
        row_totals: Known row sums; saves one product per row when given.

    Returns:
        The m-by-n Boolean matrix.

    Raises:
        ContractViolationError: A row exceeds `ell` ones or the products
            are inconsistent with any Boolean matrix.
    """
    if ell < 0:
        raise InvalidInputError(f"ell must be non-negative, got {ell}")
    m, n = oracle.shape
    if m == 0 or n == 0:
        return np.zeros((m, n), dtype=bool)
    if row_totals is None:
        everything = np.ones(n, dtype=bool)
        totals = np.array([oracle.row_product(i, everything) for i in range(m)], dtype=np.int64)
    else:
        totals = np.asarray(row_totals, dtype=np.int64)
        if totals.shape != (m,):
            raise InvalidInputError(f"row_totals must have length {m}")
    heavy = np.flatnonzero(totals > ell)
    if heavy.size:
        raise ContractViolationError(
            f"{heavy.size} rows exceed {ell} ones",
            {"row": int(heavy[0]), "ones": int(totals[heavy[0]])})
    learner = _RowLearner(oracle, totals)
    learner.run(batch_min_rows, max_rounds)
    if not np.array_equal(learner.known.sum(axis=1), totals):
        raise ContractViolationError("learned matrix does not match row totals")
    logger.debug(f"learned {m}x{n} matrix with {int(totals.sum())} ones")
    return learner.known


def learn_by_search(oracle: BipartiteOracle, ell: int) -> np.ndarray:
    """Per-row binary search only; a correctness reference for the batched learner."""
    return learn_bounded_matrix(oracle, ell, batch_min_rows=oracle.shape[0] + 1)


def dump_learned_block(view: BipartiteView, matrix: np.ndarray, path: Union[str, Path]) -> List[tuple]:
    """Write the learned block as a graph file over the parent vertex ids."""
    rows, cols = np.nonzero(matrix)
    edges = [(view.vertex_of_row(int(i)), view.vertex_of_col(int(j))) for i, j in zip(rows, cols)]
    n = view.oracle.n
    save_graph(SimpleGraph(n, edges), path)
    return edges
