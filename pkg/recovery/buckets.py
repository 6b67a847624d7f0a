"""Bucketed sparse recovery: k neighbours (or all of them) for every row.

Rows are grouped by degree into buckets [d*2^a, d*2^(a+1)). Inside a bucket
with degree floor r, each row is caught once a column sample of rate
min(2k/r, 1) leaves it between min(r, k) and 8k ones; the caught rows are
learned exactly on the sampled columns.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import ContractViolationError, Failure, InvalidInputError, QueryBudgetExceeded
from graphs import DirectedSubgraph
from oracles import DERIVED_QUERY_UNITS, BipartiteOracle, BipartiteView, QueryPrimitives, log2_ceil
from recovery.learning import learn_bounded_matrix

logger = logging.getLogger(__name__)

C_RECOVER = 8
MAX_SAMPLE_ATTEMPTS = 10_000


@dataclass
class AdjacencyLists:
    """Z[i]: learned column ids of row i; degrees[i]: its total ones."""
    lists: List[List[int]]
    degrees: np.ndarray

    def __getitem__(self, i: int) -> List[int]:
        return self.lists[i]

    def __len__(self) -> int:
        return len(self.lists)

    def min_size(self) -> int:
        return min((len(z) for z in self.lists), default=0)

    def pairs(self) -> Iterator[Tuple[int, int]]:
        for i, z in enumerate(self.lists):
            for j in z:
                yield (i, j)

    def is_valid_for(self, matrix: np.ndarray) -> bool:
        return all(bool(matrix[i, j]) for i, j in self.pairs())


@dataclass
class BucketPlan:
    """Rows grouped by degree: bucket a holds degrees in [floor*2^a, floor*2^(a+1))."""
    floor: int
    buckets: Dict[int, np.ndarray] = field(default_factory=dict)

    @classmethod
    def from_degrees(cls, degrees: Sequence[int]) -> "BucketPlan":
        degrees = np.asarray(degrees, dtype=np.int64)
        if degrees.size == 0:
            return cls(floor=0)
        if degrees.min() <= 0:
            raise InvalidInputError("every row needs at least one one",
                                    {"row": int(np.argmin(degrees))})
        d = int(degrees.min())
        index = np.array([(int(x) // d).bit_length() - 1 for x in degrees], dtype=np.int64)
        return cls(floor=d, buckets={int(a): np.flatnonzero(index == a) for a in np.unique(index)})

    def floor_of(self, a: int) -> int:
        return self.floor * 2 ** a

    def __iter__(self) -> Iterator[Tuple[int, np.ndarray]]:
        return iter(sorted(self.buckets.items()))


def learn_bucket(oracle: BipartiteOracle, r: int, k: int, rng: np.random.Generator,
                 known_totals: Optional[Sequence[int]] = None) -> AdjacencyLists:
    """Learn at least min(k, r) ones of every row, given each row has r..2r ones.

    Each list equals all ones of the row inside the sample that caught it.
    """
    m, n = oracle.shape
    if k < 10:
        logger.warning(f"learn_bucket called with k={k} < 10")
    if r <= 0:
        raise InvalidInputError(f"degree floor must be positive, got {r}")
    q = min(2 * k / r, 1.0)
    low, high = min(r, k), 8 * k
    lists: List[List[int]] = [[] for _ in range(m)]
    remaining = np.arange(m)
    attempts = 0
    while remaining.size:
        attempts += 1
        if attempts > MAX_SAMPLE_ATTEMPTS:
            raise ContractViolationError(f"{remaining.size} rows never fit the sampling window",
                                         {"r": r, "k": k})
        if q >= 1.0:
            sample = np.arange(n)
        else:
            sample = np.flatnonzero(rng.random(n) < q)
        mask = np.zeros(n, dtype=bool)
        mask[sample] = True
        if q >= 1.0 and known_totals is not None:
            ones = np.asarray(known_totals, dtype=np.int64)[remaining]
        else:
            ones = np.array([oracle.row_product(int(i), mask) for i in remaining], dtype=np.int64)
        caught = (ones >= low) & (ones <= high)
        if q >= 1.0 and not caught.any():
            raise ContractViolationError("rows violate the bucket degree window",
                                         {"rows": remaining[:5].tolist(), "r": r})
        if caught.any():
            rows = remaining[caught]
            learned = learn_bounded_matrix(oracle.restrict(rows, sample), high,
                                           row_totals=ones[caught])
            for idx, i in enumerate(rows):
                found = sample[np.flatnonzero(learned[idx])].tolist()
                if not low <= len(found) <= high:
                    raise ContractViolationError(
                        f"row {i}: accepted sample holds {len(found)} ones", {"low": low, "high": high})
                lists[int(i)] = found
        remaining = remaining[~caught]
    logger.debug(f"bucket r={r}: {m} rows caught after {attempts} samples (q={q:.3f})")
    return AdjacencyLists(lists=lists, degrees=np.array([len(z) for z in lists], dtype=np.int64))


def recover_k_from_all(oracle: BipartiteOracle, k: int, rng: np.random.Generator,
                       degrees: Optional[Sequence[int]] = None) -> AdjacencyLists:
    """At least min(k, d) valid ones per row, d the smallest row degree.

    Args:
        oracle: Product access to M.
        k: Target list size.
        rng: Randomness for column sampling.
        degrees: Row degrees if already known; otherwise one product per row.

    Raises:
        InvalidInputError: Some row of M is zero.
    """
    m, n = oracle.shape
    if degrees is None:
        everything = np.ones(n, dtype=bool)
        degrees = [oracle.row_product(i, everything) for i in range(m)]
    degrees = np.asarray(degrees, dtype=np.int64)
    plan = BucketPlan.from_degrees(degrees)
    lists: List[List[int]] = [[] for _ in range(m)]
    for a, rows in plan:
        part = learn_bucket(oracle.restrict(rows, np.arange(n)), plan.floor_of(a), k, rng,
                            known_totals=degrees[rows])
        for idx, i in enumerate(rows):
            lists[int(i)] = part[idx]
    return AdjacencyLists(lists=lists, degrees=degrees)


def expected_recover_queries(m: int, n: int, k: int) -> int:
    """m + C_RECOVER*k*m*ceil(log2 2n)/max(1, ceil(log2(2m/log2 n)))."""
    if m <= 0:
        return 0
    spread = max(1, math.ceil(math.log2(max(2.0, 2 * m / max(1, log2_ceil(n))))))
    return m + math.ceil(C_RECOVER * k * m * log2_ceil(2 * n) / spread)


def wc_recover_k_from_all(oracle: QueryPrimitives, s: Sequence[int], t: Sequence[int], k: int,
                          rng: np.random.Generator, clock_factor: float = 100.0,
                          min_degree: Optional[int] = None) -> Union[DirectedSubgraph, Failure]:
    """Clocked recovery of arcs from S into T.

    Runs under a clock of `clock_factor` times the expected cost and returns
    a Failure instead of any partial output when the clock runs out.

    Raises:
        ContractViolationError: A vertex of S has fewer than `min_degree`
            (or zero) neighbours in T.
    """
    s = np.asarray(s, dtype=np.int64)
    t = np.asarray(t, dtype=np.int64)
    view = BipartiteView(oracle, s, t)
    if s.size and s.size < t.size ** (1 / 3):
        logger.debug(f"|S|={s.size} below |T|^(1/3); recovery falls back to row search")
    limit = int(clock_factor * expected_recover_queries(int(s.size), int(t.size), k) * DERIVED_QUERY_UNITS)
    arcs = DirectedSubgraph(oracle.n)
    try:
        with oracle.ledger.clock(limit):
            everything = np.ones(t.size, dtype=bool)
            degrees = np.array([view.row_product(i, everything) for i in range(s.size)], dtype=np.int64)
            floor = 1 if min_degree is None else max(1, min_degree)
            short = np.flatnonzero(degrees < floor)
            if short.size:
                raise ContractViolationError(
                    f"{short.size} vertices of S have fewer than {floor} neighbours in T",
                    {"vertex": int(s[short[0]]), "degree": int(degrees[short[0]])})
            lists = recover_k_from_all(view, k, rng, degrees=degrees)
    except QueryBudgetExceeded as exc:
        logger.info(f"wc_recover clock ran out after {exc.used} of {exc.limit} units")
        return Failure("wc_recover", "query clock exceeded", {"limit": limit, "used": exc.used})
    for i, j in lists.pairs():
        arcs.add_arc(int(s[i]), int(t[j]))
    return arcs
