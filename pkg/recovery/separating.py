"""Separating matrices: Bx differs for every pair of distinct x in a target set.

Only small instances can be checked, by hashing every image.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

import numpy as np

from errors import InvalidInputError, SetTooLargeError

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 2_000_000
SPARSE_ROW_CONSTANT = 4
_CHUNK = 65_536


@dataclass(frozen=True)
class TargetSet:
    """Either the full set {0..bound}^n or the sparse set {x in {0,1}^n : |x| <= bound}."""
    kind: Literal["full", "sparse"]
    n: int
    bound: int

    def __post_init__(self):
        if self.kind not in ("full", "sparse"):
            raise InvalidInputError(f"unknown target set kind {self.kind!r}")
        if self.n < 0 or self.bound < 0:
            raise InvalidInputError("target set needs n >= 0 and bound >= 0")

    @property
    def size(self) -> int:
        if self.kind == "full":
            return (self.bound + 1) ** self.n
        return sum(math.comb(self.n, i) for i in range(min(self.bound, self.n) + 1))

    def members(self) -> Iterator[np.ndarray]:
        """Yield the members as int64 row blocks of at most 65536 vectors."""
        if self.kind == "full":
            base = self.bound + 1
            total = self.size
            powers = base ** np.arange(self.n, dtype=np.int64)
            for start in range(0, total, _CHUNK):
                idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
                yield (idx[:, None] // powers[None, :]) % base
            return
        supports = itertools.chain.from_iterable(
            itertools.combinations(range(self.n), w) for w in range(min(self.bound, self.n) + 1))
        while True:
            batch = list(itertools.islice(supports, _CHUNK))
            if not batch:
                return
            block = np.zeros((len(batch), self.n), dtype=np.int64)
            for row, support in enumerate(batch):
                block[row, list(support)] = 1
            yield block


@dataclass(frozen=True)
class SeparatingMatrix:
    """A k-by-n Boolean matrix claimed to separate `target`."""
    matrix: np.ndarray
    target: TargetSet

    def __post_init__(self):
        if self.matrix.ndim != 2 or self.matrix.shape[1] != self.target.n:
            raise InvalidInputError(
                f"matrix shape {self.matrix.shape} does not match n={self.target.n}")

    @property
    def rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def cols(self) -> int:
        return int(self.matrix.shape[1])


def full_set_row_bound(n: int, d: int) -> int:
    """Row count sufficient for {0..d}^n: 8*ceil(log2(d+1))*n/log2(2n)."""
    if n <= 0:
        return 0
    return math.ceil(8 * math.ceil(math.log2(d + 1)) * n / math.log2(2 * n))


def sparse_set_row_bound(n: int, ell: int) -> int:
    """Row count used for the sparse set: 4*ell*log2(2n)/log2(2*ell)."""
    if n <= 0 or ell <= 0:
        return 0
    return math.ceil(SPARSE_ROW_CONSTANT * ell * math.log2(2 * n) / math.log2(2 * ell))


def random_separating_matrix(target: TargetSet, rng: np.random.Generator,
                             rows: Optional[int] = None) -> SeparatingMatrix:
    """Uniform random Boolean matrix with the row count for `target`."""
    if rows is None:
        rows = (full_set_row_bound(target.n, target.bound) if target.kind == "full"
                else sparse_set_row_bound(target.n, target.bound))
    matrix = rng.random((rows, target.n)) < 0.5
    return SeparatingMatrix(matrix=matrix, target=target)


def is_separating_bruteforce(candidate: SeparatingMatrix,
                             limit: int = ENUMERATION_LIMIT) -> bool:
    size = candidate.target.size
    if size > limit:
        raise SetTooLargeError(size, limit)
    b = candidate.matrix.astype(np.int64)
    seen = set()
    for block in candidate.target.members():
        images = np.ascontiguousarray(block @ b.T)
        for image in images:
            key = image.tobytes()
            if key in seen:
                return False
            seen.add(key)
    logger.debug(f"{candidate.rows}x{candidate.cols} matrix separates {size} members")
    return True
