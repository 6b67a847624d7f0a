"""Signed weighing designs that identify a 0/1 coin vector from few sums.

Order k has 2^(k-1) weighings over (k+1)*2^(k-2) coins and is built as

    A_k = [[A, A, I], [A, -A, 0]]   with A = A_(k-1)

so top + bottom = 2*A*x1 + x3 and top - bottom = 2*A*x2 + x3. The parity of
either combination is x3, which peels the identity block and recurses.
"""

import logging
from functools import lru_cache
from typing import Callable

import numpy as np

from errors import ContractViolationError, InvalidInputError

logger = logging.getLogger(__name__)

MAX_ORDER = 11


def coins_of_order(k: int) -> int:
    if k < 1:
        raise InvalidInputError(f"weighing order must be >= 1, got {k}")
    return 1 if k == 1 else (k + 1) * 2 ** (k - 2)


def weighings_of_order(k: int) -> int:
    return 2 ** (k - 1)


@lru_cache(maxsize=None)
def weighing_matrix(k: int) -> np.ndarray:
    if k == 1:
        matrix = np.ones((1, 1), dtype=np.int64)
    else:
        a = weighing_matrix(k - 1)
        r = a.shape[0]
        top = np.hstack([a, a, np.eye(r, dtype=np.int64)])
        bottom = np.hstack([a, -a, np.zeros((r, r), dtype=np.int64)])
        matrix = np.vstack([top, bottom])
    matrix.setflags(write=False)
    return matrix


def order_for(count: int) -> int:
    """Smallest order whose design holds `count` coins."""
    for k in range(1, MAX_ORDER + 1):
        if coins_of_order(k) >= count:
            return k
    raise InvalidInputError(f"{count} coins exceed the largest design ({coins_of_order(MAX_ORDER)})")


@lru_cache(maxsize=None)
def signed_query_cost(count: int) -> int:
    """Number of unsigned sums needed to evaluate every weighing on `count` coins."""
    if count == 0:
        return 0
    design = weighing_matrix(order_for(count))[:, :count]
    return int(np.count_nonzero((design > 0).any(axis=1)) + np.count_nonzero((design < 0).any(axis=1)))


def decode(k: int, sums: np.ndarray) -> np.ndarray:
    sums = np.asarray(sums, dtype=np.int64)
    if k == 1:
        return sums.copy()
    half = weighings_of_order(k - 1)
    top, bottom = sums[:half], sums[half:]
    plus = top + bottom
    minus = top - bottom
    tail = np.mod(plus, 2)
    return np.concatenate([
        decode(k - 1, (plus - tail) // 2),
        decode(k - 1, (minus - tail) // 2),
        tail,
    ])


def identify_coins(count: int, weigh: Callable[[np.ndarray], int]) -> np.ndarray:
    """Recover a Boolean vector of length `count` through signed weighings.

    Args:
        count: Number of coins.
        weigh: Called with a signed row over the coins (entries -1/0/1);
            returns the row's inner product with the hidden vector.

    Returns:
        Boolean array of length `count`.

    Raises:
        ContractViolationError: The sums do not come from a 0/1 vector.
    """
    out = np.zeros(count, dtype=bool)
    step = coins_of_order(MAX_ORDER)
    for start in range(0, count, step):
        chunk = min(step, count - start)
        k = order_for(chunk)
        design = weighing_matrix(k)[:, :chunk]
        sums = np.array([weigh(_pad(row, start, count)) for row in design], dtype=np.int64)
        coins = decode(k, sums)
        if np.any(coins[chunk:] != 0) or np.any((coins[:chunk] != 0) & (coins[:chunk] != 1)):
            raise ContractViolationError("decoded coins are not a 0/1 vector",
                                         {"values": sorted(set(coins.tolist()))})
        out[start:start + chunk] = coins[:chunk].astype(bool)
    return out


def _pad(row: np.ndarray, start: int, count: int) -> np.ndarray:
    full = np.zeros(count, dtype=np.int64)
    full[start:start + row.size] = row
    return full
