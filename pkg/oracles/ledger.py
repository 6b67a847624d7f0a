"""Per-category accounting of oracle calls and charged cost.

Supports:
- Call and unit counters for every query category
- Monte Carlo clocks: nested limits that raise once a section overspends
- Tags marking fallback or modeled paths
- Frozen snapshots and CSV export
"""

import csv
import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterator, List, Tuple, Union

from errors import InvalidInputError, QueryBudgetExceeded

logger = logging.getLogger(__name__)


class QueryCategory(str, Enum):
    """Ledger categories."""
    CUT = "cut"
    CROSS = "cross"
    BIP_PRODUCT = "bip_product"
    INDUCED_CUT = "induced_cut"
    MV = "mv"
    MDCP_MINDEG = "mdcp_mindeg"
    MDCP_NBH = "mdcp_nbh"
    MDCP_SPF = "mdcp_spf"
    MDCP_CUT = "mdcp_cut"
    MODELED = "modeled"


CUT_UNIT_CATEGORIES = (QueryCategory.CUT, QueryCategory.CROSS,
                       QueryCategory.BIP_PRODUCT, QueryCategory.INDUCED_CUT)
MDCP_CATEGORIES = (QueryCategory.MDCP_MINDEG, QueryCategory.MDCP_NBH,
                   QueryCategory.MDCP_SPF, QueryCategory.MDCP_CUT)
DERIVED_QUERY_UNITS = 3


def log2_ceil(x: float) -> int:
    """ceil(log2 x), at least 1."""
    return max(1, math.ceil(math.log2(x))) if x > 1 else 1


def modeled_mincut_units(blocks: int, exponent: int = 8) -> int:
    """Charge for an exact min cut standing in for an N log^exponent N procedure."""
    if blocks < 2:
        return 1
    return max(1, math.ceil(blocks * math.log2(blocks) ** exponent))


@dataclass(frozen=True)
class LedgerSnapshot:
    """Immutable copy of a ledger's counters."""
    calls: Dict[str, int]
    units: Dict[str, int]
    tags: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def total(self) -> int:
        return sum(self.units.values())

    @property
    def cut_units(self) -> int:
        return sum(self.units[c.value] for c in CUT_UNIT_CATEGORIES)

    @property
    def mdcp_units(self) -> int:
        return sum(self.units[c.value] for c in MDCP_CATEGORIES)

    @property
    def modeled_units(self) -> int:
        return self.units[QueryCategory.MODELED.value]

    def rows(self) -> List[Dict[str, Union[str, int]]]:
        return [{"category": c.value, "calls": self.calls[c.value],
                 "charged_units": self.units[c.value]} for c in QueryCategory]


class QueryLedger:
    """Exact per-category counters; monotone, single-owner."""

    def __init__(self):
        self.calls: Dict[QueryCategory, int] = {c: 0 for c in QueryCategory}
        self.units: Dict[QueryCategory, int] = {c: 0 for c in QueryCategory}
        self.tags: List[str] = []
        self._total = 0
        self._clocks: List[Tuple[int, int]] = []

    def charge(self, category: QueryCategory, units: int, calls: int = 1) -> None:
        """Record calls and units; raises if an active clock overspends."""
        if units < 0 or calls < 0:
            raise InvalidInputError("ledger charges must be non-negative")
        category = QueryCategory(category)
        self.calls[category] += calls
        self.units[category] += units
        self._total += units
        for start, limit in self._clocks:
            used = self._total - start
            if used > limit:
                raise QueryBudgetExceeded(limit, used)

    @contextmanager
    def clock(self, limit_units: int) -> Iterator[None]:
        """Section that may spend at most limit_units before raising."""
        self._clocks.append((self._total, int(limit_units)))
        try:
            yield
        finally:
            self._clocks.pop()

    def tag(self, name: str) -> None:
        if name not in self.tags:
            self.tags.append(name)
            logger.debug(f"ledger tagged: {name}")

    @property
    def total(self) -> int:
        return self._total

    @property
    def cut_units(self) -> int:
        return sum(self.units[c] for c in CUT_UNIT_CATEGORIES)

    @property
    def mdcp_units(self) -> int:
        return sum(self.units[c] for c in MDCP_CATEGORIES)

    @property
    def modeled_units(self) -> int:
        return self.units[QueryCategory.MODELED]

    def snapshot(self) -> LedgerSnapshot:
        return LedgerSnapshot(
            calls={c.value: self.calls[c] for c in QueryCategory},
            units={c.value: self.units[c] for c in QueryCategory},
            tags=tuple(self.tags),
        )

    def get_stats(self) -> Dict:
        """Non-zero categories plus totals, for logging."""
        stats = {c.value: {"calls": self.calls[c], "units": self.units[c]}
                 for c in QueryCategory if self.calls[c]}
        stats["total"] = self._total
        stats["cut_units"] = self.cut_units
        return stats

    def to_csv(self, path: Union[str, Path]) -> None:
        """Export (category, calls, charged_units) rows."""
        with open(path, "w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=["category", "calls", "charged_units"])
            writer.writeheader()
            writer.writerows(self.snapshot().rows())

    def __repr__(self) -> str:
        return f"QueryLedger(total={self._total}, cut_units={self.cut_units})"
