"""Result of one connectivity run."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from errors import Failure, is_failure
from graphs import SimpleGraph
from graphs.simple_graph import Edge
from oracles import LedgerSnapshot


@dataclass(frozen=True)
class Diagnostics:
    """Ground truth supplied by the harness; never read by the algorithms' decisions."""
    graph: SimpleGraph
    cut_edges: List[Edge]


@dataclass
class EcOutcome:
    """Value (or FAIL), the ledger at the end, the branch taken and run statistics."""
    value: Union[int, Failure]
    ledger: LedgerSnapshot
    branch: str
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return is_failure(self.value)

    def value_or_none(self) -> Optional[int]:
        return None if self.failed else int(self.value)
