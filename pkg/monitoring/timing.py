"""Logging setup and wall-clock timing of experiment stages.

Timings never reach CSV rows: rows must stay byte-identical across reruns,
so durations only go to the debug log and to the in-process registry.
"""

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from functools import wraps
from threading import Lock
from typing import Callable, Dict, List, Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def configure_logging(level: str = "INFO") -> None:
    """Configure the root logger once for CLI use."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT
    )


@dataclass(frozen=True)
class TimingEvent:
    """One timed call of an operation."""
    operation: str
    elapsed_ms: float
    slow: bool = False
    labels: Dict[str, str] = field(default_factory=dict)
    at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass(frozen=True)
class TimingSummary:
    count: int
    total_ms: float
    min_ms: float
    max_ms: float
    slow: int

    @property
    def mean_ms(self) -> float:
        return self.total_ms / self.count


class TimingRegistry:
    """Timing events grouped by operation; safe to share between worker threads."""

    def __init__(self):
        self._events: Dict[str, List[TimingEvent]] = {}
        self._lock = Lock()

    def record(self, event: TimingEvent) -> None:
        with self._lock:
            self._events.setdefault(event.operation, []).append(event)
        logger.debug(f"timing {event.to_json()}")

    def events(self, operation: str) -> List[TimingEvent]:
        with self._lock:
            return list(self._events.get(operation, ()))

    def summary(self, operation: str) -> Optional[TimingSummary]:
        """Totals for one operation, or None if it never ran."""
        events = self.events(operation)
        if not events:
            return None
        elapsed = [e.elapsed_ms for e in events]
        return TimingSummary(count=len(events), total_ms=sum(elapsed), min_ms=min(elapsed),
                             max_ms=max(elapsed), slow=sum(1 for e in events if e.slow))

    def operations(self) -> List[str]:
        with self._lock:
            return sorted(self._events)

    def reset(self) -> None:
        with self._lock:
            self._events.clear()


_registry: Optional[TimingRegistry] = None


def get_timing_registry() -> TimingRegistry:
    """Process-wide registry, created on first use."""
    global _registry
    if _registry is None:
        _registry = TimingRegistry()
    return _registry


def timed(operation: str, registry: Optional[TimingRegistry] = None,
          slow_ms: Optional[float] = None) -> Callable:
    """Decorator recording the duration of every call, failed calls included.

    Calls longer than `slow_ms` are flagged slow and logged at WARNING.
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def run(*args, **kwargs):
            started = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                elapsed_ms = (time.perf_counter() - started) * 1000
                slow = slow_ms is not None and elapsed_ms > slow_ms
                if slow:
                    logger.warning(f"{operation} took {elapsed_ms:.1f} ms (limit {slow_ms} ms)")
                target = registry if registry is not None else get_timing_registry()
                target.record(TimingEvent(operation=operation, elapsed_ms=elapsed_ms, slow=slow,
                                          labels={"function": func.__name__}))
        return run
    return decorator
