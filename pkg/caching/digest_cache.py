"""Memo tables for exact results keyed by graph digest.

The harness asks for the exact minimum cut of the same graph once for the
trial row and again for diagnostics and verification. Tables are bounded,
drop the least recently read entry first, and are shared by worker threads.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from functools import wraps
from threading import RLock
from typing import Any, Callable, Dict, Hashable, Optional

from errors import InvalidInputError

logger = logging.getLogger(__name__)

_ABSENT = object()


@dataclass(frozen=True)
class CacheStats:
    entries: int
    capacity: int
    hits: int
    misses: int

    @property
    def hit_rate(self) -> float:
        lookups = self.hits + self.misses
        return self.hits / lookups if lookups else 0.0


class DigestCache:
    """Bounded LRU memo table."""

    def __init__(self, name: str, capacity: int = 256):
        if capacity < 1:
            raise InvalidInputError(f"cache {name!r} needs capacity >= 1, got {capacity}")
        self.name = name
        self.capacity = capacity
        self.hits = 0
        self.misses = 0
        self._entries: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._guard = RLock()

    def lookup(self, key: Hashable, default: Any = None) -> Any:
        with self._guard:
            if key not in self._entries:
                self.misses += 1
                return default
            self.hits += 1
            self._entries.move_to_end(key)
            return self._entries[key]

    def store(self, key: Hashable, value: Any) -> None:
        with self._guard:
            self._entries[key] = value
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                evicted, _ = self._entries.popitem(last=False)
                logger.debug(f"{self.name}: evicted {str(evicted)[:16]}")

    def __contains__(self, key: Hashable) -> bool:
        with self._guard:
            return key in self._entries

    def __len__(self) -> int:
        with self._guard:
            return len(self._entries)

    def reset(self) -> None:
        """Drop every entry and zero the counters."""
        with self._guard:
            self._entries.clear()
            self.hits = self.misses = 0

    def stats(self) -> CacheStats:
        with self._guard:
            return CacheStats(entries=len(self._entries), capacity=self.capacity,
                              hits=self.hits, misses=self.misses)


class CacheRegistry:
    """One DigestCache per memoised function."""

    def __init__(self, capacity: int = 256):
        self.capacity = capacity
        self._tables: Dict[str, DigestCache] = {}
        self._guard = RLock()

    def table(self, name: str) -> DigestCache:
        with self._guard:
            if name not in self._tables:
                self._tables[name] = DigestCache(name, self.capacity)
            return self._tables[name]

    def memoize(self, key_fn: Callable[..., Hashable]) -> Callable:
        """Cache results under key_fn(*args, **kwargs); None is a cached value too."""
        def decorator(func: Callable) -> Callable:
            table = self.table(func.__qualname__)

            @wraps(func)
            def memoized(*args, **kwargs):
                key = key_fn(*args, **kwargs)
                value = table.lookup(key, _ABSENT)
                if value is _ABSENT:
                    value = func(*args, **kwargs)
                    table.store(key, value)
                return value

            memoized.table = table
            return memoized
        return decorator

    def stats(self) -> Dict[str, CacheStats]:
        with self._guard:
            tables = dict(self._tables)
        return {name: tables[name].stats() for name in sorted(tables)}


_registry: Optional[CacheRegistry] = None


def get_cache_registry() -> CacheRegistry:
    """Process-wide registry, created on first use."""
    global _registry
    if _registry is None:
        _registry = CacheRegistry()
    return _registry
