from caching.digest_cache import CacheRegistry, CacheStats, DigestCache, get_cache_registry

__all__ = ["CacheRegistry", "CacheStats", "DigestCache", "get_cache_registry"]
