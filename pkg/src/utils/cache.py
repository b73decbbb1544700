"""Memo caches for repeated span-category computations.

Span composition, hom bases and orbit decompositions are pure functions of
hashable arguments and are recomputed many times by validators and coend
constructions, so their results are kept in bounded LRU caches.
"""

import logging
import threading
from collections import OrderedDict
from functools import wraps
from typing import Any, Callable, Dict, Generic, Hashable, Optional, Tuple, TypeVar

from .settings import get_cache_size

logger = logging.getLogger(__name__)

T = TypeVar('T')

_MISSING = object()


class LRUCache(Generic[T]):
    """Thread-safe LRU cache keyed by hashable values."""

    def __init__(self, max_size: int = 1000, name: str = "cache"):
        """Initialize LRU cache.

        Args:
            max_size: Maximum number of entries
            name: Label used in log messages and statistics
        """
        self.max_size = max_size
        self.name = name
        self._cache: "OrderedDict[Hashable, T]" = OrderedDict()
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    def get(self, key: Hashable, default: Any = None) -> Any:
        """Return the cached value, or ``default`` on a miss."""
        with self._lock:
            value = self._cache.get(key, _MISSING)
            if value is _MISSING:
                self._misses += 1
                return default
            self._cache.move_to_end(key)
            self._hits += 1
            return value

    def set(self, key: Hashable, value: T) -> None:
        with self._lock:
            if key not in self._cache and len(self._cache) >= self.max_size:
                oldest_key = next(iter(self._cache))
                logger.debug(f"{self.name}: evicting oldest entry")
                del self._cache[oldest_key]
            self._cache[key] = value
            self._cache.move_to_end(key)

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._cache

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)

    def delete(self, key: Hashable) -> None:
        with self._lock:
            self._cache.pop(key, None)

    def clear(self) -> None:
        """Clear all cache entries."""
        with self._lock:
            self._cache.clear()
            self._hits = 0
            self._misses = 0
            logger.info(f"{self.name} cleared")

    def stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        with self._lock:
            size, hits, misses = len(self._cache), self._hits, self._misses
        total = hits + misses
        hit_rate = hits / total if total > 0 else 0
        return {
            "name": self.name,
            "size": size,
            "max_size": self.max_size,
            "hits": hits,
            "misses": misses,
            "hit_rate": hit_rate,
            "utilization": size / self.max_size,
        }


def cached(cache: LRUCache, key_func: Optional[Callable[..., Hashable]] = None):
    """Decorator memoizing a pure function in ``cache``.

    Args:
        cache: Cache instance to use
        key_func: Builds the key from the call arguments (defaults to the
            positional arguments plus sorted keyword items)

    Usage:
        @cached(get_span_cache())
        def compose_components(a, b):
            ...
    """

    def default_key(*args, **kwargs) -> Tuple:
        return args + tuple(sorted(kwargs.items()))

    make_key = key_func or default_key

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            key = (func.__qualname__, make_key(*args, **kwargs))
            value = cache.get(key, _MISSING)
            if value is not _MISSING:
                return value
            result = func(*args, **kwargs)
            cache.set(key, result)
            return result

        return wrapper

    return decorator


# Global cache instances
_span_cache: LRUCache = LRUCache(max_size=get_cache_size(), name="span cache")
_gset_cache: LRUCache = LRUCache(max_size=get_cache_size(), name="gset cache")


def get_span_cache() -> LRUCache:
    """Cache for compositions, tensors and hom bases of spans."""
    return _span_cache


def get_gset_cache() -> LRUCache:
    """Cache for orbit decompositions and subgroup tables."""
    return _gset_cache


def clear_all_caches() -> None:
    _span_cache.clear()
    _gset_cache.clear()
