"""Tests for caching utilities."""

import threading

import pytest

from src.utils.cache import LRUCache, cached, clear_all_caches, get_gset_cache, get_span_cache


@pytest.mark.unit
class TestLRUCache:
    """Tests for LRUCache."""

    def test_cache_set_and_get(self):
        """Test basic set and get operations."""
        cache = LRUCache(max_size=10)

        cache.set("key1", "value1")

        assert cache.get("key1") == "value1"

    def test_cache_miss(self):
        """Test that get returns the default for missing keys."""
        cache = LRUCache(max_size=10)

        assert cache.get("nonexistent") is None
        assert cache.get("nonexistent", 42) == 42

    def test_cache_lru_eviction(self):
        """Test that least recently used items are evicted."""
        cache = LRUCache(max_size=3)

        cache.set("key1", "value1")
        cache.set("key2", "value2")
        cache.set("key3", "value3")

        # Touch key1 so key2 becomes the oldest
        cache.get("key1")
        cache.set("key4", "value4")

        assert cache.get("key1") == "value1"
        assert cache.get("key3") == "value3"
        assert "key2" not in cache
        assert len(cache) == 3

    def test_cache_delete_and_clear(self):
        """Test that delete and clear remove entries."""
        cache = LRUCache(max_size=10)
        cache.set("key1", "value1")
        cache.set("key2", "value2")

        cache.delete("key1")
        assert "key1" not in cache

        cache.clear()
        assert len(cache) == 0

    def test_cache_stats(self):
        """Test that stats tracking works."""
        cache = LRUCache(max_size=10, name="test")
        cache.set("key1", "value1")

        cache.get("key1")
        cache.get("key1")
        cache.get("key2")

        stats = cache.stats()

        assert stats["name"] == "test"
        assert stats["hits"] == 2
        assert stats["misses"] == 1
        assert stats["hit_rate"] == 2 / 3
        assert stats["size"] == 1
        assert stats["max_size"] == 10

    def test_cached_none_results(self):
        """Test that None is cached like any other value."""
        cache = LRUCache(max_size=10)
        calls = []

        @cached(cache)
        def nothing(x):
            calls.append(x)
            return None

        assert nothing(1) is None
        assert nothing(1) is None
        assert calls == [1]

    def test_len_waits_for_the_lock(self):
        """Test that len() does not read the entries while another thread holds the lock."""
        cache = LRUCache(max_size=10)
        cache.set("key1", "value1")
        sizes = []

        with cache._lock:
            reader = threading.Thread(target=lambda: sizes.append(len(cache)))
            reader.start()
            reader.join(timeout=0.2)
            assert reader.is_alive()
            assert sizes == []
        reader.join()

        assert sizes == [1]

    def test_concurrent_writers_respect_capacity(self):
        """Test that size never exceeds max_size under concurrent writes."""
        cache = LRUCache(max_size=8)
        sizes = []

        def write(offset):
            for i in range(200):
                cache.set((offset, i), i)
                sizes.append(len(cache))

        threads = [threading.Thread(target=write, args=(n,)) for n in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert max(sizes) <= 8
        assert len(cache) == 8
        assert cache.stats()["size"] == 8


@pytest.mark.unit
class TestCachedDecorator:
    """Tests for the cached decorator."""

    def test_memoizes_by_arguments(self):
        """Test that repeated calls hit the cache."""
        cache = LRUCache(max_size=10)
        calls = []

        @cached(cache)
        def square(x):
            calls.append(x)
            return x * x

        assert square(3) == 9
        assert square(3) == 9
        assert square(4) == 16
        assert calls == [3, 4]

    def test_custom_key_function(self):
        """Test that key_func controls what counts as the same call."""
        cache = LRUCache(max_size=10)

        @cached(cache, key_func=lambda x, scale=1: x)
        def scaled(x, scale=1):
            return x * scale

        assert scaled(2, scale=5) == 10
        assert scaled(2, scale=7) == 10

    def test_functions_do_not_share_keys(self):
        """Test that two functions cached in one cache stay separate."""
        cache = LRUCache(max_size=10)

        @cached(cache)
        def double(x):
            return 2 * x

        @cached(cache)
        def triple(x):
            return 3 * x

        assert double(5) == 10
        assert triple(5) == 15


@pytest.mark.unit
class TestGlobalCaches:
    """Tests for the shared span and gset caches."""

    def test_clear_all_caches(self):
        """Test that clear_all_caches empties both caches."""
        get_span_cache().set("marker", 1)
        get_gset_cache().set("marker", 2)

        clear_all_caches()

        assert "marker" not in get_span_cache()
        assert "marker" not in get_gset_cache()
