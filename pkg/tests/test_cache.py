"""Disk cache for edge sets."""
from data.cache import EdgeCache
from data.documents import family_digest
import analysis.enumeration as enumeration


def test_round_trip(tmp_path):
    cache = EdgeCache(tmp_path, 60)
    cache.cache_edges("abc", (0, 1, 3))
    assert cache.get_edges("abc") == (0, 1, 3)
    assert cache.get_edges("missing") is None
    cache.close()


def test_enumeration_fills_cache(tmp_path, monkeypatch, convex_quad):
    cache = EdgeCache(tmp_path, 60)
    monkeypatch.setattr(enumeration.settings, "cache_enabled", True)
    monkeypatch.setattr(enumeration, "get_cache", lambda: cache)

    edges = enumeration.enumerate_realized(convex_quad)
    assert cache.get_edges(family_digest(convex_quad)) == edges.edges
    assert enumeration.enumerate_realized(convex_quad) == edges
    cache.close()
