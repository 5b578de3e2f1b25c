"""
Disk cache for enumerated edge sets.
Keys are content digests of canonical family documents.
"""
from functools import lru_cache
from pathlib import Path
from typing import Optional, Tuple, Union
import diskcache
import structlog

from config.settings import PROJECT_ROOT, get_settings

logger = structlog.get_logger()
settings = get_settings()


class EdgeCache:
    """Thin wrapper over diskcache that never lets a cache fault escape."""

    def __init__(self, directory: Union[str, Path], ttl: int):
        self._cache = diskcache.Cache(str(directory))
        self.ttl = ttl

    @staticmethod
    def _key(digest: str) -> str:
        return f"edges:{digest}"

    def get_edges(self, digest: str) -> Optional[Tuple[int, ...]]:
        """Return cached edge masks for a family digest, if present."""
        try:
            value = self._cache.get(self._key(digest))
        except Exception as e:
            logger.warning("cache_read_failed", digest=digest, error=str(e))
            return None
        if value is None:
            return None
        logger.debug("cache_hit", digest=digest, edges=len(value))
        return tuple(value)

    def cache_edges(self, digest: str, edges: Tuple[int, ...]) -> None:
        """Store edge masks under the family digest."""
        try:
            self._cache.set(self._key(digest), list(edges), expire=self.ttl)
        except Exception as e:
            logger.warning("cache_write_failed", digest=digest, error=str(e))

    def clear(self) -> None:
        self._cache.clear()

    def close(self) -> None:
        self._cache.close()


@lru_cache()
def get_cache() -> EdgeCache:
    """Get the process-wide edge cache rooted at settings.cache_dir."""
    directory = Path(settings.cache_dir)
    if not directory.is_absolute():
        directory = PROJECT_ROOT / directory
    return EdgeCache(directory, settings.cache_ttl)
