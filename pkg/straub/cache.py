"""
On-disk cache of computed Straub polynomials in the straub-poly v1 text format.
"""
import logging
import os
from pathlib import Path
from typing import Optional, Union

from config import settings
from straub.bipoly import QPoly
from straub.errors import CacheCorruptionError

logger = logging.getLogger(__name__)


class PolyCache:
    """One file per n; a hit is byte-identical to what a recomputation would write."""

    def __init__(self, directory: Union[str, Path, None] = None):
        """
        Args:
            directory: cache directory (default settings.CACHE_DIR), created if absent
        """
        self.directory = Path(directory) if directory is not None else settings.CACHE_DIR
        self.directory.mkdir(parents=True, exist_ok=True)

    def path(self, n: int) -> Path:
        return self.directory / f"straub_{n:03d}.txt"

    def load(self, n: int) -> Optional[QPoly]:
        """Cached S_n, or None on a miss or a corrupted entry (which is removed)."""
        path = self.path(n)
        if not path.exists():
            logger.debug("cache miss for S_%d", n)
            return None
        try:
            stored_n, poly = QPoly.loads(path.read_text(encoding="utf-8"))
            if stored_n != n:
                raise CacheCorruptionError(f"{path.name} holds n={stored_n}")
        except (CacheCorruptionError, UnicodeDecodeError) as exc:
            logger.warning("discarding corrupted cache entry %s: %s", path, exc)
            path.unlink(missing_ok=True)
            return None
        logger.debug("cache hit for S_%d", n)
        return poly

    def store(self, n: int, poly: QPoly) -> Path:
        """
        Write S_n and re-read it to make sure the file parses back to the same value.

        Raises:
            CacheCorruptionError: when the written file does not round-trip
        """
        path = self.path(n)
        text = poly.dumps(n)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
        stored_n, reread = QPoly.loads(path.read_text(encoding="utf-8"))
        if stored_n != n or reread != poly:
            raise CacheCorruptionError(f"{path} did not round-trip")
        return path

    def clear(self) -> None:
        for path in self.directory.glob("straub_*.txt"):
            path.unlink()
