"""
Golden script corpus.

Scripts are looked up in GND_CORPUS_DIR first, then in the corpus bundled
with the package.
"""
import logging
from functools import lru_cache
from pathlib import Path
from typing import List, Optional

from .config import Settings

logger = logging.getLogger(__name__)

SUFFIXES = (".gnd", ".hil")


class GoldenCorpus:
    def __init__(self, corpus_dir: Optional[str] = None):
        self.corpus_dir = Path(corpus_dir) if corpus_dir else None
        # Bundled corpus directory (shipped with package)
        self._bundled_dir = Path(__file__).parent / "corpus"

    def _candidates(self, name: str) -> List[Path]:
        names = [name] if name.endswith(SUFFIXES) else [name + s for s in SUFFIXES]
        dirs = [d for d in (self.corpus_dir, self._bundled_dir) if d is not None]
        return [d / n for d in dirs for n in names]

    def find(self, name: str) -> Optional[Path]:
        for path in self._candidates(name):
            if path.is_file():
                return path
        return None

    @lru_cache(maxsize=64)
    def load(self, name: str) -> str:
        """
        Text of a golden script, by file name with or without suffix.

        Raises:
            FileNotFoundError: no such script in either directory
        """
        for path in self._candidates(name):
            try:
                if path.is_file():
                    return path.read_text(encoding="utf-8")
            except (PermissionError, OSError) as e:
                logger.warning(f"Failed to read golden script {path}: {e}")
        raise FileNotFoundError(f"No golden script named {name!r}")

    def list_available(self) -> List[str]:
        """File names of all golden scripts."""
        found = set()
        for d in (self._bundled_dir, self.corpus_dir):
            if d is not None and d.is_dir():
                for suffix in SUFFIXES:
                    found.update(f.name for f in d.glob(f"*{suffix}"))
        return sorted(found)


@lru_cache(maxsize=1)
def get_corpus() -> GoldenCorpus:
    return GoldenCorpus(Settings.from_env().corpus_dir)
