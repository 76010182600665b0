"""Disk cache for sector spectra.

Spectra depend on (n, L, omega, alpha) only; the inverse temperature enters
at reduction time, so one cache serves every beta scan.  One JSON document
per sector, addressed by the SHA-256 of a canonical parameter string, with a
version field for invalidation.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Iterator

import numpy as np

CACHE_VERSION = 1
CACHE_ENV_VAR = "SYMTHERM_CACHE_DIR"
DEFAULT_CACHE_DIR = ".symtherm-cache"


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV_VAR, DEFAULT_CACHE_DIR))


def _canonical_key(n: int, two_l: int, omega: float, alpha: float) -> str:
    return f"n={n};two_l={two_l};omega={float(omega)!r};alpha={float(alpha)!r}"


class SpectraCache:
    """Memoizing store of sector eigenvalue lists, in memory and on disk."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else None
        self._memory: dict[str, np.ndarray] = {}

    def _path(self, digest: str) -> Path:
        assert self.directory is not None
        return self.directory / f"{digest}.json"

    def get(self, n: int, two_l: int, omega: float, alpha: float) -> np.ndarray | None:
        key = _canonical_key(n, two_l, omega, alpha)
        hit = self._memory.get(key)
        if hit is not None:
            return hit
        if self.directory is None:
            return None
        digest = hashlib.sha256(key.encode()).hexdigest()
        path = self._path(digest)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if doc.get("version") != CACHE_VERSION or doc.get("key") != key:
            return None
        eig = np.asarray(doc["eigenvalues"], dtype=float)
        self._memory[key] = eig
        return eig

    def put(
        self, n: int, two_l: int, omega: float, alpha: float, eigenvalues: np.ndarray
    ) -> None:
        key = _canonical_key(n, two_l, omega, alpha)
        eig = np.asarray(eigenvalues, dtype=float)
        self._memory[key] = eig
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        digest = hashlib.sha256(key.encode()).hexdigest()
        doc = {
            "version": CACHE_VERSION,
            "key": key,
            "n": n,
            "two_l": two_l,
            "omega": float(omega),
            "alpha": float(alpha),
            "eigenvalues": [float(v) for v in eig],
        }
        tmp = self._path(digest).with_suffix(".tmp")
        tmp.write_text(json.dumps(doc))
        tmp.replace(self._path(digest))

    def entries(self) -> Iterator[dict]:
        """Metadata of every valid on-disk record (eigenvalue lists omitted)."""
        if self.directory is None or not self.directory.exists():
            return
        for path in sorted(self.directory.glob("*.json")):
            try:
                doc = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError):
                continue
            if doc.get("version") != CACHE_VERSION:
                continue
            yield {
                "file": path.name,
                "n": doc.get("n"),
                "two_l": doc.get("two_l"),
                "omega": doc.get("omega"),
                "alpha": doc.get("alpha"),
                "count": len(doc.get("eigenvalues", [])),
            }

    def clear(self) -> int:
        """Remove all on-disk records; returns the number of files deleted."""
        self._memory.clear()
        if self.directory is None or not self.directory.exists():
            return 0
        removed = 0
        for path in self.directory.glob("*.json"):
            path.unlink()
            removed += 1
        return removed
