"""On-disk memo of per-block Koszul homology, one JSON record per line."""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from filelock import FileLock

CACHE_FILE = "blocks.jsonl"


def _key(record: dict) -> str:
    k = {name: record[name] for name in sorted(record)
         if name not in ("dims", "rank_in", "rank_out")}
    return json.dumps(k, sort_keys=True, separators=(",", ":"))


class BlockCache:
    """Insert-or-get store of block homology records.

    Records look like ``{algebra, a, b (or e), p, q, bidegree, dims, rank_in,
    rank_out, field}``.  Appends go through a file lock, so several processes
    may share a directory; within a process a mutex guards the index.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.path = self.directory / CACHE_FILE
        self._lock = FileLock(str(self.path) + ".lock")
        self._mutex = threading.Lock()
        self._index: dict[str, dict] = {}
        self._offset = 0
        self._refresh()

    def _refresh(self):
        if not self.path.exists():
            self._offset = 0
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            fh.seek(self._offset)
            for line in fh:
                if not line.endswith("\n"):
                    break
                rec = json.loads(line)
                self._index.setdefault(_key(rec), rec)
                self._offset += len(line.encode("utf-8"))

    def get(self, query: dict) -> dict | None:
        with self._mutex:
            return self._index.get(_key(query))

    def put(self, record: dict) -> dict:
        """Store ``record`` unless an equal key exists; return the stored record."""
        key = _key(record)
        with self._mutex, self._lock:
            self._refresh()
            if key in self._index:
                return self._index[key]
            line = json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n"
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)
            self._offset += len(line.encode("utf-8"))
            self._index[key] = record
            return record

    def __len__(self):
        with self._mutex:
            return len(self._index)

    def stats(self) -> dict:
        size = self.path.stat().st_size if self.path.exists() else 0
        return {"directory": str(self.directory), "records": len(self), "bytes": size}

    def clear(self) -> int:
        with self._mutex, self._lock:
            n = len(self._index)
            if self.path.exists():
                self.path.unlink()
            self._index.clear()
            self._offset = 0
            return n


def cache_from_env(explicit: str | None = None) -> BlockCache | None:
    """``BETTI_CACHE_DIR`` wins over an explicit directory; no cache otherwise."""
    directory = os.environ.get("BETTI_CACHE_DIR") or explicit
    return BlockCache(directory) if directory else None
