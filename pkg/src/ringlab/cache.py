"""On-disk cache of materialized addition and multiplication tables.

Each ring is stored as one JSON file ``{spec, size, add, mul}`` named after a
digest of its canonical spec.  The directory defaults to ``~/.cache/ringlab``
and is overridden by the ``RINGLAB_CACHE`` environment variable.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

import numpy as np


def default_cache_dir():
    env = os.environ.get("RINGLAB_CACHE")
    return Path(env) if env else Path.home() / ".cache" / "ringlab"


class TableCache:
    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.hits = self.misses = 0

    def path(self, spec):
        digest = hashlib.sha256(spec.encode()).hexdigest()[:20]
        return self.directory / f"{digest}.json"

    def load(self, spec, size):
        """Cached ``(add, mul)`` tables, or ``None`` when absent or unusable."""
        path = self.path(spec)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            self.misses += 1
            return None
        if data.get("spec") != spec or data.get("size") != size:
            self.misses += 1
            return None
        add = np.array(data["add"], dtype=np.int64)
        mul = np.array(data["mul"], dtype=np.int64)
        ok = all(t.shape == (size, size) and t.min() >= 0 and t.max() < size for t in (add, mul))
        if not ok:
            self.misses += 1
            return None
        self.hits += 1
        return add, mul

    def store(self, spec, add, mul):
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(spec)
        tmp = path.with_suffix(".tmp")
        payload = {"spec": spec, "size": len(add), "add": add.tolist(), "mul": mul.tolist()}
        tmp.write_text(json.dumps(payload, separators=(",", ":")))
        tmp.replace(path)


__all__ = ["TableCache", "default_cache_dir"]
