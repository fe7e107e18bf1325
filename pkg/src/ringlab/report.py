"""Machine-readable outcome of a verification suite or counting run."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def jsonable(obj):
    """Recursively convert numpy scalars/arrays and tuples into JSON types."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


@dataclass
class Check:
    name: str
    status: str
    counterexample: dict | None = None

    def to_dict(self):
        out = {"name": self.name, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = jsonable(self.counterexample)
        return out


@dataclass
class Report:
    suite: str
    spec: str
    k: int | None = None
    mode: str = "exhaustive"
    seed: int | None = None
    checks: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def add(self, name, ok, counterexample=None):
        """Record a check; a counterexample is only kept on failure."""
        ok = bool(ok)
        self.checks.append(Check(name, PASS if ok else FAIL, None if ok else counterexample))
        return ok

    def skip(self, name, reason):
        self.checks.append(Check(name, SKIPPED, {"reason": reason}))

    def extend(self, other, prefix=""):
        """Absorb another report's checks and counts, optionally namespaced."""
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.counterexample))
        for key, val in other.counts.items():
            self.counts[prefix + key] = val
        if other.mode == "sampled":
            self.mode = "sampled"
            if self.seed is None:
                self.seed = other.seed
        return self

    def status_of(self, name):
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self):
        out = {"suite": self.suite, "spec": self.spec, "k": self.k, "mode": self.mode}
        if self.seed is not None:
            out["seed"] = self.seed
        out["checks"] = [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)]
        out["counts"] = jsonable(self.counts)
        return out

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=False, **kw)
