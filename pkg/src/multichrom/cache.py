"""JSON file cache of solved multichromatic numbers.

File layout::

    {"entries": [{"n": 5, "k": 2, "kprime": 3, "lo": 8, "hi": 8,
                  "source": "solver", "ts": "2026-01-01T00:00:00+00:00"}, ...]}

Entries are kept sorted by (n, k, kprime).  Writes replace the whole file.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from .bounds import Reason, best_bounds
from .errors import DomainError

SOURCES = ("solver", "external-fact")


@dataclass(frozen=True)
class CacheEntry:
    n: int
    k: int
    kprime: int
    lo: int
    hi: int
    source: str
    ts: str

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.kprime)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def check_coherent(entry: CacheEntry) -> None:
    """Reject entries outside the [best lower bound, upper bound] sandwich."""
    if entry.source not in SOURCES:
        raise DomainError(f"unknown cache source {entry.source!r}")
    if entry.lo > entry.hi:
        raise DomainError(f"empty interval [{entry.lo}, {entry.hi}] for {entry.key}")
    rep = best_bounds(entry.n, entry.k, entry.kprime)
    if entry.lo < rep.best_lower or entry.hi > rep.upper.at(rep.q):
        raise DomainError(
            f"cached [{entry.lo}, {entry.hi}] for {entry.key} contradicts bounds "
            f"[{rep.best_lower}, {rep.upper.at(rep.q)}]"
        )


class ResultCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.entries: dict[tuple[int, int, int], CacheEntry] = {}

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ResultCache":
        cache = cls(path)
        if cache.path.exists():
            data = json.loads(cache.path.read_text())
            for raw in data.get("entries", []):
                entry = CacheEntry(**raw)
                check_coherent(entry)
                cache.entries[entry.key] = entry
        return cache

    def get(self, n: int, k: int, kprime: int) -> CacheEntry | None:
        return self.entries.get((n, k, kprime))

    def put(self, n: int, k: int, kprime: int, lo: int, hi: int, source: str = "solver",
            ts: str | None = None) -> CacheEntry:
        entry = CacheEntry(n, k, kprime, lo, hi, source, ts or _now())
        check_coherent(entry)
        old = self.entries.get(entry.key)
        # never replace an exact value by a wider interval
        if old is not None and old.exact and not entry.exact:
            return old
        self.entries[entry.key] = entry
        return entry

    def preload_external(self, n: int, k: int, kprime: int) -> CacheEntry:
        """Record a value settled outside this package (currently K(10,4))."""
        rep = best_bounds(n, k, kprime)
        if Reason.EXTERNAL_K10_4 not in rep.status.reasons:
            raise DomainError(f"no external fact covers chi_{kprime}(K({n},{k}))")
        return self.put(n, k, kprime, rep.conjectured, rep.conjectured, "external-fact")

    def dumps(self) -> str:
        entries = [asdict(self.entries[key]) for key in sorted(self.entries)]
        return json.dumps({"entries": entries}, indent=2) + "\n"

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.dumps())
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
