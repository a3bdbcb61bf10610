"""Append-only JSON-lines store for search results and verification reports."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Iterator, Optional

from . import __version__

DEFAULT_STORE = "abc_results.jsonl"
ENV_VAR = "ABC_RESULTS"

# run settings that never change a payload
_HASH_EXCLUDED = frozenset({"jobs", "out", "store"})


def default_store_path() -> Path:
    return Path(os.environ.get(ENV_VAR, DEFAULT_STORE))


def config_hash(config: dict) -> str:
    keep = {k: v for k, v in config.items() if k not in _HASH_EXCLUDED}
    blob = json.dumps(keep, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class ResultStore:
    def __init__(self, path: Optional[os.PathLike] = None):
        self.path = Path(path) if path is not None else default_store_path()

    def append(self, kind: str, payload: dict, config: dict, extra: Optional[dict] = None) -> dict:
        rec = {
            "type": kind,
            "version": __version__,
            "config_hash": config_hash(config),
            "payload": payload,
        }
        if extra:
            rec.update(extra)
        line = json.dumps(rec, sort_keys=True)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        return rec

    def records(self, kind: Optional[str] = None) -> Iterator[dict]:
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for ln in fh:
                ln = ln.strip()
                if not ln:
                    continue
                try:
                    rec = json.loads(ln)
                except json.JSONDecodeError:
                    continue  # a torn final line from an interrupted write
                if kind is None or rec.get("type") == kind:
                    yield rec

    def latest_search(self, n: int, method: str) -> Optional[dict]:
        found = None
        for rec in self.records("search"):
            p = rec["payload"]
            if p.get("n") == n and p.get("method") == method:
                found = rec
        return found
