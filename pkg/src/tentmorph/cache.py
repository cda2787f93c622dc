"""Single-file JSON cache for expensive command results.

Entries are keyed by a SHA-256 of the command name, its parameters and the
package version, and hold the exact serialized output, so a hit can be
audited byte for byte against a fresh computation.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from . import __version__

ENV_VAR = "TENTMORPH_CACHE"


def cache_key(command: str, params: dict) -> str:
    payload = json.dumps(
        {"command": command, "params": params, "version": __version__},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass
class CacheEntry:
    command: str
    params: dict
    version: str
    value: str
    created_at: str


class ResultCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._entries: dict[str, dict] = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                self._entries = json.load(fh)

    def __len__(self) -> int:
        return len(self._entries)

    def keys(self) -> list[str]:
        return sorted(self._entries)

    def entry(self, key: str) -> CacheEntry:
        return CacheEntry(**self._entries[key])

    def get(self, command: str, params: dict) -> str | None:
        raw = self._entries.get(cache_key(command, params))
        return None if raw is None else raw["value"]

    def put(self, command: str, params: dict, value: str) -> None:
        self._entries[cache_key(command, params)] = {
            "command": command,
            "params": params,
            "version": __version__,
            "value": value,
            "created_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        self._flush()

    def get_or_compute(self, command: str, params: dict, compute: Callable[[], str]) -> str:
        hit = self.get(command, params)
        if hit is not None:
            return hit
        value = compute()
        self.put(command, params, value)
        return value

    def _flush(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self._entries, fh, sort_keys=True, indent=1)
        os.replace(tmp, self.path)

    def audit(
        self, recompute: Callable[[str, dict], str], sample: int = 20, seed: int = 0
    ) -> list[str]:
        """Recompute up to ``sample`` entries of the current version; return mismatching keys."""
        keys = [k for k in self.keys() if self._entries[k]["version"] == __version__]
        rng = random.Random(seed)
        chosen = rng.sample(keys, min(sample, len(keys)))
        bad = []
        for key in chosen:
            e = self.entry(key)
            if recompute(e.command, e.params) != e.value:
                bad.append(key)
        return bad


def resolve_cache_path(flag: str | None) -> str | None:
    return os.environ.get(ENV_VAR) or flag
