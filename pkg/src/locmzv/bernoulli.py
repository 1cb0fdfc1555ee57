"""Bernoulli numbers with a persistent on-disk cache.

Convention: B_1 = -1/2, so that sum_{x=0}^{m-1} x^l is reproduced exactly by
the Faulhaber polynomial.
"""
from __future__ import annotations

import json
import os
import tempfile
import threading
from fractions import Fraction
from math import comb
from pathlib import Path

CACHE_ENV = "LOCMZV_CACHE_DIR"
CACHE_FILE = "bernoulli.json"

_lock = threading.Lock()
_table: list[Fraction] = [Fraction(1)]
_loaded_from: Path | None = None


def cache_dir() -> Path | None:
    """Directory of the persistent cache, or None when persistence is off."""
    value = os.environ.get(CACHE_ENV)
    if value is None:
        return None
    return Path(value)


def _load(path: Path) -> None:
    global _table
    try:
        raw = json.loads(path.read_text())
    except (OSError, ValueError):
        return
    values = {}
    for key, text in raw.items():
        values[int(key)] = Fraction(text)
    n = 0
    loaded = []
    while n in values:
        loaded.append(values[n])
        n += 1
    if len(loaded) > len(_table):
        _table = loaded


def _store(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {str(i): f"{b.numerator}/{b.denominator}" for i, b in enumerate(_table)}
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".bernoulli", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def _extend(n: int) -> None:
    # sum_{k=0}^{j} C(j+1, k) B_k = 0 for j >= 1
    for j in range(len(_table), n + 1):
        s = sum(comb(j + 1, k) * _table[k] for k in range(j))
        _table.append(-s / (j + 1))


def bernoulli(l: int) -> Fraction:
    """Return B_l (B_1 = -1/2)."""
    global _loaded_from
    if l < 0:
        raise ValueError("Bernoulli index must be non-negative")
    if l < len(_table):
        return _table[l]
    with _lock:
        directory = cache_dir()
        path = directory / CACHE_FILE if directory is not None else None
        if path is not None and _loaded_from != path:
            _load(path)
            _loaded_from = path
        if l >= len(_table):
            _extend(l)
            if path is not None:
                _store(path)
        return _table[l]


def clear_memory_cache() -> None:
    """Drop in-memory values (the file cache is untouched)."""
    global _table, _loaded_from
    with _lock:
        _table = [Fraction(1)]
        _loaded_from = None
