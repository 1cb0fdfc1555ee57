"""Finite formal linear combinations with exact coefficients."""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping


class LinComb(Mapping):
    """Immutable-by-convention mapping key -> nonzero coefficient."""

    __slots__ = ("_d",)

    def __init__(self, items: Mapping | Iterable | None = None):
        d: dict = {}
        if items is not None:
            pairs = items.items() if isinstance(items, Mapping) else items
            for k, c in pairs:
                if k in d:
                    d[k] = d[k] + c
                else:
                    d[k] = c
        self._d = {k: c for k, c in d.items() if c != 0}

    @classmethod
    def single(cls, key: Hashable, coeff=1) -> LinComb:
        return cls([(key, coeff)])

    def __getitem__(self, key):
        return self._d[key]

    def get(self, key, default=0):
        return self._d.get(key, default)

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __add__(self, other: LinComb) -> LinComb:
        return LinComb(list(self._d.items()) + list(other.items()))

    def __sub__(self, other: LinComb) -> LinComb:
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> LinComb:
        return LinComb((k, v * c) for k, v in self._d.items())

    def map_keys(self, f) -> LinComb:
        return LinComb((f(k), v) for k, v in self._d.items())

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == LinComb(other)._d
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __repr__(self):
        body = " + ".join(f"{v}*{k}" for k, v in sorted(self._d.items(), key=lambda kv: str(kv[0])))
        return f"LinComb({body or '0'})"


def bilinear(f, a: LinComb, b: LinComb) -> LinComb:
    """Extend f(key_a, key_b) -> LinComb bilinearly."""
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            for k, c in f(ka, kb).items():
                out[k] = out.get(k, 0) + ca * cb * c
    return LinComb(out)
