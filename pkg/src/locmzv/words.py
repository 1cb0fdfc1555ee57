"""Words over e_0, e_{xi^j} and their inverses; shuffle Hopf algebra operations.

Words are stored leftmost letter first.  The rightmost letter is the innermost
(first integrated) one.

Text grammar: whitespace separated tokens ``e0``, ``e0'``, ``x<j>``, ``x<j>'``
with ``x<j>`` standing for e_{xi^j}.  The empty word is written ``1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .combo import LinComb, bilinear


class LevelMismatchError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True, order=True)
class Letter:
    """e_0 (``root is None``) or e_{xi^root}; ``inv`` marks the formal inverse."""

    root: int | None
    inv: bool = False

    def __str__(self):
        base = "e0" if self.root is None else f"x{self.root}"
        return base + ("'" if self.inv else "")

    @property
    def puncture(self) -> int | None:
        return self.root


E0 = Letter(None)
E0_INV = Letter(None, True)


def x(j: int, N: int = 1, inv: bool = False) -> Letter:
    return Letter(j % N, inv)


@dataclass(frozen=True, order=True)
class Word:
    letters: tuple[Letter, ...]
    N: int = 1

    def __post_init__(self):
        for a in self.letters:
            if a.root is not None and not 0 <= a.root < self.N:
                raise ValueError(f"letter {a} not reduced mod N={self.N}")

    @classmethod
    def empty(cls, N: int = 1) -> Word:
        return cls((), N)

    def __len__(self):
        return len(self.letters)

    @property
    def weight(self) -> int:
        return len(self.letters)

    def is_proper(self) -> bool:
        return not any(a.inv for a in self.letters)

    def __add__(self, other: Word) -> Word:
        _same_level(self, other)
        return Word(self.letters + other.letters, self.N)

    def __str__(self):
        return " ".join(str(a) for a in self.letters) if self.letters else "1"

    def __repr__(self):
        return f"Word({str(self)!r}, N={self.N})"


def _same_level(*words: Word) -> int:
    levels = {w.N for w in words}
    if len(levels) != 1:
        raise LevelMismatchError(f"words of different levels: {sorted(levels)}")
    return levels.pop()


_TOKEN = re.compile(r"e0'?|x(\d+)'?|1")


def parse_word(text: str, N: int = 1) -> Word:
    letters = []
    pos = 0
    n = len(text)
    saw_one = False
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or (m.end() < n and not text[m.end()].isspace()):
            raise ParseError("unexpected token", text, pos)
        tok = m.group(0)
        inv = tok.endswith("'")
        if tok == "1":
            saw_one = True
        elif tok.startswith("e0"):
            letters.append(Letter(None, inv))
        else:
            j = int(m.group(1))
            if j >= N:
                raise ParseError(f"root index {j} not reduced mod N={N}", text, pos)
            letters.append(Letter(j, inv))
        pos = m.end()
    if saw_one and letters:
        raise ParseError("'1' denotes the empty word and cannot be combined", text, 0)
    return Word(tuple(letters), N)


def format_word(w: Word) -> str:
    return str(w)


# -- shuffle Hopf algebra ------------------------------------------------


@lru_cache(maxsize=None)
def _shuffle_letters(u: tuple, v: tuple) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict = {}
    for w, c in _shuffle_letters(u[1:], v):
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _shuffle_letters(u, v[1:]):
        key = (v[0],) + w
        out[key] = out.get(key, 0) + c
    return tuple(out.items())


def shuffle(u: Word, v: Word) -> LinComb:
    """Shuffle product of two words."""
    N = _same_level(u, v)
    return LinComb((Word(w, N), c) for w, c in _shuffle_letters(u.letters, v.letters))


def shuffle_combo(a: LinComb, b: LinComb) -> LinComb:
    return bilinear(shuffle, a, b)


def deconcat(w: Word) -> LinComb:
    """Deconcatenation coproduct: sum of w1 (x) w2 over w = w1 w2."""
    n = len(w.letters)
    return LinComb(
        ((Word(w.letters[:k], w.N), Word(w.letters[k:], w.N)), 1) for k in range(n + 1)
    )


def counit(w: Word) -> int:
    return 1 if not w.letters else 0


def antipode(w: Word) -> LinComb:
    return LinComb.single(Word(tuple(reversed(w.letters)), w.N), (-1) ** len(w.letters))


def tensor_shuffle(a: LinComb, b: LinComb) -> LinComb:
    """Product on the tensor square: (u1 (x) u2)(v1 (x) v2) = (u1 sh v1) (x) (u2 sh v2)."""

    def mul(x, y):
        left = shuffle(x[0], y[0])
        right = shuffle(x[1], y[1])
        return LinComb(((l, r), cl * cr) for l, cl in left.items() for r, cr in right.items())

    return bilinear(mul, a, b)


def loc_deconcat(l: int, w: Word, puncture: int | None = None) -> LinComb:
    """Coproduct of e_z^{-l} w with z the given puncture (None for 0).

    Sum over w = w1 w2 and m = 0..l of C(l, m) e_z^{-m} w1 (x) e_z^{-(l-m)} w2.
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    if puncture is not None:
        puncture %= w.N
    inv = Letter(puncture, True)
    out = []
    for (w1, w2), _ in deconcat(w).items():
        for m in range(l + 1):
            left = Word((inv,) * m + w1.letters, w.N)
            right = Word((inv,) * (l - m) + w2.letters, w.N)
            out.append(((left, right), comb(l, m)))
    return LinComb(out)


def all_words(alphabet: list[Letter], max_weight: int, N: int, min_weight: int = 0):
    """Every word over ``alphabet`` with weight in [min_weight, max_weight]."""
    layer = [()]
    for k in range(max_weight + 1):
        if k >= min_weight:
            for t in layer:
                yield Word(t, N)
        layer = [t + (a,) for t in layer for a in alphabet]


def alphabet(N: int, localized: bool = False) -> list[Letter]:
    base = [E0] + [Letter(j) for j in range(N)]
    if localized:
        base += [E0_INV] + [Letter(j, True) for j in range(N)]
    return base
