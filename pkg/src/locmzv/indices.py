"""Series indices ((n_i); (xi^{j_i}))_d, adjoint indices, and the quasi-shuffle product.

A SeriesIndex of depth d carries exponents n_1..n_d (any sign, n_1 innermost)
and d+1 twists j_1..j_{d+1}.  The associated harmonic sum is

    h_m = sum_{0<m_1<...<m_d<m} prod_i xi^{(j_{i+1}-j_i) m_i} m_i^{-n_i} * xi^{-j_{d+1} m}.

Grammar: ``(n_1,...,n_d | j_1,...,j_{d+1})``; the empty index is ``( | j)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .combo import LinComb
from .words import E0, E0_INV, Letter, ParseError, Word


class TwistMismatchError(ValueError):
    pass


class ShapeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SeriesIndex:
    exponents: tuple[int, ...]
    twists: tuple[int, ...]
    N: int = 1

    def __post_init__(self):
        if len(self.twists) != len(self.exponents) + 1:
            raise ValueError("a depth-d index needs d+1 twists")
        object.__setattr__(self, "twists", tuple(j % self.N for j in self.twists))
        object.__setattr__(self, "exponents", tuple(int(n) for n in self.exponents))

    @classmethod
    def of(cls, *exponents: int, N: int = 1, twists=None) -> SeriesIndex:
        if twists is None:
            twists = (0,) * (len(exponents) + 1)
        return cls(tuple(exponents), tuple(twists), N)

    @classmethod
    def empty(cls, N: int = 1, twist: int = 0) -> SeriesIndex:
        return cls((), (twist,), N)

    @classmethod
    def from_letters(cls, letters, outer: int, N: int) -> SeriesIndex:
        """Build from (exponent, character) letters, innermost first, and the outer twist.

        The character of position i is j_{i+1} - j_i.
        """
        twists = [outer % N]
        for _, c in reversed(letters):
            twists.append((twists[-1] - c) % N)
        return cls(tuple(n for n, _ in letters), tuple(reversed(twists)), N)

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def outer(self) -> int:
        return self.twists[-1]

    def characters(self) -> tuple[int, ...]:
        t = self.twists
        return tuple((t[i + 1] - t[i]) % self.N for i in range(self.depth))

    def letters(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.exponents, self.characters()))

    def is_proper(self) -> bool:
        return all(n >= 1 for n in self.exponents)

    def __str__(self):
        return format_index(self)


def format_index(a: SeriesIndex) -> str:
    ns = ",".join(str(n) for n in a.exponents)
    js = ",".join(str(j) for j in a.twists)
    return f"({ns}|{js})"


_INDEX = re.compile(r"\s*\(\s*([-+\d\s,]*)\|\s*([\d\s,]*)\)\s*$")


def parse_index(text: str, N: int = 1) -> SeriesIndex:
    m = _INDEX.match(text)
    if m is None:
        pos = text.find("|")
        raise ParseError("expected '(n_1,...,n_d | j_1,...,j_{d+1})'", text, max(pos, 0))

    def ints(group: int) -> list[int]:
        body = m.group(group)
        if not body.strip():
            return []
        out = []
        offset = m.start(group)
        for part in body.split(","):
            try:
                out.append(int(part))
            except ValueError:
                raise ParseError("expected an integer", text, offset) from None
            offset += len(part) + 1
        return out

    ns, js = ints(1), ints(2)
    if len(js) != len(ns) + 1:
        raise ParseError(f"depth {len(ns)} needs {len(ns) + 1} twists, got {len(js)}", text, m.start(2))
    for j in js:
        if not 0 <= j < N:
            raise ParseError(f"twist {j} not reduced mod N={N}", text, m.start(2))
    return SeriesIndex(tuple(ns), tuple(js), N)


@dataclass(frozen=True, order=True)
class AdjointIndex:
    """(l; (n_i); (xi^{j_i}))_d.  ``j`` is the character of xi^{jm} selected at extraction."""

    l: int
    exponents: tuple[int, ...]
    twists: tuple[int, ...]
    N: int = 1
    j: int = 0

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return self.l + sum(self.exponents)

    def source(self, outer: int = 0) -> SeriesIndex:
        return SeriesIndex(self.exponents, tuple(self.twists) + (outer,), self.N)


# -- quasi-shuffle ---------------------------------------------------------


@lru_cache(maxsize=None)
def _stuffle_letters(a: tuple, b: tuple, N: int) -> tuple:
    # letters innermost first; recurse on the outermost letter
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    x, y = a[-1], b[-1]
    out: dict = {}
    for w, c in _stuffle_letters(a[:-1], b, N):
        out[w + (x,)] = out.get(w + (x,), 0) + c
    for w, c in _stuffle_letters(a, b[:-1], N):
        out[w + (y,)] = out.get(w + (y,), 0) + c
    z = (x[0] + y[0], (x[1] + y[1]) % N)
    for w, c in _stuffle_letters(a[:-1], b[:-1], N):
        out[w + (z,)] = out.get(w + (z,), 0) + c
    return tuple(out.items())


def quasi_shuffle(a: SeriesIndex, b: SeriesIndex) -> LinComb:
    """Localized quasi-shuffle: h_m(a) h_m(b) = sum_c coeff * h_m(c) for all m.

    Exponents of any sign are allowed.  The outer twists add.
    """
    if a.N != b.N:
        raise TwistMismatchError(f"level mismatch: {a.N} vs {b.N}")
    N = a.N
    outer = (a.outer + b.outer) % N
    return LinComb(
        (SeriesIndex.from_letters(w, outer, N), c)
        for w, c in _stuffle_letters(a.letters(), b.letters(), N)
    )


def quasi_shuffle_combo(a: LinComb, b: LinComb) -> LinComb:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            for k, c in quasi_shuffle(ka, kb).items():
                out[k] = out.get(k, 0) + ca * cb * c
    return LinComb(out)


# -- words <-> indices -----------------------------------------------------


def word_of_index(a: SeriesIndex) -> Word:
    """e_0^{n_d-1} x_{j_d} ... e_0^{n_1-1} x_{j_1}; n <= 0 gives (e_0')^{1-n}."""
    letters: list[Letter] = []
    for n, j in zip(reversed(a.exponents), reversed(a.twists[:-1])):
        letters += [E0] * (n - 1) if n >= 1 else [E0_INV] * (1 - n)
        letters.append(Letter(j))
    return Word(tuple(letters), a.N)


def index_of_word(w: Word, outer: int = 0) -> SeriesIndex:
    """Inverse of word_of_index.  Blocks e_0^a (e_0')^b x_j give exponent 1 + a - b."""
    if w.letters and (w.letters[-1].root is None or w.letters[-1].inv):
        raise ShapeError(f"word {w} must end with a non-inverse x letter")
    exps: list[int] = []
    roots: list[int] = []
    count = 0
    for a in w.letters:
        if a.root is None:
            count += -1 if a.inv else 1
        elif a.inv:
            raise ShapeError(f"word {w} contains inverse letter {a}")
        else:
            exps.append(1 + count)
            roots.append(a.root)
            count = 0
    return SeriesIndex(tuple(reversed(exps)), tuple(reversed(roots)) + (outer % w.N,), w.N)
