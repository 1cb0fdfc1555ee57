from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locmzv.combo import LinComb, bilinear
from locmzv.indices import (
    AdjointIndex,
    SeriesIndex,
    ShapeError,
    TwistMismatchError,
    format_index,
    index_of_word,
    parse_index,
    quasi_shuffle,
    quasi_shuffle_combo,
    word_of_index,
)
from locmzv.words import (
    E0,
    E0_INV,
    Letter,
    LevelMismatchError,
    ParseError,
    Word,
    all_words,
    alphabet,
    antipode,
    counit,
    deconcat,
    loc_deconcat,
    parse_word,
    shuffle,
    shuffle_combo,
    tensor_shuffle,
)


def w(text, N=1):
    return parse_word(text, N)


def test_shuffle_examples():
    assert shuffle(w("e0"), w("x0")) == {w("e0 x0"): 1, w("x0 e0"): 1}
    assert shuffle(w("x0"), w("x0")) == {w("x0 x0"): 2}
    assert shuffle(w("e0 x0"), w("x0")) == {w("e0 x0 x0"): 2, w("x0 e0 x0"): 1}


def test_shuffle_level_mismatch():
    with pytest.raises(LevelMismatchError):
        shuffle(w("x0", 1), w("x1", 2))


def _words(N, max_weight):
    return list(all_words(alphabet(N), max_weight, N))


@pytest.mark.parametrize("N", [1, 2])
def test_shuffle_commutative_associative(N):
    words = _words(N, 5)
    for u, v in product(words, repeat=2):
        if len(u) + len(v) <= 5:
            assert shuffle(u, v) == shuffle(v, u)
    small = _words(N, 3)
    for u, v, x in product(small, repeat=3):
        if len(u) + len(v) + len(x) > 5:
            continue
        left = shuffle_combo(shuffle(u, v), LinComb.single(x))
        right = shuffle_combo(LinComb.single(u), shuffle(v, x))
        assert left == right


def test_shuffle_weight_homogeneous():
    for u, v in product(_words(2, 2), repeat=2):
        assert all(len(t) == len(u) + len(v) for t in shuffle(u, v))


def test_deconcat_examples():
    empty = Word.empty()
    assert deconcat(empty) == {(empty, empty): 1}
    assert deconcat(w("e0 x0")) == {(w("e0 x0"), empty): 1, (w("e0"), w("x0")): 1, (empty, w("e0 x0")): 1}
    assert len(deconcat(w("x0 x0 e0"))) == 4


@pytest.mark.parametrize("N", [1, 2])
def test_deconcat_coassociative(N):
    for x in _words(N, 3):
        left = LinComb(
            ((a, b, c), k1 * k2) for (ab, c), k1 in deconcat(x).items() for (a, b), k2 in deconcat(ab).items()
        )
        right = LinComb(
            ((a, b, c), k1 * k2) for (a, bc), k1 in deconcat(x).items() for (b, c), k2 in deconcat(bc).items()
        )
        assert left == right


@pytest.mark.parametrize("N", [1, 2])
def test_hopf_compatibility(N):
    words = _words(N, 4)
    for u, v in product(words, repeat=2):
        if len(u) + len(v) > 4:
            continue
        left = LinComb()
        for t, c in shuffle(u, v).items():
            left = left + deconcat(t).scale(c)
        assert left == tensor_shuffle(deconcat(u), deconcat(v))


def test_antipode_examples():
    assert antipode(w("x0")) == {w("x0"): -1}
    assert antipode(w("e0 x0")) == {w("x0 e0"): 1}
    assert antipode(w("e0 e0 x0")) == {w("x0 e0 e0"): -1}


@pytest.mark.parametrize("N", [1, 2])
def test_antipode_axiom(N):
    for x in _words(N, 4):
        total = LinComb()
        for (a, b), c in deconcat(x).items():
            total = total + bilinear(shuffle, antipode(a), LinComb.single(b)).scale(c)
        expected = LinComb.single(Word.empty(N), counit(x))
        assert total == expected


def test_loc_deconcat_examples():
    assert loc_deconcat(0, w("e0 x0")) == deconcat(w("e0 x0"))
    empty = Word.empty()
    ei = lambda k: Word((E0_INV,) * k, 1)
    assert loc_deconcat(1, w("x0")) == {
        (Word((E0_INV, Letter(0)), 1), empty): 1,
        (empty, Word((E0_INV, Letter(0)), 1)): 1,
        (ei(1), w("x0")): 1,
        (w("x0"), ei(1)): 1,
    }
    assert loc_deconcat(2, empty) == {(ei(0), ei(2)): 1, (ei(1), ei(1)): 2, (ei(2), ei(0)): 1}


def test_word_grammar_roundtrip():
    for text in ("e0 x0", "e0' x1' e0", "1", "x2 x0 e0'"):
        x = parse_word(text, 3)
        assert parse_word(str(x), 3) == x
    assert str(parse_word("1")) == "1"


@pytest.mark.parametrize("text,pos", [("e0 y1", 3), ("x3", 0), ("e0x0", 0)])
def test_word_parse_errors(text, pos):
    with pytest.raises(ParseError) as info:
        parse_word(text, 3)
    assert info.value.position == pos


def test_index_grammar():
    a = parse_index("(2, -1 | 0, 1, 1)", 2)
    assert a == SeriesIndex((2, -1), (0, 1, 1), 2)
    assert parse_index(format_index(a), 2) == a
    assert parse_index("(|1)", 2) == SeriesIndex.empty(2, 1)
    with pytest.raises(ParseError):
        parse_index("(2|0)", 1)
    with pytest.raises(ParseError):
        parse_index("(2|0,3)", 2)
    with pytest.raises(ParseError):
        parse_index("(a|0,0)", 1)


def test_quasi_shuffle_examples():
    n, k = SeriesIndex.of(2), SeriesIndex.of(3)
    assert quasi_shuffle(n, k) == {SeriesIndex.of(2, 3): 1, SeriesIndex.of(3, 2): 1, SeriesIndex.of(5): 1}
    a, b = SeriesIndex.of(-1), SeriesIndex.of(2)
    assert quasi_shuffle(a, b) == {SeriesIndex.of(-1, 2): 1, SeriesIndex.of(2, -1): 1, SeriesIndex.of(1): 1}
    assert quasi_shuffle(SeriesIndex.empty(), n) == {n: 1}


def test_quasi_shuffle_level_mismatch():
    with pytest.raises(TwistMismatchError):
        quasi_shuffle(SeriesIndex.of(1), SeriesIndex.of(1, N=2))


def _indices(N, max_depth, max_abs):
    out = []
    for d in range(max_depth + 1):
        for ex in product(range(-max_abs, max_abs + 1), repeat=d):
            for tw in product(range(N), repeat=d + 1):
                out.append(SeriesIndex(ex, tw, N))
    return out


@pytest.mark.parametrize("N", [1, 2])
def test_quasi_shuffle_commutative_weight(N):
    ids = _indices(N, 2, 3)
    for i, a in enumerate(ids):
        for b in ids[i:]:
            prod = quasi_shuffle(a, b)
            assert prod == quasi_shuffle(b, a)
            assert all(c.weight == a.weight + b.weight for c in prod)


@pytest.mark.parametrize("N", [1, 2])
def test_quasi_shuffle_associative_depth_one(N):
    ids = _indices(N, 1, 3)
    for a, b, c in product(ids, repeat=3):
        left = quasi_shuffle_combo(quasi_shuffle(a, b), LinComb.single(c))
        right = quasi_shuffle_combo(LinComb.single(a), quasi_shuffle(b, c))
        assert left == right


@st.composite
def series_index(draw, N=2, max_depth=2):
    d = draw(st.integers(0, max_depth))
    ex = tuple(draw(st.integers(-3, 3)) for _ in range(d))
    tw = tuple(draw(st.integers(0, N - 1)) for _ in range(d + 1))
    return SeriesIndex(ex, tw, N)


@settings(max_examples=150, deadline=None)
@given(series_index(), series_index(), series_index())
def test_quasi_shuffle_associative(a, b, c):
    left = quasi_shuffle_combo(quasi_shuffle(a, b), LinComb.single(c))
    right = quasi_shuffle_combo(LinComb.single(a), quasi_shuffle(b, c))
    assert left == right


def test_word_of_index_examples():
    assert word_of_index(SeriesIndex.of(2)) == w("e0 x0")
    assert index_of_word(w("e0 e0 x0")) == SeriesIndex.of(3)
    # exponent 1 - 2 = -1 with two inverse letters
    assert word_of_index(SeriesIndex.of(-1)) == w("e0' e0' x0")


@settings(max_examples=200, deadline=None)
@given(series_index(N=3, max_depth=3))
def test_word_index_roundtrip(a):
    a = SeriesIndex(a.exponents, a.twists[:-1] + (0,), a.N)
    assert index_of_word(word_of_index(a)) == a


def test_index_of_word_shape_errors():
    with pytest.raises(ShapeError):
        index_of_word(w("x0 e0"))
    with pytest.raises(ShapeError):
        index_of_word(w("x0' x0"))


def test_adjoint_index_weight():
    idx = AdjointIndex(3, (-1, 2), (0, 0))
    assert idx.weight == 4
    assert idx.source() == SeriesIndex.of(-1, 2)
