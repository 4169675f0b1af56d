from math import comb

import pytest
from hypothesis import given, strategies as st

from fusscat.lincomb import LinComb
from fusscat.words import (
    evaluation,
    format_word,
    interleavings,
    lincomb_from_json,
    lincomb_to_json,
    parse_word,
    shift,
    shifted_shuffle,
    shuffle,
)
from oracles import shuffle_rec

short_words = st.lists(st.integers(1, 4), max_size=3).map(tuple)
words = st.lists(st.integers(1, 12), max_size=6).map(tuple)


def W(s):
    return parse_word(s)


def test_evaluation_examples():
    assert evaluation(W("212313")) == [2, 2, 2]
    assert evaluation(()) == []
    assert evaluation(W("11")) == [2]


def test_shift_examples():
    assert shift(W("21"), 2) == W("43")
    assert shift(W("11"), 1) == W("22")
    assert shift(W("2112"), 0) == W("2112")


def test_shuffle_examples():
    got = shuffle(W("12"), W("43"))
    assert got == LinComb(W(x) for x in ["1243", "1423", "1432", "4123", "4132", "4312"])
    assert shuffle(W("231"), ()) == LinComb.basis(W("231"))
    assert shuffle(W("1"), W("2")) == LinComb([W("12"), W("21")])


def test_shuffle_with_repeated_letters_counts_multiplicity():
    assert shuffle(W("1"), W("1")) == LinComb({W("11"): 2})


def test_shifted_shuffle_examples():
    assert shifted_shuffle(W("12"), W("21"), 2) == shuffle(W("12"), W("43"))
    expected = ["1122", "1212", "2112", "1221", "2121", "2211"]
    assert shifted_shuffle(W("11"), W("11"), 1) == LinComb(W(x) for x in expected)
    assert shifted_shuffle(W("1"), (), 1) == LinComb.basis(W("1"))


def test_shifted_shuffle_rejects_overlapping_shift():
    with pytest.raises(ValueError):
        shifted_shuffle(W("13"), W("1"), 2)


@given(short_words, short_words)
def test_shuffle_matches_recursive_definition(u, v):
    assert shuffle(u, v) == LinComb(dict(shuffle_rec(u, v)))


@given(short_words, short_words)
def test_shuffle_commutative(u, v):
    assert shuffle(u, v) == shuffle(v, u)


@given(short_words, short_words, short_words)
def test_shuffle_associative(u, v, w):
    def times(a, b):
        acc = LinComb()
        for x, cx in a.items():
            for y, cy in b.items():
                acc = acc + (cx * cy) * shuffle(x, y)
        return acc

    one = LinComb.basis
    assert times(times(one(u), one(v)), one(w)) == times(one(u), times(one(v), one(w)))


@given(words, words)
def test_shuffle_total_multiplicity(u, v):
    total = sum(c for _, c in shuffle(u, v).items())
    assert total == comb(len(u) + len(v), len(u))
    assert sum(1 for _ in interleavings(u, v)) == total


@given(words, words)
def test_shifted_shuffle_multiplicity_free(u, v):
    k = max(u, default=0)
    res = shifted_shuffle(u, v, k)
    assert all(c == 1 for _, c in res.items())
    assert len(res) == comb(len(u) + len(v), len(u))


@given(short_words, short_words)
def test_evaluation_adds_under_shuffle(u, v):
    eu, ev = evaluation(u), evaluation(v)
    n = max(len(eu), len(ev))
    want = [(eu[i] if i < len(eu) else 0) + (ev[i] if i < len(ev) else 0) for i in range(n)]
    for term in shuffle(u, v):
        assert evaluation(term) == want


@given(words)
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w


def test_format_uses_commas_above_nine():
    w = (9, 9, 7, 7, 8, 6, 6, 4, 3, 3, 2, 2, 4, 5, 1, 1, 5, 8)
    assert format_word(w) == "997786643322451158"
    assert format_word((10, 1)) == "10,1"
    assert format_word((12,)) == "12,"
    assert parse_word("12,") == (12,)
    assert parse_word("9977 8 66433224 5115 8") == w


@pytest.mark.parametrize("bad", ["0", "1,0", "12a", "-1"])
def test_parse_rejects_bad_words(bad):
    with pytest.raises(ValueError):
        parse_word(bad)


def test_lincomb_json_round_trip():
    lc = LinComb({W("21"): 3, W("12"): -1, (10, 2): 2})
    data = lincomb_to_json(lc)
    assert data[0] == {"word": "12", "coeff": "-1"}
    assert all(isinstance(d["coeff"], str) for d in data)
    assert lincomb_from_json(data) == lc
