import pytest
from hypothesis import given, strategies as st

from omegafrag.words import Alphabet, UPWord, format_word, infinity_letters, parse_word


@pytest.mark.parametrize(
    "prefix,period,letters",
    [("ab", "cb", {"b", "c"}), ("", "a", {"a"}), ("c", "ab", {"a", "b"})],
)
def test_letters_at_infinity(prefix, period, letters):
    assert infinity_letters(UPWord(prefix, period)) == frozenset(letters)


def test_normal_form_identifies_equal_words():
    assert UPWord("ab", "ab") == UPWord("", "ab")
    assert UPWord("a", "ba") == UPWord("", "ab")
    assert UPWord("", "abab") == UPWord("", "ab")
    assert UPWord("c", "ab") != UPWord("", "ab")


def test_empty_period_rejected():
    with pytest.raises(ValueError):
        UPWord("a", "")


@pytest.mark.parametrize(
    "text,expected",
    [("1", ""), ("abc", "abc"), ("a(bc)^w", UPWord("a", "bc")), ("ab^w", UPWord("a", "b")), ("1(ab)^w", UPWord("", "ab"))],
)
def test_parse_word(text, expected):
    assert parse_word(text) == expected


def test_alphabet_subsets_cover_powerset():
    subsets = list(Alphabet("abc").subsets())
    assert len(subsets) == 8
    assert len(set(subsets)) == 8


@given(st.text("abc", max_size=4), st.text("abc", min_size=1, max_size=3), st.integers(0, 3))
def test_unroll_denotes_same_word(u, v, k):
    w = UPWord(u, v)
    assert w.unroll(k) == w
    assert w.take(20) == (u + v * 20)[:20]


@given(st.text("abc", max_size=4), st.text("abc", min_size=1, max_size=3))
def test_format_parse_roundtrip(u, v):
    w = UPWord(u, v)
    assert parse_word(format_word(w)) == w
