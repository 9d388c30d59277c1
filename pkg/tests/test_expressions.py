import pytest
from hypothesis import given, strategies as st

from helpers import G, expressions, lang
from omegafrag import automata as au
from omegafrag.errors import ParseError, UndeclaredLetterError
from omegafrag.expressions import (
    Complement,
    Concat,
    ImSet,
    InfPow,
    Letter,
    OmegaPow,
    Star,
    Union,
    compile_expr,
    compile_text,
    parse,
    parse_file,
    unparse,
)
from omegafrag.profiles import accepts_up
from omegafrag.words import UPWord


def test_parse_structure():
    expected = Concat(Concat(Star(Union(Letter("a"), Union(Letter("b"), Letter("c")))), Letter("a")), Letter("b"))
    assert parse("(a|b|c)* a b", "abc") == expected
    assert parse("IM{a,b}", "abc") == ImSet("ab")


def test_malformed_power_reports_offset():
    with pytest.raises(ParseError) as info:
        parse("a^^w", "abc")
    assert info.value.position == 2


def test_undeclared_letter():
    with pytest.raises(UndeclaredLetterError):
        parse("a d", "abc")


def test_missing_header():
    with pytest.raises(ParseError):
        parse_file("(a|b)*")


def test_file_offsets_point_into_the_whole_text():
    with pytest.raises(ParseError) as info:
        parse_file("alphabet: ab; a )")
    assert info.value.position == 16


def test_inf_power_is_finite_and_infinite_iteration():
    assert au.equivalent(lang("{a,b}^oo", "ab"), lang("(a|b)* | (a|b)^w", "ab"))


def test_omega_power_has_no_finite_words():
    aut = lang("(ab)^w", "ab")
    assert au.member(aut, UPWord("", "ab"))
    assert not au.member(aut, "ab")


def test_omega_power_of_star_of_suffix():
    assert au.member(lang(f"({G}* a b)^w"), UPWord("", "cab"))


def test_empty_im_set_is_finite_words():
    assert au.equivalent(compile_expr(ImSet(""), "abc"), lang(f"{G}*"))


def test_compile_text_header():
    aut = compile_text("alphabet: ab; a b^w")
    assert aut.alphabet == "ab"
    assert au.member(aut, UPWord("a", "b"))


@given(expressions())
def test_unparse_roundtrip(pair):
    alphabet, node = pair
    assert parse(unparse(node), alphabet) == node


@given(expressions())
def test_double_complement(pair):
    alphabet, node = pair
    assert au.equivalent(compile_expr(Complement(Complement(node)), alphabet), compile_expr(node, alphabet))


@given(expressions(max_depth=3))
def test_inf_power_splits(pair):
    alphabet, node = pair
    split = Union(Star(node), OmegaPow(node))
    assert au.equivalent(compile_expr(InfPow(node), alphabet), compile_expr(split, alphabet))


@given(
    expressions(),
    st.text("abc", max_size=3),
    st.text("abc", min_size=1, max_size=3),
    st.integers(1, 3),
)
def test_membership_ignores_unrolling(pair, u, v, k):
    alphabet, node = pair
    u = "".join(x for x in u if x in alphabet)
    v = "".join(x for x in v if x in alphabet) or "a"
    aut = compile_expr(node, alphabet)
    expected = au.member(aut, UPWord(u, v))
    # the raw lasso check sees the unrolled prefix and the repeated period as given
    assert accepts_up(aut, u + v * k, v) == expected
    assert accepts_up(aut, u, v * k) == expected
