import pytest
from hypothesis import given

from helpers import FIXTURES, G, automata, context, lang
from omegafrag import automata as au
from omegafrag.errors import ResourceLimitError
from omegafrag.expressions import language
from omegafrag.syntactic import syntactic_context
from omegafrag.topology import (
    closure_alphabetic,
    interior_alphabetic,
    is_closed_algebraic,
    is_closed_alphabetic,
    is_closed_cantor,
    is_open_alphabetic,
    is_open_cantor,
    topology_report,
)
from omegafrag.words import UPWord


def test_closure_of_im_set_adds_larger_im_sets():
    closure = closure_alphabetic(lang("IM{a}", "abc"))
    assert au.equivalent(closure, lang("IM{a} | IM{a,b} | IM{a,c} | IM{a,b,c}"))


def test_closure_of_empty_language():
    assert au.is_empty(closure_alphabetic(lang("0", "ab")))


def test_closure_keeps_finite_words():
    closure = closure_alphabetic(lang(f"{G}*ab{G}*"))
    assert au.member(closure, "cab")
    assert au.member(closure, UPWord("ab", "c"))
    assert not au.member(closure, "ba")
    assert not au.member(closure, UPWord("", "c"))


def test_interior_examples():
    full = lang(f"{G}^oo")
    assert au.equivalent(interior_alphabetic(full), full)
    l4 = lang(f"{G}* {{b,c}}^oo & ({G}* b)^w")
    assert au.is_empty(au.infinite_part(interior_alphabetic(l4)))


@pytest.mark.parametrize(
    "expr,alphabet,expected",
    [
        ("ab{a,c}^oo", "abc", True),
        ("IM{a}", "ab", False),
        ("a*(ab)*ba^oo", "ab", True),
        (f"{G}^oo", "abc", True),
    ],
)
def test_open_examples(expr, alphabet, expected):
    assert is_open_alphabetic(context(expr, alphabet)) is expected


@pytest.mark.parametrize(
    "expr,alphabet,expected",
    [
        ("a*(ab)^w", "ab", True),
        (f"{G}*ab{G}*", "abc", False),
        ("0", "ab", True),
        (f"{G}^oo", "abc", True),
    ],
)
def test_closed_examples(expr, alphabet, expected):
    aut = lang(expr, alphabet)
    assert is_closed_alphabetic(aut) is expected
    assert is_closed_algebraic(context(expr, alphabet)) is expected


def test_cantor_examples():
    assert is_open_cantor(lang("ab(a|b)^oo", "ab"))
    assert is_open_cantor(lang("(a|b)*", "ab"))
    assert not is_open_cantor(lang("(a|b)^w", "ab"))
    assert is_closed_cantor(lang("(a|b)^w", "ab"))
    closure = closure_alphabetic(lang("a*(ab)*ba^w", "ab"))
    assert not is_closed_cantor(closure)
    assert is_closed_alphabetic(closure)


def test_large_alphabet_is_refused():
    with pytest.raises(ResourceLimitError):
        closure_alphabetic(language("a", "abcdefg"))


# -- laws on fixtures ---------------------------------------------------------------------


@pytest.mark.parametrize("expr,alphabet", FIXTURES, ids=[e for e, _ in FIXTURES])
def test_closure_laws_on_fixtures(expr, alphabet):
    aut = lang(expr, alphabet)
    closure = closure_alphabetic(aut)
    assert au.is_empty(au.intersect(aut, au.complement(closure)))
    assert au.equivalent(closure_alphabetic(closure), closure)
    interior = interior_alphabetic(aut)
    assert au.is_subset(interior, aut)
    assert au.is_subset(interior, interior_alphabetic(closure))


@pytest.mark.parametrize("expr,alphabet", FIXTURES, ids=[e for e, _ in FIXTURES])
def test_report_consistency_on_fixtures(expr, alphabet):
    aut = lang(expr, alphabet)
    ctx = context(expr, alphabet)
    rep = topology_report(aut)
    assert rep.clopen_alphabetic == (rep.open_alphabetic and rep.closed_alphabetic)
    assert rep.closed_alphabetic == is_closed_algebraic(ctx)
    assert rep.closed_alphabetic == au.equivalent(aut, rep.closure_automaton)
    assert rep.open_alphabetic == au.equivalent(aut, rep.interior_automaton)
    assert rep.open_alphabetic == is_closed_alphabetic(au.complement(aut))
    if rep.open_cantor:
        assert rep.open_alphabetic
    if rep.closed_cantor:
        assert rep.closed_alphabetic


@given(automata())
def test_cantor_open_implies_alphabetically_open(aut):
    ctx = syntactic_context(aut)
    if is_open_cantor(ctx):
        assert is_open_alphabetic(ctx)
    if is_closed_cantor(ctx):
        assert is_closed_algebraic(ctx)
