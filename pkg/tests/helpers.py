"""Reference languages and random expression strategies shared by the tests."""

from functools import lru_cache

from hypothesis import strategies as st

from omegafrag import automata as au
from omegafrag.errors import ResourceLimitError
from omegafrag.expressions import (
    Complement,
    Concat,
    Empty,
    Epsilon,
    ImSet,
    InfPow,
    Intersect,
    Letter,
    OmegaPow,
    Star,
    Union,
    compile_expr,
    language,
)
from omegafrag.monoids import OrderedMonoid
from omegafrag.syntactic import syntactic_context

G = "(a|b|c)"

REFERENCE = {
    1: f"{G}* a b {G}^oo",
    2: f"{G}* {{b,c}}^oo",
    3: f"({G}* a b {G}^oo) & !({G}* b a {G}^oo)",
    4: f"{G}* {{b,c}}^oo & ({G}* b)^w",
    5: f"c* a {G}* b {G}^oo",
    6: f"({G}* a {G}* b {G}^oo) & ({{b,c}}* a {{a,b}}^oo | {{b,c}}^oo)",
    7: f"{G}* a {G}* b {G}^oo",
    8: "{b,c}* a {a,b}^oo | {b,c}^oo",
    9: f"({G}* b)^w",
    10: f"!({G}* b a {G}^oo)",
}

ABC_ABC = f"c* a {G}* b {G}^oo & ({G}* b)^w"

# Languages on which the classifier and the polynomial search are compared.
# All Sigma2 members here are polynomials of degree at most 3.
SYNTH_SUITE = [
    ("(a|b)*ab(a|b)^oo", "ab"),
    (f"{G}*ab{G}^oo", "abc"),
    (f"{G}^oo", "abc"),
    ("0", "ab"),
    (f"{G}*", "abc"),
    (f"{G}^w", "abc"),
    (f"({G}*b)^w", "abc"),
    (f"{G}*{{b,c}}^oo", "abc"),
    (f"c*a{G}*b{G}^oo", "abc"),
    (f"{G}*a{G}*b{G}^oo", "abc"),
    ("{b,c}*a{a,b}^oo | {b,c}^oo", "abc"),
    (f"!({G}*ba{G}^oo)", "abc"),
    (f"{G}*{{b,c}}^oo & ({G}*b)^w", "abc"),
    (f"({G}*ab{G}^oo) & !({G}*ba{G}^oo)", "abc"),
    ("IM{a,b}", "ab"),
    ("a*b(a|b)^oo", "ab"),
    ("(a|b)*a", "ab"),
    ("{a,b}^oo", "abc"),
    ("a^w", "ab"),
    ("(ab)^w", "ab"),
]

# Small hand-picked languages used for exhaustive fixture checks.
FIXTURES = [(REFERENCE[k], "abc") for k in sorted(REFERENCE)] + [
    (ABC_ABC, "abc"),
    ("(a|b)*ab(a|b)^oo", "ab"),
    ("a*(ab)*ba^w", "ab"),
    ("a*(ab)*ba^oo", "ab"),
    ("a*(ab)^w", "ab"),
    ("(ab)^w | (ab)*a", "ab"),
    ("IM{a}", "ab"),
    ("IM{a,b}", "abc"),
    (f"{G}*", "abc"),
    (f"{G}^w", "abc"),
    (f"{G}^oo", "abc"),
    ("0", "ab"),
    (f"(({G})*ab)^w", "abc"),
    (f"c*a{G}*b{G}*c", "abc"),
]


# Elements 1, a, b, c, ba, 0 with ca = a, ac = c, cb = c, bc = b, ab = 0,
# (ba)^2 = 0, every element except ba idempotent and 0 absorbing.
M_NAMES = ["1", "a", "b", "c", "ba", "0"]
M_TABLE = {
    "1": ["1", "a", "b", "c", "ba", "0"],
    "a": ["a", "a", "0", "c", "0", "0"],
    "b": ["b", "ba", "b", "b", "ba", "0"],
    "c": ["c", "a", "c", "c", "a", "0"],
    "ba": ["ba", "ba", "0", "b", "0", "0"],
    "0": ["0", "0", "0", "0", "0", "0"],
}


def tabulated_monoid(drop=()):
    names = [n for n in M_NAMES if n not in drop]
    idx = {n: i for i, n in enumerate(names)}
    table = [[idx[M_TABLE[x][M_NAMES.index(y)]] for y in names] for x in names]
    return OrderedMonoid(table, idx["1"], None, None, names)


@lru_cache(maxsize=None)
def lang(expr, alphabet="abc"):
    return language(expr, alphabet)


@lru_cache(maxsize=None)
def reference(k):
    return lang(REFERENCE[k], "abc")


@lru_cache(maxsize=None)
def context(expr, alphabet="abc"):
    return syntactic_context(lang(expr, alphabet))


@lru_cache(maxsize=None)
def _leaves(alphabet):
    subsets = st.sets(st.sampled_from(alphabet), min_size=1).map(lambda s: "".join(c for c in alphabet if c in s))
    letters = st.sampled_from([Letter(a) for a in alphabet])
    # letters dominate so that random languages are rarely trivial
    return st.one_of(letters, letters, letters, subsets.map(ImSet), st.sampled_from([Epsilon(), Empty()]))


_UNARY = (InfPow, OmegaPow, Star, Complement)
_BINARY = (Concat, Union, Intersect)


@st.composite
def _tree(draw, alphabet, depth, top):
    # the outermost operator is never a bare leaf
    if depth == 0 or (not top and draw(st.booleans())):
        return draw(_leaves(alphabet))
    op = draw(st.sampled_from(_BINARY + _UNARY))
    if op in _BINARY:
        return op(draw(_tree(alphabet, depth - 1, False)), draw(_tree(alphabet, depth - 1, False)))
    return op(draw(_tree(alphabet, depth - 1, False)))


@lru_cache(maxsize=None)
def _nodes(alphabet, depth):
    return _tree(alphabet, depth, True)


def expressions(max_depth=4, alphabets=("ab", "abc")):
    """Pairs ``(alphabet, node)`` with expression depth at most ``max_depth``."""
    return st.one_of([st.tuples(st.just(a), _nodes(a, max_depth)) for a in alphabets])


def _nontrivial(aut):
    return not au.is_empty(aut) and not au.is_empty(au.complement(aut))


def _build(alphabet, node, nontrivial):
    """Compile, or ``None`` when the language is trivial or exceeds the monoid bound."""
    try:
        aut = compile_expr(node, alphabet)
        if nontrivial and not _nontrivial(aut):
            return None
    except ResourceLimitError:
        return None
    return aut


def automata(max_depth=4, alphabets=("ab", "abc"), nontrivial=True):
    """Random automata; by default neither empty nor universal."""
    auts = expressions(max_depth, alphabets).map(lambda p: _build(p[0], p[1], nontrivial))
    return auts.filter(lambda a: a is not None)


def words(alphabet, max_len=4):
    return st.text(alphabet=alphabet, max_size=max_len)


def automaton_pairs(max_depth=4, alphabets=("ab", "abc")):
    """Two random non-trivial automata over one shared alphabet."""
    pairs = st.one_of(
        [
            st.tuples(st.just(a), _nodes(a, max_depth), _nodes(a, max_depth)).map(
                lambda p: (_build(p[0], p[1], True), _build(p[0], p[2], True))
            )
            for a in alphabets
        ]
    )
    return pairs.filter(lambda p: None not in p)
