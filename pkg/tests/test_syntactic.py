import json
import random
from dataclasses import replace

import pytest
from hypothesis import given

from helpers import FIXTURES, G, automata, context, lang
from omegafrag import automata as au
from omegafrag.errors import PreconditionError
from omegafrag.syntactic import (
    block_automaton,
    conjugacy_class,
    conjugacy_classes,
    conjugated,
    downward_closed,
    downward_closed_pairs,
    linked_pairs,
    omega_leq,
    omega_subset,
    profile_monoid,
    report,
    strongly_recognizes,
    syntactic_context,
    weakly_recognizes,
)
from omegafrag.words import UPWord

L1 = f"{G}*ab{G}^oo"
EIGHT = f"c*a{G}*b{G}*c"


# -- profile monoid -----------------------------------------------------------------


def test_profile_monoid_of_a_omega():
    h, table = profile_monoid(lang("a^w", "a"))
    assert h.target.size >= 2
    e = h.target.idempotent_power(h.apply("a"))
    assert table[(e, e)] is True


def test_profile_monoid_of_everything():
    _, table = profile_monoid(lang(f"{G}^oo"))
    assert all(table.values())


def test_profile_val_matches_membership():
    aut = lang(f"({G}*ab)^w")
    h, table = profile_monoid(aut)
    reps = h.representatives
    for s, e in table:
        v = reps[e] or "a"
        if h.apply(v) != e:
            continue
        assert au.member(aut, UPWord(reps[s], v)) == table[(s, e)]


# -- syntactic monoid ---------------------------------------------------------------


def test_six_element_monoid():
    ctx = context(L1)
    assert ctx.size == 6
    assert ctx.monoid.names == ["1", "a", "b", "c", "ab", "ba"]


def test_eight_element_monoid():
    M = context(EIGHT).monoid
    assert M.size == 8
    assert all(M.is_idempotent(s) for s in range(8))


def test_empty_language_has_trivial_monoid():
    assert context("0", "ab").size == 1


def test_representatives_map_to_their_class():
    ctx = context(EIGHT)
    h = ctx.morphism
    assert all(h.apply(w) == m for m, w in enumerate(h.representatives))


# -- omega tables ---------------------------------------------------------------------


def test_zero_blocks_are_inside():
    ctx = context(L1)
    M = ctx.monoid
    zero = M.zero()
    assert all(omega_subset(ctx, zero, e) for e in M.idempotents())
    assert omega_subset(ctx, M.unit, M.unit) is False
    h = ctx.morphism
    assert omega_subset(ctx, h.apply("ab"), h.apply("a")) is True


def test_omega_leq_examples():
    ctx = context(L1)
    M = ctx.monoid
    zero, a, b = M.zero(), M.element("a"), M.element("b")
    assert omega_leq(ctx, (zero, a), (zero, b))
    for p in ctx.linked_pairs():
        assert omega_leq(ctx, p, p)
    outside = [p for p in ctx.linked_pairs() if not ctx.table[p]]
    assert outside
    assert all(omega_leq(ctx, q, outside[0]) for q in ctx.linked_pairs())


def test_omega_subset_rejects_unlinked_pairs():
    ctx = context(L1)
    M = ctx.monoid
    with pytest.raises(PreconditionError):
        omega_subset(ctx, M.element("a"), M.element("b"))


# -- conjugacy ------------------------------------------------------------------------


def test_conjugacy_class_of_abc():
    M = context(EIGHT).monoid
    n = M.element
    cls = conjugacy_class(M, (n("abc"), n("abc")))
    expected = {(n("ab"), n("b")), (n("ab"), n("ab")), (n("abc"), n("bc")), (n("abc"), n("abc"))}
    assert set(cls) == expected


def test_conjugacy_is_reflexive_and_stays_in_r_classes():
    M = context(EIGHT).monoid
    for p in linked_pairs(M):
        assert conjugated(M, p, p)
    for group in conjugacy_classes(M):
        for s, _ in group:
            assert all(M.r_related(s, t) for t, _ in group)


def test_val_constant_on_conjugacy_classes():
    for expr, alphabet in FIXTURES[:12]:
        ctx = context(expr, alphabet)
        for group in conjugacy_classes(ctx.monoid):
            assert len({ctx.table[p] for p in group}) == 1


# -- recognition ------------------------------------------------------------------------


def test_weak_versus_strong_recognition():
    ctx = context(L1)
    aut = lang(L1)
    assert strongly_recognizes(ctx.morphism, aut)
    block = block_automaton(ctx.morphism, "abc", [(ctx.monoid.zero(), ctx.morphism.letter_map["a"])])
    assert weakly_recognizes(ctx.morphism, block)
    assert not strongly_recognizes(ctx.morphism, block)


def test_recognition_of_empty_language():
    ctx = context(L1)
    empty = lang("0")
    assert weakly_recognizes(ctx.morphism, empty)
    assert strongly_recognizes(ctx.morphism, empty)


@pytest.mark.parametrize("expr,alphabet", FIXTURES, ids=[e for e, _ in FIXTURES])
def test_syntactic_morphism_strongly_recognizes(expr, alphabet):
    ctx = context(expr, alphabet)
    assert strongly_recognizes(ctx.morphism, lang(expr, alphabet))


# -- minimality, order and saturation -------------------------------------------------------


@pytest.mark.parametrize("expr,alphabet", FIXTURES, ids=[e for e, _ in FIXTURES])
def test_separation_witnesses_tell_classes_apart(expr, alphabet):
    ctx = context(expr, alphabet)
    aut = lang(expr, alphabet)
    reps = ctx.morphism.representatives
    for u in range(ctx.size):
        assert ctx.separation(u, u) is None
        for v in range(u + 1, ctx.size):
            sep = ctx.separation(u, v)
            assert sep is not None
            assert au.member(aut, sep.apply(reps[u])) != au.member(aut, sep.apply(reps[v]))


def _loop(x, w):
    # x (w)^ω, which is the finite word x when w is empty
    return UPWord(x, w) if w else x


def _contexts(rng, alphabet, n):
    word = lambda lo, hi: "".join(rng.choice(alphabet) for _ in range(rng.randint(lo, hi)))
    return [(word(0, 3), word(0, 3), word(1, 3)) for _ in range(n)]


@pytest.mark.parametrize("expr,alphabet", FIXTURES[:14], ids=[e for e, _ in FIXTURES[:14]])
def test_order_soundness(expr, alphabet):
    ctx = context(expr, alphabet)
    aut = lang(expr, alphabet)
    M, reps = ctx.monoid, ctx.morphism.representatives
    rng = random.Random(2024)
    pairs = [(s, t) for s in range(M.size) for t in range(M.size) if s != t and M.le(s, t)]
    for s, t in pairs:
        u, v = reps[s], reps[t]
        for x, y, z in _contexts(rng, alphabet, 50):
            if au.member(aut, x + v + y):
                assert au.member(aut, x + u + y)
            if au.member(aut, UPWord(x + v + y, z)):
                assert au.member(aut, UPWord(x + u + y, z))
            if au.member(aut, _loop(x, v + y)):
                assert au.member(aut, _loop(x, u + y))


@pytest.mark.parametrize("expr,alphabet", FIXTURES, ids=[e for e, _ in FIXTURES])
def test_downward_closed(expr, alphabet):
    ctx = context(expr, alphabet)
    assert downward_closed(ctx)
    assert downward_closed_pairs(ctx)
    assert downward_closed(ctx.complement())


@given(automata())
def test_val_saturation_on_three_representatives(aut):
    ctx = syntactic_context(aut)
    M, h = ctx.monoid, ctx.morphism
    reps = h.representatives
    for s, e in ctx.linked_pairs():
        v = reps[e]
        if not v:
            assert au.member(aut, reps[s]) == ctx.table[(s, e)] == ctx.fin[s]
            continue
        n = next(k for k in range(1, M.size + 2) if M.is_idempotent(h.apply(v * k)))
        samples = [(reps[s], v * n), (reps[s] + v * n, v * n), (reps[s], v * 2 * n)]
        for u, w in samples:
            assert au.member(aut, UPWord(u, w)) == ctx.table[(s, e)]


# -- complement and report ------------------------------------------------------------------


def test_complement_context_negates_tables():
    ctx = context(L1)
    comp = ctx.complement()
    assert comp.fin == [not x for x in ctx.fin]
    assert all(comp.table[p] != ctx.table[p] for p in ctx.table)
    direct = syntactic_context(au.complement(lang(L1)))
    assert direct.size == ctx.size
    assert sorted(direct.table.values()) == sorted(comp.table.values())


def test_report_is_json_serializable():
    data = report(context(EIGHT))
    assert data["size"] == 8 and data["in_DA"] and data["all_idempotent"]
    assert json.loads(json.dumps(data)) == data


# -- recognizer shortcut ----------------------------------------------------------------------


@pytest.mark.parametrize("expr,alphabet", FIXTURES, ids=[e for e, _ in FIXTURES])
def test_recognizer_quotient_matches_profile_quotient(expr, alphabet):
    aut = replace(lang(expr, alphabet), recognizer=None)
    profiled = syntactic_context(aut)
    quotient = syntactic_context(au.recognizer_of(aut).automaton(alphabet))
    assert quotient.monoid.names == profiled.monoid.names
    assert quotient.monoid.table == profiled.monoid.table
    assert quotient.monoid.leq == profiled.monoid.leq
    assert quotient.fin == profiled.fin
    assert dict(quotient.table) == dict(profiled.table)
    assert quotient.unit_has_nonempty == profiled.unit_has_nonempty
