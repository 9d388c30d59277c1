"""Syntactic ordered monoids of languages of finite and infinite words.

A :class:`SyntacticContext` bundles the syntactic morphism, its ordered
monoid and the table ``VAL`` telling, for each linked pair ``(s, e)``
(``se = s``, ``e² = e``), whether ``[s][e]^ω`` lies inside the language.
With the convention ``1^ω = 1``, ``VAL(s, 1)`` says whether the finite
words of class ``s`` belong to the language.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import automata as au
from .errors import PreconditionError
from .monoids import OrderedMonoid
from .profiles import DEFAULT_LIMIT, ProfileMonoid, syntactic_data, syntactic_data_from_tables

_CHECK_AXIOMS_UP_TO = 32


@dataclass(frozen=True)
class LinkedPair:
    s: int
    e: int


@dataclass
class Morphism:
    """A monoid morphism from words, fixed by the images of the letters."""

    target: OrderedMonoid
    letter_map: dict
    representatives: list = field(default_factory=list)

    def __post_init__(self):
        if not self.representatives:
            self.representatives = self.target.representatives()

    @property
    def alphabet(self) -> str:
        return "".join(sorted(self.letter_map))

    def apply(self, word: str) -> int:
        m = self.target.unit
        for a in word:
            m = self.target.table[m][self.letter_map[a]]
        return m

    def right_table(self, alphabet: str):
        t = self.target.table
        return [[t[m][self.letter_map[a]] for a in alphabet] for m in range(self.target.size)]


class OmegaTable(dict):
    """Maps linked pairs ``(s, e)`` to ``VAL(s, e)``."""


class SyntacticContext:
    """Syntactic morphism, ordered monoid and ``VAL`` table of one language."""

    def __init__(self, morphism, table, fin, language=None, data=None, unit_has_nonempty=False):
        self.morphism = morphism
        self.table = table
        self.fin = list(fin)
        self._language = language
        self.data = data
        self.unit_has_nonempty = unit_has_nonempty

    @property
    def monoid(self) -> OrderedMonoid:
        return self.morphism.target

    @property
    def alphabet(self) -> str:
        return self._alphabet

    @property
    def size(self) -> int:
        return self.monoid.size

    @property
    def language(self) -> au.ExtBuchiAutomaton:
        if callable(self._language):
            self._language = self._language()
        return self._language

    def val(self, s, e) -> bool:
        return self.table[(s, e)]

    def omega(self, m, k) -> bool:
        """Membership of ``[m][k]^ω``-words for arbitrary ``m`` and ``k``."""
        f = self.monoid.idempotent_power(k)
        return self.table[(self.monoid.table[m][f], f)]

    def linked_pairs(self):
        return sorted(self.table)

    def name(self, s) -> str:
        return self.monoid.names[s]

    def complement(self) -> "SyntacticContext":
        """Context of the complement: same monoid, reversed order, negated ``VAL``."""
        lang = self._language
        comp_lang = (lambda: au.complement(self.language)) if lang is not None else None
        ctx = SyntacticContext(
            Morphism(self.monoid.dual(), self.morphism.letter_map, self.morphism.representatives),
            OmegaTable({p: not v for p, v in self.table.items()}),
            [not x for x in self.fin],
            comp_lang,
            None,
            self.unit_has_nonempty,
        )
        ctx._alphabet = self._alphabet
        return ctx

    def separation(self, u, v):
        """A context separating the classes ``u`` and ``v``; ``None`` if ``u == v``."""
        if self.data is None:
            raise PreconditionError("separations are only stored for contexts built from an automaton")
        return self.data.separation(u, v)

    def saturated(self, finite_classes, pieces) -> au.ExtBuchiAutomaton:
        """Automaton for a union of ``[s]`` and ``[s][e]^ω`` blocks of this monoid."""
        return au.saturated_automaton(
            self.alphabet, self.morphism.right_table(self.alphabet), self.monoid.unit, finite_classes, pieces
        )


def profile_monoid(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT):
    """The transition-profile morphism of ``aut`` and its ``VAL`` table."""
    pm = ProfileMonoid.of(aut, limit)
    n = len(pm)
    table = [[pm.mul(i, j) for j in range(n)] for i in range(n)]
    names = [w if w else "1" for w in pm.words]
    monoid = OrderedMonoid(table, 0, None, dict(pm.letter_index), names, check=False)
    init, final = aut.mask(aut.initial), aut.mask(aut.final)
    omega = OmegaTable()
    for e in monoid.idempotents():
        for s in range(n):
            if table[s][e] == s:
                omega[(s, e)] = pm.val(s, e, init, final)
    return Morphism(monoid, dict(pm.letter_index), list(pm.words)), omega


def syntactic_context(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> SyntacticContext:
    """Syntactic ordered monoid, morphism and ``VAL`` table of ``L(aut)``."""
    aut = au.reduce(aut)
    rec = aut.recognizer() if aut.recognizer is not None else None
    if rec is not None:
        data = syntactic_data_from_tables(
            aut.alphabet, rec.table, rec.right, rec.unit, rec.words, rec.fin, rec.val, rec.idempotent_of
        )
    else:
        pm = ProfileMonoid.of(aut, limit)
        data = syntactic_data(pm, aut.mask(aut.initial), aut.mask(aut.final))
    words = data.words()
    names = [w if w else "1" for w in words]
    gens = {a: data.letter_class(a) for a in aut.alphabet}
    monoid = OrderedMonoid(data.table, data.unit, data.leq, gens, names, check=data.size <= _CHECK_AXIOMS_UP_TO)
    ctx = SyntacticContext(
        Morphism(monoid, gens, words),
        OmegaTable(data.val),
        data.fin,
        aut,
        data,
        data.unit_has_nonempty,
    )
    ctx._alphabet = aut.alphabet
    return ctx


def _check_linked(M: OrderedMonoid, s, e):
    if M.table[e][e] != e or M.table[s][e] != s:
        raise PreconditionError(f"({M.names[s]}, {M.names[e]}) is not a linked pair")


def omega_subset(ctx: SyntacticContext, s, e) -> bool:
    """Whether ``[s][e]^ω`` is contained in the language."""
    _check_linked(ctx.monoid, s, e)
    return ctx.table[(s, e)]


def omega_leq(ctx: SyntacticContext, tf, se) -> bool:
    """``t f^ω <= s e^ω``: containment of ``[s][e]^ω`` implies that of ``[t][f]^ω``."""
    (t, f), (s, e) = tf, se
    _check_linked(ctx.monoid, t, f)
    _check_linked(ctx.monoid, s, e)
    return (not ctx.table[(s, e)]) or ctx.table[(t, f)]


def linked_pairs(M: OrderedMonoid):
    return [(s, e) for e in M.idempotents() for s in range(M.size) if M.table[s][e] == s]


def conjugated(M: OrderedMonoid, p, q) -> bool:
    """Whether ``q = (t, f)`` is reached from ``p = (s, e)`` via ``e = xy``, ``f = yx``, ``t = sx``."""
    (s, e), (t, f) = p, q
    T = M.table
    for x in range(M.size):
        if T[s][x] != t:
            continue
        for y in range(M.size):
            if T[x][y] == e and T[y][x] == f:
                return True
    return False


def conjugacy_classes(M: OrderedMonoid):
    """Classes of linked pairs under the equivalence generated by conjugation."""
    T = M.table
    pairs = sorted(linked_pairs(M))
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    stable = {}
    for s, e in pairs:
        stable.setdefault(e, []).append(s)
    for e, sources in stable.items():
        for x in range(M.size):
            for y in range(M.size):
                if T[x][y] != e:
                    continue
                f = T[y][x]
                for s in sources:
                    q = (T[s][x], f)
                    if q in parent and find(q) != find((s, e)):
                        parent[find(q)] = find((s, e))
    groups = {}
    for p in pairs:
        groups.setdefault(find(p), []).append(p)
    return sorted(groups.values())


def conjugacy_class(M: OrderedMonoid, pair):
    for group in conjugacy_classes(M):
        if tuple(pair) in group:
            return group
    raise PreconditionError("not a linked pair")


def block_automaton(morphism: Morphism, alphabet: str, pieces) -> au.ExtBuchiAutomaton:
    """Automaton for the union of ``[s][e]^ω`` over ``pieces``.

    Blocks of non-conjugated pairs are disjoint, so when ``pieces`` is a
    union of conjugacy classes the morphism saturates the result and is
    attached as its recognizer.
    """
    M = morphism.target
    pieces = set(pieces)
    finite = {s for s, e in pieces if e == M.unit}
    right = morphism.right_table(alphabet)
    aut = au.saturated_automaton(alphabet, right, M.unit, finite, pieces)
    if all(len({p in pieces for p in group}) == 1 for group in conjugacy_classes(M)):
        rec = au.Recognizer(
            M.table,
            right,
            M.unit,
            morphism.representatives,
            [s in finite for s in range(M.size)],
            {p: p in pieces for p in linked_pairs(M)},
        )
        aut = replace(aut, recognizer=lambda: rec)
    return aut


def _recognized_union(morphism: Morphism, aut: au.ExtBuchiAutomaton, strong: bool, limit: int):
    alphabet = aut.alphabet
    chosen = []
    for s, e in linked_pairs(morphism.target):
        block = block_automaton(morphism, alphabet, [(s, e)])
        if strong:
            keep = not au.is_empty(au.intersect(block, aut))
        else:
            keep = au.is_subset(block, aut, limit)
        if keep:
            chosen.append((s, e))
    return block_automaton(morphism, alphabet, chosen)


def weakly_recognizes(morphism: Morphism, aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    """Whether L(aut) is the union of the blocks ``[s][e]^ω`` it contains."""
    return au.equivalent(_recognized_union(morphism, aut, False, limit), aut, limit)


def strongly_recognizes(morphism: Morphism, aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    """Whether L(aut) is the union of the blocks ``[s][e]^ω`` it meets."""
    return au.equivalent(_recognized_union(morphism, aut, True, limit), aut, limit)


def downward_closed(ctx: SyntacticContext) -> bool:
    """``[s][e]^ω ⊆ L`` and ``t <= s`` imply ``[t][e]^ω ⊆ L``."""
    M = ctx.monoid
    for (s, e), v in ctx.table.items():
        if not v:
            continue
        for t in range(M.size):
            if M.le(t, s) and not ctx.omega(t, e):
                return False
    return True


def downward_closed_pairs(ctx: SyntacticContext) -> bool:
    """``t <= s``, ``f <= e`` and ``VAL(s, e)`` imply ``VAL(t, f)`` for linked pairs."""
    M = ctx.monoid
    for (s, e), v in ctx.table.items():
        if not v:
            continue
        for (t, f), w in ctx.table.items():
            if not w and M.le(t, s) and M.le(f, e):
                return False
    return True


def report(ctx: SyntacticContext) -> dict:
    """Structured description of the syntactic monoid, suitable for JSON."""
    M = ctx.monoid
    names = M.names
    pairs = ctx.linked_pairs()
    return {
        "size": M.size,
        "elements": [
            {"name": names[s], "representative": ctx.morphism.representatives[s], "idempotent": M.is_idempotent(s)}
            for s in range(M.size)
        ],
        "generators": {a: names[g] for a, g in sorted(M.generators.items())},
        "table": [[names[t] for t in row] for row in M.table],
        "order": [[names[s], names[t]] for s in range(M.size) for t in range(M.size) if s != t and M.le(s, t)],
        "linked_pairs": [{"s": names[s], "e": names[e], "val": ctx.table[(s, e)]} for s, e in pairs],
        "conjugacy_classes": [[[names[s], names[e]] for s, e in group] for group in conjugacy_classes(M)],
        "in_DA": M.is_in_DA(),
        "all_idempotent": all(M.is_idempotent(s) for s in range(M.size)),
    }


__all__ = [
    "LinkedPair",
    "Morphism",
    "OmegaTable",
    "SyntacticContext",
    "block_automaton",
    "conjugacy_class",
    "conjugacy_classes",
    "conjugated",
    "downward_closed",
    "downward_closed_pairs",
    "linked_pairs",
    "omega_leq",
    "omega_subset",
    "profile_monoid",
    "report",
    "strongly_recognizes",
    "syntactic_context",
    "weakly_recognizes",
]
