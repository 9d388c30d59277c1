"""Alphabetic and Cantor topology on finite and infinite words.

The alphabetic topology has the sets ``u A^∞`` as a basis.  Closures are
built from the languages ``L / A^∞`` (finite words extendable by a word
over ``A``), turned into arrow languages and cut down to the words
whose letters at infinity are exactly ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import automata as au
from .errors import ResourceLimitError
from .profiles import DEFAULT_LIMIT
from .syntactic import SyntacticContext, syntactic_context
from .words import Alphabet

MAX_CLOSURE_ALPHABET = 6


@dataclass
class TopologyReport:
    open_alphabetic: bool
    closed_alphabetic: bool
    clopen_alphabetic: bool
    open_cantor: bool
    closed_cantor: bool
    closure_automaton: au.ExtBuchiAutomaton
    interior_automaton: au.ExtBuchiAutomaton


def closure_alphabetic(aut: au.ExtBuchiAutomaton) -> au.ExtBuchiAutomaton:
    """Closure of L(aut) in the alphabetic topology."""
    if len(aut.alphabet) > MAX_CLOSURE_ALPHABET:
        raise ResourceLimitError(
            f"closure enumerates all letter subsets; alphabets above {MAX_CLOSURE_ALPHABET} letters are refused"
        )
    parts = []
    for letters in Alphabet(aut.alphabet).subsets():
        w = au.quotient_inf(aut, letters)
        parts.append(au.restrict_im(au.arrow(w), letters))
    return au.union_all(aut.alphabet, parts)


def interior_alphabetic(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> au.ExtBuchiAutomaton:
    return au.complement(closure_alphabetic(au.complement(aut, limit)), limit)


def open_violation(ctx: SyntacticContext):
    """Linked pairs ``(s, e)``, ``(t, f)`` with ``t, f ∈ M_e``, ``[s][e]^ω ⊆ L`` but ``[st][f]^ω ⊄ L``."""
    M = ctx.monoid
    local = {}
    for (s, e), v in sorted(ctx.table.items()):
        if not v:
            continue
        if e not in local:
            local[e] = M.local_submonoid(e)
        me = local[e]
        for t, f in sorted(ctx.table):
            if t in me and f in me and not ctx.table[(M.table[s][t], f)]:
                return (s, e), (t, f)
    return None


def is_open_alphabetic(ctx: SyntacticContext) -> bool:
    """Openness decided on the syntactic monoid."""
    return open_violation(ctx) is None


def is_closed_alphabetic(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    """Closedness decided on automata: the closure must add nothing outside L."""
    return au.is_empty(au.intersect(closure_alphabetic(aut), au.complement(aut, limit)))


def is_closed_algebraic(ctx: SyntacticContext) -> bool:
    """Closedness as openness of the complement, on the syntactic monoid."""
    return is_open_alphabetic(ctx.complement())


def _full_classes(ctx: SyntacticContext):
    """Classes ``m`` with ``[m] Γ^∞`` inside the language."""
    M = ctx.monoid
    bad = set()
    for (s, f), v in ctx.table.items():
        if not v:
            bad.add(s)
    full = []
    for m in range(M.size):
        if not any(M.table[m][y] in bad for y in range(M.size)):
            full.append(m)
    return set(full)


def _cantor_open(ctx: SyntacticContext) -> bool:
    M = ctx.monoid
    full = _full_classes(ctx)
    alphabet = ctx.alphabet
    right = ctx.morphism.right_table(alphabet)
    keep = [m for m in range(M.size) if m not in full]
    if M.unit in full:
        return True
    ren = {m: i for i, m in enumerate(keep)}
    trans = {(ren[m], a, ren[right[m][i]]) for m in keep for i, a in enumerate(alphabet) if right[m][i] in ren}
    never_full = au.ExtBuchiAutomaton(alphabet, len(keep), {ren[M.unit]}, trans, (), range(len(keep)))
    inside = ctx.saturated([], [p for p, v in ctx.table.items() if v])
    return au.is_empty(au.intersect(inside, never_full))


def is_open_cantor(lang) -> bool:
    """Every infinite word of the language has a prefix ``u`` with ``uΓ^∞`` inside it."""
    ctx = lang if isinstance(lang, SyntacticContext) else syntactic_context(lang)
    return _cantor_open(ctx)


def is_closed_cantor(lang) -> bool:
    ctx = lang if isinstance(lang, SyntacticContext) else syntactic_context(lang)
    return _cantor_open(ctx.complement())


def topology_report(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> TopologyReport:
    ctx = syntactic_context(aut, limit)
    closure = closure_alphabetic(aut)
    closed = au.is_empty(au.intersect(closure, au.complement(aut, limit)))
    opened = is_open_alphabetic(ctx)
    return TopologyReport(
        open_alphabetic=opened,
        closed_alphabetic=closed,
        clopen_alphabetic=opened and closed,
        open_cantor=_cantor_open(ctx),
        closed_cantor=_cantor_open(ctx.complement()),
        closure_automaton=closure,
        interior_automaton=interior_alphabetic(aut, limit),
    )


__all__ = [
    "TopologyReport",
    "closure_alphabetic",
    "interior_alphabetic",
    "is_closed_algebraic",
    "is_closed_alphabetic",
    "is_closed_cantor",
    "is_open_alphabetic",
    "is_open_cantor",
    "open_violation",
    "topology_report",
]
