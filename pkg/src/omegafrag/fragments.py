"""Decision procedures for the fragments Σ₁, Π₁, BΣ₁, Σ₂, Π₂, Δ₂ and FO².

Every classifier reads a shared :class:`SyntacticContext`.  Where two
characterizations are available both are exposed, so that tests can
check that they agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import automata as au
from .errors import PreconditionError
from .profiles import DEFAULT_LIMIT
from .syntactic import SyntacticContext, syntactic_context
from .topology import (
    closure_alphabetic,
    is_closed_alphabetic,
    is_open_alphabetic,
    is_open_cantor,
    open_violation,
)

FLAGS = ("sigma1", "pi1", "bsigma1", "sigma2", "pi2", "delta2", "fo2", "fo2_sigma2", "fo2_pi2")


@dataclass
class FragmentReport:
    flags: dict
    witnesses: dict = field(default_factory=dict)
    alphabet: str = ""
    monoid_size: int = 0
    language: str | None = None

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def to_dict(self) -> dict:
        return {
            "language": self.language,
            "alphabet": self.alphabet,
            "syntactic_monoid_size": self.monoid_size,
            "flags": {k: self.flags[k] for k in FLAGS},
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = []
        if self.language:
            lines.append(f"language: {self.language}")
        lines.append(f"alphabet: {self.alphabet}")
        lines.append(f"syntactic monoid size: {self.monoid_size}")
        for k in FLAGS:
            lines.append(f"{k:11} {'yes' if self.flags[k] else 'no'}")
        for k in sorted(self.witnesses):
            lines.append(f"witness {k}: {self.witnesses[k]}")
        return "\n".join(lines)


def _ctx(lang) -> SyntacticContext:
    return lang if isinstance(lang, SyntacticContext) else syntactic_context(lang)


# -- Σ₂ and Π₂ ---------------------------------------------------------------


def sigma2_violation(ctx: SyntacticContext):
    """First reason the language is not Σ₂, as a readable string, or ``None``."""
    M = ctx.monoid
    bad = open_violation(ctx)
    if bad is not None:
        (s, e), (t, f) = bad
        n = M.names
        return f"[{n[s]}][{n[e]}]^w inside but [{n[M.table[s][t]]}][{n[f]}]^w not (t={n[t]}, f={n[f]} in M_{n[e]})"
    for e in M.idempotents():
        s = M._local_violation(e, top=True)
        if s is not None:
            ese = M.table[M.table[e][s]][e]
            return f"idempotent {M.names[e]} not locally top: {M.names[e]}{M.names[s]}{M.names[e]} = {M.names[ese]}"
    return None


def is_sigma2(lang) -> bool:
    """Open ω-implications plus locally top idempotents."""
    return sigma2_violation(_ctx(lang)) is None


def is_pi2(lang) -> bool:
    return sigma2_violation(_ctx(lang).complement()) is None


def is_sigma2_topological(aut: au.ExtBuchiAutomaton, ctx: SyntacticContext | None = None, limit=DEFAULT_LIMIT) -> bool:
    """Σ₂ as alphabetic openness (complement equals its closure) with locally top idempotents."""
    ctx = ctx or syntactic_context(aut, limit)
    M = ctx.monoid
    if not all(M.locally_top(e) for e in M.idempotents()):
        return False
    return is_closed_alphabetic(au.complement(aut, limit), limit)


# -- FO² and Δ₂ ----------------------------------------------------------------


def fo2_violation(ctx: SyntacticContext):
    M = ctx.monoid
    bad = M.da_violation(use_generators=False)
    if bad is None:
        return None
    e, s, ese = (M.names[x] for x in bad)
    return f"{e}{s}{e} = {ese} differs from {e} although {s} is in M_{e}"


def is_fo2(lang) -> bool:
    return _ctx(lang).monoid.is_in_DA()


def _r_condition_violation(ctx: SyntacticContext, pairs):
    M = ctx.monoid
    for p in pairs:
        for q in pairs:
            if p < q and M.r_related(p[0], q[0]) and ctx.table[p] != ctx.table[q]:
                return p, q
    return None


def delta2_violation(ctx: SyntacticContext):
    bad = fo2_violation(ctx)
    if bad is not None:
        return bad
    hit = _r_condition_violation(ctx, ctx.linked_pairs())
    if hit is None:
        return None
    n = ctx.monoid.names
    (s, e), (t, f) = hit
    return f"{n[s]} R {n[t]} but [{n[s]}][{n[e]}]^w and [{n[t]}][{n[f]}]^w disagree on membership"


def is_delta2(lang) -> bool:
    """DA together with agreement of ``VAL`` on R-related linked pairs."""
    return delta2_violation(_ctx(lang)) is None


def arrow_pair_property(lang) -> bool:
    """``[s][e]^ω ⊆ L`` exactly when the finite words of ``[s]`` lie in ``L``."""
    ctx = _ctx(lang)
    return all(v == ctx.fin[s] for (s, e), v in ctx.table.items())


def is_arrow_language(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    """Whether L equals the arrow language of its own finite words."""
    return au.equivalent(aut, au.arrow(au.finite_part(aut)), limit)


def both_arrow_languages(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    return is_arrow_language(aut, limit) and is_arrow_language(au.complement(aut, limit), limit)


def delta2_paths(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> dict:
    """Three independent answers to the Δ₂ question.

    ``clopen``: FO² and alphabetically clopen.  ``r_condition``: DA and
    the R-class condition.  ``arrow``: DA and both the language and its
    complement are arrow languages (checked on automata).
    """
    ctx = syntactic_context(aut, limit)
    da = ctx.monoid.is_in_DA()
    return {
        "clopen": da and is_open_alphabetic(ctx) and is_closed_alphabetic(aut, limit),
        "r_condition": is_delta2(ctx),
        "arrow": da and both_arrow_languages(aut, limit),
    }


# -- level one -------------------------------------------------------------


def level_one(lang, aut: au.ExtBuchiAutomaton | None = None, limit: int = DEFAULT_LIMIT):
    """``(sigma1, pi1, bsigma1)``."""
    ctx = _ctx(lang)
    if aut is None:
        aut = ctx.language
    M = ctx.monoid
    sigma1 = M.satisfies_x_leq_one() and is_open_cantor(ctx)
    pi1 = M.satisfies_x_geq_one() and is_open_cantor(ctx.complement())
    bsigma1 = M.is_J_trivial() and is_open_alphabetic(ctx) and is_closed_alphabetic(aut, limit)
    return sigma1, pi1, bsigma1


# -- reports -----------------------------------------------------------------


def classify(
    aut: au.ExtBuchiAutomaton,
    witness: bool = False,
    limit: int = DEFAULT_LIMIT,
    max_degree: int = 3,
    language: str | None = None,
) -> FragmentReport:
    ctx = syntactic_context(aut, limit)
    comp = ctx.complement()
    M = ctx.monoid
    why_sigma2 = sigma2_violation(ctx)
    why_pi2 = sigma2_violation(comp)
    why_fo2 = fo2_violation(ctx)
    opened = is_open_alphabetic(ctx)
    closed = is_closed_alphabetic(aut, limit)
    sigma2, pi2, fo2 = why_sigma2 is None, why_pi2 is None, why_fo2 is None
    sigma1 = M.satisfies_x_leq_one() and is_open_cantor(ctx)
    pi1 = M.satisfies_x_geq_one() and is_open_cantor(comp)
    jt = M.is_J_trivial()
    flags = {
        "sigma1": sigma1,
        "pi1": pi1,
        "bsigma1": jt and opened and closed,
        "sigma2": sigma2,
        "pi2": pi2,
        "delta2": sigma2 and pi2,
        "fo2": fo2,
        "fo2_sigma2": fo2 and sigma2,
        "fo2_pi2": fo2 and pi2,
    }
    witnesses = {}
    if witness:
        if why_sigma2:
            witnesses["sigma2"] = why_sigma2
        if why_pi2:
            witnesses["pi2"] = "complement: " + why_pi2
        if why_fo2:
            witnesses["fo2"] = why_fo2
        if not sigma1:
            witnesses["sigma1"] = "order is not x <= 1" if not M.satisfies_x_leq_one() else "not open in the Cantor topology"
        if not pi1:
            witnesses["pi1"] = "order is not x >= 1" if not M.satisfies_x_geq_one() else "not closed in the Cantor topology"
        if not flags["bsigma1"]:
            witnesses["bsigma1"] = "monoid is not J-trivial" if not jt else "not clopen in the alphabetic topology"
        if sigma2 and len(aut.alphabet) <= 3:
            from .polynomials import synthesize_polynomial

            try:
                poly = synthesize_polynomial(aut, max_degree, require_unambiguous=fo2, limit=limit)
            except Exception:  # noqa: BLE001 - the polynomial is a best-effort extra
                poly = None
            if poly is not None:
                witnesses["fo2_sigma2" if fo2 else "sigma2_polynomial"] = str(poly)
    return FragmentReport(flags, witnesses, aut.alphabet, M.size, language)


def classify_relative(aut: au.ExtBuchiAutomaton, letters, limit: int = DEFAULT_LIMIT) -> bool:
    """Whether ``L ∩ S^im`` is FO²-definable."""
    return is_fo2(syntactic_context(au.restrict_im(aut, letters), limit))


def _omega_pairs(ctx: SyntacticContext):
    unit = ctx.monoid.unit
    return [p for p in ctx.linked_pairs() if p[1] != unit or ctx.unit_has_nonempty]


def delta2_omega(aut: au.ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    """Whether an ω-language is the infinite part of some Δ₂ language."""
    if not au.is_empty(au.finite_part(aut)):
        raise PreconditionError("delta2_omega expects a language without finite words")
    ctx = syntactic_context(aut, limit)
    if not ctx.monoid.is_in_DA():
        return False
    pairs = _omega_pairs(ctx)
    algebraic = _r_condition_violation(ctx, pairs) is None
    classes = sorted({s for s, e in pairs if ctx.table[(s, e)]})
    w = ctx.saturated(classes, [])
    det = au.equivalent(aut, au.infinite_part(au.arrow(w)), limit)
    if algebraic != det:
        raise AssertionError("R-class condition and arrow reconstruction disagree")
    return det


__all__ = [
    "FLAGS",
    "FragmentReport",
    "arrow_pair_property",
    "both_arrow_languages",
    "classify",
    "classify_relative",
    "delta2_omega",
    "delta2_paths",
    "delta2_violation",
    "fo2_violation",
    "is_arrow_language",
    "is_delta2",
    "is_fo2",
    "is_pi2",
    "is_sigma2",
    "is_sigma2_topological",
    "level_one",
    "sigma2_violation",
]
