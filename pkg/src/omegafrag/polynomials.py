"""Monomials ``A₁* a₁ ⋯ A_k* a_k A_{k+1}^∞`` and their finite unions.

Text form of a monomial: ``[ {a,b}a {}b {a,b,c}^oo & IM{a} ]``.  Each
``{A}x`` is a block ``A* x``; the tail is ``{T}^oo`` (``T^∞``) or
``{T}^*`` (``T*``); ``& IM{B}`` restricts to words with ``im = B``.
Polynomials join monomials with ``|``; the empty polynomial is ``{}``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import product

from . import automata as au
from .errors import ParseError, PreconditionError, ResourceLimitError
from .profiles import DEFAULT_LIMIT
from .syntactic import syntactic_context
from .words import Alphabet, UPWord

INF, FIN = "inf", "fin"


def _letters(xs) -> str:
    return "".join(sorted(xs))


def _fmt_set(xs) -> str:
    return "{" + ",".join(sorted(xs)) + "}"


@dataclass(frozen=True)
class Monomial:
    alphabet: str
    blocks: tuple = ()
    tail: frozenset = frozenset()
    tail_kind: str = INF
    im: frozenset | None = None

    def __post_init__(self):
        alpha = Alphabet(self.alphabet)
        blocks = tuple((frozenset(a), x) for a, x in self.blocks)
        object.__setattr__(self, "alphabet", str(alpha))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "tail", frozenset(self.tail))
        if self.im is not None:
            object.__setattr__(self, "im", frozenset(self.im))
        used = set(self.tail) | set(self.im or ())
        for a, x in blocks:
            used |= a | {x}
        if not used <= set(alpha):
            raise PreconditionError(f"letters {_letters(used - set(alpha))} are not in the alphabet")
        if self.tail_kind not in (INF, FIN):
            raise PreconditionError(f"unknown tail kind {self.tail_kind!r}")
        if self.im is not None and not self.im <= self.tail:
            raise PreconditionError("the im restriction must be a subset of the tail letters")

    @property
    def degree(self) -> int:
        return len(self.blocks)

    def __str__(self):
        parts = [f"{_fmt_set(a)}{x}" for a, x in self.blocks]
        parts.append(_fmt_set(self.tail) + ("^oo" if self.tail_kind == INF else "^*"))
        if self.im is not None:
            parts.append("& IM" + _fmt_set(self.im))
        return "[ " + " ".join(parts) + " ]"

    def contains(self, word) -> bool:
        """Membership of a finite word or a :class:`UPWord`."""
        k = self.degree
        if isinstance(word, UPWord):
            if self.tail_kind == FIN or not set(word.period) <= self.tail:
                return False
            if self.im is not None and word.letters_at_infinity() != self.im:
                return False
            states = self._run(word.prefix + word.period * (k + 1))
            return k in states
        if self.im:
            return False
        return k in self._run(word)

    def _run(self, word):
        k = self.degree
        states = {0}
        for c in word:
            nxt = set()
            for i in states:
                if i < k:
                    a, x = self.blocks[i]
                    if c in a:
                        nxt.add(i)
                    if c == x:
                        nxt.add(i + 1)
                elif c in self.tail:
                    nxt.add(i)
            states = nxt
            if not states:
                break
        return states


@dataclass(frozen=True)
class Polynomial:
    alphabet: str
    monomials: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "monomials", tuple(self.monomials))
        for m in self.monomials:
            if m.alphabet != self.alphabet:
                raise PreconditionError("all monomials of a polynomial must share the alphabet")

    def __str__(self):
        if not self.monomials:
            return "{}"
        return " | ".join(str(m) for m in self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __len__(self):
        return len(self.monomials)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.monomials), default=0)

    def contains(self, word) -> bool:
        return any(m.contains(word) for m in self.monomials)


# -- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\{[a-z,\s]*\}|\^oo|\^\*|&|IM|\[|\]|\||[a-z])")


def _tokens(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", len(text) - len(text[pos:].lstrip()))
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def _set(tok):
    return frozenset(c for c in tok[1:-1] if c.isalpha())


def parse_polynomial(text: str, alphabet) -> Polynomial:
    alphabet = str(Alphabet(alphabet))
    toks = _tokens(text)
    if len(toks) == 1 and toks[0][0].startswith("{") and not _set(toks[0][0]):
        return Polynomial(alphabet, ())
    monos, i = [], 0

    def need(what):
        nonlocal i
        if i >= len(toks):
            raise ParseError(f"expected {what} at end of input", len(text))
        tok, pos = toks[i]
        i += 1
        return tok, pos

    while True:
        tok, pos = need("'['")
        if tok != "[":
            raise ParseError(f"expected '[' but found {tok!r}", pos)
        blocks = []
        while True:
            tok, pos = need("a letter set")
            if not tok.startswith("{"):
                raise ParseError(f"expected a letter set but found {tok!r}", pos)
            letters = _set(tok)
            nxt, npos = need("a letter or a tail marker")
            if nxt in ("^oo", "^*"):
                tail, kind = letters, INF if nxt == "^oo" else FIN
                break
            if len(nxt) != 1 or not nxt.isalpha():
                raise ParseError(f"expected a letter but found {nxt!r}", npos)
            blocks.append((letters, nxt))
        im = None
        tok, pos = need("']'")
        if tok == "&":
            kw, kpos = need("IM")
            if kw != "IM":
                raise ParseError(f"expected IM but found {kw!r}", kpos)
            st, spos = need("a letter set")
            if not st.startswith("{"):
                raise ParseError(f"expected a letter set but found {st!r}", spos)
            im = _set(st)
            tok, pos = need("']'")
        if tok != "]":
            raise ParseError(f"expected ']' but found {tok!r}", pos)
        try:
            monos.append(Monomial(alphabet, tuple(blocks), tail, kind, im))
        except PreconditionError as exc:
            raise ParseError(str(exc), pos) from exc
        if i == len(toks):
            return Polynomial(alphabet, tuple(monos))
        tok, pos = need("'|'")
        if tok != "|":
            raise ParseError(f"expected '|' but found {tok!r}", pos)


def parse_monomial(text: str, alphabet) -> Monomial:
    poly = parse_polynomial(text, alphabet)
    if len(poly) != 1:
        raise ParseError("expected exactly one monomial", 0)
    return poly.monomials[0]


# -- automata ------------------------------------------------------------------


def _plain_automaton(m: Monomial) -> au.ExtBuchiAutomaton:
    k = m.degree
    trans = set()
    for i, (a, x) in enumerate(m.blocks):
        trans |= {(i, c, i) for c in a}
        trans.add((i, x, i + 1))
    trans |= {(k, c, k) for c in m.tail}
    rep = {k} if m.tail_kind == INF and m.tail else set()
    return au.ExtBuchiAutomaton(m.alphabet, k + 1, {0}, trans, {k}, rep)


def monomial_to_automaton(m: Monomial) -> au.ExtBuchiAutomaton:
    aut = _plain_automaton(m)
    if m.im is not None:
        aut = au.restrict_im(aut, m.im)
    return aut


def polynomial_to_automaton(p: Polynomial) -> au.ExtBuchiAutomaton:
    return au.union_all(p.alphabet, [monomial_to_automaton(m) for m in p.monomials])


def ambiguity_witness(m: Monomial):
    """A shortest word of ``m`` with two factorizations, or ``None``."""
    k = m.degree
    plain = _plain_automaton(m)
    ids = {}
    trans = set()
    stack = [(0, 0, 0)]
    ids[(0, 0, 0)] = 0
    while stack:
        i, j, d = stack.pop()
        for c in m.alphabet:
            for i2 in plain.succ[i].get(c, ()):
                for j2 in plain.succ[j].get(c, ()):
                    nd = d or int(i2 != j2)
                    key = (i2, j2, nd)
                    if key not in ids:
                        ids[key] = len(ids)
                        stack.append(key)
                    trans.add((ids[(i, j, d)], c, ids[key]))
    goal = ids.get((k, k, 1))
    if goal is None:
        return None
    final = {goal}
    rep = {goal} if m.tail_kind == INF and m.tail else set()
    pair = au.ExtBuchiAutomaton(m.alphabet, len(ids), {0}, trans, final, rep)
    if m.im is not None:
        pair = au.restrict_im(pair, m.im)
    return au.find_word(pair)


def is_unambiguous(m: Monomial) -> bool:
    return ambiguity_witness(m) is None


def monomial_closure(m: Monomial) -> Polynomial:
    """Alphabetic closure of a monomial, term by term.

    Without an im restriction the monomial is the union of its
    restrictions to every ``B ⊆ tail`` and the closures are unioned.
    """
    if m.tail_kind == FIN:
        m = Monomial(m.alphabet, m.blocks, m.tail, INF, frozenset())
    bs = [m.im] if m.im is not None else [frozenset(b) for b in _subsets(sorted(m.tail))]
    k = m.degree
    tails = [a for a, _ in m.blocks] + [m.tail]
    terms = []
    for b in bs:
        for i in range(k + 1):
            need = {x for _, x in m.blocks[i:]} | b
            top = tails[i]
            if not need <= top:
                continue
            free = sorted(top - need)
            for extra in _subsets(free):
                terms.append(Monomial(m.alphabet, m.blocks[:i], top, INF, frozenset(need | set(extra))))
    return Polynomial(m.alphabet, tuple(dict.fromkeys(terms)))


def _subsets(xs):
    xs = list(xs)
    for mask in range(1 << len(xs)):
        yield [x for i, x in enumerate(xs) if mask >> i & 1]


def is_closed_unambiguous_monomial(m: Monomial) -> bool:
    """No index ``i`` with ``{a_i, …, a_k} ⊆ A_i``."""
    if m.im is not None:
        raise PreconditionError("the monomial must not carry an im restriction")
    if not is_unambiguous(m):
        raise PreconditionError(f"monomial {m} is ambiguous")
    for i, (a, _) in enumerate(m.blocks):
        if {x for _, x in m.blocks[i:]} <= a:
            return False
    return True


def is_closed_restricted_monomial(m: Monomial) -> bool:
    """No index ``i`` with ``B ⊆ {a_i, …, a_k} ⊆ A_i``, for ``B`` the im restriction.

    When ``B`` is a proper subset of the tail letters the monomial is never
    closed: words ending in ``B``-loops interleaved with further tail letters
    converge to words with a larger im set.
    """
    if m.im is None:
        raise PreconditionError("the monomial needs an im restriction")
    b = m.im
    for i, (a, _) in enumerate(m.blocks):
        if not a <= {x for _, x in m.blocks[i:]}:
            raise PreconditionError(f"block {i + 1} letter set exceeds the remaining marker letters")
    if not is_unambiguous(m):
        raise PreconditionError(f"monomial {m} is ambiguous")
    if b != m.tail:
        return False
    for i, (a, _) in enumerate(m.blocks):
        rest = {x for _, x in m.blocks[i:]}
        if b <= rest <= a:
            return False
    return True


# -- synthesis -------------------------------------------------------------------


class _Inclusion:
    """Decides ``P ⊆ L`` for monomials ``P`` on the syntactic monoid of ``L``."""

    def __init__(self, ctx):
        self.ctx = ctx
        M = ctx.monoid
        self.T = M.table
        self.gen = {a: M.generators[a] for a in ctx.alphabet}
        self.unit = M.unit
        self.n = M.size
        self._closure = {}
        self._verdict = {}
        self._idem = {}

    def close(self, mask, letters):
        """``mask`` times the image of ``letters*``."""
        key = (mask, letters)
        hit = self._closure.get(key)
        if hit is not None:
            return hit
        out, todo = mask, [s for s in range(self.n) if mask >> s & 1]
        while todo:
            s = todo.pop()
            for c in letters:
                t = self.T[s][self.gen[c]]
                if not out >> t & 1:
                    out |= 1 << t
                    todo.append(t)
        self._closure[key] = out
        return out

    def step(self, mask, letters, x):
        out = 0
        g = self.gen[x]
        closed = self.close(mask, letters)
        for s in range(self.n):
            if closed >> s & 1:
                out |= 1 << self.T[s][g]
        return out

    def idempotents(self, letters):
        """Idempotents in the image of ``letters⁺``."""
        if letters not in self._idem:
            plus = 0
            for c in letters:
                plus |= self.close(1 << self.gen[c], letters)
            self._idem[letters] = [e for e in range(self.n) if plus >> e & 1 and self.T[e][e] == e]
        return self._idem[letters]

    def tail_ok(self, mask, tail):
        key = (mask, tail)
        hit = self._verdict.get(key)
        if hit is not None:
            return hit
        ctx = self.ctx
        reach = self.close(mask, tail)
        ok = True
        for s in range(self.n):
            if not reach >> s & 1:
                continue
            if not ctx.fin[s]:
                ok = False
                break
            if any(not ctx.table[(self.T[s][e], e)] for e in self.idempotents(tail)):
                ok = False
                break
        self._verdict[key] = ok
        return ok


def _level(alphabet, k):
    """Degree-``k`` monomials with infinite tails, larger letter sets first."""
    subsets = sorted((_letters(s) for s in Alphabet(alphabet).subsets()), key=lambda s: (-len(s), s))
    blocks = [(s, x) for s in subsets for x in alphabet]
    level = []
    for combo in product(blocks, repeat=k):
        for tail in subsets:
            mass = sum(len(s) for s, _ in combo) + len(tail)
            level.append((-mass, combo, tail))
    level.sort()
    return [(combo, tail) for _, combo, tail in level]


def _short_words(alphabet, bound):
    """Finite words, then lassos ``u v^ω``, with total length at most ``bound``."""
    for n in range(bound + 1):
        for w in product(alphabet, repeat=n):
            yield "".join(w)
    seen = set()
    for n in range(1, bound + 1):
        for p in range(n):
            for u in product(alphabet, repeat=p):
                for v in product(alphabet, repeat=n - p):
                    w = UPWord("".join(u), "".join(v))
                    if w not in seen:
                        seen.add(w)
                        yield w


def uncovered_word(aut: au.ExtBuchiAutomaton, monomials):
    """A word of L(aut) lying in none of the (unrestricted) ``monomials``, or ``None``.

    The union of the monomials is determinized by a subset construction,
    which stays small because each monomial automaton is a chain.  An
    infinite word avoids a monomial with tail ``T`` exactly when its set
    of letters at infinity is not inside ``T`` or the last chain state
    eventually leaves the subset for good.
    """
    aut = au.reduce(aut)
    alphabet = aut.alphabet
    delta = {c: [] for c in alphabet}
    last_bits, tails, offset = [], [], 0
    for m in monomials:
        if m.im is not None:
            raise PreconditionError("coverage is only decided for monomials without im restriction")
        k = m.degree
        for i in range(k + 1):
            for c in alphabet:
                out = 0
                if i < k:
                    a, x = m.blocks[i]
                    if c in a:
                        out |= 1 << (offset + i)
                    if c == x:
                        out |= 1 << (offset + i + 1)
                elif c in m.tail and m.tail_kind == INF:
                    out |= 1 << (offset + i)
                delta[c].append(out)
        last_bits.append(1 << (offset + k))
        tails.append(m.tail if m.tail_kind == INF else frozenset())
        offset += k + 1
    start_set = 0
    pos = 0
    for m in monomials:
        start_set |= 1 << pos
        pos += m.degree + 1
    finals = 0
    for bit in last_bits:
        finals |= bit

    def step(S, c):
        out, row, i = 0, delta[c], 0
        while S:
            if S & 1:
                out |= row[i]
            S >>= 1
            i += 1
        return out

    ids, nodes, parent, edges = {}, [], [], []
    queue = deque()
    for q in sorted(aut.initial):
        key = (q, start_set)
        if key not in ids:
            ids[key] = len(nodes)
            nodes.append(key)
            parent.append(None)
            edges.append([])
            queue.append(key)
    while queue:
        q, S = queue.popleft()
        src = ids[(q, S)]
        if q in aut.final and not S & finals:
            word = []
            node = src
            while parent[node] is not None:
                node, c = parent[node]
                word.append(c)
            return "".join(reversed(word))
        for c in alphabet:
            S2 = step(S, c)
            for q2 in sorted(aut.succ[q].get(c, ())):
                key = (q2, S2)
                if key not in ids:
                    ids[key] = len(nodes)
                    nodes.append(key)
                    parent.append((src, c))
                    edges.append([])
                    queue.append(key)
                edges[src].append((c, ids[key]))

    def prefix(node):
        word = []
        while parent[node] is not None:
            node, c = parent[node]
            word.append(c)
        return "".join(reversed(word))

    n = len(nodes)
    for size in range(1, len(alphabet) + 1):
        for letters in sorted(s for s in Alphabet(alphabet).subsets() if len(s) == size):
            blocked = 0
            for bit, t in zip(last_bits, tails):
                if set(letters) <= t:
                    blocked |= bit
            ok = [not nodes[v][1] & blocked for v in range(n)]
            succ_sets = [
                {w for c, w in edges[v] if c in letters and ok[w]} if ok[v] else set() for v in range(n)
            ]
            comp = au._sccs(n, succ_sets)
            members = {}
            for v in range(n):
                if ok[v]:
                    members.setdefault(comp[v], []).append(v)
            for cid in sorted(members, key=lambda c: min(members[c])):
                group = set(members[cid])
                inner = [(v, c, w) for v in sorted(group) for c, w in edges[v] if c in letters and w in group]
                if set(letters) - {c for _, c, _ in inner}:
                    continue
                reps = [v for v in sorted(group) if nodes[v][0] in aut.repeated]
                if not reps:
                    continue
                r = reps[0]
                return UPWord(prefix(r), _tour(r, letters, inner))
    return None


def _tour(r, letters, inner):
    """A cycle from ``r`` inside one component using every letter of ``letters``."""
    adj = {}
    for v, c, w in inner:
        adj.setdefault(v, []).append((c, w))

    def path(a, b):
        if a == b:
            return ""
        seen = {a: ""}
        queue = deque([a])
        while queue:
            v = queue.popleft()
            for c, w in adj.get(v, ()):
                if w not in seen:
                    seen[w] = seen[v] + c
                    if w == b:
                        return seen[w]
                    queue.append(w)
        raise AssertionError("component is not strongly connected")

    word, here = "", r
    for x in letters:
        v, c, w = next(e for e in inner if e[1] == x)
        word += path(here, v) + c
        here = w
    word += path(here, r)
    return word


def synthesize_polynomial(
    aut: au.ExtBuchiAutomaton,
    max_degree: int = 3,
    require_unambiguous: bool = False,
    limit: int = DEFAULT_LIMIT,
    probe_length: int = 6,
) -> Polynomial | None:
    """A polynomial of degree at most ``max_degree`` equal to L(aut), or ``None``.

    Candidates are monomials contained in L, decided on the syntactic
    monoid.  Uncovered words of L are found first among short words and
    then by an exact automaton comparison; each is covered by the first
    candidate containing it.  ``None`` only means that no polynomial
    within the degree bound exists.
    """
    alphabet = aut.alphabet
    if len(alphabet) > 3 or max_degree > 3:
        raise ResourceLimitError("synthesis is limited to alphabets of at most 3 letters and degree at most 3")
    ctx = syntactic_context(aut, limit)
    inc = _Inclusion(ctx)
    prefix_cache = {(): 1 << inc.unit}

    def prefix_mask(combo):
        if combo not in prefix_cache:
            s, x = combo[-1]
            prefix_cache[combo] = inc.step(prefix_mask(combo[:-1]), s, x)
        return prefix_cache[combo]

    def included_level(k):
        out = []
        for combo, tail in _level(alphabet, k):
            mask = prefix_mask(combo)
            if mask and inc.tail_ok(mask, tail):
                out.append(Monomial(alphabet, tuple((frozenset(s), x) for s, x in combo), frozenset(tail), INF))
        return out

    def in_language(w):
        if isinstance(w, UPWord):
            return ctx.omega(ctx.morphism.apply(w.prefix), ctx.morphism.apply(w.period))
        return ctx.fin[ctx.morphism.apply(w)]

    included, degree = included_level(0), 0
    ambiguous = {}

    def cover(w):
        nonlocal included, degree
        while True:
            for m in included:
                if not m.contains(w):
                    continue
                if require_unambiguous:
                    if m not in ambiguous:
                        ambiguous[m] = not is_unambiguous(m)
                    if ambiguous[m]:
                        continue
                return m
            if degree == max_degree:
                return None
            degree += 1
            included = included + included_level(degree)

    chosen = []
    probes = [w for w in _short_words(alphabet, probe_length) if in_language(w)]
    for w in probes:
        if any(m.contains(w) for m in chosen):
            continue
        m = cover(w)
        if m is None:
            return None
        chosen.append(m)
    while True:
        w = uncovered_word(aut, chosen)
        if w is None:
            return Polynomial(alphabet, tuple(_drop_redundant(aut, chosen)))
        m = cover(w)
        if m is None:
            return None
        chosen.append(m)


def _drop_redundant(aut, chosen):
    """Remove monomials, earliest first, that the remaining ones already cover."""
    kept = list(chosen)
    for m in list(chosen):
        rest = [x for x in kept if x is not m]
        if rest and uncovered_word(aut, rest) is None:
            kept = rest
    return kept


__all__ = [
    "FIN",
    "INF",
    "Monomial",
    "Polynomial",
    "ambiguity_witness",
    "is_closed_restricted_monomial",
    "is_closed_unambiguous_monomial",
    "is_unambiguous",
    "monomial_closure",
    "monomial_to_automaton",
    "parse_monomial",
    "parse_polynomial",
    "polynomial_to_automaton",
    "synthesize_polynomial",
    "uncovered_word",
]
