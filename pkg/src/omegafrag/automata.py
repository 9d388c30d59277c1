"""Extended Büchi automata over finite and infinite words.

An automaton has two acceptance sets: ``final`` states accept finite
words (some run ends there) and ``repeated`` states accept infinite words
(some run visits them infinitely often).  States are ``0 .. n-1``.
All values are immutable; every operation returns a new automaton.
"""

from __future__ import annotations

from collections import deque
import operator
from dataclasses import dataclass, field, replace
from functools import cached_property

from .errors import AlphabetMismatchError, ParseError, ResourceLimitError
from .profiles import DEFAULT_LIMIT, ProfileMonoid, accepts_up, bits, syntactic_data
from .words import UPWord, check_word


@dataclass(frozen=True)
class ExtBuchiAutomaton:
    alphabet: str
    n: int
    initial: frozenset
    transitions: frozenset
    final: frozenset
    repeated: frozenset
    # zero-argument callable giving a saturating Recognizer (or None); speeds up complement
    recognizer: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for name in ("initial", "final", "repeated", "transitions"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))
        for q in self.initial | self.final | self.repeated:
            if not 0 <= q < self.n:
                raise ValueError(f"state {q} out of range 0..{self.n - 1}")
        for p, a, q in self.transitions:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise ValueError(f"transition ({p},{a},{q}) references an undeclared state")
            if a not in self.alphabet:
                raise AlphabetMismatchError(f"transition letter {a!r} not in alphabet {self.alphabet!r}")

    @cached_property
    def delta_masks(self) -> dict:
        out = {a: [0] * self.n for a in self.alphabet}
        for p, a, q in self.transitions:
            out[a][p] |= 1 << q
        return out

    @cached_property
    def succ(self) -> list:
        out = [dict() for _ in range(self.n)]
        for p, a, q in sorted(self.transitions):
            out[p].setdefault(a, []).append(q)
        return out

    def mask(self, states) -> int:
        m = 0
        for q in states:
            m |= 1 << q
        return m

    def __repr__(self):
        return (
            f"ExtBuchiAutomaton(alphabet={self.alphabet!r}, states={self.n}, "
            f"transitions={len(self.transitions)})"
        )


def _same_alphabet(*auts):
    first = auts[0].alphabet
    for a in auts[1:]:
        if a.alphabet != first:
            raise AlphabetMismatchError(f"alphabets differ: {first!r} vs {a.alphabet!r}")
    return first


# --- basic languages --------------------------------------------------------

def empty_language(alphabet: str) -> ExtBuchiAutomaton:
    return ExtBuchiAutomaton(alphabet, 1, {0}, (), (), ())


def universal(alphabet: str, finite: bool = True, infinite: bool = True) -> ExtBuchiAutomaton:
    """Γ^∞, or Γ* / Γ^ω when one of the flags is off."""
    return ExtBuchiAutomaton(
        alphabet, 1, {0}, {(0, a, 0) for a in alphabet}, {0} if finite else (), {0} if infinite else ()
    )


def from_words(alphabet: str, words) -> ExtBuchiAutomaton:
    """Automaton for a finite set of finite words (a trie)."""
    trans, final = set(), set()
    nodes = {"": 0}
    for w in words:
        check_word(w, alphabet)
        for i in range(len(w)):
            src, dst = w[:i], w[: i + 1]
            if dst not in nodes:
                nodes[dst] = len(nodes)
            trans.add((nodes[src], w[i], nodes[dst]))
        final.add(nodes[w])
    return ExtBuchiAutomaton(alphabet, len(nodes), {0}, trans, final, ())


# --- membership -------------------------------------------------------------

def member(aut: ExtBuchiAutomaton, word) -> bool:
    """Exact membership of a finite word (``str``) or a :class:`UPWord`."""
    if isinstance(word, UPWord):
        check_word(word.prefix + word.period, aut.alphabet)
        return accepts_up(aut, word.prefix, word.period)
    check_word(word, aut.alphabet)
    cur = aut.mask(aut.initial)
    dm = aut.delta_masks
    for a in word:
        nxt = 0
        for q in bits(cur):
            nxt |= dm[a][q]
        cur = nxt
    return bool(cur & aut.mask(aut.final))


# --- saturating recognizers -------------------------------------------------

class Recognizer:
    """A morphism onto a finite monoid that saturates a language.

    ``table`` is the multiplication table, ``right[m][i]`` is ``m`` times
    the ``i``-th letter and ``words[m]`` a word of class ``m``.
    ``fin[m]`` tells whether the finite words of class ``m`` are in the
    language and ``val[(s, e)]`` whether ``[s][e]^ω`` is, for every linked
    pair.  Saturation makes the complement a matter of negating both tables.
    """

    def __init__(self, table, right, unit, words, fin, val):
        self.table = table
        self.right = right
        self.unit = unit
        self.words = words
        self.fin = list(fin)
        self.val = dict(val)

    @cached_property
    def idempotent_of(self) -> list:
        out = []
        t = self.table
        for m in range(len(t)):
            p = m
            while t[p][p] != p:
                p = t[p][m]
            out.append(p)
        return out

    def omega_at(self, m: int, f: int) -> bool:
        """Whether ``[m][f]^ω`` is inside, for ``f`` idempotent."""
        return self.val[(self.table[m][f], f)]

    def negated(self) -> "Recognizer":
        return Recognizer(
            self.table, self.right, self.unit, self.words, [not x for x in self.fin], {p: not v for p, v in self.val.items()}
        )

    def automaton(self, alphabet: str) -> "ExtBuchiAutomaton":
        fin = [m for m, x in enumerate(self.fin) if x]
        pieces = [p for p, v in self.val.items() if v]
        aut = saturated_automaton(alphabet, self.right, self.unit, fin, pieces)
        return replace(aut, recognizer=lambda: self)

    def combine(self, other: "Recognizer", op, alphabet: str, limit: int):
        """Minimal recognizer of ``op`` applied to both languages; ``None`` past ``limit``.

        The product monoid is explored from the unit and immediately
        divided by the coarsest congruence that keeps membership of
        finite words and of ω-blocks.
        """
        A, B = self, other
        start = (A.unit, B.unit)
        index = {start: 0}
        pairs, right = [start], []
        pos = 0
        while pos < len(pairs):
            m, k = pairs[pos]
            row = []
            for i in range(len(alphabet)):
                nxt = (A.right[m][i], B.right[k][i])
                if nxt not in index:
                    if len(pairs) >= limit:
                        return None
                    index[nxt] = len(pairs)
                    pairs.append(nxt)
                row.append(index[nxt])
            right.append(row)
            pos += 1
        letters = [pairs[right[0][i]] for i in range(len(alphabet))]
        left = [[index[(A.table[x][m], B.table[y][k])] for x, y in letters] for m, k in pairs]
        ia, ib = A.idempotent_of, B.idempotent_of
        idems = [p for p in pairs if A.table[p[0]][p[0]] == p[0] and B.table[p[1]][p[1]] == p[1]]
        col = {p: j for j, p in enumerate(idems)}
        fin = [op(A.fin[m], B.fin[k]) for m, k in pairs]
        # membership of [m][f]^ω for every product idempotent f
        a_parts = [
            (fin[i],) + tuple(op(A.omega_at(m, f1), B.omega_at(k, f2)) for f1, f2 in idems)
            for i, (m, k) in enumerate(pairs)
        ]
        distinct = {}
        a_ids = [distinct.setdefault(ap, len(distinct)) for ap in a_parts]
        # membership of x·[m]^ω over all x, grouped by the classes of x above
        masks = {f: sum(1 << d for ap, d in distinct.items() if ap[1 + col[f]]) for f in idems}
        keys = [(a_ids[i], masks[(ia[m], ib[k])]) for i, (m, k) in enumerate(pairs)]
        block = _refine_congruence(keys, right, left)
        size = max(block) + 1
        reps = [None] * size
        for i, c in enumerate(block):
            if reps[c] is None:
                reps[c] = i
        words = _bfs_words(right, alphabet)
        q_right = [[block[right[reps[c]][i]] for i in range(len(alphabet))] for c in range(size)]
        q_table = []
        for c in range(size):
            m, k = pairs[reps[c]]
            q_table.append([block[index[(A.table[m][pairs[reps[d]][0]], B.table[k][pairs[reps[d]][1]])]] for d in range(size)])
        val = {}
        for e in range(size):
            if q_table[e][e] != e:
                continue
            m, k = pairs[reps[e]]
            f1, f2 = ia[m], ib[k]
            for s_ in range(size):
                if q_table[s_][e] == s_:
                    x, y = pairs[reps[s_]]
                    val[(s_, e)] = op(A.omega_at(x, f1), B.omega_at(y, f2))
        return Recognizer(q_table, q_right, block[0], [words[r] for r in reps], [fin[r] for r in reps], val)


def _bfs_words(right, alphabet):
    words = [None] * len(right)
    words[0] = ""
    queue = deque([0])
    while queue:
        m = queue.popleft()
        for i, a in enumerate(alphabet):
            t = right[m][i]
            if words[t] is None:
                words[t] = words[m] + a
                queue.append(t)
    return words


def _refine_congruence(keys, right, left):
    """Coarsest partition inside ``keys`` stable under left and right letters."""
    ids = {}
    block = [ids.setdefault(k, len(ids)) for k in keys]
    while True:
        ids = {}
        new = [
            ids.setdefault((block[m],) + tuple(block[t] for t in right[m]) + tuple(block[t] for t in left[m]), len(ids))
            for m in range(len(keys))
        ]
        if len(ids) == max(block) + 1:
            return new
        block = new


def content_recognizer(alphabet: str, fin: bool, accepts, limit: int = DEFAULT_LIMIT):
    """Recognizer on the monoid of letter sets: ``accepts(S)`` decides ``[·][S]^ω`` blocks."""
    k = len(alphabet)
    if 2**k > limit:
        return None
    right = [[m | (1 << i) for i in range(k)] for m in range(2**k)]
    table = [[m | x for x in range(2**k)] for m in range(2**k)]
    words = ["".join(a for i, a in enumerate(alphabet) if m >> i & 1) for m in range(2**k)]
    val = {}
    for e in range(2**k):
        for s_ in range(2**k):
            if s_ | e == s_:
                val[(s_, e)] = fin if e == 0 else accepts(frozenset(words[e]))
    return Recognizer(table, right, 0, words, [fin] * 2**k, val)


def _lazy_product(a, b, op, limit=DEFAULT_LIMIT):
    """Deferred product of saturating recognizers of ``a`` and ``b`` (a Recognizer for ``b`` is accepted too)."""
    cache = []

    def build():
        if not cache:
            try:
                ra = recognizer_of(a, limit)
                rb = b if isinstance(b, Recognizer) else recognizer_of(b, limit)
                cache.append(None if rb is None else ra.combine(rb, op, a.alphabet, limit))
            except ResourceLimitError:
                cache.append(None)
        return cache[0]

    return build


# --- boolean operations -----------------------------------------------------

def union(a: ExtBuchiAutomaton, b: ExtBuchiAutomaton) -> ExtBuchiAutomaton:
    _same_alphabet(a, b)
    k = a.n

    def shift(xs):
        return {x + k for x in xs}

    return ExtBuchiAutomaton(
        a.alphabet,
        a.n + b.n,
        set(a.initial) | shift(b.initial),
        set(a.transitions) | {(p + k, x, q + k) for p, x, q in b.transitions},
        set(a.final) | shift(b.final),
        set(a.repeated) | shift(b.repeated),
        _lazy_product(a, b, operator.or_),
    )


def union_all(alphabet: str, auts) -> ExtBuchiAutomaton:
    out = empty_language(alphabet)
    for x in auts:
        out = union(out, x)
    return reduce(out)


def intersect(a: ExtBuchiAutomaton, b: ExtBuchiAutomaton) -> ExtBuchiAutomaton:
    """Product automaton; a two-phase flag interleaves the Büchi conditions."""
    alphabet = _same_alphabet(a, b)
    ids = {}
    trans, final, rep = set(), set(), set()
    queue = deque()

    def state(p, q, ph):
        key = (p, q, ph)
        if key not in ids:
            ids[key] = len(ids)
            queue.append(key)
        return ids[key]

    init = {state(p, q, 0) for p in sorted(a.initial) for q in sorted(b.initial)}
    while queue:
        p, q, ph = queue.popleft()
        sid = ids[(p, q, ph)]
        if p in a.final and q in b.final:
            final.add(sid)
        if ph == 0 and p in a.repeated:
            rep.add(sid)
        if ph == 0:
            nph = 1 if p in a.repeated else 0
        else:
            nph = 0 if q in b.repeated else 1
        for x in alphabet:
            for p2 in a.succ[p].get(x, ()):
                for q2 in b.succ[q].get(x, ()):
                    trans.add((sid, x, state(p2, q2, nph)))
    if not ids:
        return empty_language(alphabet)
    out = trim(ExtBuchiAutomaton(alphabet, len(ids), init, trans, final, rep))
    return replace(out, recognizer=_lazy_product(a, b, operator.and_))


def recognizer_of(aut: ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> Recognizer:
    """A saturating recognizer: the attached one if available, else the syntactic one."""
    if aut.recognizer is not None:
        rec = aut.recognizer()
        if rec is not None:
            return rec
    aut = reduce(aut)
    pm = ProfileMonoid.of(aut, limit)
    data = syntactic_data(pm, aut.mask(aut.initial), aut.mask(aut.final))
    return Recognizer(data.table, data.right, data.unit, data.words(), data.fin, data.val)


def complement(aut: ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> ExtBuchiAutomaton:
    """Γ^∞ minus L(aut), assembled from classes of a saturating monoid."""
    return recognizer_of(aut, limit).negated().automaton(aut.alphabet)


def saturated_automaton(alphabet, right, unit, finite_classes, pieces) -> ExtBuchiAutomaton:
    """Automaton for a union of classes of a monoid given by its right Cayley table.

    ``right[m][i]`` is ``m`` times the ``i``-th letter.  The language is the
    union of ``[s]`` for ``s`` in ``finite_classes`` and of ``[s][e]^ω`` for
    ``(s, e)`` in ``pieces`` (``e`` idempotent).
    """
    k = len(right)
    trans = set()
    final = set(finite_classes)
    for m in range(k):
        for i, x in enumerate(alphabet):
            trans.add((m, x, right[m][i]))
    by_e = {}
    for s, e in pieces:
        by_e.setdefault(e, set()).add(s)
    initial = {unit}
    repeated = set()
    n = k
    for e in sorted(by_e):
        base = n
        start, acc = base + k, base + k + 1
        n = base + k + 2
        repeated.add(acc)
        for m in range(k):
            for i, x in enumerate(alphabet):
                t = right[m][i]
                trans.add((base + m, x, base + t))
                if t == e:
                    trans.add((base + m, x, acc))
        start_moves = set()
        for i, x in enumerate(alphabet):
            t = right[unit][i]
            start_moves.add((x, base + t))
            if t == e:
                start_moves.add((x, acc))
        for src in [start, acc] + [m for m in sorted(by_e[e])]:
            for x, dst in start_moves:
                trans.add((src, x, dst))
        if unit in by_e[e]:
            initial.add(start)
    return reduce(ExtBuchiAutomaton(alphabet, n, initial, trans, final, repeated))


# --- emptiness and witnesses ------------------------------------------------

def _sccs(n, succ_sets):
    """Tarjan's algorithm, iterative.  Returns component id per state."""
    index = [None] * n
    low = [0] * n
    on = [False] * n
    comp = [None] * n
    stack, counter, ncomp = [], 0, 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(succ_sets[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on[w] = True
                    work.append((w, iter(succ_sets[w])))
                    advanced = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _live_repeated(aut):
    """Repeated states lying on a cycle."""
    succ_sets = [set() for _ in range(aut.n)]
    for p, _, q in aut.transitions:
        succ_sets[p].add(q)
    comp = _sccs(aut.n, succ_sets)
    size = {}
    for c in comp:
        size[c] = size.get(c, 0) + 1
    return {
        q for q in aut.repeated if size[comp[q]] > 1 or q in succ_sets[q]
    }


def trim(aut: ExtBuchiAutomaton) -> ExtBuchiAutomaton:
    """Drop useless states and repeated marks that lie on no cycle."""
    live = _live_repeated(aut)
    fwd = _reachable(aut.n, aut.initial, [{q for qs in aut.succ[p].values() for q in qs} for p in range(aut.n)])
    pred = [set() for _ in range(aut.n)]
    for p, _, q in aut.transitions:
        pred[q].add(p)
    bwd = _reachable(aut.n, set(aut.final) | live, pred)
    keep = sorted(fwd & bwd)
    if not keep:
        return empty_language(aut.alphabet)
    ren = {q: i for i, q in enumerate(keep)}
    return ExtBuchiAutomaton(
        aut.alphabet,
        len(keep),
        {ren[q] for q in aut.initial if q in ren},
        {(ren[p], a, ren[q]) for p, a, q in aut.transitions if p in ren and q in ren},
        {ren[q] for q in aut.final if q in ren},
        {ren[q] for q in live if q in ren},
        aut.recognizer,
    )


def _reachable(n, start, succ_sets):
    seen = set(start)
    stack = list(start)
    while stack:
        p = stack.pop()
        for q in succ_sets[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def reduce(aut: ExtBuchiAutomaton) -> ExtBuchiAutomaton:
    """Trim, then merge forward-bisimilar states (language preserving)."""
    aut = trim(aut)
    block = [(q in aut.final, q in aut.repeated) for q in range(aut.n)]
    ids = {}
    block = [ids.setdefault(b, len(ids)) for b in block]
    while True:
        keys = []
        for q in range(aut.n):
            keys.append(
                (block[q],)
                + tuple(frozenset(block[t] for t in aut.succ[q].get(a, ())) for a in aut.alphabet)
            )
        ids = {}
        new = [ids.setdefault(k, len(ids)) for k in keys]
        if len(ids) == len(set(block)):
            break
        block = new
    if len(set(block)) == aut.n:
        return aut
    return ExtBuchiAutomaton(
        aut.alphabet,
        len(set(block)),
        {block[q] for q in aut.initial},
        {(block[p], a, block[q]) for p, a, q in aut.transitions},
        {block[q] for q in aut.final},
        {block[q] for q in aut.repeated},
        aut.recognizer,
    )


def find_word(aut: ExtBuchiAutomaton):
    """Some accepted word: the shortlex least finite one if any, else a lasso."""
    dist = {}
    start = sorted(aut.initial)
    queue = deque()
    for q in start:
        dist[q] = ""
        queue.append(q)
    while queue:
        p = queue.popleft()
        if p in aut.final:
            return dist[p]
        for a in aut.alphabet:
            for q in aut.succ[p].get(a, ()):
                if q not in dist:
                    dist[q] = dist[p] + a
                    queue.append(q)
    best = None
    for r in sorted(_live_repeated(aut)):
        if r not in dist:
            continue
        cyc = _shortest_cycle(aut, r)
        cand = (len(dist[r]) + len(cyc), dist[r], cyc)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return UPWord(best[1], best[2])


def _shortest_cycle(aut, r):
    seen = {}
    queue = deque()
    for a in aut.alphabet:
        for q in aut.succ[r].get(a, ()):
            if q == r:
                return a
            if q not in seen:
                seen[q] = a
                queue.append(q)
    while queue:
        p = queue.popleft()
        for a in aut.alphabet:
            for q in aut.succ[p].get(a, ()):
                if q == r:
                    return seen[p] + a
                if q not in seen:
                    seen[q] = seen[p] + a
                    queue.append(q)
    raise AssertionError("state is not on a cycle")


def is_empty(aut: ExtBuchiAutomaton) -> bool:
    return find_word(aut) is None


def _preference(word):
    if isinstance(word, UPWord):
        return (1, len(word.prefix) + len(word.period), word.prefix, word.period)
    return (0, len(word), word, "")


def counterexample(a: ExtBuchiAutomaton, b: ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT):
    """A word in exactly one of the two languages, or ``None`` if they are equal.

    Finite witnesses are preferred (shortlex least), otherwise a short lasso.
    """
    found = [w for w in (difference_witness(a, b, limit), difference_witness(b, a, limit)) if w is not None]
    return min(found, key=_preference) if found else None


def equivalent(a: ExtBuchiAutomaton, b: ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    return counterexample(a, b, limit) is None


def difference_witness(a: ExtBuchiAutomaton, b: ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT):
    """A word of L(a) outside L(b), or ``None`` when L(a) ⊆ L(b).

    Only ``b`` is complemented, so the cost is driven by the monoid of ``b``.
    """
    _same_alphabet(a, b)
    ra = a.recognizer() if a.recognizer is not None else None
    if ra is not None:
        return _product_witness(ra, recognizer_of(b, limit), lambda x, y: x and not y, a.alphabet, limit)
    a = reduce(a)
    if is_empty(a):
        return None
    return find_word(intersect(a, complement(reduce(b), limit)))


def _product_witness(A: Recognizer, B: Recognizer, op, alphabet: str, limit: int):
    """Preferred word whose memberships in both languages satisfy ``op``, or ``None``.

    Runs on the product of the two monoids, so no automaton is built.
    """
    start = (A.unit, B.unit)
    words = {start: ""}
    loop = {}  # shortest nonempty word of each product element
    order = [start]
    pos = 0
    while pos < len(order):
        m, k = order[pos]
        w = words[(m, k)]
        if op(A.fin[m], B.fin[k]):
            return w
        for i, x in enumerate(alphabet):
            nxt = (A.right[m][i], B.right[k][i])
            loop.setdefault(nxt, w + x)
            if nxt not in words:
                if len(order) >= limit:
                    raise ResourceLimitError(f"product monoid exceeds {limit} elements; raise the bound with --max-monoid")
                words[nxt] = w + x
                order.append(nxt)
        pos += 1
    ia, ib = A.idempotent_of, B.idempotent_of
    periods = {}
    for (m, k), v in loop.items():
        f = (ia[m], ib[k])
        if f not in periods or _preference(UPWord("", v)) < _preference(UPWord("", periods[f])):
            periods[f] = v
    best = None
    for (f1, f2), v in periods.items():
        for m, k in order:
            if op(A.omega_at(m, f1), B.omega_at(k, f2)):
                cand = UPWord(words[(m, k)], v)
                if best is None or _preference(cand) < _preference(best):
                    best = cand
    return best


def is_subset(a: ExtBuchiAutomaton, b: ExtBuchiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    return difference_witness(a, b, limit) is None


# --- topology-supporting constructions --------------------------------------

def _with_content(aut, source, fin, accepts):
    rec = content_recognizer(source.alphabet, fin, accepts)
    if rec is None:
        return aut
    return replace(aut, recognizer=_lazy_product(source, rec, operator.and_))


def finite_part(aut: ExtBuchiAutomaton) -> ExtBuchiAutomaton:
    out = trim(ExtBuchiAutomaton(aut.alphabet, aut.n, aut.initial, aut.transitions, aut.final, ()))
    return _with_content(out, aut, True, lambda s: False)


def infinite_part(aut: ExtBuchiAutomaton) -> ExtBuchiAutomaton:
    out = trim(ExtBuchiAutomaton(aut.alphabet, aut.n, aut.initial, aut.transitions, (), aut.repeated))
    return _with_content(out, aut, False, lambda s: True)


def quotient_inf(aut: ExtBuchiAutomaton, letters) -> ExtBuchiAutomaton:
    """Finite words ``u`` such that ``uα`` is accepted for some α over ``letters`` (finite or infinite)."""
    letters = set(letters)
    for c in letters:
        if c not in aut.alphabet:
            raise AlphabetMismatchError(f"letter {c!r} not in alphabet {aut.alphabet!r}")
    sub = ExtBuchiAutomaton(
        aut.alphabet,
        aut.n,
        range(aut.n),
        {t for t in aut.transitions if t[1] in letters},
        aut.final,
        aut.repeated,
    )
    live = _live_repeated(sub)
    pred = [set() for _ in range(aut.n)]
    for p, _, q in sub.transitions:
        pred[q].add(p)
    good = _reachable(aut.n, set(aut.final) | live, pred)
    return trim(ExtBuchiAutomaton(aut.alphabet, aut.n, aut.initial, aut.transitions, good, ()))


def determinize_finite(aut: ExtBuchiAutomaton):
    """Subset construction on the finite-word part; returns (states, transitions, accepting)."""
    start = aut.mask(aut.initial)
    fmask = aut.mask(aut.final)
    ids = {start: 0}
    order = [start]
    trans = set()
    pos = 0
    dm = aut.delta_masks
    while pos < len(order):
        cur = order[pos]
        for a in aut.alphabet:
            nxt = 0
            for q in bits(cur):
                nxt |= dm[a][q]
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            trans.add((ids[cur], a, ids[nxt]))
        pos += 1
    accepting = {i for i, m in enumerate(order) if m & fmask}
    return len(order), trans, accepting


def arrow(w: ExtBuchiAutomaton) -> ExtBuchiAutomaton:
    """Words with infinitely many prefixes in the finite-word language of ``w``.

    The finite part is that language itself.  Built on the subset
    automaton, whose accepting states become both final and repeated.
    """
    n, trans, acc = determinize_finite(w)
    return reduce(ExtBuchiAutomaton(w.alphabet, n, {0}, trans, acc, acc))


def restrict_im(aut: ExtBuchiAutomaton, letters) -> ExtBuchiAutomaton:
    """Words of L(aut) whose set of letters occurring infinitely often is ``letters``.

    With ``letters`` empty this is the finite-word part.
    """
    order = [c for c in aut.alphabet if c in set(letters)]
    if len(order) != len(set(letters)):
        raise AlphabetMismatchError(f"letters {letters!r} not all in alphabet {aut.alphabet!r}")
    if not order:
        return finite_part(aut)
    k = len(order)
    # phase 0: free prefix; 1..k: waiting for order[j-1]; k+1: waiting for a repeated state
    ids = {}
    queue = deque()
    trans, rep = set(), set()

    def state(q, j):
        if (q, j) not in ids:
            ids[(q, j)] = len(ids)
            queue.append((q, j))
        return ids[(q, j)]

    init = {state(q, 0) for q in sorted(aut.initial)}
    allowed = set(order)
    while queue:
        q, j = queue.popleft()
        sid = ids[(q, j)]
        if j == k + 1 and q in aut.repeated:
            rep.add(sid)
        for a in aut.alphabet:
            for q2 in aut.succ[q].get(a, ()):
                if j == 0:
                    trans.add((sid, a, state(q2, 0)))
                    if a in allowed:
                        trans.add((sid, a, state(q2, 1)))
                    continue
                if a not in allowed:
                    continue
                if j <= k:
                    nj = j + 1 if a == order[j - 1] else j
                else:
                    nj = 1 if q in aut.repeated else k + 1
                trans.add((sid, a, state(q2, nj)))
    out = reduce(ExtBuchiAutomaton(aut.alphabet, len(ids), init, trans, (), rep))
    target = frozenset(order)
    return _with_content(out, aut, False, lambda s: s == target)


# --- text format and DOT ----------------------------------------------------

def dumps(aut: ExtBuchiAutomaton) -> str:
    def fmt(xs):
        return ",".join(str(x) for x in sorted(xs))

    lines = [
        f"alphabet: {aut.alphabet}",
        f"states: {aut.n}",
        f"initial: {fmt(aut.initial)}",
        f"final: {fmt(aut.final)}",
        f"repeated: {fmt(aut.repeated)}",
    ]
    for p, a, q in sorted(aut.transitions, key=lambda t: (t[0], aut.alphabet.index(t[1]), t[2])):
        lines.append(f"{p} {a} {q}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> ExtBuchiAutomaton:
    header = {}
    trans = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            header[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'src letter dst', got {raw!r}")
        try:
            trans.add((int(parts[0]), parts[1], int(parts[2])))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    for key in ("alphabet", "states"):
        if key not in header:
            raise ParseError(f"missing '{key}:' line")

    def ints(key):
        value = header.get(key, "")
        return {int(x) for x in value.replace(",", " ").split()}

    try:
        return ExtBuchiAutomaton(
            "".join(header["alphabet"].split()),
            int(header["states"]),
            ints("initial"),
            trans,
            ints("final"),
            ints("repeated"),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def to_dot(aut: ExtBuchiAutomaton, name: str = "A") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];']
    for q in range(aut.n):
        attrs = []
        if q in aut.final:
            attrs.append("shape=doublecircle")
        if q in aut.repeated:
            attrs.append('style=filled, fillcolor="#dddddd"')
        lines.append(f"  {q} [{', '.join(attrs)}];" if attrs else f"  {q};")
    for q in sorted(aut.initial):
        lines.append(f"  init{q} [shape=point]; init{q} -> {q};")
    edges = {}
    for p, a, q in aut.transitions:
        edges.setdefault((p, q), []).append(a)
    for (p, q), labels in sorted(edges.items()):
        lab = ",".join(sorted(labels, key=aut.alphabet.index))
        lines.append(f'  {p} -> {q} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "ExtBuchiAutomaton",
    "Recognizer",
    "arrow",
    "complement",
    "counterexample",
    "difference_witness",
    "dumps",
    "empty_language",
    "equivalent",
    "find_word",
    "finite_part",
    "from_words",
    "infinite_part",
    "intersect",
    "is_empty",
    "is_subset",
    "loads",
    "member",
    "quotient_inf",
    "recognizer_of",
    "reduce",
    "restrict_im",
    "saturated_automaton",
    "to_dot",
    "trim",
    "union",
    "union_all",
    "universal",
]
