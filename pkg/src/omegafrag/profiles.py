"""Transition-profile monoids of extended Büchi automata.

The profile of a word ``w`` records, for every pair of states ``(p, q)``,
whether there is no run from ``p`` to ``q`` on ``w``, a run, or a run that
passes through a repeated state.  Profiles are stored row-wise as two
tuples of bitmasks: ``reach[p]`` (all targets) and ``rep[p]`` (targets
reachable through a repeated state, endpoints included).  The empty word
carries its own flag so that its class never contains a non-empty word.

Everything here works on raw automaton data (state count, transition
masks, repeated mask) so that the automaton module can use it without an
import cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ResourceLimitError
from .words import UPWord

DEFAULT_LIMIT = 5000


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def image(mask: int, rows) -> int:
    out = 0
    for r in bits(mask):
        out |= rows[r]
    return out


def chunk_tables(rows):
    """Per-byte lookup tables so that ``fast_image`` ORs eight rows at a time."""
    tables = []
    for base in range(0, len(rows), 8):
        size = 1 << min(8, len(rows) - base)
        t = [0] * size
        for byte in range(1, size):
            low = byte & -byte
            t[byte] = t[byte ^ low] | rows[base + low.bit_length() - 1]
        tables.append(t)
    return tables


def fast_image(mask: int, tables) -> int:
    out = 0
    c = 0
    while mask:
        byte = mask & 255
        if byte:
            out |= tables[c][byte]
        mask >>= 8
        c += 1
    return out


def compose(x, y):
    """Profile of ``uv`` from the profiles of ``u`` and ``v``."""
    fx, rx, px = x
    fy, ry, py = y
    reach = tuple(image(m, ry) for m in rx)
    rep = tuple(image(px[p], ry) | image(rx[p], py) for p in range(len(rx)))
    return (fx and fy, reach, rep)


class ProfileMonoid:
    """The monoid of profiles generated by the letters of an automaton.

    Elements are numbered in breadth-first order of the right Cayley graph,
    so ``words[i]`` is the shortest, then alphabetically least, word with
    profile ``i``.  Element 0 is the empty word.
    """

    def __init__(self, alphabet: str, n: int, delta: dict, repeated: int, limit: int = DEFAULT_LIMIT):
        self.alphabet = alphabet
        self.n = n
        self.repeated = repeated
        self.limit = limit
        ident = (True, tuple(1 << p for p in range(n)), tuple((1 << p) & repeated for p in range(n)))
        self.letter_profiles = []
        for a in alphabet:
            rows = tuple(delta.get(a, [0] * n))
            rep = tuple(rows[p] if repeated >> p & 1 else rows[p] & repeated for p in range(n))
            self.letter_profiles.append((False, rows, rep))
        letter_tables = [(chunk_tables(rows), chunk_tables(rep)) for _, rows, rep in self.letter_profiles]
        self.elements = [ident]
        self.index = {ident: 0}
        self.words = [""]
        self.right = []
        self._mul = {}
        queue_pos = 0
        while queue_pos < len(self.elements):
            cur = self.elements[queue_pos]
            row = []
            _, rx, px = cur
            for ai, a in enumerate(alphabet):
                ty, tp = letter_tables[ai]
                nxt = (
                    False,
                    tuple(fast_image(m, ty) for m in rx),
                    tuple(fast_image(px[p], ty) | fast_image(rx[p], tp) for p in range(n)),
                )
                idx = self.index.get(nxt)
                if idx is None:
                    idx = len(self.elements)
                    if idx >= limit:
                        raise ResourceLimitError(
                            f"profile monoid exceeds {limit} elements; raise the bound with --max-monoid"
                        )
                    self.index[nxt] = idx
                    self.elements.append(nxt)
                    self.words.append(self.words[queue_pos] + a)
                row.append(idx)
            self.right.append(row)
            queue_pos += 1
        self.letter_index = {a: self.right[0][ai] for ai, a in enumerate(alphabet)}
        self._letter_pos = {a: ai for ai, a in enumerate(alphabet)}
        self.left = [[self.mul(self.letter_index[a], m) for a in alphabet] for m in range(len(self.elements))]
        self._idem = {}

    @classmethod
    def of(cls, aut, limit: int = DEFAULT_LIMIT) -> "ProfileMonoid":
        return cls(aut.alphabet, aut.n, aut.delta_masks, aut.mask(aut.repeated), limit)

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        hit = self._mul.get(key)
        if hit is None:
            # walk the representative word of j through the right Cayley graph
            hit = i
            right, letters = self.right, self._letter_pos
            for a in self.words[j]:
                hit = right[hit][letters[a]]
            self._mul[key] = hit
        return hit

    def idempotent_power(self, i: int) -> int:
        hit = self._idem.get(i)
        if hit is not None:
            return hit
        p = i
        while self.mul(p, p) != p:
            p = self.mul(p, i)
        self._idem[i] = p
        return p

    def idempotents(self):
        return [i for i in range(len(self.elements)) if self.mul(i, i) == i]

    def reach(self, i: int, init: int) -> int:
        return image(init, self.elements[i][1])

    def loop_mask(self, e: int) -> int:
        _, _, rep = self.elements[e]
        return sum(1 << q for q in range(self.n) if rep[q] >> q & 1)

    def fin(self, i: int, init: int, final: int) -> bool:
        return bool(self.reach(i, init) & final)

    def val(self, s: int, e: int, init: int, final: int) -> bool:
        """Whether ``[s][e]^ω`` lies in the language; ``e`` idempotent."""
        if e == 0:
            return self.fin(s, init, final)
        return bool(self.reach(s, init) & self.loop_mask(e))

    def omega(self, m: int, k: int, init: int, final: int) -> bool:
        """Whether words of profile ``m`` followed by ``v^ω`` (``v`` of profile ``k``) are accepted."""
        f = self.idempotent_power(k)
        return self.val(self.mul(m, f), f, init, final)


def word_profile(aut, word: str):
    n = aut.n
    rep_mask = aut.mask(aut.repeated)
    prof = (True, tuple(1 << p for p in range(n)), tuple((1 << p) & rep_mask for p in range(n)))
    dm = aut.delta_masks
    for a in word:
        rows = dm[a]
        letter = (False, tuple(rows), tuple(rows[p] if rep_mask >> p & 1 else rows[p] & rep_mask for p in range(n)))
        prof = compose(prof, letter)
    return prof


def accepts_up(aut, prefix: str, period: str) -> bool:
    """Exact acceptance test for ``prefix · period^ω``."""
    u = word_profile(aut, prefix)
    v = word_profile(aut, period)
    # idempotent power of v
    p = v
    while compose(p, p) != p:
        p = compose(p, v)
    s = compose(u, p)
    init = aut.mask(aut.initial)
    reach = image(init, s[1])
    loop = sum(1 << q for q in range(aut.n) if p[2][q] >> q & 1)
    return bool(reach & loop)


@dataclass
class Separation:
    """A context telling two words apart.

    With ``kind == "tail"`` the context maps ``w`` to ``x w y z^ω``
    (a finite word when ``z`` is empty); with ``kind == "loop"`` it maps
    ``w`` to ``x (l w r)^ω``.
    """

    kind: str
    x: str
    y: str = ""
    z: str = ""
    l: str = ""
    r: str = ""

    def apply(self, w: str):
        if self.kind == "tail":
            body = self.x + w + self.y
            return UPWord(body, self.z) if self.z else body
        period = self.l + w + self.r
        return UPWord(self.x, period) if period else self.x


@dataclass
class SyntacticData:
    """Quotient of a profile monoid by the syntactic congruence of one language."""

    pm: ProfileMonoid
    init: int
    final: int
    class_of: list
    reps: list  # profile element chosen for each class (shortlex least)
    table: list
    unit: int
    right: list
    leq: list  # leq[u] bitmask of v with u <= v
    fin: list
    val: dict = field(default_factory=dict)
    sig: list = field(default_factory=list)
    unit_has_nonempty: bool = False

    @property
    def size(self):
        return len(self.reps)

    @property
    def alphabet(self):
        return self.pm.alphabet

    def words(self):
        return [self.pm.words[r] for r in self.reps]

    def letter_class(self, a: str) -> int:
        return self.class_of[self.pm.letter_index[a]]

    def idempotents(self):
        return [s for s in range(self.size) if self.table[s][s] == s]

    def linked_pairs(self):
        out = []
        for e in self.idempotents():
            for s in range(self.size):
                if self.table[s][e] == s:
                    out.append((s, e))
        out.sort()
        return out

    def separation(self, u: int, v: int):
        """Search a context separating classes ``u`` and ``v``; ``None`` if equal."""
        return _separate(self, u, v)


def _analyse(pm: ProfileMonoid, init: int, final: int):
    """Signature data of every profile element with respect to one language."""
    n_el = len(pm)
    idems = [e for e in pm.idempotents() if e != 0]
    loops = [pm.loop_mask(e) for e in idems]
    reach = [pm.reach(m, init) for m in range(n_el)]
    dmasks = {}
    d_of = []
    d_witness = []
    for m in range(n_el):
        d = reach[m]
        if d not in dmasks:
            dmasks[d] = len(dmasks)
            d_witness.append(m)
        d_of.append(dmasks[d])
    abits = []
    for d in dmasks:
        row = 0
        for fi, e in enumerate(idems):
            if image(d, pm.elements[e][1]) & loops[fi]:
                row |= 1 << fi
        abits.append(row)
    # vmask[fi]: the set of reach classes d whose words x satisfy x f^ω in L
    vmask = {}
    for fi, e in enumerate(idems):
        vmask[e] = sum(1 << di for di, row in enumerate(abits) if row >> fi & 1)
    vmask[0] = sum(1 << di for di, d in enumerate(dmasks) if d & final)
    width = len(idems) + 1
    sig = []
    for m in range(n_el):
        a_part = (1 if reach[m] & final else 0) | (abits[d_of[m]] << 1)
        b_part = vmask[pm.idempotent_power(m)]
        sig.append(a_part | (b_part << width))
    return {
        "idems": idems,
        "sig": sig,
        "width": width,
        "d_of": d_of,
        "d_witness": d_witness,
        "reach": reach,
        "abits": abits,
    }


def _refine(pm: ProfileMonoid, keys):
    """Coarsest congruence refining the partition given by ``keys``."""
    n_el = len(pm)
    nl = len(pm.alphabet)
    block = _renumber(keys)
    while True:
        new_keys = [
            (block[m],)
            + tuple(block[pm.right[m][a]] for a in range(nl))
            + tuple(block[pm.left[m][a]] for a in range(nl))
            for m in range(n_el)
        ]
        new_block = _renumber(new_keys)
        if max(new_block, default=-1) == max(block, default=-1):
            return new_block
        block = new_block


def _renumber(keys):
    seen = {}
    out = []
    for k in keys:
        if k not in seen:
            seen[k] = len(seen)
        out.append(seen[k])
    return out


def syntactic_data(pm: ProfileMonoid, init: int, final: int) -> SyntacticData:
    info = _analyse(pm, init, final)
    sig = info["sig"]
    class_of = _refine(pm, sig)
    k = max(class_of) + 1
    reps = [None] * k
    for m, c in enumerate(class_of):
        if reps[c] is None:
            reps[c] = m
    table = [[class_of[pm.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    unit = class_of[0]
    right = [[class_of[pm.right[reps[c]][a]] for a in range(len(pm.alphabet))] for c in range(k)]
    left = [[class_of[pm.left[reps[c]][a]] for a in range(len(pm.alphabet))] for c in range(k)]
    csig = [sig[reps[c]] for c in range(k)]
    leq = _order(csig, right, left)
    fin = [pm.fin(reps[c], init, final) for c in range(k)]
    data = SyntacticData(
        pm=pm,
        init=init,
        final=final,
        class_of=class_of,
        reps=reps,
        table=table,
        unit=unit,
        right=right,
        leq=leq,
        fin=fin,
        sig=csig,
        unit_has_nonempty=sum(1 for c in class_of if c == unit) > 1,
    )
    data._left = left
    data._info = info
    for s, e in data.linked_pairs():
        data.val[(s, e)] = pm.omega(reps[s], reps[e], init, final)
    return data


class _Tables:
    """The parts of a profile monoid that refinement and separation read, for a plain monoid."""

    def __init__(self, alphabet, table, right, unit, words):
        self.alphabet = alphabet
        self.table = table
        self.right = right
        letters = [right[unit][a] for a in range(len(alphabet))]
        self.left = [[table[x][m] for x in letters] for m in range(len(table))]
        self.words = words
        self.letter_index = {a: letters[i] for i, a in enumerate(alphabet)}

    def __len__(self):
        return len(self.table)


def _nonempty_images(right, unit):
    seen = set(right[unit])
    todo = list(seen)
    while todo:
        for n in right[todo.pop()]:
            if n not in seen:
                seen.add(n)
                todo.append(n)
    return seen


def syntactic_data_from_tables(alphabet, table, right, unit, words, fin, val, idempotent_of) -> SyntacticData:
    """Syntactic quotient of a monoid that saturates a language.

    ``fin[m]`` is the membership of the finite words of class ``m``,
    ``val[(s, e)]`` that of ``[s][e]^ω`` and ``idempotent_of[m]`` the
    idempotent power of ``m``.  Signatures mirror :func:`_analyse` with
    every element as its own prefix class.
    """
    k = len(table)
    tabs = _Tables(alphabet, table, right, unit, words)
    idems = [e for e in range(k) if table[e][e] == e and e != unit]
    abits = []
    for m in range(k):
        row = 0
        for fi, f in enumerate(idems):
            if val[(table[m][f], f)]:
                row |= 1 << fi
        abits.append(row)
    vmask = {f: sum(1 << m for m in range(k) if abits[m] >> fi & 1) for fi, f in enumerate(idems)}
    vmask[unit] = sum(1 << m for m in range(k) if fin[m])
    width = len(idems) + 1
    sig = [(1 if fin[m] else 0) | (abits[m] << 1) | (vmask[idempotent_of[m]] << width) for m in range(k)]
    class_of = _refine(tabs, sig)
    size = max(class_of) + 1
    reps = [None] * size
    for m in sorted(range(k), key=lambda m: (len(words[m]), words[m])):
        if reps[class_of[m]] is None:
            reps[class_of[m]] = m
    nl = len(alphabet)
    q_table = [[class_of[table[reps[i]][reps[j]]] for j in range(size)] for i in range(size)]
    q_right = [[class_of[right[reps[c]][a]] for a in range(nl)] for c in range(size)]
    q_left = [[class_of[tabs.left[reps[c]][a]] for a in range(nl)] for c in range(size)]
    csig = [sig[reps[c]] for c in range(size)]
    data = SyntacticData(
        pm=tabs,
        init=0,
        final=0,
        class_of=class_of,
        reps=reps,
        table=q_table,
        unit=class_of[unit],
        right=q_right,
        leq=_order(csig, q_right, q_left),
        fin=[fin[reps[c]] for c in range(size)],
        sig=csig,
        unit_has_nonempty=any(class_of[m] == class_of[unit] for m in _nonempty_images(right, unit)),
    )
    data._left = q_left
    data._info = {"idems": idems, "width": width, "d_witness": list(range(k))}
    for s_, e in data.linked_pairs():
        f = idempotent_of[reps[e]]
        data.val[(s_, e)] = val[(table[reps[s_]][f], f)]
    return data


def _order(csig, right, left):
    """Greatest relation inside signature inclusion that is stable under letters."""
    k = len(csig)
    leq = []
    for u in range(k):
        row = 0
        for v in range(k):
            if csig[v] & ~csig[u] == 0:
                row |= 1 << v
        leq.append(row)
    nl = len(right[0]) if right else 0
    changed = True
    while changed:
        changed = False
        for u in range(k):
            row = leq[u]
            for v in bits(row):
                ok = True
                for a in range(nl):
                    if not (leq[right[u][a]] >> right[v][a] & 1) or not (leq[left[u][a]] >> left[v][a] & 1):
                        ok = False
                        break
                if not ok:
                    row &= ~(1 << v)
                    changed = True
            leq[u] = row
    return leq


def _separate(data: SyntacticData, u: int, v: int):
    if u == v:
        return None
    pm = data.pm
    info = data._info
    nl = len(pm.alphabet)
    start = (u, v)
    parent = {start: None}
    queue = [start]
    pos = 0
    found = None
    while pos < len(queue):
        pair = queue[pos]
        pos += 1
        if data.sig[pair[0]] != data.sig[pair[1]]:
            found = pair
            break
        for side in ("L", "R"):
            for a in range(nl):
                tab = data._left if side == "L" else data.right
                nxt = (tab[pair[0]][a], tab[pair[1]][a])
                if nxt not in parent:
                    parent[nxt] = (pair, side, pm.alphabet[a])
                    queue.append(nxt)
    if found is None:
        return None
    x, y = "", ""
    cur = found
    while parent[cur] is not None:
        prev, side, a = parent[cur]
        if side == "L":
            x = x + a
        else:
            y = a + y
        cur = prev
    su, sv = data.sig[found[0]], data.sig[found[1]]
    diff = su ^ sv
    bit = (diff & -diff).bit_length() - 1
    width = info["width"]
    if bit == 0:
        return Separation("tail", x, y, "")
    if bit < width:
        f = info["idems"][bit - 1]
        return Separation("tail", x, y, pm.words[f])
    di = bit - width
    xp = pm.words[info["d_witness"][di]]
    return Separation("loop", xp, "", "", x, y)
