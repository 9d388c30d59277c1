"""Finite ordered monoids and the predicates used by the fragment tests.

Elements are ``0 .. size-1``.  The order is kept as a list of bitmasks:
bit ``t`` of ``leq[s]`` is set when ``s <= t``.
"""

from __future__ import annotations

from collections import deque

from .errors import PreconditionError


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class OrderedMonoid:
    """A finite monoid with a compatible partial order and optional generators.

    ``order`` may be ``None`` (equality), a list of ``(s, t)`` pairs meaning
    ``s <= t`` (closed reflexively and transitively), or a list of bitmasks.
    With ``check`` the monoid axioms and order compatibility are verified
    exhaustively and violations raise ``ValueError``.
    """

    def __init__(self, table, unit=None, order=None, generators=None, names=None, check=True):
        self.table = [list(row) for row in table]
        n = self.size = len(self.table)
        if any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square")
        if unit is None:
            unit = next((u for u in range(n) if all(self.table[u][x] == x == self.table[x][u] for x in range(n))), None)
            if unit is None:
                raise ValueError("no unit element")
        self.unit = unit
        self.generators = dict(generators) if generators else {}
        self.leq = self._order_masks(order)
        if check:
            self._validate()
        self.names = list(names) if names else self._default_names()

    # -- construction helpers -------------------------------------------------

    def _order_masks(self, order):
        n = self.size
        if order is None:
            return [1 << s for s in range(n)]
        order = list(order)
        if order and isinstance(order[0], int):
            masks = [m | (1 << s) for s, m in enumerate(order)]
        else:
            masks = [1 << s for s in range(n)]
            for s, t in order:
                masks[s] |= 1 << t
        changed = True
        while changed:
            changed = False
            for s in range(n):
                closed = masks[s]
                for t in _bits(masks[s]):
                    closed |= masks[t]
                if closed != masks[s]:
                    masks[s] = closed
                    changed = True
        return masks

    def _validate(self):
        n, t = self.size, self.table
        for x in range(n):
            if t[self.unit][x] != x or t[x][self.unit] != x:
                raise ValueError(f"unit law fails at element {x}")
            for y in range(n):
                if not 0 <= t[x][y] < n:
                    raise ValueError(f"product {x}*{y} out of range")
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                for z in range(n):
                    if t[xy][z] != t[x][t[y][z]]:
                        raise ValueError(f"not associative: ({x}*{y})*{z} != {x}*({y}*{z})")
        for s in range(n):
            for u in _bits(self.leq[s]):
                if u != s and self.leq[u] >> s & 1:
                    raise ValueError(f"order is not antisymmetric: {s} and {u}")
                for x in range(n):
                    if not self.leq[t[x][s]] >> t[x][u] & 1 or not self.leq[t[s][x]] >> t[u][x] & 1:
                        raise ValueError(f"order not compatible: {s} <= {u} but fails after multiplying by {x}")

    def _default_names(self):
        if not self.generators:
            return [str(i) for i in range(self.size)]
        reps = self.representatives()
        return [("1" if w == "" else w) if w is not None else str(i) for i, w in enumerate(reps)]

    def representatives(self):
        """Shortlex least word for each element reachable from the generators."""
        reps = [None] * self.size
        reps[self.unit] = ""
        queue = deque([self.unit])
        letters = sorted(self.generators)
        while queue:
            m = queue.popleft()
            for a in letters:
                t = self.table[m][self.generators[a]]
                if reps[t] is None:
                    reps[t] = reps[m] + a
                    queue.append(t)
        return reps

    # -- basics ---------------------------------------------------------------

    def mul(self, *xs):
        out = self.unit
        for x in xs:
            out = self.table[out][x]
        return out

    def evaluate(self, word: str) -> int:
        out = self.unit
        for a in word:
            out = self.table[out][self.generators[a]]
        return out

    def le(self, s, t) -> bool:
        return bool(self.leq[s] >> t & 1)

    def name(self, s) -> str:
        return self.names[s]

    def element(self, name: str) -> int:
        return self.names.index(name)

    def dual(self) -> "OrderedMonoid":
        """The same monoid with the reversed order."""
        rev = [0] * self.size
        for s in range(self.size):
            for t in _bits(self.leq[s]):
                rev[t] |= 1 << s
        return OrderedMonoid(self.table, self.unit, rev, self.generators, self.names, check=False)

    def with_equality_order(self) -> "OrderedMonoid":
        return OrderedMonoid(self.table, self.unit, None, self.generators, self.names, check=False)

    def submonoid(self, elements) -> "OrderedMonoid":
        """Restriction to a subset closed under multiplication and containing the unit."""
        keep = sorted(set(elements))
        if self.unit not in keep:
            raise PreconditionError("a submonoid must contain the unit")
        ren = {x: i for i, x in enumerate(keep)}
        try:
            table = [[ren[self.table[x][y]] for y in keep] for x in keep]
        except KeyError:
            raise PreconditionError("subset is not closed under multiplication") from None
        leq = [sum(1 << ren[t] for t in _bits(self.leq[s]) if t in ren) for s in keep]
        gens = {a: ren[g] for a, g in self.generators.items() if g in ren}
        return OrderedMonoid(table, ren[self.unit], leq, gens, [self.names[x] for x in keep], check=False)

    def zero(self):
        for z in range(self.size):
            if all(self.table[z][x] == z == self.table[x][z] for x in range(self.size)):
                return z
        return None

    # -- idempotents and ideals -----------------------------------------------

    def is_idempotent(self, e) -> bool:
        return self.table[e][e] == e

    def idempotents(self):
        return [e for e in range(self.size) if self.table[e][e] == e]

    def idempotent_power(self, s) -> int:
        p = s
        while self.table[p][p] != p:
            p = self.table[p][s]
        return p

    def right_ideal(self, s) -> int:
        out = 0
        for y in range(self.size):
            out |= 1 << self.table[s][y]
        return out

    def left_ideal(self, s) -> int:
        out = 0
        for x in range(self.size):
            out |= 1 << self.table[x][s]
        return out

    def ideal(self, s) -> int:
        cache = self.__dict__.setdefault("_ideal_cache", {})
        if s not in cache:
            out = 0
            for x in range(self.size):
                xs = self.table[x][s]
                for y in range(self.size):
                    out |= 1 << self.table[xs][y]
            cache[s] = out
        return cache[s]

    def is_factor(self, s, e) -> bool:
        """Whether ``e`` lies in ``MsM``."""
        return bool(self.ideal(s) >> e & 1)

    def local_submonoid(self, e, use_generators=None) -> frozenset:
        """``M_e``: the submonoid generated by the factors of the idempotent ``e``.

        It always contains the unit.  With generators the letters whose
        image is a factor of ``e`` are used as the generating set.
        """
        if not self.is_idempotent(e):
            raise PreconditionError(f"element {self.names[e]} is not idempotent")
        if use_generators is None:
            use_generators = bool(self.generators)
        if use_generators:
            gens = {g for g in self.generators.values() if self.is_factor(g, e)}
        else:
            gens = {s for s in range(self.size) if self.is_factor(s, e)}
        out = {self.unit}
        frontier = [self.unit]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    t = self.table[m][g]
                    if t not in out:
                        out.add(t)
                        nxt.append(t)
            frontier = nxt
        return frozenset(out)

    # -- variety-style predicates ---------------------------------------------

    def da_violation(self, use_generators=False):
        """A triple ``(e, s, ese)`` with ``ese != e`` and ``s`` in ``M_e``, or ``None``."""
        for e in self.idempotents():
            if use_generators:
                candidates = sorted({g for g in self.generators.values() if self.is_factor(g, e)})
            else:
                candidates = sorted(self.local_submonoid(e, use_generators=False))
            for s in candidates:
                ese = self.table[self.table[e][s]][e]
                if ese != e:
                    return (e, s, ese)
        return None

    def is_in_DA(self, use_generators=None) -> bool:
        if use_generators is None:
            use_generators = bool(self.generators)
        return self.da_violation(use_generators) is None

    def locally_top(self, e) -> bool:
        return self._local_violation(e, top=True) is None

    def locally_bottom(self, e) -> bool:
        return self._local_violation(e, top=False) is None

    def _local_violation(self, e, top):
        for s in sorted(self.local_submonoid(e)):
            ese = self.table[self.table[e][s]][e]
            ok = self.le(ese, e) if top else self.le(e, ese)
            if not ok:
                return s
        return None

    def r_related(self, s, t) -> bool:
        return self.right_ideal(s) == self.right_ideal(t)

    def l_related(self, s, t) -> bool:
        return self.left_ideal(s) == self.left_ideal(t)

    def j_related(self, s, t) -> bool:
        return self.ideal(s) == self.ideal(t)

    def is_J_trivial(self) -> bool:
        seen = {}
        for s in range(self.size):
            key = self.ideal(s)
            if key in seen:
                return False
            seen[key] = s
        return True

    def is_aperiodic(self) -> bool:
        n = self.size
        for s in range(n):
            p = s
            for _ in range(n - 1):
                p = self.table[p][s]
            if self.table[p][s] != p:
                return False
        return True

    def satisfies_x_leq_one(self) -> bool:
        return all(self.le(s, self.unit) for s in range(self.size))

    def satisfies_x_geq_one(self) -> bool:
        return all(self.le(self.unit, s) for s in range(self.size))

    # -- Green structure and rendering ----------------------------------------

    def j_classes(self):
        """J-classes, largest ideal first; each class is a list of R-classes of L-cells."""
        groups = {}
        for s in range(self.size):
            groups.setdefault(self.ideal(s), []).append(s)
        ordered = sorted(groups.items(), key=lambda kv: (-bin(kv[0]).count("1"), min(kv[1])))
        out = []
        for _, members in ordered:
            rkeys, lkeys = [], []
            for s in members:
                r, l = self.right_ideal(s), self.left_ideal(s)
                if r not in rkeys:
                    rkeys.append(r)
                if l not in lkeys:
                    lkeys.append(l)
            grid = [[[] for _ in lkeys] for _ in rkeys]
            for s in members:
                grid[rkeys.index(self.right_ideal(s))][lkeys.index(self.left_ideal(s))].append(s)
            out.append(grid)
        return out

    def _cell(self, cell):
        return " ".join(self.names[s] + ("*" if self.is_idempotent(s) else "") for s in cell) or "."

    def egg_box_text(self) -> str:
        blocks = []
        for grid in self.j_classes():
            cells = [[self._cell(c) for c in row] for row in grid]
            width = max(len(c) for row in cells for c in row)
            sep = "+" + "+".join("-" * (width + 2) for _ in cells[0]) + "+"
            lines = [sep]
            for row in cells:
                lines.append("|" + "|".join(f" {c:<{width}} " for c in row) + "|")
                lines.append(sep)
            blocks.append("\n".join(lines))
        return "\n".join(blocks) + "\n"

    def egg_box_dot(self, name="eggbox") -> str:
        lines = [f"digraph {name} {{", "  node [shape=plaintext];"]
        for k, grid in enumerate(self.j_classes()):
            rows = "".join(
                "<tr>" + "".join(f"<td>{self._cell(c)}</td>" for c in row) + "</tr>" for row in grid
            )
            lines.append(f'  J{k} [label=<<table border="0" cellborder="1" cellspacing="0">{rows}</table>>];')
            if k:
                lines.append(f"  J{k - 1} -> J{k} [style=invis];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps(self) -> str:
        names = self.names
        width = max(len(x) for x in names)
        lines = [f"elements: {' '.join(names)}", f"unit: {names[self.unit]}"]
        if self.generators:
            lines.append("generators: " + ", ".join(f"{a}->{names[g]}" for a, g in sorted(self.generators.items())))
        lines.append("table:")
        lines.append(" " * (width + 1) + " ".join(f"{x:>{width}}" for x in names))
        for s in range(self.size):
            lines.append(f"{names[s]:>{width}} " + " ".join(f"{names[t]:>{width}}" for t in self.table[s]))
        pairs = [f"{names[s]}<={names[t]}" for s in range(self.size) for t in _bits(self.leq[s]) if s != t]
        lines.append("order: " + (", ".join(pairs) if pairs else "(equality)"))
        return "\n".join(lines) + "\n"


def idempotent_power(M: OrderedMonoid, s) -> int:
    return M.idempotent_power(s)


def local_submonoid(M: OrderedMonoid, e) -> frozenset:
    return M.local_submonoid(e)


def is_in_DA(M: OrderedMonoid) -> bool:
    return M.is_in_DA()


def from_rewriting(elements, rules, letters, zero=None) -> OrderedMonoid:
    """Monoid presented by normal-form words and length-reducing rewrite rules.

    ``elements`` lists normal forms (``"1"`` for the unit); ``rules`` maps a
    factor to its replacement (``zero`` names an absorbing element).
    """

    def normal(word):
        changed = True
        while changed:
            changed = False
            if zero is not None and zero in word:
                return zero
            for lhs, rhs in rules.items():
                if lhs in word:
                    word = word.replace(lhs, "" if rhs == "1" else rhs, 1)
                    changed = True
                    break
        return word or "1"

    idx = {e: i for i, e in enumerate(elements)}

    def word_of(e):
        return "" if e == "1" else e

    table = [[idx[normal(word_of(x) + word_of(y))] for y in elements] for x in elements]
    gens = {a: idx[a] for a in letters if a in idx}
    return OrderedMonoid(table, idx["1"], None, gens, list(elements))
