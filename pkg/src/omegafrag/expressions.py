"""A small expression language for languages of finite and infinite words.

Grammar (whitespace is ignored between tokens)::

    file    := "alphabet:" letter+ ";" expr
    expr    := inter ("|" inter)*
    inter   := concat ("&" concat)*
    concat  := factor+
    factor  := "!"? base power*
    base    := letter | "1" | "0" | "(" expr ")" | set | "IM" set
    set     := "{" (letter ("," letter)*)? "}"
    power   := "*" | "^w" | "^oo"

``1`` is the empty word and ``0`` the empty language.  A bare set is the
union of its letters; ``IM{...}`` is the set of infinite words whose
letters occurring infinitely often are exactly the listed ones
(``IM{}`` is the set of finite words).  ``!`` complements the following
base with its powers, relative to all finite and infinite words.

Concatenation only uses the finite words of its left operand.  ``x^w``
is the set of infinite products of non-empty words of ``x``, together
with ``x*`` when ``x`` contains the empty word; ``x^oo`` is ``x* | x^w``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import automata as au
from .errors import ParseError, UndeclaredLetterError
from .profiles import DEFAULT_LIMIT
from .words import Alphabet, UPWord, infinity_letters  # noqa: F401  (re-exported)


class Expr:
    """Base class of expression nodes."""

    level = 5

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Letter(Expr):
    letter: str


@dataclass(frozen=True)
class Epsilon(Expr):
    pass


@dataclass(frozen=True)
class Empty(Expr):
    pass


@dataclass(frozen=True)
class ImSet(Expr):
    letters: str  # sorted in alphabet order


@dataclass(frozen=True)
class Union(Expr):
    left: Expr
    right: Expr
    level = 0


@dataclass(frozen=True)
class Intersect(Expr):
    left: Expr
    right: Expr
    level = 1


@dataclass(frozen=True)
class Concat(Expr):
    left: Expr
    right: Expr
    level = 2


@dataclass(frozen=True)
class Complement(Expr):
    inner: Expr
    level = 3


@dataclass(frozen=True)
class Star(Expr):
    inner: Expr
    level = 4


@dataclass(frozen=True)
class OmegaPow(Expr):
    inner: Expr
    level = 4


@dataclass(frozen=True)
class InfPow(Expr):
    inner: Expr
    level = 4


_POWER_SUFFIX = {Star: "*", OmegaPow: "^w", InfPow: "^oo"}


# --- parsing ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, alphabet: str, offset: int = 0):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0
        self.offset = offset

    def error(self, msg, pos=None):
        return ParseError(msg, (self.pos if pos is None else pos) + self.offset)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {got!r}")
        self.pos += 1

    def letter(self):
        ch = self.peek()
        if not ("a" <= ch <= "z"):
            raise self.error(f"expected a letter, found {ch or 'end of input'!r}")
        if ch not in self.alphabet:
            raise UndeclaredLetterError(f"letter {ch!r} is not declared in alphabet {self.alphabet!r}", self.pos + self.offset)
        self.pos += 1
        return ch

    def parse(self):
        node = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def expr(self):
        parts = [self.inter()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.inter())
        return _fold_right(Union, parts)

    def inter(self):
        parts = [self.concat()]
        while self.peek() == "&":
            self.pos += 1
            parts.append(self.concat())
        return _fold_right(Intersect, parts)

    def starts_factor(self):
        ch = self.peek()
        return bool(ch) and (("a" <= ch <= "z") or ch in "10({!I")

    def concat(self):
        if not self.starts_factor():
            got = self.peek() or "end of input"
            raise self.error(f"expected an expression, found {got!r}")
        node = self.factor()
        while self.starts_factor():
            node = Concat(node, self.factor())
        return node

    def factor(self):
        negate = False
        if self.peek() == "!":
            self.pos += 1
            negate = True
        node = self.base()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                node = Star(node)
            elif ch == "^":
                self.pos += 1
                if self.text.startswith("w", self.pos):
                    self.pos += 1
                    node = OmegaPow(node)
                elif self.text.startswith("oo", self.pos):
                    self.pos += 2
                    node = InfPow(node)
                else:
                    raise self.error("expected 'w' or 'oo' after '^'")
            else:
                break
        return Complement(node) if negate else node

    def base(self):
        ch = self.peek()
        if ch == "1":
            self.pos += 1
            return Epsilon()
        if ch == "0":
            self.pos += 1
            return Empty()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch == "{":
            letters = self.letter_set()
            if not letters:
                return Empty()
            return _fold_right(Union, [Letter(c) for c in letters])
        if ch == "I":
            if not self.text.startswith("IM", self.pos):
                raise self.error("expected 'IM'")
            self.pos += 2
            if self.peek() != "{":
                raise self.error("expected '{' after 'IM'")
            letters = self.letter_set()
            return ImSet("".join(c for c in self.alphabet if c in letters))
        if "a" <= ch <= "z":
            return Letter(self.letter())
        raise self.error(f"unexpected {ch or 'end of input'!r}")

    def letter_set(self):
        self.expect("{")
        out = []
        if self.peek() == "}":
            self.pos += 1
            return out
        out.append(self.letter())
        while self.peek() == ",":
            self.pos += 1
            out.append(self.letter())
        self.expect("}")
        return out


def _fold_right(cls, parts):
    node = parts[-1]
    for p in reversed(parts[:-1]):
        node = cls(p, node)
    return node


def parse(text: str, alphabet) -> Expr:
    """Parse an expression over a declared alphabet."""
    return _Parser(text, Alphabet(alphabet)).parse()


def parse_file(text: str):
    """Parse ``alphabet: <letters>; <expr>`` into ``(Alphabet, Expr)``."""
    stripped = text.lstrip()
    lead = len(text) - len(stripped)
    if not stripped.startswith("alphabet:"):
        raise ParseError("expected 'alphabet:' header", lead)
    head_end = stripped.find(";")
    if head_end < 0:
        raise ParseError("expected ';' after the alphabet", len(text))
    header = stripped[len("alphabet:"):head_end]
    try:
        alphabet = Alphabet(header)
    except ValueError as exc:
        raise ParseError(str(exc), lead + len("alphabet:")) from None
    body_start = lead + head_end + 1
    return alphabet, _Parser(text[body_start:], alphabet, body_start).parse()


def unparse(node: Expr) -> str:
    """Render an expression so that :func:`parse` gives the same tree back."""

    def wrap(child, need):
        s = unparse(child)
        return f"({s})" if child.level < need else s

    if isinstance(node, Letter):
        return node.letter
    if isinstance(node, Epsilon):
        return "1"
    if isinstance(node, Empty):
        return "0"
    if isinstance(node, ImSet):
        return "IM{" + ",".join(node.letters) + "}"
    if isinstance(node, Union):
        return f"{wrap(node.left, 1)} | {wrap(node.right, 0)}"
    if isinstance(node, Intersect):
        return f"{wrap(node.left, 2)} & {wrap(node.right, 1)}"
    if isinstance(node, Concat):
        return f"{wrap(node.left, 2)} {wrap(node.right, 3)}"
    if isinstance(node, Complement):
        return "!" + wrap(node.inner, 4)
    if type(node) in _POWER_SUFFIX:
        return wrap(node.inner, 4) + _POWER_SUFFIX[type(node)]
    raise TypeError(f"not an expression node: {node!r}")


# --- compilation ------------------------------------------------------------

def compile_expr(node: Expr, alphabet, limit: int = DEFAULT_LIMIT) -> au.ExtBuchiAutomaton:
    """Build an automaton recognising the language of ``node``."""
    alphabet = Alphabet(alphabet)
    return au.reduce(_compile(node, alphabet, limit))


def compile_text(text: str, limit: int = DEFAULT_LIMIT) -> au.ExtBuchiAutomaton:
    """Parse and compile ``alphabet: ...; expr``."""
    alphabet, node = parse_file(text)
    return compile_expr(node, alphabet, limit)


def language(expr: str, alphabet, limit: int = DEFAULT_LIMIT) -> au.ExtBuchiAutomaton:
    """Parse and compile an expression over ``alphabet``."""
    return compile_expr(parse(expr, alphabet), alphabet, limit)


def _compile(node, alphabet, limit):
    if isinstance(node, Letter):
        return au.ExtBuchiAutomaton(alphabet, 2, {0}, {(0, node.letter, 1)}, {1}, ())
    if isinstance(node, Epsilon):
        return au.ExtBuchiAutomaton(alphabet, 1, {0}, (), {0}, ())
    if isinstance(node, Empty):
        return au.empty_language(alphabet)
    if isinstance(node, ImSet):
        return au.restrict_im(au.universal(alphabet), node.letters)
    if isinstance(node, Union):
        return au.reduce(au.union(_compile(node.left, alphabet, limit), _compile(node.right, alphabet, limit)))
    if isinstance(node, Intersect):
        return au.reduce(au.intersect(_compile(node.left, alphabet, limit), _compile(node.right, alphabet, limit)))
    if isinstance(node, Complement):
        return au.complement(au.reduce(_compile(node.inner, alphabet, limit)), limit)
    if isinstance(node, Concat):
        return au.reduce(concat(_compile(node.left, alphabet, limit), _compile(node.right, alphabet, limit)))
    if isinstance(node, Star):
        return au.reduce(star(_compile(node.inner, alphabet, limit)))
    if isinstance(node, OmegaPow):
        return au.reduce(omega_power(_compile(node.inner, alphabet, limit)))
    if isinstance(node, InfPow):
        inner = _compile(node.inner, alphabet, limit)
        return au.reduce(au.union(star(inner), omega_power(inner)))
    raise TypeError(f"not an expression node: {node!r}")


def _initial_moves(aut):
    return [(a, r) for (i, a, r) in aut.transitions if i in aut.initial]


def concat(k: au.ExtBuchiAutomaton, m: au.ExtBuchiAutomaton) -> au.ExtBuchiAutomaton:
    """Finite words of ``k`` followed by words of ``m``."""
    k = au.finite_part(k)
    shift = k.n
    trans = set(k.transitions) | {(p + shift, a, q + shift) for p, a, q in m.transitions}
    for q in k.final:
        for a, r in _initial_moves(m):
            trans.add((q, a, r + shift))
    initial = set(k.initial)
    if k.initial & k.final:
        initial |= {i + shift for i in m.initial}
    final = {q + shift for q in m.final}
    if m.initial & m.final:
        final |= set(k.final)
    repeated = {q + shift for q in m.repeated}
    return au.ExtBuchiAutomaton(k.alphabet, k.n + m.n, initial, trans, final, repeated)


def star(aut: au.ExtBuchiAutomaton) -> au.ExtBuchiAutomaton:
    """Finite concatenations of finite words of ``aut`` (including the empty one)."""
    aut = au.finite_part(aut)
    s0 = aut.n
    moves = _initial_moves(aut)
    trans = set(aut.transitions)
    for src in list(aut.final) + [s0]:
        for a, r in moves:
            trans.add((src, a, r))
    return au.ExtBuchiAutomaton(aut.alphabet, aut.n + 1, {s0}, trans, set(aut.final) | {s0}, ())


def omega_power(aut: au.ExtBuchiAutomaton) -> au.ExtBuchiAutomaton:
    """Infinite products of non-empty finite words, plus ``star`` if the empty word is present."""
    fin = au.finite_part(aut)
    s0 = fin.n
    trans = set(fin.transitions) | {(s0, a, r) for a, r in _initial_moves(fin)}
    trans |= {(p, a, s0) for p, a, q in trans if q in fin.final}
    looped = au.ExtBuchiAutomaton(fin.alphabet, fin.n + 1, {s0}, trans, (), {s0})
    if fin.initial & fin.final:
        return au.union(looped, star(fin))
    return looped


__all__ = [
    "Alphabet",
    "Complement",
    "Concat",
    "Empty",
    "Epsilon",
    "Expr",
    "ImSet",
    "InfPow",
    "Intersect",
    "Letter",
    "OmegaPow",
    "Star",
    "UPWord",
    "Union",
    "compile_expr",
    "compile_text",
    "infinity_letters",
    "language",
    "parse",
    "parse_file",
    "unparse",
]
