"""Alphabets, finite words and ultimately periodic words.

Finite words are plain ``str`` values; the empty string is the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlphabetMismatchError, UndeclaredLetterError


class Alphabet(str):
    """An ordered set of single-character letters, stored as a string."""

    def __new__(cls, letters):
        if isinstance(letters, (list, tuple, set, frozenset)):
            letters = "".join(letters) if not isinstance(letters, (set, frozenset)) else "".join(sorted(letters))
        letters = "".join(str(letters).split())
        if not letters:
            raise ValueError("alphabet must not be empty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in alphabet {letters!r}")
        for ch in letters:
            if not ("a" <= ch <= "z"):
                raise ValueError(f"letters must be lowercase a-z, got {ch!r}")
        return super().__new__(cls, letters)

    def subsets(self):
        """All subsets as sorted strings, ordered by size then alphabet order."""
        n = len(self)
        masks = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), [i for i in range(n) if m >> i & 1]))
        return ["".join(self[i] for i in range(n) if m >> i & 1) for m in masks]

    def normalize(self, letters):
        """Return ``letters`` as a string sorted in alphabet order."""
        letters = set(letters)
        bad = letters - set(self)
        if bad:
            raise UndeclaredLetterError(f"undeclared letters {''.join(sorted(bad))!r}")
        return "".join(c for c in self if c in letters)


def check_word(word: str, alphabet: str) -> None:
    for ch in word:
        if ch not in alphabet:
            raise AlphabetMismatchError(f"letter {ch!r} is not in alphabet {alphabet!r}")


def _primitive_root(word: str) -> str:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class UPWord:
    """The infinite word ``prefix · period · period · ...``.

    Stored in normal form: the period is primitive and the prefix is as
    short as possible, so equal infinite words compare equal.
    """

    prefix: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("period of an ultimately periodic word must be non-empty")
        prefix, period = self.prefix, _primitive_root(self.period)
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def letters_at_infinity(self) -> frozenset:
        return frozenset(self.period)

    def unroll(self, k: int) -> "UPWord":
        """Same word written with ``k`` more copies of the period in the prefix."""
        return UPWord(self.prefix + self.period * k, self.period)

    def take(self, n: int) -> str:
        """The first ``n`` letters."""
        out = self.prefix
        while len(out) < n:
            out += self.period
        return out[:n]

    def __str__(self):
        pre = self.prefix if self.prefix else ""
        per = self.period if len(self.period) == 1 else f"({self.period})"
        return f"{pre}{per}^w"


def infinity_letters(word: UPWord) -> frozenset:
    """Letters occurring infinitely often in ``word``."""
    return word.letters_at_infinity()


def parse_word(text: str):
    """Parse ``u`` (finite), ``1`` (empty word) or ``u(v)^w`` / ``uv^w``."""
    text = "".join(text.split())
    if text in ("1", ""):
        return ""
    if text.endswith("^w"):
        body = text[:-2]
        if body.endswith(")"):
            open_at = body.rfind("(")
            if open_at < 0:
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            prefix, period = body[:open_at], body[open_at + 1 : -1]
        else:
            prefix, period = body[:-1], body[-1:]
        if prefix == "1":
            prefix = ""
        return UPWord(prefix, period)
    return text


def format_word(word) -> str:
    if isinstance(word, UPWord):
        return str(word)
    return word if word else "1"
