"""Alphabets and words.

A word is a plain tuple of symbol strings.  Symbols may be longer than one
character (higher-block alphabets use symbols such as ``"01"``), so words are
never stored as Python strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

Word = tuple  # tuple[str, ...]

SEPARATOR = "."


class InputError(ValueError):
    """Raised when an operation is given input that violates its contract."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise InputError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise InputError(f"alphabet has duplicate symbols: {symbols}")
        for s in symbols:
            if not isinstance(s, str) or not s:
                raise InputError(f"symbol must be a non-empty string: {s!r}")
            if SEPARATOR in s or any(ch.isspace() for ch in s):
                raise InputError(f"symbol may not contain '.' or whitespace: {s!r}")

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.symbols

    @property
    def simple(self) -> bool:
        """True when every symbol is a single character."""
        return all(len(s) == 1 for s in self.symbols)

    def index(self, symbol: str) -> int:
        return self._order[symbol]

    @property
    def _order(self):
        try:
            return self.__dict__["_order_cache"]
        except KeyError:
            order = {s: i for i, s in enumerate(self.symbols)}
            object.__setattr__(self, "_order_cache", order)
            return order

    def key(self, word: Sequence[str]):
        """Sort key: shortlex with symbols ranked by alphabet order."""
        order = self._order
        return (len(word), tuple(order[s] for s in word))

    def lex_key(self, word: Sequence[str]):
        order = self._order
        return tuple(order[s] for s in word)

    def sort(self, words: Iterable[Word]) -> tuple:
        return tuple(sorted(words, key=self.key))

    def check(self, word: Sequence[str]) -> Word:
        word = tuple(word)
        for s in word:
            if s not in self._order:
                raise InputError(f"symbol {s!r} not in alphabet {self.symbols}")
        return word

    def parse(self, text: str) -> Word:
        """Parse ``"0110"`` or ``"00.01.10"`` into a word."""
        text = text.strip()
        if text in ("", "ε"):
            return ()
        if SEPARATOR in text or not self.simple:
            return self.check(text.split(SEPARATOR))
        return self.check(tuple(text))

    def format(self, word: Sequence[str]) -> str:
        if self.simple:
            return "".join(word)
        return SEPARATOR.join(word)

    def words(self, n: int) -> Iterator[Word]:
        """All words of length ``n`` in lexicographic order."""
        return product(self.symbols, repeat=n)


def format_word(word: Sequence[str]) -> str:
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return SEPARATOR.join(word)


def parse_word(text: str) -> Word:
    """Parse a word without an alphabet at hand."""
    text = text.strip()
    if text in ("", "ε"):
        return ()
    if SEPARATOR in text:
        return tuple(text.split(SEPARATOR))
    return tuple(text)


def block_symbol(block: Sequence[str]) -> str:
    """Name of the higher-block symbol carrying ``block``."""
    if all(len(s) == 1 for s in block):
        return "".join(block)
    return "_".join(block)
