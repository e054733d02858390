"""Alphabets and words.

Letters are interned to small integers when the alphabet is built, so a word
is just a tuple of indices. Positions are 1-based throughout the public API.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .exceptions import ConfigurationError, ParseError, RangeError

Word = tuple  # tuple[int, ...]

SEPARATOR = "."


class Alphabet:
    """Finite ordered set of letters with an optional neutral letter."""

    __slots__ = ("letters", "neutral", "_index")

    def __init__(self, letters: Iterable[str], neutral: str | None = None):
        letters = tuple(str(x) for x in letters)
        if not letters:
            raise ConfigurationError("alphabet must contain at least one letter")
        index = {}
        for i, name in enumerate(letters):
            if not name:
                raise ConfigurationError("letter names must be non-empty")
            if SEPARATOR in name:
                raise ConfigurationError(f"letter {name!r} contains the separator {SEPARATOR!r}")
            if name in index:
                raise ConfigurationError(f"duplicate letter {name!r}")
            index[name] = i
        if neutral is not None and neutral not in index:
            raise ConfigurationError(f"neutral letter {neutral!r} is not in the alphabet")
        self.letters = letters
        self.neutral = neutral
        self._index = index

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Alphabet)
            and self.letters == other.letters
            and self.neutral == other.neutral
        )

    def __hash__(self) -> int:
        return hash((self.letters, self.neutral))

    def __repr__(self) -> str:
        extra = f", neutral={self.neutral!r}" if self.neutral is not None else ""
        return f"Alphabet({list(self.letters)!r}{extra})"

    @property
    def neutral_index(self) -> int | None:
        return None if self.neutral is None else self._index[self.neutral]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown letter {name!r}") from None

    def encode(self, names: Iterable[str]) -> Word:
        return tuple(self.index(x) for x in names)

    def decode(self, word: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.letters[i] for i in word)

    def parse(self, text: str) -> Word:
        """Parse a dot-separated word such as ``a.b.c``; the empty string is the empty word."""
        text = text.strip()
        if not text:
            return ()
        return self.encode(text.split(SEPARATOR))

    def format(self, word: Sequence[int]) -> str:
        return SEPARATOR.join(self.letters[i] for i in word)

    def with_neutral(self, name: str) -> "Alphabet":
        """Return this alphabet with `name` designated (and appended if new) as neutral."""
        if self.neutral is not None and self.neutral != name:
            raise ConfigurationError(f"alphabet already has neutral {self.neutral!r}")
        letters = self.letters if name in self._index else self.letters + (name,)
        return Alphabet(letters, neutral=name)

    def words(self, length: int, exclude_neutral: bool = False) -> Iterator[Word]:
        """All words of the given length in lexicographic order of the letter order."""
        idx = range(len(self.letters))
        if exclude_neutral and self.neutral is not None:
            e = self.neutral_index
            idx = [i for i in idx if i != e]
        return itertools.product(idx, repeat=length)


def factor(w: Sequence[int], i: int, length: int) -> Word:
    """Entries ``i .. i+length-1`` of `w` (1-based)."""
    if i < 1 or length < 0 or i + length - 1 > len(w):
        raise RangeError(f"factor({i}, {length}) out of range for a word of length {len(w)}")
    return tuple(w[i - 1 : i - 1 + length])


def _neutral_of(alphabet: Alphabet) -> int:
    e = alphabet.neutral_index
    if e is None:
        raise ConfigurationError("the alphabet has no neutral letter")
    return e


def pad_projection(w: Sequence[int], alphabet: Alphabet) -> Word:
    """Remove every occurrence of the neutral letter."""
    e = _neutral_of(alphabet)
    return tuple(x for x in w if x != e)


def append_padding(w: Sequence[int], m: int, alphabet: Alphabet) -> Word:
    """Append `m` copies of the neutral letter."""
    if m < 0:
        raise RangeError("padding count must be non-negative")
    return tuple(w) + (_neutral_of(alphabet),) * m
