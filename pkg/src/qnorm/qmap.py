"""The length-two map phi and its positional application."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .exceptions import ConfigurationError, RangeError
from .words import Alphabet, Word

LEFT, RIGHT = 1, 2


class QuadMap:
    """A total map S x S -> S x S stored as two |S| x |S| integer arrays.

    ``left[s, t], right[s, t]`` is the image of the pair ``s|t``. Pairs not
    given explicitly map to themselves.
    """

    def __init__(self, alphabet: Alphabet, left: np.ndarray, right: np.ndarray):
        n = len(alphabet)
        left = np.asarray(left, dtype=np.int32)
        right = np.asarray(right, dtype=np.int32)
        if left.shape != (n, n) or right.shape != (n, n):
            raise ConfigurationError(f"table must have shape ({n}, {n})")
        if left.min() < 0 or left.max() >= n or right.min() < 0 or right.max() >= n:
            raise ConfigurationError("table entries must be letter indices")
        left.setflags(write=False)
        right.setflags(write=False)
        self.alphabet = alphabet
        self.left = left
        self.right = right

    # construction

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "QuadMap":
        n = len(alphabet)
        s, t = np.indices((n, n))
        return cls(alphabet, s, t)

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Mapping[tuple[str, str], tuple[str, str]]) -> "QuadMap":
        """Build from a name-level mapping; unlisted pairs are fixed."""
        n = len(alphabet)
        left, right = np.indices((n, n))
        for (s, t), (u, v) in pairs.items():
            i, j = alphabet.index(s), alphabet.index(t)
            left[i, j], right[i, j] = alphabet.index(u), alphabet.index(v)
        return cls(alphabet, left, right)

    @classmethod
    def from_function(cls, alphabet: Alphabet, fn: Callable[[int, int], tuple[int, int]]) -> "QuadMap":
        n = len(alphabet)
        left = np.empty((n, n), dtype=np.int32)
        right = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(n):
                left[i, j], right[i, j] = fn(i, j)
        return cls(alphabet, left, right)

    def adjoin_neutral(self, name: str = "e") -> "QuadMap":
        """Add a neutral letter with phi(e|s) = phi(s|e) = s|e, keeping other entries."""
        if name in self.alphabet:
            raise ConfigurationError(f"letter {name!r} already exists")
        alphabet = self.alphabet.with_neutral(name)
        n = len(alphabet)
        e = n - 1
        left, right = np.indices((n, n))
        left[:e, :e] = self.left
        right[:e, :e] = self.right
        left[e, :] = np.arange(n)
        right[e, :] = e
        right[:, e] = e
        return QuadMap(alphabet, left, right)

    def with_neutral(self, name: str) -> "QuadMap":
        """Designate an existing letter as neutral without touching the table."""
        return QuadMap(self.alphabet.with_neutral(name), self.left, self.right)

    # basic queries

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def __call__(self, s: int, t: int) -> tuple[int, int]:
        return int(self.left[s, t]), int(self.right[s, t])

    def image(self, s: str, t: str) -> tuple[str, str]:
        a = self.alphabet
        u, v = self(a.index(s), a.index(t))
        return a.letters[u], a.letters[v]

    @cached_property
    def invariant(self) -> np.ndarray:
        """Boolean |S| x |S| mask of phi-invariant pairs."""
        s, t = np.indices(self.left.shape)
        mask = (self.left == s) & (self.right == t)
        mask.setflags(write=False)
        return mask

    def non_identity_pairs(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        out = []
        for s, t in zip(*np.nonzero(~self.invariant)):
            out.append(((int(s), int(t)), self(int(s), int(t))))
        return out

    def restrict_names(self) -> dict[tuple[str, str], tuple[str, str]]:
        a = self.alphabet
        return {
            (a.letters[s], a.letters[t]): (a.letters[u], a.letters[v])
            for (s, t), (u, v) in self.non_identity_pairs()
        }

    @cached_property
    def _key(self) -> tuple:
        return (self.alphabet, self.left.tobytes(), self.right.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadMap) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"QuadMap({len(self.alphabet)} letters, {len(self.non_identity_pairs())} non-trivial pairs)"


@dataclass(frozen=True)
class AlternatingKind:
    """Alternating position sequence 1,2,1,... (start=1) or 2,1,2,... (start=2)."""

    start: int
    length: int

    def __post_init__(self):
        if self.start not in (LEFT, RIGHT):
            raise ConfigurationError("alternating start must be 1 or 2")
        if self.length < 0:
            raise ConfigurationError("alternating length must be non-negative")


def _check_position(w: Sequence[int], i: int) -> None:
    if not 1 <= i <= len(w) - 1:
        raise RangeError(f"position {i} out of range for a word of length {len(w)}")


def apply_at(phi: QuadMap, w: Sequence[int], i: int) -> Word:
    """Replace entries i, i+1 (1-based) of `w` by their image under phi."""
    _check_position(w, i)
    w = tuple(w)
    u, v = phi(w[i - 1], w[i])
    return w[: i - 1] + (u, v) + w[i + 1 :]


def apply_sequence(phi: QuadMap, w: Sequence[int], positions: Iterable[int]) -> Word:
    """Apply phi at each position in turn, first position first."""
    w = list(w)
    left, right = phi.left, phi.right
    for i in positions:
        _check_position(w, i)
        a, b = w[i - 1], w[i]
        w[i - 1], w[i] = int(left[a, b]), int(right[a, b])
    return tuple(w)


@lru_cache(maxsize=None)
def delta_sequence(p: int) -> tuple[int, ...]:
    """delta_1 is empty and delta_p = shift(delta_{p-1}) . 1 . 2 ... (p-1)."""
    if p < 1:
        raise ConfigurationError("delta_sequence needs p >= 1")
    seq: tuple[int, ...] = ()
    for q in range(2, p + 1):
        seq = tuple(i + 1 for i in seq) + tuple(range(1, q))
    return seq


def alternating_sequence(kind: AlternatingKind | int, length: int | None = None) -> tuple[int, ...]:
    """Either ``alternating_sequence(AlternatingKind(1, 4))`` or ``alternating_sequence(1, 4)``."""
    if not isinstance(kind, AlternatingKind):
        kind = AlternatingKind(kind, length)
    other = RIGHT if kind.start == LEFT else LEFT
    return tuple(kind.start if k % 2 == 0 else other for k in range(kind.length))


def is_phi_invariant(phi: QuadMap, w: Sequence[int]) -> bool:
    inv = phi.invariant
    return all(inv[w[k], w[k + 1]] for k in range(len(w) - 1))
