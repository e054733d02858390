"""Vectorised kernels over all words of a fixed length.

A word of length k over n letters is identified with its base-n code, first
letter most significant, so ``np.arange(n**k)`` enumerates S^k in
lexicographic order. These kernels back the exhaustive checks in
`analysis`, `normaliser` and `garside`.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .qmap import QuadMap, delta_sequence

UNKNOWN = -1  # no invariant word reachable (yet)
CONFLICT = -2  # at least two distinct invariant words reachable


def _dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


def all_words(n: int, k: int) -> np.ndarray:
    """Array of shape (n**k, k) listing S^k in lexicographic order."""
    codes = np.arange(n**k, dtype=np.int64)
    out = np.empty((n**k, k), dtype=_dtype(n))
    for col in range(k - 1, -1, -1):
        out[:, col] = codes % n
        codes //= n
    return out


def encode(rows: np.ndarray, n: int) -> np.ndarray:
    codes = np.zeros(rows.shape[0], dtype=np.int64)
    for col in range(rows.shape[1]):
        codes = codes * n + rows[:, col]
    return codes


def decode(codes: np.ndarray, n: int, k: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64).copy()
    out = np.empty((codes.shape[0], k), dtype=_dtype(n))
    for col in range(k - 1, -1, -1):
        out[:, col] = codes % n
        codes //= n
    return out


def apply_positions(phi: QuadMap, rows: np.ndarray, positions) -> np.ndarray:
    """Apply phi at each 1-based position in turn to every row (returns a copy)."""
    rows = rows.copy()
    left, right = phi.left, phi.right
    for i in positions:
        a = rows[:, i - 1].copy()
        b = rows[:, i]
        rows[:, i - 1] = left[a, b]
        rows[:, i] = right[a, b]
    return rows


def invariant_rows(phi: QuadMap, rows: np.ndarray) -> np.ndarray:
    inv = phi.invariant
    ok = np.ones(rows.shape[0], dtype=bool)
    for i in range(rows.shape[1] - 1):
        ok &= inv[rows[:, i], rows[:, i + 1]]
    return ok


def first_mismatch(a: np.ndarray, b: np.ndarray) -> int | None:
    bad = np.nonzero(np.any(a != b, axis=1) if a.ndim == 2 else a != b)[0]
    return int(bad[0]) if bad.size else None


@lru_cache(maxsize=64)
def delta_table(phi: QuadMap, k: int) -> np.ndarray:
    """Image of every word of S^k under the delta_k position sequence."""
    out = apply_positions(phi, all_words(phi.size, k), delta_sequence(max(k, 1)))
    out.setflags(write=False)
    return out


def _join(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.where(x == UNKNOWN, y, x)
    clash = (x == CONFLICT) | (y == CONFLICT) | ((x >= 0) & (y >= 0) & (x != y))
    out[clash] = CONFLICT
    return out


def successor_codes(phi: QuadMap, k: int) -> np.ndarray:
    """Array (n**k, k-1): code after rewriting at position i+1, or -1 if that pair is invariant."""
    n = phi.size
    rows = all_words(n, k)
    codes = np.arange(n**k, dtype=np.int64)
    succ = np.full((n**k, max(k - 1, 0)), -1, dtype=np.int64)
    inv = phi.invariant
    for i in range(k - 1):
        a = rows[:, i].astype(np.int64)
        b = rows[:, i + 1].astype(np.int64)
        moving = ~inv[a, b]
        hi = n ** (k - i - 1)
        lo = n ** (k - i - 2)
        new = codes - a * hi - b * lo + phi.left[a, b].astype(np.int64) * hi + phi.right[a, b].astype(np.int64) * lo
        succ[moving, i] = new[moving]
    return succ


@lru_cache(maxsize=64)
def exhaustive_table(phi: QuadMap, k: int) -> np.ndarray:
    """For every word of S^k, the code of its unique reachable invariant word.

    Entries are UNKNOWN when no invariant word is reachable and CONFLICT when
    several are. Computed as the least fixed point of the join over
    successors, which handles cycles.
    """
    n = phi.size
    total = n**k
    if k <= 1:
        out = np.arange(total, dtype=np.int64)
        out.setflags(write=False)
        return out
    succ = successor_codes(phi, k)
    terminal = np.all(succ < 0, axis=1)
    val = np.where(terminal, np.arange(total, dtype=np.int64), UNKNOWN)
    active = np.nonzero(~terminal)[0]
    while True:
        new = np.full(active.shape[0], UNKNOWN, dtype=np.int64)
        for i in range(k - 1):
            s = succ[active, i]
            has = s >= 0
            cand = np.full(active.shape[0], UNKNOWN, dtype=np.int64)
            cand[has] = val[s[has]]
            new = _join(new, cand)
        if np.array_equal(new, val[active]):
            break
        val[active] = new
    val.setflags(write=False)
    return val


@lru_cache(maxsize=64)
def leftmost_table(phi: QuadMap, k: int, budget: int) -> tuple[np.ndarray, np.ndarray]:
    """Rewrite the leftmost non-invariant pair until invariant; returns (rows, finished)."""
    rows = all_words(phi.size, k).copy()
    inv = phi.invariant
    finished = invariant_rows(phi, rows)
    for _ in range(budget):
        todo = np.nonzero(~finished)[0]
        if todo.size == 0:
            break
        sub = rows[todo]
        pos = np.full(todo.size, -1)
        for i in range(k - 2, -1, -1):
            bad = ~inv[sub[:, i], sub[:, i + 1]]
            pos[bad] = i
        idx = np.arange(todo.size)
        a = sub[idx, pos].copy()
        b = sub[idx, pos + 1]
        sub[idx, pos] = phi.left[a, b]
        sub[idx, pos + 1] = phi.right[a, b]
        rows[todo] = sub
        finished[todo] = invariant_rows(phi, sub)
    rows.setflags(write=False)
    return rows, finished


def normal_form_table(phi: QuadMap, k: int, use_delta: bool) -> np.ndarray:
    """Codes of the normal forms of S^k; delta if trusted, exhaustive otherwise."""
    if use_delta:
        return encode(delta_table(phi, k), phi.size)
    return exhaustive_table(phi, k)
