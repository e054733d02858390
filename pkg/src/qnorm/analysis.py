"""Axiom checks, domino rule, minimal class and p-class, neutral letters.

Everything here is decided by exhaustive enumeration of S^3 (or S^p), so
the answers are exact for the finite table at hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _engine as eng
from .exceptions import ConfigurationError, PreconditionError
from .qmap import LEFT, RIGHT, QuadMap, alternating_sequence, apply_sequence, is_phi_invariant
from .words import Alphabet, Word

DEFAULT_CAP = 64

EXACT, CAPPED, CYCLE = "exact", "capped", "cycle"


# ---------------------------------------------------------------------------
# class-(4,3) axioms and the domino rule


@lru_cache(maxsize=256)
def find_idempotency_violation(phi: QuadMap) -> Word | None:
    l2 = phi.left[phi.left, phi.right]
    r2 = phi.right[phi.left, phi.right]
    bad = np.argwhere((l2 != phi.left) | (r2 != phi.right))
    return tuple(int(x) for x in bad[0]) if bad.size else None


def check_idempotent(phi: QuadMap) -> bool:
    return find_idempotency_violation(phi) is None


def _rows(phi: QuadMap, domain, k: int) -> np.ndarray:
    if domain is None:
        return eng.all_words(phi.size, k)
    return np.array([tuple(w) for w in domain], dtype=eng._dtype(phi.size)).reshape(-1, k)


def _axioms_violation(phi: QuadMap, words: np.ndarray) -> Word | None:
    f212 = eng.apply_positions(phi, words, (2, 1, 2))
    f2121 = eng.apply_positions(phi, f212, (1,))
    f1212 = eng.apply_positions(phi, words, (1, 2, 1, 2))
    diff = np.any(f212 != f2121, axis=1) | np.any(f212 != f1212, axis=1)
    idx = np.nonzero(diff)[0]
    return tuple(int(x) for x in words[idx[0]]) if idx.size else None


@lru_cache(maxsize=256)
def _axioms_violation_full(phi: QuadMap) -> Word | None:
    bad = find_idempotency_violation(phi)
    if bad is not None:
        return bad
    return _axioms_violation(phi, eng.all_words(phi.size, 3))


def find_axioms_43_violation(phi: QuadMap, domain: Iterable[Sequence[int]] | None = None) -> Word | None:
    """First word of S^2 or S^3 breaking idempotency or phi_212 = phi_2121 = phi_1212.

    With `domain` (length-3 words) only those words and their length-2
    factors are examined.
    """
    if domain is None:
        return _axioms_violation_full(phi)
    words = _rows(phi, domain, 3)
    for pair in sorted({(int(r[i]), int(r[i + 1])) for r in words for i in (0, 1)}):
        u = phi(*pair)
        if phi(*u) != u:
            return pair
    return _axioms_violation(phi, words)


def check_axioms_43(phi: QuadMap, domain: Iterable[Sequence[int]] | None = None) -> bool:
    """phi idempotent and phi_212 = phi_2121 = phi_1212 on S^3 (or on `domain`)."""
    return find_axioms_43_violation(phi, domain) is None


def _domino_violation(phi: QuadMap, t0, s1, s2) -> Word | None:
    keep = phi.invariant[s1, s2]
    t0, s1, s2 = t0[keep], s1[keep], s2[keep]
    u1, t1 = phi.left[t0, s1], phi.right[t0, s1]
    u2 = phi.left[t1, s2]
    bad = ~phi.invariant[u1, u2]
    if not bad.any():
        return None
    # report the lexicographically first triple
    triples = np.stack([t0[bad], s1[bad], s2[bad]], axis=1)
    order = np.lexsort(triples.T[::-1])
    return tuple(int(x) for x in triples[order[0]])


@lru_cache(maxsize=256)
def _domino_violation_full(phi: QuadMap) -> Word | None:
    n = phi.size
    s1, s2 = np.nonzero(phi.invariant)
    if s1.size == 0:
        return None
    t0 = np.repeat(np.arange(n), s1.size)
    return _domino_violation(phi, t0, np.tile(s1, n), np.tile(s2, n))


def find_domino_violation(phi: QuadMap, domain: Iterable[Sequence[int]] | None = None) -> Word | None:
    """First (t0, s1, s2) with s1|s2 invariant whose domino output is not invariant."""
    if domain is None:
        return _domino_violation_full(phi)
    words = _rows(phi, domain, 3)
    return _domino_violation(phi, words[:, 0], words[:, 1], words[:, 2])


def check_domino(phi: QuadMap, domain: Iterable[Sequence[int]] | None = None) -> bool:
    return find_domino_violation(phi, domain) is None


# ---------------------------------------------------------------------------
# Neutral letters


@dataclass(frozen=True)
class NeutralDetection:
    neutral: str | None
    candidates: tuple[str, ...]

    @property
    def warning(self) -> str | None:
        if len(self.candidates) > 1:
            return "several letters satisfy the neutrality equations: " + ", ".join(self.candidates)
        if self.candidates and self.neutral is not None and self._single_letter:
            return "single-letter alphabet: neutrality holds only formally"
        return None

    _single_letter: bool = False


def neutral_candidates(phi: QuadMap) -> list[int]:
    n = phi.size
    s = np.arange(n)
    out = []
    for e in range(n):
        if (
            np.array_equal(phi.left[e, :], s)
            and np.all(phi.right[e, :] == e)
            and np.array_equal(phi.left[:, e], s)
            and np.all(phi.right[:, e] == e)
        ):
            out.append(e)
    return out


def is_neutral(phi: QuadMap, e: int) -> bool:
    return e in neutral_candidates(phi)


def detect_neutral(phi: QuadMap) -> NeutralDetection:
    """The unique letter e with phi(e|s) = phi(s|e) = s|e for all s, if any."""
    cands = tuple(phi.alphabet.letters[i] for i in neutral_candidates(phi))
    neutral = cands[0] if len(cands) == 1 else None
    return NeutralDetection(neutral, cands, _single_letter=phi.size == 1)


def require_neutral(phi: QuadMap) -> int:
    """Index of the declared neutral letter, after checking the neutrality equations."""
    e = phi.alphabet.neutral_index
    if e is None:
        raise ConfigurationError("the system declares no neutral letter")
    if not is_neutral(phi, e):
        raise PreconditionError(f"declared neutral {phi.alphabet.neutral!r} fails phi(e|s) = phi(s|e) = s|e")
    return e


# ---------------------------------------------------------------------------
# Class and p-class


@dataclass(frozen=True)
class ClassValue:
    """Minimal (left, right) class; a side is None unless its status is exact."""

    left: int | None
    right: int | None
    cap: int
    left_status: str = EXACT
    right_status: str = EXACT
    left_witness: Word | None = None
    right_witness: Word | None = None
    p: int = 3
    # a word on which the two alternations settle on different words
    split_witness: Word | None = None

    @property
    def finite(self) -> bool:
        return self.left_status == EXACT and self.right_status == EXACT

    @property
    def consistent(self) -> bool:
        return self.split_witness is None

    def as_tuple(self) -> tuple[int | None, int | None]:
        return (self.left, self.right)

    def within(self, c: int, c2: int) -> bool:
        """Whether the system is of class (c, c2)."""
        return self.finite and self.consistent and self.left <= c and self.right <= c2

    @staticmethod
    def _side(value, status, cap) -> str:
        if status == EXACT:
            return str(value)
        if status == CAPPED:
            return f">={cap}"
        return "inf"

    def __str__(self) -> str:
        text = f"({self._side(self.left, self.left_status, self.cap)}, {self._side(self.right, self.right_status, self.cap)})"
        return text if self.consistent else text + " with diverging sides"

    def to_dict(self, alphabet: Alphabet | None = None) -> dict:
        fmt = (lambda w: alphabet.format(w)) if alphabet is not None else (lambda w: list(w))
        return {
            "p": self.p,
            "left": self.left,
            "right": self.right,
            "left_status": self.left_status,
            "right_status": self.right_status,
            "left_witness": None if self.left_witness is None else fmt(self.left_witness),
            "right_witness": None if self.right_witness is None else fmt(self.right_witness),
            "cap": self.cap,
            "consistent": self.consistent,
            "split_witness": None if self.split_witness is None else fmt(self.split_witness),
            "display": str(self),
        }


class _Windows:
    """Alternating whole-window normalisation on rows of length p.

    For p = 3 the window map is phi itself; for larger p it is the full
    normal form of the (p-1)-window, looked up in a precomputed table.
    """

    def __init__(self, phi: QuadMap, p: int):
        self.phi = phi
        self.p = p
        self.n = phi.size
        if p == 3:
            self.table = None
        else:
            use_delta = check_axioms_43(phi)
            codes = eng.normal_form_table(phi, p - 1, use_delta)
            bad = np.nonzero(codes < 0)[0]
            if bad.size:
                w = tuple(int(x) for x in eng.decode(bad[:1], self.n, p - 1)[0])
                raise PreconditionError(
                    f"not normalising on words of length {p - 1}; witness {phi.alphabet.format(w)}"
                )
            self.table = eng.decode(codes, self.n, p - 1)

    def apply(self, rows: np.ndarray, side: int) -> np.ndarray:
        rows = rows.copy()
        lo = side - 1
        if self.table is None:
            a = rows[:, lo].copy()
            b = rows[:, lo + 1]
            rows[:, lo] = self.phi.left[a, b]
            rows[:, lo + 1] = self.phi.right[a, b]
        else:
            codes = eng.encode(rows[:, lo : lo + self.p - 1], self.n)
            rows[:, lo : lo + self.p - 1] = self.table[codes]
        return rows

    def settled(self, rows: np.ndarray) -> np.ndarray:
        return np.all(self.apply(rows, LEFT) == rows, axis=1) & np.all(self.apply(rows, RIGHT) == rows, axis=1)

    def steps_one(self, w: Word, start: int, cap: int) -> tuple[str, int | None]:
        """Orbit of a single word with cycle detection on (word, next side)."""
        row = np.array([w], dtype=eng._dtype(self.n))
        side = start
        seen = set()
        m = 0
        while True:
            if self.settled(row)[0]:
                return (EXACT if m <= cap else CAPPED), m
            state = (tuple(int(x) for x in row[0]), side)
            if state in seen:
                return CYCLE, None
            seen.add(state)
            row = self.apply(row, side)
            side = RIGHT if side == LEFT else LEFT
            m += 1


def _side_class(win: _Windows, rows: np.ndarray, start: int, cap: int):
    """Max over rows of the least m such that m alternating windows settle the row."""
    steps = np.full(rows.shape[0], -1, dtype=np.int64)
    active = np.arange(rows.shape[0])
    cur = rows.copy()
    side = start
    for m in range(cap + 1):
        done = win.settled(cur)
        steps[active[done]] = m
        active = active[~done]
        cur = cur[~done]
        if active.size == 0 or m == cap:
            break
        cur = win.apply(cur, side)
        side = RIGHT if side == LEFT else LEFT
    if active.size:
        # unresolved rows: distinguish slow from never
        status = CAPPED
        witness = tuple(int(x) for x in rows[active[0]])
        for idx in active:
            w = tuple(int(x) for x in rows[idx])
            st, _ = win.steps_one(w, start, cap)
            if st == CYCLE:
                status, witness = CYCLE, w
                break
        return None, status, witness
    worst = int(steps.max()) if steps.size else 0
    idx = int(np.nonzero(steps == worst)[0][0]) if steps.size else None
    witness = tuple(int(x) for x in rows[idx]) if idx is not None else None
    return worst, EXACT, witness


def _class(phi: QuadMap, p: int, cap: int, domain) -> ClassValue:
    if cap < 1:
        raise ConfigurationError("cap must be at least 1")
    win = _Windows(phi, p)
    if domain is None:
        rows = eng.all_words(phi.size, p)
    else:
        rows = np.array([tuple(w) for w in domain], dtype=eng._dtype(phi.size)).reshape(-1, p)
    left, ls, lw = _side_class(win, rows, LEFT, cap)
    right, rs, rw = _side_class(win, rows, RIGHT, cap)
    split = None
    if ls == EXACT and rs == EXACT and rows.size:
        # settled rows are fixed by both windows, so running the worst count is safe
        ends = []
        for start, count in ((LEFT, left), (RIGHT, right)):
            cur, side = rows, start
            for _ in range(count):
                cur = win.apply(cur, side)
                side = RIGHT if side == LEFT else LEFT
            ends.append(cur)
        idx = np.nonzero(np.any(ends[0] != ends[1], axis=1))[0]
        if idx.size:
            split = tuple(int(x) for x in rows[idx[0]])
    return ClassValue(left, right, cap, ls, rs, lw, rw, p=p, split_witness=split)


@lru_cache(maxsize=128)
def _class_cached(phi: QuadMap, p: int, cap: int) -> ClassValue:
    return _class(phi, p, cap, None)


def minimal_class(phi: QuadMap, cap: int = DEFAULT_CAP, domain: Iterable[Sequence[int]] | None = None) -> ClassValue:
    """Minimal (left, right) class measured on S^3 (or on `domain` if given)."""
    if domain is not None:
        return _class(phi, 3, cap, list(domain))
    return _class_cached(phi, 3, cap)


def minimal_p_class(phi: QuadMap, p: int, cap: int = DEFAULT_CAP) -> ClassValue:
    """Minimal p-class: alternate full normalisations of the two (p-1)-windows of S^p."""
    if p < 3:
        raise ConfigurationError("p-class needs p >= 3")
    return _class_cached(phi, p, cap)


def alternation_steps(phi: QuadMap, w: Sequence[int], side: int, cap: int = DEFAULT_CAP) -> int | None:
    """Least m such that phi applied along the alternating sequence of length m settles `w`."""
    for m in range(cap + 1):
        u = apply_sequence(phi, w, alternating_sequence(side, m))
        if is_phi_invariant(phi, u):
            return m
    return None


def alternation_trace(phi: QuadMap, w: Sequence[int], side: int, cap: int = DEFAULT_CAP) -> list[Word]:
    """Words visited by alternating phi from `side` until invariant (first entry is `w`)."""
    seq = [tuple(w)]
    pos = side
    for _ in range(cap):
        if is_phi_invariant(phi, seq[-1]):
            break
        seq.append(apply_sequence(phi, seq[-1], (pos,)))
        pos = RIGHT if pos == LEFT else LEFT
    return seq


def alternating_maps_agree(phi: QuadMap, u: Sequence[int], v: Sequence[int]) -> bool:
    """Whether phi_u = phi_v as maps on S^3."""
    words = eng.all_words(phi.size, 3)
    return np.array_equal(eng.apply_positions(phi, words, u), eng.apply_positions(phi, words, v))


# ---------------------------------------------------------------------------
# Left-weightedness


@dataclass(frozen=True)
class LeftWeightedResult:
    holds: bool
    complete: bool
    witness: tuple[str, str] | None = None
    bound: int = 1

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "complete": self.complete,
            "witness": None if self.witness is None else list(self.witness),
            "bound": self.bound,
        }


def check_left_weighted(phi: QuadMap, bound: int = 1) -> LeftWeightedResult:
    """For all s, t other than e with s'|t' = phi(s|t), check that s left-divides s'."""
    from .normaliser import element, left_divides

    e = require_neutral(phi)
    complete = True
    for s in range(phi.size):
        if s == e:
            continue
        for t in range(phi.size):
            if t == e:
                continue
            s1, _ = phi(s, t)
            res = left_divides(phi, element(phi, (s,)), element(phi, (s1,)), bound)
            if not res.divides:
                a = phi.alphabet.letters
                return LeftWeightedResult(False, res.complete, (a[s], a[t]), bound)
    return LeftWeightedResult(True, complete, None, bound)


# ---------------------------------------------------------------------------
# Combined report


@dataclass
class ClassReport:
    idempotent_phi: bool
    axioms_43: bool
    domino: bool
    minimal_class: ClassValue
    p_class: dict = field(default_factory=dict)
    neutral: str | None = None
    left_weighted: LeftWeightedResult | None = None
    axioms_witness: Word | None = None
    domino_witness: Word | None = None

    def to_dict(self, alphabet: Alphabet) -> dict:
        fmt = lambda w: None if w is None else alphabet.format(w)
        return {
            "idempotent_phi": self.idempotent_phi,
            "axioms_43": self.axioms_43,
            "axioms_43_witness": fmt(self.axioms_witness),
            "domino": self.domino,
            "domino_witness": fmt(self.domino_witness),
            "neutral": self.neutral,
            "minimal_class": self.minimal_class.to_dict(alphabet),
            "p_class": {str(p): v.to_dict(alphabet) for p, v in sorted(self.p_class.items())},
            "left_weighted": None if self.left_weighted is None else self.left_weighted.to_dict(),
        }


def class_report(phi: QuadMap, ps: Iterable[int] = (), cap: int = DEFAULT_CAP, left_weighted: bool = True) -> ClassReport:
    neutral = detect_neutral(phi).neutral
    lw = None
    if left_weighted and phi.alphabet.neutral is not None and is_neutral(phi, phi.alphabet.neutral_index):
        lw = check_left_weighted(phi)
    return ClassReport(
        idempotent_phi=check_idempotent(phi),
        axioms_43=check_axioms_43(phi),
        domino=check_domino(phi),
        minimal_class=minimal_class(phi, cap),
        p_class={p: minimal_p_class(phi, p, cap) for p in ps},
        neutral=neutral,
        left_weighted=lw,
        axioms_witness=find_axioms_43_violation(phi),
        domino_witness=find_domino_violation(phi),
    )


# ---------------------------------------------------------------------------
# Extensional checks of the normalisation axioms


@dataclass(frozen=True)
class PropertyResult:
    name: str
    holds: bool
    witness: str | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "witness": self.witness, "detail": self.detail}


def normal_form_rows(phi: QuadMap, k: int, strategy: str) -> np.ndarray:
    """Rows of normal forms of S^k; raises if a strategy fails on some word."""
    n = phi.size
    if strategy == "delta":
        return eng.delta_table(phi, k)
    if strategy == "exhaustive":
        codes = eng.exhaustive_table(phi, k)
        bad = np.nonzero(codes < 0)[0]
        if bad.size:
            w = tuple(int(x) for x in eng.decode(bad[:1], n, k)[0])
            kind = "non-normalising" if codes[bad[0]] == eng.UNKNOWN else "non-confluent"
            raise PreconditionError(f"{kind} at {phi.alphabet.format(w)}")
        return eng.decode(codes, n, k)
    if strategy == "leftmost":
        rows, done = eng.leftmost_table(phi, k, 2**k - k)
        if not done.all():
            w = tuple(int(x) for x in eng.all_words(n, k)[np.nonzero(~done)[0][0]])
            raise PreconditionError(f"leftmost strategy did not finish on {phi.alphabet.format(w)}")
        return rows
    raise ConfigurationError(f"unknown strategy {strategy!r}")


def check_normalisation_axioms(phi: QuadMap, max_len: int = 5, strategy: str = "delta") -> list[PropertyResult]:
    """Length preservation, identity on letters, and nu(u nu(w) v) = nu(u w v) up to max_len."""
    n = phi.size
    fmt = phi.alphabet.format
    results = []
    tables = {k: normal_form_rows(phi, k, strategy) for k in range(1, max_len + 1)}
    # length is preserved structurally by the row representation
    results.append(PropertyResult("length_preserved", True, None, "rows keep their width"))
    bad1 = eng.first_mismatch(tables[1], eng.all_words(n, 1))
    results.append(
        PropertyResult("letters_fixed", bad1 is None, None if bad1 is None else fmt((bad1,)))
    )
    witness = None
    for k in range(2, max_len + 1):
        words = eng.all_words(n, k)
        full = tables[k]
        for i in range(k):
            for length in range(1, k - i + 1):
                rows = words.copy()
                win = rows[:, i : i + length]
                rows[:, i : i + length] = tables[length][eng.encode(win, n)]
                bad = eng.first_mismatch(tables[k][eng.encode(rows, n)], full)
                if bad is not None and witness is None:
                    w = tuple(int(x) for x in words[bad])
                    witness = f"{fmt(w)} (factor {i + 1}..{i + length})"
    results.append(PropertyResult("factor_compatible", witness is None, witness))
    # invariant words are exactly the normal words
    inv_witness = None
    for k in range(2, max_len + 1):
        words = eng.all_words(n, k)
        fixed = np.all(tables[k] == words, axis=1)
        inv = eng.invariant_rows(phi, words)
        bad = np.nonzero(fixed != inv)[0]
        if bad.size:
            inv_witness = fmt(tuple(int(x) for x in words[bad[0]]))
            break
    results.append(PropertyResult("normal_iff_invariant", inv_witness is None, inv_witness))
    return results


def strategies_agree(phi: QuadMap, max_len: int = 5, strategies=("delta", "leftmost", "exhaustive")) -> PropertyResult:
    fmt = phi.alphabet.format
    for k in range(1, max_len + 1):
        base = None
        for strat in strategies:
            try:
                rows = normal_form_rows(phi, k, strat)
            except PreconditionError as exc:
                return PropertyResult("strategies_agree", False, str(exc), strat)
            if base is None:
                base = rows
                continue
            bad = eng.first_mismatch(rows, base)
            if bad is not None:
                w = tuple(int(x) for x in eng.all_words(phi.size, k)[bad])
                return PropertyResult("strategies_agree", False, fmt(w), f"{strategies[0]} vs {strat}")
    return PropertyResult("strategies_agree", True)


def termination_bound(class_value: ClassValue | None, p: int) -> tuple[int | None, str | None]:
    """Upper bound on rewriting sequences from length-p words implied by the class."""
    if class_value is None:
        return None, None
    if class_value.within(3, 3):
        return p * (p - 1) // 2, "class (3,3)"
    if class_value.within(4, 3) or class_value.within(3, 4):
        return 2**p - p - 1, "class (4,3)"
    return None, None


def log2_class(n: int) -> int:
    """3 + floor(log2 n), the class of the midpoint-averaging family."""
    return 3 + int(math.floor(math.log2(n)))


# ---------------------------------------------------------------------------
# Locality of a reference normalisation


def check_locality(nu, phi: QuadMap, max_len: int = 4) -> tuple[PropertyResult, PropertyResult]:
    """Test an arbitrary normal-form function `nu` against its two-letter restriction.

    The first result asks whether a word is nu-normal exactly when all its
    length-two factors are; the second whether nu(w) is reachable from w by
    applying phi at single positions. Witnesses are the first failing words
    by length, then enumeration order.
    """
    fmt = phi.alphabet.format
    a = phi.alphabet
    local = None
    reach = None
    for k in range(2, max_len + 1):
        for w in a.words(k):
            nw = tuple(nu(w))
            if local is None:
                bad = [i for i in range(k - 1) if tuple(nu(w[i : i + 2])) != w[i : i + 2]]
                if (nw == w) != (not bad):
                    detail = f"normal, factor {fmt(w[bad[0] : bad[0] + 2])} is not" if nw == w else "not normal, all factors normal"
                    local = PropertyResult("normality_is_local", False, fmt(w), detail)
            if reach is None:
                seen = {w}
                todo = [w]
                while todo and nw not in seen:
                    u = todo.pop()
                    for i in range(1, k):
                        v = apply_sequence(phi, u, (i,))
                        if v not in seen:
                            seen.add(v)
                            todo.append(v)
                if nw not in seen:
                    reach = PropertyResult("normal_form_reachable", False, fmt(w), f"nu gives {fmt(nw)}")
        if local is not None and reach is not None:
            break
    return (
        local or PropertyResult("normality_is_local", True),
        reach or PropertyResult("normal_form_reachable", True),
    )
