"""Full normal forms built from phi, monoid elements and divisibility."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import analysis
from .exceptions import (
    BudgetExceededError,
    ConfigurationError,
    NonConfluentError,
    NonNormalisingError,
    PreconditionError,
    StrategyCycleError,
)
from .qmap import QuadMap, apply_at, apply_sequence, delta_sequence, is_phi_invariant
from .words import Word

DELTA, LEFTMOST, EXHAUSTIVE, AUTO = "delta", "leftmost", "exhaustive", "auto"
STRATEGIES = (DELTA, LEFTMOST, EXHAUSTIVE, AUTO)


def default_budget(p: int) -> int:
    """One past the longest rewriting sequence allowed in class (4,3)."""
    return max(2**p - p, 1)


def _resolve_budget(budget, p: int) -> int | None:
    if budget == "auto":
        return default_budget(p)
    if budget is not None and budget < 0:
        raise ConfigurationError("budget must be non-negative")
    return budget


def normalize(phi: QuadMap, w: Sequence[int], strategy: str = AUTO, budget: int | str | None = "auto") -> Word:
    """Normal form of `w`.

    ``delta`` applies phi along delta_p and is only used once the class-(4,3)
    axioms have been verified. ``leftmost`` rewrites the leftmost
    non-invariant pair. ``exhaustive`` explores every rewriting and insists on
    a unique reachable invariant word. ``auto`` picks delta when allowed and
    exhaustive otherwise. `budget` caps steps (leftmost) or rounds
    (exhaustive); None means unbounded.
    """
    w = tuple(w)
    if strategy == AUTO:
        strategy = DELTA if analysis.check_axioms_43(phi) else EXHAUSTIVE
    if strategy == DELTA:
        if not analysis.check_axioms_43(phi):
            raise PreconditionError("delta strategy requires phi to satisfy the class-(4,3) axioms")
        return apply_sequence(phi, w, delta_sequence(max(len(w), 1)))
    if strategy == LEFTMOST:
        return _leftmost(phi, w, _resolve_budget(budget, len(w)))
    if strategy == EXHAUSTIVE:
        return _exhaustive(phi, w, _resolve_budget(budget, len(w)))
    raise ConfigurationError(f"unknown strategy {strategy!r}")


def leftmost_position(phi: QuadMap, w: Sequence[int]) -> int | None:
    inv = phi.invariant
    for i in range(len(w) - 1):
        if not inv[w[i], w[i + 1]]:
            return i + 1
    return None


def _leftmost(phi: QuadMap, w: Word, budget: int | None) -> Word:
    seen = {w: 0}
    path = [w]
    steps = 0
    while True:
        i = leftmost_position(phi, w)
        if i is None:
            return w
        if budget is not None and steps >= budget:
            raise BudgetExceededError(f"leftmost strategy exceeded {budget} steps", witness=path[0])
        w = apply_at(phi, w, i)
        steps += 1
        if w in seen:
            raise StrategyCycleError("leftmost strategy revisits a word", witness=path[seen[w]:] + [w])
        seen[w] = len(path)
        path.append(w)


def successors(phi: QuadMap, w: Word) -> list[tuple[int, Word]]:
    """(position, word) for every single rewriting step from `w`, by position."""
    inv = phi.invariant
    out = []
    for i in range(len(w) - 1):
        if not inv[w[i], w[i + 1]]:
            out.append((i + 1, apply_at(phi, w, i + 1)))
    return out


def find_cycle(graph: dict, start) -> list | None:
    """Shortest closed walk through `start` in a successor map, or None."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in graph.get(u, ()):
            if v == start:
                walk = [u]
                while prev[walk[-1]] is not None:
                    walk.append(prev[walk[-1]])
                walk.reverse()
                return walk + [start]
            if v not in prev:
                prev[v] = u
                queue.append(v)
    return None


def _exhaustive(phi: QuadMap, w: Word, budget: int | None) -> Word:
    graph = {}
    frontier = [w]
    seen = {w}
    normals = []
    rounds = 0
    while frontier:
        if budget is not None and rounds > budget:
            raise BudgetExceededError(f"exploration still growing after {budget} rounds", witness=w)
        nxt = []
        for u in frontier:
            succ = [v for _, v in successors(phi, u)]
            graph[u] = succ
            if not succ:
                normals.append(u)
            for v in succ:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
        rounds += 1
    if not normals:
        # every reachable word has a successor, so some reachable word lies on a cycle
        for u in sorted(graph):
            cyc = find_cycle(graph, u)
            if cyc is not None:
                raise NonNormalisingError("no invariant word is reachable", witness=cyc)
        raise NonNormalisingError("no invariant word is reachable", witness=[w])
    if len(normals) > 1:
        raise NonConfluentError("several invariant words are reachable", witness=sorted(normals))
    return normals[0]


# ---------------------------------------------------------------------------
# Mod-e normal forms and monoid elements


def _neutral(phi: QuadMap) -> int:
    return analysis.require_neutral(phi)


def project(phi: QuadMap, w: Sequence[int]) -> Word:
    e = phi.alphabet.neutral_index
    return tuple(x for x in w if x != e)


def normalize_mod_e(phi: QuadMap, w: Sequence[int], strategy: str = AUTO, budget="auto") -> Word:
    """Geodesic normal form: the normal form of `w` with the neutral letters removed."""
    _neutral(phi)
    return project(phi, normalize(phi, w, strategy, budget))


@dataclass(frozen=True)
class MonoidElement:
    """An element represented by its e-free normal word; equality is equality of normal forms."""

    nf: Word

    @property
    def degree(self) -> int:
        return len(self.nf)

    def format(self, phi: QuadMap) -> str:
        return phi.alphabet.format(self.nf) if self.nf else "1"


def element(phi: QuadMap, w: Sequence[int] | str) -> MonoidElement:
    if isinstance(w, str):
        w = phi.alphabet.parse(w)
    return MonoidElement(normalize_mod_e(phi, w))


def unit() -> MonoidElement:
    return MonoidElement(())


def multiply(phi: QuadMap, x: MonoidElement, y: MonoidElement) -> MonoidElement:
    if not x.nf:
        return y
    if not y.nf:
        return x
    return MonoidElement(normalize_mod_e(phi, x.nf + y.nf))


@lru_cache(maxsize=128)
def grading(phi: QuadMap) -> dict[int, int] | None:
    """A positive degree for every non-neutral letter compatible with all rules, if one is found.

    Letters that never arise as a one-letter image get degree 1; a rule
    s|t -> u|e forces deg(u) = deg(s) + deg(t). The result is verified against
    every rule, so a returned grading is always genuine.
    """
    e = phi.alphabet.neutral_index
    letters = [s for s in range(phi.size) if s != e]
    merged = {}
    for s in letters:
        for t in letters:
            rhs = project(phi, phi(s, t))
            if len(rhs) == 1 and rhs[0] not in (s, t):
                merged.setdefault(rhs[0], []).append((s, t))
            if len(rhs) == 0:
                return None  # a product of non-trivial letters is the unit
    deg = {s: 1 for s in letters if s not in merged}
    changed = True
    while changed:
        changed = False
        for u, sources in merged.items():
            for s, t in sources:
                if s in deg and t in deg:
                    d = deg[s] + deg[t]
                    if u not in deg:
                        deg[u] = d
                        changed = True
                    elif deg[u] != d:
                        return None
    if len(deg) != len(letters):
        return None
    for s in letters:
        for t in letters:
            rhs = project(phi, phi(s, t))
            if deg[s] + deg[t] != sum(deg[x] for x in rhs):
                return None
    return deg


def degree(phi: QuadMap, x: MonoidElement) -> int | None:
    g = grading(phi)
    if g is None:
        return None
    return sum(g[s] for s in x.nf)


def normal_words(phi: QuadMap, max_len: int):
    """Every e-free phi-invariant word of length <= max_len, shortest first."""
    e = phi.alphabet.neutral_index
    letters = [s for s in range(phi.size) if s != e]
    inv = phi.invariant
    level = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in level:
            for s in letters:
                if not w or inv[w[-1], s]:
                    nxt.append(w + (s,))
        yield from nxt
        level = nxt


@dataclass(frozen=True)
class DivisibilityResult:
    divides: bool
    witness: MonoidElement | None
    complete: bool

    def __bool__(self) -> bool:
        return self.divides


def left_divides(phi: QuadMap, x: MonoidElement, g: MonoidElement, bound: int | None = None) -> DivisibilityResult:
    """Search h with nf length <= bound and x h = g.

    A negative answer is complete when the monoid carries a positive grading
    and `bound` reaches deg(g) - deg(x), since the normal form of h is never
    longer than its degree.
    """
    if bound is None:
        bound = g.degree
    if bound < 0:
        raise ConfigurationError("bound must be non-negative")
    grad = grading(phi)
    target = None
    if grad is not None:
        target = degree(phi, g) - degree(phi, x)
        if target < 0:
            return DivisibilityResult(False, None, True)
    for w in normal_words(phi, bound):
        h = MonoidElement(w)
        if target is not None and sum(grad[s] for s in w) != target:
            continue
        if multiply(phi, x, h) == g:
            return DivisibilityResult(True, h, True)
    complete = grad is not None and bound >= target
    return DivisibilityResult(False, None, complete)
