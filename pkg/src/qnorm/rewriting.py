"""The rewriting system s|t -> phi(s|t) and bounded exhaustive exploration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import analysis
from .analysis import ClassValue
from .exceptions import BudgetExceededError, ConfigurationError
from .qmap import QuadMap
from .words import Alphabet, Word


@dataclass(frozen=True)
class RuleSet:
    alphabet: Alphabet
    rules: tuple[tuple[Word, Word], ...]
    mod_e: bool = False

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def lookup(self) -> dict[Word, Word]:
        return dict(self.rules)

    def names(self) -> list[tuple[str, str]]:
        f = self.alphabet.format
        return [(f(l), f(r)) for l, r in self.rules]

    def problems(self) -> list[str]:
        """Violations of reducedness: empty when every rhs is irreducible and no rule is trivial."""
        out = []
        lhs = self.lookup
        f = self.alphabet.format
        seen = set()
        for l, r in self.rules:
            if l in seen:
                out.append(f"duplicate left side {f(l)}")
            seen.add(l)
            if l == r:
                out.append(f"trivial rule {f(l)}")
            for i in range(len(r) - 1):
                if r[i : i + 2] in lhs:
                    out.append(f"right side {f(r)} of {f(l)} is reducible")
        return out

    def successors(self, w: Word) -> list[tuple[int, Word]]:
        lhs = self.lookup
        out = []
        for i in range(len(w) - 1):
            r = lhs.get(w[i : i + 2])
            if r is not None:
                out.append((i + 1, w[:i] + r + w[i + 2 :]))
        return out

    def start_words(self, length: int) -> Iterable[Word]:
        return self.alphabet.words(length, exclude_neutral=self.mod_e)


def extract_rules(phi: QuadMap, mod_e: bool = False) -> RuleSet:
    """One rule per non-invariant pair; in the mod-e variant the right side is e-projected."""
    if mod_e:
        e = analysis.require_neutral(phi)
        rules = []
        for s in range(phi.size):
            for t in range(phi.size):
                if e in (s, t):
                    continue
                rhs = tuple(x for x in phi(s, t) if x != e)
                if rhs != (s, t):
                    rules.append(((s, t), rhs))
        return RuleSet(phi.alphabet, tuple(rules), True)
    rules = [((s, t), img) for (s, t), img in phi.non_identity_pairs()]
    return RuleSet(phi.alphabet, tuple(rules), False)


# ---------------------------------------------------------------------------
# graph analysis


def _tarjan(nodes: Sequence, succ: dict) -> list[list]:
    """Strongly connected components, sinks first."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


@dataclass
class _GraphFacts:
    succ: dict
    labelled: dict
    normals_reached: dict  # node -> tuple of up to two normal words
    longest: dict  # node -> int, or None when a cycle is reachable
    cyclic: set  # nodes lying on a cycle
    nxt_on_longest: dict


def _analyse(order: Sequence[Word], labelled: dict) -> _GraphFacts:
    succ = {u: [v for _, v in labelled[u]] for u in order}
    comps = _tarjan(order, succ)
    normals: dict = {}
    longest: dict = {}
    nxt: dict = {}
    cyclic = set()
    for comp in comps:
        members = set(comp)
        is_cycle = len(comp) > 1 or comp[0] in succ[comp[0]]
        if is_cycle:
            cyclic |= members
        acc: list = []
        for u in comp:
            if not succ[u]:
                acc.append(u)
            for v in succ[u]:
                if v in members:
                    continue
                for x in normals[v]:
                    if x not in acc:
                        acc.append(x)
        acc = tuple(sorted(acc)[:2])
        for u in comp:
            normals[u] = acc
        if is_cycle:
            for u in comp:
                longest[u] = None
            continue
        u = comp[0]
        best, arg = 0, None
        for v in succ[u]:
            lv = longest[v]
            if lv is None:
                best, arg = None, None
                break
            if lv + 1 > best:
                best, arg = lv + 1, v
        longest[u] = best
        nxt[u] = arg
    return _GraphFacts(succ, labelled, normals, longest, cyclic, nxt)


def _cycle_through(facts: _GraphFacts, start: Word) -> list[Word]:
    """Shortest closed walk through `start`, successors taken by position."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in facts.succ[u]:
            if v == start:
                walk = [u]
                while prev[walk[-1]] is not None:
                    walk.append(prev[walk[-1]])
                walk.reverse()
                return walk + [start]
            if v not in prev and v in facts.cyclic:
                prev[v] = u
                queue.append(v)
    return [start]


@dataclass
class RewriteGraph:
    """Reachable rewriting graph of one start word."""

    alphabet: Alphabet
    start: Word
    nodes: list[Word]
    edges: list[tuple[Word, int, Word]]
    normal_forms: list[Word]
    cycle: list[Word] | None
    longest: int | None
    longest_path: list[Word] | None
    rounds: int

    @property
    def terminating(self) -> bool:
        return self.cycle is None

    @property
    def normalising(self) -> bool:
        return len(self.normal_forms) >= 1

    @property
    def confluent(self) -> bool:
        return len(self.normal_forms) == 1

    def to_edge_list(self) -> str:
        f = self.alphabet.format
        return "".join(f"{f(u)}\t{i}\t{f(v)}\n" for u, i, v in self.edges)

    def to_dict(self) -> dict:
        f = self.alphabet.format
        return {
            "start": f(self.start),
            "nodes": len(self.nodes),
            "edges": len(self.edges),
            "terminating": self.terminating,
            "normalising": self.normalising,
            "confluent": self.confluent,
            "normal_forms": [f(w) for w in self.normal_forms],
            "cycle": None if self.cycle is None else [f(w) for w in self.cycle],
            "longest": self.longest,
            "longest_path": None if self.longest_path is None else [f(w) for w in self.longest_path],
            "rounds": self.rounds,
        }


def explore(rules: RuleSet, start: Sequence[int], max_steps: int | None = None) -> RewriteGraph:
    """Breadth-first exploration of everything reachable from `start`.

    `max_steps` bounds the number of expansion rounds (default 2^len(start));
    a frontier that is still non-empty afterwards raises BudgetExceededError.
    """
    start = tuple(start)
    if max_steps is None:
        max_steps = 2 ** len(start)
    if max_steps < 0:
        raise ConfigurationError("max_steps must be non-negative")
    order = [start]
    labelled = {}
    seen = {start}
    frontier = [start]
    rounds = 0
    while frontier:
        if rounds >= max_steps:
            raise BudgetExceededError(
                f"frontier still growing after {max_steps} rounds", witness=frontier[0]
            )
        nxt = []
        for u in frontier:
            labelled[u] = rules.successors(u)
            for _, v in labelled[u]:
                if v not in seen:
                    seen.add(v)
                    order.append(v)
                    nxt.append(v)
        frontier = nxt
        rounds += 1
    facts = _analyse(order, labelled)
    edges = [(u, i, v) for u in order for i, v in labelled[u]]
    cycle = None
    for u in order:
        if u in facts.cyclic:
            cycle = _cycle_through(facts, u)
            break
    normal_forms = sorted(u for u in order if not labelled[u])
    longest = facts.longest[start]
    path = None
    if longest is not None:
        path = [start]
        while facts.nxt_on_longest.get(path[-1]) is not None:
            path.append(facts.nxt_on_longest[path[-1]])
    return RewriteGraph(rules.alphabet, start, order, edges, normal_forms, cycle, longest, path, rounds)


@dataclass
class Classification:
    """Verdicts over all start words of length 1..max_len (qualified by that bound)."""

    alphabet: Alphabet
    max_len: int
    mod_e: bool
    words: int
    terminating: bool
    normalising: bool
    confluent: bool
    cycle: list[Word] | None = None
    non_normalising_witness: Word | None = None
    non_confluent_witness: tuple[Word, tuple[Word, ...]] | None = None
    longest: dict = field(default_factory=dict)  # length -> (max sequence, worst word) or None

    @property
    def convergent(self) -> bool:
        return self.terminating and self.confluent

    def to_dict(self) -> dict:
        f = self.alphabet.format
        ncw = self.non_confluent_witness
        return {
            "max_length": self.max_len,
            "mod_e": self.mod_e,
            "start_words": self.words,
            "terminating": self.terminating,
            "normalising": self.normalising,
            "confluent": self.confluent,
            "convergent": self.convergent,
            "cycle": None if self.cycle is None else [f(w) for w in self.cycle],
            "non_normalising_witness": None if self.non_normalising_witness is None else f(self.non_normalising_witness),
            "non_confluent_witness": None
            if ncw is None
            else {"word": f(ncw[0]), "normal_forms": [f(w) for w in ncw[1]]},
            "longest": {
                str(k): None if v is None else {"steps": v[0], "word": f(v[1])}
                for k, v in sorted(self.longest.items())
            },
        }


def _global(rules: RuleSet, lengths: Iterable[int]):
    order = []
    labelled = {}
    for k in lengths:
        for w in rules.start_words(k):
            order.append(w)
    pending = list(order)
    seen = set(order)
    while pending:
        u = pending.pop()
        labelled[u] = rules.successors(u)
        for _, v in labelled[u]:
            if v not in seen:
                seen.add(v)
                order.append(v)
                pending.append(v)
    return order, labelled


def classify(rules: RuleSet, max_len: int = 4, max_steps: int | None = None) -> Classification:
    """Termination, normalisation and confluence over all words up to `max_len`.

    The whole graph on these words is built at once, so `max_steps` is only
    checked against the longest rewriting sequence found.
    """
    if max_len < 1:
        raise ConfigurationError("max_len must be at least 1")
    order, labelled = _global(rules, range(1, max_len + 1))
    facts = _analyse(order, labelled)
    starts = [w for k in range(1, max_len + 1) for w in rules.start_words(k)]
    out = Classification(rules.alphabet, max_len, rules.mod_e, len(starts), True, True, True)
    for w in starts:
        if out.cycle is None and w in facts.cyclic:
            out.cycle = _cycle_through(facts, w)
            out.terminating = False
        nf = facts.normals_reached[w]
        if not nf and out.non_normalising_witness is None:
            out.non_normalising_witness = w
            out.normalising = False
            out.confluent = False
        if len(nf) > 1 and out.non_confluent_witness is None:
            out.non_confluent_witness = (w, nf)
            out.confluent = False
    for k in range(1, max_len + 1):
        best = None
        for w in rules.start_words(k):
            lw = facts.longest[w]
            if lw is None:
                best = None
                break
            if best is None or lw > best[0]:
                best = (lw, w)
        out.longest[k] = best
    if max_steps is not None:
        for v in out.longest.values():
            if v is not None and v[0] > max_steps:
                raise BudgetExceededError(f"a rewriting sequence exceeds {max_steps} steps", witness=v[1])
    return out


@dataclass
class TerminationReport:
    alphabet: Alphabet
    p: int
    terminating: bool
    max_observed: int | None
    worst_word: Word | None
    bound: int | None
    bound_kind: str | None
    cycle: list[Word] | None

    @property
    def within_bound(self) -> bool | None:
        if not self.terminating:
            return False
        if self.bound is None:
            return None
        return self.max_observed <= self.bound

    def to_dict(self) -> dict:
        f = self.alphabet.format
        return {
            "p": self.p,
            "terminating": self.terminating,
            "max_observed": self.max_observed,
            "worst_word": None if self.worst_word is None else f(self.worst_word),
            "bound": self.bound,
            "bound_kind": self.bound_kind,
            "within_bound": self.within_bound,
            "cycle": None if self.cycle is None else [f(w) for w in self.cycle],
        }


def verify_termination_bound(rules: RuleSet, p: int, class_value: ClassValue | None = None) -> TerminationReport:
    """Longest rewriting sequence from every length-p word against the bound implied by the class."""
    order, labelled = _global(rules, [p])
    facts = _analyse(order, labelled)
    bound, kind = analysis.termination_bound(class_value, p)
    best, worst = 0, None
    for w in rules.start_words(p):
        if w in facts.cyclic or facts.longest[w] is None:
            # some reachable word lies on a cycle
            on = w if w in facts.cyclic else _first_cyclic(facts, w)
            return TerminationReport(rules.alphabet, p, False, None, None, bound, kind, _cycle_through(facts, on))
        if worst is None or facts.longest[w] > best:
            best, worst = facts.longest[w], w
    return TerminationReport(rules.alphabet, p, True, best, worst, bound, kind, None)


def _first_cyclic(facts: _GraphFacts, w: Word) -> Word:
    seen = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        if u in facts.cyclic:
            return u
        for v in facts.succ[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return w


def normal_form_by_rewriting(rules: RuleSet, w: Sequence[int]) -> list[Word]:
    """All irreducible words reachable from `w`."""
    w = tuple(w)
    seen = {w}
    stack = [w]
    out = []
    while stack:
        u = stack.pop()
        succ = rules.successors(u)
        if not succ:
            out.append(u)
        for _, v in succ:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return sorted(out)
