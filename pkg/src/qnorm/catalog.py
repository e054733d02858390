"""Built-in example systems.

Each entry builds a QuadMap (and a Garside fragment where one exists) and
lists facts the analysis is expected to reproduce. Facts carry a `basis`:
``literature`` for values stated with the original examples and
``enumeration`` for values we computed and froze as regression data.
"""

from __future__ import annotations

import bisect
import itertools
import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .exceptions import ConfigurationError
from .garside import GarsideFragment, derive_normalisation
from .qmap import QuadMap
from .words import Alphabet, Word

LITERATURE, ENUMERATION = "literature", "enumeration"


@dataclass(frozen=True)
class Fact:
    key: str
    value: object
    basis: str = LITERATURE


@dataclass
class CatalogSystem:
    name: str
    params: dict
    phi: QuadMap
    fragment: GarsideFragment | None = None
    expected: list[Fact] = field(default_factory=list)
    reference_nu: Callable[[Word], Word] | None = None
    notes: dict = field(default_factory=dict)
    # length-3 words on which the table is exact (None: all of S^3)
    domain: list[Word] | None = None

    @property
    def alphabet(self) -> Alphabet:
        return self.phi.alphabet

    def fact(self, key: str):
        for f in self.expected:
            if f.key == key:
                return f.value
        raise KeyError(key)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    summary: str
    builder: Callable[..., CatalogSystem]
    defaults: dict
    limits: dict  # param -> (min, max)

    def build(self, **params) -> CatalogSystem:
        unknown = set(params) - set(self.defaults)
        if unknown:
            raise ConfigurationError(f"{self.name}: unknown parameter(s) {sorted(unknown)}")
        merged = {**self.defaults, **params}
        for key, (lo, hi) in self.limits.items():
            val = merged[key]
            size = len(val) if isinstance(val, str) else val
            if not lo <= size <= hi:
                raise ConfigurationError(f"{self.name}: {key} must lie in [{lo}, {hi}]")
        return self.builder(**merged)


_REGISTRY: dict[str, CatalogEntry] = {}


def _register(name, summary, defaults=None, limits=None):
    def deco(fn):
        _REGISTRY[name] = CatalogEntry(name, summary, fn, defaults or {}, limits or {})
        return fn

    return deco


def names() -> list[str]:
    return list(_REGISTRY)


def entries() -> list[CatalogEntry]:
    return list(_REGISTRY.values())


def get(name: str) -> CatalogEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ConfigurationError(f"unknown catalog entry {name!r}; try one of {', '.join(_REGISTRY)}") from None


def build(name: str, **params) -> CatalogSystem:
    return get(name).build(**params)


def _load_json(fname: str) -> dict:
    return json.loads(resources.files("qnorm.data").joinpath(fname).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Small commutative examples


@_register("lexicographic", "sort adjacent letters (free commutative monoid)", {"letters": "abc"}, {"letters": (1, 12)})
def _lexicographic(letters: str) -> CatalogSystem:
    a = Alphabet(letters)
    phi = QuadMap.from_function(a, lambda s, t: (min(s, t), max(s, t)))
    facts = [Fact("axioms_43", True, ENUMERATION), Fact("domino", True, ENUMERATION), Fact("neutral", a.letters[-1], ENUMERATION)]
    # the largest letter is neutral: c|s -> s|c and s|c is sorted
    if len(a) >= 2:
        facts.append(Fact("minimal_class", (3, 3)))
    if len(a) >= 4:
        facts.append(Fact("longest:4", 6))
    return CatalogSystem("lexicographic", {"letters": letters}, phi, None, facts, reference_nu=lambda w: tuple(sorted(w)))


@_register("parity-ab", "a, b commuting with a^2 = b^2; normal form a^n or a^(n-1) b")
def _parity() -> CatalogSystem:
    a = Alphabet("ab")
    phi = QuadMap.from_pairs(a, {("b", "a"): ("a", "b"), ("b", "b"): ("a", "a")})

    def nu(w):
        if not w:
            return ()
        odd = sum(1 for x in w if x == 1) % 2
        return (0,) * (len(w) - odd) + (1,) * odd

    facts = [Fact("minimal_class", (2, 3)), Fact("axioms_43", True, ENUMERATION)]
    return CatalogSystem("parity-ab", {}, phi, None, facts, reference_nu=nu)


@_register("locnotquad", "normality is local but normal forms are not reachable by pair steps")
def _locnotquad() -> CatalogSystem:
    a = Alphabet("abc")
    phi = QuadMap.from_pairs(a, {("a", "b"): ("a", "c"), ("c", "a"): ("b", "a")})

    def nu(w):
        s = "".join(a.letters[x] for x in w)
        while True:
            t = re.sub("a[bc]a", "aaa", s, count=1)
            if t == s:
                break
            s = t
        s = s.replace("ab", "ac")
        # "ca" -> "ba" in one left-to-right pass over the intermediate word
        s = re.sub("ca", "ba", s)
        return a.encode(s)

    facts = [Fact("normalising", False), Fact("non_normalising_witness", "a.b.a"), Fact("axioms_43", False, ENUMERATION)]
    return CatalogSystem("locnotquad", {}, phi, None, facts, reference_nu=nu)


@_register("quadnotloc", "every word of length n >= 2 normalises to a^(n-1) b")
def _quadnotloc() -> CatalogSystem:
    a = Alphabet("ab")
    phi = QuadMap.from_function(a, lambda s, t: (0, 1))

    def nu(w):
        return tuple(w) if len(w) <= 1 else (0,) * (len(w) - 1) + (1,)

    facts = [Fact("quad1_witness", "a.a.b"), Fact("axioms_43", False, ENUMERATION)]
    return CatalogSystem("quadnotloc", {}, phi, None, facts, reference_nu=nu)


# ---------------------------------------------------------------------------
# Parameterised families with large class


@_register("high3", "a, b1..bn with a b_i -> a b_(i+1) (i odd), b_i a -> b_(i+1) a (i even)", {"n": 4}, {"n": (2, 12)})
def _high3(n: int) -> CatalogSystem:
    letters = ["a"] + [f"b{i}" for i in range(1, n + 1)]
    a = Alphabet(letters)
    pairs = {}
    for i in range(1, n):
        if i % 2:
            pairs[("a", f"b{i}")] = ("a", f"b{i + 1}")
        else:
            pairs[(f"b{i}", "a")] = (f"b{i + 1}", "a")
    phi = QuadMap.from_pairs(a, pairs)
    facts = []
    if n >= 3:
        facts.append(Fact("minimal_class", (n - 1, n)))
        facts.append(Fact("p_class:4", (2, 2)))
        facts.append(Fact("p_class:5", (2, 2)))
    return CatalogSystem("high3", {"n": n}, phi, None, facts)


@_register("log2", "a0..an with a_i a_j -> a_floor((i+j)/2) a_ceil((i+j)/2) for i > j", {"n": 4}, {"n": (1, 12)})
def _log2(n: int) -> CatalogSystem:
    a = Alphabet([f"a{i}" for i in range(n + 1)])

    def fn(i, j):
        if i > j:
            return (i + j) // 2, (i + j + 1) // 2
        return i, j

    phi = QuadMap.from_function(a, fn)
    c = 3 + int(math.floor(math.log2(n)))
    return CatalogSystem("log2", {"n": n}, phi, None, [Fact("minimal_class", (c, c))])


@_register(
    "large4class",
    "a, b1..bn, c1..cn: small 3-class, 4-class (n-1, n)",
    {"n": 10},
    {"n": (2, 12)},
)
def _large4class(n: int) -> CatalogSystem:
    letters = ["a"] + [f"b{i}" for i in range(1, n + 1)] + [f"c{i}" for i in range(1, n + 1)]
    a = Alphabet(letters)
    pairs = {}
    for i in range(1, n):
        if i % 2:
            pairs[("a", f"b{i}")] = ("a", f"b{i + 1}")
            pairs[(f"b{i + 1}", f"c{i}")] = (f"b{i + 1}", f"c{i + 1}")
        else:
            pairs[(f"c{i}", "a")] = (f"c{i + 1}", "a")
            pairs[(f"b{i}", f"c{i + 1}")] = (f"b{i + 1}", f"c{i + 1}")
    phi = QuadMap.from_pairs(a, pairs)
    facts = []
    if n == 10:
        facts.append(Fact("minimal_class", (5, 5)))
        facts.append(Fact("p_class:4", (9, 10)))
    if n >= 5:
        facts.append(Fact("p_class:5", (2, 2)))
    return CatalogSystem("large4class", {"n": n}, phi, None, facts)


# ---------------------------------------------------------------------------
# Termination counterexample


@_register("termin44", "class (4,4), normalising and confluent but with a rewriting cycle")
def _termin44() -> CatalogSystem:
    a = Alphabet(["a", "b", "b'", "b''", "c", "c'", "c''", "d"])
    pairs = {
        ("a", "b"): ("a", "b'"),
        ("b'", "c'"): ("b", "c"),
        ("b", "c'"): ("b''", "c''"),
        ("b'", "c"): ("b''", "c''"),
        ("c", "d"): ("c'", "d"),
    }
    phi = QuadMap.from_pairs(a, pairs)
    facts = [
        Fact("minimal_class", (4, 4)),
        Fact("axioms_43", False, ENUMERATION),
        Fact("domino", False, ENUMERATION),
        Fact("terminating", False),
        Fact("normalising", True),
        Fact("confluent", True),
        Fact("cycle", ["a.b.c.d", "a.b'.c.d", "a.b'.c'.d", "a.b.c.d"]),
    ]
    return CatalogSystem("termin44", {}, phi, None, facts)


# ---------------------------------------------------------------------------
# Plactic monoid


def schensted(word) -> list[list[int]]:
    """Row-insertion tableau (rows top to bottom, each weakly increasing)."""
    rows: list[list[int]] = []
    for x in word:
        for row in rows:
            k = bisect.bisect_right(row, x)
            if k == len(row):
                row.append(x)
                break
            row[k], x = x, row[k]
        else:
            rows.append([x])
    return rows


def tableau_columns(rows) -> list[tuple[int, ...]]:
    """Columns of a tableau as strictly decreasing tuples (read bottom to top)."""
    if not rows:
        return []
    return [tuple(row[j] for row in reversed(rows) if j < len(row)) for j in range(len(rows[0]))]


def _digits(t) -> str:
    return "".join(str(x) for x in t)


def plactic_columns(size: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, size + 1):
        for combo in itertools.combinations(range(1, size + 1), k):
            out.append(tuple(reversed(combo)))
    return out


def plactic_rows(size: int, max_row: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, max_row + 1):
        out.extend(itertools.combinations_with_replacement(range(1, size + 1), k))
    return out


def schensted_phi(size: int, kind: str = "columns", max_row: int = 2) -> tuple[QuadMap, list[tuple[str, str]]]:
    """phi(c|c') = the one- or two-piece tableau of the product, padded with e.

    Columns are strictly decreasing, rows weakly increasing; letters are named
    by their digits and the neutral (empty piece) is ``e``.

    Rows use the reverse-and-complement anti-automorphism: the tableau of the
    mirrored product is computed and its rows, mirrored back, are listed top
    row first. With right padding by e this is the row normal form whose
    class is (3,3); the plain bottom-to-top reading needs four right-first
    steps on 1|2|1. For rows only
    pieces of length <= max_row exist; products needing a longer row are left
    fixed and returned as truncated pairs.
    """
    if not 1 <= size <= 9:
        raise ConfigurationError("plactic alphabets are limited to 1..9 letters")
    if kind == "columns":
        pieces = plactic_columns(size)
    elif kind == "rows":
        pieces = plactic_rows(size, max_row)
    else:
        raise ConfigurationError("kind must be 'columns' or 'rows'")
    names = ["e"] + [_digits(p) for p in pieces]
    a = Alphabet(names, neutral="e")
    lookup = {p: i + 1 for i, p in enumerate(pieces)}
    truncated = []

    def mirror(w) -> tuple[int, ...]:
        return tuple(size + 1 - x for x in reversed(w))

    def fn(s, t):
        if s == 0 or t == 0:
            return (s if s else t), 0
        tab = schensted(pieces[s - 1] + pieces[t - 1])
        if kind == "columns":
            parts = tableau_columns(tab)
        else:
            # rows of the mirrored word's tableau, mirrored back (top row first)
            tab = schensted(mirror(pieces[s - 1] + pieces[t - 1]))
            parts = [mirror(r) for r in tab]
        try:
            ids = [lookup[p] for p in parts]
        except KeyError:
            truncated.append((names[s], names[t]))
            return s, t
        ids += [0] * (2 - len(ids))
        return ids[0], ids[1]

    phi = QuadMap.from_function(a, fn)
    return phi, truncated


@_register("plactic-col", "plactic monoid on columns over {1..size}", {"size": 3}, {"size": (1, 4)})
def _plactic_col(size: int) -> CatalogSystem:
    phi, _ = schensted_phi(size, "columns")
    facts = [Fact("axioms_43", True, ENUMERATION)]
    if size >= 2:
        facts.append(Fact("minimal_class", (3, 3)))
    if size == 3:
        facts.append(Fact("convergent:4", True))
    return CatalogSystem("plactic-col", {"size": size}, phi, None, facts)


@_register(
    "plactic-row",
    "plactic monoid on rows over {1..size}; rows up to 3*max_row are tabulated",
    {"size": 2, "max_row": 2},
    {"size": (1, 4), "max_row": (1, 3)},
)
def _plactic_row(size: int, max_row: int) -> CatalogSystem:
    # Rows form an infinite family. Tabulating rows of length <= 3*max_row
    # makes every product of three rows of length <= max_row exact, so the
    # class measured on that domain is free of truncation effects.
    phi, truncated = schensted_phi(size, "rows", 3 * max_row)
    short = [0] + [i for i, x in enumerate(phi.alphabet.letters) if x != "e" and len(x) <= max_row]
    facts = []
    if size >= 2:
        facts.append(Fact("minimal_class:short_rows", (3, 3)))
    sys_ = CatalogSystem("plactic-row", {"size": size, "max_row": max_row}, phi, None, facts)
    sys_.notes["truncated_pairs"] = truncated
    sys_.domain = list(itertools.product(short, repeat=3))
    return sys_


# ---------------------------------------------------------------------------
# Data-backed entries


def _spec_phi(data: dict) -> QuadMap:
    from .io import spec_from_dict

    return spec_from_dict(data, "chinese3.json")[1]


@_register("chinese3", "Chinese monoid over x<y<z: completed quadratic presentation with neutral e")
def _chinese3() -> CatalogSystem:
    phi = _spec_phi(_load_json("chinese3.json"))
    facts = [
        Fact("mod_e_rules", 22),
        Fact("minimal_class", (4, 4)),
        Fact("worst_case", ["z.yy.y"]),
        Fact("convergent:4", True),
    ]
    return CatalogSystem("chinese3", {}, phi, None, facts)


@_register("braid-b3", "positive braids on three strands with the six simple braids")
def _braid_b3() -> CatalogSystem:
    frag = GarsideFragment.from_dict(_load_json("braid_b3.json"), "braid_b3.json")
    phi = derive_normalisation(frag)
    facts = [
        Fact("axioms_43", True),
        Fact("left_weighted", True),
        Fact("triangular_relations", 6),
    ]
    return CatalogSystem("braid-b3", {}, phi, frag, facts)


@_register("artin-a2t", "Artin-Tits monoid of affine type A2 with a 16-element Garside family")
def _artin_a2t() -> CatalogSystem:
    frag = GarsideFragment.from_dict(_load_json("artin_a2t.json"), "artin_a2t.json")
    phi = derive_normalisation(frag)
    facts = [
        Fact("simples", 16),
        Fact("axioms_43", True),
        Fact("left_weighted", True),
        Fact("mod_e_rules", 87),
        Fact("not_class_33", True),
    ]
    return CatalogSystem("artin-a2t", {}, phi, frag, facts)


# ---------------------------------------------------------------------------
# Recomputing expected facts


def _rules(system: CatalogSystem):
    from .analysis import is_neutral
    from .rewriting import extract_rules

    e = system.alphabet.neutral_index
    mod_e = e is not None and is_neutral(system.phi, e)
    return extract_rules(system.phi, mod_e=mod_e)


def observe(system: CatalogSystem, key: str):
    """Recompute the value of fact `key` for `system`."""
    from . import analysis as an
    from .garside import triangular_presentation
    from .qmap import LEFT, RIGHT
    from .rewriting import classify

    phi = system.phi
    fmt = system.alphabet.format
    if key == "minimal_class":
        return an.minimal_class(phi).as_tuple()
    if key == "minimal_class:short_rows":
        return an.minimal_class(phi, domain=system.domain).as_tuple()
    if key.startswith("p_class:"):
        return an.minimal_p_class(phi, int(key.split(":")[1])).as_tuple()
    if key == "axioms_43":
        return an.check_axioms_43(phi)
    if key == "domino":
        return an.check_domino(phi)
    if key == "neutral":
        return an.detect_neutral(phi).neutral
    if key == "left_weighted":
        return an.check_left_weighted(phi).holds
    if key == "not_class_33":
        return not an.minimal_class(phi).within(3, 3)
    if key == "worst_case":
        c = an.minimal_class(phi)
        return [
            fmt(w)
            for w in system.alphabet.words(3)
            if an.alternation_steps(phi, w, LEFT) == c.left and an.alternation_steps(phi, w, RIGHT) == c.right
        ]
    if key == "mod_e_rules":
        return len(_rules(system))
    if key == "triangular_relations":
        return len(triangular_presentation(phi))
    if key == "simples":
        return len(system.fragment.simples)
    if key == "quad1_witness":
        return an.check_locality(system.reference_nu, phi, 3)[0].witness
    if key.startswith("longest:"):
        k = int(key.split(":")[1])
        best = classify(_rules(system), k).longest[k]
        return None if best is None else best[0]
    if key.startswith("convergent:"):
        return classify(_rules(system), int(key.split(":")[1])).convergent
    if key in ("terminating", "normalising", "confluent", "cycle", "non_normalising_witness"):
        cl = classify(_rules(system), 4)
        if key == "cycle":
            return None if cl.cycle is None else [fmt(w) for w in cl.cycle]
        if key == "non_normalising_witness":
            w = cl.non_normalising_witness
            return None if w is None else fmt(w)
        return getattr(cl, key)
    raise KeyError(f"no observer for fact {key!r}")


def check_expected(system: CatalogSystem) -> list[tuple[Fact, object]]:
    """Pairs (fact, observed value) for every expected fact that is not reproduced."""
    out = []
    for fact in system.expected:
        got = observe(system, fact.key)
        if isinstance(fact.value, tuple):
            got = tuple(got)
        if got != fact.value:
            out.append((fact, got))
    return out
