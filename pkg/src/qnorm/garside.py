"""Finite Garside families: greedy pairs, heads, derived normalisation.

A fragment lists the simples (including the unit) and, for every pair of
simples, the normal decomposition of their product. The monoid itself is the
one presented by those products; its normal forms are computed from the
fragment's own table, which is legitimate once that table passes the
class-(4,3) axioms.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _engine as eng
from . import analysis
from .exceptions import FragmentIntegrityError, ParseError, PreconditionError, QNormError
from .normaliser import MonoidElement, element, left_divides, multiply, normal_words, normalize_mod_e, unit
from .qmap import QuadMap, delta_sequence
from .words import Alphabet


@dataclass(frozen=True)
class GarsideFragment:
    simples: tuple[str, ...]
    unit: str
    product: dict = field(hash=False, compare=True)  # (x, y) -> tuple of <= 2 names

    # construction and serialisation

    @classmethod
    def from_dict(cls, data: dict, source: str = "fragment") -> "GarsideFragment":
        if not isinstance(data, dict):
            raise ParseError("fragment must be a JSON object", source)
        for key in ("simples", "unit", "product"):
            if key not in data:
                raise ParseError(f"missing key {key!r}", source)
        simples = data["simples"]
        if not isinstance(simples, list) or not all(isinstance(s, str) for s in simples):
            raise ParseError("simples must be a list of names", f"{source}.simples")
        names = set(simples)
        if len(names) != len(simples):
            raise ParseError("duplicate simple", f"{source}.simples")
        unit_name = data["unit"]
        if unit_name not in names:
            raise ParseError(f"unit {unit_name!r} is not a simple", f"{source}.unit")
        product = {}
        for k, entry in enumerate(data["product"]):
            loc = f"{source}.product[{k}]"
            if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[2], list)):
                raise ParseError("entries must be [x, y, [decomposition]]", loc)
            x, y, dec = entry
            for i, name in enumerate([x, y, *dec]):
                if name not in names:
                    raise ParseError(f"unknown simple {name!r}", loc)
            if len(dec) > 2:
                raise ParseError("decomposition longer than two", loc)
            if (x, y) in product:
                raise ParseError(f"duplicate pair ({x}, {y})", loc)
            product[(x, y)] = tuple(dec)
        return cls(tuple(simples), unit_name, product)

    @classmethod
    def from_json(cls, text: str | bytes, source: str = "fragment") -> "GarsideFragment":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
        return cls.from_dict(data, source)

    @classmethod
    def load(cls, path: str | Path) -> "GarsideFragment":
        path = Path(path)
        return cls.from_json(path.read_bytes(), str(path))

    def to_dict(self) -> dict:
        return {
            "simples": list(self.simples),
            "unit": self.unit,
            "product": [[x, y, list(self.product[(x, y)])] for x in self.simples for y in self.simples if (x, y) in self.product],
        }

    @classmethod
    def from_phi(cls, phi: QuadMap) -> "GarsideFragment":
        """Read a fragment off a table with a neutral: product(s, t) is the e-projected image."""
        e = phi.alphabet.neutral
        if e is None:
            raise PreconditionError("a neutral letter is needed to read a fragment off phi")
        names = phi.alphabet.letters
        product = {}
        for s in names:
            for t in names:
                u, v = phi.image(s, t)
                product[(s, t)] = tuple(x for x in (u, v) if x != e)
        return cls(names, e, product)

    # structure

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.simples, neutral=self.unit)

    def problems(self) -> list[str]:
        """Structural issues: missing pairs, unit laws, invertible products."""
        out = []
        u = self.unit
        for x in self.simples:
            for y in self.simples:
                if (x, y) not in self.product:
                    out.append(f"missing product ({x}, {y})")
        for x in self.simples:
            want = () if x == u else (x,)
            if self.product.get((u, x)) != want or self.product.get((x, u)) != want:
                out.append(f"unit law fails for {x}")
        for (x, y), dec in self.product.items():
            if not dec and (x, y) != (u, u):
                out.append(f"{x}.{y} is the unit: non-trivial invertible elements")
        return out

    def table_phi(self) -> QuadMap:
        """phi(s|t) = normal decomposition of st, padded with the unit."""
        probs = self.problems()
        if probs:
            raise FragmentIntegrityError("; ".join(probs[:5]))
        a = self.alphabet
        pairs = {}
        for (x, y), dec in self.product.items():
            pairs[(x, y)] = tuple(dec) + (self.unit,) * (2 - len(dec))
        return QuadMap.from_pairs(a, pairs)

    @cached_property
    def _monoid(self) -> "_FragmentMonoid":
        return _FragmentMonoid(self)


class _FragmentMonoid:
    """Divisibility among short elements of the monoid presented by a fragment."""

    def __init__(self, frag: GarsideFragment):
        phi = frag.table_phi()
        if not analysis.check_axioms_43(phi):
            w = analysis.find_axioms_43_violation(phi)
            raise FragmentIntegrityError(
                f"the product table does not define a class-(4,3) normalisation (witness {phi.alphabet.format(w)})"
            )
        self.phi = phi
        self.frag = frag
        e = phi.alphabet.neutral_index
        self.simple_ids = [s for s in range(phi.size) if s != e]
        self.elements = [MonoidElement(w) for w in normal_words(phi, 2)]
        # divisors[g] = simples t with t h = g for some element h of length <= 2
        self.divisors = defaultdict(set)
        for t in self.simple_ids:
            tel = MonoidElement((t,))
            for h in self.elements:
                g = multiply(phi, tel, h)
                if g.degree <= 2:
                    self.divisors[g].add(t)

    def el(self, s: int) -> MonoidElement:
        return MonoidElement((s,)) if s != self.phi.alphabet.neutral_index else unit()

    def simple_divides(self, t: int, g: MonoidElement) -> bool:
        if t == self.phi.alphabet.neutral_index:
            return True
        if g.degree <= 2:
            return t in self.divisors[g]
        return left_divides(self.phi, self.el(t), g).divides

    def head(self, g: MonoidElement) -> int:
        e = self.phi.alphabet.neutral_index
        if not g.nf:
            return e
        divs = [t for t in self.simple_ids if self.simple_divides(t, g)]
        top = [t for t in divs if all(self.simple_divides(x, self.el(t)) for x in divs)]
        if len(top) != 1:
            names = self.phi.alphabet.format(divs)
            raise FragmentIntegrityError(f"no unique maximal simple divisor of {g.format(self.phi)} among {names}")
        return top[0]


def _resolve(frag: GarsideFragment, x) -> MonoidElement:
    m = frag._monoid
    if isinstance(x, MonoidElement):
        return x
    if isinstance(x, str):
        return element(m.phi, x)
    return element(m.phi, tuple(x))


def head(frag: GarsideFragment, g) -> str:
    """Maximal simple left-divisor of `g` (a MonoidElement, a dotted word or a letter tuple)."""
    m = frag._monoid
    return m.phi.alphabet.letters[m.head(_resolve(frag, g))]


def is_greedy(frag: GarsideFragment, s1: str, s2: str, skip_f: bool = True, bound: int = 2) -> bool:
    """Whether s1|s2 is greedy: every simple dividing (f) s1 s2 divides (f) s1.

    With skip_f the prefix f is dropped, which is enough for a genuine Garside
    family; otherwise f ranges over elements whose normal form has length <= bound.
    """
    m = frag._monoid
    a = m.phi.alphabet
    x1, x2 = m.el(a.index(s1)), m.el(a.index(s2))
    prefixes = [unit()] if skip_f else [MonoidElement(w) for w in normal_words(m.phi, bound)]
    for f in prefixes:
        g1 = multiply(m.phi, f, x1)
        g = multiply(m.phi, g1, x2)
        for t in m.simple_ids:
            if m.simple_divides(t, g) and not m.simple_divides(t, g1):
                return False
    return True


def derive_normalisation(frag: GarsideFragment) -> QuadMap:
    """phi(s|t) = (H(st), complement) padded with the unit, from heads and complements."""
    m = frag._monoid
    phi0 = m.phi
    n = phi0.size
    left = np.empty((n, n), dtype=np.int32)
    right = np.empty((n, n), dtype=np.int32)
    for s in range(n):
        for t in range(n):
            g = multiply(phi0, m.el(s), m.el(t))
            h = m.head(g)
            hel = m.el(h)
            comps = [c for c in range(n) if multiply(phi0, hel, m.el(c)) == g]
            if len(comps) != 1:
                a = phi0.alphabet.letters
                raise FragmentIntegrityError(
                    f"{a[s]}.{a[t]}: {len(comps)} complements of the head {a[h]} among the simples"
                )
            left[s, t], right[s, t] = h, comps[0]
    return QuadMap(phi0.alphabet, left, right)


def check_right_divisor_closed(frag: GarsideFragment) -> tuple[str, str] | None:
    """A pair (x, h) with x h simple but h not simple, searched among short elements."""
    m = frag._monoid
    simples = {m.el(s) for s in m.simple_ids}
    for x in m.elements:
        for h in m.elements:
            if h.degree > 1 and multiply(m.phi, x, h) in simples:
                return x.format(m.phi), h.format(m.phi)
    return None


# ---------------------------------------------------------------------------
# Characterisation of Garside-derived normalisations


def find_cancellativity_failure(phi: QuadMap, bound: int = 3):
    """Search x, y, z with normal forms of length <= bound, x y = x z and y != z.

    Requires the class-(4,3) axioms, so that delta gives normal forms; with a
    neutral letter the padded rows are canonical and can be compared directly.
    """
    e = analysis.require_neutral(phi)
    words = list(normal_words(phi, bound))
    rows = np.full((len(words), bound), e, dtype=np.int32)
    for i, w in enumerate(words):
        rows[i, : len(w)] = w
    seq = delta_sequence(2 * bound) if bound else ()
    for i, x in enumerate(words):
        both = np.concatenate([np.repeat(rows[i : i + 1], len(words), axis=0), rows], axis=1)
        nf = eng.apply_positions(phi, both, seq)
        _, first, counts = np.unique(nf, axis=0, return_index=True, return_counts=True)
        if np.any(counts > 1):
            dup = nf[first[np.nonzero(counts > 1)[0][0]]]
            same = np.nonzero(np.all(nf == dup, axis=1))[0]
            y, z = words[same[0]], words[same[1]]
            f = phi.alphabet.format
            return f(x) or "1", f(y) or "1", f(z) or "1"
    return None


@dataclass
class GarsideVerdict:
    neutral_ok: bool
    axioms_43: bool
    left_weighted: analysis.LeftWeightedResult | None
    no_invertibles: bool
    greedy_side: bool | None
    greedy_detail: str
    cancellativity_witness: tuple | None
    cancellativity_bound: int

    @property
    def class_side(self) -> bool:
        return bool(self.neutral_ok and self.axioms_43 and self.left_weighted and self.left_weighted.holds)

    @property
    def garside_derived(self) -> bool:
        return self.class_side

    @property
    def sides_agree(self) -> bool | None:
        return None if self.greedy_side is None else self.greedy_side == self.class_side

    def to_dict(self) -> dict:
        return {
            "neutral_ok": self.neutral_ok,
            "axioms_43": self.axioms_43,
            "left_weighted": None if self.left_weighted is None else self.left_weighted.to_dict(),
            "no_invertibles": self.no_invertibles,
            "class_side": self.class_side,
            "greedy_side": self.greedy_side,
            "greedy_detail": self.greedy_detail,
            "sides_agree": self.sides_agree,
            "cancellativity_witness": None if self.cancellativity_witness is None else list(self.cancellativity_witness),
            "cancellativity_bound": self.cancellativity_bound,
            "garside_derived": self.garside_derived,
        }


def _greedy_side(phi: QuadMap, frag: GarsideFragment) -> tuple[bool, str]:
    """Direct check: the fragment's derived normalisation is phi and every phi-output is greedy."""
    try:
        derived = derive_normalisation(frag)
    except QNormError as exc:
        return False, f"fragment rejected: {exc}"
    if derived.alphabet.letters != phi.alphabet.letters:
        return False, "fragment and phi use different letters"
    if derived != phi:
        diff = np.argwhere((derived.left != phi.left) | (derived.right != phi.right))[0]
        a = phi.alphabet.letters
        return False, f"derived normalisation differs at {a[diff[0]]}.{a[diff[1]]}"
    a = phi.alphabet.letters
    for s in range(phi.size):
        for t in range(phi.size):
            u, v = phi(s, t)
            if not is_greedy(frag, a[u], a[v]):
                return False, f"phi({a[s]}|{a[t]}) = {a[u]}|{a[v]} is not greedy"
    return True, "derived normalisation coincides with phi and all outputs are greedy"


def check_garside_characterisation(
    phi: QuadMap, bound: int = 3, fragment: GarsideFragment | None = None
) -> GarsideVerdict:
    """Class-(4,3) plus left-weighted, cross-checked against direct greedy computations."""
    e = phi.alphabet.neutral_index
    neutral_ok = e is not None and analysis.is_neutral(phi, e)
    axioms = analysis.check_axioms_43(phi)
    lw = analysis.check_left_weighted(phi) if neutral_ok else None
    no_inv = True
    if neutral_ok:
        for s in range(phi.size):
            for t in range(phi.size):
                if (s, t) != (e, e) and phi(s, t) == (e, e):
                    no_inv = False
    greedy, detail = None, "not evaluated"
    if neutral_ok:
        frag = fragment if fragment is not None else GarsideFragment.from_phi(phi)
        greedy, detail = _greedy_side(phi, frag)
    cancel = None
    if neutral_ok and axioms:
        cancel = find_cancellativity_failure(phi, bound)
    return GarsideVerdict(neutral_ok, axioms, lw, no_inv, greedy, detail, cancel, bound)


# ---------------------------------------------------------------------------
# Triangular presentations


@dataclass
class TriangularPresentation:
    generators: tuple[str, ...]
    relations: list[tuple[str, str, str]]  # r . s = t ; t is the unit name for degenerate cases

    def __len__(self) -> int:
        return len(self.relations)

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [f"{r}.{s} = {t}" for r, s, t in self.relations],
            "count": len(self.relations),
        }


def triangular_presentation(phi: QuadMap) -> TriangularPresentation:
    """All relations s.t = st with s, t non-neutral and st a single simple (or the unit)."""
    reasons = []
    e = phi.alphabet.neutral_index
    if e is None or not analysis.is_neutral(phi, e):
        reasons.append("no valid neutral letter")
    if not analysis.check_axioms_43(phi):
        reasons.append("class-(4,3) axioms fail")
    if not reasons:
        lw = analysis.check_left_weighted(phi)
        if not lw.holds:
            reasons.append(f"not left-weighted (witness {'|'.join(lw.witness)})")
    if reasons:
        raise PreconditionError("triangular presentation refused: " + "; ".join(reasons))
    a = phi.alphabet.letters
    gens = tuple(x for i, x in enumerate(a) if i != e)
    rels = []
    for s in range(phi.size):
        for t in range(phi.size):
            if e in (s, t):
                continue
            rhs = tuple(x for x in phi(s, t) if x != e)
            if len(rhs) == 1:
                rels.append((a[s], a[t], a[rhs[0]]))
            elif not rhs:
                rels.append((a[s], a[t], a[e]))
    return TriangularPresentation(gens, rels)


def presentation_agrees(tri: TriangularPresentation, phi: QuadMap, max_len: int = 3, slack: int = 1):
    """Compare the congruence of `tri` with the normal forms of phi on words up to max_len.

    Words of length up to max_len + slack are connected by the triangular
    relations (both directions); two words of length <= max_len must be
    connected exactly when their normal forms agree. Returns None or a
    witness pair of dotted words.
    """
    a = phi.alphabet
    e = a.neutral_index
    idx = {x: a.index(x) for x in tri.generators}
    rel = {}
    for r, s, t in tri.relations:
        rel.setdefault((idx[r], idx[s]), []).append(() if t == a.neutral else (idx[t],))
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    top = max_len + slack
    gens = sorted(idx.values())
    words = [()]
    for k in range(1, top + 1):
        words.extend(itertools.product(gens, repeat=k))
    for w in words:
        parent[w] = w
    for w in words:
        for i in range(len(w) - 1):
            for rhs in rel.get(w[i : i + 2], ()):
                v = w[:i] + rhs + w[i + 2 :]
                ra, rb = find(w), find(v)
                if ra != rb:
                    parent[ra] = rb
    nf_class = {}
    comp_nf = {}
    for w in words:
        if len(w) > max_len:
            continue
        nf = normalize_mod_e(phi, w)
        root = find(w)
        if root in comp_nf and comp_nf[root] != nf:
            return a.format(w), "relations identify words with different normal forms"
        comp_nf[root] = nf
        if nf in nf_class and find(nf_class[nf]) != root:
            return a.format(nf_class[nf]), a.format(w)
        nf_class.setdefault(nf, w)
    return None

