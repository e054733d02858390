"""Brute-force oracles for homogeneous monoid presentations.

Independent of the qnorm package: elements are equivalence classes of words
under a set of length-preserving relations, computed by closure. Used to
generate the committed Garside and Chinese-monoid data and by the tests as
a reference implementation.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class HomogeneousMonoid:
    """Monoid given by generators (single characters) and length-preserving relations."""

    def __init__(self, generators: str, relations):
        self.generators = generators
        self.relations = [(l, r) for l, r in relations]
        for l, r in self.relations:
            assert len(l) == len(r), "relations must be homogeneous"
        self._cache = {}

    def klass(self, w: str) -> frozenset:
        """All words equivalent to w."""
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        seen = {w}
        todo = [w]
        while todo:
            u = todo.pop()
            for l, r in self.relations:
                for a, b in ((l, r), (r, l)):
                    i = u.find(a)
                    while i != -1:
                        v = u[:i] + b + u[i + len(a) :]
                        if v not in seen:
                            seen.add(v)
                            todo.append(v)
                        i = u.find(a, i + 1)
        out = frozenset(seen)
        for u in out:
            self._cache[u] = out
        return out

    def rep(self, w: str) -> str:
        return min(self.klass(w))

    def left_divides(self, f: str, g: str) -> bool:
        """f is a prefix of some word equivalent to g."""
        k = len(f)
        if k > len(g):
            return False
        prefixes = {u[:k] for u in self.klass(g)}
        return any(v in prefixes for v in self.klass(f))

    def right_divisors(self, w: str) -> set:
        out = set()
        for v in self.klass(w):
            for k in range(len(v) + 1):
                out.add(self.rep(v[k:]))
        return out


class GreedyOracle:
    """Head and greedy decompositions relative to a finite family of simples."""

    def __init__(self, monoid: HomogeneousMonoid, simples):
        self.m = monoid
        self.simples = sorted({monoid.rep(s) for s in simples}, key=lambda s: (len(s), s))

    def head(self, g: str) -> str:
        divs = [s for s in self.simples if self.m.left_divides(s, g)]
        top = [s for s in divs if all(self.m.left_divides(t, s) for t in divs)]
        assert len(top) == 1, (g, divs)
        return top[0]

    def complement(self, h: str, g: str) -> str:
        """The word c with h c = g (unique by cancellativity), as a representative."""
        k = len(h)
        for u in self.m.klass(g):
            if u[:k] in self.m.klass(h):
                return self.m.rep(u[k:])
        raise ValueError(f"{h} does not divide {g}")

    def decomposition(self, g: str) -> list[str]:
        """Greedy normal decomposition; entries are simple representatives."""
        out = []
        g = self.m.rep(g)
        while g:
            h = self.head(g)
            out.append(h)
            g = self.complement(h, g)
        return out


def braid_b3():
    m = HomogeneousMonoid("ab", [("aba", "bab")])
    simples = ["", "a", "b", "ab", "ba", "aba"]
    return m, simples


def artin_a2_tilde():
    """Affine type A2: three generators, every pair braids with length three.

    The family is the set of right-divisors of 1232, 2313 and 3121 (generators
    written 1, 2, 3).
    """
    m = HomogeneousMonoid("123", [("121", "212"), ("232", "323"), ("131", "313")])
    simples = set()
    for top in ("1232", "2313", "3121"):
        simples |= m.right_divisors(top)
    return m, sorted(simples, key=lambda s: (len(s), s))


def chinese_class(w: str) -> frozenset:
    """Chinese-monoid class of a word over ordered single-character letters.

    Relations: cba = cab = bca whenever a <= b <= c.
    """
    seen = {w}
    todo = [w]
    while todo:
        u = todo.pop()
        for i in range(len(u) - 2):
            a, b, c = sorted(u[i : i + 3])
            forms = {c + b + a, c + a + b, b + c + a}
            if u[i : i + 3] in forms:
                for f in forms:
                    v = u[:i] + f + u[i + 3 :]
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
    return frozenset(seen)


def knuth_class(w) -> frozenset:
    """Plactic class of a tuple of integers under the Knuth relations.

    xzy = zxy for x <= y < z and yxz = yzx for x < y <= z.
    """
    w = tuple(w)
    seen = {w}
    todo = [w]
    while todo:
        u = todo.pop()
        for i in range(len(u) - 2):
            p, q, r = u[i : i + 3]
            images = []
            # x z y <-> z x y  (x <= y < z)
            if p <= r < q:
                images.append((q, p, r))
            if q <= r < p:
                images.append((q, p, r))
            # y x z <-> y z x  (x < y <= z)
            if q < p <= r:
                images.append((p, r, q))
            if r < p <= q:
                images.append((p, r, q))
            for img in images:
                v = u[:i] + img + u[i + 3 :]
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return frozenset(seen)


@lru_cache(maxsize=None)
def columns(size: int) -> tuple:
    """Strictly decreasing non-empty tuples over 1..size."""
    out = []
    for k in range(1, size + 1):
        for c in itertools.combinations(range(size, 0, -1), k):
            out.append(c)
    return tuple(out)


def is_column_tableau_pair(c, d) -> bool:
    """Column c followed by column d forms a tableau (columns as decreasing tuples)."""
    if len(c) < len(d):
        return False
    up_c = sorted(c)
    up_d = sorted(d)
    return all(up_c[k] <= up_d[k] for k in range(len(d)))
