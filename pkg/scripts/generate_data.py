"""Regenerate the committed catalog data in src/qnorm/data.

    python scripts/generate_data.py [--check]

* chinese3.json: Knuth-Bendix completion of the twelve quadratic rules for
  the Chinese monoid over x < y < z, oriented by a weighted right-lex order,
  then homogenised with the neutral letter e.
* braid_b3.json, artin_a2t.json: product tables of the finite Garside
  families, each product given by its greedy decomposition computed by the
  brute-force oracle in monoid_oracle.py.

With --check the files are regenerated in memory and compared with the
committed copies.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from monoid_oracle import GreedyOracle, artin_a2_tilde, braid_b3, chinese_class  # noqa: E402

DATA = HERE.parent / "src" / "qnorm" / "data"

# ---------------------------------------------------------------------------
# Chinese monoid, |X| = 3

CHINESE_LETTERS = ["x", "y", "z", "yx", "zx", "zy", "yy"]
# heaviest first; words are compared by length, then right-to-left by weight
CHINESE_ORDER = ["x", "yx", "zx", "y", "yy", "zy", "z"]


def chinese_initial_rules() -> dict:
    rules = {}
    for a, b in [("x", "y"), ("x", "z"), ("y", "z")]:
        rules[(b, a)] = (b + a,)
        rules[(b, b + a)] = (b + a, b)
        rules[(b + a, a)] = (a, b + a)
    rules[("y", "zx")] = ("zx", "y")
    rules[("z", "yx")] = ("zx", "y")
    rules[("y", "y")] = ("yy",)
    return rules


def _order_key(word):
    weight = {c: len(CHINESE_ORDER) - i for i, c in enumerate(CHINESE_ORDER)}
    return (len(word), tuple(weight[c] for c in reversed(word)))


def _reduce(word, rules):
    word = tuple(word)
    for _ in range(10_000):
        for i in range(len(word) - 1):
            rhs = rules.get(word[i : i + 2])
            if rhs is not None:
                word = word[:i] + rhs + word[i + 2 :]
                break
        else:
            return word
    raise RuntimeError("reduction did not terminate")


def complete_chinese() -> dict:
    rules = chinese_initial_rules()
    for l, r in rules.items():
        assert _order_key(l) > _order_key(r), (l, r)
    changed = True
    while changed:
        changed = False
        # overlaps of two quadratic left sides a|b and b|c
        for a, b, c in itertools.product(CHINESE_LETTERS, repeat=3):
            if (a, b) in rules and (b, c) in rules:
                n1 = _reduce(rules[(a, b)] + (c,), rules)
                n2 = _reduce((a,) + rules[(b, c)], rules)
                if n1 != n2:
                    big, small = (n1, n2) if _order_key(n1) > _order_key(n2) else (n2, n1)
                    if len(big) != 2:
                        raise RuntimeError(f"non-quadratic critical pair {big} -> {small}")
                    rules[big] = small
                    changed = True
        # interreduce
        for l in list(rules):
            r = rules.pop(l)
            if _reduce(l, rules) != l:
                changed = True
                continue
            rules[l] = _reduce(r, rules)
    return rules


def chinese_spec() -> dict:
    rules = complete_chinese()
    # every rule must hold in the Chinese monoid
    for l, r in rules.items():
        assert chinese_class("".join(l)) == chinese_class("".join(r)), (l, r)
    phi = []
    for (s, t), rhs in sorted(rules.items(), key=lambda kv: (CHINESE_LETTERS.index(kv[0][0]), CHINESE_LETTERS.index(kv[0][1]))):
        out = list(rhs) + ["e"] * (2 - len(rhs))
        phi.append({"in": [s, t], "out": out})
    for s in CHINESE_LETTERS:
        phi.append({"in": ["e", s], "out": [s, "e"]})
    return {
        "description": "Chinese monoid over x<y<z: completed quadratic presentation (22 rules) homogenised by e",
        "generators": ["e"] + CHINESE_LETTERS,
        "neutral": "e",
        "phi": phi,
    }


# ---------------------------------------------------------------------------
# Garside fragments


def _fragment(monoid, simples, name, description) -> dict:
    oracle = GreedyOracle(monoid, simples)
    reps = oracle.simples
    names = {s: name(s) for s in reps}
    product = []
    for x, y in itertools.product(reps, repeat=2):
        dec = oracle.decomposition(x + y)
        assert len(dec) <= 2, (x, y, dec)
        for d in dec:
            assert d in names, (x, y, d)
        product.append([names[x], names[y], [names[d] for d in dec]])
    return {
        "description": description,
        "simples": [names[s] for s in reps],
        "unit": names[""],
        "product": product,
    }


def b3_fragment() -> dict:
    m, simples = braid_b3()
    return _fragment(m, simples, lambda s: s or "e", "positive braids on three strands: the six simple braids")


def a2t_fragment() -> dict:
    m, simples = artin_a2_tilde()
    assert len(simples) == 16, len(simples)
    return _fragment(
        m,
        simples,
        lambda s: "".join(f"s{c}" for c in s) or "e",
        "Artin-Tits monoid of affine type A2: right-divisors of s1s2s3s2, s2s3s1s3, s3s1s2s1",
    )


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with committed files instead of writing")
    args = ap.parse_args(argv)
    outputs = {
        "chinese3.json": chinese_spec(),
        "braid_b3.json": b3_fragment(),
        "artin_a2t.json": a2t_fragment(),
    }
    status = 0
    for fname, obj in outputs.items():
        path = DATA / fname
        text = _dump(obj)
        if args.check:
            same = path.exists() and path.read_text() == text
            print(f"{fname}: {'up to date' if same else 'DIFFERS'}")
            status |= not same
        else:
            path.write_text(text)
            print(f"wrote {path}")
    return status


if __name__ == "__main__":
    sys.exit(main())
