import itertools
import random

import pytest

from qnorm import analysis as an
from qnorm import catalog
from qnorm.exceptions import ConfigurationError
from qnorm.normaliser import normalize, normalize_mod_e
from qnorm.rewriting import extract_rules

import generate_data
from monoid_oracle import chinese_class, is_column_tableau_pair, knuth_class


@pytest.mark.parametrize("name", catalog.names())
def test_expected_facts_reproduce(name):
    assert catalog.check_expected(catalog.build(name)) == []


@pytest.mark.parametrize("n", [3, 5, 6])
def test_high3_family(n):
    s = catalog.build("high3", n=n)
    assert catalog.check_expected(s) == []
    assert an.minimal_class(s.phi).as_tuple() == (n - 1, n)


def test_parameter_errors():
    with pytest.raises(ConfigurationError):
        catalog.build("high3", n=1)
    with pytest.raises(ConfigurationError):
        catalog.build("high3", m=3)
    with pytest.raises(ConfigurationError):
        catalog.build("no-such-system")
    with pytest.raises(ConfigurationError):
        catalog.build("plactic-col", size=9)


def test_reference_normalisations_agree():
    for name in ("lexicographic", "locnotquad", "quadnotloc"):
        s = catalog.build(name)
        for k in range(1, 5):
            for word in s.phi.alphabet.words(k):
                nu = s.reference_nu(word)
                assert s.reference_nu(nu) == nu
                if name == "lexicographic":
                    assert normalize(s.phi, word) == nu


# ---------------------------------------------------------------------------
# plactic monoid against the Knuth relations


def _ints(phi, letters):
    out = ()
    for x in letters:
        name = phi.alphabet.letters[x]
        if name != "e":
            out += tuple(int(c) for c in name)
    return out


def _column(phi, x):
    return tuple(int(c) for c in phi.alphabet.letters[x])


@pytest.mark.parametrize("size", [3, 4])
def test_column_images_are_knuth_equivalent_tableaux(size):
    phi = catalog.build("plactic-col", size=size).phi
    e = phi.alphabet.neutral_index
    for s, t in itertools.product(range(phi.size), repeat=2):
        u, v = phi(s, t)
        assert knuth_class(_ints(phi, (s, t))) == knuth_class(_ints(phi, (u, v)))
        if u != e and v != e:
            assert is_column_tableau_pair(_column(phi, u), _column(phi, v))
        if u == e:
            assert v == e


def test_column_normal_forms_decide_plactic_equivalence():
    phi = catalog.build("plactic-col", size=3).phi
    cols = [i for i in range(phi.size) if i != phi.alphabet.neutral_index]
    words = list(itertools.product(cols, repeat=2)) + list(itertools.product(cols, repeat=3))
    seen = {}
    for word in words:
        nf = normalize_mod_e(phi, word)
        key = knuth_class(_ints(phi, word))
        for a, b in zip(nf, nf[1:]):
            assert is_column_tableau_pair(_column(phi, a), _column(phi, b))
        if key in seen:
            assert seen[key] == nf, word
        seen[key] = nf
    # distinct classes give distinct normal forms
    assert len(set(seen.values())) == len(seen)


def test_column_sampled_pairs_size4():
    phi = catalog.build("plactic-col", size=4).phi
    cols = [i for i in range(phi.size) if i != phi.alphabet.neutral_index]
    rng = random.Random(7)
    for _ in range(200):
        x = tuple(rng.choice(cols) for _ in range(3))
        y = tuple(rng.choice(cols) for _ in range(3))
        same_class = knuth_class(_ints(phi, x)) == knuth_class(_ints(phi, y))
        assert same_class == (normalize_mod_e(phi, x) == normalize_mod_e(phi, y))


def test_row_images_within_domain():
    s = catalog.build("plactic-row")
    phi = s.phi
    e = phi.alphabet.neutral_index
    short = [i for i in range(phi.size) if i != e and len(phi.alphabet.letters[i]) <= 2]
    for a, b in itertools.product(short, repeat=2):
        u, v = phi(a, b)
        assert knuth_class(_ints(phi, (a, b))) == knuth_class(_ints(phi, (u, v)))
        for x in (u, v):
            digits = _column(phi, x) if x != e else ()
            assert list(digits) == sorted(digits)


def test_row_class_on_short_rows():
    s = catalog.build("plactic-row")
    assert an.minimal_class(s.phi, domain=s.domain).as_tuple() == (3, 3)
    assert an.check_axioms_43(s.phi, s.domain)


def test_schensted_examples():
    assert catalog.schensted([2, 1, 3]) == [[1, 3], [2]]
    assert catalog.tableau_columns([[1, 3], [2]]) == [(2, 1), (3,)]
    assert len(catalog.plactic_columns(3)) == 7
    assert len(catalog.plactic_rows(2, 2)) == 5


# ---------------------------------------------------------------------------
# Chinese monoid


def _chinese_text(phi, word):
    return "".join(phi.alphabet.letters[x] for x in word if phi.alphabet.letters[x] != "e")


def test_chinese_rules_hold_in_monoid():
    phi = catalog.build("chinese3").phi
    rules = extract_rules(phi, mod_e=True)
    assert len(rules) == 22
    for lhs, rhs in rules.rules:
        assert chinese_class(_chinese_text(phi, lhs)) == chinese_class(_chinese_text(phi, rhs))


def test_chinese_normal_forms_decide_equivalence():
    phi = catalog.build("chinese3").phi
    a = phi.alphabet
    gens = [a.index(c) for c in "xyz"]
    for k in range(1, 6):
        by_class = {}
        for word in itertools.product(gens, repeat=k):
            nf = normalize_mod_e(phi, word)
            key = chinese_class(_chinese_text(phi, word))
            assert by_class.setdefault(key, nf) == nf
        assert len(set(by_class.values())) == len(by_class)


def test_chinese_data_regenerates():
    assert generate_data.chinese_spec() == catalog._load_json("chinese3.json")


def test_observe_unknown_key():
    with pytest.raises(KeyError):
        catalog.observe(catalog.build("lexicographic"), "nonsense")
