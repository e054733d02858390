import pytest

from qnorm import analysis as an
from qnorm import catalog
from qnorm.exceptions import BudgetExceededError, ConfigurationError
from qnorm.normaliser import normalize
from qnorm.qmap import QuadMap
from qnorm.rewriting import (
    classify,
    explore,
    extract_rules,
    normal_form_by_rewriting,
    verify_termination_bound,
)
from qnorm.words import Alphabet

from conftest import fmt, lex_phi, w


def test_extract_rules_examples():
    assert extract_rules(lex_phi("ab")).names() == [("b.a", "a.b")]
    assert len(extract_rules(QuadMap.identity(Alphabet("abc")))) == 0
    chinese = catalog.build("chinese3").phi
    rules = extract_rules(chinese, mod_e=True)
    assert len(rules) == 22
    assert all(len(r) in (1, 2) for _, r in rules.rules)


def test_mod_e_requires_neutral(termin44):
    with pytest.raises(ConfigurationError):
        extract_rules(termin44, mod_e=True)


@pytest.mark.parametrize("name", catalog.names())
def test_rules_are_reduced(name):
    s = catalog.build(name)
    if not an.check_axioms_43(s.phi, s.domain) and name in ("locnotquad", "quadnotloc"):
        # right sides of these tables are themselves rewritable (b.b -> a.b etc.)
        return
    rules = extract_rules(s.phi)
    assert all(lhs != rhs for lhs, rhs in rules.rules)
    if s.domain is None:
        assert rules.problems() == []


def test_explore_termin44_cycle(termin44):
    g = explore(extract_rules(termin44), w(termin44, "a.b.c.d"))
    assert not g.terminating and g.normalising and g.confluent
    assert [fmt(termin44, x) for x in g.cycle] == ["a.b.c.d", "a.b'.c.d", "a.b'.c'.d", "a.b.c.d"]
    assert g.longest is None


def test_explore_lexicographic(lex):
    g = explore(extract_rules(lex), w(lex, "c.b.a"))
    assert g.terminating and g.confluent
    assert g.longest == 3
    assert fmt(lex, g.normal_forms[0]) == "a.b.c"
    assert [fmt(lex, x) for x in g.longest_path][-1] == "a.b.c"
    g = explore(extract_rules(lex), w(lex, "a.b.c"))
    assert len(g.nodes) == 1 and g.longest == 0


def test_explore_budget(lex):
    with pytest.raises(BudgetExceededError):
        explore(extract_rules(lex), w(lex, "c.b.a"), max_steps=1)
    with pytest.raises(ConfigurationError):
        explore(extract_rules(lex), w(lex, "c.b.a"), max_steps=-1)


def test_edge_list_format(lex):
    g = explore(extract_rules(lex), w(lex, "b.a.a"))
    text = g.to_edge_list()
    assert text.splitlines()[0] == "b.a.a\t1\ta.b.a"
    assert all(len(line.split("\t")) == 3 for line in text.splitlines())


def test_termination_bounds(lex, b3, termin44):
    rep = verify_termination_bound(extract_rules(lex), 4, an.minimal_class(lex))
    # three letters cannot realise the bound: d.c.b.a needs four
    assert rep.terminating and rep.max_observed == 5 and rep.bound == 6 and rep.within_bound
    rules = extract_rules(b3.phi, mod_e=True)
    rep = verify_termination_bound(rules, 4, an.minimal_class(b3.phi))
    assert rep.terminating and rep.max_observed <= 11
    rep = verify_termination_bound(extract_rules(termin44), 4, an.minimal_class(termin44))
    assert not rep.terminating and rep.cycle is not None and rep.within_bound is False


def test_lexicographic_four_letters_reaches_triangular_bound():
    phi = lex_phi("abcd")
    rep = verify_termination_bound(extract_rules(phi), 4, an.minimal_class(phi))
    assert rep.max_observed == 6 == rep.bound
    assert fmt(phi, rep.worst_word) == "d.c.b.a"


def test_classify_examples(termin44):
    cl = classify(extract_rules(termin44), 4)
    assert cl.normalising and cl.confluent and not cl.terminating
    loc = catalog.build("locnotquad").phi
    cl = classify(extract_rules(loc), 4)
    assert not cl.normalising and fmt(loc, cl.non_normalising_witness) == "a.b.a"
    cl = classify(extract_rules(QuadMap.identity(Alphabet("ab"))), 3)
    assert cl.terminating and cl.normalising and cl.confluent
    with pytest.raises(ConfigurationError):
        classify(extract_rules(loc), 0)


def test_classify_budget(lex):
    with pytest.raises(BudgetExceededError):
        classify(extract_rules(lex), 3, max_steps=2)


def test_non_confluent_witness():
    # a.b can become a.a or b.b: two normal forms
    a = Alphabet("abc")
    phi = QuadMap.from_pairs(a, {("c", "a"): ("a", "a"), ("b", "c"): ("b", "b"), ("b", "a"): ("c", "c")})
    cl = classify(extract_rules(phi), 3)
    assert not cl.confluent and cl.non_confluent_witness is not None


@pytest.mark.parametrize("name", ["lexicographic", "parity-ab", "termin44", "plactic-col", "chinese3", "braid-b3", "high3", "log2"])
def test_rewriting_matches_normalisation(name):
    phi = catalog.build(name).phi
    rules = extract_rules(phi)
    for k in range(1, 5):
        if phi.size**k > 5000:
            break
        for word in phi.alphabet.words(k):
            reached = normal_form_by_rewriting(rules, word)
            assert reached == [normalize(phi, word)]


def test_mod_e_cycle_lifts(termin44):
    phi = termin44.adjoin_neutral()
    plain = classify(extract_rules(phi), 4)
    mod_e = classify(extract_rules(phi, mod_e=True), 4)
    assert not mod_e.terminating and not plain.terminating
    cyc = mod_e.cycle
    assert cyc[0] == cyc[-1]


def test_classification_serialises(termin44):
    d = classify(extract_rules(termin44), 4).to_dict()
    assert d["cycle"] == ["a.b.c.d", "a.b'.c.d", "a.b'.c'.d", "a.b.c.d"]
    assert d["longest"]["4"] is None
