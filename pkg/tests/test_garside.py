import itertools
import json

import pytest

from qnorm import analysis as an
from qnorm import catalog
from qnorm.exceptions import FragmentIntegrityError, ParseError, PreconditionError
from qnorm.garside import (
    GarsideFragment,
    check_garside_characterisation,
    check_right_divisor_closed,
    derive_normalisation,
    find_cancellativity_failure,
    head,
    is_greedy,
    presentation_agrees,
    triangular_presentation,
)
from qnorm.qmap import QuadMap
from qnorm.words import Alphabet

import generate_data
from monoid_oracle import GreedyOracle, artin_a2_tilde, braid_b3

from conftest import lex_phi


def test_heads_b3(b3):
    frag = b3.fragment
    assert head(frag, "a.b") == "ab"
    assert head(frag, "b.b") == "b"
    assert head(frag, "a.b.a.b") == "aba"
    assert head(frag, "e") == "e"


def test_greedy_pairs_b3(b3):
    frag = b3.fragment
    assert not is_greedy(frag, "a", "b")
    assert is_greedy(frag, "b", "b")
    assert not is_greedy(frag, "ab", "a")  # aba divides the product
    assert is_greedy(frag, "aba", "a")
    for x in frag.simples:
        assert is_greedy(frag, x, "e")
    assert is_greedy(frag, "e", "e")


def test_greedy_pairs_a2t(a2t):
    frag = a2t.fragment
    assert not is_greedy(frag, "s2", "s3")
    # the top element absorbs any second letter it can
    assert is_greedy(frag, "s1s2s1", "s2")
    assert is_greedy(frag, "s1", "s1s2")
    assert not is_greedy(frag, "s1", "s2s1")


def test_greedy_with_prefixes(b3):
    frag = b3.fragment
    for x, y in itertools.product(frag.simples, repeat=2):
        assert is_greedy(frag, x, y) == is_greedy(frag, x, y, skip_f=False, bound=2)


@pytest.mark.parametrize("fixture", ["b3", "a2t"])
def test_derived_equals_table(fixture, request):
    sys_ = request.getfixturevalue(fixture)
    assert derive_normalisation(sys_.fragment) == sys_.phi


def test_b3_images(b3):
    phi = b3.phi
    assert phi.image("a", "b") == ("ab", "e")
    assert phi.image("b", "b") == ("b", "b")
    assert phi.image("ab", "a") == ("aba", "e")
    assert phi.image("aba", "a") == ("aba", "a")


@pytest.mark.parametrize("make,oracle", [("b3", braid_b3), ("a2t", artin_a2_tilde)])
def test_heads_match_oracle(make, oracle, request):
    sys_ = request.getfixturevalue(make)
    m, simples = oracle()
    greedy = GreedyOracle(m, simples)
    if make == "b3":
        to_name = lambda s: s or "e"
        letters = {g: g for g in m.generators}
    else:
        to_name = lambda s: "".join(f"s{c}" for c in s) or "e"
        letters = {g: f"s{g}" for g in m.generators}
    for k in range(1, 4):
        for word in itertools.product(m.generators, repeat=k):
            text = "".join(word)
            dotted = ".".join(letters[g] for g in word)
            assert head(sys_.fragment, dotted) == to_name(greedy.head(text)), dotted


@pytest.mark.parametrize("fixture", ["b3", "a2t"])
def test_characterisation_agrees(fixture, request):
    sys_ = request.getfixturevalue(fixture)
    v = check_garside_characterisation(sys_.phi, bound=2, fragment=sys_.fragment)
    assert v.class_side and v.greedy_side and v.sides_agree
    assert v.garside_derived and v.no_invertibles
    assert v.cancellativity_witness is None


def test_lexicographic_with_neutral_is_not_derived():
    phi = lex_phi("ab").adjoin_neutral()
    v = check_garside_characterisation(phi, bound=2)
    assert v.neutral_ok and v.axioms_43
    assert not v.left_weighted.holds
    assert not v.garside_derived and v.sides_agree


def test_termin44_with_neutral(termin44):
    v = check_garside_characterisation(termin44.adjoin_neutral(), bound=2)
    assert not v.class_side and not v.axioms_43
    assert v.cancellativity_witness is None  # not evaluated without the axioms
    d = v.to_dict()
    assert d["garside_derived"] is False


def test_no_neutral_declared(lex):
    v = check_garside_characterisation(lex)
    assert not v.neutral_ok and v.greedy_side is None and v.sides_agree is None


def test_triangular_b3(b3):
    tri = triangular_presentation(b3.phi)
    assert len(tri) == 6
    assert sorted(tri.to_dict()["relations"]) == sorted(
        ["a.b = ab", "a.ba = aba", "b.a = ba", "b.ab = aba", "ab.a = aba", "ba.b = aba"]
    )
    assert presentation_agrees(tri, b3.phi, max_len=3) is None


def test_triangular_free_monoid():
    phi = QuadMap.identity(Alphabet("ab")).adjoin_neutral()
    tri = triangular_presentation(phi)
    assert len(tri) == 0
    assert presentation_agrees(tri, phi, max_len=3) is None


def test_triangular_refusals(lex, termin44):
    with pytest.raises(PreconditionError):
        triangular_presentation(lex)
    with pytest.raises(PreconditionError, match="left-weighted"):
        triangular_presentation(lex_phi("ab").adjoin_neutral())
    with pytest.raises(PreconditionError, match="axioms"):
        triangular_presentation(termin44.adjoin_neutral())


def test_triangular_a2t(a2t):
    tri = triangular_presentation(a2t.phi)
    assert all(t != "e" for _, _, t in tri.relations)
    assert presentation_agrees(tri, a2t.phi, max_len=2) is None


def test_wrong_presentation_detected(b3):
    tri = triangular_presentation(b3.phi)
    tri.relations = [r for r in tri.relations if r[2] != "aba"]
    assert presentation_agrees(tri, b3.phi, max_len=3) is not None


@pytest.mark.parametrize("fixture", ["b3", "a2t"])
def test_right_divisor_closed(fixture, request):
    assert check_right_divisor_closed(request.getfixturevalue(fixture).fragment) is None


def test_cancellativity(b3):
    assert find_cancellativity_failure(b3.phi, bound=2) is None
    # a.b = a.a although b != a
    a = Alphabet(["e", "a", "b"], neutral="e")
    pairs = {("a", "b"): ("a", "a")}
    for s in a.letters:
        pairs[("e", s)] = (s, "e")
    phi = QuadMap.from_pairs(a, pairs)
    assert an.check_axioms_43(phi)
    assert find_cancellativity_failure(phi, bound=2) == ("a", "a", "b")


def test_fragment_round_trip(b3):
    frag = b3.fragment
    again = GarsideFragment.from_json(json.dumps(frag.to_dict()))
    assert again == frag
    assert GarsideFragment.from_phi(b3.phi).table_phi() == b3.phi


def test_fragment_parse_errors():
    with pytest.raises(ParseError):
        GarsideFragment.from_json("{")
    with pytest.raises(ParseError, match="unit"):
        GarsideFragment.from_dict({"simples": ["a"], "unit": "e", "product": []})
    with pytest.raises(ParseError, match="unknown"):
        GarsideFragment.from_dict({"simples": ["e", "a"], "unit": "e", "product": [["a", "q", []]]})
    with pytest.raises(ParseError, match="duplicate"):
        GarsideFragment.from_dict({"simples": ["e", "e"], "unit": "e", "product": []})


def test_fragment_integrity():
    frag = GarsideFragment.from_dict({"simples": ["e", "a"], "unit": "e", "product": [["e", "e", []], ["a", "a", []]]})
    probs = frag.problems()
    assert any("missing" in p for p in probs)
    assert any("invertible" in p for p in probs)
    with pytest.raises(FragmentIntegrityError):
        frag.table_phi()


def test_from_phi_needs_neutral(lex):
    with pytest.raises(PreconditionError):
        GarsideFragment.from_phi(lex)


def test_committed_fragments_regenerate():
    data = catalog._load_json("braid_b3.json")
    assert generate_data.b3_fragment() == data
    assert generate_data.a2t_fragment() == catalog._load_json("artin_a2t.json")
