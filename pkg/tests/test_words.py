import itertools

import pytest

from qnorm.exceptions import ConfigurationError, ParseError, RangeError
from qnorm.words import Alphabet, append_padding, factor, pad_projection

ABC = Alphabet("abc")
ABE = Alphabet("abe", neutral="e")


def test_factor_examples():
    assert factor(ABC.parse("a.b.c"), 2, 2) == ABC.parse("b.c")
    assert factor(ABC.parse("c.b.b.a"), 1, 2) == ABC.parse("c.b")
    assert factor(ABC.parse("a"), 1, 1) == ABC.parse("a")


@pytest.mark.parametrize("i,length", [(0, 1), (3, 2), (1, 4), (2, -1)])
def test_factor_out_of_range(i, length):
    with pytest.raises(RangeError):
        factor((0, 1, 2), i, length)


def test_factor_composition():
    w = (0, 1, 2, 0, 1)
    for i in range(1, 6):
        for ln in range(0, 6 - i + 1):
            f = factor(w, i, ln)
            for j in range(1, ln + 1):
                for k in range(0, ln - j + 2):
                    if j + k - 1 <= ln:
                        assert factor(f, j, k) == factor(w, i + j - 1, k)


def test_projection_examples():
    assert pad_projection(ABE.parse("a.e.b.e"), ABE) == ABE.parse("a.b")
    assert pad_projection(ABE.parse("e.e"), ABE) == ()
    assert pad_projection(ABE.parse("a.b"), ABE) == ABE.parse("a.b")


def test_padding_examples():
    assert append_padding(ABE.parse("a.b"), 2, ABE) == ABE.parse("a.b.e.e")
    assert append_padding(ABE.parse("a.b"), 0, ABE) == ABE.parse("a.b")
    assert append_padding((), 1, ABE) == ABE.parse("e")


def test_projection_without_neutral():
    with pytest.raises(ConfigurationError):
        pad_projection((0,), ABC)
    with pytest.raises(ConfigurationError):
        append_padding((0,), 1, ABC)


def test_projection_ignores_padding_exhaustive():
    a = Alphabet("abce", neutral="e")
    for k in range(5):
        for w in itertools.product(range(4), repeat=k):
            for m in range(4):
                assert pad_projection(append_padding(w, m, a), a) == pad_projection(w, a)


def test_alphabet_validation():
    with pytest.raises(ConfigurationError):
        Alphabet([])
    with pytest.raises(ConfigurationError):
        Alphabet(["a", "a"])
    with pytest.raises(ConfigurationError):
        Alphabet(["a"], neutral="e")
    with pytest.raises(ConfigurationError):
        Alphabet(["a.b"])


def test_parse_and_format_multichar():
    a = Alphabet(["e", "s1", "s1s2"], neutral="e")
    word = a.parse("s1.s1s2.e")
    assert word == (1, 2, 0)
    assert a.format(word) == "s1.s1s2.e"
    assert a.parse("") == ()
    with pytest.raises(ParseError):
        a.parse("s1.s3")


def test_words_enumeration_order():
    assert list(ABC.words(2))[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert all(0 not in w for w in Alphabet("eab", neutral="e").words(3, exclude_neutral=True))
