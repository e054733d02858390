import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "scripts"))

from qnorm import catalog  # noqa: E402
from qnorm.qmap import QuadMap  # noqa: E402
from qnorm.words import Alphabet  # noqa: E402


@pytest.fixture(scope="session")
def lex():
    return catalog.build("lexicographic").phi


@pytest.fixture(scope="session")
def b3():
    return catalog.build("braid-b3")


@pytest.fixture(scope="session")
def a2t():
    return catalog.build("artin-a2t")


@pytest.fixture(scope="session")
def termin44():
    return catalog.build("termin44").phi


def lex_phi(letters="ab"):
    a = Alphabet(letters)
    return QuadMap.from_function(a, lambda s, t: (min(s, t), max(s, t)))


def w(phi, text):
    return phi.alphabet.parse(text)


def fmt(phi, word):
    return phi.alphabet.format(word)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
