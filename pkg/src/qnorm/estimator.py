"""Estimator-style wrapper: fit on a system, transform words to normal forms."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import analysis as an
from .exceptions import PreconditionError
from .normaliser import STRATEGIES, normalize, project
from .validation import check_choice, check_int, check_system, check_words


class QuadraticNormaliser(BaseEstimator):
    """Normal forms for the system passed to :meth:`fit`.

    `fit` accepts a QuadMap, a spec object or JSON text, a catalog name or a
    Garside fragment. `transform` maps a collection of words to their normal
    forms, formatted as dot-separated strings.

    Parameters
    ----------
    strategy : {"auto", "delta", "leftmost", "exhaustive"}
    cap : int
        Iteration cap used when measuring the class.
    mod_e : bool
        Drop the neutral letter from the output.
    require_axioms : bool
        Refuse systems that fail the class-(4,3) axioms.
    """

    def __init__(self, strategy: str = "auto", cap: int = an.DEFAULT_CAP, mod_e: bool = False, require_axioms: bool = False):
        self.strategy = strategy
        self.cap = cap
        self.mod_e = mod_e
        self.require_axioms = require_axioms

    def fit(self, X, y=None):
        check_choice("strategy", self.strategy, STRATEGIES)
        check_int("cap", self.cap, minimum=1)
        phi = check_system(X)
        axioms = an.check_axioms_43(phi)
        if self.require_axioms and not axioms:
            raise PreconditionError("system fails the class-(4,3) axioms")
        if self.mod_e:
            an.require_neutral(phi)
        self.phi_ = phi
        self.alphabet_ = phi.alphabet
        self.axioms_43_ = axioms
        self.class_ = an.minimal_class(phi, self.cap)
        self.neutral_ = an.detect_neutral(phi).neutral
        return self

    def transform(self, X) -> list[str]:
        check_is_fitted(self, "phi_")
        out = []
        for w in check_words(self.alphabet_, X):
            nf = normalize(self.phi_, w, self.strategy)
            if self.mod_e:
                nf = project(self.phi_, nf)
            out.append(self.alphabet_.format(nf))
        return out

    def is_normal(self, X) -> list[bool]:
        check_is_fitted(self, "phi_")
        inv = self.phi_.invariant
        return [all(inv[w[i], w[i + 1]] for i in range(len(w) - 1)) for w in check_words(self.alphabet_, X)]
