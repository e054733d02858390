"""Quadratic normalisations of monoids.

A system is a finite alphabet with a map phi on two-letter words. The
package decides the class-(4,3) axioms and the domino rule, measures the
minimal class, normalises words, analyses the induced rewriting system and
relates left-weighted systems to Garside families.
"""

from .analysis import (
    ClassReport,
    ClassValue,
    check_axioms_43,
    check_domino,
    check_idempotent,
    check_left_weighted,
    check_locality,
    class_report,
    detect_neutral,
    minimal_class,
    minimal_p_class,
)
from .catalog import build as build_catalog
from .estimator import QuadraticNormaliser
from .exceptions import (
    BudgetExceededError,
    ConfigurationError,
    FragmentIntegrityError,
    NonConfluentError,
    NonNormalisingError,
    NormalisationError,
    ParseError,
    PreconditionError,
    QNormError,
    RangeError,
    StrategyCycleError,
)
from .garside import (
    GarsideFragment,
    check_garside_characterisation,
    derive_normalisation,
    head,
    is_greedy,
    triangular_presentation,
)
from .io import dump_spec, emit_json, load_spec, parse_report, parse_spec, render_text
from .normaliser import element, left_divides, multiply, normalize, normalize_mod_e
from .qmap import QuadMap, alternating_sequence, apply_at, apply_sequence, delta_sequence
from .rewriting import classify, explore, extract_rules, verify_termination_bound
from .words import Alphabet

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BudgetExceededError",
    "ClassReport",
    "ClassValue",
    "ConfigurationError",
    "FragmentIntegrityError",
    "GarsideFragment",
    "NonConfluentError",
    "NonNormalisingError",
    "NormalisationError",
    "ParseError",
    "PreconditionError",
    "QNormError",
    "QuadMap",
    "QuadraticNormaliser",
    "RangeError",
    "StrategyCycleError",
    "alternating_sequence",
    "apply_at",
    "apply_sequence",
    "build_catalog",
    "check_axioms_43",
    "check_domino",
    "check_garside_characterisation",
    "check_idempotent",
    "check_left_weighted",
    "check_locality",
    "class_report",
    "classify",
    "delta_sequence",
    "derive_normalisation",
    "detect_neutral",
    "dump_spec",
    "element",
    "emit_json",
    "explore",
    "extract_rules",
    "head",
    "is_greedy",
    "left_divides",
    "load_spec",
    "minimal_class",
    "minimal_p_class",
    "multiply",
    "normalize",
    "normalize_mod_e",
    "parse_report",
    "parse_spec",
    "render_text",
    "triangular_presentation",
    "verify_termination_bound",
]
