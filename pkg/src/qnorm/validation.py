"""Input validation shared by the estimator and the command line."""

from __future__ import annotations

import json
import numbers
from collections.abc import Mapping, Sequence

from .exceptions import ConfigurationError, ParseError
from .qmap import QuadMap
from .words import Alphabet, Word


def check_int(name: str, value, minimum: int | None = None, maximum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ConfigurationError(f"{name} must be <= {maximum}, got {value}")
    return value


def check_choice(name: str, value, choices) -> str:
    if value not in choices:
        raise ConfigurationError(f"{name} must be one of {', '.join(map(str, choices))}; got {value!r}")
    return value


def check_system(system) -> QuadMap:
    """Coerce a QuadMap, spec dict, spec JSON text, catalog name or Garside fragment to a QuadMap."""
    from . import catalog
    from .garside import GarsideFragment, derive_normalisation
    from .io import parse_spec, spec_from_dict

    if isinstance(system, QuadMap):
        return system
    if isinstance(system, catalog.CatalogSystem):
        return system.phi
    if isinstance(system, GarsideFragment):
        return derive_normalisation(system)
    if isinstance(system, Mapping):
        return spec_from_dict(dict(system))[1]
    if isinstance(system, bytes):
        return parse_spec(system)[1]
    if isinstance(system, str):
        if system.lstrip().startswith("{"):
            return parse_spec(system)[1]
        return catalog.build(system).phi
    raise ConfigurationError(f"cannot interpret {type(system).__name__} as a quadratic system")


def check_word(alphabet: Alphabet, word) -> Word:
    """A word given as "a.b.c", a sequence of letter names, or a sequence of indices."""
    if isinstance(word, str):
        return alphabet.parse(word)
    if not isinstance(word, Sequence):
        raise ParseError(f"cannot read {word!r} as a word")
    out = []
    for x in word:
        if isinstance(x, str):
            out.append(alphabet.index(x))
        elif isinstance(x, numbers.Integral) and not isinstance(x, bool):
            if not 0 <= x < len(alphabet):
                raise ParseError(f"letter index {x} outside 0..{len(alphabet) - 1}")
            out.append(int(x))
        else:
            raise ParseError(f"cannot read {x!r} as a letter")
    return tuple(out)


def check_words(alphabet: Alphabet, words) -> list[Word]:
    if isinstance(words, (str, bytes)):
        raise ParseError("expected a collection of words, got a single string")
    return [check_word(alphabet, w) for w in words]


def check_json_object(text: str | bytes, what: str = "input") -> dict:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(str(exc), what) from None
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", what)
    return obj
