"""System-spec files and analysis reports.

A system spec is a JSON object::

    {"generators": ["a", "b"], "neutral": "e"?, "phi": [{"in": [s, t], "out": [s2, t2]}, ...]}

Pairs not listed in ``phi`` are fixed. Reports are plain JSON objects whose
key order is fixed by construction, so equal inputs give byte-equal output.
"""

from __future__ import annotations

import json
from pathlib import Path

from .exceptions import ParseError
from .qmap import QuadMap
from .words import Alphabet

SPEC_KEYS = ("generators", "neutral", "phi", "description")


def _decode_json(data: bytes | str, source: str):
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8 ({exc.reason})", f"{source}: byte {exc.start}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}: line {exc.lineno} column {exc.colno}") from None


def _pair(item, where: str, known: dict) -> tuple[str, str]:
    if not isinstance(item, list) or len(item) != 2:
        raise ParseError("expected a list of two letter names", where)
    for k, x in enumerate(item):
        if not isinstance(x, str):
            raise ParseError("letter names must be strings", f"{where}[{k}]")
        if x not in known:
            raise ParseError(f"unknown letter {x!r}", f"{where}[{k}]")
    return item[0], item[1]


def spec_from_dict(obj, source: str = "<spec>") -> tuple[Alphabet, QuadMap]:
    """Validate a decoded spec object and build its alphabet and table."""
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object", source)
    extra = sorted(set(obj) - set(SPEC_KEYS))
    if extra:
        raise ParseError(f"unexpected key(s) {extra}", source)
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise ParseError("'generators' must be a non-empty list", f"{source}: generators")
    known: dict[str, int] = {}
    for i, g in enumerate(gens):
        where = f"{source}: generators[{i}]"
        if not isinstance(g, str) or not g:
            raise ParseError("generator names must be non-empty strings", where)
        if "." in g or any(c.isspace() for c in g):
            raise ParseError(f"generator name {g!r} may not contain '.' or whitespace", where)
        if g in known:
            raise ParseError(f"duplicate generator {g!r}", where)
        known[g] = i
    neutral = obj.get("neutral")
    if neutral is not None:
        if not isinstance(neutral, str):
            raise ParseError("'neutral' must be a string", f"{source}: neutral")
        if neutral not in known:
            raise ParseError(f"neutral {neutral!r} is not a generator", f"{source}: neutral")
    rows = obj.get("phi", [])
    if not isinstance(rows, list):
        raise ParseError("'phi' must be a list", f"{source}: phi")
    alphabet = Alphabet(gens, neutral=neutral)
    pairs: dict[tuple[str, str], tuple[str, str]] = {}
    for i, row in enumerate(rows):
        where = f"{source}: phi[{i}]"
        if not isinstance(row, dict) or set(row) != {"in", "out"}:
            raise ParseError("each entry needs exactly the keys 'in' and 'out'", where)
        lhs = _pair(row["in"], where + ".in", known)
        rhs = _pair(row["out"], where + ".out", known)
        if lhs in pairs:
            raise ParseError(f"duplicate pair {lhs[0]}|{lhs[1]}", where + ".in")
        pairs[lhs] = rhs
    return alphabet, QuadMap.from_pairs(alphabet, pairs)


def parse_spec(data: bytes | str, source: str = "<spec>") -> tuple[Alphabet, QuadMap]:
    return spec_from_dict(_decode_json(data, source), source)


def load_spec(path: str | Path) -> tuple[Alphabet, QuadMap]:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), str(path)) from None
    return parse_spec(raw, str(path))


def spec_to_dict(phi: QuadMap) -> dict:
    """Spec object listing only the pairs phi moves."""
    a = phi.alphabet
    out: dict = {"generators": list(a.letters)}
    if a.neutral is not None:
        out["neutral"] = a.neutral
    names = a.letters
    out["phi"] = [
        {"in": [names[s], names[t]], "out": [names[u], names[v]]} for (s, t), (u, v) in phi.non_identity_pairs()
    ]
    return out


def dump_spec(phi: QuadMap) -> str:
    return emit_json(spec_to_dict(phi))


# ---------------------------------------------------------------------------
# Reports


def emit_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def parse_report(text: str | bytes) -> dict:
    obj = _decode_json(text, "<report>")
    if not isinstance(obj, dict):
        raise ParseError("a report is a JSON object", "<report>")
    return obj


def _render(value, indent: int, lines: list[str], key: str | None) -> None:
    pad = "  " * indent
    head = f"{pad}{key}:" if key is not None else pad.rstrip()
    if isinstance(value, dict):
        if key is not None:
            lines.append(head if value else f"{head} (none)")
        for k, v in value.items():
            _render(v, indent + (key is not None), lines, str(k))
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        lines.append(head)
        for i, v in enumerate(value):
            _render(v, indent + 1, lines, f"[{i}]")
    else:
        if isinstance(value, list):
            shown = ", ".join(str(v) for v in value) if value else "(none)"
        elif value is None:
            shown = "-"
        elif isinstance(value, bool):
            shown = "yes" if value else "no"
        else:
            shown = str(value)
        lines.append(f"{head} {shown}" if key is not None else shown)


def render_text(report: dict) -> str:
    """Indented human-readable rendering of a report."""
    lines: list[str] = []
    _render(report, 0, lines, None)
    return "\n".join(lines) + "\n"
