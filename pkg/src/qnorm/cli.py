"""Command-line interface.

Exit codes: 0 analysis completed, 1 a checked property is violated,
2 input error (bad file, unknown letter, bad parameter).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import analysis as an
from . import catalog as cat
from . import io
from .exceptions import ConfigurationError, NormalisationError, ParseError, PreconditionError, QNormError
from .garside import (
    GarsideFragment,
    check_garside_characterisation,
    derive_normalisation,
    triangular_presentation,
)
from .normaliser import STRATEGIES, leftmost_position, normalize
from .qmap import QuadMap, apply_at
from .rewriting import classify, explore, extract_rules, verify_termination_bound

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


@dataclass
class _System:
    phi: QuadMap
    source: dict
    entry: cat.CatalogSystem | None = None
    fragment: GarsideFragment | None = None


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise ConfigurationError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = int(val)
        except ValueError:
            out[key] = val
    return out


def _load_system(args, required: bool = True) -> _System | None:
    if args.file and args.catalog:
        raise ConfigurationError("give either FILE or --catalog, not both")
    if args.catalog:
        params = _parse_params(args.param)
        entry = cat.build(args.catalog, **params)
        src = {"catalog": args.catalog, "params": dict(sorted(entry.params.items()))}
        return _System(entry.phi, src, entry, entry.fragment)
    if args.param:
        raise ConfigurationError("--param only applies with --catalog")
    if args.file:
        _, phi = io.load_spec(args.file)
        return _System(phi, {"file": args.file})
    if required:
        raise ConfigurationError("no system given: pass FILE or --catalog NAME")
    return None


def _describe(sysm: _System) -> dict:
    a = sysm.phi.alphabet
    return {**sysm.source, "generators": len(a), "neutral": a.neutral}


def _rules_for(phi: QuadMap, mod_e: str):
    if mod_e == "auto":
        e = phi.alphabet.neutral_index
        use = e is not None and an.is_neutral(phi, e)
    else:
        use = mod_e == "yes"
    return extract_rules(phi, mod_e=use)


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, result dict)


def cmd_check(args, sysm: _System):
    phi = sysm.phi
    fmt = phi.alphabet.format
    det = an.detect_neutral(phi)
    idem = an.find_idempotency_violation(phi)
    ax = an.find_axioms_43_violation(phi)
    dom = an.find_domino_violation(phi)
    res = {
        "idempotent_phi": idem is None,
        "idempotency_witness": None if idem is None else fmt(idem),
        "axioms_43": ax is None,
        "axioms_43_witness": None if ax is None else fmt(ax),
        "domino": dom is None,
        "domino_witness": None if dom is None else fmt(dom),
        "neutral": det.neutral,
        "neutral_candidates": list(det.candidates),
        "declared_neutral": phi.alphabet.neutral,
        "declared_neutral_valid": None
        if phi.alphabet.neutral is None
        else an.is_neutral(phi, phi.alphabet.neutral_index),
        "warning": det.warning,
    }
    return EXIT_OK, res


def cmd_class(args, sysm: _System):
    ps = sorted(set(args.p or ()))
    rep = an.class_report(sysm.phi, ps=[p for p in ps if p != 3], cap=args.cap)
    return EXIT_OK, rep.to_dict(sysm.phi.alphabet)


def cmd_normalize(args, sysm: _System):
    phi = sysm.phi
    a = phi.alphabet
    w = a.parse(args.word)
    try:
        nf = normalize(phi, w, strategy=args.strategy)
    except NormalisationError as exc:
        witness = exc.witness
        if isinstance(witness, (list, tuple)) and witness and isinstance(witness[0], tuple):
            witness = [a.format(x) for x in witness]
        elif isinstance(witness, tuple):
            witness = a.format(witness)
        return EXIT_VIOLATION, {"word": a.format(w), "strategy": args.strategy, "error": str(exc), "witness": witness}
    except PreconditionError as exc:
        return EXIT_VIOLATION, {"word": a.format(w), "strategy": args.strategy, "error": str(exc), "witness": None}
    return EXIT_OK, {"word": a.format(w), "strategy": args.strategy, "normal_form": a.format(nf)}


def _leftmost_trace(phi: QuadMap, w, limit: int) -> list:
    trace = [w]
    seen = {w}
    while len(trace) <= limit:
        i = leftmost_position(phi, trace[-1])
        if i is None:
            break
        nxt = apply_at(phi, trace[-1], i)
        trace.append(nxt)
        if nxt in seen:
            break
        seen.add(nxt)
    return trace


def cmd_rewrite(args, sysm: _System):
    phi = sysm.phi
    a = phi.alphabet
    w = a.parse(args.word)
    rules = _rules_for(phi, args.mod_e)
    graph = explore(rules, w, args.max_steps)
    res = {"rules": len(rules), "mod_e": rules.mod_e, "graph": graph.to_dict()}
    if args.trace:
        res["leftmost_trace"] = [a.format(x) for x in _leftmost_trace(phi, w, 2 ** max(len(w), 1))]
    if args.graph:
        try:
            with open(args.graph, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(graph.to_edge_list())
        except OSError as exc:
            raise ConfigurationError(f"cannot write {args.graph}: {exc.strerror}") from None
        res["graph_file"] = args.graph
    return EXIT_OK, res


def cmd_termination(args, sysm: _System):
    phi = sysm.phi
    rules = _rules_for(phi, args.mod_e)
    cl = classify(rules, args.max_length)
    cv = an.minimal_class(phi)
    bound = verify_termination_bound(rules, args.max_length, cv)
    verdict = "terminating" if cl.terminating else "non-terminating"
    res = {
        "verdict": verdict,
        "qualified_by": f"all start words of length <= {args.max_length}",
        "minimal_class": cv.to_dict(phi.alphabet),
        "classification": cl.to_dict(),
        "bound_check": bound.to_dict(),
    }
    code = EXIT_OK
    if args.expect_terminating and not cl.terminating:
        code = EXIT_VIOLATION
    if args.expect_terminating and bound.within_bound is False:
        code = EXIT_VIOLATION
    return code, res


def cmd_garside(args, sysm: _System | None):
    frag = sysm.fragment if sysm is not None else None
    if args.fragment:
        try:
            with open(args.fragment, "rb") as fh:
                frag = GarsideFragment.from_json(fh.read(), args.fragment)
        except OSError as exc:
            raise ParseError(exc.strerror or str(exc), args.fragment) from None
    if sysm is None:
        if frag is None:
            raise ConfigurationError("garside needs FILE, --catalog or --fragment")
        phi = derive_normalisation(frag)
    else:
        phi = sysm.phi
    verdict = check_garside_characterisation(phi, bound=args.bound, fragment=frag)
    res = {"verdict": verdict.to_dict()}
    code = EXIT_OK
    if args.triangular:
        try:
            res["triangular"] = triangular_presentation(phi).to_dict()
        except PreconditionError as exc:
            res["triangular"] = {"refused": str(exc)}
            code = EXIT_VIOLATION
    if verdict.sides_agree is False:
        code = EXIT_VIOLATION
    return code, res


def cmd_properties(args, sysm: _System):
    """Invariant suite; the first failing property carries the witness."""
    phi = sysm.phi
    fmt = phi.alphabet.format
    checks: list[an.PropertyResult] = []
    idem = an.find_idempotency_violation(phi)
    checks.append(an.PropertyResult("idempotent_phi", idem is None, None if idem is None else fmt(idem)))
    # tables that are only exact on part of S^3 (truncated families) are judged there
    domain = sysm.entry.domain if sysm.entry is not None else None
    ax = an.check_axioms_43(phi, domain)
    dom = an.check_domino(phi, domain)
    cv = an.minimal_class(phi, domain=domain)
    small = cv.within(4, 3)
    agree = ax == dom == small
    witness = None
    if not agree:
        witness = an.find_axioms_43_violation(phi, domain) or an.find_domino_violation(phi, domain) or cv.split_witness
    checks.append(
        an.PropertyResult(
            "axioms_domino_class_agree",
            agree,
            None if witness is None else fmt(witness),
            f"axioms={ax} domino={dom} class={cv}" + ("" if domain is None else f" on {len(domain)} words"),
        )
    )
    if domain is not None:
        ax = False  # the full-length checks below need an exact table
    if ax:
        checks.extend(an.check_normalisation_axioms(phi, args.max_length, "delta"))
        checks.append(an.strategies_agree(phi, args.max_length))
        rules = _rules_for(phi, "auto")
        for p in range(2, min(args.max_length, 4) + 1):
            tb = verify_termination_bound(rules, p, cv)
            ok = tb.within_bound is not False
            witness = None
            if not ok:
                witness = fmt(tb.worst_word) if tb.worst_word is not None else " -> ".join(fmt(w) for w in tb.cycle or [])
            checks.append(
                an.PropertyResult(f"termination_bound:{p}", ok, witness, f"longest={tb.max_observed} bound={tb.bound}")
            )
    if sysm.entry is not None:
        for fact in sysm.entry.expected:
            got = cat.observe(sysm.entry, fact.key)
            if isinstance(fact.value, tuple):
                got = tuple(got)
            ok = got == fact.value
            checks.append(
                an.PropertyResult(f"expected:{fact.key}", ok, None if ok else str(got), f"expected {fact.value}")
            )
    failed = [c for c in checks if not c.holds]
    res = {
        "max_length": args.max_length,
        "passed": len(checks) - len(failed),
        "failed": len(failed),
        "first_failure": failed[0].to_dict() if failed else None,
        "checks": [c.to_dict() for c in checks],
    }
    return (EXIT_VIOLATION if failed else EXIT_OK), res


def cmd_catalog(args, _sysm):
    res = {
        "entries": [
            {"name": e.name, "summary": e.summary, "defaults": e.defaults, "limits": {k: list(v) for k, v in e.limits.items()}}
            for e in cat.entries()
        ]
    }
    return EXIT_OK, res


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help="system spec JSON file")
    common.add_argument("--catalog", metavar="NAME", help="use a built-in system instead of FILE")
    common.add_argument("--param", action="append", metavar="K=V", help="catalog parameter (repeatable)")
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")

    ap = argparse.ArgumentParser(prog="qnorm", description="Analyse quadratic normalisations given by their two-letter table.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="class-(4,3) axioms, domino rule, neutral letter")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("class", parents=[common], help="minimal class and p-classes")
    p.add_argument("--p", type=int, action="append", help="also compute the p-class (repeatable)")
    p.add_argument("--cap", type=int, default=an.DEFAULT_CAP, help="iteration cap per word (default %(default)s)")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("normalize", parents=[common], help="normal form of a word")
    p.add_argument("--word", required=True, help="dot-separated word, e.g. a.b.c")
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("rewrite", parents=[common], help="rewriting graph reachable from a word")
    p.add_argument("--word", required=True)
    p.add_argument("--trace", action="store_true", help="include the leftmost rewriting trace")
    p.add_argument("--graph", metavar="OUT", help="write the edge list (word TAB position TAB word)")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--mod-e", choices=("auto", "yes", "no"), default="no")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("termination", parents=[common], help="termination, normalisation and confluence up to a length")
    p.add_argument("--max-length", type=int, default=4)
    p.add_argument("--expect-terminating", action="store_true", help="exit 1 if a cycle or a bound violation is found")
    p.add_argument("--mod-e", choices=("auto", "yes", "no"), default="auto")
    p.set_defaults(func=cmd_termination)

    p = sub.add_parser("garside", parents=[common], help="Garside characterisation and triangular presentation")
    p.add_argument("--fragment", metavar="FILE", help="fragment JSON (simples, unit, product)")
    p.add_argument("--triangular", action="store_true")
    p.add_argument("--bound", type=int, default=3, help="word length for the cancellativity search")
    p.set_defaults(func=cmd_garside)

    p = sub.add_parser("properties", parents=[common], help="run the invariant suite; exit 1 on the first violation")
    p.add_argument("--max-length", type=int, default=4)
    p.set_defaults(func=cmd_properties)

    p = sub.add_parser("catalog", help="built-in systems")
    p.add_argument("action", choices=("list",))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return ap


def _emit(report: dict, as_json: bool, stream) -> None:
    stream.write(io.emit_json(report) if as_json else io.render_text(report))


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    as_json = getattr(args, "json", False)
    try:
        if args.command == "catalog":
            sysm = None
        else:
            sysm = _load_system(args, required=args.command != "garside")
        code, result = args.func(args, sysm)
    except (ParseError, ConfigurationError) as exc:
        report = {"command": args.command, "error": str(exc), "exit_code": EXIT_INPUT}
        _emit(report, as_json, stdout if as_json else stderr)
        return EXIT_INPUT
    except QNormError as exc:
        report = {"command": args.command, "error": str(exc), "exit_code": EXIT_VIOLATION}
        _emit(report, as_json, stdout if as_json else stderr)
        return EXIT_VIOLATION
    report = {"command": args.command}
    if sysm is not None:
        report["system"] = _describe(sysm)
    report["result"] = result
    report["exit_code"] = code
    if not as_json and args.command == "normalize" and "normal_form" in result:
        stdout.write(result["normal_form"] + "\n")
    else:
        _emit(report, as_json, stdout)
    return code


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
