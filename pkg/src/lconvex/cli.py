"""Command-line front end.

Exit codes: 0 pass, 1 mathematical disagreement or validation failure,
2 parse error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import quantale as qmod
from .cat import embedding_iff_surjection, is_quasihomeomorphism, is_strict_embedding
from .convex import LConvexSpace, SpaceMap, family_cap, hull, is_S0, s0_witness
from .documents import DocumentError, Workspace, dumps, lset_from_document
from .errors import LConvexError, PreconditionError, ResourceLimit
from .quantale import Quantale
from .search import SearchConfig, run_search
from .sober import irr, is_sober, sobrify
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_LIMIT = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, doc):
        super().__init__(code)
        self.code = code
        self.doc = doc


def _emit(doc, args, out) -> None:
    out.write(_render(doc, args.pretty) + "\n")


def _render(doc, pretty: bool) -> str:
    if pretty and isinstance(doc, dict) and "reports" in doc and "summary" in doc:
        lines = []
        for r in doc["reports"]:
            flag = "ok  " if r["agreement"] else "FAIL"
            conds = ", ".join(f"{k}={'T' if v else 'F'}" for k, v in r["conditions"].items())
            lines.append(f"{flag} {r['theorem']}: {conds or 'vacuous'}")
        s = doc["summary"]
        lines.append(f"{doc['suite']}: {s['agreements']}/{s['reports']} agree, "
                     f"{s['decider_checks']} sobriety cross-checks, passed={s['passed']}")
        return "\n".join(lines)
    return dumps(doc, pretty=pretty)


def _load(ws: Workspace, path, expect: type):
    obj = ws.load(path)
    if not isinstance(obj, expect):
        raise DocumentError(f"{path}: expected a {expect.__name__} document")
    return obj


def _parse_lset(ws: Workspace, X: LConvexSpace, text: str):
    p = Path(text)
    if p.suffix == ".json" and (ws.root / p).exists():
        _, doc = ws.read(p)
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"cannot parse L-subset {text!r}: {exc}") from exc
    return lset_from_document(X.quantale, X.size, doc)


def analyze_document(X: LConvexSpace) -> dict:
    verdict = is_sober(X)
    return {
        "hulls": {X.labels[x]: h.to_document() for x, h in enumerate(X.point_hulls)},
        "irr": [F.to_document() for F in irr(X)],
        "s0": is_S0(X),
        "sober": verdict.sober,
        "verdict": verdict.to_document(),
        "eta": list(sobrify(X).eta.points),
        "sobrification": sobrify(X).space.to_document(),
    }


def cmd_validate(ws: Workspace, args) -> int:
    results, code = [], EXIT_OK
    for path in args.files:
        entry = {"path": path}
        try:
            obj = ws.load(path)
            entry["valid"] = True
            entry["kind"] = type(obj).__name__
            if isinstance(obj, SpaceMap):
                entry["flags"] = obj.flags.to_document()
        except DocumentError as exc:
            entry.update(valid=False, error="ParseError", message=str(exc))
            code = EXIT_PARSE
        except ResourceLimit as exc:
            entry.update(valid=False, error=type(exc).__name__, message=str(exc))
            code = max(code, EXIT_LIMIT) if code != EXIT_PARSE else code
        except LConvexError as exc:
            entry.update(valid=False, error=type(exc).__name__, message=str(exc),
                         witness=_jsonable(exc.witness))
            code = code or EXIT_FAIL
        results.append(entry)
    raise _Exit(code, {"files": results})


def _jsonable(value):
    return json.loads(json.dumps(value, default=lambda o: o.to_document() if hasattr(o, "to_document") else str(o)))


def cmd_analyze(ws: Workspace, args) -> int:
    X = _load(ws, args.space, LConvexSpace)
    partial = {"space": X.to_document()}
    try:
        partial.update(analyze_document(X))
    except ResourceLimit as exc:
        partial["error"] = {"type": type(exc).__name__, "message": str(exc)}
        raise _Exit(EXIT_LIMIT, partial) from exc
    raise _Exit(EXIT_OK, partial)


def cmd_hull(ws: Workspace, args) -> int:
    X = _load(ws, args.space, LConvexSpace)
    A = _parse_lset(ws, X, args.lset)
    raise _Exit(EXIT_OK, {"lset": A.to_document(), "hull": hull(X, A).to_document()})


def cmd_irr(ws: Workspace, args) -> int:
    X = _load(ws, args.space, LConvexSpace)
    raise _Exit(EXIT_OK, {"irr": [F.to_document() for F in irr(X)]})


def cmd_sobrify(ws: Workspace, args) -> int:
    X = _load(ws, args.space, LConvexSpace)
    raise _Exit(EXIT_OK, sobrify(X).to_document())


def cmd_check(ws: Workspace, args) -> int:
    prop = args.property
    if prop in ("sober", "s0"):
        X = _load(ws, args.target, LConvexSpace)
        if prop == "sober":
            v = is_sober(X)
            raise _Exit(EXIT_OK if v.sober else EXIT_FAIL, v.to_document())
        w = s0_witness(X)
        doc = {"s0": w is None}
        if w is not None:
            doc["witness"] = [X.labels[w[0]], X.labels[w[1]]]
        raise _Exit(EXIT_OK if w is None else EXIT_FAIL, doc)
    f = _load(ws, args.target, SpaceMap)
    doc = {"flags": f.flags.to_document()}
    if prop == "cp":
        ok = f.flags.cp
    elif prop == "quasi":
        ok = is_quasihomeomorphism(f)
    else:
        ok = f.flags.subspace_embedding
        doc["strict"] = f.flags.cp and is_strict_embedding(f)
        if is_S0(f.source) and is_S0(f.target):
            doc["embedding_iff_surjection"] = embedding_iff_surjection(f).to_document()
    doc[prop] = ok
    raise _Exit(EXIT_OK if ok else EXIT_FAIL, doc)


def cmd_theorems(ws: Workspace, args) -> int:
    config = SuiteConfig(trials=args.trials, seed=args.seed if args.seed is not None else ws.seed,
                         max_convexes=args.max_convexes, inject_fault=args.inject_fault)
    try:
        result = run_suite(args.suite, config)
    except ValueError as exc:
        raise _Exit(EXIT_PARSE, {"error": str(exc)}) from exc
    raise _Exit(EXIT_OK if result.passed else EXIT_FAIL, result.to_document())


def _search_config(ws: Workspace, path) -> SearchConfig:
    p, doc = ws.read(path)
    quantales = []
    for ref in doc.get("quantales", [{"chain": {"n": 2, "flavor": "godel"}}]):
        q = ws.load(p.parent / ref) if isinstance(ref, str) else qmod.from_document(ref)
        if not isinstance(q, Quantale):
            raise DocumentError(f"{ref!r} is not a quantale")
        quantales.append(q)
    try:
        return SearchConfig(
            quantales=quantales,
            carrier_sizes=tuple(doc.get("carrier_sizes", (1, 3))),
            generator_counts=tuple(doc.get("generator_counts", (0, 3))),
            trials=int(doc.get("trials", 100)),
            seed=int(doc.get("seed", ws.seed)),
            target=doc.get("target", "sober"),
            max_family=int(doc.get("max_family", ws.max_family)),
            max_findings=doc.get("max_findings"),
        )
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"bad search config: {exc}") from exc


def cmd_search(ws: Workspace, args) -> int:
    config = _search_config(ws, args.config)
    findings = run_search(config)
    raise _Exit(EXIT_OK, {"target": config.target, "seed": config.seed,
                          "trials": config.trials, "findings": findings})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lconvex", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    parser.add_argument("--seed", type=int, default=None, help="default seed")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="load and validate documents")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_validate)

    for name, func, helptext in [("analyze", cmd_analyze, "hulls, irr, S0, sobriety, sobrification"),
                                 ("irr", cmd_irr, "algebraic irreducible convex sets"),
                                 ("sobrify", cmd_sobrify, "the sobrification and its unit")]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("space")
        p.set_defaults(func=func)

    p = sub.add_parser("hull", help="hull of an L-subset")
    p.add_argument("space")
    p.add_argument("lset", help='JSON file or inline JSON, e.g. "[2, 0]"')
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("check", help="decide one property")
    p.add_argument("property", choices=["sober", "s0", "cp", "quasi", "embedding"])
    p.add_argument("target", help="space document (sober, s0) or map document")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("theorems", help="run a seeded theorem suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=None, dest="seed")
    p.add_argument("--max-convexes", type=int, default=None)
    p.add_argument("--inject-fault", action="store_true",
                   help="append a deliberately corrupted instance (harness self-test)")
    p.set_defaults(func=cmd_theorems)

    p = sub.add_parser("search", help="randomized search driven by a JSON config")
    p.add_argument("config")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    ws = Workspace(seed=args.seed or 0, max_family=family_cap())
    try:
        args.func(ws, args)
    except _Exit as done:
        _emit(done.doc, args, out)
        return done.code
    except DocumentError as exc:
        _emit({"error": "ParseError", "message": str(exc)}, args, out)
        return EXIT_PARSE
    except ResourceLimit as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args, out)
        return EXIT_LIMIT
    except (PreconditionError, LConvexError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc),
               "witness": _jsonable(exc.witness)}, args, out)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
