"""Command-line front end: ``digitop <subcommand> ...``.

Exit codes: 0 success, 1 failed verification, 2 malformed input or a
request outside a theorem's hypotheses, 3 an answer left undecided by a
search budget.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import catalog, verify
from .core import (
    Graph6Error,
    ParameterError,
    VertexMap,
    load_image,
    write_graph6,
)
from .cycles import classify_cycle_selfmap, expected_induced, flip_map, rotation_map
from .gallery import named_image
from .homology import homology, induced_homology_map
from .homotopy import (
    DEFAULT_CANDIDATE_BUDGET,
    DEFAULT_MAP_BUDGET,
    Homotopy,
    Verdict,
    find_homotopy,
    homotopy_defect,
    one_step_homotopic,
    one_step_strong_homotopic,
    pointed_profile,
    pointed_strongly_contractible,
    strong_contraction_ordering,
    strong_core,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3

_verdict = {"type": "string", "enum": ["yes", "no", "undecided"]}
_homotopy_schema = {
    "type": "object",
    "required": ["k", "stages"],
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "stages": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

SCHEMAS = {
    "homology": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["q", "betti", "torsion"],
            "properties": {
                "q": {"type": "integer", "minimum": 0},
                "betti": {"type": "integer", "minimum": 0},
                "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            },
        },
    },
    "check": {
        "type": "object",
        "required": ["mode", "verdict"],
        "properties": {
            "mode": {"type": "string"},
            "verdict": _verdict,
            "reason": {"type": "string"},
            "witness": _homotopy_schema,
        },
    },
    "reduce": {
        "type": "object",
        "required": ["core", "strongly_contractible", "ordering"],
        "properties": {
            "core": {
                "type": "object",
                "required": ["n", "graph6", "kept", "retraction"],
            },
            "strongly_contractible": {"type": "boolean"},
            "ordering": {"type": ["object", "null"]},
            "pointed": {"type": "object"},
            "pointed_profile": {"type": "object"},
        },
    },
    "census": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["n", "total", "d", "c", "undecided", "provenance"],
        },
    },
    "classify-cycle": {
        "type": "object",
        "required": ["n", "map", "class", "tag", "parameter", "induced"],
    },
}


class CLIError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(_as_text(obj))


def _as_text(obj, indent: str = "") -> str:
    if isinstance(obj, dict):
        return "\n".join(
            f"{indent}{k}:\n{_as_text(v, indent + '  ')}" if isinstance(v, (dict, list)) and v
            else f"{indent}{k}: {json.dumps(v)}" for k, v in sorted(obj.items()))
    if isinstance(obj, list):
        return "\n".join(_as_text(v, indent) if isinstance(v, dict) else f"{indent}{json.dumps(v)}"
                         for v in obj)
    return f"{indent}{obj}"


def _image(args):
    try:
        if args.input:
            return load_image(args.input)
        if args.image:
            return named_image(args.image)
    except (Graph6Error, ParameterError, OSError) as exc:
        raise CLIError(str(exc)) from None
    raise CLIError("give an image with --input PATH or --image SPEC")


def _parse_map(text: str, X, Y) -> VertexMap:
    text = text.strip()
    try:
        if text == "id":
            vals = list(range(X.n))
        elif text.startswith("const:"):
            vals = [int(text.split(":", 1)[1])] * X.n
        elif text.startswith("["):
            vals = json.loads(text)
        else:
            vals = [int(v) for v in text.split(",")]
        return VertexMap(X, Y, tuple(vals))
    except (ValueError, TypeError, ParameterError) as exc:
        raise CLIError(f"bad map {text!r}: {exc}") from None


def _q_range(spec: str, top: int) -> list[int]:
    if spec is None:
        return list(range(top + 2))
    try:
        if ".." in spec:
            a, b = spec.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(q) for q in spec.split(",")]
    except ValueError:
        raise CLIError(f"bad q range {spec!r}") from None


# -- subcommands -----------------------------------------------------------

def cmd_homology(args) -> int:
    X = _image(args)
    from .homology import chain_complex
    qs = _q_range(args.q, chain_complex(X).top)
    if any(q < 0 for q in qs):
        raise CLIError("q must be nonnegative")
    out = [homology(X, q).to_json() for q in qs]
    if args.format == "csv":
        print("q,betti,torsion")
        for row in out:
            print(f"{row['q']},{row['betti']},{' '.join(map(str, row['torsion']))}")
    else:
        _emit(out, args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    X = _image(args)
    f = _parse_map(args.f, X, X)
    g = _parse_map(args.g, X, X)
    mode = args.mode
    out: dict = {"mode": mode}
    try:
        if args.homotopy:
            with open(args.homotopy) as fh:
                H = Homotopy.from_json(X, X, json.load(fh))
            reason = homotopy_defect(H, f, g, strong=mode in ("strong", "one-step-strong"))
            if reason is None and mode.startswith("one-step") and H.k != 1:
                reason = f"k={H.k}, not a one-step homotopy"
            out["verdict"] = "yes" if reason is None else "no"
            if reason:
                out["reason"] = reason
        elif mode == "one-step":
            out["verdict"] = Verdict.of(one_step_homotopic(f, g)).value
        elif mode == "one-step-strong":
            out["verdict"] = Verdict.of(one_step_strong_homotopic(f, g)).value
        else:
            res = find_homotopy(f, g, strong=mode == "strong", map_budget=args.budget_maps,
                                candidate_budget=args.budget_candidates)
            out["verdict"] = res.verdict.value
            out["visited_maps"] = res.visited
            if args.witness and res.path is not None:
                out["witness"] = res.homotopy(X, X).to_json()
    except (ParameterError, OSError, KeyError, json.JSONDecodeError) as exc:
        raise CLIError(str(exc)) from None
    if args.witness and out["verdict"] == "yes" and "witness" not in out and mode.startswith("one-step"):
        out["witness"] = {"k": 1, "stages": [list(f.values), list(g.values)]}
    _emit(out, args.format)
    return EXIT_UNDECIDED if out["verdict"] == "undecided" else EXIT_OK


def cmd_reduce(args) -> int:
    X = _image(args)
    red = strong_core(X)
    ordering = strong_contraction_ordering(X)
    out: dict = {
        "core": {
            "n": red.image.n,
            "graph6": write_graph6(red.image),
            "kept": list(red.kept),
            "retraction": list(red.retraction.values),
        },
        "strongly_contractible": ordering is not None,
        "ordering": None if ordering is None else {
            "order": list(ordering.order), "witnesses": list(ordering.witnesses)},
    }
    code = EXIT_OK
    if args.basepoint is not None:
        if not 0 <= args.basepoint < X.n:
            raise CLIError(f"basepoint {args.basepoint} out of range")
        v = pointed_strongly_contractible(X, args.basepoint, args.budget_maps, args.budget_candidates)
        out["pointed"] = {"basepoint": args.basepoint, "verdict": v.value}
        code = EXIT_UNDECIDED if v is Verdict.UNDECIDED else code
    if args.all_basepoints:
        prof = pointed_profile(X, args.budget_maps, args.budget_candidates)
        out["pointed_profile"] = {str(x): v.value for x, v in prof.items()}
        if Verdict.UNDECIDED in prof.values():
            code = EXIT_UNDECIDED
    _emit(out, args.format)
    return code


def _census_ns(spec: str) -> list[int]:
    try:
        if "-" in spec:
            a, b = spec.split("-")
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in spec.split(",")]
    except ValueError:
        raise CLIError(f"bad --n {spec!r}") from None


def cmd_census(args) -> int:
    report = catalog.CensusReport()
    entries = []
    for n in _census_ns(args.n):
        path = catalog.corpus_path(n, args.corpus)
        try:
            if n <= catalog.MAX_GENERATED_N and path is None:
                source, prov = catalog.generate_connected_graphs(n), "generated"
            elif path is not None:
                source, prov = catalog.ingest_graph6(path, dedup=args.dedup), "ingested"
            else:
                raise CLIError(f"n={n} needs a corpus: <dir>/connected{n}.g6 via --corpus or "
                               f"${catalog.CORPUS_ENV}")
            rep, ents = catalog.build_census(
                source, reducible=not args.no_c, candidate_budget=args.budget_candidates,
                jobs=args.jobs, provenance=prov)
        except (catalog.CorpusError, ParameterError, OSError) as exc:
            raise CLIError(str(exc)) from None
        report.rows.update(rep.rows)
        entries.extend(ents)
    if args.catalog_out:
        catalog.write_catalog(entries, args.catalog_out)
    if args.format == "csv":
        sys.stdout.write(catalog.census_csv(report))
    else:
        _emit(report.to_json(), args.format)
    undecided = any(r.undecided for r in report.rows.values())
    return EXIT_UNDECIDED if undecided else EXIT_OK


def cmd_classify_cycle(args) -> int:
    n = args.n
    try:
        if args.map == "flip":
            f = flip_map(n)
        elif args.map.startswith("rot:"):
            f = rotation_map(n, int(args.map[4:]))
        elif args.map.startswith("flip:"):
            l, r = flip_map(n), rotation_map(n, int(args.map[5:]))
            f = VertexMap(l.dom, l.cod, tuple(r.values[v] for v in l.values))
        else:
            from .core import cycle_image
            C = cycle_image(n)
            f = _parse_map(args.map, C, C)
        if n <= 4:
            _emit({"n": n, "map": list(f.values), "status": "out of theorem scope (needs n > 4)"},
                  args.format)
            return EXIT_INPUT
        cls = classify_cycle_selfmap(f)
        induced = []
        for q in range(3):
            computed = induced_homology_map(f, q).matrix.tolist()
            induced.append({"q": q, "expected": expected_induced(f, q), "computed": computed})
    except ParameterError as exc:
        raise CLIError(str(exc)) from None
    _emit({"n": n, "map": list(f.values), "class": str(cls), "tag": cls.tag.value,
           "parameter": cls.parameter, "induced": induced}, args.format)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    only = None
    if args.only:
        try:
            only = {int(i) for i in args.only.split(",")}
        except ValueError:
            raise CLIError(f"bad --only {args.only!r}") from None
        if not only <= set(range(1, len(verify.CHECKS) + 1)):
            raise CLIError(f"--only items must lie in 1..{len(verify.CHECKS)}")
    results = verify.run_all(args.corpus, args.seed, only)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.status}  {r.name:<{width}}  {r.seconds:7.1f}s  {r.detail}")
    failed = [r for r in results if r.passed is False]
    print(f"{len(results) - len(failed)}/{len(results)} checks without failure")
    return EXIT_FAIL if failed else EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="image file (adjacency list or one graph6 line)")
    common.add_argument("--image", help="named image, e.g. cycle:5, complete:4, pointed, g6:Ch")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--budget-maps", type=int, default=DEFAULT_MAP_BUDGET,
                        help="cap on maps visited by homotopy searches")
    common.add_argument("--budget-candidates", type=int, default=DEFAULT_CANDIDATE_BUDGET,
                        help="cap on candidate maps explored per search")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--corpus", default=None,
                        help=f"directory of connected<n>.g6 files (default ${catalog.CORPUS_ENV})")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="digitop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("homology", parents=[common], help="homology groups of an image")
    s.add_argument("--q", help="dimensions: '0..2' or '0,1'")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("check", parents=[common], help="(strong) homotopy between two selfmaps")
    s.add_argument("--f", required=True, help="map values '0,1,2', JSON array, 'id' or 'const:K'")
    s.add_argument("--g", required=True)
    s.add_argument("--mode", choices=["one-step", "one-step-strong", "homotopic", "strong"],
                   default="strong")
    s.add_argument("--homotopy", help="JSON homotopy {k, stages} to validate instead of searching")
    s.add_argument("--witness", action="store_true", help="print a witness homotopy")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reduce", parents=[common], help="strong core, contraction ordering")
    s.add_argument("--basepoint", type=int)
    s.add_argument("--all-basepoints", action="store_true",
                   help="pointed strong contractibility at every point")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("census", parents=[common], help="count images that are not reducible")
    s.add_argument("--n", required=True, help="vertex counts: '5', '1-7' or '4,6'")
    s.add_argument("--no-c", action="store_true", help="skip the brute-force c(n) count")
    s.add_argument("--dedup", action="store_true", help="drop isomorphic duplicates in corpora")
    s.add_argument("--catalog-out", help="write surviving images as JSON lines")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("classify-cycle", parents=[common], help="classify a selfmap of C_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--map", required=True,
                   help="'rot:D', 'flip', 'flip:D' (r_D o flip), 'const:K' or values")
    s.set_defaults(func=cmd_classify_cycle)

    s = sub.add_parser("verify-paper", parents=[common], help="run the reproduction scorecard")
    s.add_argument("--only", help="comma-separated item numbers to run, e.g. '4,9'")
    s.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget_maps < 1 or args.budget_candidates < 1 or args.jobs < 1:
        print("digitop: budgets and --jobs must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"digitop: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
