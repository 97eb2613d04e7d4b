"""Command-line front end.

Reports are JSON lines on stdout; progress goes to stderr.  Exit codes: 0 on
success, 1 when a property fails or a required result is empty, 2 for usage
errors, 3 for I/O and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .canon import is_isomorphic
from .invariants import PropertyReport, check_properties, orbit_summary, parse_properties
from .poset import PosetError, dumps, read_poset
from .profiles import get_profile
from .rootdata import h3_fixture

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True, default=str))


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _profile(name: str):
    try:
        return get_profile(name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _properties(text: str) -> tuple[str, ...]:
    try:
        return parse_properties(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- verify / orbits ----------------------------------------------------------------


def cmd_verify(args) -> int:
    P = read_poset(args.poset)
    profile = _profile(args.profile)
    if P.n != profile.positive_root_count:
        raise UsageError(f"poset has {P.n} elements, {profile.type_name} needs {profile.positive_root_count}")
    report: PropertyReport = check_properties(P, profile, _properties(args.properties), parabolic=not args.no_parabolic)
    if args.text:
        print(report.to_text())
    else:
        for rec in report.to_records():
            _emit(rec)
        _emit({"profile": profile.type_name, "overall": report.passed})
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_orbits(args) -> int:
    P = read_poset(args.poset)
    summary = orbit_summary(P)
    _emit({"poset": str(args.poset), **summary})
    return EXIT_OK


# -- search -------------------------------------------------------------------------


def _write_results(out: Path, posets, manifest: dict) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for stale in out.glob("result_*.poset"):
        stale.unlink()
    paths = []
    for i, P in enumerate(posets, 1):
        path = out / f"result_{i:04d}.poset"
        path.write_text(dumps(P))
        paths.append(path.name)
    manifest["outputs"] = paths
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def cmd_search(args) -> int:
    from .search import SearchSpec, V1Spec, run_search
    from .search.v1 import MAX_BOUNDED_FREE

    props = _properties(args.properties)
    if args.algorithm == "v1":
        if args.profile != "H4":
            raise UsageError("algorithm v1 is specific to H4")
        if not args.unbounded:
            raise UsageError(
                f"the full v1 tree has 2^37 lower assignments (more than {MAX_BOUNDED_FREE} free); pass --unbounded"
            )
        spec = V1Spec(props)
    else:
        profile = _profile(args.profile)
        targets = None
        if args.ideal_candidates:
            from .qt import enumerate_hilbert_candidates

            if profile.type_name != "H4":
                raise UsageError("--ideal-candidates applies to H4 only")
            targets = [c.eval_t1().coeffs for c in enumerate_hilbert_candidates()]
            if "6" not in props:
                props = props + ("6",)
        if profile.type_name == "H4" and not args.unbounded and not ({"5a", "5-multiset", "5b", "6"} & set(props)):
            raise UsageError("an H4 search without orbit or ideal filters runs for days; pass --unbounded")
        spec = SearchSpec.make(
            profile.type_name,
            props,
            prune=not args.no_prune,
            parabolic=args.parabolic,
            ideal_targets=targets,
            symmetry_depth=args.symmetry_depth,
        )
    started = time.strftime("%Y-%m-%dT%H:%M:%S")
    result = run_search(spec, args.seed_prefix_depth, args.workers, _progress)
    manifest = {
        "command": sys.argv[1:] if args.argv is None else args.argv,
        "profile": args.profile,
        "algorithm": args.algorithm,
        "properties": list(props),
        "count": len(result.posets),
        "units": result.units,
        "workers": args.workers,
        "seed_prefix_depth": args.seed_prefix_depth,
        "stats": result.stats.as_dict(),
        "complete": True,
    }
    timing = {"started": started, "wall_time": round(result.wall_time, 3)}
    if args.output:
        # timing varies between runs, so it stays out of the manifest
        _write_results(Path(args.output), result.posets, dict(manifest))
        (Path(args.output) / "timing.json").write_text(json.dumps(timing) + "\n")
    _emit({**manifest, **timing})
    if args.expect_count is not None and len(result.posets) != args.expect_count:
        print(f"expected {args.expect_count} posets, found {len(result.posets)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- qt ---------------------------------------------------------------------------


def cmd_qt(args) -> int:
    from .qt import (
        conjecture_h4_polynomial,
        decompose_q2_brackets,
        enumerate_hilbert_candidates,
        eval_t_qinv_shift,
        h4_product_formula,
    )

    if args.qt_command == "decompose":
        parts = decompose_q2_brackets(h4_product_formula())
        _emit({"decomposition": parts, "lengths": [b for _, b in parts]})
        return EXIT_OK
    if args.qt_command == "candidates":
        for c in enumerate_hilbert_candidates():
            _emit({"candidate": str(c), "t1": c.eval_t1().coeffs})
        return EXIT_OK
    conj = conjecture_h4_polynomial()
    ok = eval_t_qinv_shift(conj.expand(), 60) == h4_product_formula()
    _emit({"conjecture": str(conj), "matches_product_formula": ok, "value_at_1": sum(conj.eval_t1().coeffs)})
    return EXIT_OK if ok else EXIT_FAIL


# -- D6 -----------------------------------------------------------------------------


def cmd_h3_from_d6(args) -> int:
    from .h3_from_d6 import build_h3_poset, format_trace, trace_table

    P = build_h3_poset()
    rows = trace_table()
    if args.output:
        out = Path(args.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(dumps(P))
        out.with_suffix(".trace.txt").write_text(format_trace(rows) + "\n")
    else:
        sys.stdout.write(dumps(P))
    ok = is_isomorphic(P, h3_fixture())
    print(format_trace(rows), file=sys.stderr)
    _emit({"elements": P.n, "pairs": len(rows), "isomorphic_to_fixture": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_configs(args) -> int:
    from .search.configs import rank_configurations

    forbid = None if args.forbid <= 0 else args.forbid
    configs = rank_configurations(args.lower, args.upper, forbid=forbid, exempt_lower=args.exempt_lower)
    _emit({"lower": args.lower, "upper": args.upper, "count": len(configs)})
    if args.list:
        for c in configs:
            _emit({"pattern": list(c.pattern), "covers": c.covers()})
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="worker processes for searches")
    common.add_argument("--seed-prefix-depth", type=int, default=0, help="split searches at this depth")

    parser = argparse.ArgumentParser(prog="rootposet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check properties of a poset file")
    p.add_argument("poset", type=Path)
    p.add_argument("--profile", required=True)
    p.add_argument("--properties", default="1-6")
    p.add_argument("--no-parabolic", action="store_true", help="skip the parabolic part of property 1")
    p.add_argument("--text", action="store_true", help="human-readable report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbits", parents=[common], help="Panyushev orbit sizes and averages")
    p.add_argument("poset", type=Path)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("search", parents=[common], help="enumerate candidate posets")
    p.add_argument("--profile", required=True)
    p.add_argument("--algorithm", choices=("v1", "v2"), default="v2")
    p.add_argument("--properties", default="1-4")
    p.add_argument("--output", help="directory for result files and manifest")
    p.add_argument("--unbounded", action="store_true", help="allow runs that take days")
    p.add_argument("--no-prune", action="store_true", help="only filter completed posets")
    p.add_argument("--parabolic", action="store_true", help="include parabolic checks in the final filter")
    p.add_argument("--symmetry-depth", type=int, default=2, help="merge isomorphic prefixes at this depth (0: off)")
    p.add_argument("--ideal-candidates", action="store_true", help="property 6 against all 180 H4 candidates")
    p.add_argument("--expect-count", type=int, help="exit 1 unless exactly this many posets are found")
    p.set_defaults(func=cmd_search, argv=None)

    p = sub.add_parser("qt", parents=[common], help="q,t-Catalan computations for H4")
    p.add_argument("qt_command", choices=("decompose", "candidates", "check-conjecture"))
    p.set_defaults(func=cmd_qt)

    p = sub.add_parser("h3-from-d6", parents=[common], help="build H3 from restricted D6 roots")
    p.add_argument("--output", help="poset file to write; the trace goes next to it")
    p.set_defaults(func=cmd_h3_from_d6)

    p = sub.add_parser("configs", parents=[common], help="count cover configurations between two ranks")
    p.add_argument("lower", type=int)
    p.add_argument("upper", type=int)
    p.add_argument("--forbid", type=int, default=4, help="forbidden antichain width (0: none)")
    p.add_argument("--exempt-lower", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_configs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "search":
        args.argv = list(argv) if argv is not None else None
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, PosetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
