"""Command-line front end.

Every command reads token words from its arguments, or from stdin one per
line when none are given, and writes JSON lines to stdout.  Exit status is
0 on success, 1 on a domain error (bad word, failed check) and 2 on a usage
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arrow import ParseError, canonicalize, format_tokens, mirror, parse, split_witness
from .catalog import (
    DEFAULT_ALIASES,
    build_catalog,
    load_aliases,
    load_catalog,
    save_catalog,
    verify_catalog,
)
from .enumerator import EnumerationConfig, count_report, default_jobs, report_lines
from .flype import find_flype_sites, flype_moves, flype_orbit, orbit_to_dot
from .spherical import face_count, genus


class DomainError(Exception):
    pass


def _emit(row: dict) -> None:
    sys.stdout.write(json.dumps(row) + "\n")


def _inputs(args):
    """Yield (line number, text) pairs; arguments count as lines 1, 2, ..."""
    if args.words:
        yield from enumerate(args.words, 1)
        return
    for lineno, raw in enumerate(sys.stdin, 1):
        text = raw.strip()
        if text and not text.startswith("#"):
            yield lineno, text


def _each_word(args, fn) -> int:
    status = 0
    for lineno, text in _inputs(args):
        try:
            d = parse(text)
        except ParseError as exc:
            print(f"line {lineno}: {exc}", file=sys.stderr)
            status = 1
            continue
        try:
            fn(text, d)
        except ValueError as exc:
            print(f"line {lineno}: {exc}", file=sys.stderr)
            status = 1
    return status


def cmd_canon(args) -> int:
    return _each_word(args, lambda w, d: _emit({"input": w, "key": str(canonicalize(d))}))


def cmd_mirror(args) -> int:
    def run(w, d):
        m = mirror(d)
        _emit({"input": w, "mirror": format_tokens(m.tokens),
               "amphichiral": canonicalize(m) == canonicalize(d)})
    return _each_word(args, run)


def cmd_realizable(args) -> int:
    def run(w, d):
        f = face_count(d)
        _emit({"input": w, "realizable": f == d.n + 2, "faces": f, "genus": genus(d)})
    return _each_word(args, run)


def cmd_prime(args) -> int:
    def run(w, d):
        wit = split_witness(d)
        row = {"input": w, "prime": wit is None, "witness": None}
        if wit is not None:
            row["witness"] = {"arc": list(wit.arc), "complement": list(wit.complement)}
        _emit(row)
    return _each_word(args, run)


def cmd_flype_sites(args) -> int:
    def run(w, d):
        moves = {m.site: m.result for m in flype_moves(d, args.restricted)}
        for s in find_flype_sites(d, args.restricted):
            _emit({
                "input": w,
                "crossing": s.crossing,
                "tangle": sorted(s.tangle),
                "arcs": [list(a) for a in s.tangle_arcs],
                "boundary": list(s.boundary),
                "shape": s.shape,
                "result": str(moves[s]),
            })
    return _each_word(args, run)


def cmd_flype_orbit(args) -> int:
    names = {}
    if not args.no_mirror_id:
        names = {k: n for n, k in load_aliases(DEFAULT_ALIASES).items()}

    def run(w, d):
        orb = flype_orbit(d, restricted=args.restricted, identify_mirrors=not args.no_mirror_id)
        for k in sorted(orb.distance, key=lambda k: (orb.distance[k], k)):
            _emit({"input": w, "key": str(k), "distance": orb.distance[k], "alias": names.get(k)})
        if args.dot:
            Path(args.dot).write_text(orbit_to_dot(orb, names))
    return _each_word(args, run)


def cmd_enumerate(args) -> int:
    cfg = EnumerationConfig(
        n_max=args.n,
        identify_mirrors=not args.no_mirror_id,
        prune_parity=not args.no_prune,
        prune_split=not args.no_prune,
        prune_nugatory=not args.no_prune,
        jobs=args.jobs,
    )
    for line in report_lines(count_report(cfg)):
        print(line)
    return 0


def cmd_build_catalog(args) -> int:
    aliases = load_aliases(args.aliases) if args.aliases else None
    entries = build_catalog(args.n, aliases=aliases, jobs=args.jobs)
    save_catalog(args.output, entries)
    _emit({"path": str(args.output), "entries": len(entries)})
    return 0


def cmd_verify(args) -> int:
    try:
        entries = load_catalog(args.catalog)
    except (OSError, ValueError, KeyError) as exc:
        raise DomainError(f"cannot read catalog {args.catalog}: {exc}") from exc
    results = verify_catalog(entries, generators=not args.skip_generators)
    for r in results:
        print(r.to_json())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="projtab", description="Arrow diagrams of knot projections.")
    sub = p.add_subparsers(dest="command", required=True)

    def word_cmd(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("words", nargs="*", help="token words such as '+1 -2 +3 -1 +2 -3'")
        s.set_defaults(func=fn)
        return s

    word_cmd("canon", cmd_canon, "canonical key")
    word_cmd("mirror", cmd_mirror, "mirror image and amphichirality")
    word_cmd("realizable", cmd_realizable, "spherical realizability and face count")
    word_cmd("prime", cmd_prime, "primeness with a split witness")
    s = word_cmd("flype-sites", cmd_flype_sites, "list flype sites")
    s.add_argument("--restricted", action="store_true", help="only T2/U3 sites")
    s = word_cmd("flype-orbit", cmd_flype_orbit, "flype orbit with distances")
    s.add_argument("--restricted", action="store_true")
    s.add_argument("--no-mirror-id", action="store_true", help="keep mirror images apart")
    s.add_argument("--dot", metavar="FILE", help="write the orbit graph as DOT")

    jobs = default_jobs()
    s = sub.add_parser("enumerate", help="count prime projections up to n")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--no-mirror-id", action="store_true")
    s.add_argument("--no-prune", action="store_true", help="skip the word-level prefilters")
    s.add_argument("--jobs", type=int, default=jobs)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("build-catalog", help="build and save the projection table")
    s.add_argument("-n", type=int, default=8)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--aliases", metavar="FILE")
    s.add_argument("--jobs", type=int, default=jobs)
    s.set_defaults(func=cmd_build_catalog)

    s = sub.add_parser("verify", help="check a saved table against the published numbers")
    s.add_argument("catalog")
    s.add_argument("--skip-generators", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for flag in ("n", "jobs"):
        v = getattr(args, flag, None)
        if v is not None and (v < 0 if flag == "n" else v < 1):
            parser.print_usage(sys.stderr)
            print(f"projtab: error: --{flag} out of range", file=sys.stderr)
            return 2
    if getattr(args, "n", 0) and args.n > 8 and args.command == "build-catalog":
        print("projtab: error: the catalog is limited to n <= 8", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (DomainError, ValueError, RuntimeError) as exc:
        print(f"projtab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
