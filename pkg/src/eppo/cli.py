"""Command-line interface.

Group sources take one of three forms: ``file:PATH`` (a permutation group
file, or a matrix group file whose first line names a field such as
``GF(3)``), ``catalog:NAME``, or a constructor spec such as
``metacyclic p=7 a=1 q=3 b=1``.

Exit codes: 0 for EPPO (or sampled-consistent) and passing runs, 1 for
non-EPPO groups and failed criteria, 2 for errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .acceptance import RunOptions, report, run_all
from .constructors import matrix_group, parse_constructor
from .eppo_core import CheckReport, all_verdicts, is_eppo_sampled, spectrum, spectrum_sampled
from .errors import EppoError, ParseError, ThresholdExceeded
from .gf_linalg import parse_matrix_group
from .perm_engine import DEFAULT_PAIRWISE_THRESHOLD, DEFAULT_THRESHOLD, LIMITS, FiniteGroup, format_group, limits, parse_group
from .records import format_records
from .structure_analysis import classify

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def resolve_source(text: str) -> FiniteGroup:
    """Build the group named by a ``file:``, ``catalog:`` or constructor source."""
    text = text.strip()
    kind, sep, payload = text.partition(":")
    if sep and kind == "file":
        path = Path(payload)
        try:
            content = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {payload}: {exc.strerror}") from None
        first = next((ln.split("#", 1)[0].strip() for ln in content.splitlines()
                      if ln.split("#", 1)[0].strip()), "")
        if first.upper().startswith("GF"):
            _, gens = parse_matrix_group(content)
            return matrix_group(gens, name=path.stem)
        return parse_group(content, name=path.stem)
    if sep and kind == "catalog":
        return catalog.build(payload)
    return parse_constructor(text)


def check_report(G: FiniteGroup, sample_n: int, seed: int) -> CheckReport:
    """Exact verdicts within the threshold, a sampled verdict above it."""
    if G.order <= LIMITS.threshold:
        return CheckReport(G.name, G.order, spectrum(G), all_verdicts(G))
    if sample_n <= 0:
        raise ThresholdExceeded(f"check of {G.name}", G.order, LIMITS.threshold)
    return CheckReport(G.name, G.order, spectrum_sampled(G, sample_n, seed),
                       [is_eppo_sampled(G, sample_n, seed)])


def check_records(source: str, sample_n: int, seed: int) -> list[tuple[str, object]]:
    G = resolve_source(source)
    return [("source", source), ("seed", seed)] + check_report(G, sample_n, seed).records()


def _emit(pairs, fmt: str) -> None:
    # the seed is echoed up front; drop later repeats of an identical pair
    seen: dict = {}
    kept = []
    for k, v in pairs:
        if k in seen and seen[k] == v:
            continue
        seen[k] = v
        kept.append((k, v))
    pairs = kept
    if fmt == "records":
        sys.stdout.write(format_records(pairs))
    else:
        width = max((len(k) for k, _ in pairs), default=0)
        for k, v in pairs:
            text = format_records([(k, v)]).split(": ", 1)[1].rstrip("\n")
            print(f"{k.replace('_', ' '):<{width}}  {text}")


def _source(args) -> str:
    return " ".join(args.group)


# -- commands -------------------------------------------------------------------------


def cmd_check(args) -> int:
    src = _source(args)
    G = resolve_source(src)
    rep = check_report(G, args.sample_n, args.seed)
    _emit([("source", src), ("seed", args.seed)] + rep.records(), args.format)
    if not rep.consistent or rep.is_eppo is False:
        return EXIT_FAIL
    return EXIT_OK


def cmd_spectrum(args) -> int:
    src = _source(args)
    G = resolve_source(src)
    if G.order <= LIMITS.threshold:
        s = spectrum(G)
    elif args.sample_n > 0:
        s = spectrum_sampled(G, args.sample_n, args.seed)
    else:
        raise ThresholdExceeded(f"spectrum of {G.name}", G.order, LIMITS.threshold)
    _emit([("source", src), ("seed", args.seed), ("group", G.name), ("order", G.order)]
          + s.records(), args.format)
    return EXIT_OK


def cmd_classify(args) -> int:
    src = _source(args)
    G = resolve_source(src)
    if G.order > LIMITS.threshold and args.sample_n <= 0:
        raise ThresholdExceeded(f"classification of {G.name}", G.order, LIMITS.threshold)
    rec = classify(G, args.sample_n, args.seed, args.fixture)
    _emit([("source", src), ("seed", args.seed), ("group", G.name)] + rec.records(), args.format)
    return EXIT_FAIL if rec.verdict == "not-eppo" else EXIT_OK


def _options(args) -> RunOptions:
    return RunOptions(seed=args.seed, sample_n=args.sample_n,
                      skip_sampled=args.skip_sampled, fixture=args.fixture)


def cmd_verify(args) -> int:
    opts = _options(args)
    only = set(args.criteria) if args.criteria else None
    results = run_all(opts, only)
    if args.format == "records":
        sys.stdout.write(report(results, opts))
    else:
        print(f"seed {opts.seed}, sample-n {opts.sample_n}"
              + (", sampled checks skipped" if opts.skip_sampled else ""))
        for r in results:
            print(r.line())
        failed = [r for r in results if not r.passed]
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
              + (": failed " + ", ".join(str(r.id) for r in failed) if failed else ""))
    return EXIT_FAIL if any(not r.passed for r in results) else EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = catalog.simple_eppo_list(args.fixture) + catalog.extra_entries(args.fixture)
        pairs_all = []
        for e in rows:
            pairs_all.append([("name", e.name), ("order", e.expected_order), ("degree", e.degree),
                              ("spectrum", e.expected_spectrum), ("spectrum_mode", e.spectrum_mode)])
        if args.format == "records":
            sys.stdout.write("\n".join(format_records(p) for p in pairs_all))
        else:
            for e in rows:
                spec = "{" + ",".join(map(str, e.expected_spectrum or ())) + "}"
                print(f"{e.name:<9} order {e.expected_order:<9} degree {e.degree:<5} "
                      f"spectrum {spec} ({e.spectrum_mode})")
        return EXIT_OK
    if args.action == "build":
        if not args.name:
            raise ParseError("catalog build needs a group name")
        sys.stdout.write(format_group(catalog.build(args.name)))
        return EXIT_OK
    if args.action == "verify":
        opts = _options(args)
        results = run_all(opts, {1})
        if args.format == "records":
            sys.stdout.write(report(results, opts))
        else:
            print(results[0].line())
        return EXIT_OK if results[0].passed else EXIT_FAIL
    if args.action == "fixture":
        sys.stdout.write(fixture_text(args.sample_n, args.seed))
        return EXIT_OK
    raise ParseError(f"unknown catalog action {args.action!r}")


def fixture_text(sample_n: int, seed: int) -> str:
    """Regenerate the catalog fixture from exhaustive runs.

    Sz(32) is out of reach exhaustively; its record stores the divisor bound
    and is marked accordingly.
    """
    parts = []
    for name, order, degree, builder in catalog._SIMPLE + [("M9", 72, 9, catalog.m9)]:
        G = builder()
        if G.order <= LIMITS.threshold:
            spec, mode = spectrum(G).orders, "exact"
        else:
            spec, mode = catalog.suzuki_spectrum_bound(32), "bound"
            sampled = spectrum_sampled(G, sample_n, seed)
            if not set(sampled.orders) <= set(spec):
                raise AssertionError(f"sampled spectrum of {name} escapes its bound")
        parts.append(format_records([("name", name), ("order", G.order), ("degree", degree),
                                     ("spectrum", spec), ("spectrum_mode", mode)]))
    return "\n".join(parts)


# -- parser -----------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threshold", type=_positive, default=DEFAULT_THRESHOLD,
                        help="largest group order enumerated exhaustively")
    common.add_argument("--pairwise-threshold", type=_positive, default=DEFAULT_PAIRWISE_THRESHOLD,
                        help="largest group order for the commuting-pairs scan")
    common.add_argument("--sample-n", type=int, default=100_000,
                        help="random elements drawn above the threshold (0 refuses)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--skip-sampled", action="store_true",
                        help="skip checks that rely on random sampling")
    common.add_argument("--fixture", default=None, help="catalog fixture file to use instead of the bundled one")

    p = argparse.ArgumentParser(prog="eppo", description="EPPO-group checks and structure reports.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, helptext in (
        ("check", cmd_check, "run every applicable EPPO predicate"),
        ("spectrum", cmd_spectrum, "print the set of element orders"),
        ("classify", cmd_classify, "classify an EPPO-group"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("group", nargs="+", help="file:PATH, catalog:NAME or a constructor spec")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    sp.add_argument("--criteria", type=int, nargs="*", help="run only these criterion ids")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("catalog", parents=[common], help="list, build or verify catalog groups")
    sp.add_argument("action", choices=("list", "build", "verify", "fixture"))
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        with limits(args.threshold, args.pairwise_threshold):
            return args.func(args)
    except ThresholdExceeded as exc:
        print(f"error: threshold: {exc}", file=sys.stderr)
    except (ParseError, OSError) as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
    except EppoError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
