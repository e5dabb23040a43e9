"""Command-line interface: ``extract``, ``verify`` and ``score``.

Exit codes: 0 success, 1 usage error, 2 I/O or input error,
3 verification mismatch, 4 motif cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager
from dataclasses import replace

from .engine import ResourceLimitExceeded, extract_motifs
from .io import load_fasta, read_results, write_results
from .model import ExtractionParams, Motif, LocationList, as_fraction
from .oracle import DEFAULT_LIMIT, InstanceTooLarge, brute_force_motifs
from .stats import rank, score, zscore

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_MISMATCH, EXIT_CAP = 0, 1, 2, 3, 4

log = logging.getLogger("densemotif")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text):
    try:
        value = as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from exc
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="densemotif", description="Maximal dense motif extraction.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("input", help="FASTA or raw sequence file")
        p.add_argument("--sigma", type=int, default=2, help="frequency threshold (default 2)")
        p.add_argument("--rho", type=_fraction, default=as_fraction("0.8"),
                       help="density threshold, decimal or fraction such as 2/3 (default 0.8)")
        p.add_argument("--alphabet", choices=("dna", "protein", "auto"), default="dna")
        p.add_argument("--strict", action="store_true", help="reject symbols outside the alphabet")

    def output(p):
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--max-output", type=int, default=None)
        p.add_argument("--positions", action="store_true", help="include occurrence positions")
        p.add_argument("-o", "--output", default="-", help="output file (default stdout)")
        p.add_argument("--alphabet-size", type=int, default=None,
                       help="alphabet size for z-scores (default: size of the input alphabet)")

    ex = sub.add_parser("extract", help="extract and rank maximal dense motifs")
    common(ex)
    output(ex)
    ex.add_argument("--min-block", type=int, default=1, help="minimum seed block length")
    ex.add_argument("--filter-periodic", action="store_true", help="drop seed blocks with a short period")
    ex.add_argument("--max-period-fraction", type=_fraction, default=as_fraction("1/2"))
    ex.add_argument("--no-rank", action="store_true", help="keep pattern order instead of z-score order")
    ex.add_argument("--threads", type=int, default=1)
    ex.add_argument("--max-motifs", type=int, default=None, help="abort when more motifs are retained")

    ve = sub.add_parser("verify", help="compare the engine against the brute-force oracle")
    common(ve)
    ve.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="oracle size limit")

    sc = sub.add_parser("score", help="re-rank an existing result file")
    sc.add_argument("results", help="TSV or JSON file written by extract")
    src = sc.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="sequence the results came from")
    src.add_argument("--length", type=int, help="sequence length n")
    sc.add_argument("--alphabet", choices=("dna", "protein", "auto"), default="dna")
    output(sc)
    return parser


@contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _params(args, **extra) -> ExtractionParams:
    try:
        return ExtractionParams(sigma=args.sigma, rho=args.rho, **extra)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load(path, alphabet, strict=False):
    try:
        return load_fasta(path, alphabet, strict=strict)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_extract(args) -> int:
    params = _params(
        args,
        min_block_len=args.min_block,
        filter_periodic=args.filter_periodic,
        max_period_fraction=args.max_period_fraction,
    )
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    store = _load(args.input, args.alphabet, args.strict)

    def progress(it, sets):
        log.info("iteration %d: previous=%d current=%d", it, len(sets.previous), len(sets.current))

    motifs = extract_motifs(store, params, max_motifs=args.max_motifs, workers=args.threads, progress=progress)
    size = args.alphabet_size or len(store.alphabet)
    scored = score(motifs, store.n, size)
    if not args.no_rank:
        scored = rank(scored)
    with _open_out(args.output) as out:
        write_results(scored, out, fmt=args.format, positions=args.positions, max_output=args.max_output)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params(args)
    store = _load(args.input, args.alphabet, args.strict)
    oracle = brute_force_motifs(store, params.sigma, params.rho, limit=args.limit).motifs
    engine = set(extract_motifs(store, params))
    missing = sorted(oracle - engine, key=lambda m: m.key)
    extra = sorted(engine - oracle, key=lambda m: m.key)
    for m in missing:
        print(f"missing\t{m.key}\t{';'.join(map(str, m.locations))}")
    for m in extra:
        print(f"extra\t{m.key}\t{';'.join(map(str, m.locations))}")
    status = "OK" if not (missing or extra) else "MISMATCH"
    print(f"{status}: engine={len(engine)} oracle={len(oracle)} n={store.n} sigma={params.sigma} rho={params.rho}")
    return EXIT_OK if status == "OK" else EXIT_MISMATCH


def cmd_score(args) -> int:
    try:
        rows = read_results(args.results)
    except (ValueError, KeyError) as exc:
        raise InputError(f"{args.results}: malformed result file ({exc})") from exc
    if args.input:
        store = _load(args.input, args.alphabet)
        n, size = store.n, len(store.alphabet)
    else:
        n, size = args.length, 4
    size = args.alphabet_size or size
    motifs = [Motif(p, LocationList(pos)) for p, _, pos in rows]
    scored = score(motifs, n, size)
    # frequencies come from the file when positions were not written
    scored = [
        s if s.positions else replace(s, frequency=f, zscore=_z(f, n, s, size))
        for s, (_, f, _) in zip(scored, rows)
    ]
    with _open_out(args.output) as out:
        write_results(rank(scored), out, fmt=args.format, positions=args.positions, max_output=args.max_output)
    return EXIT_OK


def _z(f, n, s, size):
    return zscore(f, n, s.length, s.solid_count, size)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(message)s")
    handler = {"extract": cmd_extract, "verify": cmd_verify, "score": cmd_score}[args.command]
    try:
        return handler(args)
    except ResourceLimitExceeded as exc:
        print(f"densemotif: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, InstanceTooLarge) as exc:
        print(f"densemotif: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, InputError) as exc:
        print(f"densemotif: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # e.g. a --length shorter than a pattern in the result file
        print(f"densemotif: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
