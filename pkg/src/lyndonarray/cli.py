"""Command-line front end: build, query, gen, bench.

Exit codes: 0 success, 1 verification/integrity failure, 2 usage error,
3 I/O error.  The environment variable LYNDON_THREADS is reserved; only
the value 1 is accepted (and ignored).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench as bench_mod
from . import construct, formats, generators, oracle
from .bps import BuildStats, SuccinctPssTree
from .errors import IntegrityError, UsageError, VerificationError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

VERIFY_LIMIT = 10**5
_RANK_ORACLE_CUTOFF = 3000  # above this the doubling-rank oracle verifies


def _oracle_pss_nss(data: bytes):
    if len(data) > _RANK_ORACLE_CUTOFF:
        return oracle.pss_nss_by_ranks(data)
    return oracle.pss_bruteforce(data), oracle.nss_bruteforce(data)


def _verify_plain(data: bytes, values) -> None:
    _, nss = _oracle_pss_nss(data)
    for k in range(len(data)):
        if int(values[k]) != nss[k] - (k + 1):
            raise VerificationError(
                f"lyndon array differs from oracle at position {k + 1}", index=k + 1
            )


def _verify_succinct(data: bytes, tree: SuccinctPssTree) -> None:
    want = oracle.pack_parens(oracle.bps_bruteforce(data))
    got = tree.payload()
    if got != want:
        for k, (a, b) in enumerate(zip(got, want)):
            if a != b:
                raise VerificationError(
                    f"BPS differs from oracle in byte {k}", index=k
                )
        raise VerificationError("BPS length differs from oracle")


def cmd_build(args) -> int:
    data = formats.read_file(args.input)
    stats = BuildStats()
    if args.mode == "plain":
        values = construct.build_plain(data, stats=stats)
        blob = formats.pack_lyar(np.ascontiguousarray(values))
    else:
        tree = construct.build_succinct(data, stats=stats)
        blob = formats.pack_lbps(tree.n, tree.payload())
    if args.verify:
        if len(data) > VERIFY_LIMIT:
            raise UsageError(
                f"--verify supports inputs up to {VERIFY_LIMIT} bytes (got {len(data)})"
            )
        if args.mode == "plain":
            _verify_plain(data, values)
        else:
            _verify_succinct(data, tree)
        print("verify: OK")
    formats.write_file(args.output, blob)
    if args.stats:
        print(f"char_comparisons          {stats.char_comparisons}")
        print(f"indices_skipped_run       {stats.indices_skipped_run}")
        print(f"indices_skipped_lookahead {stats.indices_skipped_lookahead}")
        print(f"closes_written            {stats.closes_written}")
    return EXIT_OK


def cmd_query(args) -> int:
    blob = formats.read_file(args.file)
    n, payload = formats.unpack_lbps(blob)
    tree = SuccinctPssTree.from_payload(payload, n)
    i = args.index
    lo = 0 if args.op == "subtree" else 1
    if not lo <= i <= n:
        raise UsageError(f"index {i} outside [{lo}, {n}]")
    if args.op == "lambda":
        print(tree.lyndon(i))
    elif args.op == "nss":
        print(tree.nss(i))
    elif args.op == "pss":
        print(tree.pss(i))
    elif args.op == "parent":
        print(tree.parent(i))
    else:
        print(tree.subtree_size(i))
    return EXIT_OK


def cmd_gen(args) -> int:
    data = generators.make_text(args.kind, args.n, args.sigma, args.seed)
    formats.write_file(args.output, data)
    return EXIT_OK


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in bench_mod.ALGOS:
            raise UsageError(f"unknown algo {a!r}")
    rows = []
    for path in args.inputs:
        data = formats.read_file(path)
        name = os.path.basename(path)
        for algo in algos:
            rows.append(
                bench_mod.bench_one(
                    name, data, algo, repetitions=args.repetitions, backend=args.backend
                )
            )
    print(bench_mod.format_table(rows))
    csv_lines = [bench_mod.CSV_HEADER] + [r.csv() for r in rows]
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("\n".join(csv_lines) + "\n")
    else:
        print()
        print("\n".join(csv_lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lyndonarray",
        description="Construct and query Lyndon arrays in linear time.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a Lyndon array from a raw byte file")
    b.add_argument("input", help="input file (raw bytes)")
    b.add_argument("--mode", choices=("plain", "succinct"), default="plain")
    b.add_argument("-o", "--output", required=True, help="output LYAR/LBPS file")
    b.add_argument("--verify", action="store_true", help="cross-check with the oracle")
    b.add_argument("--stats", action="store_true", help="print build counters")
    b.set_defaults(fn=cmd_build)

    q = sub.add_parser("query", help="query a succinct tree file")
    q.add_argument("file", help="LBPS file")
    q.add_argument("op", choices=("lambda", "nss", "pss", "parent", "subtree"))
    q.add_argument("index", type=int)
    q.set_defaults(fn=cmd_query)

    g = sub.add_parser("gen", help="generate a test corpus file")
    g.add_argument("kind", choices=generators.KINDS)
    g.add_argument("-n", type=int, required=True, help="length in symbols")
    g.add_argument("--sigma", type=int, default=26, help="alphabet size")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(fn=cmd_gen)

    be = sub.add_parser("bench", help="benchmark builders on input files")
    be.add_argument("inputs", nargs="*", help="input files (raw bytes)")
    be.add_argument("--algos", default="plain,succinct,naive")
    be.add_argument("--repetitions", type=int, default=5)
    be.add_argument("--csv", help="write the CSV report to this file")
    be.add_argument(
        "--backend",
        choices=("auto", "pure", "compiled"),
        default=None,
        help="kernel backend to benchmark",
    )
    be.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    threads = os.environ.get("LYNDON_THREADS")
    if threads is not None and threads.strip() != "1":
        print(
            f"error: LYNDON_THREADS={threads!r} is not supported (only 1)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.fn(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
