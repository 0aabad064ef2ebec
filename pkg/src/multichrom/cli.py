"""Command-line interface.

Exit codes: 0 success, 2 improper colouring (``verify``), 3 invalid
certificate (``verify``), 64 usage error, 65 domain error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from .bounds import CSV_COLUMNS, BoundReport, best_bounds, lb_split_opt
from .cache import ResultCache
from .colouring import MultiColouring, construct_stahl_colouring, verify_colouring
from .combinatorics import enumerate_ksubsets
from .errors import DomainError
from .homomorphism import phi_map, verify_homomorphism
from .reduction import checklist, n0_analytic, n0_exact, q0, q0_estimates, q0_exact
from .solver import SearchBudget, chi_multi

EX_USAGE = 64
EX_DATAERR = 65
EX_IMPROPER = 2
EX_INVALID = 3

CHECKLIST_COLUMNS = ("n", "q", "kprime", "status", "reason")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message)


def _fmt_set(s) -> str:
    return "{" + ",".join(map(str, s)) + "}"


def _write_csv(out, header, rows) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _print_report(rep: BoundReport, out) -> None:
    print(f"K({rep.n},{rep.k})  k'={rep.k_prime} = {rep.q}*{rep.k}-{rep.r}  (q={rep.q}, r={rep.r})", file=out)
    for prov, b in rep.lower.items():
        extra = ""
        if b.detail and "parts" in b.detail:
            extra = "  parts=" + ",".join(map(str, b.detail["parts"]))
        elif b.detail and "ell" in b.detail:
            extra = f"  ell={b.detail['ell']} c={b.detail['c']}"
        print(f"  lb {prov.value:<10} {str(b):<12} {b.at(rep.q)}{extra}", file=out)
    print(f"  ub {rep.upper.provenance.value:<10} {str(rep.upper):<12} {rep.upper.at(rep.q)}", file=out)
    print(f"lower {rep.best_lower} ({rep.best_provenance.value})", file=out)
    print(f"upper {rep.upper.at(rep.q)}", file=out)
    print(f"conjectured {rep.conjectured}", file=out)
    print(f"status {rep.status}", file=out)


def cmd_bounds(args, out) -> int:
    rep = best_bounds(args.n, args.k, args.kprime)
    if args.format == "json":
        print(json.dumps(rep.to_json(), indent=2), file=out)
    elif args.format == "csv":
        _write_csv(out, CSV_COLUMNS, [rep.csv_row()])
    else:
        _print_report(rep, out)
    return 0


def cmd_table(args, out) -> int:
    rows = []
    for n in range(max(args.n_from, 2 * args.k), args.n_to + 1):
        for kp in range(args.kprime_from, args.kprime_to + 1):
            rows.append(best_bounds(n, args.k, kp).csv_row())
    _write_csv(out, CSV_COLUMNS, rows)
    return 0


def cmd_construct(args, out) -> int:
    c = construct_stahl_colouring(args.n, args.k, args.q, args.r)
    text = json.dumps(c.to_json()) + "\n"
    if args.out == "-":
        out.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote ({c.n_colours},{c.k_per_vertex})-colouring of {c.graph} to {args.out}", file=out)
    return 0


def cmd_verify(args, out) -> int:
    try:
        with open(getattr(args, "in")) as fh:
            c = MultiColouring.from_json(json.load(fh))
        verdict = verify_colouring(c)
    except (DomainError, json.JSONDecodeError, OSError) as exc:
        print(f"invalid: {exc}", file=out)
        return EX_INVALID
    if verdict:
        print(f"proper ({c.n_colours},{c.k_per_vertex})-colouring of {c.graph}", file=out)
        return 0
    a, b = verdict.edge
    print(f"improper: adjacent {_fmt_set(a)} and {_fmt_set(b)} share colour {verdict.colour}", file=out)
    return EX_IMPROPER


def cmd_exact(args, out) -> int:
    cache = ResultCache.load(args.cache) if args.cache else None
    if cache is not None:
        if args.use_external and cache.get(args.n, args.k, args.kprime) is None:
            cache.preload_external(args.n, args.k, args.kprime)
            cache.save()
        hit = cache.get(args.n, args.k, args.kprime)
        if hit is not None and hit.exact:
            print(f"status exact (cached, {hit.source})", file=out)
            print(f"value {hit.lo}", file=out)
            return 0
    budget = SearchBudget(args.max_nodes, args.timeout_s)
    res = chi_multi(args.n, args.k, args.kprime, budget)
    nodes = sum(o.nodes_explored for o in res.outcomes.values())
    elapsed = sum(o.elapsed for o in res.outcomes.values())
    if res.exact:
        print("status exact", file=out)
        print(f"value {res.lo}", file=out)
    else:
        print("status interval", file=out)
        print(f"interval [{res.lo}, {res.hi}]", file=out)
    for n_prime, o in res.outcomes.items():
        print(f"  n'={n_prime}: {o.status} nodes={o.nodes_explored}", file=out)
    print(f"nodes {nodes}", file=out)
    print(f"elapsed {elapsed:.3f}s", file=out)
    if args.witness and res.witness is not None:
        with open(args.witness, "w") as fh:
            fh.write(json.dumps(res.witness.to_json()) + "\n")
    if cache is not None:
        cache.put(args.n, args.k, args.kprime, res.lo, res.hi, "solver")
        cache.save()
    return 0


def cmd_partition(args, out) -> int:
    bound, parts = lb_split_opt(args.n, args.k, args.r)
    print(f"{bound}  parts={','.join(map(str, parts))}", file=out)
    return 0


def cmd_reduce(args, out) -> int:
    entries = checklist(args.k)
    if args.format == "json":
        data = {
            "k": args.k,
            "n0_exact": n0_exact(args.k),
            "n0_analytic": n0_analytic(args.k),
            "entries": [
                {"n": e.n, "q": e.q, "kprime": e.k_prime, "status": "open" if e.open else "resolved",
                 "reason": e.status.reason.value if e.status.reason else None}
                for e in entries
            ],
        }
        print(json.dumps(data, indent=2), file=out)
    else:
        _write_csv(out, CHECKLIST_COLUMNS, [
            (e.n, e.q, e.k_prime, "open" if e.open else "resolved", e.status.reason.value if e.status.reason else "")
            for e in entries
        ])
    return 0


def cmd_q0(args, out) -> int:
    exact = q0_exact(args.n, args.k)
    print(f"q0({args.n},{args.k}) = {q0(args.n, args.k)}  (floor of {exact} ~ {float(exact):.6f})", file=out)
    for name, val in q0_estimates(args.n, args.k).active().items():
        print(f"  estimate[{name}] < {float(val):.6f}", file=out)
    return 0


def cmd_n0(args, out) -> int:
    print(f"n0_exact({args.k}) = {n0_exact(args.k)}", file=out)
    print(f"n0_analytic({args.k}) = {n0_analytic(args.k)}", file=out)
    return 0


def cmd_hom(args, out) -> int:
    vmap = phi_map(args.n, args.k, args.r)
    for s, img in zip(enumerate_ksubsets(args.n, args.k), vmap.images):
        print(f"{_fmt_set(s)} -> {_fmt_set(img)}", file=out)
    if args.check:
        verdict = verify_homomorphism(vmap)
        if not verdict:
            a, b = verdict.edge
            print(f"violation: {_fmt_set(a)} {_fmt_set(b)}", file=out)
            return 1
        print(f"ok: homomorphism {vmap.source} -> {vmap.target}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multichrom", description="Multichromatic numbers of Kneser graphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", help="all bounds for chi_{k'}(K(n,k))")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--kprime", type=int, required=True)
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("table", help="CSV sweep of bounds")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n-from", type=int, required=True)
    s.add_argument("--n-to", type=int, required=True)
    s.add_argument("--kprime-from", type=int, required=True)
    s.add_argument("--kprime-to", type=int, required=True)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("construct", help="write the (qn-2r, qk-r)-colouring certificate")
    for name in ("n", "k", "q", "r"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--out", required=True, help="output file, or - for stdout")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="check a colouring certificate")
    s.add_argument("--in", required=True, metavar="FILE")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("exact", help="exact chi_{k'}(K(n,k)) by search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--kprime", type=int, required=True)
    s.add_argument("--max-nodes", type=int, default=10**8)
    s.add_argument("--timeout-s", type=float, default=60.0)
    s.add_argument("--cache", metavar="FILE")
    s.add_argument("--use-external", action="store_true",
                   help="seed the cache from external facts when they cover this instance")
    s.add_argument("--witness", metavar="FILE", help="write the optimal colouring certificate here")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("partition", help="optimal split bound")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("reduce", help="finite checklist for fixed k")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("q0", help="q0(n,k) and its estimates")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_q0)

    s = sub.add_parser("n0", help="n0(k), exact and analytic")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_n0)

    s = sub.add_parser("hom", help="table of Stahl's homomorphism")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, default=1, help="number of iterations (default 1)")
    s.add_argument("--check", action="store_true")
    s.set_defaults(func=cmd_hom)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError:
        return EX_USAGE
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
