"""Command-line interface.

Exit codes: 0 success, 1 invalid certificate or failed suite, 2 bad input
or violated precondition, 3 internal assertion (a construction bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from math import ceil
from pathlib import Path
from typing import Any, Sequence

from .builder import build_biclique_immersion
from .certificate import ImmersionCertificate
from .errors import InternalAssertion, PreconditionViolated
from .formats import read_graph, to_graph6, to_json_dict
from .generators import MODELS, GeneratorSpec, generate
from .graph import alpha_at_most_2, edge_critical_reduce
from .kempe import run_kempe
from .matching import (
    ABPairs,
    disjoint_representative_matchings,
    hall_disjoint_AB_matchings,
    matchings_to_json,
)
from .suite import run_suite
from .verify import ClaimRecorder, verify_certificate

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(obj: Any, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _graph_payload(g, fmt: str) -> Any:
    return {"graph6": to_graph6(g)} if fmt == "graph6" else to_json_dict(g)


def cmd_alpha2(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    ok = alpha_at_most_2(g)
    report: dict[str, Any] = {"n": g.n, "edges": g.edge_count(), "alpha_at_most_2": ok}
    if ok:
        # alpha <= 2 forces every colour class to have at most two vertices
        report["chi_lower_bound"] = ceil(g.n / 2)
    _emit(report, args.out)
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    _emit(_graph_payload(edge_critical_reduce(g), args.format), args.out)
    return EXIT_OK


def cmd_immerse(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    claims = ClaimRecorder()
    cert = build_biclique_immersion(g, args.ell, claims)
    _emit(cert.to_json(args.host_format), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cert = ImmersionCertificate.from_json(json.loads(Path(args.cert).read_text()))
    host = read_graph(args.input) if args.input else cert.host
    report = verify_certificate(host, cert)
    _emit(report.to_json(), args.out)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_kempe(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    run = run_kempe(g)
    out = {
        "chi": run.coloring.k,
        "coloring": run.coloring.to_json(),
        "iterations": run.iterations,
        "certificate": run.certificate.to_json(args.host_format),
    }
    if alpha_at_most_2(g):
        out["chi_lower_bound"] = ceil(g.n / 2)
    _emit(out, args.out)
    return EXIT_OK


def cmd_matchings(args: argparse.Namespace) -> int:
    inp = ABPairs.from_json(json.loads(Path(args.input).read_text()))
    ms = hall_disjoint_AB_matchings(inp)
    _emit({"k": inp.k, "matchings": matchings_to_json(ms)}, args.out)
    return EXIT_OK


def cmd_sdr(args: argparse.Namespace) -> int:
    d = json.loads(Path(args.input).read_text())
    ground_n = int(d["ground_n"])
    sets = [[int(x) for x in c] for c in d["sets"]]
    ms = disjoint_representative_matchings(ground_n, sets)
    k = len(sets[0]) if sets else 0
    _emit({"ground_n": ground_n, "A": [ground_n + t for t in range(k)], "matchings": matchings_to_json(ms)}, args.out)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate(GeneratorSpec(args.model, args.n, args.p, args.seed))
    if args.format == "graph6":
        text = to_graph6(g) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(to_json_dict(g), args.out)
    return EXIT_OK


def cmd_suite(args: argparse.Namespace) -> int:
    summary = run_suite(args.nmax, args.seeds, inject_corrupt=args.inject_corrupt)
    _emit(summary, args.out)
    return EXIT_OK if summary["ok"] else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="immersionkit",
        description="Build and check immersion certificates in graphs with independence number at most 2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def host_cmd(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True, help="host graph (.g6 or .json)")
        p.add_argument("--out", help="output file (default stdout)")
        return p

    host_cmd("alpha2", "test whether alpha <= 2").set_defaults(func=cmd_alpha2)

    p = host_cmd("reduce", "edge-critical spanning subgraph")
    p.add_argument("--format", choices=("json", "graph6"), default="json")
    p.set_defaults(func=cmd_reduce)

    p = host_cmd("immerse", "certificate for K_{l, ceil(n/2) - l}")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--host-format", choices=("edges", "graph6"), default="edges")
    p.set_defaults(func=cmd_immerse)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("--cert", required=True, help="certificate JSON")
    p.add_argument("--input", help="host to check against (default: the certificate's own)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = host_cmd("kempe", "exact colouring and K_{1,1,chi-2} certificate")
    p.add_argument("--host-format", choices=("edges", "graph6"), default="edges")
    p.set_defaults(func=cmd_kempe)

    p = sub.add_parser("matchings", help="edge-disjoint (A_i, B_i)-matchings in K_2k")
    p.add_argument("--input", required=True, help='JSON {"k": k, "pairs": [{"A": [...], "B": [...]}, ...]}')
    p.add_argument("--out")
    p.set_defaults(func=cmd_matchings)

    p = sub.add_parser("sdr", help="disjoint representative matchings")
    p.add_argument("--input", required=True, help='JSON {"ground_n": m, "sets": [[...], ...]}')
    p.add_argument("--out")
    p.set_defaults(func=cmd_sdr)

    p = sub.add_parser("gen", help="random host with alpha <= 2")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "graph6"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("suite", help="batch build-and-verify run")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--out")
    p.add_argument("--inject-corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalAssertion as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (PreconditionViolated, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
