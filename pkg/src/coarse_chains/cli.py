"""Command line interface: scenario runner, verifier, one-shot operations.

Exit codes: 0 success, 1 parse/configuration error, 2 degenerate position,
3 spread/radius truncation.  COARSE_CHAINS_THREADS caps the number of
worker processes used to run several scenarios at once.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chains import UfChain
from .equivariant import TranslationAction, TruncationError, build_quotient_complex, snf_homology
from .geometry import DegeneratePosition, FlatPair
from .scenarios import ScenarioError, canonical_dumps, run_scenario
from .verify import MUTATIONS, run_verify
from .wrongway import WrongWayContext, wrong_way

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DEGENERATE = 2
EXIT_TRUNCATION = 3


def _degenerate_payload(exc: DegeneratePosition) -> dict:
    payload: dict = {"error": "degenerate-position", "detail": str(exc)}
    if exc.chain_tuple is not None:
        payload["tuple"] = [list(p) for p in exc.chain_tuple]
    if exc.simplex is not None:
        payload["simplex"] = exc.simplex.to_json()
    return payload


def _run_one_scenario(source: str, out_dir: str | None) -> int:
    started = time.perf_counter()
    try:
        report = run_scenario(source)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegeneratePosition as exc:
        print(canonical_dumps(_degenerate_payload(exc)), file=sys.stderr, end="")
        return EXIT_DEGENERATE
    except TruncationError as exc:
        print(canonical_dumps({"error": "truncation", "detail": str(exc)}),
              file=sys.stderr, end="")
        return EXIT_TRUNCATION
    name = report["scenario"]["name"]
    directory = Path(out_dir) if out_dir else Path.cwd()
    directory.mkdir(parents=True, exist_ok=True)
    out_path = directory / f"{name}.report.json"
    out_path.write_text(canonical_dumps(report))
    elapsed = time.perf_counter() - started
    print(f"scenario {name}: report written to {out_path} ({elapsed:.2f}s)",
          file=sys.stderr)
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    sources = args.scenarios
    if len(sources) == 1:
        return _run_one_scenario(sources[0], args.out_dir)
    workers = int(os.environ.get("COARSE_CHAINS_THREADS", "0")) or min(
        len(sources), os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        codes = list(pool.map(_run_one_scenario, sources, [args.out_dir] * len(sources)))
    return max(codes)


def _cmd_verify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    report = run_verify(mutation=args.mutate)
    for check in report["checks"]:
        print(f"{check['status'].upper():4s} {check['name']}: {check['detail']}")
    text = canonical_dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    print(f"verify finished in {time.perf_counter() - started:.1f}s", file=sys.stderr)
    return EXIT_OK if report["passed"] else 1


def _cmd_wrongway(args: argparse.Namespace) -> int:
    try:
        n_str, q_str = args.pair.split(",")
        pair = FlatPair(int(n_str), int(q_str), args.orientation)
    except ValueError as exc:
        print(f"error: bad --pair value {args.pair!r}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        chain = UfChain.from_json(json.loads(Path(args.infile).read_text()))
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"error: cannot read chain from {args.infile}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    ctx = WrongWayContext(pair, chain.group, perturb=args.perturb)
    try:
        image = wrong_way(chain, ctx)
    except DegeneratePosition as exc:
        print(canonical_dumps(_degenerate_payload(exc)), file=sys.stderr, end="")
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    Path(args.outfile).write_text(canonical_dumps(image.to_json()))
    return EXIT_OK


def _cmd_homology(args: argparse.Namespace) -> int:
    dim = args.torus
    if dim < 1:
        print("error: --torus must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    max_degree = args.max_degree if args.max_degree is not None else dim + 1
    complex_ = build_quotient_complex(
        TranslationAction.standard(dim), args.rmax, range(0, max_degree + 1),
        include_degenerate=not args.no_degenerate)
    report = snf_homology(complex_)
    payload = {
        "torus": dim,
        "r_max": args.rmax,
        "include_degenerate": not args.no_degenerate,
        "basis_sizes": {str(d): complex_.basis_size(d) for d in complex_.degrees},
        "homology": report.to_json(),
    }
    text = canonical_dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarse-chains",
        description="Exact wrong-way maps on lattice model geometries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run scenario files (or bundled scenario names)")
    p_run.add_argument("scenarios", nargs="+",
                       help="paths to scenario JSON files, or bundled names like t2-to-s1")
    p_run.add_argument("--out-dir", default=None, help="directory for report files")
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="run the deterministic invariant battery")
    p_verify.add_argument("--mutate", choices=MUTATIONS, default=None,
                          help="inject one bundled bug to prove the battery bites")
    p_verify.add_argument("--out", default=None, help="write the JSON report here")
    p_verify.set_defaults(func=_cmd_verify)

    p_ww = sub.add_parser("wrongway", help="apply the wrong-way map to a chain file")
    p_ww.add_argument("--pair", required=True, metavar="n,q",
                      help="ambient dimension and codimension, e.g. 3,1")
    p_ww.add_argument("--orientation", type=int, choices=(1, -1), default=1)
    p_ww.add_argument("--in", dest="infile", required=True, help="input chain JSON")
    p_ww.add_argument("--out", dest="outfile", required=True, help="output chain JSON")
    p_ww.add_argument("--perturb", action="store_true",
                      help="resolve degenerate positions by symbolic perturbation")
    p_ww.set_defaults(func=_cmd_wrongway)

    p_h = sub.add_parser("homology", help="quotient-complex homology of a torus")
    p_h.add_argument("--torus", type=int, required=True, help="torus dimension")
    p_h.add_argument("--rmax", type=int, default=1, help="tuple spread bound")
    p_h.add_argument("--max-degree", type=int, default=None,
                     help="top complex degree (default: dimension + 1)")
    p_h.add_argument("--no-degenerate", action="store_true",
                     help="use the oriented basis (one sorted tuple per vertex set)")
    p_h.add_argument("--out", default=None, help="write the JSON report here")
    p_h.set_defaults(func=_cmd_homology)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
