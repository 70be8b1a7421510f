"""Command-line front end.

Exit codes: 0 ok, 2 parameter error, 3 verification failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .designs import FAMILIES, make_design, verify_design
from .exceptions import BudgetExceeded, NoProvenance, ParameterError
from .flat import FlatMatrix
from .frame import (EtfMatrix, assemble_etf, compute_params, gram, gram_rank,
                    naimark_complement, verify_equiangular, verify_tight)
from .io import read_design, read_etf, write_design, write_etf
from .parameters import admissible, enumerate_families, format_table, recover_design_params
from .rip import block_dependency_certificate, ric_exhaustive

EXIT_OK, EXIT_PARAM, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4


class VerificationFailed(Exception):
    pass


class ReadFailed(Exception):
    pass


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{x:.17g}"


def summary_line(F) -> str:
    p = compute_params(F)
    real = F.is_real if isinstance(F, EtfMatrix) else not np.iscomplexobj(F)
    return (f"M={p.M} N={p.N} A={_num(p.A)} alpha={_num(p.alpha)} "
            f"alpha^2={_num(p.alpha_sq)} redundancy={_num(p.redundancy)} "
            f"density={_num(p.density)} real={str(real).lower()}")


def _load_frame(path):
    if not Path(path).is_file():
        raise ReadFailed(f"no such file: {path}")
    try:
        return read_etf(path)
    except (OSError, ValueError, KeyError) as exc:
        raise ReadFailed(f"cannot read {path}: {exc}") from exc


def _load_overrides(path, v: int):
    """Per-point flat matrices and row assignments from a JSON file.

    Format: {"flats": [{"tokens": [[...]], "root_order": n}, ...],
    "flat_index": [one index per point], "rows_used": [rows] or per point}.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ReadFailed(f"cannot read {path}: {exc}") from exc
    flats = [FlatMatrix(np.array(f["tokens"], dtype=np.int64), int(f["root_order"]),
                        f.get("construction", "override")) for f in data["flats"]]
    index = data.get("flat_index", [0] * v)
    per_point = [flats[i] for i in index]
    return per_point, data.get("rows_used")


def _assemble(system, args):
    flats = assignment = None
    if getattr(args, "flat_override", None):
        flats, assignment = _load_overrides(args.flat_override, system.v)
    return assemble_etf(system, flats, assignment, prefer_real=args.prefer_real)


def _write(F, out, default_stem, family=None):
    target = Path(out) if out else Path(default_stem)
    try:
        mtx, side = write_etf(F, target, family)
    except OSError as exc:
        raise ReadFailed(f"cannot write {target}: {exc}") from exc
    print(f"wrote {mtx} {side}")


def _verdict_hint(args):
    k = {"pair": 2, "triple": 3}.get(args.family)
    if k is not None and args.v is not None and args.v >= k:
        print(f"admissibility: {admissible(k, args.v)}", file=sys.stderr)


# -- commands ------------------------------------------------------------------

def cmd_generate(args):
    try:
        system = make_design(args.family, v=args.v, q=args.q, n=args.n)
    except ParameterError:
        _verdict_hint(args)
        raise
    F = _assemble(system, args)
    print(summary_line(F))
    _write(F, args.out, f"{args.family}-{F.M}x{F.N}")


def check_frame(F, meta: dict, tol: float) -> list[tuple[str, bool, str]]:
    """(name, passed, detail) for tightness, equiangularity, density, Welch."""
    checks = []
    tight = verify_tight(F, tol)
    detail = f"max_offdiag={_num(tight.max_offdiag)} max_diag_dev={_num(tight.max_diag_dev)}"
    if tight.exact_checked:
        detail += f" exact={str(tight.exact_passed).lower()}"
    if tight.counterexample is not None:
        detail += f" counterexample=rows{list(tight.counterexample)}"
    checks.append(("tight", tight.passed, detail))

    eq = verify_equiangular(F, tol)
    detail = f"alpha={_num(eq.alpha)} max_modulus_dev={_num(eq.max_modulus_dev)}"
    if eq.counterexample is not None:
        detail += f" counterexample=columns{list(eq.counterexample)}"
    checks.append(("equiangular", eq.passed, detail))

    params = compute_params(F)
    if "k" in meta and "v" in meta:
        expected = Fraction(int(meta["k"]), int(meta["v"]))
        ok = params.density == expected and bool(params.density_consistent)
    elif "density_fraction" in meta:
        expected = Fraction(meta["density_fraction"])
        ok = params.density == expected
    else:
        expected, ok = params.density, True
    checks.append(("density", ok, f"measured={params.density} expected={expected}"))

    G = gram(F)
    off = np.abs(G)
    np.fill_diagonal(off, 0.0)
    mu = float(off.max(initial=0.0))
    ok = abs(mu - params.alpha) <= tol
    checks.append(("welch", ok, f"coherence={_num(mu)} bound={_num(params.alpha)}"))

    rank = gram_rank(G)
    checks.append(("gram-rank", rank == params.M, f"rank={rank} M={params.M}"))
    return checks


def cmd_verify(args):
    F, meta = _load_frame(args.path)
    checks = check_frame(F, meta, args.tol)
    print(summary_line(F))
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    failed = [name for name, ok, _ in checks if not ok]
    if failed:
        raise VerificationFailed(f"failed checks: {', '.join(failed)}")


def cmd_params(args):
    result = recover_design_params(args.M, args.N)
    print(result)


def cmd_admissible(args):
    verdict = admissible(args.k, args.v)
    print(verdict)
    if verdict.v0 is not None:
        print(f"asymptotic existence for v >= {verdict.v0} (admissible v)")


def cmd_table(args):
    if args.max_m < 0:
        raise ParameterError(f"--max-m must be >= 0, got {args.max_m}")
    print(format_table(enumerate_families(args.max_m), args.format), end="")


def cmd_rip(args):
    F, _ = _load_frame(args.path)
    report = ric_exhaustive(F, args.k, args.budget, allow_sampling=not args.no_sampling,
                            seed=args.seed, early_exit=args.early_exit, threads=args.threads)
    print(report.to_json())


def cmd_certificate(args):
    F, _ = _load_frame(args.path)
    if not isinstance(F, EtfMatrix):
        raise NoProvenance("frame carries no Steiner construction data")
    print(block_dependency_certificate(F, args.block).to_json())


def cmd_complement(args):
    F, _ = _load_frame(args.path)
    C = naimark_complement(F, args.tol)
    print(summary_line(C))
    default = Path(args.path).with_suffix("").as_posix() + "-complement"
    _write(C, args.out, default, family="naimark-complement")


def cmd_export(args):
    system = make_design(args.family, v=args.v, q=args.q, n=args.n)
    target = Path(args.out) if args.out else Path(f"{args.family}-design.json")
    try:
        write_design(system, target)
    except OSError as exc:
        raise ReadFailed(f"cannot write {target}: {exc}") from exc
    print(f"wrote {target} v={system.v} k={system.k} b={len(system.blocks)}")


def cmd_import(args):
    try:
        system = read_design(args.path)
    except (OSError, ValueError, KeyError) as exc:
        raise ReadFailed(f"cannot read {args.path}: {exc}") from exc
    check = verify_design(system)
    if not check:
        for name, example in sorted(check.counterexamples.items()):
            print(f"FAIL {name}: {json.dumps(example, sort_keys=True)}")
        raise VerificationFailed("design is not a (2, k, v)-Steiner system")
    F = _assemble(system, args)
    print(summary_line(F))
    _write(F, args.out, f"{Path(args.path).with_suffix('').as_posix()}-{F.M}x{F.N}")


# -- parser ----------------------------------------------------------------------

def _family_args(p):
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--v", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)


def _flat_args(p):
    p.add_argument("--prefer-real", dest="prefer_real", action="store_true", default=True,
                   help="use a real Hadamard matrix when one exists (default)")
    p.add_argument("--complex", dest="prefer_real", action="store_false",
                   help="always use the DFT matrix")
    p.add_argument("--flat-override", help="JSON file with per-point flat matrices")


def build_parser() -> argparse.ArgumentParser:
    threads = argparse.ArgumentParser(add_help=False)
    threads.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                         help="worker threads (default: $ETF_FORGE_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="etf-forge", description=__doc__.splitlines()[0],
                                     parents=[threads])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[threads], help="build an ETF and write it")
    _family_args(p)
    _flat_args(p)
    p.add_argument("--out", help="output prefix (writes PREFIX.mtx and PREFIX.json)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[threads], help="check a stored frame")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", parents=[threads], help="design parameters from (M, N)")
    p.add_argument("M", type=int)
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("admissible", parents=[threads], help="existence status of (k, v)")
    p.add_argument("k", type=int)
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("table", parents=[threads], help="Steiner ETF families up to M")
    p.add_argument("--max-m", type=int, default=100)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("rip", parents=[threads], help="restricted isometry constant")
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--early-exit", type=float)
    p.add_argument("--no-sampling", action="store_true")
    p.set_defaults(func=cmd_rip)

    p = sub.add_parser("certificate", parents=[threads], help="block dependency certificate")
    p.add_argument("path")
    p.add_argument("--block", type=int, default=0)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("complement", parents=[threads], help="Naimark complement")
    p.add_argument("path")
    p.add_argument("--out")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("export", parents=[threads], help="write a design as JSON")
    _family_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("import", parents=[threads], help="build an ETF from a design JSON")
    p.add_argument("path")
    _flat_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_import)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "threads"):
        args.threads = None
    try:
        args.func(args)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ReadFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, NoProvenance, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except ValueError as exc:
        # InvalidDesign, NotTight, non-dependent blocks, ...
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
