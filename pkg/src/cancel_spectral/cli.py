"""Command-line front end.

Exit codes: 0 pass/true, 1 fail/false/refuted, 2 usage or input error,
3 numerically inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from . import __version__
from .core import UnsupportedSizeError, check_cancellative, empty, f4, f5, turan3
from .enumeration import (FAIL, INCONCLUSIVE, PASS, verify_corollary_identity, verify_edge_extremal,
                          verify_lambda1, verify_spectral_extremal)
from .hg3 import HG3FormatError, dumps, read_hg3
from .spectral import SolverConfig, is_nonincreasing, lagrangian_lambda1, solve_p_spectral, spectral_profile

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
THREADS_ENV = "CANCEL_SPECTRAL_THREADS"
STATUS_EXIT = {PASS: EXIT_OK, FAIL: EXIT_FALSE, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    flags: dict
    seed: int
    tool_version: str
    started_at: str
    wall_clock_seconds: float = 0.0
    input_hashes: dict = field(default_factory=dict)


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _seed(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _grid(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad p grid {text!r}") from exc


def _solver_flags(sp, p_default=None, p_required=False):
    sp.add_argument("--p", type=float, default=p_default, required=p_required)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=_positive_int, default=100_000)
    sp.add_argument("--starts", type=_positive_int, default=16)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--threads", type=_positive_int, default=_default_threads())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cancel-spectral",
                                 description="p-spectral tools for cancellative 3-graphs")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a standard 3-graph as .hg3")
    g.add_argument("kind", choices=["tur3", "f4", "f5", "empty"])
    g.add_argument("n", type=int)
    g.add_argument("--out")
    g.add_argument("--manifest")

    c = sub.add_parser("check", help="test cancellativity")
    c.add_argument("input")
    c.add_argument("--format", choices=["text", "json"], default="text")

    lam = sub.add_parser("lambda", help="p-spectral radius of a .hg3 file")
    lam.add_argument("input")
    _solver_flags(lam, p_required=True)
    lam.add_argument("--vector", action="store_true")
    lam.add_argument("--format", choices=["text", "json"], default="text")
    lam.add_argument("--out")
    lam.add_argument("--manifest")

    sw = sub.add_parser("sweep", help="f_G(p) over a grid of p")
    sw.add_argument("input")
    sw.add_argument("--grid", type=_grid, default=[1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0],
                    help="comma separated, strictly increasing, all > 1")
    sw.add_argument("--slack", type=float, default=1e-7)
    _solver_flags(sw)
    sw.add_argument("--format", choices=["csv", "json"], default="csv")
    sw.add_argument("--out")
    sw.add_argument("--manifest")

    v = sub.add_parser("verify", help="exhaustive small-n campaigns")
    v.add_argument("target", choices=["edges", "spectral", "lambda1", "corollary"])
    v.add_argument("n", type=int)
    _solver_flags(v)
    v.add_argument("--sample", type=_positive_int)
    v.add_argument("--prefilter", action="store_true",
                   help="solve only classes without a cancellative one-edge extension")
    v.add_argument("--allow-n7", action="store_true", help="permit spectral verification at n = 7")
    v.add_argument("--format", choices=["text", "json", "csv"], default="text")
    v.add_argument("--out")
    v.add_argument("--manifest")
    return ap


def _config(args, p) -> SolverConfig:
    try:
        return SolverConfig(p=p, tolerance=args.tol, max_iterations=args.max_iter,
                            restarts=args.starts, rng_seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load(path):
    try:
        return read_hg3(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    makers = {"tur3": turan3, "f4": f4, "f5": f5, "empty": empty}
    try:
        if args.n < 0:
            raise ValueError(f"n must be nonnegative, got {args.n}")
        G = makers[args.kind](args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, dumps(G))
    return EXIT_OK


def cmd_check(args) -> int:
    G = _load(args.input)
    rep = check_cancellative(G)
    if args.format == "json":
        doc = {"cancellative": rep.cancellative,
               "witness": [list(e) for e in rep.witness] if rep.witness else None}
        sys.stdout.write(json.dumps(doc) + "\n")
    elif rep.cancellative:
        sys.stdout.write("cancellative\n")
    else:
        A, B, C = rep.witness
        fmt = lambda e: " ".join(map(str, e))
        sys.stdout.write(f"not cancellative\nwitness A: {fmt(A)}\nwitness B: {fmt(B)}\nwitness C: {fmt(C)}\n")
    return EXIT_OK if rep.cancellative else EXIT_FALSE


def cmd_lambda(args) -> int:
    G = _load(args.input)
    if not args.p >= 1:
        raise UsageError(f"--p must be >= 1, got {args.p}")
    cfg = _config(args, args.p)
    est = lagrangian_lambda1(G, cfg) if args.p == 1 else solve_p_spectral(G, cfg)
    res_name = "pg_norm" if args.p == 1 else "residual"
    if args.format == "json":
        doc = {"p": args.p, "lambda": round(est.lambda_, 9), res_name: est.residual,
               "iterations": est.iterations, "converged": est.converged}
        if args.vector:
            doc["vector"] = [round(float(x), 12) for x in est.vector.entries]
        text = json.dumps(doc) + "\n"
    else:
        lines = [f"lambda {est.lambda_:.9f}", f"{res_name} {est.residual:.3e}",
                 f"iterations {est.iterations}", f"converged {str(est.converged).lower()}"]
        if args.vector:
            lines.append("vector " + " ".join(f"{x:.12f}" for x in est.vector.entries))
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK if est.converged else EXIT_INCONCLUSIVE


def cmd_sweep(args) -> int:
    G = _load(args.input)
    if G.m == 0:
        raise UsageError("graph has m = 0 edges, so f_G(p) = (lambda / 3m)^p is undefined")
    try:
        pts = spectral_profile(G, args.grid, _config(args, 3.0))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not all(pt.converged for pt in pts):
        verdict = INCONCLUSIVE
    elif is_nonincreasing([pt.f for pt in pts], args.slack):
        verdict = PASS
    else:
        verdict = FAIL
    label = {PASS: "nonincreasing", FAIL: "increase-detected", INCONCLUSIVE: "inconclusive"}[verdict]
    if args.format == "json":
        doc = {"points": [{"p": pt.p, "lambda": pt.lambda_, "f": pt.f, "converged": pt.converged}
                          for pt in pts], "slack": args.slack, "verdict": label}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "lambda", "f", "converged"])
        for pt in pts:
            w.writerow([f"{pt.p:g}", f"{pt.lambda_:.12g}", f"{pt.f:.12g}", int(pt.converged)])
        buf.write(f"# verdict: {label} (slack {args.slack:g})\n")
        text = buf.getvalue()
    _emit(args, text)
    return STATUS_EXIT[verdict]


def cmd_verify(args) -> int:
    p = args.p
    try:
        if args.target == "edges":
            rep = verify_edge_extremal(args.n, threads=args.threads)
        elif args.target == "spectral":
            p = 3.0 if p is None else p
            rep = verify_spectral_extremal(args.n, p, _config(args, p), threads=args.threads,
                                           prefilter=args.prefilter, allow_large=args.allow_n7)
        elif args.target == "lambda1":
            rep = verify_lambda1(args.n, args.sample, _config(args, 1.0), threads=args.threads)
        else:
            rep = verify_corollary_identity(args.n, _config(args, 3.0), threads=args.threads)
    except (UnsupportedSizeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    summary = rep.summary()
    if args.format == "json":
        text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        if hasattr(rep, "to_csv"):
            text = rep.to_csv()
        elif getattr(rep, "rows", None):
            text = _rows_csv(rep.rows)
        else:
            raise UsageError(f"no per-class rows for target {args.target}")
    else:
        text = "".join(f"{k}: {_short(v)}\n" for k, v in summary.items())
    _emit(args, text)
    return STATUS_EXIT[rep.status]


def _rows_csv(rows) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in sorted(rows, key=lambda r: r["key"]):
            w.writerow(r)
    return buf.getvalue()


def _short(v):
    if isinstance(v, list) and len(v) > 4:
        return f"{v[:4]} ... ({len(v)} total)"
    return v


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "lambda": cmd_lambda, "sweep": cmd_sweep,
            "verify": cmd_verify}


def _manifest(args, started, t0) -> RunManifest:
    flags = {k: v for k, v in vars(args).items() if k not in ("command",)}
    inputs = {}
    if getattr(args, "input", None) and os.path.exists(args.input):
        inputs[args.input] = _sha256(args.input)
    return RunManifest(args.command, flags, getattr(args, "seed", 0), __version__, started,
                       round(time.perf_counter() - t0, 6), inputs)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    try:
        code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    target = getattr(args, "manifest", None) or (args.out + ".manifest.json" if getattr(args, "out", None) else None)
    if target:
        with open(target, "w", newline="\n") as fh:
            json.dump(asdict(_manifest(args, started, t0)), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
