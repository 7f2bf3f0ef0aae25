"""Command-line front end: ``ctrlvol analyze|verify|plot|search``."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import geometry, grammian
from .eigensolve import decompose, to_diagonal_form
from .model import CtrlVolError, load_system
from .oracle import any_failed, stein_solve, verify_all
from .polesearch import evenness_landscape, maximize_evenness
from .report import analyze_system, num, render_csv, render_json, render_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
VERIFY_FINITE_N = 400


def _default_tol() -> float:
    raw = os.environ.get("CTRLVOL_TOL")
    if raw is None:
        return 1e-6
    try:
        return float(raw)
    except ValueError:
        raise SystemExit(f"CTRLVOL_TOL is not a number: {raw!r}")


def _horizon(text):
    if text is None or text.lower() in ("inf", "infinite"):
        return None
    try:
        N = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"horizon must be a positive integer or 'inf', got {text!r}")
    if N < 1:
        raise argparse.ArgumentTypeError("horizon must be >= 1")
    return N


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _axes(text):
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j[,k], got {text!r}")
    if len(vals) not in (2, 3):
        raise argparse.ArgumentTypeError("axes take 2 or 3 indices")
    return vals


def _emit(text: str, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def cmd_analyze(args) -> int:
    sys_ = load_system(args.input)
    rep = analyze_system(sys_, args.horizon)
    render = {"text": render_text, "json": render_json, "csv": render_csv}[args.format]
    _emit(render(rep), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    sys_ = load_system(args.input)
    N = args.horizon if args.horizon is not None else VERIFY_FINITE_N
    reports = verify_all(sys_, N=N, tol=args.tolerance)
    payload = []
    for r in reports:
        d = r.to_dict()
        for k in ("analyticValue", "numericValue", "absError", "relError"):
            d[k] = num(d[k])
        payload.append(d)
    _emit(render_json(payload), args.output)
    for r in reports:
        if r.status == "skipped":
            print(f"warning: {r.quantity} skipped ({r.note})", file=sys.stderr)
        elif r.status == "fail":
            print(f"FAIL: {r.quantity} rel error {r.rel_error:.3g} > {r.tolerance:.3g}", file=sys.stderr)
    return EXIT_FAIL if any_failed(reports) else EXIT_OK


def _grammians(sys_, horizon, basis):
    """Yield (basis name, GrammianResult) pairs for the plot command."""
    if basis in ("original", "both"):
        G = stein_solve(sys_) if horizon is None else grammian.finite_series(sys_, horizon)
        yield "original", G
    if basis in ("eigen", "both"):
        spec = decompose(sys_)
        if not spec.is_real:
            print("warning: complex spectrum, eigen-space ellipsoid is complex; skipped", file=sys.stderr)
            return
        diag = to_diagonal_form(sys_, spec)
        G = grammian.infinite_grammian(diag) if horizon is None else grammian.closed_form_finite(diag, horizon)
        yield "eigen", G


def cmd_plot(args) -> int:
    sys_ = load_system(args.input)
    horizon = args.horizon
    if horizon is None and np.max(np.abs(np.linalg.eigvals(sys_.A))) >= 1.0:
        horizon = 100
    axes0 = [a - 1 for a in args.axes]
    if min(axes0) < 0 or max(axes0) >= sys_.n or len(set(axes0)) != len(axes0):
        raise CtrlVolError(f"invalid axes {args.axes} for n = {sys_.n} (1-based)")
    sections = [tuple(axes0)]
    if len(axes0) == 3:
        a, b, c = axes0
        sections += [(a, b), (a, c), (b, c)]
    prefix = args.output or str(Path(args.input).with_suffix(""))
    tag = "inf" if horizon is None else f"N{horizon}"
    written = []
    for basis, G in _grammians(sys_, horizon, args.basis):
        for ax in sections:
            count = args.samples or (720 if len(ax) == 2 else 2000)
            label = f"{basis} basis, axes {','.join(str(i + 1) for i in ax)}, horizon {tag}"
            data = geometry.sample_boundary(G, ax, count, label=label)
            path = Path(f"{prefix}_{basis}_{tag}_x{''.join(str(i + 1) for i in ax)}.csv")
            path.write_text(data.to_csv())
            written.append(str(path))
    for w in written:
        print(w)
    return EXIT_OK


def cmd_search(args) -> int:
    lo, hi = args.bounds
    res = maximize_evenness(args.n, (lo, hi), fixed=args.fixed, seed=args.seed)
    out = {
        "n": args.n,
        "bounds": [num(lo), num(hi)],
        "fixed": [num(v) for v in (args.fixed or [])],
        "seed": args.seed,
        "poles": [num(p) for p in res.poles],
        "f1": num(res.f1),
    }
    if args.landscape is not None:
        idx = args.landscape - 1
        land = evenness_landscape(res.poles, idx, args.samples or 400)
        path = Path(args.landscape_output or f"landscape_pole{args.landscape}.csv")
        path.write_text(land.to_csv())
        out["landscapeFile"] = str(path)
    if args.format == "json":
        _emit(render_json(out), args.output)
    else:
        text = (f"poles: {', '.join(f'{p:.6f}' for p in res.poles)}\n"
                f"F1: {res.f1:.6f}\n")
        if "landscapeFile" in out:
            text += f"landscape: {out['landscapeFile']}\n"
        _emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ctrlvol", description="Controllability ellipsoid volume and shape factors.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        sp.add_argument("--input", required=True, help="system JSON file")
        sp.add_argument("--horizon", type=_horizon, default=None,
                        help="N or 'inf' (default: inf when stable, else 100)")
        sp.add_argument("--tolerance", type=float, default=_default_tol(),
                        help="relative tolerance (default 1e-6 or $CTRLVOL_TOL)")
        sp.add_argument("--output", default=None, help="output path (default stdout)")
        if fmt:
            sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    a = sub.add_parser("analyze", help="volume, determinant and shape factors")
    common(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="compare closed forms against numerical referees")
    common(v, fmt=False)
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("plot", help="write ellipsoid boundary samples as CSV")
    common(pl, fmt=False)
    pl.add_argument("--axes", type=_axes, default=[1, 2], help="1-based state indices i,j[,k]")
    pl.add_argument("--basis", choices=("original", "eigen", "both"), default="both")
    pl.add_argument("--samples", type=int, default=None, help="points per file (720 in 2-D, 2000 in 3-D)")
    pl.set_defaults(func=cmd_plot)

    s = sub.add_parser("search", help="pole placement maximizing the evenness factor")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--bounds", type=_floats, default=[-0.9, 0.9])
    s.add_argument("--fixed", type=_floats, default=None)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--landscape", type=int, default=None, help="1-based pole index to sweep")
    s.add_argument("--landscape-output", default=None)
    s.add_argument("--samples", type=int, default=None, help="landscape grid size (default 400)")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--output", default=None)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "bounds", None) is not None and len(args.bounds) != 2:
        parser.error("--bounds takes lo,hi")
    try:
        return args.func(args)
    except CtrlVolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
