"""Command-line front end: grids of mode values, Wigner slices, marginals,
transform residuals and the verification suite.

Data files carry no timestamps and every number is written with 17
significant digits, so identical invocations produce identical bytes.

Exit codes: 0 ok, 1 failed verification or check, 2 invalid arguments or
mode index, 3 I/O failure, 4 Fock cutoff too small, 5 FrFT order too close
to a multiple of pi.
"""
import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import fockspace as fs
from . import modes, phasespace, transforms, verify
from .errors import CutoffTooSmall, InvalidModeIndex, OrderNearSingular, QuadratureUnderResolved
from .quadrature import QuadratureSpec

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_IO, EXIT_CUTOFF, EXIT_ORDER = 0, 1, 2, 3, 4, 5
RES_RANGE = (8, 2048)
AXES = ("x1", "p1", "x2", "p2")


class UsageError(Exception):
    pass


def fmt(v):
    return format(float(v), ".17g")


def grid_axis(extent, res):
    """Nodes (i - res//2) * 2 extent / res; always contains 0 at i = res//2."""
    return (np.arange(res) - res // 2) * (2.0 * extent / res)


def sample_axis(extent, res):
    return np.linspace(-extent, extent, res)


def render(columns, rows, fmt_name, meta=None):
    if fmt_name == "csv":
        lines = [",".join(columns)]
        lines += [",".join(fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    body = ",\n".join("    [" + ", ".join(fmt(v) for v in row) + "]" for row in rows)
    head = ['  "columns": [' + ", ".join(json.dumps(c) for c in columns) + "]"]
    for key, val in (meta or {}).items():
        head.append(f'  {json.dumps(key)}: {fmt(val) if isinstance(val, float) else json.dumps(val)}')
    return "{\n" + ",\n".join(head) + ',\n  "rows": [\n' + body + "\n  ]\n}\n"


def emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _check_grid(extent, res):
    if not extent > 0:
        raise UsageError(f"--extent must be positive, got {extent}")
    lo, hi = RES_RANGE
    if not lo <= res <= hi:
        raise UsageError(f"--res must lie in [{lo}, {hi}], got {res}")


def resolve_nmax(args):
    if getattr(args, "nmax", None) is not None:
        return args.nmax
    try:
        return fs.default_nmax()
    except ValueError:
        raise UsageError("LGKIT_NMAX must be an integer") from None


def cmd_mode(args):
    idx = fs.ModeIndex(args.n, args.l)
    _check_grid(args.extent, args.res)
    ax = grid_axis(args.extent, args.res)
    x, y = np.meshgrid(ax, ax, indexing="ij")
    z = x + 1j * y
    if args.plane == "eta":
        vals = modes.lg_wavefunction_eta(idx, z)
    else:
        vals = modes.tau_overlap_lg(idx, z)
    rows = zip(x.ravel(), y.ravel(), vals.real.ravel(), vals.imag.ravel(), (np.abs(vals) ** 2).ravel())
    emit(render(["x", "y", "re", "im", "abs2"], rows, args.format), args.out)
    return EXIT_OK


def parse_fixed(text):
    vals = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        key, _, val = part.partition("=")
        if key not in AXES or not val:
            raise UsageError(f"bad --fixed entry {part!r}; expected e.g. x2=0,p2=0")
        vals[key] = float(val)
    return vals


def cmd_wigner(args):
    idx = fs.ModeIndex(args.n, args.l)
    _check_grid(args.extent, args.res)
    free = tuple(a.strip() for a in args.axes.split(","))
    if len(free) != 2 or not set(free) <= set(AXES) or free[0] == free[1]:
        raise UsageError(f"--axes needs two distinct names from {AXES}, got {args.axes!r}")
    fixed = parse_fixed(args.fixed)
    missing = [a for a in AXES if a not in free and a not in fixed]
    if missing or set(fixed) & set(free):
        raise UsageError("--fixed must give exactly the two axes not listed in --axes")
    ax = grid_axis(args.extent, args.res)
    a, b = np.meshgrid(ax, ax, indexing="ij")
    coords = {free[0]: a, free[1]: b}
    coords.update({k: np.full_like(a, v) for k, v in fixed.items()})
    pt = tuple(coords[k] for k in AXES)
    w = phasespace.wigner_lg(idx, pt)
    columns = ["a", "b", "w"]
    cols = [a.ravel(), b.ravel(), w.ravel()]
    if args.oracle:
        state = fs.lg_state_beamsplitter(idx, fs.BasisSpec(resolve_nmax(args)))
        axes = [np.unique(c.ravel()) for c in pt]
        cube = phasespace.wigner_bruteforce_grid(state, *axes)
        pos = [np.searchsorted(axes[i], pt[i].ravel()) for i in range(4)]
        wb = cube[tuple(pos)]
        columns += ["w_bruteforce", "delta"]
        cols += [wb, w.ravel() - wb]
    emit(render(columns, zip(*cols), args.format), args.out)
    return EXIT_OK


def cmd_marginal(args):
    idx = fs.ModeIndex(args.n, args.l)
    _check_grid(args.extent, args.res)
    ax = grid_axis(args.extent, args.res)
    x, y = np.meshgrid(ax, ax, indexing="ij")
    s = x + 1j * y
    closed = phasespace.marginal_sigma_analytic(idx, s)
    via_tau = phasespace.marginal_sigma_from_tau(idx, s)
    columns = ["x", "y", "marginal", "via_tau"]
    cols = [x.ravel(), y.ravel(), closed.ravel(), via_tau.ravel()]
    if args.quadrature:
        q = QuadratureSpec(half_width=6 + math.sqrt(idx.n), nodes_per_axis=96, tol=args.tol)
        quad = np.array([phasespace.marginal_sigma_quadrature(idx, v, q) for v in s.ravel()])
        columns.append("quadrature")
        cols.append(quad)
    emit(render(columns, zip(*cols), args.format), args.out)
    return EXIT_OK


def cmd_frft(args):
    idx = fs.ModeIndex(args.n, args.l)
    order = transforms.FrftOrder(args.alpha)
    if args.res < 2 or not args.extent > 0:
        raise UsageError("--res must be >= 2 and --extent positive")
    ax = sample_axis(args.extent, args.res)
    x, y = np.meshgrid(ax, ax, indexing="ij")
    tau = x + 1j * y
    q = dataclasses.replace(transforms.lg_field_quadrature(idx.n), tol=args.tol)
    got = transforms.frft(transforms.SampledField(lambda t: modes.tau_overlap_lg(idx, t), q), order, tau)
    orig = modes.tau_overlap_lg(idx, tau)
    expected = np.exp(-1j * order.alpha * idx.n) * orig
    resid = np.abs(got - expected)
    phase = transforms.fit_eigenphase(got, orig)
    rows = zip(x.ravel(), y.ravel(), got.real.ravel(), got.imag.ravel(), resid.ravel())
    meta = {"eigen_phase": phase, "expected_phase": math.remainder(-order.alpha * idx.n, 2 * math.pi),
            "max_residual": float(resid.max())}
    emit(render(["x", "y", "re", "im", "residual"], rows, args.format, meta if args.format == "json" else None),
         args.out)
    print(f"eigenvalue phase {fmt(phase)} rad (expected {fmt(meta['expected_phase'])}), "
          f"max residual {resid.max():.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_gwt(args):
    m, n = args.m, args.n
    if not 0 <= m <= n:
        raise UsageError(f"need 0 <= m <= n, got m={m}, n={n}")
    if args.res < 2 or not args.extent > 0:
        raise UsageError("--res must be >= 2 and --extent positive")
    ax = sample_axis(args.extent, args.res)
    x, y = np.meshgrid(ax, ax, indexing="ij")
    tau = x + 1j * y
    lhs = transforms.lg_from_gwt_closed_form(m, n, tau)
    rhs = (-1) ** m * math.pi * transforms.gwt(m, n, x / math.sqrt(2), y / math.sqrt(2))
    resid = np.abs(lhs - rhs)
    rows = zip(x.ravel(), y.ravel(), lhs.real.ravel(), lhs.imag.ravel(), rhs.real.ravel(), rhs.imag.ravel(),
               resid.ravel())
    emit(render(["x", "y", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"], rows, args.format), args.out)
    print(f"max residual {resid.max():.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args):
    nmax = resolve_nmax(args)

    def progress(rec):
        flag = "PASS" if rec["pass"] else "FAIL"
        res = "nan" if rec["residual"] is None else f"{rec['residual']:.3e}"
        print(f"{flag} {rec['id']:<34} residual={res} tol={rec['tol']:.0e} ({rec['ms']:.0f} ms)", file=sys.stderr)

    report = verify.run_suite(args.suite, nmax=nmax, on_result=progress)
    text = json.dumps(report, indent=2) + "\n"
    emit(text, args.json_out or args.out)
    n_fail = sum(not r["pass"] for r in report["checks"])
    print(f"{args.suite}: {len(report['checks']) - n_fail}/{len(report['checks'])} checks passed", file=sys.stderr)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def _global_options(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--nmax", type=int, default=d,
                        help="Fock cutoff for oracle computations (default: $LGKIT_NMAX or 32)")
    parser.add_argument("--out", default=d, help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS if suppress else "csv")
    parser.add_argument("--tol", type=float, default=argparse.SUPPRESS if suppress else 1e-6,
                        help="quadrature self-check tolerance")


def build_parser():
    parser = argparse.ArgumentParser(prog="lgkit", description=__doc__.split("\n\n")[0])
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def mode_args(p, n_default=0, l_default=0):
        p.add_argument("--n", type=int, default=n_default)
        p.add_argument("--l", type=int, default=l_default)

    def grid_args(p, extent, res):
        p.add_argument("--extent", type=float, default=extent)
        p.add_argument("--res", type=int, default=res)

    p = sub.add_parser("mode", parents=[common], help="LG wavefunction on the eta- or tau-plane")
    mode_args(p)
    p.add_argument("--plane", choices=("eta", "tau"), default="eta")
    grid_args(p, 3.0, 64)
    p.set_defaults(func=cmd_mode)

    p = sub.add_parser("wigner", parents=[common], help="2-D slice of the LG Wigner function")
    mode_args(p)
    p.add_argument("--axes", default="x1,p1", help="two free axes (default x1,p1)")
    p.add_argument("--fixed", default="x2=0,p2=0", help="values of the other two axes")
    p.add_argument("--oracle", action="store_true", help="add displaced-parity oracle columns")
    grid_args(p, 2.0, 32)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("marginal", parents=[common], help="sigma-plane marginal distribution")
    mode_args(p)
    p.add_argument("--quadrature", action="store_true", help="add the gamma-plane quadrature column")
    grid_args(p, 3.0, 32)
    p.set_defaults(func=cmd_marginal)

    p = sub.add_parser("frft", parents=[common], help="FrFT eigen-relation residuals")
    mode_args(p)
    p.add_argument("--alpha", type=float, required=True)
    grid_args(p, 1.5, 5)
    p.set_defaults(func=cmd_frft)

    p = sub.add_parser("gwt", parents=[common], help="LG mode vs generalized Wigner transform residuals")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    grid_args(p, 1.5 / math.sqrt(2), 5)
    p.set_defaults(func=cmd_gwt)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--suite", choices=("all", *verify.SUITES), default="all")
    p.add_argument("--json-out", default=None, help="report path (falls back to --out, then stdout)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.nmax is not None and args.nmax < 0:
        parser.error("--nmax must be non-negative")
    try:
        return args.func(args)
    except (InvalidModeIndex, UsageError) as exc:
        print(f"lgkit: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except CutoffTooSmall as exc:
        print(f"lgkit: error: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except OrderNearSingular as exc:
        print(f"lgkit: error: {exc}", file=sys.stderr)
        return EXIT_ORDER
    except QuadratureUnderResolved as exc:
        print(f"lgkit: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"lgkit: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
