"""Command-line interface: ``relosc <command> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 regime error.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import model, nonrel, planewave, verify
from .model import PhysicalParams, QuantumNumbers, RegimeError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REGIME = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return "%.17e" % value


def parse_range(text):
    """Parse ``"a..b"`` (inclusive), ``"a,b,c"`` or ``"a"`` into a list of ints."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse range {text!r}") from None
    if not values:
        raise ConfigError(f"empty range {text!r}")
    if min(values) < 0:
        raise ConfigError(f"negative quantum number in {text!r}")
    return values


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse number list {text!r}") from None


def _speed(text):
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _params(args):
    if math.isinf(args.c):
        raise ConfigError("c = inf is only valid for spectrum and figure1")
    try:
        return PhysicalParams(m=args.m, omega=args.omega, c=args.c, g=args.g, hbar=args.hbar)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _grid(args, lo, hi, count):
    if count < 2:
        raise ConfigError("grid needs at least 2 points")
    if not lo < hi:
        raise ConfigError("grid minimum must be below its maximum")
    if args.log_grid:
        if lo <= 0:
            raise ConfigError("log grid needs a positive minimum")
        return np.geomspace(lo, hi, count)
    return np.linspace(lo, hi, count)


def _rho_grid(args, default_points=200):
    return _grid(args, args.rho_min, args.rho_max, args.points or default_points)


class Table:
    def __init__(self, columns):
        self.columns = columns
        self.rows = []

    def add(self, *row):
        self.rows.append(row)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_records(self):
        return [dict(zip(self.columns, (_fmt(v) for v in row))) for row in self.rows]


# --- commands -------------------------------------------------------------
# Each returns (table, results, exit_code).


def cmd_spectrum(args):
    table = Table(["n", "l", "alpha_re", "alpha_im", "nu_re", "nu_im", "E_re", "E_im",
                   "real_regime"])
    ns, ls = parse_range(args.n), parse_range(args.l)
    if math.isinf(args.c):
        nr = nonrel.NonRelParams(m=args.m, omega=args.omega, g=args.g, hbar=args.hbar)
        for l in ls:
            rad = nr.radicand(l)
            alpha = 0.5 + 0.5 * complex(np.sqrt(complex(rad)))
            for n in ns:
                e = complex(nonrel.nonrel_energy(nr, n, l, allow_complex=True))
                table.add(n, l, alpha.real, alpha.imag, math.inf, 0.0, e.real, e.imag, rad >= 0)
    else:
        p = _params(args)
        d = model.to_dimensionless(p)
        for l in ls:
            for n in ns:
                s = model.energy(d, QuantumNumbers(n, l), mc2=p.mc2)
                table.add(n, l, s.alpha.real, s.alpha.imag, s.nu.real, s.nu.imag,
                          s.energy.real, s.energy.imag, s.is_real_regime)
    return table, {}, EXIT_OK


def cmd_wavefunction(args):
    p = _params(args)
    d = model.to_dimensionless(p)
    rho = _rho_grid(args)
    table = Table(["n", "l", "rho", "re_R", "im_R", "abs_R"])
    for l in parse_range(args.l):
        for n in parse_range(args.n):
            values = model.radial_wavefunction(d, QuantumNumbers(n, l), rho)
            for r, v in zip(rho, values):
                table.add(n, l, r, v.real, v.imag, abs(v))
    return table, {}, EXIT_OK


def cmd_verify(args):
    p = _params(args)
    d = model.to_dimensionless(p)
    rho = _rho_grid(args)
    if np.any(rho <= 0):
        raise ConfigError("verification grid must be strictly positive")
    table = Table(["check", "n", "l", "rho", "re_residual", "im_residual", "rel_residual"])
    worst_abs = worst_rel = 0.0
    skipped = 0

    def record(name, n, l, report):
        nonlocal worst_abs, worst_rel, skipped
        for row in report.rows():
            table.add(name, n, l, *row)
        worst_abs = max(worst_abs, report.max_abs_residual)
        worst_rel = max(worst_rel, report.max_relative_residual)
        skipped += len(report.skipped)

    record("generalized_degree", -1, -1, verify.generalized_degree_identity_check(rho))
    for l in parse_range(args.l):
        for n in parse_range(args.n):
            q = QuantumNumbers(n, l)
            record("radial", n, l, verify.radial_equation_residual(d, q, rho))
            record("omega", n, l, verify.omega_equation_residual(d, q, rho))
    results = {"max_abs_residual": worst_abs, "max_rel_residual": worst_rel,
               "skipped_points": skipped}
    return table, results, EXIT_OK if worst_rel < args.tolerance else EXIT_FAIL


def cmd_ortho(args):
    p = _params(args)
    d = model.to_dimensionless(p)
    n_max = max(parse_range(args.n))
    spec = verify.QuadratureSpec(rho_max=args.quad_rho_max,
                                 node_count=args.nodes,
                                 scheme="fixed-composite" if args.fixed else "adaptive")
    table = Table(["l", "n", "m", "gram"])
    worst = 0.0
    per_l = {}
    for l in parse_range(args.l):
        try:
            report = verify.orthonormality_matrix(d, l, n_max, spec)
        except verify.CutoffError as exc:
            raise ConfigError(str(exc)) from None
        for i in range(n_max + 1):
            for j in range(n_max + 1):
                table.add(l, i, j, report.matrix[i, j])
        worst = max(worst, report.deviation)
        per_l[str(l)] = report.summary()
    results = {"gram_deviation": worst, "per_l": per_l}
    return table, results, EXIT_OK if worst < args.tolerance else EXIT_FAIL


def cmd_limits(args):
    template = PhysicalParams(m=args.m, omega=args.omega, g=args.g, hbar=args.hbar)
    mus = sorted(_floats(args.mu))
    if not mus or min(mus) <= 0:
        raise ConfigError("--mu needs positive values")
    xi = _grid(args, args.xi_min, args.xi_max, args.points or 200)
    table = Table(["kind", "n", "l", "mu", "value"])
    slopes = {}
    for l in parse_range(args.l):
        for n in parse_range(args.n):
            q = QuantumNumbers(n, l)
            gaps = nonrel.energy_limit_sweep(template, q, mus)
            devs = nonrel.wavefunction_limit_sweep(template, q, mus, xi)
            for mu, gap in gaps:
                table.add("energy_gap", n, l, mu, gap)
            for mu, dev in devs:
                table.add("sup_dev", n, l, mu, dev)
            if len(mus) >= 2 and all(g > 0 for _, g in gaps):
                slopes[f"{n},{l}"] = nonrel.loglog_slope(mus, [g for _, g in gaps])
    return table, {"energy_gap_loglog_slope": slopes}, EXIT_OK


FIGURE1_SPEEDS = (1.0, 4.0, math.inf)


def cmd_figure1(args):
    if (args.m, args.omega, args.hbar) != (1.0, 1.0, 1.0):
        raise ConfigError("figure1 requires natural units m = omega = hbar = 1")
    g_grid = _grid(args, args.g_min, args.g_max, args.points or 401)
    table = Table(["c", "l", "g", "E_re", "E_im", "E_minus_mc2_re", "E_minus_mc2_im"])
    onsets = {}
    for c in FIGURE1_SPEEDS:
        for l in parse_range(args.l):
            imag = []
            for g in g_grid:
                if math.isinf(c):
                    e = complex(nonrel.nonrel_energy(nonrel.NonRelParams(g=g), 0, l,
                                                     allow_complex=True))
                    shifted = e
                else:
                    p = PhysicalParams(c=c, g=g)
                    e = complex(model.energy(model.to_dimensionless(p), QuantumNumbers(0, l),
                                             mc2=p.mc2).energy)
                    shifted = e - p.mc2
                table.add(c, l, g, e.real, e.imag, shifted.real, shifted.imag)
                imag.append(e.imag)
            threshold = (-0.125 - 0.5 * l * (l + 1) if math.isinf(c)
                         else model.collapse_threshold_physical(PhysicalParams(c=c), l))
            real_idx = [i for i, v in enumerate(imag) if v == 0.0]
            onset = float(g_grid[real_idx[0]]) if real_idx else None
            onsets[f"{c:g},{l}"] = {"g_crit": threshold, "first_real_g": onset}
    return table, {"onsets": onsets}, EXIT_OK


def cmd_planewave(args):
    p_vec, r_vec = _floats(args.p), _floats(args.r)
    if len(p_vec) != 3 or len(r_vec) != 3:
        raise ConfigError("--p and --r need three components")
    speeds = _floats(args.c_values)
    if not speeds or min(speeds) <= 0:
        raise ConfigError("--c-values needs positive speeds")
    table = Table(["c", "deviation"])
    for c, dev in planewave.euclidean_limit_check(p_vec, r_vec, speeds, m=args.m, hbar=args.hbar):
        table.add(c, dev)
    return table, {}, EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "ortho": cmd_ortho,
    "limits": cmd_limits,
    "figure1": cmd_figure1,
    "planewave": cmd_planewave,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=float, default=1.0)
    common.add_argument("--omega", type=float, default=1.0)
    common.add_argument("--g", type=float, default=0.0)
    common.add_argument("--c", type=_speed, default=1.0, help="speed of light, or 'inf'")
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--n", default="0..3", help="radial quantum numbers, e.g. 0..3")
    common.add_argument("--l", default="0..2", help="orbital quantum numbers, e.g. 0..2")
    common.add_argument("--rho-min", type=float, default=0.1)
    common.add_argument("--rho-max", type=float, default=30.0)
    common.add_argument("--points", type=int, default=None)
    common.add_argument("--log-grid", action="store_true")
    common.add_argument("--tolerance", type=float, default=1e-8)
    common.add_argument("--out", default=None, help="table destination (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--summary", default=None,
                        help="JSON summary destination (default: stdout with --out, else stderr)")

    parser = argparse.ArgumentParser(prog="relosc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "ortho":
            sp.add_argument("--nodes", type=int, default=256)
            sp.add_argument("--quad-rho-max", type=float, default=None)
            sp.add_argument("--fixed", action="store_true",
                            help="single fixed composite rule instead of panel doubling")
        elif name == "limits":
            sp.add_argument("--mu", default="100,1000,10000")
            sp.add_argument("--xi-min", type=float, default=0.05)
            sp.add_argument("--xi-max", type=float, default=5.0)
        elif name == "figure1":
            sp.add_argument("--g-min", type=float, default=-1.0)
            sp.add_argument("--g-max", type=float, default=1.0)
        elif name == "planewave":
            sp.add_argument("--p", default="1,0,0")
            sp.add_argument("--r", default="0.5,0.8660254037844386,0")
            sp.add_argument("--c-values", default="10,100,1000")
    return parser


def _config(args):
    cfg = {k: v for k, v in sorted(vars(args).items())}
    if isinstance(cfg.get("c"), float) and math.isinf(cfg["c"]):
        cfg["c"] = "inf"
    return cfg


def _write(path, text, fallback):
    if path is None:
        fallback.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    summary = {"command": args.command, "config": _config(args)}
    try:
        table, results, code = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"relosc: error: {exc}", file=sys.stderr)
        summary.update(results={"error": str(exc)}, status="config_error")
        code, table = EXIT_USAGE, None
    except RegimeError as exc:
        print(f"relosc: regime error: {exc}", file=sys.stderr)
        summary.update(results={"error": str(exc)}, status="regime_error")
        code, table = EXIT_REGIME, None
    else:
        results["rows_written"] = len(table.rows)
        summary.update(results=results, status="ok" if code == EXIT_OK else "failed")

    summary_text = json.dumps(summary, sort_keys=True, indent=2) + "\n"
    if table is not None:
        if args.format == "json":
            body = json.dumps({"columns": table.columns, "rows": table.to_records(),
                               "summary": summary}, sort_keys=True, indent=2) + "\n"
        else:
            body = table.to_csv()
        _write(args.out, body, sys.stdout)
    if args.format == "csv" or table is None:
        summary_dest = sys.stdout if args.out is not None else sys.stderr
        _write(args.summary, summary_text, summary_dest)
    return code


if __name__ == "__main__":
    sys.exit(main())
