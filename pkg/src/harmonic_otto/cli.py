"""Command-line entry point ``otto``.

Exit codes: 0 success, 1 invalid input, 2 verification failure or
analytic/numeric discrepancy, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import engine as eng
from . import fridge as frg
from . import sweeps
from . import verify as ver
from .cycle import BathPair, FrequencyPair, Protocol, Regime, cycle_report
from .errors import DomainError, NumericFailure
from .oracle import InfeasibleProblem
from .result import ANALYTIC, NUMERIC

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _diagnose(message)
        raise SystemExit(EXIT_INPUT)


def _diagnose(message: str) -> None:
    color = sys.stderr.isatty() and "NO_COLOR" not in os.environ
    prefix = "\x1b[31merror:\x1b[0m" if color else "error:"
    print(f"{prefix} {message}", file=sys.stderr)


# --- parser ------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--beta1", type=float, help="inverse temperature of the cold bath")
    p.add_argument("--beta2", type=float, help="inverse temperature of the hot bath (default 1)")
    p.add_argument("--omega1", type=float)
    p.add_argument("--omega2", type=float)
    p.add_argument("--protocol")
    p.add_argument("--regime")
    p.add_argument("--eta-c", type=float)
    p.add_argument("--zeta-c", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--out", help="write to this file instead of standard output")
    p.add_argument("--format", choices=("csv", "json", "text"))
    p.add_argument("--tol", type=float, help="relative tolerance for comparisons")
    p.add_argument("--config", help="JSON file whose keys mirror these flags")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="otto", description="Quantum harmonic Otto engine and refrigerator "
                     "under the maximum Omega criterion.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common()]

    sub.add_parser("cycle", parents=common, help="energetics of one cycle (JSON)")

    p = sub.add_parser("optimize", parents=common, help="optimal operating point")
    p.add_argument("device", choices=("engine", "fridge"))
    p.add_argument("cycle_protocol", metavar="protocol")
    p.add_argument("cycle_regime", metavar="regime", nargs="?")
    p.add_argument("--method", choices=(ANALYTIC, NUMERIC, "both"))
    p.add_argument("--objective", choices=("omega", "work"))

    p = sub.add_parser("sweep", parents=common, help="figure data on a parameter axis")
    p.add_argument("--figure", choices=tuple(sweeps.FIGURES))
    p.add_argument("--quantity", action="append",
                   help="quantity name; repeat or comma-separate for several")
    p.add_argument("--axis", choices=sweeps.AXES)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)

    sub.add_parser("loop", parents=common, help="work/efficiency loop of the sudden-switch engine")

    p = sub.add_parser("cp-mof", parents=common, help="peak cooling power at max Omega")
    p.add_argument("cooling_regime", nargs="?", metavar="regime",
                   help="ad_high, ad_low or ss (default: all three)")

    p = sub.add_parser("verify", parents=common, help="analytic versus numeric checks")
    p.add_argument("suite", nargs="?", choices=ver.SUITES)
    return parser


def _apply_config(parser, argv):
    """Re-parse with config-file values as defaults, so explicit flags win."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, ValueError) as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    if not isinstance(config, dict):
        parser.error("config must be a JSON object")
    known = set(vars(args))
    config = {k.replace("-", "_"): v for k, v in config.items()}
    unknown = sorted(set(config) - known)
    if unknown:
        parser.error(f"unknown config keys: {', '.join(unknown)}")
    sub = parser._subparsers._group_actions[0].choices[args.command]
    types = {a.dest: a.type for a in sub._actions if a.type is not None}
    try:
        config = {k: types[k](v) if k in types and v is not None else v
                  for k, v in config.items()}
    except (TypeError, ValueError) as exc:
        parser.error(f"bad value in config: {exc}")
    sub.set_defaults(**config)
    return parser.parse_args(argv)


# --- helpers -----------------------------------------------------------------

def _emit(text: str, out) -> None:
    if out:
        Path(out).write_bytes(text.encode())
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _baths(args) -> BathPair:
    """Bath pair from exactly one of --beta1, --tau, --eta-c, --zeta-c."""
    beta_hot = 1.0 if args.beta2 is None else args.beta2
    given = {k: getattr(args, k) for k in ("beta1", "tau", "eta_c", "zeta_c")
             if getattr(args, k) is not None}
    if len(given) != 1:
        raise UsageError("give exactly one of --beta1, --tau, --eta-c, --zeta-c")
    (key, value), = given.items()
    if key == "beta1":
        return BathPair(value, beta_hot)
    return getattr(BathPair, f"from_{key}")(value, beta_hot)


def _format(args, default, allowed):
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format must be one of {', '.join(allowed)} here")
    return fmt


def _table(columns, rows, fmt) -> str:
    if fmt == "json":
        return _json([dict(zip(columns, r)) for r in rows])
    return sweeps.to_csv(sweeps.SweepTable(tuple(columns), rows))


# --- commands ----------------------------------------------------------------

def cmd_cycle(args) -> int:
    for flag in ("beta1", "omega1", "omega2"):
        if getattr(args, flag) is None:
            raise UsageError(f"--{flag} is required")
    baths = BathPair(args.beta1, 1.0 if args.beta2 is None else args.beta2)
    freqs = FrequencyPair(args.omega1, args.omega2)
    report = cycle_report(baths, freqs, args.protocol or "adiabatic", args.regime or "exact")
    _format(args, "json", ("json",))
    _emit(_json(report.to_dict()), args.out)
    return EXIT_OK


_ENGINE = {
    ("omega", Protocol.ADIABATIC, Regime.HIGH): eng.emof_adiabatic_highT,
    ("omega", Protocol.ADIABATIC, Regime.LOW): eng.maximize_omega_lowT,
    ("omega", Protocol.SUDDEN, Regime.HIGH): eng.emof_ss,
    ("work", Protocol.ADIABATIC, Regime.HIGH): eng.maximize_work_highT,
    ("work", Protocol.ADIABATIC, Regime.LOW): eng.maximize_work_lowT,
    ("work", Protocol.SUDDEN, Regime.HIGH): eng.maximize_work_ss,
}

_FRIDGE = {
    (Protocol.ADIABATIC, Regime.HIGH): frg.cop_mof_adiabatic_highT,
    (Protocol.ADIABATIC, Regime.LOW): frg.cop_mof_adiabatic_lowT,
    (Protocol.SUDDEN, Regime.HIGH): frg.cop_mof_ss,
}


def _optimizer(args):
    protocol = Protocol.parse(args.cycle_protocol)
    regime = Regime.parse(args.cycle_regime or args.regime or "high")
    if regime is Regime.EXACT:
        raise UsageError("optimization needs the high or low regime")
    if protocol is Protocol.SUDDEN and regime is Regime.LOW:
        raise UsageError("the sudden-switch cycle is only treated in the high regime")
    if args.device == "engine":
        return _ENGINE[(args.objective or "omega", protocol, regime)], protocol, regime
    if args.objective == "work":
        raise UsageError("the refrigerator is only optimized for Omega")
    return _FRIDGE[(protocol, regime)], protocol, regime


def cmd_optimize(args) -> int:
    fn, protocol, regime = _optimizer(args)
    baths = _baths(args)
    method = args.method or ANALYTIC
    tol = ver.DEFAULT_TOL if args.tol is None else args.tol
    context = {"device": args.device, "protocol": protocol.value, "regime": regime.value,
               "beta_cold": baths.beta_cold, "beta_hot": baths.beta_hot}
    methods = (ANALYTIC, NUMERIC) if method == "both" else (method,)
    results = [fn(baths, m) for m in methods]
    rows = [{**context, **r.to_dict()} for r in results]
    status = EXIT_OK
    if method == "both":
        a, n = results
        records = ver._compare("optimize", a, n, tol, tol / 100.0)
        worst = max(records, key=lambda r: r.rel_err)
        ok = all(r.passed for r in records)
        rows.append({**context, "method": "discrepancy",
                     "figure_of_merit": abs(a.figure_of_merit - n.figure_of_merit),
                     "max_rel_err": worst.rel_err, "max_rel_err_field": worst.case_id.split(".", 1)[1],
                     "tol_rel": tol, "passed": ok})
        if not ok:
            _diagnose(f"analytic and numeric optima disagree ({worst.case_id}: "
                      f"rel_err {worst.rel_err:.3g} > {tol:g})")
            status = EXIT_VERIFY
    _format(args, "json", ("json",))
    _emit(_json(rows[0] if len(rows) == 1 else rows), args.out)
    return status


def _quantities(args):
    names = []
    for item in args.quantity or ():
        names += [q.strip() for q in item.split(",") if q.strip()]
    return names


def cmd_sweep(args) -> int:
    beta_hot = 1.0 if args.beta2 is None else args.beta2
    count = sweeps.DEFAULT_POINTS if args.points is None else args.points
    if args.figure:
        if args.quantity or args.axis:
            raise UsageError("--figure cannot be combined with --quantity or --axis")
        spec = sweeps.SweepSpec.for_figure(args.figure, count, args.start, args.stop, beta_hot)
    else:
        names = _quantities(args)
        if not names:
            raise UsageError("give --figure or at least one --quantity")
        axis = args.axis or sweeps.resolve(names[0]).axis
        lo, hi = sweeps.default_range(axis, names)
        spec = sweeps.SweepSpec(tuple(names), axis,
                                lo if args.start is None else args.start,
                                hi if args.stop is None else args.stop, count, beta_hot)
    fmt = _format(args, "csv", ("csv", "json"))
    _emit(sweeps.render(sweeps.run_sweep(spec), fmt), args.out)
    return EXIT_OK


def cmd_loop(args) -> int:
    tau = 0.5 if args.tau is None else args.tau
    beta_hot = 1.0 if args.beta2 is None else args.beta2
    curve = eng.loop_curve(tau, beta_hot, 500 if args.points is None else args.points)
    rows = [(float(z), float(e), float(w), 0, 0) for z, e, w in zip(curve.z, curve.eta, curve.work)]
    mw, me = curve.max_work, curve.max_eta
    rows.append((mw.z, mw.eta, mw.work, 1, 0))
    rows.append((me.z, me.eta, me.work, 0, 1))
    fmt = _format(args, "csv", ("csv", "json"))
    _emit(_table(("z", "eta", "work", "max_work", "max_eta"), rows, fmt), args.out)
    return EXIT_OK


def cmd_cp_mof(args) -> int:
    beta_hot = 1.0 if args.beta2 is None else args.beta2
    regimes = [args.cooling_regime] if args.cooling_regime else list(frg.CoolingRegime)
    peaks = [frg.cp_mof_peak(r, beta_hot) for r in regimes]
    fmt = _format(args, "json", ("csv", "json"))
    rows = [p.to_dict() for p in peaks]
    if fmt == "json":
        _emit(_json(rows), args.out)
    else:
        _emit(_table(tuple(rows[0]), [tuple(r.values()) for r in rows], fmt), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = ver.DEFAULT_TOL if args.tol is None else args.tol
    if not tol > 0:
        raise UsageError("--tol must be positive")
    records = ver.run_suite(args.suite or "all", tol)
    failed = [r for r in records if not r.passed]
    fmt = _format(args, "text", ("text", "json"))
    if fmt == "json":
        text = _json([r.to_dict() for r in records])
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'} {r.case_id} {r.relation} "
                 f"analytic={r.analytic_value:.17g} numeric={r.numeric_value:.17g} "
                 f"abs_err={r.abs_err:.3g} rel_err={r.rel_err:.3g}" for r in records]
        lines.append(f"{len(records)} records, {len(failed)} failures")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if failed:
        _diagnose(f"{len(failed)} of {len(records)} verification records failed")
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {"cycle": cmd_cycle, "optimize": cmd_optimize, "sweep": cmd_sweep,
            "loop": cmd_loop, "cp-mof": cmd_cp_mof, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser, argv)
    try:
        return COMMANDS[args.command](args)
    except (InfeasibleProblem, NumericFailure, ArithmeticError) as exc:
        _diagnose(f"numeric failure: {exc}")
        return EXIT_NUMERIC
    except (UsageError, DomainError) as exc:
        _diagnose(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
