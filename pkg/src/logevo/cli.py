"""Command-line front end: reproducible experiments with CSV/JSON emission.

Exit codes: 0 success, 1 verification or numeric failure, 2 usage error.
CSV files start with '# ' comment lines (config echo, optional timestamp),
then one header row; reals are written in scientific notation with 17
significant digits so identical configs reproduce byte-identical files
(suppress the timestamp line with --no-timestamp for that).
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import asymptotics, modes, profile, quadrature, solver
from .multiplier import roots_at, symbol_at

CONFIG_SCHEMA = "logevo-config/1"
SUMMARY_SCHEMA = "logevo-summary/1"


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.16e}"
    return str(x)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("LOGEVO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _parallel(fn, items, n_threads):
    if n_threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n_threads) as pool:
        return list(pool.map(fn, items))


def _config_echo(args) -> str:
    skip = {"func", "out", "summary", "config", "no_timestamp"}
    payload = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    return json.dumps(payload, sort_keys=True, default=str)


def _write_csv(args, columns, rows, extra_comments=()):
    lines = [f"# logevo-csv/1 command={args.cmd}", f"# config: {_config_echo(args)}"]
    for c in extra_comments:
        lines.append(f"# {c}")
    if not args.no_timestamp:
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
        lines.append(f"# timestamp: {stamp}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_summary(args, payload) -> None:
    if not getattr(args, "summary", None):
        return
    payload = {"schema": SUMMARY_SCHEMA, "command": args.cmd, **payload}
    with open(args.summary, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _t_grid(args):
    if getattr(args, "t", None) is not None:
        return [args.t]
    if args.points < 1:
        raise SystemExit2("need at least one grid point")
    if args.points == 1:
        return [args.tmin]
    return list(np.geomspace(args.tmin, args.tmax, args.points))


class SystemExit2(Exception):
    """Usage-level error discovered after parsing."""


# ---------------------------------------------------------------------------
# subcommand bodies


def cmd_roots(args) -> int:
    point = symbol_at(args.r) if args.r is not None else None
    if point is None:
        if args.sigma is None:
            raise SystemExit2("give either --sigma or --r")
        sigma = args.sigma
        r = math.sqrt(math.expm1(sigma)) if sigma > 0 else 0.0
        point = symbol_at(r)
    pair = roots_at(point)
    print(f"sigma = {point.sigma:.12g}  rho = {point.rho:.12g}  regime = {point.regime.value}")
    if point.regime.value == "Degenerate":
        print(f"lambda = {pair.lambda_plus.real:.12g} (double)")
    else:
        print(f"lambda+ = {pair.lambda_plus:.12g}")
        print(f"lambda- = {pair.lambda_minus:.12g}")
    print(f"a = {pair.a:.12g}  b = {pair.b:.12g}")
    return 0


def cmd_mode(args) -> int:
    m = modes.ModeClosedForm.from_sigma(args.sigma, complex(args.u0), complex(args.u1))
    value, velocity = modes.mode_evaluate(m, args.t)
    rows = [(args.sigma, args.t, value.real, value.imag, velocity.real, velocity.imag)]
    comments = []
    if args.oracle_dt:
        ref = modes.ode_oracle(m.point, m.u0_hat, m.u1_hat, args.t, args.oracle_dt)
        comments.append(f"oracle_abs_diff: {abs(ref - value):.3e}")
    _write_csv(args, ["sigma", "t", "value_re", "value_im", "velocity_re", "velocity_im"], rows, comments)
    return 0


def cmd_integral(args) -> int:
    kinds_p = {"Ip", "Jp", "Middle"}
    if args.kind in kinds_p:
        if args.p is None:
            raise SystemExit2(f"--p is required for kind {args.kind}")
        p_or_n = args.p
    elif args.kind == "ScriptI_n":
        if args.n is None:
            raise SystemExit2("--n is required for kind ScriptI_n")
        p_or_n = float(args.n)
    else:
        p_or_n = 0.0
    ts = _t_grid(args)

    def one(t):
        spec = quadrature.IntegralSpec(
            kind=args.kind, p_or_n=p_or_n, t=t, eta=args.eta,
            rel_tol=args.rel_tol, abs_tol=args.abs_tol, node_budget=args.budget,
        )
        fn = quadrature.oracle_integrate if args.oracle else quadrature.integrate
        return fn(spec)

    results = _parallel(one, ts, _threads(args))
    rows = [
        (args.kind, p_or_n, t, r.value, r.abs_error_estimate, r.nodes_used, r.converged)
        for t, r in zip(ts, results)
    ]
    _write_csv(args, ["kind", "p_or_n", "t", "value", "error_estimate", "nodes", "converged"], rows)
    bad = [(t, r) for t, r in zip(ts, results) if not r.converged]
    if bad:
        t, r = bad[0]
        print(f"numeric failure: kind={args.kind} t={t:g} err={r.abs_error_estimate:g} after {r.nodes_used} nodes", file=sys.stderr)
        return 1
    if len(ts) == 1 and not args.out:
        pass  # value already in the CSV on stdout
    return 0


def cmd_ratio(args) -> int:
    ts = _t_grid(args)
    if args.lemma == "L21":
        curve = quadrature.ip_ratio_curve(args.p, ts)
    else:
        curve = quadrature.jp_ratio_curve(args.p, ts)
    rows = [(args.lemma, args.p, t, c) for t, c in curve]
    _write_csv(args, ["lemma", "p", "t", "compensated"], rows)
    return 0


def cmd_sandwich(args) -> int:
    ts = _t_grid(args)
    try:
        rep = asymptotics.verify_sandwich(args.claim, ts, p_or_n=args.param, rel_tol=args.rel_tol)
    except ArithmeticError as err:
        print(f"numeric failure: {err}", file=sys.stderr)
        return 1
    rows = [
        (rep.claim, t, raw, comp, rep.lower_coef, rep.upper_coef,
         rep.lower_coef <= comp <= rep.upper_coef)
        for (t, raw), (_, comp) in zip(rep.raw_values, rep.compensated_values)
    ]
    _write_csv(args, ["claim", "t", "raw", "compensated", "lower", "upper", "pass"], rows)
    _write_summary(args, {
        "claim": rep.claim, "lower": rep.lower_coef, "upper": rep.upper_coef,
        "last_decade_variation": rep.variation, "passed": rep.passed,
    })
    return 0 if rep.passed else 1


def _datum(args) -> profile.InitialDatum:
    fam = profile.Family.GAUSSIAN if args.family == "gaussian" else profile.Family.BALL
    return profile.InitialDatum(family=fam, amplitude=args.amplitude, width=args.width, dim=args.n)


def cmd_profile_error(args) -> int:
    ts = _t_grid(args)
    datum = _datum(args)

    def one(t):
        return profile.profile_error(datum, t, delta=args.delta, rel_tol=args.rel_tol)

    try:
        reports = _parallel(one, ts, _threads(args))
    except ArithmeticError as err:
        print(f"numeric failure: {err}", file=sys.stderr)
        return 1
    rows = [
        (args.family, args.n, rep.t, rep.delta, rep.low_freq_error_sq,
         rep.high_freq_error_sq, rep.total_error, rep.i0, rep.p1)
        for rep in reports
    ]
    _write_csv(args, ["family", "n", "t", "delta", "low_err_sq", "high_err_sq", "total_err", "i0", "p1"], rows)
    if not all(rep.converged for rep in reports):
        print("numeric failure: profile-error quadrature flagged non-convergence", file=sys.stderr)
        return 1
    return 0


def cmd_solve(args) -> int:
    grid = solver.GridSpec(dim=args.n, half_length=args.L, points_per_dim=args.N)
    datum = _datum(args)
    u1 = solver.sample_datum(grid, datum)
    u0 = solver.zero_field(grid)
    horizon = solver.trusted_horizon(grid, solver.support_radius(u1))
    times = [args.tmax * i / args.steps for i in range(args.steps + 1)]
    series = solver.time_series(grid, u0, u1, times)
    if args.tmax > horizon:
        print(f"warning: output beyond trusted horizon t = {horizon:.3g} carries wrap-around bias", file=sys.stderr)
    _write_csv(args, ["t", "l2_u", "energy", "linf_u"], series,
               [f"trusted_horizon: {horizon:.6g}"])
    energies = [row[2] for row in series]
    monotone = all(b <= a * (1.0 + 1e-10) for a, b in zip(energies, energies[1:]))
    _write_summary(args, {"trusted_horizon": horizon, "energy_monotone": monotone})
    return 0 if monotone else 1


def cmd_rates(args) -> int:
    ts = _t_grid(args)
    datum = _datum(args)
    grid = None
    if args.use_grid:
        grid = solver.GridSpec(dim=args.n, half_length=args.L, points_per_dim=args.N)
    try:
        sweep = asymptotics.energy_rate_sweep(datum, args.n, ts, grid=grid)
    except ArithmeticError as err:
        print(f"numeric failure: {err}", file=sys.stderr)
        return 1
    target = args.target
    rows = [(target, args.n, t, l2 if target == "l2" else en) for t, l2, en in sweep.rows]
    fit = sweep.l2_fit if target == "l2" else sweep.energy_fit
    _write_csv(args, ["target", "n", "t", "value"], rows,
               [f"fit_exponent: {fit.exponent:.6g}", f"fit_amplitude: {fit.amplitude:.6g}"])
    _write_summary(args, {
        "target": target, "n": args.n,
        "exponent": fit.exponent, "amplitude": fit.amplitude,
        "r_squared": fit.r_squared, "window": list(fit.window), "n_points": fit.n_points,
    })
    return 0


def cmd_verify_pointwise(args) -> int:
    sigmas = np.geomspace(args.sigma_min, args.sigma_max, args.sigma_points)
    times = np.linspace(args.tmin, args.tmax, args.t_points)
    data = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
    rows = []
    ok = True
    first_bad = None
    for s in sigmas:
        for u0, u1 in data:
            m = modes.ModeClosedForm.from_sigma(float(s), u0, u1)
            for t in times:
                chk = modes.check_pointwise_estimates(m, float(t))
                rows.append((s, t, u0, u1, chk.energy_lhs, chk.energy_rhs,
                             chk.amplitude_lhs, chk.amplitude_rhs, chk.passed))
                if not chk.passed and first_bad is None:
                    first_bad = (s, t)
                ok = ok and chk.passed
    _write_csv(args, ["sigma", "t", "u0", "u1", "energy_lhs", "energy_rhs",
                      "amplitude_lhs", "amplitude_rhs", "pass"], rows)
    if not ok:
        print(f"numeric failure: pointwise bound violated at sigma={first_bad[0]:g}, t={first_bad[1]:g}", file=sys.stderr)
        return 1
    return 0


def cmd_report(args) -> int:
    """Condensed verification battery; JSON is the machine contract."""
    rng = np.random.default_rng(args.seed)
    criteria = []

    def add(name, passed, **details):
        criteria.append({"name": name, "passed": bool(passed), **details})

    # template integral ratios converge
    tgrid = list(np.geomspace(1e2, 1e5, 7))
    for p in (-0.5, 0.0, 1.0, 3.0):
        curve = quadrature.ip_ratio_curve(p, tgrid)
        var = asymptotics.last_decade_variation(curve)
        add(f"low_band_ratio_p={p:g}", var < 0.05, variation=var, limit=curve[-1][1])
    for p in (-2.0, 0.0, 1.0, 3.0):
        curve = quadrature.jp_ratio_curve(p, list(np.geomspace(10, 500, 7)))
        var = asymptotics.last_decade_variation(curve)
        add(f"high_band_ratio_p={p:g}", var < 0.05, variation=var, limit=curve[-1][1])

    # sandwich bounds
    for claim, grid, param in (("P61", np.geomspace(1e3, 1e5, 5), None),
                               ("P62", np.geomspace(1e3, 1e5, 5), None),
                               ("P51", np.geomspace(1e2, 1e4, 7), 3)):
        rep = asymptotics.verify_sandwich(claim, list(grid), p_or_n=param)
        add(f"sandwich_{claim}", rep.passed, lower=rep.lower_coef, upper=rep.upper_coef,
            variation=rep.variation)

    # pointwise decay estimates on a coarse sweep
    bad = 0
    for s in np.geomspace(1e-2, 1e2, 12):
        for u0, u1 in ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0)):
            m = modes.ModeClosedForm.from_sigma(float(s), u0, u1)
            for t in np.linspace(0.1, 50, 12):
                if not modes.check_pointwise_estimates(m, float(t)).passed:
                    bad += 1
    add("pointwise_estimates", bad == 0, violations=bad)

    # closed form vs integrator oracle
    worst = 0.0
    for _ in range(40):
        s = float(rng.uniform(0.0, 50.0))
        t = float(rng.uniform(0.0, 10.0))
        u0 = complex(rng.normal(), rng.normal())
        u1 = complex(rng.normal(), rng.normal())
        m = modes.ModeClosedForm.from_sigma(s, u0, u1)
        val, _ = modes.mode_evaluate(m, t)
        ref = modes.ode_oracle(m.point, u0, u1, t, 1e-3)
        worst = max(worst, abs(val - ref) / (1.0 + abs(val)))
    add("mode_oracle", worst < 1e-8, worst_mixed_error=worst)

    # profile error decay slope for the Gaussian datum
    for n in (1, 2, 3):
        datum = profile.InitialDatum(profile.Family.GAUSSIAN, 1.0, 1.0, n)
        samples = []
        for t in (10.0, 20.0, 40.0, 80.0, 160.0):
            samples.append((t, profile.profile_error(datum, t).total_error))
        fit = asymptotics.fit_rate(samples, (10.0, 160.0))
        add(f"profile_rate_n={n}", fit.exponent <= -n / 4 + 0.05, exponent=fit.exponent)

    passed = all(c["passed"] for c in criteria)
    payload = {"criteria": criteria, "passed": passed, "seed": args.seed}
    if args.summary:
        _write_summary(args, payload)
    for c in criteria:
        print(("PASS" if c["passed"] else "FAIL") + f"  {c['name']}")
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# parser


def _add_common(sp, t_default=None, sweep=True):
    sp.add_argument("--out", help="CSV output path (stdout if omitted)")
    sp.add_argument("--summary", help="JSON summary output path")
    sp.add_argument("--config", help="JSON config file (schema logevo-config/1)")
    sp.add_argument("--no-timestamp", action="store_true", help="omit the timestamp header line")
    sp.add_argument("--threads", type=int, help="parallelism degree (default: cores, env LOGEVO_THREADS)")
    sp.add_argument("--seed", type=int, default=0, help="seed for any randomized sweep")
    if sweep:
        sp.add_argument("--t", type=float, default=t_default, help="single evaluation time")
        sp.add_argument("--tmin", type=float, default=1e2)
        sp.add_argument("--tmax", type=float, default=1e4)
        sp.add_argument("--points", type=int, default=9)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logevo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("roots", help="characteristic roots at one frequency")
    _add_common(sp, sweep=False)
    sp.add_argument("--sigma", type=float)
    sp.add_argument("--r", type=float)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("mode", help="closed-form mode value/velocity")
    _add_common(sp, sweep=False)
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--u0", default="0", help="initial amplitude (complex literal)")
    sp.add_argument("--u1", default="1", help="initial velocity (complex literal)")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--oracle-dt", type=float, help="also cross-check against the RK4 oracle")
    sp.set_defaults(func=cmd_mode)

    sp = sub.add_parser("integral", help="evaluate one of the named radial integrals")
    _add_common(sp)
    sp.add_argument("--kind", required=True, choices=["Ip", "Jp", "Middle", "ScriptI_n", "CosOverY"])
    sp.add_argument("--p", type=float, help="exponent for Ip/Jp/Middle")
    sp.add_argument("--n", type=int, help="dimension for ScriptI_n")
    sp.add_argument("--eta", type=float, help="lower limit for Middle")
    sp.add_argument("--rel-tol", type=float, default=quadrature.DEFAULT_REL_TOL)
    sp.add_argument("--abs-tol", type=float, default=quadrature.DEFAULT_ABS_TOL)
    sp.add_argument("--budget", type=int, default=quadrature.DEFAULT_NODE_BUDGET)
    sp.add_argument("--oracle", action="store_true", help="use the slow second-opinion rule")
    sp.set_defaults(func=cmd_integral)

    sp = sub.add_parser("ratio", help="compensated asymptotic ratio curves")
    _add_common(sp)
    sp.add_argument("--lemma", required=True, choices=["L21", "L22"])
    sp.add_argument("--p", type=float, required=True)
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("sandwich", help="two-sided bound verification")
    _add_common(sp)
    sp.add_argument("--claim", required=True, choices=list(asymptotics.CLAIMS))
    sp.add_argument("--param", type=float, help="p (L21/L22) or n (P51)")
    sp.add_argument("--rel-tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_sandwich)

    sp = sub.add_parser("profile-error", help="frequency-split distance to the asymptotic profile")
    _add_common(sp)
    sp.add_argument("--family", default="gaussian", choices=["gaussian", "ball"])
    sp.add_argument("--amplitude", type=float, default=1.0)
    sp.add_argument("--width", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--delta", type=float, default=profile.DEFAULT_DELTA)
    sp.add_argument("--rel-tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_profile_error)

    sp = sub.add_parser("solve", help="periodic-box evolution time series")
    _add_common(sp, sweep=False)
    sp.add_argument("--family", default="gaussian", choices=["gaussian", "ball"])
    sp.add_argument("--amplitude", type=float, default=1.0)
    sp.add_argument("--width", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--L", type=float, default=80.0)
    sp.add_argument("--N", type=int, default=4096)
    sp.add_argument("--tmax", type=float, default=34.0)
    sp.add_argument("--steps", type=int, default=34)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("rates", help="decay/growth rate fits of norm or energy")
    _add_common(sp)
    sp.add_argument("--target", default="l2", choices=["l2", "energy"])
    sp.add_argument("--family", default="gaussian", choices=["gaussian", "ball"])
    sp.add_argument("--amplitude", type=float, default=1.0)
    sp.add_argument("--width", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--use-grid", action="store_true", help="measure on the box solver instead of radial quadrature")
    sp.add_argument("--L", type=float, default=80.0)
    sp.add_argument("--N", type=int, default=4096)
    sp.set_defaults(func=cmd_rates)

    sp = sub.add_parser("verify-pointwise", help="pointwise decay estimates over a sweep")
    _add_common(sp, sweep=False)
    sp.add_argument("--sigma-min", type=float, default=1e-2)
    sp.add_argument("--sigma-max", type=float, default=1e2)
    sp.add_argument("--sigma-points", type=int, default=40)
    sp.add_argument("--tmin", type=float, default=0.1)
    sp.add_argument("--tmax", type=float, default=50.0)
    sp.add_argument("--t-points", type=int, default=40)
    sp.set_defaults(func=cmd_verify_pointwise)

    sp = sub.add_parser("report", help="condensed verification battery")
    _add_common(sp, sweep=False)
    sp.set_defaults(func=cmd_report)

    return ap


def _apply_config(ap: argparse.ArgumentParser, argv):
    if "--config" not in argv:
        return ap.parse_args(argv)
    args = ap.parse_args(argv)  # first pass: find the subcommand and path
    with open(args.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if cfg.get("schema") != CONFIG_SCHEMA:
        raise SystemExit2(f"config schema must be {CONFIG_SCHEMA!r}, got {cfg.get('schema')!r}")
    cfg = {k: v for k, v in cfg.items() if k != "schema"}
    allowed = set(vars(args))
    unknown = sorted(set(cfg) - allowed)
    if unknown:
        raise SystemExit2(f"unknown config keys for {args.cmd!r}: {', '.join(unknown)}")
    # config provides defaults; explicit flags win because they are re-parsed last
    for sub_action in ap._subparsers._group_actions:
        sub_parser = sub_action.choices.get(args.cmd)
        if sub_parser is not None:
            sub_parser.set_defaults(**cfg)
    return ap.parse_args(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = _apply_config(ap, argv)
        return args.func(args)
    except SystemExit2 as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as err:
        print(f"numeric failure: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
