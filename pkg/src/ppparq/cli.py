"""Command-line front end: ``analyze``, ``sweep``, ``validate`` and ``plot``.

Exit codes: 0 success, 1 failed validation check, 2 invalid input,
3 optimum requested for an interference-free link (lambda = 0).
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import asdict

from . import config as cfgmod
from . import sim
from .analytic import ATTEMPTS_MODELS, PC_MODELS, evaluate_point
from .config import ConfigError
from .model import UNLIMITED, is_unlimited
from .optimizer import ZeroDensityError, beta_star, m_star, unconstrained_beta_opt
from .svg import render_svg
from .sweep import PRESETS, Mode, SchemaError, SweepSpec, log_grid, preset_spec, read_csv, run_sweep, write_csv
from .validate import DEFAULT_BETAS, DEFAULT_LAMBDAS, failed, format_report, run_validation

# parameters used for the published figures
REFERENCE_DEFAULTS = {"alpha": "4", "r0": "1", "pc_tx": "97.9", "pc_rx": "112.2", "zeta": "0.35"}

PARAM_KEYS = ("alpha", "r0", "lambda", "power_ratio", "epsilon", "m_cap", "m", "beta",
              "pc_tx", "pc_rx", "zeta", "search_cap")
SWEEP_KEYS = ("axis", "values", "start", "stop", "num", "series", "modes")


def _add_keys(p, keys):
    g = p.add_argument_group("configuration keys (override --config)")
    for key in keys:
        g.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None, metavar="V", help=cfgmod.KEYS[key])


def _values(args, keys, base=None):
    values = dict(base or {})
    if args.config:
        values.update(cfgmod.load(args.config))
    for key in keys:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    return values


def _fmt_m(m):
    return "unlimited" if is_unlimited(m) else str(int(m))


def _print_report(title, rep, out):
    print(f"[{title}]", file=out)
    for k, v in asdict(rep).items():
        if k == "m_used":
            v = _fmt_m(v)
        elif isinstance(v, float):
            v = format(v, ".10g")
        print(f"  {k:<18} {v}", file=out)


def cmd_analyze(args, out):
    values = _values(args, PARAM_KEYS)
    missing = [k for k in cfgmod.REQUIRED_ANALYZE if k not in values]
    if missing:
        raise ConfigError(missing[0], "required key is missing")
    params = cfgmod.network(values)
    policy = cfgmod.policy(values)
    energy = cfgmod.energy(values)
    m = cfgmod.as_m(values, "m", policy.m_cap)
    if "beta" in values:
        beta = cfgmod.as_float(values, "beta")
    elif is_unlimited(m):
        beta = unconstrained_beta_opt(params).beta_star
    else:
        beta = beta_star(params, policy.epsilon, m)
    reports = [("point", evaluate_point(params, policy, energy, beta, m, args.pc_model, args.attempts_model))]
    _print_report("point", reports[0][1], out)
    if args.optimize:
        if is_unlimited(policy.m_cap):
            opt = unconstrained_beta_opt(params)
        else:
            opt = m_star(params, policy, cfgmod.search_cap(values))
        print("[optimum]", file=out)
        print(f"  beta_star          {opt.beta_star:.10g}", file=out)
        print(f"  m_star             {_fmt_m(opt.m_star)}", file=out)
        print(f"  t_star             {opt.t_star:.10g}", file=out)
        print(f"  constraint_active  {opt.constraint_active}", file=out)
        rep = evaluate_point(params, policy, energy, opt.beta_star, opt.m_star, args.pc_model, args.attempts_model)
        reports.append(("optimum", rep))
        _print_report("optimum report", rep, out)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            cols = list(asdict(reports[0][1]))
            w.writerow(["kind"] + cols)
            for kind, rep in reports:
                row = asdict(rep)
                w.writerow([kind] + [format(v, ".12g") if isinstance(v, float) else v for v in row.values()])
    return 0


def _custom_spec(values):
    if "axis" not in values:
        raise ConfigError("axis", "required for a sweep without --preset")
    axis = values["axis"].strip()
    if axis not in ("lambda", "epsilon"):
        raise ConfigError("axis", f"must be 'lambda' or 'epsilon', got {axis!r}")
    if "values" in values:
        xs = cfgmod.as_list(values, "values")
    else:
        num = cfgmod.as_m(values, "num")
        if num == UNLIMITED or num < 1:
            raise ConfigError("num", "must be a positive integer")
        xs = log_grid(cfgmod.as_float(values, "start"), cfgmod.as_float(values, "stop"), num)
    other = "epsilon" if axis == "lambda" else "lambda"
    series = cfgmod.as_list(values, "series") if "series" in values else (cfgmod.as_float(values, other),)
    try:
        modes = tuple(Mode.parse(t) for t in values.get("modes", "limited(5),unlimited").split(","))
    except ValueError as exc:
        raise ConfigError("modes", str(exc)) from None
    try:
        return SweepSpec(axis=axis, values=xs, series=series, modes=modes,
                         network=cfgmod.network(values, lam=1.0), energy=cfgmod.energy(values),
                         search_cap=cfgmod.search_cap(values))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("values", str(exc)) from None


def _y_column(quantity, pc_model):
    return f"{quantity}_{pc_model.replace('-', '')}"


def cmd_sweep(args, out):
    values = _values(args, PARAM_KEYS + SWEEP_KEYS, REFERENCE_DEFAULTS)
    if args.preset:
        spec = preset_spec(args.preset, cfgmod.network(values, lam=1.0), cfgmod.energy(values))
        quantity = PRESETS[args.preset][1]
        title = f"{args.preset}: {quantity.upper()} versus {spec.axis}"
    else:
        spec = _custom_spec(values)
        quantity, title = "ee", ""
    rows = run_sweep(spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, out)
    if args.svg:
        y = args.y or _y_column(quantity, args.pc_model)
        text = render_svg(rows, y, logx=True, logy=args.logy, title=title)
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError("grid", f"not a comma-separated list of numbers: {text!r}") from None


def cmd_validate(args, out):
    messages = args.trials if args.messages is None else args.messages
    checks = run_validation(
        lambdas=_floats(args.lambdas), betas=_floats(args.betas), trials=args.trials, messages=messages,
        seed=args.seed, alpha=args.alpha, r0=args.r0, power_ratio=args.power_ratio,
        disk_radius=args.disk_radius, max_ci=args.max_ci,
    )
    report = format_report(checks, args.seed, args.trials, messages)
    out.write(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report)
    return 1 if failed(checks) else 0


def cmd_plot(args, out):
    rows = read_csv(args.csv)
    y = args.y or _y_column("ee", args.pc_model)
    text = render_svg(rows, y, logx=args.logx, logy=args.logy, title=args.title or "")
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="ppparq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="evaluate one operating point (and optionally the optimum)")
    a.add_argument("--config", help="key = value file; see the keys below")
    a.add_argument("--optimize", action="store_true", help="also compute the throughput-optimal (beta, m)")
    a.add_argument("--pc-model", choices=PC_MODELS, default="worst-case")
    a.add_argument("--attempts-model", choices=ATTEMPTS_MODELS, default="exact")
    a.add_argument("--out", help="write the report(s) as CSV")
    _add_keys(a, PARAM_KEYS)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="sweep lambda or epsilon and emit CSV (and SVG)")
    s.add_argument("--config", help="key = value file; see the keys below")
    s.add_argument("--preset", choices=sorted(PRESETS))
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.add_argument("--svg", help="also render an SVG plot here")
    s.add_argument("--y", help="column to plot (default from preset and --pc-model)")
    s.add_argument("--pc-model", choices=PC_MODELS, default="worst-case", help="PC column used for the plot")
    s.add_argument("--logy", action=argparse.BooleanOptionalAction, default=True)
    _add_keys(s, PARAM_KEYS + SWEEP_KEYS)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("validate", help="cross-check closed forms against Monte Carlo")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--trials", type=int, default=100_000)
    v.add_argument("--messages", type=int, default=None, help="ARQ messages (default: --trials)")
    v.add_argument("--lambdas", default=",".join(map(str, DEFAULT_LAMBDAS)))
    v.add_argument("--betas", default=",".join(map(str, DEFAULT_BETAS)))
    v.add_argument("--alpha", type=float, default=4.0)
    v.add_argument("--r0", type=float, default=1.0)
    v.add_argument("--power-ratio", type=float, default=1.0)
    v.add_argument("--disk-radius", type=float, default=None, help="default 100 * r0")
    v.add_argument("--max-ci", type=float, default=0.02, help="widest conclusive 3-sigma half-width")
    v.add_argument("--out", help="also write the report here")
    v.set_defaults(func=cmd_validate)

    p = sub.add_parser("plot", help="render a sweep CSV as SVG")
    p.add_argument("csv")
    p.add_argument("--out", required=True)
    p.add_argument("--y", help="column to plot (default ee_<pc-model>)")
    p.add_argument("--pc-model", choices=PC_MODELS, default="worst-case")
    p.add_argument("--logy", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--logx", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except ZeroDensityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
