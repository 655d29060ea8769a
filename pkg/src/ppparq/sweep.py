"""Parameter sweeps over interferer density or drop budget, and their CSV form."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .analytic import evaluate_point
from .model import UNLIMITED, ArqPolicy, EnergyParams, NetworkParams, is_unlimited
from .optimizer import DEFAULT_SEARCH_CAP, m_star, unconstrained_beta_opt

AXES = ("lambda", "epsilon")


class SchemaError(ValueError):
    pass


def quantize(x: float) -> float:
    """Round to the 12 significant digits written to CSV."""
    return float(format(x, ".12g"))


@dataclass(frozen=True)
class Mode:
    m_cap: float  # UNLIMITED or natural

    @property
    def label(self) -> str:
        return "unlimited" if is_unlimited(self.m_cap) else f"limited({int(self.m_cap)})"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        t = text.strip().lower().replace(" ", "")
        if t == "unlimited":
            return cls(UNLIMITED)
        for prefix, suffix in (("limited(", ")"), ("limited:", "")):
            if t.startswith(prefix) and t.endswith(suffix):
                body = t[len(prefix): len(t) - len(suffix)]
                if body.isdigit():
                    return cls(int(body))
        raise ValueError(f"bad mode {text!r}; expected 'unlimited', 'limited(M)' or 'limited:M'")


@dataclass(frozen=True)
class SweepSpec:
    """``series`` holds values of the parameter that is not swept (one curve each)."""

    axis: str
    values: tuple
    series: tuple
    modes: tuple
    network: NetworkParams
    energy: EnergyParams = EnergyParams()
    search_cap: int = DEFAULT_SEARCH_CAP

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.values:
            raise ValueError("values must be nonempty")
        if any(v <= 0 for v in self.values) or any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("values must be positive and strictly increasing")
        if not self.series:
            raise ValueError("series must be nonempty")
        if not self.modes:
            raise ValueError("modes must be nonempty")

    def point(self, value, other):
        lam, eps = (value, other) if self.axis == "lambda" else (other, value)
        return self.network.with_lambda(lam), eps


@dataclass(frozen=True)
class SweepRow:
    axis: str
    value: float
    series: float
    mode: str
    m_used: float
    beta_star: float
    p_out: float
    attempts: float
    throughput: float
    pc_worstcase: float
    pc_expected: float
    ee_worstcase: float
    ee_expected: float


COLUMNS = tuple(f.name for f in fields(SweepRow))
NUMERIC = COLUMNS[4:]


def evaluate_row(spec: SweepSpec, value: float, other: float, mode: Mode) -> SweepRow:
    params, eps = spec.point(value, other)
    policy = ArqPolicy(mode.m_cap, eps)
    if is_unlimited(mode.m_cap):
        opt = unconstrained_beta_opt(params)
    else:
        opt = m_star(params, policy, spec.search_cap)
    worst = evaluate_point(params, policy, spec.energy, opt.beta_star, opt.m_star, "worst-case")
    mean = evaluate_point(params, policy, spec.energy, opt.beta_star, opt.m_star, "expected")
    q = quantize
    return SweepRow(
        axis=spec.axis,
        value=q(value),
        series=q(other),
        mode=mode.label,
        m_used=opt.m_star if is_unlimited(opt.m_star) else float(opt.m_star),
        beta_star=q(opt.beta_star),
        p_out=q(worst.p_out),
        attempts=q(worst.expected_attempts),
        throughput=q(worst.throughput),
        pc_worstcase=q(worst.pc),
        pc_expected=q(mean.pc),
        ee_worstcase=q(worst.ee),
        ee_expected=q(mean.ee),
    )


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Rows ordered series-major, then mode, then axis value."""
    return [
        evaluate_row(spec, v, s, mode)
        for s in spec.series
        for mode in spec.modes
        for v in spec.values
    ]


def log_grid(start: float, stop: float, num: int) -> tuple:
    return tuple(quantize(v) for v in np.logspace(math.log10(start), math.log10(stop), num))


FIG_LAMBDAS = log_grid(0.005, 0.5, 60)
FIG_EPSILONS = (0.001, 0.01, 0.1)
# ten points per decade so that 0.001, 0.01 and 0.1 are grid points
FIG4_EPSILONS = tuple(quantize(10.0**e) for e in np.linspace(-3.0, -0.5, 26))
FIG4_LAMBDAS = (0.05, 0.1, 0.2, 0.3)

# preset -> (spec kwargs, default plotted quantity)
PRESETS = {
    "fig2": (dict(axis="lambda", values=FIG_LAMBDAS, series=FIG_EPSILONS,
                  modes=(Mode(5), Mode(UNLIMITED))), "pc"),
    "fig3": (dict(axis="lambda", values=FIG_LAMBDAS, series=FIG_EPSILONS,
                  modes=(Mode(5), Mode(UNLIMITED))), "ee"),
    "fig4": (dict(axis="epsilon", values=FIG4_EPSILONS, series=FIG4_LAMBDAS,
                  modes=(Mode(5),)), "ee"),
}


def preset_spec(name: str, network: NetworkParams | None = None, energy: EnergyParams | None = None) -> SweepSpec:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    kwargs, _ = PRESETS[name]
    return SweepSpec(
        network=network or NetworkParams(alpha=4.0, r0=1.0, lam=0.1),
        energy=energy or EnergyParams(),
        **kwargs,
    )


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if math.isinf(x):
        return "inf"
    return format(x, ".12g")


def write_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(x) for x in astuple(r)])


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def parse_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != COLUMNS:
        raise SchemaError(f"CSV header must be {','.join(COLUMNS)}")
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(COLUMNS):
            raise SchemaError(f"line {lineno}: expected {len(COLUMNS)} fields, got {len(rec)}")
        try:
            rows.append(SweepRow(rec[0], float(rec[1]), float(rec[2]), rec[3], *(float(x) for x in rec[4:])))
        except ValueError as exc:
            raise SchemaError(f"line {lineno}: {exc}") from None
    if not rows:
        raise SchemaError("CSV has no data rows")
    return rows


def read_csv(path) -> list[SweepRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_csv(fh.read())
