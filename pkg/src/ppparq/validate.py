"""Cross-check of the closed forms against the Monte Carlo simulator.

Each check yields one report line.  A verdict is ``pass``, ``fail``, or
``wide`` when the sample is too small for the check to be conclusive; only
``fail`` makes the run fail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import sim
from .analytic import expected_attempts, outage_probability, success_probability
from .model import NetworkParams
from .optimizer import beta_star
from .sim import SimConfig, estimate_outage, simulate_arq, truncation_tail_ratio

DEFAULT_LAMBDAS = (0.01, 0.1, 0.3)
DEFAULT_BETAS = (0.5, 1.0, 2.0)
GRID_PASS_FRACTION = 8 / 9
ARQ_M = 5
ARQ_EPSILON = 0.1
ARQ_LAMBDA = 0.1
ATTEMPTS_RTOL = 0.01


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    observed: str
    tolerance: str
    verdict: str

    def line(self) -> str:
        return "\t".join((self.name, self.expected, self.observed, self.tolerance, self.verdict))


def _g(x) -> str:
    return format(x, ".10g")


def _attempts_sd(p, m):
    """Standard deviation of the attempt count under truncated ARQ."""
    probs = [p ** (j - 1) * (1 - p) for j in range(1, m + 1)] + [p**m]
    mean = sum(j * q for j, q in zip(range(1, m + 2), probs))
    return math.sqrt(sum((j - mean) ** 2 * q for j, q in zip(range(1, m + 2), probs)))


def run_validation(
    lambdas=DEFAULT_LAMBDAS,
    betas=DEFAULT_BETAS,
    trials: int = 100_000,
    messages: int | None = None,
    seed: int = 42,
    alpha: float = 4.0,
    r0: float = 1.0,
    power_ratio: float = 1.0,
    disk_radius: float | None = None,
    max_ci: float = 0.02,
) -> list[Check]:
    """``max_ci`` is the widest 3-sigma half-width (from the analytic p) still deemed conclusive."""
    messages = trials if messages is None else messages
    cfg = SimConfig(trials=trials, disk_radius=disk_radius, rng_seed=seed)
    checks = []

    def wide(p, n):
        return 3 * math.sqrt(p * (1 - p) / n) > max_ci

    # closed-form outage over the grid
    verdicts = []
    for lam in lambdas:
        params = NetworkParams(alpha, r0, lam, power_ratio)
        for beta in betas:
            p = outage_probability(params, beta)
            est = estimate_outage(params, beta, cfg)
            if lam == 0:
                v = "pass" if est.value == 0 else "fail"
            elif wide(p, trials):
                v = "wide"
            else:
                v = "pass" if est.covers(p) else "miss"
            verdicts.append(v)
            checks.append(Check(f"outage[lambda={_g(lam)},beta={_g(beta)}]", _g(p), _g(est.value),
                                _g(est.ci_half_width), v))
    needed = math.ceil(GRID_PASS_FRACTION * len(verdicts) - 1e-9)
    passed = verdicts.count("pass")
    if "fail" in verdicts:
        gv = "fail"
    elif "wide" in verdicts:
        gv = "wide"
    else:
        gv = "pass" if passed >= needed else "fail"
    checks.append(Check("outage_grid", f">={needed}/{len(verdicts)}", f"{passed}/{len(verdicts)}", "3sigma", gv))

    # an empty field never causes outage
    zero = NetworkParams(alpha, r0, 0.0, power_ratio)
    est = estimate_outage(zero, 1.0, cfg)
    checks.append(Check("outage_zero_density", "0", _g(est.value), "0", "pass" if est.value == 0 else "fail"))

    # truncated ARQ at the constraint-active threshold
    params = NetworkParams(alpha, r0, ARQ_LAMBDA, power_ratio)
    b = beta_star(params, ARQ_EPSILON, ARQ_M)
    p = outage_probability(params, b)
    trace = simulate_arq(params, b, ARQ_M, messages, cfg)
    ps = success_probability(p, ARQ_M)
    rate = trace.success_rate
    ci = 3 * math.sqrt(rate * (1 - rate) / messages)
    v = "wide" if wide(ps, messages) else ("pass" if abs(rate - ps) <= ci else "fail")
    checks.append(Check("arq_success", _g(ps), _g(rate), _g(ci), v))

    ea = expected_attempts(p, ARQ_M)
    tol = ATTEMPTS_RTOL * ea
    if 3 * _attempts_sd(p, ARQ_M) / math.sqrt(messages) > tol:
        v = "wide"
    else:
        v = "pass" if abs(trace.mean_attempts - ea) <= tol else "fail"
    checks.append(Check("arq_mean_attempts", _g(ea), _g(trace.mean_attempts), _g(tol), v))

    empty = simulate_arq(zero, b, ARQ_M, min(messages, 1000), cfg)
    ok = empty.successes == empty.messages == empty.total_attempts
    checks.append(Check("arq_zero_density", f"{empty.messages}/{empty.messages}",
                        f"{empty.successes}/{empty.total_attempts}", "0", "pass" if ok else "fail"))

    # disk truncation of the infinite plane
    radius = cfg.radius(params)
    tail = truncation_tail_ratio(params, radius)
    checks.append(Check("truncation_tail", f"<{_g(sim.MAX_TAIL_RATIO)}", _g(tail), "0",
                        "pass" if tail < sim.MAX_TAIL_RATIO else "fail"))
    near = estimate_outage(params, 1.0, cfg)
    far = estimate_outage(params, 1.0, SimConfig(trials=trials, disk_radius=2 * radius, rng_seed=seed))
    diff = abs(far.value - near.value)
    tol = near.ci_half_width + far.ci_half_width
    v = "wide" if wide(outage_probability(params, 1.0), trials) else ("pass" if diff <= tol else "fail")
    checks.append(Check("truncation_radius", _g(near.value), _g(far.value), _g(tol), v))
    return checks


def format_report(checks, seed, trials, messages) -> str:
    head = (f"# ppparq validate seed={seed} trials={trials} messages={messages} backend={sim.BACKEND}\n"
            "name\texpected\tobserved\ttolerance\tverdict\n")
    return head + "".join(c.line() + "\n" for c in checks)


def failed(checks) -> bool:
    return any(c.verdict == "fail" for c in checks)
