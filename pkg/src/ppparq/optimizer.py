"""Throughput maximization under a message-drop budget.

For a finite cap m the drop probability P_out(beta)**(1 + m) <= epsilon bounds
beta from above by the closed form :func:`beta_star`.  Throughput as a
function of beta alone has a single interior maximum (the unlimited-retry
optimum); the constrained optimum for a given m is whichever of the two
is smaller.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .analytic import outage_probability, throughput
from .model import UNLIMITED, ArqPolicy, NetworkParams, _check_m, geometry_constant, is_unlimited

INV_PHI = (math.sqrt(5) - 1) / 2
BETA_FLOOR = 1e-9
DEFAULT_SEARCH_CAP = 64
TIE_RTOL = 1e-12


class ZeroDensityError(ValueError):
    """Raised when an optimum is requested for an interference-free link."""


@dataclass(frozen=True)
class OptimalPoint:
    beta_star: float
    m_star: float
    t_star: float
    constraint_active: bool


def _require_interference(params):
    if params.lam == 0:
        raise ZeroDensityError("lambda = 0: throughput grows without bound in beta, no finite optimum")


def beta_star(params: NetworkParams, epsilon: float, m: int) -> float:
    """Largest SIR threshold whose drop probability equals ``epsilon``."""
    _require_interference(params)
    if not (0 < epsilon < 1):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    _check_m(m)
    if is_unlimited(m):
        raise ValueError("beta_star needs a finite retransmission cap")
    # 1 - eps**(1/(m+1)) without cancellation for large m
    slack = -math.expm1(math.log(epsilon) / (m + 1))
    x = -math.log(slack) / (geometry_constant(params) * params.lam)
    return x ** (params.alpha / 2.0)


def drop_probability(params: NetworkParams, beta: float, m) -> float:
    return outage_probability(params, beta) ** (1 + m)


def golden_section_max(f, lo, hi, rtol=1e-10, max_iter=500):
    """Maximizer of a unimodal ``f`` on [lo, hi]; stops at relative bracket width ``rtol``."""
    a, b = min(lo, hi), max(lo, hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= rtol * abs(c + d) / 2:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return c if fc >= fd else d


def _bracket_top(objective):
    hi = 1.0
    while objective(2 * hi) > objective(hi) and hi < 1e300:
        hi *= 2
    return 2 * hi


def unconstrained_beta_opt(params: NetworkParams, beta_hi: float | None = None) -> OptimalPoint:
    """Throughput-optimal threshold when retries are unlimited (no drop constraint)."""
    _require_interference(params)

    def objective(b):
        return throughput(params, b, UNLIMITED)

    hi = _bracket_top(objective) if beta_hi is None else beta_hi
    b = golden_section_max(objective, BETA_FLOOR, hi)
    return OptimalPoint(beta_star=b, m_star=UNLIMITED, t_star=objective(b), constraint_active=False)


def m_star(params: NetworkParams, policy: ArqPolicy, search_cap: int = DEFAULT_SEARCH_CAP) -> OptimalPoint:
    """Best (beta, m) over m in 0..min(m_cap, search_cap).

    Ties within a relative 1e-12 go to the smaller m.
    """
    _require_interference(params)
    if search_cap < 0:
        raise ValueError("search range is empty: search_cap < 0")
    top = int(min(policy.m_cap, search_cap))
    free = unconstrained_beta_opt(params).beta_star
    best = None
    for m in range(top + 1):
        b = beta_star(params, policy.epsilon, m)
        active = b <= free
        if not active:
            b = free
        t = throughput(params, b, m)
        if best is None or t > best.t_star * (1 + TIE_RTOL):
            best = OptimalPoint(beta_star=b, m_star=m, t_star=t, constraint_active=active)
    return best
