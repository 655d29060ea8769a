"""Closed-form link metrics for a fixed operating point (beta, m).

Rates use log base 2 throughout, so throughput is in bits/s/Hz and power
consumption is in mW per unit spectral efficiency.
"""
from __future__ import annotations

import math

from .model import (
    ArqPolicy,
    EnergyParams,
    LinkReport,
    NetworkParams,
    _check_m,
    geometry_constant,
    is_unlimited,
)

PC_MODELS = ("worst-case", "expected")
ATTEMPTS_MODELS = ("exact", "unlimited")


def _check_beta(beta):
    if not (beta > 0) or math.isinf(beta):
        raise ValueError(f"beta must be finite and > 0, got {beta!r}")


def _check_p(p_out):
    if not (0 <= p_out < 1):
        raise ValueError(f"p_out must lie in [0, 1), got {p_out!r}")


def spectral_efficiency(beta: float) -> float:
    return math.log1p(beta) / math.log(2)


def _outage_exponent(params, beta):
    _check_beta(beta)
    return geometry_constant(params) * params.lam * beta ** (2.0 / params.alpha)


def outage_probability(params: NetworkParams, beta: float) -> float:
    return -math.expm1(-_outage_exponent(params, beta))


def success_probability(p_out: float, m) -> float:
    """Probability that at least one of the 1 + m attempts decodes."""
    _check_p(p_out)
    _check_m(m)
    return 1.0 - p_out ** (1 + m)


def expected_attempts(p_out: float, m) -> float:
    """Mean number of transmissions 1 + m_bar under truncated ARQ.

    Each attempt fails independently with probability ``p_out``; the message
    stops at the first success or after ``m + 1`` attempts.
    """
    _check_p(p_out)
    _check_m(m)
    if is_unlimited(m):
        return 1.0 / (1.0 - p_out)
    if p_out == 0:
        return 1.0
    return (1.0 - p_out ** (m + 1)) / (1.0 - p_out)


def _link_terms(params, beta, m, attempts_model="exact"):
    """(p_out, success probability, expected attempts), stable when p_out rounds to 1."""
    if attempts_model not in ATTEMPTS_MODELS:
        raise ValueError(f"unknown attempts model {attempts_model!r}")
    _check_m(m)
    x = _outage_exponent(params, beta)
    p = -math.expm1(-x)
    q = math.exp(-x)
    if x == 0:
        return p, 1.0, 1.0
    if is_unlimited(m):
        return p, 1.0, 1.0 / q
    log_p = math.log1p(-q) if q < 0.5 else math.log(p)
    success = -math.expm1((m + 1) * log_p)
    if attempts_model == "unlimited":
        return p, success, 1.0 / q
    # (1 - p**(m+1)) / (1 - p)
    attempts = min(max(success / q, 1.0), float(m + 1)) if q > 0 else float(m + 1)
    return p, success, attempts


def throughput(params: NetworkParams, beta: float, m, attempts_model: str = "exact") -> float:
    _, success, attempts = _link_terms(params, beta, m, attempts_model)
    return spectral_efficiency(beta) * success / attempts


def power_consumption(energy: EnergyParams, beta: float, attempts: float) -> float:
    """Total consumed power: ``attempts`` rounds of PA plus circuit power per bit rate."""
    _check_beta(beta)
    if not (attempts >= 1):
        raise ValueError(f"attempts must be >= 1, got {attempts!r}")
    per_attempt = beta / energy.zeta + energy.pc_tx + energy.pc_rx
    return attempts * per_attempt / spectral_efficiency(beta)


def energy_efficiency(throughput: float, pc: float) -> float:
    if not (pc > 0):
        raise ValueError(f"pc must be > 0, got {pc!r}")
    if throughput < 0:
        raise ValueError(f"throughput must be >= 0, got {throughput!r}")
    return throughput / pc


def pc_attempts(m, attempts: float, pc_model: str) -> float:
    """Attempt count entering the power sum.

    Worst case charges every one of the m + 1 slots; an unlimited cap has no
    finite worst case, so it is charged the expected count instead.
    """
    if pc_model == "worst-case":
        return attempts if is_unlimited(m) else float(m + 1)
    if pc_model == "expected":
        return attempts
    raise ValueError(f"unknown pc model {pc_model!r}")


def evaluate_point(
    params: NetworkParams,
    policy: ArqPolicy,
    energy: EnergyParams,
    beta: float,
    m,
    pc_model: str = "worst-case",
    attempts_model: str = "exact",
) -> LinkReport:
    _check_beta(beta)
    _check_m(m)
    if m > policy.m_cap:
        raise ValueError(f"m={m} exceeds the policy cap m_cap={policy.m_cap}")
    p, success, attempts = _link_terms(params, beta, m, attempts_model)
    t = spectral_efficiency(beta) * success / attempts
    pc = power_consumption(energy, beta, pc_attempts(m, attempts, pc_model))
    return LinkReport(
        beta=beta,
        m_used=m,
        p_out=p,
        expected_attempts=attempts,
        throughput=t,
        pc=pc,
        ee=energy_efficiency(t, pc),
        pc_model=pc_model,
        # slack absorbs rounding when beta is exactly the closed-form boundary
        feasible=p ** (1 + m) <= policy.epsilon * (1 + 1e-9),
    )
