"""Parameter types and the interference geometry constant.

All types are frozen dataclasses validated on construction, so a value that
exists is a value that is usable by every other module.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

#: Retransmission cap meaning "retry until success".  ``p ** (UNLIMITED + 1)``
#: evaluates to 0 for ``p < 1``, which is exactly the analytic limit.
UNLIMITED = math.inf


def is_unlimited(m) -> bool:
    return m == UNLIMITED


def _check_m(m, name="m"):
    if is_unlimited(m):
        return
    if isinstance(m, bool) or not isinstance(m, numbers.Real) or m != int(m):
        raise ValueError(f"{name} must be a natural number or UNLIMITED, got {m!r}")
    if m < 0:
        raise ValueError(f"{name} must be >= 0, got {m!r}")


@dataclass(frozen=True)
class NetworkParams:
    """Reference link and interferer field.

    ``power_ratio`` is the licensed-to-unlicensed transmit power ratio
    W_p / W_s; the default of 1 reproduces the published figures.
    """

    alpha: float
    r0: float
    lam: float
    power_ratio: float = 1.0

    def __post_init__(self):
        if not (self.alpha > 2):
            raise ValueError(f"alpha must be > 2, got {self.alpha!r}")
        if not (self.r0 > 0):
            raise ValueError(f"r0 must be > 0, got {self.r0!r}")
        if not (self.lam >= 0) or math.isinf(self.lam):
            raise ValueError(f"lambda must be finite and >= 0, got {self.lam!r}")
        if not (self.power_ratio > 0):
            raise ValueError(f"power_ratio must be > 0, got {self.power_ratio!r}")

    def with_lambda(self, lam: float) -> "NetworkParams":
        return NetworkParams(self.alpha, self.r0, lam, self.power_ratio)


@dataclass(frozen=True)
class ArqPolicy:
    """Retransmission cap and the tolerated message-drop probability."""

    m_cap: float = UNLIMITED
    epsilon: float = 0.1

    def __post_init__(self):
        _check_m(self.m_cap, "m_cap")
        if not (0 < self.epsilon < 1):
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")


@dataclass(frozen=True)
class EnergyParams:
    """Circuit powers in mW and power-amplifier drain efficiency."""

    pc_tx: float = 97.9
    pc_rx: float = 112.2
    zeta: float = 0.35

    def __post_init__(self):
        if not (self.pc_tx >= 0):
            raise ValueError(f"pc_tx must be >= 0, got {self.pc_tx!r}")
        if not (self.pc_rx >= 0):
            raise ValueError(f"pc_rx must be >= 0, got {self.pc_rx!r}")
        if not (0 < self.zeta <= 1):
            raise ValueError(f"zeta must lie in (0, 1], got {self.zeta!r}")


@dataclass(frozen=True)
class LinkReport:
    beta: float
    m_used: float
    p_out: float
    expected_attempts: float
    throughput: float
    pc: float
    ee: float
    pc_model: str = "worst-case"
    feasible: bool = True  # p_out ** (1 + m_used) <= epsilon


@dataclass(frozen=True)
class SimEstimate:
    value: float
    trials: int
    ci_half_width: float

    def __post_init__(self):
        if self.trials <= 0:
            raise ValueError("trials must be positive")
        if self.ci_half_width < 0:
            raise ValueError("ci_half_width must be >= 0")

    def covers(self, expected: float) -> bool:
        return abs(self.value - expected) <= self.ci_half_width


def geometry_constant(params: NetworkParams) -> float:
    """Outage exponent constant k with P_out = 1 - exp(-k * lam * beta**(2/alpha)).

    k = pi r0^2 Gamma(1 - 2/alpha) Gamma(1 + 2/alpha) (W_p/W_s)^(2/alpha)
    """
    delta = 2.0 / params.alpha
    return (
        math.pi
        * params.r0**2
        * math.gamma(1.0 - delta)
        * math.gamma(1.0 + delta)
        * params.power_ratio**delta
    )
