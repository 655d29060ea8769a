"""Outage, throughput and energy efficiency of a truncated-ARQ link under Poisson-field interference."""
from .analytic import (
    energy_efficiency,
    evaluate_point,
    expected_attempts,
    outage_probability,
    power_consumption,
    success_probability,
    throughput,
)
from .model import (
    UNLIMITED,
    ArqPolicy,
    EnergyParams,
    LinkReport,
    NetworkParams,
    SimEstimate,
    geometry_constant,
)
from .optimizer import OptimalPoint, ZeroDensityError, beta_star, m_star, unconstrained_beta_opt

__version__ = "0.1.0"
