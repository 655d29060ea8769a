"""Monte Carlo oracle for the Poisson-field link.

The hot loops live in two interchangeable kernel modules.  The compiled
(numba) one is used by default; set ``PPPARQ_BACKEND=numpy`` to force the
pure-numpy path.  Both consume identical random streams.
"""
from __future__ import annotations

import importlib
import math
import os
import warnings
from dataclasses import dataclass

import numpy as np

from ..model import NetworkParams, SimEstimate, _check_m, is_unlimited
from .rng import MASK64, TAG_ARQ, TAG_INTERFERENCE, TAG_OUTAGE, stream_key

BACKENDS = ("numba", "numpy")
DEFAULT_RADIUS_FACTOR = 100.0
MAX_TAIL_RATIO = 1e-3


def get_kernels(name: str):
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")
    return importlib.import_module(f"._{name}_kernels", __name__)


def _select_backend():
    wanted = os.environ.get("PPPARQ_BACKEND", "numba").strip().lower() or "numba"
    if wanted == "numba":
        try:
            return wanted, get_kernels("numba")
        except ImportError:
            warnings.warn("numba unavailable, falling back to the numpy kernels")
            return "numpy", get_kernels("numpy")
    return wanted, get_kernels(wanted)


BACKEND, _kernels = _select_backend()


@dataclass(frozen=True)
class SimConfig:
    """Trial count, truncation radius of the interferer disk, and seed.

    ``disk_radius=None`` means 100 reference-link lengths.
    """

    trials: int = 100_000
    disk_radius: float | None = None
    rng_seed: int = 42

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials!r}")
        if self.disk_radius is not None and not (self.disk_radius > 0):
            raise ValueError(f"disk_radius must be > 0, got {self.disk_radius!r}")
        if not (0 <= self.rng_seed <= MASK64):
            raise ValueError(f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed!r}")

    def radius(self, params: NetworkParams) -> float:
        """Resolved truncation radius, checked against the far-field tail bound."""
        r = DEFAULT_RADIUS_FACTOR * params.r0 if self.disk_radius is None else self.disk_radius
        if not r > params.r0:
            raise ValueError(f"disk_radius={r} must exceed r0={params.r0}")
        tail = truncation_tail_ratio(params, r)
        if tail >= MAX_TAIL_RATIO:
            raise ValueError(
                f"disk_radius={r} leaves {tail:.3g} of the mean interference outside the disk "
                f"(limit {MAX_TAIL_RATIO}); use a larger radius"
            )
        return r


@dataclass(frozen=True)
class ArqTrace:
    messages: int
    successes: int
    total_attempts: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.messages

    @property
    def mean_attempts(self) -> float:
        return self.total_attempts / self.messages


def truncation_tail_ratio(params: NetworkParams, radius: float) -> float:
    """Mean interference from beyond ``radius`` relative to that from the r0..radius annulus.

    Tail mean is lam 2 pi R^(2-alpha) / (alpha - 2); the annulus is used as the
    reference because the full-disk mean diverges at the origin.
    """
    return 1.0 / ((radius / params.r0) ** (params.alpha - 2) - 1.0)


def _geometry(params, config):
    r = config.radius(params)
    # interferer squared radii arrive as a Poisson process of rate lam * pi
    inv_lam_pi = 1.0 / (params.lam * math.pi) if params.lam > 0 else 0.0
    return inv_lam_pi, r * r, params.alpha / 2.0


def _scale(params, beta):
    # outage iff I >= g0 * r0^-alpha / (beta * W_p/W_s)
    return params.r0 ** (-params.alpha) / (beta * params.power_ratio)


def sample_interference(params: NetworkParams, config: SimConfig, return_counts: bool = False):
    """``config.trials`` independent draws of the aggregate interference sum(g_i r_i^-alpha)."""
    inv_lam_pi, r2max, half_alpha = _geometry(params, config)
    key = np.uint64(stream_key(config.rng_seed, TAG_INTERFERENCE))
    total, counts = _kernels.interference(key, config.trials, inv_lam_pi, r2max, half_alpha)
    return (total, counts) if return_counts else total


def estimate_outage(params: NetworkParams, beta: float, config: SimConfig) -> SimEstimate:
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta!r}")
    inv_lam_pi, r2max, half_alpha = _geometry(params, config)
    key = np.uint64(stream_key(config.rng_seed, TAG_OUTAGE))
    hits = int(_kernels.outage_count(key, config.trials, inv_lam_pi, r2max, half_alpha, _scale(params, beta)))
    p = hits / config.trials
    return SimEstimate(value=p, trials=config.trials, ci_half_width=3.0 * math.sqrt(p * (1 - p) / config.trials))


def simulate_arq(params: NetworkParams, beta: float, m: int, messages: int, config: SimConfig) -> ArqTrace:
    """Truncated ARQ: every attempt sees fresh fading and a fresh interferer field."""
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta!r}")
    _check_m(m)
    if is_unlimited(m):
        raise ValueError("simulate_arq needs a finite retransmission cap")
    if messages < 1:
        raise ValueError(f"messages must be >= 1, got {messages!r}")
    inv_lam_pi, r2max, half_alpha = _geometry(params, config)
    key = np.uint64(stream_key(config.rng_seed, TAG_ARQ))
    s, a = _kernels.arq(key, messages, int(m), inv_lam_pi, r2max, half_alpha, _scale(params, beta))
    return ArqTrace(messages=messages, successes=int(s), total_attempts=int(a))


__all__ = [
    "BACKEND",
    "ArqTrace",
    "SimConfig",
    "estimate_outage",
    "get_kernels",
    "sample_interference",
    "simulate_arq",
    "truncation_tail_ratio",
]
