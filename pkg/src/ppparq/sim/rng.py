"""Counter-based random streams (SplitMix64).

Every trial owns a substream whose starting state is a hash of
(seed, purpose tag, trial index).  Results therefore do not depend on how
trials are chunked, ordered or spread over threads.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
TAG_MULT = 0xD1B54A32D192ED03
TWO_M53 = 2.0**-53

# purpose tags
TAG_INTERFERENCE = 1
TAG_OUTAGE = 2
TAG_ARQ = 3


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, tag: int) -> int:
    if seed < 0 or seed > MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return mix64(mix64(seed) ^ ((tag * TAG_MULT) & MASK64))


# -- vectorized versions (uint64 arrays wrap silently) --

_U = np.uint64


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U(30))) * _U(MIX1)
    z = (z ^ (z >> _U(27))) * _U(MIX2)
    return z ^ (z >> _U(31))


def trial_states(key: int, start: int, stop: int) -> np.ndarray:
    t = np.arange(start + 1, stop + 1, dtype=np.uint64)
    return mix64_array(_U(key) ^ mix64_array(t * _U(GAMMA)))


def next_exponential(states: np.ndarray):
    """Advance every state once; return (new_states, Exp(1) draws > 0)."""
    states = states + _U(GAMMA)
    z = mix64_array(states)
    u = ((z >> _U(11)).astype(np.float64) + 0.5) * TWO_M53
    return states, -np.log(u)
