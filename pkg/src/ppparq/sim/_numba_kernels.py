"""Compiled Monte Carlo kernels.

Interferers are generated in order of increasing distance: the squared
radii are the arrival times of a Poisson process of rate lam*pi, so the
count inside radius R is Poisson(lam*pi*R^2) and positions are uniform on
the disk.  Outage tests stop as soon as the partial interference sum
already exceeds the threshold.
"""
import os

import numpy as np
import numba
from numba import config, njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # avoids probing an outdated system TBB; results never depend on the layer
    config.THREADING_LAYER = "workqueue"

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_TWO_M53 = 2.0**-53


@njit(inline="always")
def _mix(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(inline="always")
def _trial_state(key, t):
    return _mix(key ^ _mix((np.uint64(t) + _ONE) * _GAMMA))


@njit(inline="always")
def _next_exp(state):
    state = state + _GAMMA
    z = _mix(state)
    u = (np.float64(z >> _S11) + 0.5) * _TWO_M53
    return state, -np.log(u)


@njit(inline="always")
def _path_gain(r2, half_alpha):
    if half_alpha == 2.0:
        inv = 1.0 / r2
        return inv * inv
    return r2 ** (-half_alpha)


@njit(cache=True)
def _attempt(state, inv_lam_pi, r2max, half_alpha, scale):
    """One transmission; True on outage.  Outage iff I >= g0 * scale."""
    state, g0 = _next_exp(state)
    thr = g0 * scale
    if inv_lam_pi == 0.0:
        return state, False
    acc = 0.0
    arrivals = 0.0
    while True:
        state, e = _next_exp(state)
        arrivals += e
        r2 = arrivals * inv_lam_pi
        if r2 > r2max:
            return state, False
        state, g = _next_exp(state)
        acc += g * _path_gain(r2, half_alpha)
        if acc >= thr:
            return state, True


def _interference(key, n, inv_lam_pi, r2max, half_alpha):
    total = np.zeros(n)
    counts = np.zeros(n, dtype=np.int64)
    if inv_lam_pi == 0.0:
        return total, counts
    for t in prange(n):
        state = _trial_state(key, t)
        acc = 0.0
        arrivals = 0.0
        c = 0
        while True:
            state, e = _next_exp(state)
            arrivals += e
            r2 = arrivals * inv_lam_pi
            if r2 > r2max:
                break
            state, g = _next_exp(state)
            acc += g * _path_gain(r2, half_alpha)
            c += 1
        total[t] = acc
        counts[t] = c
    return total, counts


def _outage_count(key, n, inv_lam_pi, r2max, half_alpha, scale):
    hits = 0
    for t in prange(n):
        state = _trial_state(key, t)
        state, out = _attempt(state, inv_lam_pi, r2max, half_alpha, scale)
        if out:
            hits += 1
    return hits


def _arq(key, n, m, inv_lam_pi, r2max, half_alpha, scale):
    successes = 0
    attempts = 0
    for i in prange(n):
        state = _trial_state(key, i)
        used = 0
        ok = 0
        for _ in range(m + 1):
            used += 1
            state, out = _attempt(state, inv_lam_pi, r2max, half_alpha, scale)
            if not out:
                ok = 1
                break
        successes += ok
        attempts += used
    return successes, attempts


def _twins(fn):
    # parallel build only pays off with more than one thread; prange acts as range otherwise
    return njit(cache=True)(fn), njit(cache=True, parallel=True)(fn)


_TWINS = {f.__name__.lstrip("_"): _twins(f) for f in (_interference, _outage_count, _arq)}


def _pick(name):
    serial, parallel = _TWINS[name]
    return parallel if numba.get_num_threads() > 1 else serial


def interference(key, n, inv_lam_pi, r2max, half_alpha):
    return _pick("interference")(key, n, inv_lam_pi, r2max, half_alpha)


def outage_count(key, n, inv_lam_pi, r2max, half_alpha, scale):
    return _pick("outage_count")(key, n, inv_lam_pi, r2max, half_alpha, scale)


def arq(key, n, m, inv_lam_pi, r2max, half_alpha, scale):
    return _pick("arq")(key, n, m, inv_lam_pi, r2max, half_alpha, scale)
