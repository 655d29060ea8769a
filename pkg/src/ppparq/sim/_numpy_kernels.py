"""Pure-numpy kernels, draw-for-draw identical to the compiled ones.

Trials are advanced in lockstep, one interferer per step; a trial leaves the
working set once its field is exhausted or its outage is decided.
"""
import numpy as np

from .rng import next_exponential, trial_states

CHUNK = 1 << 16


def _path_gain(r2, half_alpha):
    if half_alpha == 2.0:
        inv = 1.0 / r2
        return inv * inv
    return r2 ** (-half_alpha)


def _attempt(states, inv_lam_pi, r2max, half_alpha, scale):
    states, g0 = next_exponential(states)
    outage = np.zeros(states.size, dtype=bool)
    if inv_lam_pi == 0.0:
        return states, outage
    idx = np.arange(states.size)
    st = states.copy()
    thr = g0 * scale
    acc = np.zeros(states.size)
    arrivals = np.zeros(states.size)
    while idx.size:
        st, e = next_exponential(st)
        arrivals = arrivals + e
        r2 = arrivals * inv_lam_pi
        inside = r2 <= r2max
        if not inside.all():
            states[idx[~inside]] = st[~inside]
            idx, st, arrivals, acc, thr, r2 = (a[inside] for a in (idx, st, arrivals, acc, thr, r2))
        st, g = next_exponential(st)
        acc = acc + g * _path_gain(r2, half_alpha)
        hit = acc >= thr
        if hit.any():
            states[idx[hit]] = st[hit]
            outage[idx[hit]] = True
            keep = ~hit
            idx, st, arrivals, acc, thr = (a[keep] for a in (idx, st, arrivals, acc, thr))
    return states, outage


def _chunks(n):
    for start in range(0, n, CHUNK):
        yield start, min(n, start + CHUNK)


def interference(key, n, inv_lam_pi, r2max, half_alpha):
    total = np.zeros(n)
    counts = np.zeros(n, dtype=np.int64)
    if inv_lam_pi == 0.0:
        return total, counts
    for start, stop in _chunks(n):
        st = trial_states(key, start, stop)
        idx = np.arange(start, stop)
        acc = np.zeros(stop - start)
        arrivals = np.zeros(stop - start)
        c = np.zeros(stop - start, dtype=np.int64)
        while idx.size:
            st, e = next_exponential(st)
            arrivals = arrivals + e
            r2 = arrivals * inv_lam_pi
            inside = r2 <= r2max
            if not inside.all():
                done = ~inside
                total[idx[done]] = acc[done]
                counts[idx[done]] = c[done]
                idx, st, arrivals, acc, c, r2 = (a[inside] for a in (idx, st, arrivals, acc, c, r2))
            st, g = next_exponential(st)
            acc = acc + g * _path_gain(r2, half_alpha)
            c = c + 1
    return total, counts


def outage_count(key, n, inv_lam_pi, r2max, half_alpha, scale):
    hits = 0
    for start, stop in _chunks(n):
        _, out = _attempt(trial_states(key, start, stop), inv_lam_pi, r2max, half_alpha, scale)
        hits += int(out.sum())
    return hits


def arq(key, n, m, inv_lam_pi, r2max, half_alpha, scale):
    successes = 0
    attempts = 0
    for start, stop in _chunks(n):
        states = trial_states(key, start, stop)
        for _ in range(m + 1):
            if not states.size:
                break
            attempts += states.size
            states, out = _attempt(states, inv_lam_pi, r2max, half_alpha, scale)
            successes += int((~out).sum())
            states = states[out]
    return successes, attempts
