import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppparq import (
    UNLIMITED,
    ArqPolicy,
    EnergyParams,
    NetworkParams,
    energy_efficiency,
    evaluate_point,
    expected_attempts,
    outage_probability,
    power_consumption,
    success_probability,
    throughput,
)

from .conftest import (
    ATTEMPTS_M5,
    BETA_STAR_M5,
    EE_M5,
    P_OUT_AT_ONE,
    P_OUT_M5,
    PC_EXPECTED_M5,
    PC_WORST_M5,
    T_M5,
)


def attempts_by_enumeration(p, m):
    """Mean of min(first success, m + 1) summed over the outcome distribution."""
    probs = [p ** (j - 1) * (1 - p) for j in range(1, m + 1)] + [p**m]
    return sum(j * q for j, q in zip(range(1, m + 2), probs))


# -- outage --

def test_outage_examples(ref_net):
    assert outage_probability(ref_net.with_lambda(0.0), 3.7) == 0.0
    assert outage_probability(ref_net, 1.0) == pytest.approx(P_OUT_AT_ONE, rel=1e-13)
    vals = [outage_probability(ref_net, b) for b in (1e-2, 1e-4, 1e-8, 1e-12)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-5


@pytest.mark.parametrize("beta", [0.0, -1.0, math.inf, math.nan])
def test_outage_rejects_bad_beta(ref_net, beta):
    with pytest.raises(ValueError):
        outage_probability(ref_net, beta)


def test_outage_monotone_on_grid():
    lams = np.linspace(0.01, 0.5, 10)
    betas = np.geomspace(0.01, 10, 10)
    grid = np.array([[outage_probability(NetworkParams(4, 1, lam), b) for b in betas] for lam in lams])
    assert np.all(np.diff(grid, axis=0) > 0)
    assert np.all(np.diff(grid, axis=1) > 0)


@pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
@given(lam=st.floats(1e-3, 1.0), beta=st.floats(1e-3, 100.0), alpha=st.floats(2.2, 6.0))
def test_outage_scaling_invariance(c, lam, beta, alpha):
    p1 = outage_probability(NetworkParams(alpha, 1, lam), beta)
    p2 = outage_probability(NetworkParams(alpha, 1, c * lam), beta / c ** (alpha / 2))
    assert p2 == pytest.approx(p1, rel=1e-12)


# -- success and attempts --

def test_success_examples():
    assert success_probability(0.0, 0) == 1.0
    assert success_probability(0.5, 1) == 0.75
    assert success_probability(0.68129, 5) == pytest.approx(0.9, abs=2e-6)
    assert success_probability(0.3, UNLIMITED) == 1.0


def test_expected_attempts_examples():
    assert expected_attempts(0.0, 5) == 1.0
    assert expected_attempts(0.5, 1) == 1.5
    assert expected_attempts(P_OUT_M5, 5) == pytest.approx(ATTEMPTS_M5, rel=1e-13)
    assert expected_attempts(0.68129, 5) == pytest.approx(2.8239, abs=1e-4)
    assert expected_attempts(0.25, UNLIMITED) == pytest.approx(4 / 3, rel=1e-15)


@pytest.mark.parametrize("p", [1.0, 1.2, -0.1])
def test_expected_attempts_rejects(p):
    with pytest.raises(ValueError):
        expected_attempts(p, 3)


@given(p=st.floats(0.0, 0.999), m=st.integers(0, 40))
def test_expected_attempts_matches_enumeration(p, m):
    assert expected_attempts(p, m) == pytest.approx(attempts_by_enumeration(p, m), rel=1e-10)


@given(p=st.floats(0.05, 0.99), m=st.integers(0, 10))
def test_expected_attempts_bounds_and_monotonicity(p, m):
    a = expected_attempts(p, m)
    assert 1.0 <= a <= m + 1
    assert expected_attempts(p, m + 1) > a
    assert expected_attempts(min(0.995, p + 0.005), m) >= a
    if m > 0:
        assert expected_attempts(min(0.995, p * 1.01), m) > a


# -- throughput --

def test_throughput_examples(ref_net):
    assert throughput(ref_net.with_lambda(0.0), 1.0, 0) == 1.0
    # saturated outage still yields a tiny positive throughput
    assert 0 < throughput(ref_net.with_lambda(1.0), 1e4, 3) < 1e-100
    assert throughput(ref_net, BETA_STAR_M5, 5) == pytest.approx(T_M5, rel=1e-12)
    assert throughput(ref_net, 5.3686, 5) == pytest.approx(0.8513, abs=1e-4)
    beta = 2.5
    p = outage_probability(ref_net, beta)
    assert throughput(ref_net, beta, 0) == pytest.approx(math.log2(1 + beta) * (1 - p), rel=1e-14)


@given(lam=st.floats(0, 1.0), beta=st.floats(1e-4, 1e4), m=st.integers(0, 20))
def test_throughput_bounds(lam, beta, m):
    t = throughput(NetworkParams(4, 1, lam), beta, m)
    assert 0 <= t <= math.log2(1 + beta) * (1 + 1e-12)


def test_concave_near_unconstrained_optimum(ref_net):
    from ppparq import unconstrained_beta_opt

    for lam in (0.01, 0.1, 0.3):
        net = ref_net.with_lambda(lam)
        b = unconstrained_beta_opt(net).beta_star
        for m in (0, 3, 8):
            for x in (0.5 * b, b, 1.2 * b):
                h = 1e-4 * x
                d2 = throughput(net, x + h, m) - 2 * throughput(net, x, m) + throughput(net, x - h, m)
                assert d2 < 0


# -- power and efficiency --

def test_power_consumption_examples(ref_energy):
    assert power_consumption(ref_energy, BETA_STAR_M5, 6) == pytest.approx(PC_WORST_M5, rel=1e-12)
    assert power_consumption(ref_energy, BETA_STAR_M5, 6) == pytest.approx(506.4, abs=0.05)
    assert power_consumption(EnergyParams(0, 0, 1), 1.0, 1) == 1.0
    assert power_consumption(ref_energy, BETA_STAR_M5, ATTEMPTS_M5) == pytest.approx(PC_EXPECTED_M5, rel=1e-12)
    assert PC_EXPECTED_M5 == pytest.approx(238.3, abs=0.05)


def test_power_consumption_rejects(ref_energy):
    with pytest.raises(ValueError):
        power_consumption(ref_energy, 0.0, 1)
    with pytest.raises(ValueError):
        power_consumption(ref_energy, 1.0, 0.5)


@given(beta=st.floats(1e-3, 1e3), a=st.floats(1, 20), tx=st.floats(0, 500), rx=st.floats(0, 500))
def test_power_consumption_monotone(beta, a, tx, rx):
    base = power_consumption(EnergyParams(tx, rx, 0.35), beta, a)
    assert power_consumption(EnergyParams(tx, rx, 0.35), beta, a + 0.5) > base
    assert power_consumption(EnergyParams(tx + 1, rx, 0.35), beta, a) > base
    assert power_consumption(EnergyParams(tx, rx + 1, 0.35), beta, a) > base


def test_energy_efficiency_examples():
    assert energy_efficiency(0.0, 12.0) == 0.0
    assert energy_efficiency(T_M5, PC_WORST_M5) == pytest.approx(EE_M5, rel=1e-12)
    assert energy_efficiency(0.8513, 506.4) == pytest.approx(1.681e-3, abs=5e-7)
    assert energy_efficiency(1.0, 1.0) == 1.0
    for bad in (0.0, -1.0):
        with pytest.raises(ValueError):
            energy_efficiency(1.0, bad)


# -- composition --

def test_evaluate_point_chain(ref_net, ref_policy, ref_energy):
    rep = evaluate_point(ref_net, ref_policy, ref_energy, BETA_STAR_M5, 5)
    assert rep.p_out == pytest.approx(P_OUT_M5, rel=1e-13)
    assert rep.expected_attempts == pytest.approx(ATTEMPTS_M5, rel=1e-12)
    assert rep.throughput == pytest.approx(T_M5, rel=1e-12)
    assert rep.pc == pytest.approx(PC_WORST_M5, rel=1e-12)
    assert rep.ee == pytest.approx(EE_M5, rel=1e-12)
    assert rep.feasible
    mean = evaluate_point(ref_net, ref_policy, ref_energy, BETA_STAR_M5, 5, pc_model="expected")
    assert mean.pc == pytest.approx(PC_EXPECTED_M5, rel=1e-12)


def test_evaluate_point_zero_density(ref_policy, ref_energy):
    rep = evaluate_point(NetworkParams(4, 1, 0.0), ref_policy, ref_energy, 1.0, 0)
    assert (rep.p_out, rep.expected_attempts, rep.throughput) == (0.0, 1.0, 1.0)


def test_evaluate_point_rejects_m_above_cap(ref_net, ref_policy, ref_energy):
    with pytest.raises(ValueError):
        evaluate_point(ref_net, ref_policy, ref_energy, 1.0, 6)


def test_unlimited_worst_case_charges_expected_attempts(ref_net, ref_energy):
    pol = ArqPolicy(UNLIMITED, 0.1)
    w = evaluate_point(ref_net, pol, ref_energy, 2.0, UNLIMITED, "worst-case")
    e = evaluate_point(ref_net, pol, ref_energy, 2.0, UNLIMITED, "expected")
    assert w.pc == e.pc and math.isfinite(w.pc)
    assert w.expected_attempts == pytest.approx(1 / (1 - w.p_out))


def test_attempts_model_unlimited_changes_only_denominator(ref_net, ref_policy, ref_energy):
    rep = evaluate_point(ref_net, ref_policy, ref_energy, 2.0, 3, attempts_model="unlimited")
    assert rep.expected_attempts == pytest.approx(1 / (1 - rep.p_out))


@settings(max_examples=200)
@given(
    lam=st.floats(0, 0.5),
    beta=st.floats(1e-3, 100.0),
    m=st.integers(0, 12),
    model=st.sampled_from(["worst-case", "expected"]),
)
def test_report_fields_rederive(lam, beta, m, model):
    net = NetworkParams(4, 1, lam)
    en = EnergyParams()
    rep = evaluate_point(net, ArqPolicy(12, 0.1), en, beta, m, pc_model=model)
    assert 0 <= rep.p_out < 1
    assert 1 <= rep.expected_attempts <= m + 1
    if rep.p_out < 0.999:  # beyond this, 1 - p_out itself is ill-conditioned
        assert rep.expected_attempts == pytest.approx(expected_attempts(rep.p_out, m), rel=1e-9)
    assert rep.ee * rep.pc == pytest.approx(rep.throughput, rel=1e-12, abs=1e-300)
    assert rep.p_out == pytest.approx(outage_probability(net, beta), rel=1e-12)
    assert rep.throughput == pytest.approx(throughput(net, beta, m), rel=1e-12)
    a = m + 1 if model == "worst-case" else rep.expected_attempts
    assert rep.pc == pytest.approx(power_consumption(en, beta, a), rel=1e-12)
