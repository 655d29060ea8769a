import pytest

from ppparq import ArqPolicy, EnergyParams, NetworkParams

# 40-digit mpmath evaluations at alpha=4, r0=1, lambda=0.1, epsilon=0.1, m=5
K_REFERENCE = 4.934802200544679309
BETA_STAR_M5 = 5.369301329884524962
BETA_STAR_M0 = 0.04558440343441089763
P_OUT_AT_ONE = 0.3895019747342028350
P_OUT_M5 = 0.6812920690579612855
ATTEMPTS_M5 = 2.823902114201472434
T_M5 = 0.8513119496190443373
PC_WORST_M5 = 506.3933875680022182
PC_EXPECTED_M5 = 238.3342262951545152
EE_M5 = 0.001681127697396569825


@pytest.fixture
def ref_net():
    return NetworkParams(alpha=4.0, r0=1.0, lam=0.1)


@pytest.fixture
def ref_energy():
    return EnergyParams(pc_tx=97.9, pc_rx=112.2, zeta=0.35)


@pytest.fixture
def ref_policy():
    return ArqPolicy(m_cap=5, epsilon=0.1)
