import math

import pytest

from ppparq import UNLIMITED, EnergyParams, NetworkParams, throughput
from ppparq.sweep import (
    COLUMNS,
    FIG4_EPSILONS,
    FIG_LAMBDAS,
    Mode,
    SchemaError,
    SweepSpec,
    parse_csv,
    preset_spec,
    quantize,
    rows_to_csv,
    run_sweep,
)

NET = NetworkParams(4, 1, 0.1)


@pytest.fixture(scope="module")
def small_rows():
    spec = SweepSpec(axis="lambda", values=(0.01, 0.1, 0.3), series=(0.01, 0.1),
                     modes=(Mode(5), Mode(UNLIMITED)), network=NET)
    return run_sweep(spec)


def test_row_order_and_count(small_rows):
    assert len(small_rows) == 3 * 2 * 2
    keys = [(r.series, r.mode, r.value) for r in small_rows]
    assert keys[:3] == [(0.01, "limited(5)", v) for v in (0.01, 0.1, 0.3)]
    assert keys[3][1] == "unlimited"


def test_rows_are_self_consistent(small_rows):
    for r in small_rows:
        assert r.ee_worstcase == pytest.approx(r.throughput / r.pc_worstcase, rel=1e-9)
        assert r.ee_expected == pytest.approx(r.throughput / r.pc_expected, rel=1e-9)
        assert r.throughput == pytest.approx(throughput(NET.with_lambda(r.value), r.beta_star, r.m_used), rel=1e-9)
        assert r.pc_worstcase >= r.pc_expected
        if r.mode == "unlimited":
            assert math.isinf(r.m_used)
        else:
            assert r.m_used <= 5 and r.p_out ** (r.m_used + 1) <= r.series * (1 + 1e-9)


def test_csv_round_trip(small_rows):
    text = rows_to_csv(small_rows)
    assert text.splitlines()[0] == ",".join(COLUMNS)
    assert "\r" not in text and ",inf," in text
    assert parse_csv(text) == small_rows
    assert rows_to_csv(parse_csv(text)) == text


@pytest.mark.parametrize("text,msg", [
    ("", "header"),
    ("a,b,c\n1,2,3\n", "header"),
    (",".join(COLUMNS) + "\n", "no data rows"),
    (",".join(COLUMNS) + "\nlambda,0.1\n", "expected"),
    (",".join(COLUMNS) + "\nlambda,x,0.1,unlimited,1,1,1,1,1,1,1,1,1\n", "line 2"),
])
def test_csv_schema_errors(text, msg):
    with pytest.raises(SchemaError, match=msg):
        parse_csv(text)


def test_mode_parsing():
    assert Mode.parse("unlimited").m_cap == UNLIMITED
    assert Mode.parse("limited(5)") == Mode(5) == Mode.parse("limited:5")
    assert Mode(5).label == "limited(5)"
    for bad in ("limited(x)", "five", "limited(-1)"):
        with pytest.raises(ValueError):
            Mode.parse(bad)


def test_spec_validation():
    base = dict(axis="lambda", values=(0.1, 0.2), series=(0.1,), modes=(Mode(5),), network=NET)
    for bad in ({"axis": "beta"}, {"values": ()}, {"values": (0.2, 0.1)}, {"values": (0.0, 0.1)},
                {"series": ()}, {"modes": ()}):
        with pytest.raises(ValueError):
            SweepSpec(**{**base, **bad})


def test_presets():
    fig2 = preset_spec("fig2")
    assert fig2.axis == "lambda" and fig2.values == FIG_LAMBDAS and len(fig2.modes) == 2
    assert FIG_LAMBDAS[0] == 0.005 and FIG_LAMBDAS[-1] == 0.5 and len(FIG_LAMBDAS) == 60
    fig4 = preset_spec("fig4", energy=EnergyParams(50, 50, 0.5))
    assert fig4.axis == "epsilon" and fig4.energy.pc_tx == 50
    assert {0.001, 0.01, 0.1} <= set(FIG4_EPSILONS)
    with pytest.raises(ValueError):
        preset_spec("fig9")


def test_quantize():
    assert quantize(0.1 + 0.2) == 0.3
    assert quantize(math.inf) == math.inf
