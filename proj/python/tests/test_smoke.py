import math

import pytest
import scipy.special as sp

import ambsc


def test_special_functions_match_scipy():
    for x in (1e-3, 0.5, 2.0, 7.5, 40.0):
        assert ambsc.bessel_k0(x) == pytest.approx(sp.k0(x), rel=1e-13)
        assert ambsc.bessel_k1(x) == pytest.approx(sp.k1(x), rel=1e-13)
        assert ambsc.expint_ei(-x) == pytest.approx(sp.expi(-x), rel=1e-13)


def test_product_cdf_matches_bessel_form():
    for scale in (0.2, 1.0, 3.0):
        for x in (1e-4, 0.1, 1.0, 10.0):
            z = 2.0 * math.sqrt(x / scale)
            assert ambsc.product_cdf(x, scale) == pytest.approx(1.0 - z * sp.k1(z), rel=1e-11)


def test_reference_outage_values():
    s = ambsc.reference_scenario().at_power_dbm(20.0)
    assert s.num_links == 3
    assert s.transmit_power_dbm == pytest.approx(20.0)
    r = ambsc.outage(s)
    expected = (0.966215, 0.763489, 0.873527)
    for link, want in zip(r["links"], expected):
        assert link["backscatter"] == pytest.approx(want, abs=1e-6)
        assert abs(link["backscatter_gc"] - link["backscatter"]) < 1e-3
    assert r["backscatter_best"] <= min(l["backscatter"] for l in r["links"])


def test_simulation_is_reproducible_and_agrees():
    s = ambsc.reference_scenario().at_power_dbm(20.0)
    a = ambsc.simulate(s, trials=200_000, seed=5)
    b = ambsc.simulate(s, trials=200_000, seed=5, workers=1)
    assert a["backscatter"][2]["p"] == b["backscatter"][2]["p"]
    exact = ambsc.outage(s)["links"][2]["backscatter"]
    est = a["backscatter"][2]
    assert abs(est["p"] - exact) <= 4.0 * est["std_error"]


def test_sweep_columns():
    t = ambsc.sweep(ambsc.reference_scenario(), [0.0, 30.0, 60.0])
    assert t["pt_dbm"] == [0.0, 30.0, 60.0]
    assert all(0.0 <= v <= 1.0 for k, col in t.items() if k != "pt_dbm" for v in col)


def test_linear_harvester_lowers_backscatter_outage():
    s = ambsc.reference_scenario().at_power_dbm(30.0)
    nl = ambsc.outage(s)["links"][0]["backscatter"]
    lin = ambsc.outage(s.with_eh_mode("linear"))["links"][0]["backscatter"]
    assert lin < nl


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ambsc.ConfigError):
        ambsc.parse_config("[system]\ntransmit_power = lots\n")
    with pytest.raises(ValueError):
        ambsc.simulate(ambsc.reference_scenario(), trials=10, scheme="sometimes")
    with pytest.raises(ValueError):
        ambsc.reference_scenario().with_eh_mode("quadratic")
