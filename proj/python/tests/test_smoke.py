import math

import numpy as np
import pytest

import selfsim

BURGERS = """
[model]
kind = burgers
nu = 0.05

[grid]
x_min = -8
x_max = 8
n_points = 401

[rg]
L = 1.2
iterations = 10
dt = 1e-3
initial = indicator
ell = 0.5
"""


def test_run_returns_history_and_profile():
    cfg = selfsim.parse_config(BURGERS)
    rep = selfsim.run(cfg)
    assert rep.iterations == 10
    assert rep.failure is None
    assert rep.alpha().shape == (10,)
    assert rep.final_u.shape == rep.x.shape == (401,)
    assert np.max(np.abs(rep.final_u)) == pytest.approx(1.0, abs=1e-14)
    assert rep.final_v is None


def test_config_errors_raise():
    with pytest.raises(selfsim.SelfsimError, match="rg.L"):
        selfsim.parse_config("[rg]\nL = 1\n")
    cfg = selfsim.parse_config(BURGERS)
    with pytest.raises(selfsim.SelfsimError):
        cfg.set("no_such_field", 1.0)


def test_sweep_and_costs():
    cfg = selfsim.parse_config(BURGERS)
    cfg.iterations = 3
    pts = selfsim.sweep(cfg, "nu", [0.05, 0.1], jobs=2)
    assert [p[0] for p in pts] == [0.05, 0.1]
    assert all(p[1] is not None and p[2] is None for p in pts)
    costs = selfsim.estimate_costs(cfg, 0)
    assert costs["direct_steps"] == costs["nrg_steps"]


def test_outputs_and_self_compare(tmp_path):
    cfg = selfsim.parse_config(BURGERS)
    rep = selfsim.run(cfg)
    selfsim.write_run_outputs(str(tmp_path), rep, cfg)
    assert (tmp_path / "trace.csv").exists()
    assert selfsim.compare(str(tmp_path), "self")["sup"] == 0.0


def test_oracles():
    assert selfsim.cole_wagner_alpha(0.5, quadratic=True) == pytest.approx(0.605098802259572, abs=1e-13)
    assert selfsim.absorption_alpha_theory(2.0) == pytest.approx((1.0, 3.0))
    lq = selfsim.li_qi_constants(1.5, 1.5, 0.75, 2.0, 1.25)
    assert lq["A_star"] == pytest.approx(1016.89, rel=1e-5)
    assert len(selfsim.table_a1()) == 20
    assert selfsim.whitham_g(0.0, 50.0) > 0.0
    assert selfsim.erfcx(0.0) == pytest.approx(1.0)
    assert selfsim.gaussian_phi(0.0, 1.0) == pytest.approx(1.0 / math.sqrt(4.0 * math.pi))
