import math
import os
import subprocess

import pytest

import hyperac


def test_c0():
    assert abs(hyperac.compute_c0() - 2 * math.sqrt(2) / 3) < 1e-12
    assert abs(hyperac.psi(1.0) - hyperac.compute_c0() / 2) < 1e-12


def test_params():
    p = hyperac.derive_params(0.1, 0.8, -4.0, 4.0, 400)
    assert p["lambda"] == pytest.approx(0.625)
    assert p["q"] == pytest.approx(0.1118034, rel=1e-6)
    with pytest.raises(hyperac.ConfigError):
        hyperac.derive_params(0.01, 0.8, -4.0, 4.0, 400)


def test_energy_and_transitions():
    n = 400
    xs = [-4 + (j + 0.5) * 8 / n for j in range(n)]
    u = [0.0] * n
    e = hyperac.energy(u, u, -4.0, 4.0, 0.1, 0.8)
    assert e["potential"] == pytest.approx(20.0)
    layer = [math.tanh(x / (math.sqrt(2) * 0.1)) for x in xs]
    assert hyperac.transition_count(layer, -4.0, 4.0) == 1


def test_run_example():
    r = hyperac.run_example(3, horizon=50.0)
    assert r["initial_transitions"] == 1
    assert r["final_transitions"] == 3
    assert len(r["final_state"]["u"]) == r["grid"]["cells"]
    assert abs(r["compatibility_residual"]) < 1e-8


def test_run_config_and_sweep():
    cfg = {"epsilon": 0.2, "tau": 0.6, "horizon": 5.0}
    r = hyperac.run_config(cfg)
    assert r["final_transitions"] == 1
    rows = hyperac.sweep(cfg, [0.1, 0.2])
    assert [row["epsilon"] for row in rows] == [0.2, 0.1]
    assert rows[0]["sup_l1"] > rows[1]["sup_l1"]
    with pytest.raises(hyperac.ConfigError):
        hyperac.run_config({"no_such_field": 1})


def test_hash_canonical():
    assert hyperac.config_hash('{"a": 1, "b": 2}') == hyperac.config_hash('{"b":2,"a":1}')


@pytest.mark.skipif("HYPERAC_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_verify(tmp_path):
    out = subprocess.run([os.environ["HYPERAC_CLI"], "--out", str(tmp_path), "verify"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "0.9428090416" in out.stdout
    bad = subprocess.run([os.environ["HYPERAC_CLI"], "nonsense"], capture_output=True, text=True)
    assert bad.returncode == 64
