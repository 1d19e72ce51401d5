import math

import pytest

gl = pytest.importorskip("gausslab")


def test_zeta_basel():
    value, err = gl.hurwitz_zeta(2.0, 1.0)
    assert abs(value - math.pi**2 / 6) < 1e-14
    assert err < 1e-14


def test_polygamma_sign():
    value, _ = gl.polygamma(2, 1.0)
    assert value < 0


def test_tau_and_orbit():
    assert gl.tau(1.0, 0.5) == 0.0
    pts = gl.orbit(0.5, 0.3, 4)
    assert len(pts) == 5
    assert pts[1] == pytest.approx(gl.tau(0.5, 0.3))


def test_domain_error():
    with pytest.raises(gl.DomainError):
        gl.tau(0.5, 0.0)
    with pytest.raises(gl.Error):
        gl.hilbert_kernel("full", 1.5, 0.0)


def test_reduced_kernel_frozen():
    assert gl.reduced_kernel("II", 0.5, 0.3) == pytest.approx(0.040182638124740093256, abs=1e-14)


def test_taylor_kappa():
    seq = gl.taylor_kappa(0.5, 3)
    assert seq["raw"][0] == pytest.approx(0.13766483287943390882, abs=1e-15)


def test_pole_pair_fixed():
    beta = 0.5
    r = math.sqrt(1 - beta)
    x = 0.37
    lhs = gl.apply_pole(beta, 1 + r, x) - gl.apply_pole(beta, -1 + r, x)
    rhs = 1 / (x - 1 - r) - 1 / (x + 1 - r)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_b_entry_and_minors():
    assert gl.b_entry(0, 1) == pytest.approx(0.31791970687014035616, rel=1e-13)
    scan = gl.minors_positive(4, 3)
    assert scan["positive"]


def test_norm_gap():
    g = gl.norm_gap(0.1)
    assert g["D_minus_gamma2"] > 0


def test_run_experiment():
    assert "doubling" in gl.experiments()
    rows = gl.run_experiment("doubling")
    assert rows and all(r["pass"] for r in rows)
    with pytest.raises(gl.ConfigError):
        gl.run_experiment("decay", {"beta": "1.5"})
