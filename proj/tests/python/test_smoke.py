import json
import math

import numpy as np
import pytest

import facdirac as fd


@pytest.fixture(scope="module")
def trig():
    return fd.Model.trig_pt()


@pytest.fixture(scope="module")
def hyp():
    return fd.Model.hyp_pt()


def test_models(trig, hyp):
    assert trig.id == "trig_pt" and trig.increasing
    assert hyp.id == "hyp_pt" and not hyp.increasing
    assert trig.mu(2) == pytest.approx(2.5)
    assert hyp.mu(3) == pytest.approx(2.5)
    assert hyp.k_max(3) == 2
    assert trig.k_max(1) is None


def test_eigenfunction_matches_oracle(trig):
    g = trig.default_grid()
    oracle = fd.oracle_eigenvalues(trig, 1, g, 3)
    for k, value in enumerate(oracle):
        assert value == pytest.approx(fd.scalar_energy(trig, 1, k), rel=1e-4)
    psi = fd.eigenfunction(trig, 0, 0, g)
    assert psi.shape == (g.n_points,)
    assert np.max(psi.real) == pytest.approx(math.sqrt(0.5), abs=1e-5)


def test_spectra(trig, hyp):
    eps = sorted(e["epsilon"] for e in fd.dirac_spectrum(trig, 0, 2))
    assert eps == pytest.approx([-2.5, -1.5, 0.5, 1.5, 2.5])
    eps = sorted(e["epsilon"] for e in fd.dirac_spectrum(hyp, 3, 2))
    assert eps == pytest.approx([-2.5, -1.5, -0.5, 0.5, 1.5])
    numeric = fd.numeric_dirac_spectrum(trig, 1, 2, trig.default_grid())
    for a, b in zip(fd.dirac_spectrum(trig, 1, 2), numeric):
        assert abs(a["epsilon"] - b["epsilon"]) < 1e-3
    assert fd.massive_energy(trig, 0, 1.0, 0, fd.Branch.plus_energy) == pytest.approx(math.sqrt(1.25))


def test_eigenspinor_and_residuals(trig, hyp):
    g = trig.default_grid()
    psi = fd.eigenspinor(trig, 1, 2, fd.Sign.plus, g)
    assert psi.shape == (2, g.n_points)
    eps = fd.dirac_energy(trig, 1, 2, fd.Sign.plus)
    assert fd.dirac_eigen_residual(trig, 1, eps, g, psi) < 1e-4
    hpsi = fd.dirac_apply(trig, 1, g, psi)
    inner = slice(g.n_points // 10, -g.n_points // 10)
    assert np.allclose(hpsi[:, inner], eps * psi[:, inner], atol=1e-4)

    bumps = fd.gaussian_test_functions(trig, g, 7, 2)
    spinor = np.stack([bumps[0], 0.5j * bumps[1]])
    assert fd.intertwine_residual(trig, 1, g, spinor) < 1e-5
    assert fd.anti_intertwine_residual(trig, 1, g, spinor) < 1e-5
    assert fd.pseudo_hermiticity_residual(hyp, 3, hyp.default_grid()) < 1e-10


def test_geometry(trig):
    g = trig.default_grid()
    bump = fd.gaussian_test_functions(trig, g, 3, 1)[0]
    assert fd.reduce_scalar(fd.Surface.sphere, 1, g, bump) < 1e-5
    assert fd.reduce_spinor(fd.Surface.sphere, 1.5, g, np.stack([bump, bump])) < 1e-5
    assert fd.casimir_labels(fd.Surface.sphere, 1, 2, fd.Sign.plus) == (3.0, 3.5)
    assert fd.casimir_labels(fd.Surface.hyperboloid, 3, 1, fd.Sign.minus) == (2.0, 2.5)


def test_bad_input_raises(trig):
    g = trig.default_grid()
    with pytest.raises(ValueError):
        fd.eigenspinor(trig, 0, 0, fd.Sign.minus, g)
    with pytest.raises(ValueError):
        fd.reduce_scalar(fd.Surface.sphere, 1, g, np.zeros(5))


def test_verify_and_exports():
    config = json.dumps({"model_id": "trig_pt", "n": 1, "k_max": 2, "test_functions": 4})
    checks = fd.run_verify(config)
    assert len(checks) >= 10
    assert all(c["pass"] for c in checks)
    assert [c["name"] for c in checks] == sorted(c["name"] for c in checks)
    report = fd.verify_report_json(config, seed=5)
    assert report == fd.verify_report_json(config, seed=5)
    assert json.loads(report)["schema_version"] == 1
    assert json.loads(report)["seed"] == 5

    csv = fd.spectrum_csv(json.dumps({"model_id": "trig_pt", "n": 0, "k_max": 1}))
    assert csv.splitlines()[0] == "model,n,k,sign,epsilon_analytic,epsilon_numeric,abs_err"
    with pytest.raises(fd.ConfigError):
        fd.run_verify(json.dumps({"model_id": "trig_pt", "n": 1, "checks": ["bogus"]}))
