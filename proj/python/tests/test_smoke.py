import math

import numpy as np
import pytest

import bellqst


def test_bell_state_and_density():
    phi = bellqst.bell_state("phi", 0.0)
    np.testing.assert_allclose(phi, np.array([1, 0, 0, 1]) / math.sqrt(2), atol=1e-15)
    rho = bellqst.pure_density(phi)
    assert rho.shape == (4, 4)
    assert rho[0, 3] == pytest.approx(0.5)
    assert bellqst.concurrence(rho) == pytest.approx(1.0, abs=1e-9)
    assert bellqst.fidelity_pure(phi, rho) == pytest.approx(1.0)


def test_werner_concurrence():
    rho = bellqst.pure_density(bellqst.bell_state(bellqst.FamilyTag.Phi))
    werner = bellqst.with_dark_counts(rho, 0.25)
    assert bellqst.concurrence(werner) == pytest.approx(0.625, abs=1e-10)
    assert bellqst.concurrence_via_r_matrix(werner) == pytest.approx(0.625, abs=1e-10)


def test_measurement_set():
    labels = bellqst.measurement_labels()
    ops = bellqst.measurement_operators()
    assert labels[0] == "HH" and labels[-1] == "RR" and len(labels) == 36
    assert ops.shape == (36, 4, 4)
    np.testing.assert_allclose(ops[7] @ ops[7], ops[7], atol=1e-12)


def test_simulate_and_reconstruct():
    psi = bellqst.bell_state("psi", math.pi / 3)
    counts = bellqst.simulate_counts(bellqst.pure_density(psi), poisson=False)
    assert counts.shape == (36,)
    assert counts.sum() == pytest.approx(9000.0)
    report = bellqst.reconstruct(counts, 1000.0)
    assert report.converged
    assert bellqst.fidelity_pure(psi, report.rho) >= 0.999


def test_likelihood_value():
    five = np.full(36, 5.0)
    assert bellqst.likelihood(five, five) == pytest.approx(36 * math.log(5.0))


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        bellqst.concurrence(np.eye(4))
    with pytest.raises(ValueError):
        bellqst.with_dark_counts(np.eye(4) / 4, 1.5)
    with pytest.raises(ValueError):
        bellqst.reconstruct(np.ones(35), 1000.0)
    with pytest.raises(ValueError):
        bellqst.Scenario(sample_size=0)


def test_sweep_scan_and_csv(tmp_path):
    s = bellqst.Scenario("phi", sample_size=3, sigma_grid=[0.0], poisson=False, id="clean")
    r = bellqst.run_sweep(s, threads=2)
    assert len(r.per_state) == 3
    assert r.per_sigma[0].f_mean >= 0.999
    assert bellqst.chsh_violation_region(r) == [0.0]
    bellqst.write_per_sigma_csv(tmp_path / "per_sigma.csv", [r])
    header = (tmp_path / "per_sigma.csv").read_text().splitlines()[0]
    assert header == "scenario_id,sigma,f_mean,f_std,c_mean,c_std,n_nonconverged"

    spec = bellqst.ScanSpec([0.0, math.pi / 4, math.pi / 2], poisson=False)
    pts = bellqst.run_scan(spec, bellqst.pure_density(bellqst.bell_state("phi")))
    assert [p.mean_count for p in pts] == pytest.approx([0.0, 250.0, 500.0])
    assert all(p.std_count == 0.0 for p in pts)


def test_config_parsing():
    scenarios = bellqst.parse_scenarios("[a]\nfamily = psi\nsigma_grid = linspace:0:1:3\n")
    assert scenarios[0].scenario_id == "a"
    assert scenarios[0].sigma_grid == pytest.approx([0.0, 0.5, 1.0])
    assert len(bellqst.default_sigma_grid()) == 25
