# Copyright 2026 The pqst Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

import pqst


def test_bures_state_is_a_density_matrix():
    x, rho = pqst.sample_bures(4, 1)
    assert x.shape == (64,)
    assert rho.shape == (4, 4)
    np.testing.assert_allclose(np.trace(rho), 1.0, atol=1e-12)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
    assert np.linalg.eigvalsh(rho).min() > -1e-12
    np.testing.assert_array_equal(pqst.rho_from_params(x), rho)


def test_haar_factor_is_unitary():
    rng = np.random.default_rng(0)
    h = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    u = pqst.qr_haar_correct(h)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-12)
    # Same column space orientation as numpy's QR after fixing phases.
    q, r = np.linalg.qr(h)
    np.testing.assert_allclose(u, q * (np.diag(r) / np.abs(np.diag(r))), atol=1e-12)


def test_povm_and_probabilities():
    assert pqst.all_pauli_settings(2)[:2] == ["XX", "XY"]
    effects = pqst.pauli_povm("XZ")
    np.testing.assert_allclose(sum(effects), np.eye(4), atol=1e-14)
    p = pqst.outcome_probabilities(np.diag([1.0, 0.0]).astype(complex), "Z")
    np.testing.assert_allclose(p, [1.0, 0.0])


def test_likelihood_against_numpy():
    x, rho = pqst.sample_bures(2, 3)
    counts = pqst.simulate_counts(rho, pqst.all_pauli_settings(1), 50, 4)
    assert sum(sum(s["counts"]) for s in counts["settings"]) == 150
    sigma = pqst.rho_from_params(x)
    expected = 0.0
    for s in counts["settings"]:
        for effect, c in zip(pqst.pauli_povm(s["basis"]), s["counts"]):
            if c:
                expected += c * np.log(np.trace(effect @ sigma).real)
    assert pqst.log_likelihood(x, counts) == pytest.approx(expected, rel=1e-12)


def test_parallel_chains_and_pooling(tmp_path):
    _, rho = pqst.sample_bures(2, 5)
    counts = pqst.simulate_counts(rho, pqst.all_pauli_settings(1), 50, 6)
    a = pqst.run_parallel(counts, chains=3, samples=32, thin=2, master_seed=7, workers=1,
                          output_dir=str(tmp_path))
    b = pqst.run_parallel(counts, chains=3, samples=32, thin=2, master_seed=7, workers=3)
    assert a.shape == (3, 32, 16)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_array_equal(pqst.load_samples(str(tmp_path)), a)
    mean = pqst.pooled_mean(a)
    manual = np.mean([pqst.rho_from_params(v) for v in a.reshape(-1, 16)], axis=0)
    np.testing.assert_allclose(mean, manual, atol=1e-14)
    trace = pqst.pooled_observable(a, lambda r: float(np.trace(r).real))
    assert trace == pytest.approx(1.0)


def test_single_chain_and_diagnostics():
    _, rho = pqst.sample_bures(2, 8)
    counts = pqst.simulate_counts(rho, pqst.all_pauli_settings(1), 50, 9)
    out = pqst.run_chain(counts, samples=256, thin=4, seed=1)
    assert out["samples"].shape == (256, 16)
    assert len(out["beta_trace"]) == 2
    rhos = np.array([pqst.rho_from_params(v) for v in out["samples"]])
    c = pqst.acf(rhos, 20)
    assert c[0] == 1.0 and len(c) == 21
    tau, n_eff = pqst.iact(c, 256)
    assert n_eff == pytest.approx(256 / tau)


def test_w_state_and_fidelity():
    w = pqst.w_state(2)
    np.testing.assert_allclose(w, [0, 2 ** -0.5, 2 ** -0.5, 0])
    pure = np.outer(w, w.conj())
    assert pqst.fidelity(pure, pure) == pytest.approx(1.0)
    assert pqst.expectation(np.eye(4) / 4, w) == pytest.approx(0.25)


def test_errors_surface_as_exceptions(tmp_path):
    with pytest.raises(pqst.PqstError):
        pqst.fidelity(np.eye(2), np.eye(2))
    with pytest.raises(pqst.PqstError):
        pqst.read_counts(str(tmp_path / "missing.json"))
    with pytest.raises(ValueError):
        pqst.acf(np.zeros((4, 2)), 1)


def test_file_round_trip(tmp_path):
    _, rho = pqst.sample_bures(2, 10)
    pqst.write_density_matrix(str(tmp_path / "rho.json"), rho)
    np.testing.assert_array_equal(pqst.read_density_matrix(str(tmp_path / "rho.json")), rho)
    counts = pqst.simulate_counts(rho, ["X", "Z"], 12, 11)
    pqst.write_counts(str(tmp_path / "c.json"), counts)
    assert pqst.read_counts(str(tmp_path / "c.json")) == counts
