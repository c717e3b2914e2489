// Copyright 2026 The pqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "pqst/bures.hpp"
#include "pqst/diagnostics.hpp"
#include "pqst/errors.hpp"
#include "pqst/io.hpp"
#include "pqst/measurement.hpp"
#include "pqst/pcn.hpp"
#include "pqst/posterior.hpp"
#include "pqst/runner.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using CArray = py::array_t<pqst::Complex, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

pqst::ComplexMatrix to_matrix(const CArray& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("expected a square 2-D array");
    const auto n = static_cast<std::size_t>(a.shape(0));
    pqst::ComplexMatrix m(n);
    auto v = a.unchecked<2>();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v(i, j);
    }
    return m;
}

CArray to_array(const pqst::ComplexMatrix& m) {
    const auto n = static_cast<py::ssize_t>(m.dim());
    CArray out({n, n});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

pqst::DensityMatrix to_state(const CArray& a) { return pqst::DensityMatrix(to_matrix(a)); }

CArray vector_to_array(std::span<const pqst::Complex> v) {
    CArray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

pqst::ParamVector to_params(const RArray& x) {
    if (x.ndim() != 1) throw py::value_error("parameters must be a 1-D array");
    const auto len = static_cast<std::size_t>(x.shape(0));
    const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(len) / 4.0)));
    return pqst::ParamVector(dim, std::vector<double>(x.data(), x.data() + len));
}

pqst::Dataset to_dataset(const py::dict& d) {
    pqst::Dataset data;
    data.num_qubits = d["num_qubits"].cast<std::size_t>();
    data.shots_per_setting = d["shots_per_setting"].cast<std::uint64_t>();
    for (const auto& s : d["settings"]) {
        const auto setting = s.cast<py::dict>();
        data.settings.push_back({pqst::PauliString::parse(setting["basis"].cast<std::string>()),
                                 setting["counts"].cast<std::vector<std::uint64_t>>()});
    }
    data.validate();
    return data;
}

py::dict to_dict(const pqst::Dataset& data) {
    py::list settings;
    for (const auto& s : data.settings) settings.append(py::dict("basis"_a = s.basis.str(), "counts"_a = s.counts));
    return py::dict("num_qubits"_a = data.num_qubits, "shots_per_setting"_a = data.shots_per_setting,
                    "settings"_a = settings);
}

pqst::ChainConfig chain_config(std::size_t samples, std::size_t thin, std::size_t adapt_interval,
                               double beta0, std::uint64_t seed) {
    pqst::ChainConfig cfg;
    cfg.samples_kept = samples;
    cfg.thinning = thin;
    cfg.adapt_interval = adapt_interval;
    cfg.beta_init = beta0;
    cfg.seed = seed;
    return cfg;
}

// (R, N, 4D^2) array of a pool.
RArray pool_to_array(const pqst::PooledSamples& pool) {
    const auto r = static_cast<py::ssize_t>(pool.num_chains());
    const auto n = static_cast<py::ssize_t>(pool.samples_per_chain());
    const auto p = static_cast<py::ssize_t>(pqst::param_count(pool.dim_hilbert()));
    RArray out({r, n, p});
    double* dst = out.mutable_data();
    for (const auto& c : pool.chains()) dst = std::copy(c.samples.begin(), c.samples.end(), dst);
    return out;
}

pqst::PooledSamples array_to_pool(const RArray& a) {
    if (a.ndim() != 3) throw py::value_error("samples must have shape (R, N, 4 D^2)");
    const auto r = static_cast<std::size_t>(a.shape(0));
    const auto n = static_cast<std::size_t>(a.shape(1));
    const auto p = static_cast<std::size_t>(a.shape(2));
    const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p) / 4.0)));
    if (pqst::param_count(dim) != p) throw py::value_error("last axis must have length 4 D^2");
    std::vector<pqst::ChainOutput> chains(r);
    for (std::size_t k = 0; k < r; ++k) {
        chains[k].chain_index = k;
        chains[k].dim_hilbert = dim;
        const double* src = a.data() + k * n * p;
        chains[k].samples.assign(src, src + n * p);
    }
    return pqst::PooledSamples(std::move(chains));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Parallel pCN Bayesian quantum state tomography";

    py::register_exception<pqst::Error>(m, "PqstError", PyExc_RuntimeError);

    // qmatrix
    m.def("qr_haar_correct", [](const CArray& h) { return to_array(pqst::qr_haar_correct(to_matrix(h))); },
          "h"_a, "Q * diag(r_ii/|r_ii|) of the QR factorisation of h.");
    m.def("hermitian_sqrt", [](const CArray& a) { return to_array(pqst::hermitian_sqrt(to_matrix(a))); }, "m"_a);
    m.def("fidelity", [](const CArray& a, const CArray& b) { return pqst::fidelity(to_state(a), to_state(b)); },
          "a"_a, "b"_a);
    m.def("frobenius_sq_distance",
          [](const CArray& a, const CArray& b) { return pqst::frobenius_sq_distance(to_state(a), to_state(b)); },
          "a"_a, "b"_a);
    m.def("expectation",
          [](const CArray& rho, const CArray& psi) {
              std::vector<pqst::Complex> amps(psi.data(), psi.data() + psi.size());
              return pqst::expectation(to_state(rho), pqst::StateVector(std::move(amps)));
          },
          "rho"_a, "psi"_a);

    // bures
    m.def("rho_from_params", [](const RArray& x) { return to_array(pqst::rho_from_params(to_params(x)).matrix()); },
          "x"_a, "Density matrix of a length-4D^2 parameter vector.");
    m.def("sample_bures",
          [](std::size_t dim, std::uint64_t seed) {
              std::mt19937_64 rng(seed);
              auto [x, rho] = pqst::sample_bures(dim, rng);
              RArray xs(static_cast<py::ssize_t>(x.size()));
              std::copy(x.values().begin(), x.values().end(), xs.mutable_data());
              return py::make_tuple(xs, to_array(rho.matrix()));
          },
          "dim"_a, "seed"_a);
    m.def("log_prior", [](const RArray& x) { return pqst::log_prior(to_params(x)); }, "x"_a);

    // measurement
    m.def("all_pauli_settings",
          [](std::size_t q) {
              std::vector<std::string> out;
              for (const auto& s : pqst::all_pauli_settings(q)) out.push_back(s.str());
              return out;
          },
          "num_qubits"_a);
    m.def("pauli_povm",
          [](const std::string& basis) {
              std::vector<CArray> effects;
              for (const auto& e : pqst::pauli_povm(pqst::PauliString::parse(basis)).effects) {
                  effects.push_back(to_array(e));
              }
              return effects;
          },
          "basis"_a);
    m.def("outcome_probabilities",
          [](const CArray& rho, const std::string& basis) {
              return pqst::outcome_probabilities(to_state(rho), pqst::pauli_povm(pqst::PauliString::parse(basis)));
          },
          "rho"_a, "basis"_a);
    m.def("simulate_counts",
          [](const CArray& rho, const std::vector<std::string>& bases, std::uint64_t shots, std::uint64_t seed) {
              std::vector<pqst::PauliString> settings;
              for (const auto& b : bases) settings.push_back(pqst::PauliString::parse(b));
              std::mt19937_64 rng(seed);
              return to_dict(pqst::simulate_counts(to_state(rho), settings, shots, rng));
          },
          "rho"_a, "settings"_a, "shots"_a, "seed"_a);
    m.def("default_shots", &pqst::default_shots, "num_qubits"_a);

    // posterior
    m.def("log_likelihood",
          [](const RArray& x, const py::dict& counts) {
              const auto data = to_dataset(counts);
              return pqst::log_likelihood(to_params(x), data, pqst::povms_for(data));
          },
          "x"_a, "counts"_a);

    // pcn
    m.def("adapt_beta",
          [](double beta, std::size_t accepted, std::size_t window) { return pqst::adapt_beta(beta, accepted, window); },
          "beta"_a, "accepted"_a, "window"_a);
    m.def("run_chain",
          [](const py::dict& counts, std::size_t samples, std::size_t thin, std::uint64_t seed,
             std::size_t adapt_interval, double beta0) {
              const auto data = to_dataset(counts);
              const auto povms = pqst::povms_for(data);
              pqst::ChainOutput out;
              {
                  py::gil_scoped_release release;
                  out = pqst::run_chain(data, povms, chain_config(samples, thin, adapt_interval, beta0, seed), 0);
              }
              const auto n = static_cast<py::ssize_t>(out.num_samples());
              const auto p = static_cast<py::ssize_t>(out.params_per_sample());
              RArray xs({n, p});
              std::copy(out.samples.begin(), out.samples.end(), xs.mutable_data());
              return py::dict("samples"_a = xs, "beta_trace"_a = out.beta_trace,
                              "acceptance_fractions"_a = out.acceptance_fractions, "final_beta"_a = out.final_beta);
          },
          "counts"_a, "samples"_a = 1024, "thin"_a = 1, "seed"_a = 0, "adapt_interval"_a = 500, "beta0"_a = 0.1);

    // runner
    m.def("split_seed", &pqst::split_seed, "master_seed"_a, "chain_index"_a);
    m.def("run_parallel",
          [](const py::dict& counts, std::size_t chains, std::size_t samples, std::size_t thin,
             std::uint64_t master_seed, std::optional<std::size_t> workers,
             std::optional<std::filesystem::path> output_dir) {
              const auto data = to_dataset(counts);
              pqst::RunConfig cfg;
              cfg.chains = chains;
              cfg.chain = chain_config(samples, thin, 500, 0.1, 0);
              cfg.master_seed = master_seed;
              if (workers) cfg.worker_limit = *workers;
              if (output_dir) cfg.output_dir = *output_dir;
              std::optional<pqst::PooledSamples> pool;
              {
                  py::gil_scoped_release release;
                  pool = pqst::run_parallel(data, cfg);
              }
              return pool_to_array(*pool);
          },
          "counts"_a, "chains"_a, "samples"_a = 1024, "thin"_a = 1, "master_seed"_a = 0,
          "workers"_a = py::none(), "output_dir"_a = py::none(),
          "Runs independent chains; returns samples of shape (R, N, 4 D^2).");
    m.def("load_samples", [](const std::filesystem::path& dir) { return pool_to_array(pqst::PooledSamples::load(dir)); },
          "samples_dir"_a);
    m.def("pooled_mean", [](const RArray& samples) { return to_array(pqst::pooled_mean(array_to_pool(samples)).matrix()); },
          "samples"_a);
    m.def("pooled_observable",
          [](const RArray& samples, const std::function<double(CArray)>& phi) {
              return pqst::pooled_observable(array_to_pool(samples),
                                             [&](const pqst::DensityMatrix& rho) { return phi(to_array(rho.matrix())); });
          },
          "samples"_a, "phi"_a);

    // diagnostics
    m.def("acf",
          [](const CArray& rhos, std::size_t max_lag) {
              if (rhos.ndim() != 3) throw py::value_error("expected an (N, D, D) array of states");
              const auto n = static_cast<std::size_t>(rhos.shape(0));
              const auto d = static_cast<std::size_t>(rhos.shape(1));
              std::vector<pqst::DensityMatrix> chain;
              chain.reserve(n);
              for (std::size_t k = 0; k < n; ++k) {
                  pqst::ComplexMatrix mat(d);
                  std::copy(rhos.data() + k * d * d, rhos.data() + (k + 1) * d * d, mat.data().begin());
                  chain.push_back(pqst::DensityMatrix::unchecked(std::move(mat)));
              }
              return pqst::acf(chain, max_lag).values;
          },
          "rhos"_a, "max_lag"_a = pqst::kDefaultMaxLag);
    m.def("iact",
          [](const std::vector<double>& acf_values, std::size_t n, std::size_t r) {
              pqst::AcfResult a;
              a.values = acf_values;
              const auto it = pqst::iact(a, n, r);
              return py::make_tuple(it.tau, it.n_eff);
          },
          "acf"_a, "samples_per_chain"_a, "num_chains"_a = 1, "Returns (tau, n_eff).");
    m.def("w_state", [](std::size_t q) { return vector_to_array(pqst::w_state(q).amplitudes()); }, "num_qubits"_a);

    // files
    m.def("read_density_matrix", [](const std::filesystem::path& p) { return to_array(pqst::read_density_matrix(p).matrix()); },
          "path"_a);
    m.def("write_density_matrix",
          [](const std::filesystem::path& p, const CArray& rho) { pqst::write_density_matrix(p, to_state(rho)); },
          "path"_a, "rho"_a);
    m.def("read_counts", [](const std::filesystem::path& p) { return to_dict(pqst::read_counts(p)); }, "path"_a);
    m.def("write_counts",
          [](const std::filesystem::path& p, const py::dict& counts) { pqst::write_counts(p, to_dataset(counts)); },
          "path"_a, "counts"_a);
}
