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

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqst/qmatrix.hpp"
#include "pqst/runner.hpp"

namespace pqst {

/// Default maximum lag of autocorrelation estimates.
inline constexpr std::size_t kDefaultMaxLag = 200;

struct AcfResult {
    /// c[0..l_max], c[0] == 1.
    std::vector<double> values;
    /// Unnormalised lag-0 autocovariance.
    double normalization = 0.0;
    std::size_t num_samples = 0;

    std::size_t max_lag() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

struct IactResult {
    double tau = 0.0;
    double n_eff = 0.0;
};

/// Density-matrix autocorrelation of one chain about its own mean:
///   c[l] ~ sum_{n < N - l_max} Re Tr[(rho_n - mean)^dagger (rho_{n+l} - mean)],
/// the summation limit fixed at N - l_max for every lag, scaled so c[0] = 1.
/// Throws std::invalid_argument unless N > l_max + 1, DegenerateChain for a constant chain.
AcfResult acf(std::span<const DensityMatrix> chain, std::size_t max_lag);

/// The same quantity assembled from the autocovariances of the real and
/// imaginary parts of every matrix element. Used as a cross-check of acf().
AcfResult acf_componentwise(std::span<const DensityMatrix> chain, std::size_t max_lag);

/// tau = 1 + 2 sum_{l=1}^{l_max} c[l] (fixed truncation), n_eff = N R / tau.
/// tau below 1 is reported as is.
IactResult iact(const AcfResult& acf, std::size_t samples_per_chain, std::size_t num_chains = 1);

/// Per-chain IACT (n_eff = N / tau) for every chain of a pool.
std::vector<IactResult> chain_iacts(const PooledSamples& pool, std::size_t max_lag = kDefaultMaxLag);

double median(std::vector<double> values);

/// ||estimate - reference||_F^2
double frobenius_error(const DensityMatrix& estimate, const DensityMatrix& reference);

/// (1/sqrt(Q)) sum over the Q single-excitation basis states.
StateVector w_state(std::size_t num_qubits);

struct ScalingRow {
    std::size_t chains = 0;
    double n_eff = 0.0;
    double frob_err_sq = 0.0;
    double one_minus_fidelity = 0.0;
};

/// Pooled estimate over the first R chains for every R in `subsets`, compared to
/// `reference`. n_eff = N R / tau. Throws InsufficientChains if R exceeds the pool.
std::vector<ScalingRow> error_scaling_report(const PooledSamples& pool, const DensityMatrix& reference,
                                             std::span<const std::size_t> subsets, double tau);

/// Loads a run directory; tau is the median per-chain IACT at `max_lag`.
std::vector<ScalingRow> error_scaling_report(const std::filesystem::path& pool_dir,
                                             const DensityMatrix& reference,
                                             std::span<const std::size_t> subsets,
                                             std::size_t max_lag = kDefaultMaxLag);

/// CSV with header `chain,lag,acf`.
std::string acf_csv(std::span<const std::pair<std::size_t, AcfResult>> acfs);
/// CSV with header `chain,tau,n_eff`.
std::string iact_csv(std::span<const std::pair<std::size_t, IactResult>> iacts);
/// CSV with header `R,n_eff,frob_err_sq,one_minus_fidelity`.
std::string scaling_csv(std::span<const ScalingRow> rows);

}  // namespace pqst
