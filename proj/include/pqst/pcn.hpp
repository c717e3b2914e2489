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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pqst/bures.hpp"
#include "pqst/measurement.hpp"
#include "pqst/posterior.hpp"

namespace pqst {

/// Settings of one adaptive pCN chain. The chain runs samples_kept * thinning
/// iterations and stores every thinning-th state.
struct ChainConfig {
    std::size_t samples_kept = 1024;
    std::size_t thinning = 1;
    /// Step-size adaptation window, in iterations.
    std::size_t adapt_interval = 500;
    double beta_init = 0.1;
    double beta_scale = 1.1;
    double accept_low = 0.2;
    double accept_high = 0.6;
    /// Seeds the chain's std::mt19937_64 directly.
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on out-of-range settings.
    void validate() const;
};

struct ChainOutput {
    std::size_t chain_index = 0;
    std::size_t dim_hilbert = 0;
    std::uint64_t seed = 0;
    /// samples_kept rows of 4 D^2 parameters, sample-major.
    std::vector<double> samples;
    /// beta after each adaptation window, and the acceptance fraction of that window.
    std::vector<double> beta_trace;
    std::vector<double> acceptance_fractions;
    double final_beta = 0.0;
    double wall_seconds = 0.0;

    std::size_t params_per_sample() const noexcept { return param_count(dim_hilbert); }
    std::size_t num_samples() const noexcept {
        return dim_hilbert == 0 ? 0 : samples.size() / params_per_sample();
    }
    std::span<const double> sample(std::size_t n) const noexcept {
        return std::span<const double>(samples).subspan(n * params_per_sample(), params_per_sample());
    }
    ParamVector param(std::size_t n) const;
};

/// out = sqrt(1 - beta^2) y + beta eta. `out` may alias `y`.
void propose_into(std::span<const double> y, double beta, std::span<const double> eta,
                  std::span<double> out);
ParamVector propose(const ParamVector& y, double beta, const ParamVector& eta);

/// Metropolis test for the pCN kernel: accept iff ln(alpha) < new - old. The
/// prior cancels because the proposal is reversible with respect to it.
bool accept_test(LogLikelihood log_l_new, LogLikelihood log_l_old, double alpha) noexcept;

/// Scales beta up (capped at 1) above the acceptance band, down below it.
double adapt_beta(double beta, std::size_t accepted, std::size_t window,
                  const ChainConfig& cfg = ChainConfig{});

/// Per-iteration view offered to an observer; `state` is y^j after the accept test.
struct IterationRecord {
    std::size_t iteration;
    std::span<const double> state;
    bool accepted;
    double beta;
    LogLikelihood log_likelihood;
};

using IterationObserver = std::function<void(const IterationRecord&)>;
using LogLikelihoodFn = std::function<LogLikelihood(std::span<const double>)>;

/// Runs one chain against an arbitrary log-likelihood. Random stream order:
/// 4D^2 normals for y^0, then per iteration 4D^2 normals for eta followed by one
/// uniform for alpha. Per iteration j: propose, accept test, adaptation when
/// j % adapt_interval == 0, store when j % thinning == 0.
ChainOutput run_chain_with(const LogLikelihoodFn& log_likelihood, std::size_t dim_hilbert,
                           const ChainConfig& cfg, std::size_t chain_index,
                           const IterationObserver& observer = {});

/// The tomography chain: likelihood from counts and POVMs.
ChainOutput run_chain(const Dataset& data, std::span<const Povm> povms, const ChainConfig& cfg,
                      std::size_t chain_index);

}  // namespace pqst
