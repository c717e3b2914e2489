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

#include "pqst/pcn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "pqst/errors.hpp"

namespace pqst {

void ChainConfig::validate() const {
    if (samples_kept < 1) throw std::invalid_argument("samples_kept must be >= 1");
    if (thinning < 1) throw std::invalid_argument("thinning must be >= 1");
    if (adapt_interval < 1) throw std::invalid_argument("adapt_interval must be >= 1");
    if (!(beta_init > 0.0 && beta_init <= 1.0)) throw std::invalid_argument("beta_init must lie in (0, 1]");
    if (!(beta_scale > 1.0)) throw std::invalid_argument("beta_scale must exceed 1");
    if (!(accept_low < accept_high)) throw std::invalid_argument("accept_low must be below accept_high");
}

ParamVector ChainOutput::param(std::size_t n) const {
    const auto s = sample(n);
    return ParamVector(dim_hilbert, std::vector<double>(s.begin(), s.end()));
}

void propose_into(std::span<const double> y, double beta, std::span<const double> eta,
                  std::span<double> out) {
    if (y.size() != eta.size() || y.size() != out.size()) {
        throw DimensionMismatch("propose: vector lengths differ");
    }
    const double keep = std::sqrt(1.0 - beta * beta);
    for (std::size_t k = 0; k < y.size(); ++k) out[k] = keep * y[k] + beta * eta[k];
}

ParamVector propose(const ParamVector& y, double beta, const ParamVector& eta) {
    ParamVector out(y.dim_hilbert());
    propose_into(y.values(), beta, eta.values(), out.values());
    return out;
}

bool accept_test(LogLikelihood log_l_new, LogLikelihood log_l_old, double alpha) noexcept {
    return std::log(alpha) < log_l_new - log_l_old;
}

double adapt_beta(double beta, std::size_t accepted, std::size_t window, const ChainConfig& cfg) {
    const double rate = static_cast<double>(accepted) / static_cast<double>(window);
    if (rate > cfg.accept_high) return std::min(beta * cfg.beta_scale, 1.0);
    if (rate < cfg.accept_low) return beta / cfg.beta_scale;
    return beta;
}

ChainOutput run_chain_with(const LogLikelihoodFn& log_likelihood, std::size_t dim_hilbert,
                           const ChainConfig& cfg, std::size_t chain_index,
                           const IterationObserver& observer) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n_params = param_count(dim_hilbert);
    const std::size_t total = cfg.samples_kept * cfg.thinning;

    ChainOutput out;
    out.chain_index = chain_index;
    out.dim_hilbert = dim_hilbert;
    out.seed = cfg.seed;
    out.samples.reserve(cfg.samples_kept * n_params);

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::vector<double> y(n_params), proposal(n_params), eta(n_params);
    for (double& v : y) v = normal(rng);
    LogLikelihood log_l = log_likelihood(y);

    double beta = cfg.beta_init;
    std::size_t accepted = 0;
    for (std::size_t j = 1; j <= total; ++j) {
        for (double& v : eta) v = normal(rng);
        propose_into(y, beta, eta, proposal);
        const LogLikelihood log_l_new = log_likelihood(proposal);
        const double alpha = uniform(rng);
        const bool accept = accept_test(log_l_new, log_l, alpha);
        if (accept) {
            y.swap(proposal);
            log_l = log_l_new;
            ++accepted;
        }

        if (j % cfg.adapt_interval == 0) {
            out.acceptance_fractions.push_back(static_cast<double>(accepted) /
                                               static_cast<double>(cfg.adapt_interval));
            beta = adapt_beta(beta, accepted, cfg.adapt_interval, cfg);
            out.beta_trace.push_back(beta);
            accepted = 0;
        }

        if (j % cfg.thinning == 0) {
            for (double v : y) {
                if (!std::isfinite(v)) {
                    throw NonFiniteState("chain " + std::to_string(chain_index) +
                                         ": non-finite state at iteration " + std::to_string(j));
                }
            }
            out.samples.insert(out.samples.end(), y.begin(), y.end());
        }

        if (observer) observer({j, y, accept, beta, log_l});
    }

    out.final_beta = beta;
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

ChainOutput run_chain(const Dataset& data, std::span<const Povm> povms, const ChainConfig& cfg,
                      std::size_t chain_index) {
    LikelihoodModel model(data, povms);
    return run_chain_with([&model](std::span<const double> x) { return model(x); }, data.dim(), cfg,
                          chain_index);
}

}  // namespace pqst
