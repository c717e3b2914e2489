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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pqst/measurement.hpp"
#include "pqst/pcn.hpp"
#include "pqst/qmatrix.hpp"

namespace pqst {

/// Generator seed of chain r: the splitmix64 finaliser applied to
/// master_seed + (r + 1) * 0x9E3779B97F4A7C15 (mod 2^64).
std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t chain_index) noexcept;

/// max(1, std::thread::hardware_concurrency()).
std::size_t default_worker_count() noexcept;

struct RunConfig {
    std::size_t chains = 1;
    /// Template for every chain; its seed field is replaced by split_seed(master_seed, r).
    ChainConfig chain;
    std::uint64_t master_seed = 0;
    /// Empty: keep results in memory only.
    std::filesystem::path output_dir;
    std::size_t worker_limit = default_worker_count();
    /// Recorded in the run manifest (see content_hash).
    std::string dataset_hash;

    void validate() const;
};

/// Samples x^{n,r} of R chains with N samples each, chains in index order.
class PooledSamples {
  public:
    PooledSamples() = default;
    /// Throws EmptyPool on no chains, std::invalid_argument on inconsistent chains.
    explicit PooledSamples(std::vector<ChainOutput> chains);

    /// Reads every chain_*.pqst file of a run directory, ordered by chain index.
    static PooledSamples load(const std::filesystem::path& dir);

    std::size_t num_chains() const noexcept { return chains_.size(); }
    std::size_t samples_per_chain() const noexcept { return samples_per_chain_; }
    std::size_t dim_hilbert() const noexcept { return dim_; }
    std::size_t total_samples() const noexcept { return chains_.size() * samples_per_chain_; }

    const std::vector<ChainOutput>& chains() const noexcept { return chains_; }
    const ChainOutput& chain(std::size_t r) const { return chains_.at(r); }

    /// The first `count` chains. Throws InsufficientChains if fewer exist.
    PooledSamples first_chains(std::size_t count) const;
    /// Drops the first `burn_in` samples of every chain. Throws EmptyPool if none remain.
    PooledSamples without_burn_in(std::size_t burn_in) const;

  private:
    std::vector<ChainOutput> chains_;
    std::size_t samples_per_chain_ = 0;
    std::size_t dim_ = 0;
};

/// Runs chain r for every r in [0, R) given the per-chain config.
using ChainRunner = std::function<ChainOutput(const ChainConfig&, std::size_t)>;

/// Runs R chains on at most worker_limit threads. Each chain is persisted as it
/// completes (when output_dir is set) and the manifest after all finish. Output
/// depends only on (runner, config), never on scheduling. Throws ChainFailure
/// listing failed chains after the others have been written.
PooledSamples run_parallel_with(const ChainRunner& runner, const RunConfig& cfg);

PooledSamples run_parallel(const Dataset& data, const RunConfig& cfg);

/// (1/NR) sum_r sum_n rho(x^{n,r}); per-chain partial sums combined in chain order.
DensityMatrix pooled_mean(const PooledSamples& samples);

/// (1/NR) sum_r sum_n phi(rho(x^{n,r})).
double pooled_observable(const PooledSamples& samples,
                         const std::function<double(const DensityMatrix&)>& phi);

/// rho(x^{n,r}) for every stored sample of one chain.
std::vector<DensityMatrix> chain_states(const ChainOutput& chain);

}  // namespace pqst
