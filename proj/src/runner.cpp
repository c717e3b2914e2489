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

#include "pqst/runner.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <exception>
#include <mutex>
#include <optional>
#include <regex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "pqst/errors.hpp"
#include "pqst/io.hpp"

namespace pqst {

namespace {

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const RunConfig& cfg, const std::string& started, const std::string& finished) {
    nlohmann::json j;
    j["schema"] = "pqst.manifest";
    j["version"] = 1;
    j["tool_version"] = kToolVersion;
    j["master_seed"] = cfg.master_seed;
    j["chains"] = cfg.chains;
    j["chain_config"] = {
        {"samples_kept", cfg.chain.samples_kept},   {"thinning", cfg.chain.thinning},
        {"adapt_interval", cfg.chain.adapt_interval}, {"beta_init", cfg.chain.beta_init},
        {"beta_scale", cfg.chain.beta_scale},       {"accept_low", cfg.chain.accept_low},
        {"accept_high", cfg.chain.accept_high},
    };
    j["seed_derivation"] = "splitmix64(master_seed + (r + 1) * 0x9E3779B97F4A7C15)";
    j["dataset_hash"] = cfg.dataset_hash;
    j["started_utc"] = started;
    j["finished_utc"] = finished;
    write_text_file(manifest_path(cfg.output_dir), j.dump(2) + "\n");
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t chain_index) noexcept {
    std::uint64_t z = master_seed + (chain_index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::size_t default_worker_count() noexcept {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void RunConfig::validate() const {
    if (chains < 1) throw std::invalid_argument("chains must be >= 1");
    if (worker_limit < 1) throw std::invalid_argument("worker_limit must be >= 1");
    chain.validate();
}

// ---------------------------------------------------------------------------
// PooledSamples

PooledSamples::PooledSamples(std::vector<ChainOutput> chains) : chains_(std::move(chains)) {
    if (chains_.empty()) throw EmptyPool("pool has no chains");
    dim_ = chains_.front().dim_hilbert;
    samples_per_chain_ = chains_.front().num_samples();
    for (const auto& c : chains_) {
        if (c.dim_hilbert != dim_ || c.num_samples() != samples_per_chain_) {
            throw std::invalid_argument("pool: chain " + std::to_string(c.chain_index) +
                                        " disagrees on dimension or sample count");
        }
    }
    if (samples_per_chain_ == 0) throw EmptyPool("pool chains hold no samples");
}

PooledSamples PooledSamples::load(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    static const std::regex pattern(R"(chain_(\d+)\.pqst)");
    std::vector<std::pair<std::size_t, std::filesystem::path>> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, m, pattern)) files.emplace_back(std::stoul(m[1].str()), entry.path());
    }
    if (files.empty()) throw EmptyPool("no chain_*.pqst files in " + dir.string());
    std::sort(files.begin(), files.end());

    std::vector<ChainOutput> chains;
    chains.reserve(files.size());
    for (const auto& [index, path] : files) {
        auto chain = read_chain_samples(path);
        if (chain.chain_index != index) {
            throw FormatError(path.string() + ": header chain index " +
                              std::to_string(chain.chain_index) + " does not match file name");
        }
        const auto meta = chain_metadata_path(dir, index);
        if (std::filesystem::exists(meta)) read_chain_metadata(meta, chain);
        chains.push_back(std::move(chain));
    }
    return PooledSamples(std::move(chains));
}

PooledSamples PooledSamples::first_chains(std::size_t count) const {
    if (count < 1 || count > chains_.size()) {
        throw InsufficientChains("requested " + std::to_string(count) + " chains, pool has " +
                                 std::to_string(chains_.size()));
    }
    return PooledSamples(std::vector<ChainOutput>(chains_.begin(), chains_.begin() + count));
}

PooledSamples PooledSamples::without_burn_in(std::size_t burn_in) const {
    if (burn_in == 0) return *this;
    if (burn_in >= samples_per_chain_) {
        throw EmptyPool("burn-in of " + std::to_string(burn_in) + " leaves no samples of " +
                        std::to_string(samples_per_chain_));
    }
    std::vector<ChainOutput> trimmed = chains_;
    const std::size_t drop = burn_in * param_count(dim_);
    for (auto& c : trimmed) c.samples.erase(c.samples.begin(), c.samples.begin() + drop);
    return PooledSamples(std::move(trimmed));
}

// ---------------------------------------------------------------------------
// Parallel execution

PooledSamples run_parallel_with(const ChainRunner& runner, const RunConfig& cfg) {
    cfg.validate();
    const bool persist = !cfg.output_dir.empty();
    if (persist) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.output_dir, ec);
        if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
            throw IoError("cannot create output directory " + cfg.output_dir.string());
        }
    }
    const std::string started = utc_now();

    std::vector<std::optional<ChainOutput>> slots(cfg.chains);
    std::vector<ChainFailure::Failed> failures;
    std::mutex failure_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t r = next++; r < cfg.chains; r = next++) {
            try {
                ChainConfig chain_cfg = cfg.chain;
                chain_cfg.seed = split_seed(cfg.master_seed, r);
                ChainOutput out = runner(chain_cfg, r);
                out.chain_index = r;
                if (persist) {
                    write_chain_samples(chain_sample_path(cfg.output_dir, r), out);
                    write_chain_metadata(chain_metadata_path(cfg.output_dir, r), out);
                }
                slots[r] = std::move(out);
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                failures.push_back({r, e.what()});
            }
        }
    };

    const std::size_t n_workers = std::min(cfg.worker_limit, cfg.chains);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }

    if (persist) write_manifest(cfg, started, utc_now());
    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end(),
                  [](const auto& a, const auto& b) { return a.chain_index < b.chain_index; });
        throw ChainFailure(std::move(failures));
    }

    std::vector<ChainOutput> chains;
    chains.reserve(cfg.chains);
    for (auto& s : slots) chains.push_back(std::move(*s));
    return PooledSamples(std::move(chains));
}

PooledSamples run_parallel(const Dataset& data, const RunConfig& cfg) {
    data.validate();
    const auto povms = povms_for(data);
    return run_parallel_with(
        [&](const ChainConfig& chain_cfg, std::size_t r) { return run_chain(data, povms, chain_cfg, r); },
        cfg);
}

// ---------------------------------------------------------------------------
// Pooled estimators

DensityMatrix pooled_mean(const PooledSamples& samples) {
    if (samples.num_chains() == 0 || samples.samples_per_chain() == 0) throw EmptyPool("pooled_mean: empty pool");
    const std::size_t dim = samples.dim_hilbert();
    BuresMap map(dim);
    ComplexMatrix rho(dim), partial(dim), total(dim);
    for (const auto& chain : samples.chains()) {
        partial.set_zero();
        for (std::size_t n = 0; n < chain.num_samples(); ++n) {
            map.evaluate(chain.sample(n), rho);
            partial += rho;
        }
        total += partial;
    }
    total *= 1.0 / static_cast<double>(samples.total_samples());
    return DensityMatrix(std::move(total), 1e-9, 1e-9);
}

double pooled_observable(const PooledSamples& samples,
                         const std::function<double(const DensityMatrix&)>& phi) {
    if (samples.num_chains() == 0 || samples.samples_per_chain() == 0) {
        throw EmptyPool("pooled_observable: empty pool");
    }
    const std::size_t dim = samples.dim_hilbert();
    BuresMap map(dim);
    ComplexMatrix rho(dim);
    double total = 0.0;
    for (const auto& chain : samples.chains()) {
        double partial = 0.0;
        for (std::size_t n = 0; n < chain.num_samples(); ++n) {
            map.evaluate(chain.sample(n), rho);
            partial += phi(DensityMatrix::unchecked(rho));
        }
        total += partial;
    }
    return total / static_cast<double>(samples.total_samples());
}

std::vector<DensityMatrix> chain_states(const ChainOutput& chain) {
    BuresMap map(chain.dim_hilbert);
    std::vector<DensityMatrix> out;
    out.reserve(chain.num_samples());
    ComplexMatrix rho(chain.dim_hilbert);
    for (std::size_t n = 0; n < chain.num_samples(); ++n) {
        map.evaluate(chain.sample(n), rho);
        out.push_back(DensityMatrix::unchecked(rho));
    }
    return out;
}

}  // namespace pqst
