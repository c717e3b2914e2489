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

#include "pqst/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pqst/errors.hpp"
#include "pqst/io.hpp"

namespace pqst {

namespace {

void check_chain(std::span<const DensityMatrix> chain, std::size_t max_lag) {
    if (chain.size() <= max_lag + 1) {
        throw std::invalid_argument("acf: need more than max_lag + 1 = " + std::to_string(max_lag + 1) +
                                    " samples, got " + std::to_string(chain.size()));
    }
    for (const auto& rho : chain) {
        if (rho.dim() != chain.front().dim()) throw DimensionMismatch("acf: chain mixes dimensions");
    }
}

ComplexMatrix chain_mean(std::span<const DensityMatrix> chain) {
    ComplexMatrix mean(chain.front().dim());
    for (const auto& rho : chain) mean += rho.matrix();
    mean *= 1.0 / static_cast<double>(chain.size());
    return mean;
}

AcfResult normalise(std::vector<double> raw, std::size_t n) {
    const double c0 = raw.front();
    if (!(c0 > 1e-300)) throw DegenerateChain("acf: chain is constant (lag-0 autocovariance vanishes)");
    for (double& v : raw) v /= c0;
    raw.front() = 1.0;
    return AcfResult{std::move(raw), c0, n};
}

}  // namespace

AcfResult acf(std::span<const DensityMatrix> chain, std::size_t max_lag) {
    check_chain(chain, max_lag);
    const ComplexMatrix mean = chain_mean(chain);
    std::vector<ComplexMatrix> dev;
    dev.reserve(chain.size());
    for (const auto& rho : chain) dev.push_back(rho.matrix() - mean);

    const std::size_t limit = chain.size() - max_lag;
    std::vector<double> raw(max_lag + 1, 0.0);
    for (std::size_t l = 0; l <= max_lag; ++l) {
        double s = 0.0;
        for (std::size_t n = 0; n < limit; ++n) {
            // Re Tr(A^dagger B) = Re sum_ij conj(A_ij) B_ij
            const auto a = dev[n].data();
            const auto b = dev[n + l].data();
            for (std::size_t k = 0; k < a.size(); ++k) {
                s += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
            }
        }
        raw[l] = s;
    }
    return normalise(std::move(raw), chain.size());
}

AcfResult acf_componentwise(std::span<const DensityMatrix> chain, std::size_t max_lag) {
    check_chain(chain, max_lag);
    const std::size_t n_samples = chain.size();
    const std::size_t dim = chain.front().dim();
    const std::size_t limit = n_samples - max_lag;
    std::vector<double> raw(max_lag + 1, 0.0);
    std::vector<double> series(n_samples);

    auto accumulate = [&](auto component) {
        double mean = 0.0;
        for (std::size_t n = 0; n < n_samples; ++n) {
            series[n] = component(chain[n]);
            mean += series[n];
        }
        mean /= static_cast<double>(n_samples);
        for (double& v : series) v -= mean;
        for (std::size_t l = 0; l <= max_lag; ++l) {
            double s = 0.0;
            for (std::size_t n = 0; n < limit; ++n) s += series[n] * series[n + l];
            raw[l] += s;
        }
    };

    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            accumulate([i, j](const DensityMatrix& r) { return r(i, j).real(); });
            accumulate([i, j](const DensityMatrix& r) { return r(i, j).imag(); });
        }
    }
    return normalise(std::move(raw), n_samples);
}

IactResult iact(const AcfResult& acf, std::size_t samples_per_chain, std::size_t num_chains) {
    double tau = 1.0;
    for (std::size_t l = 1; l < acf.values.size(); ++l) tau += 2.0 * acf.values[l];
    const double total = static_cast<double>(samples_per_chain) * static_cast<double>(num_chains);
    return {tau, total / tau};
}

std::vector<IactResult> chain_iacts(const PooledSamples& pool, std::size_t max_lag) {
    std::vector<IactResult> out;
    out.reserve(pool.num_chains());
    for (const auto& chain : pool.chains()) {
        const auto states = chain_states(chain);
        out.push_back(iact(acf(states, max_lag), chain.num_samples(), 1));
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

double frobenius_error(const DensityMatrix& estimate, const DensityMatrix& reference) {
    return frobenius_sq_distance(estimate, reference);
}

StateVector w_state(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) throw std::invalid_argument("w_state: qubit count out of range");
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::vector<Complex> amps(dim, 0.0);
    const double a = 1.0 / std::sqrt(static_cast<double>(num_qubits));
    for (std::size_t q = 0; q < num_qubits; ++q) amps[std::size_t{1} << (num_qubits - 1 - q)] = a;
    return StateVector(std::move(amps));
}

std::vector<ScalingRow> error_scaling_report(const PooledSamples& pool, const DensityMatrix& reference,
                                             std::span<const std::size_t> subsets, double tau) {
    std::vector<ScalingRow> rows;
    rows.reserve(subsets.size());
    for (std::size_t r : subsets) {
        const auto estimate = pooled_mean(pool.first_chains(r));
        ScalingRow row;
        row.chains = r;
        row.n_eff = static_cast<double>(pool.samples_per_chain()) * static_cast<double>(r) / tau;
        row.frob_err_sq = frobenius_error(estimate, reference);
        row.one_minus_fidelity = std::max(0.0, 1.0 - fidelity(reference, estimate));
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScalingRow> error_scaling_report(const std::filesystem::path& pool_dir,
                                             const DensityMatrix& reference,
                                             std::span<const std::size_t> subsets, std::size_t max_lag) {
    const auto pool = PooledSamples::load(pool_dir);
    for (std::size_t r : subsets) {
        if (r < 1 || r > pool.num_chains()) {
            throw InsufficientChains("subset R=" + std::to_string(r) + " exceeds the " +
                                     std::to_string(pool.num_chains()) + " chains in " + pool_dir.string());
        }
    }
    std::vector<double> taus;
    for (const auto& it : chain_iacts(pool, max_lag)) taus.push_back(it.tau);
    return error_scaling_report(pool, reference, subsets, median(std::move(taus)));
}

std::string acf_csv(std::span<const std::pair<std::size_t, AcfResult>> acfs) {
    std::string out = "chain,lag,acf\n";
    for (const auto& [chain, result] : acfs) {
        for (std::size_t l = 0; l < result.values.size(); ++l) {
            out += std::to_string(chain) + "," + std::to_string(l) + "," + format_double(result.values[l]) + "\n";
        }
    }
    return out;
}

std::string iact_csv(std::span<const std::pair<std::size_t, IactResult>> iacts) {
    std::string out = "chain,tau,n_eff\n";
    for (const auto& [chain, result] : iacts) {
        out += std::to_string(chain) + "," + format_double(result.tau) + "," + format_double(result.n_eff) + "\n";
    }
    return out;
}

std::string scaling_csv(std::span<const ScalingRow> rows) {
    std::string out = "R,n_eff,frob_err_sq,one_minus_fidelity\n";
    for (const auto& row : rows) {
        out += std::to_string(row.chains) + "," + format_double(row.n_eff) + "," +
               format_double(row.frob_err_sq) + "," + format_double(row.one_minus_fidelity) + "\n";
    }
    return out;
}

}  // namespace pqst
