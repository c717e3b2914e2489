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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqst/qmatrix.hpp"

namespace pqst {

enum class PauliAxis : std::uint8_t { X = 0, Y = 1, Z = 2 };

/// One measurement axis per qubit; character q of str() is qubit q.
class PauliString {
  public:
    explicit PauliString(std::vector<PauliAxis> axes);
    /// Parses e.g. "XZY". Throws InvalidDataset on an empty string or a bad symbol.
    static PauliString parse(std::string_view text);

    std::size_t num_qubits() const noexcept { return axes_.size(); }
    std::span<const PauliAxis> axes() const noexcept { return axes_; }
    std::string str() const;

    friend auto operator<=>(const PauliString&, const PauliString&) = default;

  private:
    std::vector<PauliAxis> axes_;
};

/// The 3^Q Pauli settings in lexicographic order (X < Y < Z), qubit 0 most significant.
std::vector<PauliString> all_pauli_settings(std::size_t num_qubits);

/// Projective measurement with D outcomes.
struct Povm {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> effects;
    /// For rank-1 POVMs: effects[l] = |kets[l]><kets[l]|. Empty otherwise.
    std::vector<std::vector<Complex>> kets;
};

/// Eigenbasis projectors of a Pauli string. Outcome index l: bit of qubit q
/// (qubit 0 = most significant) is 0 for the +1 eigenvector, 1 for -1.
Povm pauli_povm(const PauliString& setting);

/// p_l = Re Tr(Lambda_l rho), clamped to [0, 1].
std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Povm& povm);

struct SettingCounts {
    PauliString basis;
    std::vector<std::uint64_t> counts;  // length D, indexed by the outcome convention above
};

struct Dataset {
    std::size_t num_qubits = 0;
    std::uint64_t shots_per_setting = 0;
    std::vector<SettingCounts> settings;

    std::size_t dim() const noexcept { return std::size_t{1} << num_qubits; }
    std::uint64_t total_counts() const noexcept;
    /// Throws InvalidDataset unless every count vector has length D and sums to P,
    /// bases match the qubit count, and settings are distinct.
    void validate() const;
};

/// Multinomial draw of `shots` outcomes: D-1 sequential conditional binomials.
template <typename Rng>
std::vector<std::uint64_t> sample_multinomial(std::span<const double> probs, std::uint64_t shots,
                                              Rng& rng) {
    std::vector<std::uint64_t> counts(probs.size(), 0);
    std::uint64_t remaining = shots;
    double mass = 1.0;
    for (std::size_t l = 0; l + 1 < probs.size() && remaining > 0; ++l) {
        const double p = mass > 0.0 ? std::clamp(probs[l] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> binom(remaining, p);
        counts[l] = binom(rng);
        remaining -= counts[l];
        mass -= probs[l];
    }
    counts.back() += remaining;
    return counts;
}

namespace detail {
void check_simulation_inputs(const DensityMatrix& rho, std::span<const PauliString> settings,
                             std::uint64_t shots);
}  // namespace detail

/// Counts for every setting, drawn in order from `rng`. Throws InvalidDataset on
/// empty/duplicate settings or zero shots, DimensionMismatch if rho is not 2^Q.
template <typename Rng>
Dataset simulate_counts(const DensityMatrix& rho, std::span<const PauliString> settings,
                        std::uint64_t shots, Rng& rng) {
    detail::check_simulation_inputs(rho, settings, shots);
    Dataset data;
    data.num_qubits = settings.front().num_qubits();
    data.shots_per_setting = shots;
    for (const auto& s : settings) {
        const auto probs = outcome_probabilities(rho, pauli_povm(s));
        data.settings.push_back({s, sample_multinomial(std::span<const double>(probs), shots, rng)});
    }
    data.validate();
    return data;
}

/// 25 * 2^Q shots per setting.
std::uint64_t default_shots(std::size_t num_qubits);

}  // namespace pqst
