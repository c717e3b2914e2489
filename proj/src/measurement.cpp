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

#include "pqst/measurement.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "pqst/errors.hpp"

namespace pqst {

namespace {

using Qubit = std::array<Complex, 2>;

// [axis][outcome bit] -> single-qubit eigenvector (bit 0: eigenvalue +1).
Qubit eigenvector(PauliAxis axis, unsigned bit) {
    constexpr double h = std::numbers::sqrt2 / 2.0;
    const Complex i(0.0, 1.0);
    const double sign = bit == 0 ? 1.0 : -1.0;
    switch (axis) {
        case PauliAxis::X: return {h, sign * h};
        case PauliAxis::Y: return {h, sign * h * i};
        case PauliAxis::Z: return bit == 0 ? Qubit{1.0, 0.0} : Qubit{0.0, 1.0};
    }
    return {};
}

char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    return '?';
}

}  // namespace

PauliString::PauliString(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw InvalidDataset("Pauli string must act on at least one qubit");
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<PauliAxis> axes;
    axes.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'X': axes.push_back(PauliAxis::X); break;
            case 'Y': axes.push_back(PauliAxis::Y); break;
            case 'Z': axes.push_back(PauliAxis::Z); break;
            default:
                throw InvalidDataset("invalid Pauli symbol '" + std::string(1, c) + "' in \"" +
                                     std::string(text) + "\"");
        }
    }
    return PauliString(std::move(axes));
}

std::string PauliString::str() const {
    std::string s;
    for (auto a : axes_) s.push_back(axis_char(a));
    return s;
}

std::vector<PauliString> all_pauli_settings(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > 10) {
        throw InvalidDataset("all_pauli_settings: qubit count must be in [1, 10]");
    }
    std::size_t k = 1;
    for (std::size_t q = 0; q < num_qubits; ++q) k *= 3;

    std::vector<PauliString> out;
    out.reserve(k);
    std::vector<PauliAxis> axes(num_qubits);
    for (std::size_t idx = 0; idx < k; ++idx) {
        std::size_t rem = idx;
        for (std::size_t q = num_qubits; q-- > 0;) {
            axes[q] = static_cast<PauliAxis>(rem % 3);
            rem /= 3;
        }
        out.emplace_back(axes);
    }
    return out;
}

Povm pauli_povm(const PauliString& setting) {
    const std::size_t nq = setting.num_qubits();
    const std::size_t dim = std::size_t{1} << nq;
    auto bit = [nq](std::size_t value, std::size_t q) {
        return static_cast<unsigned>((value >> (nq - 1 - q)) & 1U);
    };

    Povm povm;
    povm.dim = dim;
    povm.kets.reserve(dim);
    povm.effects.reserve(dim);
    for (std::size_t l = 0; l < dim; ++l) {
        std::vector<Complex> ket(dim, 1.0);
        for (std::size_t q = 0; q < nq; ++q) {
            const Qubit e = eigenvector(setting.axes()[q], bit(l, q));
            for (std::size_t idx = 0; idx < dim; ++idx) ket[idx] *= e[bit(idx, q)];
        }
        povm.effects.push_back(ComplexMatrix::outer(ket));
        povm.kets.push_back(std::move(ket));
    }
    return povm;
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Povm& povm) {
    if (rho.dim() != povm.dim) {
        throw DimensionMismatch("outcome_probabilities: state dim " + std::to_string(rho.dim()) +
                                " vs POVM dim " + std::to_string(povm.dim));
    }
    const std::size_t n = rho.dim();
    std::vector<double> p(povm.effects.size());
    for (std::size_t l = 0; l < p.size(); ++l) {
        Complex s = 0.0;
        if (!povm.kets.empty()) {
            const auto& v = povm.kets[l];
            for (std::size_t i = 0; i < n; ++i) {
                Complex row = 0.0;
                for (std::size_t j = 0; j < n; ++j) row += rho(i, j) * v[j];
                s += std::conj(v[i]) * row;
            }
        } else {
            const auto& e = povm.effects[l];
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) s += e(i, j) * rho(j, i);
            }
        }
        p[l] = std::clamp(s.real(), 0.0, 1.0);
    }
    return p;
}

std::uint64_t Dataset::total_counts() const noexcept {
    std::uint64_t t = 0;
    for (const auto& s : settings) {
        for (auto c : s.counts) t += c;
    }
    return t;
}

void Dataset::validate() const {
    if (num_qubits < 1 || num_qubits > 10) throw InvalidDataset("num_qubits must be in [1, 10]");
    if (shots_per_setting < 1) throw InvalidDataset("shots_per_setting must be >= 1");
    if (settings.empty()) throw InvalidDataset("dataset has no settings");
    std::set<std::string> seen;
    for (const auto& s : settings) {
        const std::string name = s.basis.str();
        if (s.basis.num_qubits() != num_qubits) {
            throw InvalidDataset("basis \"" + name + "\" does not act on " +
                                 std::to_string(num_qubits) + " qubits");
        }
        if (!seen.insert(name).second) throw InvalidDataset("duplicate setting \"" + name + "\"");
        if (s.counts.size() != dim()) {
            throw InvalidDataset("setting \"" + name + "\" has " + std::to_string(s.counts.size()) +
                                 " outcomes, expected " + std::to_string(dim()));
        }
        std::uint64_t sum = 0;
        for (auto c : s.counts) sum += c;
        if (sum != shots_per_setting) {
            throw InvalidDataset("counts of setting \"" + name + "\" sum to " + std::to_string(sum) +
                                 ", expected " + std::to_string(shots_per_setting));
        }
    }
}

namespace detail {

void check_simulation_inputs(const DensityMatrix& rho, std::span<const PauliString> settings,
                             std::uint64_t shots) {
    if (shots < 1) throw InvalidDataset("simulate_counts: shots must be >= 1");
    if (settings.empty()) throw InvalidDataset("simulate_counts: no settings");
    const std::size_t nq = settings.front().num_qubits();
    if (rho.dim() != (std::size_t{1} << nq)) {
        throw DimensionMismatch("simulate_counts: state dim " + std::to_string(rho.dim()) +
                                " does not match " + std::to_string(nq) + " qubits");
    }
    std::set<PauliString> seen(settings.begin(), settings.end());
    if (seen.size() != settings.size()) throw InvalidDataset("simulate_counts: duplicate settings");
}

}  // namespace detail

std::uint64_t default_shots(std::size_t num_qubits) {
    if (num_qubits < 1) throw InvalidDataset("default_shots: qubit count must be >= 1");
    return std::uint64_t{25} << num_qubits;
}

}  // namespace pqst
