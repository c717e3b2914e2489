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

#include "pqst/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pqst/errors.hpp"

namespace pqst {

namespace {

constexpr double kMinProbability = 1e-300;

// Re <v|rho|v> for Hermitian rho, reading only the upper triangle.
double hermitian_form(const ComplexMatrix& rho, std::span<const Complex> v) {
    const std::size_t n = rho.dim();
    double diag = 0.0;
    Complex off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += rho(i, i).real() * std::norm(v[i]);
        Complex row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) row += rho(i, j) * v[j];
        off += std::conj(v[i]) * row;
    }
    return diag + 2.0 * off.real();
}

}  // namespace

std::vector<Povm> povms_for(const Dataset& data) {
    std::vector<Povm> out;
    out.reserve(data.settings.size());
    for (const auto& s : data.settings) out.push_back(pauli_povm(s.basis));
    return out;
}

LikelihoodModel::LikelihoodModel(const Dataset& data) : LikelihoodModel(data, povms_for(data)) {}

LikelihoodModel::LikelihoodModel(const Dataset& data, std::span<const Povm> povms)
    : dim_(data.dim()), map_(data.dim()), rho_(data.dim()) {
    data.validate();
    if (povms.size() != data.settings.size()) {
        throw DimensionMismatch("likelihood: " + std::to_string(povms.size()) + " POVMs for " +
                                std::to_string(data.settings.size()) + " settings");
    }
    for (std::size_t k = 0; k < povms.size(); ++k) {
        const auto& povm = povms[k];
        if (povm.dim != dim_ || povm.effects.size() != dim_) {
            throw DimensionMismatch("likelihood: POVM " + std::to_string(k) +
                                    " does not match the dataset dimension");
        }
        for (std::size_t l = 0; l < dim_; ++l) {
            const auto c = data.settings[k].counts[l];
            if (c == 0) continue;
            std::vector<Complex> ket;
            if (!povm.kets.empty()) {
                ket = povm.kets[l];
            } else {
                // Rank-1 effect: recover the ket from its spectral decomposition.
                const auto eig = hermitian_eig(povm.effects[l]);
                const double lam = eig.values.back();
                if (lam < 0.0) throw InvalidDataset("likelihood: effect is not PSD");
                ket.resize(dim_);
                for (std::size_t i = 0; i < dim_; ++i) ket[i] = eig.vectors(i, dim_ - 1) * std::sqrt(lam);
            }
            terms_.push_back({std::move(ket), static_cast<double>(c)});
        }
    }
}

LogLikelihood LikelihoodModel::of_state(const ComplexMatrix& rho) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        const double p = std::min(hermitian_form(rho, t.ket), 1.0);
        if (!(p > kMinProbability)) return -std::numeric_limits<double>::infinity();
        sum += t.count * std::log(p);
    }
    return sum;
}

LogLikelihood LikelihoodModel::operator()(std::span<const double> x) {
    map_.evaluate(x, rho_);
    return of_state(rho_);
}

LogLikelihood log_likelihood(const ParamVector& x, const Dataset& data, std::span<const Povm> povms) {
    if (x.dim_hilbert() != data.dim()) {
        throw DimensionMismatch("log_likelihood: parameters for D=" + std::to_string(x.dim_hilbert()) +
                                ", dataset has D=" + std::to_string(data.dim()));
    }
    LikelihoodModel model(data, povms);
    return model(x.values());
}

}  // namespace pqst
