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

#include "pqst/bures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pqst/errors.hpp"

namespace pqst {

ParamVector::ParamVector(std::size_t dim_hilbert)
    : dim_(dim_hilbert), values_(param_count(dim_hilbert), 0.0) {}

ParamVector::ParamVector(std::size_t dim_hilbert, std::vector<double> values)
    : dim_(dim_hilbert), values_(std::move(values)) {
    if (values_.size() != param_count(dim_)) {
        throw DimensionMismatch("ParamVector: expected " + std::to_string(param_count(dim_)) +
                                " values, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw NonFiniteState("ParamVector: non-finite entry");
    }
}

BuresMap::BuresMap(std::size_t dim_hilbert)
    : dim_(dim_hilbert), g_(dim_hilbert), h_(dim_hilbert), u_(dim_hilbert), w_(dim_hilbert),
      qr_(dim_hilbert) {}

void BuresMap::evaluate(std::span<const double> x, ComplexMatrix& rho) {
    const std::size_t n = dim_;
    const std::size_t n2 = n * n;
    if (x.size() != param_count(n)) {
        throw DimensionMismatch("rho_from_params: parameter length " + std::to_string(x.size()) +
                                " does not match 4 D^2 = " + std::to_string(param_count(n)));
    }
    for (std::size_t k = 0; k < n2; ++k) {
        g_.data()[k] = Complex(x[k], x[n2 + k]);
        h_.data()[k] = Complex(x[2 * n2 + k], x[3 * n2 + k]);
    }
    qr_.apply(h_, u_);
    for (std::size_t i = 0; i < n; ++i) u_(i, i) += 1.0;
    multiply_into(u_, g_, w_);

    if (rho.dim() != n) rho = ComplexMatrix(n);
    gram_into(w_, rho);
    const double tr = rho.trace().real();
    if (!(tr > 1e-300) || !std::isfinite(tr)) {
        throw DegenerateState("rho_from_params: Tr(W W^dagger) = " + std::to_string(tr));
    }
    rho *= 1.0 / tr;
}

DensityMatrix rho_from_params(const ParamVector& x) {
    BuresMap map(x.dim_hilbert());
    ComplexMatrix rho(x.dim_hilbert());
    map.evaluate(x.values(), rho);
    return DensityMatrix::unchecked(std::move(rho));
}

double log_prior(const ParamVector& x) {
    double sq = 0.0;
    for (double v : x.values()) sq += v * v;
    return -0.5 * static_cast<double>(x.size()) * std::log(2.0 * std::numbers::pi) - 0.5 * sq;
}

}  // namespace pqst
