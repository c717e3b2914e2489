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
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "pqst/qmatrix.hpp"

namespace pqst {

/// Number of real parameters describing a state of Hilbert dimension `dim`.
constexpr std::size_t param_count(std::size_t dim) noexcept { return 4 * dim * dim; }

/// Real parameter vector of length 4 D^2. Layout, each block filled row-major:
///   [0, D^2)       Re G
///   [D^2, 2D^2)    Im G
///   [2D^2, 3D^2)   Re H
///   [3D^2, 4D^2)   Im H
class ParamVector {
  public:
    /// Zero vector.
    explicit ParamVector(std::size_t dim_hilbert);
    /// Throws DimensionMismatch if the length is not 4 D^2, NonFiniteState on NaN/Inf.
    ParamVector(std::size_t dim_hilbert, std::vector<double> values);

    std::size_t dim_hilbert() const noexcept { return dim_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    double& operator[](std::size_t k) noexcept { return values_[k]; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }

    friend bool operator==(const ParamVector&, const ParamVector&) = default;

  private:
    std::size_t dim_;
    std::vector<double> values_;
};

/// Reusable evaluator of the parameter-to-state map x -> rho(x):
///   G, H from x; U = qr_haar_correct(H); W = (U + I) G; rho = W W^dagger / Tr(W W^dagger).
/// Holds scratch buffers, so one instance per thread.
class BuresMap {
  public:
    explicit BuresMap(std::size_t dim_hilbert);

    std::size_t dim_hilbert() const noexcept { return dim_; }

    /// Writes rho(x) into `rho` (resized on first use). Throws DegenerateState
    /// when Tr(W W^dagger) underflows.
    void evaluate(std::span<const double> x, ComplexMatrix& rho);

  private:
    std::size_t dim_;
    ComplexMatrix g_, h_, u_, w_;
    HaarQr qr_;
};

DensityMatrix rho_from_params(const ParamVector& x);

/// Draws x ~ N(0, I) (4 D^2 successive standard normals) and returns (x, rho(x)).
template <typename Rng>
std::pair<ParamVector, DensityMatrix> sample_bures(std::size_t dim_hilbert, Rng& rng) {
    ParamVector x(dim_hilbert);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : x.values()) v = normal(rng);
    auto rho = rho_from_params(x);
    return {std::move(x), std::move(rho)};
}

/// Log density of the standard-normal prior: -(4D^2/2) ln(2 pi) - |x|^2 / 2.
double log_prior(const ParamVector& x);

}  // namespace pqst
