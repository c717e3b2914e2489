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
#include <span>
#include <vector>

#include "pqst/bures.hpp"
#include "pqst/measurement.hpp"

namespace pqst {

/// Multinomial log-likelihood: finite or -infinity, never NaN or +infinity.
using LogLikelihood = double;

/// One POVM per dataset setting, in the same order.
std::vector<Povm> povms_for(const Dataset& data);

/// sum_k sum_l c_kl ln Tr(Lambda_kl rho(x)). Zero counts contribute nothing; an
/// observed outcome with probability <= 1e-300 gives -infinity.
/// Throws InvalidDataset or DimensionMismatch on inconsistent inputs.
LogLikelihood log_likelihood(const ParamVector& x, const Dataset& data, std::span<const Povm> povms);

/// Precomputed likelihood for repeated evaluation. Only nonzero-count outcomes
/// are kept. Holds scratch space: copy it per thread.
class LikelihoodModel {
  public:
    LikelihoodModel(const Dataset& data, std::span<const Povm> povms);
    explicit LikelihoodModel(const Dataset& data);

    std::size_t dim_hilbert() const noexcept { return dim_; }

    LogLikelihood operator()(std::span<const double> x);
    /// Log-likelihood of an already constructed state.
    LogLikelihood of_state(const ComplexMatrix& rho) const;

  private:
    struct Term {
        std::vector<Complex> ket;
        double count;
    };

    std::size_t dim_;
    std::vector<Term> terms_;
    BuresMap map_;
    ComplexMatrix rho_;
};

}  // namespace pqst
