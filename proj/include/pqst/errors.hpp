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
#include <stdexcept>
#include <string>
#include <vector>

namespace pqst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// QR factor with a (numerically) zero diagonal entry.
class DegenerateDecomposition : public Error {
  public:
    using Error::Error;
};

class NotHermitian : public Error {
  public:
    using Error::Error;
};

class NotPSD : public Error {
  public:
    using Error::Error;
};

/// A matrix that fails the density-matrix invariants (trace, symmetry, positivity).
class InvalidState : public Error {
  public:
    using Error::Error;
};

/// Tr(WW^dagger) underflowed while mapping parameters to a state.
class DegenerateState : public Error {
  public:
    using Error::Error;
};

class InvalidDataset : public Error {
  public:
    using Error::Error;
};

class NonFiniteState : public Error {
  public:
    using Error::Error;
};

class EmptyPool : public Error {
  public:
    using Error::Error;
};

/// Constant chain: the lag-0 autocovariance vanishes.
class DegenerateChain : public Error {
  public:
    using Error::Error;
};

class InsufficientChains : public Error {
  public:
    using Error::Error;
};

/// Malformed file contents (counts, state, samples, metadata).
class FormatError : public Error {
  public:
    using Error::Error;
};

/// A file or directory could not be read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// One or more chains of a parallel run threw. Completed chains are left intact.
class ChainFailure : public Error {
  public:
    struct Failed {
        std::size_t chain_index;
        std::string cause;
    };

    explicit ChainFailure(std::vector<Failed> failed)
        : Error(describe(failed)), failed_(std::move(failed)) {}

    const std::vector<Failed>& failed() const noexcept { return failed_; }

  private:
    static std::string describe(const std::vector<Failed>& failed) {
        std::string msg = std::to_string(failed.size()) + " chain(s) failed:";
        for (const auto& f : failed) {
            msg += " [" + std::to_string(f.chain_index) + "] " + f.cause + ";";
        }
        return msg;
    }

    std::vector<Failed> failed_;
};

}  // namespace pqst
