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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <unistd.h>

#include "oracles.hpp"
#include "pqst/bures.hpp"
#include "pqst/measurement.hpp"
#include "pqst/qmatrix.hpp"

namespace testing {

inline oracle::Mat to_oracle(const pqst::ComplexMatrix& m) {
    oracle::Mat o = oracle::zeros(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) o[i][j] = m(i, j);
    return o;
}

inline pqst::ComplexMatrix from_oracle(const oracle::Mat& o) {
    pqst::ComplexMatrix m(o.size());
    for (std::size_t i = 0; i < o.size(); ++i)
        for (std::size_t j = 0; j < o.size(); ++j) m(i, j) = o[i][j];
    return m;
}

inline double max_diff(const oracle::Mat& a, const oracle::Mat& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

inline std::vector<oracle::Setting> to_oracle(const pqst::Dataset& data) {
    std::vector<oracle::Setting> out;
    for (const auto& s : data.settings) out.push_back({s.basis.str(), s.counts});
    return out;
}

inline std::vector<double> normals(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<double> v(n);
    for (double& x : v) x = nd(rng);
    return v;
}

/// Counts of a random Bures state under every Pauli setting.
inline pqst::Dataset random_dataset(std::size_t q, std::uint64_t shots, std::mt19937_64& rng) {
    const auto truth = pqst::sample_bures(std::size_t{1} << q, rng).second;
    const auto settings = pqst::all_pauli_settings(q);
    return pqst::simulate_counts(truth, settings, shots, rng);
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("pqst_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing
