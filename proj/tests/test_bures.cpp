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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "pqst/bures.hpp"
#include "pqst/errors.hpp"

using Catch::Approx;

TEST_CASE("parameter vectors", "[bures]") {
    CHECK(pqst::param_count(1) == 4);
    CHECK(pqst::param_count(4) == 64);
    const pqst::ParamVector zero(2);
    CHECK(zero.size() == 16);
    CHECK_THROWS_AS(pqst::ParamVector(2, std::vector<double>(15)), pqst::DimensionMismatch);
    CHECK_THROWS_AS(pqst::ParamVector(1, {0.0, NAN, 0.0, 0.0}), pqst::NonFiniteState);
}

TEST_CASE("rho(x) matches the straight-line oracle", "[bures]") {
    std::mt19937_64 rng(10);
    for (std::size_t d : {1u, 2u, 4u, 8u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto x = testing::normals(pqst::param_count(d), rng);
            const auto rho = pqst::rho_from_params(pqst::ParamVector(d, x));
            CHECK(testing::max_diff(testing::to_oracle(rho.matrix()), oracle::rho_of(x, d)) < 1e-12);
            CHECK_NOTHROW(pqst::DensityMatrix(rho.matrix()));
        }
    }
}

TEST_CASE("parameter layout is [ReG | ImG | ReH | ImH]", "[bures]") {
    // H = I gives U = I, so W = 2G and rho = G G^dagger / Tr.
    std::vector<double> x(16, 0.0);
    x[0] = 1.0;                // Re G_00
    x[4 + 3] = 1.0;            // Im G_11
    x[8 + 0] = x[8 + 3] = 1.0; // Re H = I
    const auto rho = pqst::rho_from_params(pqst::ParamVector(2, x));
    CHECK(rho(0, 0).real() == Approx(0.5));
    CHECK(rho(1, 1).real() == Approx(0.5));
    CHECK(std::abs(rho(0, 1)) < 1e-15);

    // Only G_01 nonzero: W has a single entry in row 0, so rho = |0><0|.
    std::vector<double> y(16, 0.0);
    y[1] = 2.0;
    y[8] = y[11] = 1.0;
    const auto r2 = pqst::rho_from_params(pqst::ParamVector(2, y));
    CHECK(r2(0, 0).real() == Approx(1.0));
}

TEST_CASE("degenerate parameters are reported", "[bures]") {
    std::vector<double> x(16, 0.0);
    x[8] = x[11] = 1.0;  // G = 0
    CHECK_THROWS_AS(pqst::rho_from_params(pqst::ParamVector(2, x)), pqst::DegenerateState);
}

TEST_CASE("log prior", "[bures]") {
    const double base = -8.0 * std::log(2.0 * std::numbers::pi);
    CHECK(pqst::log_prior(pqst::ParamVector(2)) == Approx(base));
    std::vector<double> x(16, 0.0);
    x[3] = 2.0;
    CHECK(pqst::log_prior(pqst::ParamVector(2, x)) == Approx(base - 2.0));
}

TEST_CASE("sample_bures draws the parameters first", "[bures]") {
    std::mt19937_64 a(5), b(5);
    const auto [x, rho] = pqst::sample_bures(2, a);
    const auto expected = testing::normals(16, b);
    CHECK(std::vector<double>(x.values().begin(), x.values().end()) == expected);
    CHECK(a() == b());
    CHECK(rho.matrix() == pqst::rho_from_params(x).matrix());
}

TEST_CASE("a one-dimensional space has the single state 1", "[bures]") {
    std::mt19937_64 rng(6);
    const auto rho = pqst::sample_bures(1, rng).second;
    CHECK(rho(0, 0).real() == Approx(1.0));
}
