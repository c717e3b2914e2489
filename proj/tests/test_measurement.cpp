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

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "pqst/errors.hpp"
#include "pqst/measurement.hpp"

using Catch::Approx;
using pqst::PauliString;

TEST_CASE("Pauli strings", "[measurement]") {
    const auto s = PauliString::parse("XZY");
    CHECK(s.num_qubits() == 3);
    CHECK(s.str() == "XZY");
    CHECK(s.axes()[1] == pqst::PauliAxis::Z);
    CHECK(PauliString::parse("XY") < PauliString::parse("XZ"));
    CHECK_THROWS_AS(PauliString::parse(""), pqst::InvalidDataset);
    CHECK_THROWS_AS(PauliString::parse("XA"), pqst::InvalidDataset);
}

TEST_CASE("all Pauli settings", "[measurement]") {
    const auto one = pqst::all_pauli_settings(1);
    REQUIRE(one.size() == 3);
    CHECK(one[0].str() == "X");
    CHECK(one[2].str() == "Z");
    const auto two = pqst::all_pauli_settings(2);
    REQUIRE(two.size() == 9);
    CHECK(two[0].str() == "XX");
    CHECK(two[1].str() == "XY");
    CHECK(two[3].str() == "YX");
    CHECK(two[8].str() == "ZZ");
    CHECK(pqst::all_pauli_settings(4).size() == 81);
    CHECK(std::is_sorted(two.begin(), two.end()));
}

TEST_CASE("POVM effects match explicit tensor products", "[measurement]") {
    for (std::size_t q : {1u, 2u, 3u}) {
        for (const auto& s : pqst::all_pauli_settings(q)) {
            const auto povm = pqst::pauli_povm(s);
            REQUIRE(povm.effects.size() == (std::size_t{1} << q));
            pqst::ComplexMatrix sum(povm.dim);
            for (std::size_t l = 0; l < povm.effects.size(); ++l) {
                CHECK(testing::max_diff(testing::to_oracle(povm.effects[l]), oracle::pauli_effect(s.str(), l)) < 1e-14);
                sum += povm.effects[l];
            }
            CHECK(pqst::max_abs_diff(sum, pqst::ComplexMatrix::identity(povm.dim)) < 1e-14);
        }
    }
}

TEST_CASE("outcome probabilities of known states", "[measurement]") {
    const std::vector<pqst::Complex> zero{1.0, 0.0}, plus_i{M_SQRT1_2, pqst::Complex(0, M_SQRT1_2)};
    const auto p0 = pqst::DensityMatrix::pure(zero);
    auto p = pqst::outcome_probabilities(p0, pqst::pauli_povm(PauliString::parse("Z")));
    CHECK(p[0] == Approx(1.0));
    CHECK(p[1] == Approx(0.0).margin(1e-15));
    p = pqst::outcome_probabilities(p0, pqst::pauli_povm(PauliString::parse("X")));
    CHECK(p[0] == Approx(0.5));
    p = pqst::outcome_probabilities(pqst::DensityMatrix::pure(plus_i), pqst::pauli_povm(PauliString::parse("Y")));
    CHECK(p[0] == Approx(1.0));

    // |01>: qubit 0 is the most significant bit of the outcome index.
    const std::vector<pqst::Complex> ket01{0.0, 1.0, 0.0, 0.0};
    p = pqst::outcome_probabilities(pqst::DensityMatrix::pure(ket01), pqst::pauli_povm(PauliString::parse("ZZ")));
    CHECK(p[1] == Approx(1.0));
}

TEST_CASE("probabilities sum to one", "[measurement]") {
    std::mt19937_64 rng(20);
    const auto rho = pqst::sample_bures(8, rng).second;
    for (const auto& s : pqst::all_pauli_settings(3)) {
        const auto p = pqst::outcome_probabilities(rho, pqst::pauli_povm(s));
        CHECK(std::accumulate(p.begin(), p.end(), 0.0) == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("multinomial sampling", "[measurement]") {
    std::mt19937_64 rng(21);
    const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
    std::vector<double> mean(4, 0.0);
    const int reps = 2000;
    for (int i = 0; i < reps; ++i) {
        const auto c = pqst::sample_multinomial(std::span<const double>(probs), 100, rng);
        CHECK(std::accumulate(c.begin(), c.end(), std::uint64_t{0}) == 100);
        for (std::size_t l = 0; l < 4; ++l) mean[l] += static_cast<double>(c[l]) / reps;
    }
    // 4 sigma bands on the per-outcome means.
    for (std::size_t l = 0; l < 4; ++l) {
        const double sd = std::sqrt(100.0 * probs[l] * (1 - probs[l]) / reps);
        CHECK(std::abs(mean[l] - 100.0 * probs[l]) < 4.0 * sd);
    }
    const std::vector<double> certain{0.0, 1.0};
    const auto c = pqst::sample_multinomial(std::span<const double>(certain), 7, rng);
    CHECK(c == std::vector<std::uint64_t>{0, 7});
}

TEST_CASE("simulated datasets", "[measurement]") {
    std::mt19937_64 a(22), b(22);
    const auto da = testing::random_dataset(2, 10, a);
    const auto db = testing::random_dataset(2, 10, b);
    REQUIRE(da.settings.size() == 9);
    for (std::size_t k = 0; k < 9; ++k) {
        CHECK(da.settings[k].counts == db.settings[k].counts);
        CHECK(std::accumulate(da.settings[k].counts.begin(), da.settings[k].counts.end(), std::uint64_t{0}) == 10);
    }
    CHECK(da.total_counts() == 90);
    CHECK(pqst::default_shots(1) == 50);
    CHECK(pqst::default_shots(4) == 400);

    const auto rho = pqst::DensityMatrix::maximally_mixed(2);
    const auto settings = pqst::all_pauli_settings(2);
    CHECK_THROWS_AS(pqst::simulate_counts(rho, settings, 10, a), pqst::DimensionMismatch);
    const auto one = pqst::all_pauli_settings(1);
    CHECK_THROWS_AS(pqst::simulate_counts(rho, one, 0, a), pqst::InvalidDataset);
}

TEST_CASE("dataset validation", "[measurement]") {
    pqst::Dataset d;
    d.num_qubits = 1;
    d.shots_per_setting = 4;
    d.settings.push_back({PauliString::parse("Z"), {1, 3}});
    CHECK_NOTHROW(d.validate());
    d.settings.push_back({PauliString::parse("Z"), {2, 2}});
    CHECK_THROWS_AS(d.validate(), pqst::InvalidDataset);  // duplicate
    d.settings.back() = {PauliString::parse("X"), {2, 1}};
    CHECK_THROWS_AS(d.validate(), pqst::InvalidDataset);  // wrong sum
    d.settings.back() = {PauliString::parse("XX"), {1, 1, 1, 1}};
    CHECK_THROWS_AS(d.validate(), pqst::InvalidDataset);  // wrong qubit count
}
