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

#include <cstring>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "pqst/errors.hpp"
#include "pqst/io.hpp"

using Catch::Approx;

TEST_CASE("number formatting and hashing", "[io]") {
    CHECK(pqst::format_double(0.1) == "0.10000000000000001");
    CHECK(pqst::format_double(2.0) == "2");
    CHECK(pqst::content_hash(std::span<const char>()) == "fnv1a64:cbf29ce484222325");
    const std::string a = "a";
    CHECK(pqst::content_hash(a) == "fnv1a64:af63dc4c8601ec8c");
}

TEST_CASE("density matrix files round-trip", "[io]") {
    testing::TempDir dir;
    std::mt19937_64 rng(70);
    const auto rho = pqst::sample_bures(4, rng).second;
    pqst::write_density_matrix(dir / "rho.json", rho);
    const auto back = pqst::read_density_matrix(dir / "rho.json");
    CHECK(back.matrix() == rho.matrix());
    CHECK(testing::slurp(dir / "rho.json").find("\"schema\": \"pqst.density_matrix\"") != std::string::npos);
}

TEST_CASE("density matrix reader rejects bad input", "[io]") {
    CHECK_THROWS_AS(pqst::density_matrix_from_json("{"), pqst::FormatError);
    CHECK_THROWS_AS(pqst::density_matrix_from_json(R"({"dim":2,"re":[[1,0]],"im":[[0,0]]})"), pqst::FormatError);
    CHECK_THROWS_AS(pqst::density_matrix_from_json(R"({"dim":2,"re":[[0.7,0],[0,0.7]],"im":[[0,0],[0,0]]})"),
                    pqst::InvalidState);
    const auto ok = pqst::density_matrix_from_json(R"({"dim":2,"re":[[0.5,0],[0,0.5]],"im":[[0,0],[0,0]]})");
    CHECK(ok(1, 1).real() == 0.5);
    CHECK_THROWS_AS(pqst::read_density_matrix("/nonexistent/rho.json"), pqst::IoError);
}

TEST_CASE("counts files round-trip", "[io]") {
    testing::TempDir dir;
    std::mt19937_64 rng(71);
    const auto data = testing::random_dataset(2, 20, rng);
    pqst::write_counts(dir / "c.json", data);
    const auto back = pqst::read_counts(dir / "c.json");
    REQUIRE(back.settings.size() == data.settings.size());
    CHECK(back.num_qubits == 2);
    CHECK(back.shots_per_setting == 20);
    for (std::size_t k = 0; k < data.settings.size(); ++k) {
        CHECK(back.settings[k].basis == data.settings[k].basis);
        CHECK(back.settings[k].counts == data.settings[k].counts);
    }
    CHECK(pqst::counts_to_json(back) == pqst::counts_to_json(data));
}

TEST_CASE("counts reader", "[io]") {
    const auto d = pqst::counts_from_json(
        R"({"num_qubits":1,"shots_per_setting":3,"settings":[{"basis":"Z","counts":[1,2]}]})");
    CHECK(d.settings.front().counts[1] == 2);
    CHECK_THROWS_AS(pqst::counts_from_json("[1,2]"), pqst::FormatError);
    CHECK_THROWS_AS(pqst::counts_from_json(
                        R"({"num_qubits":1,"shots_per_setting":3,"settings":[{"basis":"Z","counts":[1,1]}]})"),
                    pqst::InvalidDataset);
}

TEST_CASE("chain sample files", "[io]") {
    testing::TempDir dir;
    pqst::ChainOutput c;
    c.chain_index = 7;
    c.dim_hilbert = 1;
    c.samples = {0.5, -1.0, 2.0, 3.25, 1e-300, 4.0, -0.0, 1.0};
    const auto path = pqst::chain_sample_path(dir.path(), 7);
    CHECK(path.filename() == "chain_00007.pqst");
    pqst::write_chain_samples(path, c);

    const std::string bytes = testing::slurp(path);
    REQUIRE(bytes.size() == 24 + 8 * 8);
    CHECK(bytes.substr(0, 4) == "PQST");
    auto u32 = [&](std::size_t off) {
        std::uint32_t v = 0;
        for (int k = 3; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(bytes[off + k]);
        return v;
    };
    CHECK(u32(4) == 1);   // version
    CHECK(u32(8) == 1);   // D
    CHECK(u32(12) == 2);  // N
    CHECK(u32(16) == 7);  // chain index
    CHECK(u32(20) == 0);
    double first = 0.0;
    std::memcpy(&first, bytes.data() + 24, 8);
    CHECK(first == 0.5);

    const auto back = pqst::read_chain_samples(path);
    CHECK(back.samples == c.samples);
    CHECK(back.chain_index == 7);
    CHECK(back.num_samples() == 2);

    std::ofstream(dir / "bad.pqst", std::ios::binary) << bytes.substr(0, 40);
    CHECK_THROWS_AS(pqst::read_chain_samples(dir / "bad.pqst"), pqst::FormatError);
    std::ofstream(dir / "magic.pqst", std::ios::binary) << "QQST" << bytes.substr(4);
    CHECK_THROWS_AS(pqst::read_chain_samples(dir / "magic.pqst"), pqst::FormatError);
}

TEST_CASE("chain metadata", "[io]") {
    testing::TempDir dir;
    pqst::ChainOutput c;
    c.seed = 0xFFFFFFFFFFFFFFFFULL;
    c.beta_trace = {0.11, 0.121};
    c.acceptance_fractions = {0.7, 0.65};
    c.final_beta = 0.121;
    c.wall_seconds = 1.5;
    pqst::write_chain_metadata(dir / "m.json", c);
    pqst::ChainOutput back;
    pqst::read_chain_metadata(dir / "m.json", back);
    CHECK(back.seed == c.seed);
    CHECK(back.beta_trace == c.beta_trace);
    CHECK(back.acceptance_fractions == c.acceptance_fractions);
    CHECK(back.final_beta == c.final_beta);
}

TEST_CASE("text files", "[io]") {
    testing::TempDir dir;
    pqst::write_text_file(dir / "a.txt", "hello");
    CHECK(pqst::read_text_file(dir / "a.txt") == "hello");
    CHECK_THROWS_AS(pqst::write_text_file(dir / "missing" / "a.txt", "x"), pqst::IoError);
}
