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

#include "pqst/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "pqst/errors.hpp"

namespace pqst {

using json = nlohmann::json;

namespace {

constexpr std::array<char, 4> kMagic = {'P', 'Q', 'S', 'T'};
constexpr std::size_t kHeaderBytes = 4 + 5 * 4;

template <typename T>
T to_little_endian(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    } else {
        return v;
    }
}

template <typename T>
void put(std::string& buf, T v) {
    v = to_little_endian(v);
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <typename T>
T get(const std::string& buf, std::size_t offset) {
    T v;
    std::memcpy(&v, buf.data() + offset, sizeof(T));
    return to_little_endian(v);
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

void append_matrix_rows(std::string& out, const ComplexMatrix& m, bool imag) {
    out += "[";
    for (std::size_t i = 0; i < m.dim(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j > 0) out += ", ";
            out += format_double(imag ? m(i, j).imag() : m(i, j).real());
        }
        out += "]";
    }
    out += "]";
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string content_hash(std::span<const char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_hash(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    return content_hash(text);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path.string());
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw IoError("write failed for " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Density matrices

std::string density_matrix_to_json(const DensityMatrix& rho) {
    std::string out = "{\"schema\": \"pqst.density_matrix\", \"version\": 1, \"dim\": ";
    out += std::to_string(rho.dim());
    out += ", \"re\": ";
    append_matrix_rows(out, rho.matrix(), false);
    out += ", \"im\": ";
    append_matrix_rows(out, rho.matrix(), true);
    out += "}\n";
    return out;
}

DensityMatrix density_matrix_from_json(const std::string& text) {
    const json j = parse_json(text, "density matrix");
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        const auto& re = j.at("re");
        const auto& im = j.at("im");
        if (dim < 1 || re.size() != dim || im.size() != dim) {
            throw FormatError("density matrix: \"re\"/\"im\" must have dim rows");
        }
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (re[i].size() != dim || im[i].size() != dim) {
                throw FormatError("density matrix: row " + std::to_string(i) + " has wrong length");
            }
            for (std::size_t k = 0; k < dim; ++k) {
                m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
            }
        }
        return DensityMatrix(std::move(m));
    } catch (const json::exception& e) {
        throw FormatError(std::string("density matrix: ") + e.what());
    }
}

void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho) {
    write_text_file(path, density_matrix_to_json(rho));
}

DensityMatrix read_density_matrix(const std::filesystem::path& path) {
    return density_matrix_from_json(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Counts

std::string counts_to_json(const Dataset& data) {
    json j;
    j["schema"] = "pqst.counts";
    j["version"] = 1;
    j["num_qubits"] = data.num_qubits;
    j["shots_per_setting"] = data.shots_per_setting;
    j["settings"] = json::array();
    for (const auto& s : data.settings) {
        j["settings"].push_back({{"basis", s.basis.str()}, {"counts", s.counts}});
    }
    return j.dump(2) + "\n";
}

Dataset counts_from_json(const std::string& text) {
    const json j = parse_json(text, "counts");
    Dataset data;
    try {
        data.num_qubits = j.at("num_qubits").get<std::size_t>();
        data.shots_per_setting = j.at("shots_per_setting").get<std::uint64_t>();
        for (const auto& s : j.at("settings")) {
            data.settings.push_back({PauliString::parse(s.at("basis").get<std::string>()),
                                     s.at("counts").get<std::vector<std::uint64_t>>()});
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("counts: ") + e.what());
    }
    data.validate();
    return data;
}

void write_counts(const std::filesystem::path& path, const Dataset& data) {
    write_text_file(path, counts_to_json(data));
}

Dataset read_counts(const std::filesystem::path& path) { return counts_from_json(read_text_file(path)); }

// ---------------------------------------------------------------------------
// Chain files

std::filesystem::path chain_sample_path(const std::filesystem::path& dir, std::size_t chain_index) {
    char name[32];
    std::snprintf(name, sizeof(name), "chain_%05zu.pqst", chain_index);
    return dir / name;
}

std::filesystem::path chain_metadata_path(const std::filesystem::path& dir, std::size_t chain_index) {
    char name[32];
    std::snprintf(name, sizeof(name), "chain_%05zu.json", chain_index);
    return dir / name;
}

std::filesystem::path manifest_path(const std::filesystem::path& dir) { return dir / "manifest.json"; }

void write_chain_samples(const std::filesystem::path& path, const ChainOutput& chain) {
    std::string buf;
    buf.reserve(kHeaderBytes + chain.samples.size() * sizeof(double));
    buf.append(kMagic.data(), kMagic.size());
    put<std::uint32_t>(buf, kSampleFormatVersion);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(chain.dim_hilbert));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(chain.num_samples()));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(chain.chain_index));
    put<std::uint32_t>(buf, 0);
    for (double v : chain.samples) put<double>(buf, v);
    write_text_file(path, buf);
}

ChainOutput read_chain_samples(const std::filesystem::path& path) {
    const std::string buf = read_text_file(path);
    const std::string where = path.string() + ": ";
    if (buf.size() < kHeaderBytes || !std::equal(kMagic.begin(), kMagic.end(), buf.begin())) {
        throw FormatError(where + "not a PQST sample file");
    }
    const auto version = get<std::uint32_t>(buf, 4);
    if (version != kSampleFormatVersion) {
        throw FormatError(where + "unsupported format version " + std::to_string(version));
    }
    ChainOutput chain;
    chain.dim_hilbert = get<std::uint32_t>(buf, 8);
    const std::size_t n = get<std::uint32_t>(buf, 12);
    chain.chain_index = get<std::uint32_t>(buf, 16);
    if (chain.dim_hilbert == 0) throw FormatError(where + "zero dimension");
    const std::size_t values = n * param_count(chain.dim_hilbert);
    if (buf.size() != kHeaderBytes + values * sizeof(double)) {
        throw FormatError(where + "truncated or oversized payload");
    }
    chain.samples.resize(values);
    for (std::size_t k = 0; k < values; ++k) {
        chain.samples[k] = get<double>(buf, kHeaderBytes + k * sizeof(double));
    }
    return chain;
}

void write_chain_metadata(const std::filesystem::path& path, const ChainOutput& chain) {
    json j;
    j["schema"] = "pqst.chain_metadata";
    j["version"] = 1;
    j["chain_index"] = chain.chain_index;
    j["seed"] = chain.seed;
    j["final_beta"] = chain.final_beta;
    j["beta_trace"] = chain.beta_trace;
    j["acceptance_fractions"] = chain.acceptance_fractions;
    j["wall_clock_seconds"] = chain.wall_seconds;
    write_text_file(path, j.dump(2) + "\n");
}

void read_chain_metadata(const std::filesystem::path& path, ChainOutput& chain) {
    const json j = parse_json(read_text_file(path), "chain metadata");
    try {
        chain.seed = j.at("seed").get<std::uint64_t>();
        chain.final_beta = j.at("final_beta").get<double>();
        chain.beta_trace = j.at("beta_trace").get<std::vector<double>>();
        chain.acceptance_fractions = j.at("acceptance_fractions").get<std::vector<double>>();
        chain.wall_seconds = j.at("wall_clock_seconds").get<double>();
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace pqst
