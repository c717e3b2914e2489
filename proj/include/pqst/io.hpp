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

// File formats.
//
// Density matrix (JSON):
//   {"schema": "pqst.density_matrix", "version": 1, "dim": D,
//    "re": [[...], ...], "im": [[...], ...]}          rows of D values, %.17g
//
// Counts (JSON):
//   {"schema": "pqst.counts", "version": 1, "num_qubits": Q, "shots_per_setting": P,
//    "settings": [{"basis": "XZ", "counts": [c_0, ..., c_{D-1}]}, ...]}
//   basis character q is qubit q; outcome index bit (Q-1-q) is qubit q, 0 for the
//   +1 eigenvalue. "schema"/"version" are optional on input.
//
// Chain samples (binary, little-endian):
//   "PQST" | u32 version = 1 | u32 D | u32 N | u32 chain index | u32 reserved = 0 |
//   N * 4D^2 float64, sample-major.
//
// Chain metadata (JSON): chain_index, seed, final_beta, beta_trace,
//   acceptance_fractions, wall_clock_seconds.
// Run manifest (JSON): master_seed, chains, chain_config, dataset_hash,
//   tool_version, started_utc, finished_utc.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "pqst/measurement.hpp"
#include "pqst/pcn.hpp"
#include "pqst/qmatrix.hpp"

namespace pqst {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::uint32_t kSampleFormatVersion = 1;

/// "%.17g"
std::string format_double(double v);

/// "fnv1a64:<16 hex digits>" of the bytes.
std::string content_hash(std::span<const char> bytes);
std::string file_hash(const std::filesystem::path& path);

std::string density_matrix_to_json(const DensityMatrix& rho);
/// Accepts any Hermitian PSD unit-trace matrix; throws FormatError or InvalidState.
DensityMatrix density_matrix_from_json(const std::string& text);
void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho);
DensityMatrix read_density_matrix(const std::filesystem::path& path);

std::string counts_to_json(const Dataset& data);
/// Throws FormatError on malformed JSON, InvalidDataset on broken invariants.
Dataset counts_from_json(const std::string& text);
void write_counts(const std::filesystem::path& path, const Dataset& data);
Dataset read_counts(const std::filesystem::path& path);

std::filesystem::path chain_sample_path(const std::filesystem::path& dir, std::size_t chain_index);
std::filesystem::path chain_metadata_path(const std::filesystem::path& dir, std::size_t chain_index);
std::filesystem::path manifest_path(const std::filesystem::path& dir);

void write_chain_samples(const std::filesystem::path& path, const ChainOutput& chain);
/// Restores chain_index, dim_hilbert and samples. Throws FormatError.
ChainOutput read_chain_samples(const std::filesystem::path& path);

void write_chain_metadata(const std::filesystem::path& path, const ChainOutput& chain);
/// Fills seed, beta/acceptance traces, final_beta and wall_seconds into `chain`.
void read_chain_metadata(const std::filesystem::path& path, ChainOutput& chain);

/// Throws IoError if unreadable.
std::string read_text_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename. Throws IoError if unwritable.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pqst
