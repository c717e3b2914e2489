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

// pqst: simulate -> sample -> estimate -> diagnose.
//
// Exit codes: 0 ok, 1 unexpected error, 2 bad flags, 3 unreadable/unwritable
// path, 4 invalid input file, 5 chain failure, 6 request inconsistent with data.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqst/bures.hpp"
#include "pqst/diagnostics.hpp"
#include "pqst/errors.hpp"
#include "pqst/io.hpp"
#include "pqst/measurement.hpp"
#include "pqst/runner.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kUsage = 2,
    kIo = 3,
    kBadInput = 4,
    kChainFailure = 5,
    kInconsistent = 6,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentRequest : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
    auto out = path;
    out.replace_extension();
    out += suffix;
    return out;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::size_t qubits = 0;
    std::optional<std::uint64_t> shots;
    std::string ground_truth = "bures";
    std::uint64_t seed = 0;
    fs::path out;
};

void cmd_simulate(const SimulateArgs& a) {
    if (a.qubits < 1 || a.qubits > 10) throw UsageError("--qubits must be in [1, 10]");
    const std::uint64_t shots = a.shots.value_or(pqst::default_shots(a.qubits));
    if (shots < 1) throw UsageError("--shots must be >= 1");
    const std::size_t dim = std::size_t{1} << a.qubits;

    // One generator: the Bures ground truth (if any) is drawn first, then the counts.
    std::mt19937_64 rng(a.seed);
    std::optional<pqst::DensityMatrix> truth;
    if (a.ground_truth == "bures") {
        truth = pqst::sample_bures(dim, rng).second;
    } else if (a.ground_truth == "w") {
        truth = pqst::DensityMatrix::pure(pqst::w_state(a.qubits).amplitudes());
    } else {
        truth = pqst::read_density_matrix(a.ground_truth);
        if (truth->dim() != dim) {
            throw pqst::InvalidState("ground-truth state has dim " + std::to_string(truth->dim()) +
                                     ", expected " + std::to_string(dim));
        }
    }

    const auto settings = pqst::all_pauli_settings(a.qubits);
    const auto data = pqst::simulate_counts(*truth, settings, shots, rng);
    pqst::write_counts(a.out, data);
    const auto truth_path = with_suffix(a.out, ".truth.json");
    pqst::write_density_matrix(truth_path, *truth);
    std::cout << "wrote " << a.out.string() << " (" << settings.size() << " settings x " << shots
              << " shots) and " << truth_path.string() << "\n";
}

// ---------------------------------------------------------------------------

struct SampleArgs {
    fs::path counts;
    std::size_t chains = 1;
    std::size_t samples = 1024;
    std::size_t thin = 1;
    std::size_t adapt_interval = 500;
    double beta0 = 0.1;
    std::uint64_t seed = 0;
    std::size_t workers = pqst::default_worker_count();
    fs::path out_dir;
};

void cmd_sample(SampleArgs a) {
    if (const char* env = std::getenv("QST_WORKERS"); env != nullptr && *env != '\0') {
        try {
            a.workers = std::stoul(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("QST_WORKERS is not a positive integer: ") + env);
        }
    }
    if (a.chains < 1 || a.samples < 1 || a.thin < 1 || a.adapt_interval < 1 || a.workers < 1) {
        throw UsageError("--chains, --samples, --thin, --adapt-interval and --workers must be >= 1");
    }
    if (!(a.beta0 > 0.0 && a.beta0 <= 1.0)) throw UsageError("--beta0 must lie in (0, 1]");

    const auto data = pqst::read_counts(a.counts);
    pqst::RunConfig cfg;
    cfg.chains = a.chains;
    cfg.chain.samples_kept = a.samples;
    cfg.chain.thinning = a.thin;
    cfg.chain.adapt_interval = a.adapt_interval;
    cfg.chain.beta_init = a.beta0;
    cfg.master_seed = a.seed;
    cfg.output_dir = a.out_dir;
    cfg.worker_limit = a.workers;
    cfg.dataset_hash = pqst::file_hash(a.counts);

    const auto pool = pqst::run_parallel(data, cfg);
    double slowest = 0.0;
    for (const auto& c : pool.chains()) slowest = std::max(slowest, c.wall_seconds);
    std::cout << "wrote " << pool.num_chains() << " chains x " << pool.samples_per_chain()
              << " samples to " << a.out_dir.string() << " (slowest chain " << slowest << " s)\n";
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
    fs::path samples_dir;
    fs::path out;
    std::optional<fs::path> rho_out;
    std::optional<fs::path> reference;
    bool target_w = false;
    std::size_t burn_in = 0;
};

void warn_on_missing_chains(const fs::path& dir, std::size_t found) {
    const auto manifest = pqst::manifest_path(dir);
    if (!fs::exists(manifest)) return;
    const auto j = nlohmann::json::parse(pqst::read_text_file(manifest), nullptr, false);
    if (j.is_discarded() || !j.contains("chains")) return;
    const auto expected = j["chains"].get<std::size_t>();
    if (expected != found) {
        std::cerr << "warning: manifest lists " << expected << " chains, found " << found
                  << "; estimating over the surviving chains\n";
    }
}

void cmd_estimate(const EstimateArgs& a) {
    const auto all = pqst::PooledSamples::load(a.samples_dir);
    warn_on_missing_chains(a.samples_dir, all.num_chains());
    if (a.burn_in >= all.samples_per_chain()) {
        throw InconsistentRequest("--burn-in " + std::to_string(a.burn_in) + " leaves no samples of " +
                                  std::to_string(all.samples_per_chain()));
    }
    const auto pool = all.without_burn_in(a.burn_in);
    const auto mean = pqst::pooled_mean(pool);

    nlohmann::json report;
    report["schema"] = "pqst.estimate_report";
    report["version"] = 1;
    report["N"] = pool.samples_per_chain();
    report["R"] = pool.num_chains();
    report["burn_in"] = a.burn_in;

    if (a.reference) {
        const auto ref = pqst::read_density_matrix(*a.reference);
        if (ref.dim() != mean.dim()) {
            throw InconsistentRequest("reference has dim " + std::to_string(ref.dim()) +
                                      ", samples have dim " + std::to_string(mean.dim()));
        }
        report["fidelity_vs_reference"] = pqst::fidelity(ref, mean);
        report["frob_err_sq"] = pqst::frobenius_error(mean, ref);
    }
    if (a.target_w) {
        const std::size_t dim = mean.dim();
        const auto q = static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(dim))));
        if ((std::size_t{1} << q) != dim || q < 1) {
            throw InconsistentRequest("--target-w needs a qubit system (dim 2^Q)");
        }
        report["w_overlap"] = pqst::expectation(mean, pqst::w_state(q));
    }

    const fs::path rho_path = a.rho_out.value_or(with_suffix(a.out, ".rho.json"));
    pqst::write_density_matrix(rho_path, mean);
    report["rho_file"] = rho_path.filename().string();
    pqst::write_text_file(a.out, report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

struct DiagnoseArgs {
    fs::path samples_dir;
    std::size_t max_lag = pqst::kDefaultMaxLag;
    fs::path out_dir;
    std::optional<fs::path> reference;
    std::vector<std::size_t> subsets;
};

void cmd_diagnose(const DiagnoseArgs& a) {
    if (!a.subsets.empty() && !a.reference) throw UsageError("--subsets requires --reference");
    const auto pool = pqst::PooledSamples::load(a.samples_dir);
    if (a.max_lag + 1 >= pool.samples_per_chain()) {
        throw InconsistentRequest("--max-lag " + std::to_string(a.max_lag) + " needs more than " +
                                  std::to_string(a.max_lag + 1) + " samples per chain, have " +
                                  std::to_string(pool.samples_per_chain()));
    }
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec || !fs::is_directory(a.out_dir)) throw pqst::IoError("cannot create " + a.out_dir.string());

    std::vector<std::pair<std::size_t, pqst::AcfResult>> acfs;
    std::vector<std::pair<std::size_t, pqst::IactResult>> iacts;
    std::vector<double> taus;
    for (const auto& chain : pool.chains()) {
        auto result = pqst::acf(pqst::chain_states(chain), a.max_lag);
        const auto it = pqst::iact(result, chain.num_samples(), 1);
        taus.push_back(it.tau);
        iacts.emplace_back(chain.chain_index, it);
        acfs.emplace_back(chain.chain_index, std::move(result));
    }
    pqst::write_text_file(a.out_dir / "acf.csv", pqst::acf_csv(acfs));
    pqst::write_text_file(a.out_dir / "iact.csv", pqst::iact_csv(iacts));
    const double tau = pqst::median(taus);
    std::cout << "median tau " << pqst::format_double(tau) << " over " << pool.num_chains() << " chains\n";

    if (a.reference) {
        const auto ref = pqst::read_density_matrix(*a.reference);
        if (ref.dim() != pool.dim_hilbert()) throw InconsistentRequest("reference dimension mismatch");
        std::vector<std::size_t> subsets = a.subsets;
        if (subsets.empty()) subsets.push_back(pool.num_chains());
        for (auto r : subsets) {
            if (r < 1 || r > pool.num_chains()) {
                throw pqst::InsufficientChains("subset R=" + std::to_string(r) + " exceeds the " +
                                               std::to_string(pool.num_chains()) + " available chains");
            }
        }
        const auto rows = pqst::error_scaling_report(pool, ref, subsets, tau);
        pqst::write_text_file(a.out_dir / "scaling.csv", pqst::scaling_csv(rows));
    }
    std::cout << "wrote diagnostics to " << a.out_dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel pCN Bayesian quantum state tomography"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate Pauli measurement counts");
    simulate->add_option("--qubits", sim.qubits, "Number of qubits Q")->required();
    simulate->add_option("--shots", sim.shots, "Shots per setting (default 25*2^Q)");
    simulate->add_option("--ground-truth", sim.ground_truth, "bures | w | path to a state JSON");
    simulate->add_option("--seed", sim.seed, "Generator seed")->required();
    simulate->add_option("--out", sim.out, "Counts JSON to write")->required();

    SampleArgs smp;
    auto* sample = app.add_subcommand("sample", "Run independent pCN chains");
    sample->add_option("--counts", smp.counts, "Counts JSON")->required();
    sample->add_option("--chains", smp.chains, "Number of chains R");
    sample->add_option("--samples", smp.samples, "Stored samples per chain N");
    sample->add_option("--thin", smp.thin, "Thinning T");
    sample->add_option("--adapt-interval", smp.adapt_interval, "Step-size adaptation window");
    sample->add_option("--beta0", smp.beta0, "Initial pCN step size");
    sample->add_option("--seed", smp.seed, "Master seed")->required();
    sample->add_option("--workers", smp.workers, "Max simultaneous chains (QST_WORKERS overrides)");
    sample->add_option("--out-dir", smp.out_dir, "Run directory")->required();

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Pooled Bayesian mean and accuracy report");
    estimate->add_option("--samples-dir", est.samples_dir, "Run directory")->required();
    estimate->add_option("--out", est.out, "Report JSON to write")->required();
    estimate->add_option("--rho-out", est.rho_out, "Pooled mean JSON (default <out>.rho.json)");
    estimate->add_option("--reference", est.reference, "Reference state JSON");
    estimate->add_flag("--target-w", est.target_w, "Report <W_Q|rho|W_Q>");
    estimate->add_option("--burn-in", est.burn_in, "Samples dropped from the start of each chain");

    DiagnoseArgs diag;
    auto* diagnose = app.add_subcommand("diagnose", "ACF, IACT and error-scaling CSVs");
    diagnose->add_option("--samples-dir", diag.samples_dir, "Run directory")->required();
    diagnose->add_option("--max-lag", diag.max_lag, "Maximum ACF lag");
    diagnose->add_option("--out-dir", diag.out_dir, "Directory for CSV output")->required();
    diagnose->add_option("--reference", diag.reference, "Reference state JSON for scaling reports");
    diagnose->add_option("--subsets", diag.subsets, "Chain counts R, e.g. 1,4,16")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (simulate->parsed()) cmd_simulate(sim);
        if (sample->parsed()) cmd_sample(smp);
        if (estimate->parsed()) cmd_estimate(est);
        if (diagnose->parsed()) cmd_diagnose(diag);
        return kOk;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const pqst::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const pqst::ChainFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& f : e.failed()) std::cerr << "  chain " << f.chain_index << ": " << f.cause << "\n";
        return kChainFailure;
    } catch (const InconsistentRequest& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInconsistent;
    } catch (const pqst::InsufficientChains& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInconsistent;
    } catch (const pqst::Error& e) {
        // Malformed or invariant-violating input files.
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kUnexpected;
    }
}
