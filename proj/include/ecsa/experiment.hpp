#pragma once

#include "ecsa/allocation.hpp"
#include "ecsa/benchmarks.hpp"
#include "ecsa/optimizer.hpp"
#include "ecsa/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecsa::experiment {

enum class Algorithm { csa, ecsa };

std::string_view to_string(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text);

/// Optional replacements for the preset optimizer settings.
struct Overrides {
    std::optional<std::size_t> population;
    std::optional<std::size_t> iterations;
    std::optional<double> pa_min, pa_max, alpha_min, alpha_max;
    std::optional<std::uint64_t> t0;
    std::optional<double> t_mult;
};

/// CSA or ECSA preset with overrides applied. Schedule overrides only touch
/// ECSA; CSA keeps its fixed parameters.
OptimizerConfig make_config(Algorithm algorithm, const Overrides& overrides, std::uint64_t seed);

struct ExperimentConfig {
    std::vector<bench::FunctionId> functions; // empty = full suite
    std::vector<Algorithm> algorithms{Algorithm::csa, Algorithm::ecsa};
    std::size_t trials = 30;
    std::uint64_t base_seed = 20240611;
    std::size_t dim = bench::kDefaultDim;
    Overrides overrides;
    std::size_t workers = 0; // 0 = ECSA_WORKERS or hardware concurrency

    void validate() const;
    std::vector<bench::FunctionId> resolved_functions() const;
};

/// base_seed + FNV-1a("<algorithm>/<function>/<trial>"); independent of which
/// other cells an experiment contains.
std::uint64_t trial_seed(std::uint64_t base_seed, std::string_view algorithm, std::string_view function,
                         std::size_t trial);

/// Worker count from the ECSA_WORKERS environment variable, else hardware
/// concurrency (at least 1).
std::size_t default_workers();

struct TrialResult {
    bench::FunctionId function;
    Algorithm algorithm;
    std::size_t trial;
    std::uint64_t seed;
    double best_fitness;
    std::uint64_t evaluations;
    Vector trace;
};

/// Runs every (function, algorithm, trial) cell on a worker pool. Results are
/// ordered by (function, algorithm, trial).
std::vector<TrialResult> run_bench(const ExperimentConfig& config);

struct CellSummary {
    std::string function;
    std::string algorithm;
    stats::Summary summary;
};

/// One row per (function, algorithm) in result order.
std::vector<CellSummary> summarize_cells(const std::vector<TrialResult>& results);

/// Writes trials.csv, summary.csv, summary.txt, traces/<F>_<alg>_t<trial>.csv
/// and mean_traces/<F>_<alg>.csv under `dir`.
void write_bench_outputs(const std::vector<TrialResult>& results, const std::filesystem::path& dir);

/// Throws std::runtime_error if `dir` cannot be created or written.
void ensure_writable_dir(const std::filesystem::path& dir);

/// A row of trials.csv.
struct TrialRecord {
    std::string function;
    std::string algorithm;
    std::size_t trial;
    std::uint64_t seed;
    double best_fitness;
    std::uint64_t evaluations;
};

std::vector<TrialRecord> read_trials_csv(std::istream& in);
std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path);
void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& results);

struct ComparisonRow {
    std::string function;
    stats::Summary csa;
    stats::Summary ecsa;
    double p_value;
    stats::Verdict verdict;
    std::string winner; // lower mean: "csa", "ecsa" or "tie"
};

/// Per-function CSA vs ECSA comparison in first-appearance order. Throws
/// std::runtime_error when either algorithm is missing for a function.
std::vector<ComparisonRow> compare(const std::vector<TrialRecord>& records, double level = 0.05);

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_comparison_table(std::ostream& out, const std::vector<ComparisonRow>& rows);

struct AllocateConfig {
    std::vector<Algorithm> algorithms{Algorithm::csa, Algorithm::ecsa};
    std::size_t trials = 30;
    std::uint64_t base_seed = 20240611;
    Overrides overrides;
    std::size_t workers = 0;
};

struct AllocationRun {
    std::size_t trial;
    std::uint64_t seed;
    double fitness;
    double gap; // (fitness - optimum) / optimum, or fitness - optimum when the optimum is 0
    std::uint64_t evaluations;
    la::Assignment assignment;
    Vector trace;
};

struct AllocationResult {
    Algorithm algorithm;
    std::vector<AllocationRun> runs;
    stats::Summary fitness{0.0, 0.0};
    double mean_gap = 0.0;
    std::size_t best_run = 0;
};

struct AllocationReport {
    double optimum;
    std::vector<AllocationResult> results;
};

/// Discretized optimization over the unit cube of dimension
/// n_blocks * n_areas, decoded by row-wise argmax.
AllocationReport run_allocation(const la::AllocationInstance& instance, const AllocateConfig& config);

/// Writes allocation_summary.csv, allocation_runs.csv, best_<alg>.csv,
/// traces/<alg>_t<trial>.csv and mean_traces/<alg>.csv under `dir`.
void write_allocation_outputs(const la::AllocationInstance& instance, const AllocationReport& report,
                              const std::filesystem::path& dir);
void write_allocation_table(std::ostream& out, const AllocationReport& report);

/// Element-wise mean of equally long traces.
Vector mean_trace(const std::vector<const Vector*>& traces);

/// Shortest round-trip decimal representation of `v`.
std::string format_double(double v);

} // namespace ecsa::experiment
