#pragma once

// Experiment harness: scenarios of (VM count x task counts), several
// algorithms, repeated seeded runs, and per-algorithm summary statistics.

#include "salp/optimizer.hpp"
#include "salp/problem.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salp {

struct AlgorithmSetup {
    std::string id;
    OptimizerConfig config; // seed is ignored; each run derives its own
};

struct ScenarioSpec {
    std::string name = "scenario";
    std::size_t vm_count = 10;
    std::vector<std::size_t> task_counts{150, 200, 250, 300};
    std::size_t runs_per_cell = 20;
    std::uint64_t base_seed = 0;
    InstanceGenSpec gen_spec;  // n, m and seed are filled per cell
    std::vector<AlgorithmSetup> algorithms;
    bool fresh_instance_per_run = false;
    std::size_t jobs = 1;      // worker threads; 0 = hardware concurrency
    bool keep_traces = false;  // retain per-run traces in the report
};

struct Summary {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation, 0 for a single value
    double min = 0.0;
    double max = 0.0;
};

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double best_makespan = 0.0;
    std::size_t evaluations = 0;
    double wall_ms = 0.0;
    Assignment best_assignment;
    std::vector<double> trace; // empty unless keep_traces
    std::uint64_t instance_checksum = 0;
};

struct CellResult {
    std::string algorithm;
    std::size_t task_count = 0;
    std::vector<RunRecord> runs;
    Summary summary;
    bool failed = false;
    std::string error;
};

/// Cross-algorithm figures for one task count. Baselines are every
/// algorithm other than mssa whose cell completed.
struct TaskCountSummary {
    std::size_t task_count = 0;
    std::optional<double> mssa_mean;
    std::size_t baseline_count = 0;
    Summary baseline_means;  // mean/std/min/max over the baseline cell means
    std::map<std::string, double> improvement_vs;  // per baseline, percent
    std::optional<double> improvement_vs_average;   // vs baseline_means.mean
    std::optional<double> mean_of_improvements;     // mean of improvement_vs
};

struct ScenarioReport {
    std::string name;
    std::size_t vm_count = 0;
    std::vector<CellResult> cells;  // algorithm-major, task counts in spec order
    std::vector<TaskCountSummary> task_summaries;

    const CellResult* cell(std::string_view algorithm, std::size_t task_count) const;
    bool any_failed() const;
};

Summary summarize(std::span<const double> values);

/// 100 (baseline - mssa) / baseline.
double improvement_vs(double mssa_mean, double baseline_mean);

/// FNV-1a of (base_seed, algorithm id, task_count, run) finished with a
/// splitmix64 mix. Independent of execution order.
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view algorithm, std::size_t task_count,
                          std::size_t run);

/// The instance run `run` sees for `task_count`. Shared across runs and
/// algorithms unless fresh_instance_per_run is set.
ProblemInstance scenario_instance(const ScenarioSpec& spec, std::size_t task_count, std::size_t run);

/// Throws ConfigError on an unusable spec before anything runs.
void validate_scenario(const ScenarioSpec& spec);

/// Re-executes a single run of a cell from its derived seed.
RunRecord run_cell_once(const ScenarioSpec& spec, const AlgorithmSetup& setup, std::size_t task_count,
                        std::size_t run);

/// Cell failures (e.g. bad parameters) are recorded on the cell and do not
/// stop the sweep.
ScenarioReport run_scenario(const ScenarioSpec& spec);

// --- export --------------------------------------------------------------

/// Shortest round-trip text form of a double.
std::string format_number(double v);

std::string trace_file_name(std::string_view scenario, std::string_view algorithm, std::size_t run);

void write_trace_csv(const std::filesystem::path& path, std::span<const double> trace);
void write_report_csv(const std::filesystem::path& path, std::span<const ScenarioReport> reports);
void write_summary_csv(const std::filesystem::path& path, std::span<const ScenarioReport> reports);

/// Rows = algorithms, columns = task counts in descending order, followed by
/// the baseline average, STD and improvement rows.
std::string format_table(const ScenarioReport& report);

} // namespace salp
