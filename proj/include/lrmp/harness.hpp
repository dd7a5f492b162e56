#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrmp/io.hpp"

namespace lrmp {

struct BenchRow {
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double init_error = 0.0;
  double recovery_error = 0.0;
  double dual_gap = 0.0;
  double eigengap = 0.0;
  int solution_rank = 0;
  long certificate_failures = 0;
};

struct BenchStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double lambda = 0.0;
  BenchStats init_error, recovery_error, dual_gap, eigengap;
  double mean_solution_rank = 0.0;
};

BenchStats bench_stats(const std::vector<double>& values);

/// Seed sweep: one instance + solve + recovery metrics per seed, plus the
/// mean/std summary mirroring the experiment-table columns.
BenchResult bench(const InstanceSpec& base, const SolverConfig& solver,
                  const std::vector<std::uint64_t>& seeds);

// A full experiment: instance family, solver, seed sweep, output targets.
struct ExperimentConfig {
  InstanceSpec instance;
  SolverConfig solver;
  std::vector<std::uint64_t> seeds;
  std::string outputs;       // directory for the emitted files
  std::string emit = "csv,summary";  // subset of csv,json,summary
};

/// Runs the sweep and writes the selected outputs under
/// outputs/bench_<family>_n<n>_{rows,summary}.{csv,json}.
BenchResult run_experiment(const ExperimentConfig& config);

void write_bench_rows_csv(const BenchResult& result, const std::string& path);
void write_bench_summary_csv(const BenchResult& result, const std::string& path);
void write_bench_summary_json(const BenchResult& result, const std::string& path);

struct CompareRow {
  int t = 0;
  double objective_a = 0.0;
  double objective_b = 0.0;
  double recovery_a = 0.0;
  double recovery_b = 0.0;
  double bregman_ab = 0.0;  // NaN when arm B is not an interior (MEG) method
};

struct CompareResult {
  double multiplier = 1.0;
  std::vector<CompareRow> rows;
};

/// Locked-step paired run of two solver configurations on one instance;
/// both arms see identical data and initialization.
CompareResult compare_pair(const Instance& inst, SolverConfig a, SolverConfig b,
                           double step_multiplier, int iters, int stride = 1);

void write_compare_csv(const CompareResult& result, const std::string& path);

// Paired-arm comparison over a list of step-size multipliers, one instance
// stream shared by both arms.
struct ComparisonConfig {
  InstanceSpec instance;
  SolverConfig arm_a;
  SolverConfig arm_b;
  std::vector<double> multipliers = {1.0};
  int iters = 500;
  int stride = 1;
  std::string outputs;
};

/// Runs every multiplier and writes one per-iteration series each under
/// outputs/compare_<a>_vs_<b>_m<mult>.csv.
std::vector<CompareResult> run_comparison(const ComparisonConfig& config);

/// CLI front end (gen / solve / bench / compare / demo). Returns the process
/// exit code: 0 ok, 2 usage error, 3 certificate violation in assert mode.
int cli_run(int argc, const char* const* argv);

}  // namespace lrmp
