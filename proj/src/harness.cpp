#include "lrmp/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

namespace lrmp {

BenchStats bench_stats(const std::vector<double>& values) {
  BenchStats out;
  const double n = static_cast<double>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(sq / (n - 1.0));
  }
  return out;
}

BenchResult bench(const InstanceSpec& base, const SolverConfig& solver,
                  const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw InvalidInput("bench: need at least one seed");
  BenchResult result;
  std::vector<double> init, rec, gap, eig;
  for (std::uint64_t seed : seeds) {
    InstanceSpec spec = base;
    spec.seed = seed;
    const Instance inst = generate(spec);
    const RunOutput run = run_solver(inst.objective, solver, inst.x1, inst.y1);
    if (run.record.best_iterate_index < 0) {
      throw InvalidInput("bench: solver produced no gap-checked iterations");
    }
    const RecoveryMetrics metrics = recovery_metrics(
        inst, run.record.best_z, run.record.best_w, run.record.best_gap);
    BenchRow row;
    row.seed = seed;
    row.lambda = inst.meta.lambda;
    row.init_error = metrics.init_error;
    row.recovery_error = metrics.recovery_error;
    row.dual_gap = metrics.dual_gap_at_best;
    row.eigengap = metrics.eigengap;
    row.solution_rank = metrics.solution_rank;
    row.certificate_failures = run.record.certificate_failures;
    result.rows.push_back(row);
    init.push_back(row.init_error);
    rec.push_back(row.recovery_error);
    gap.push_back(row.dual_gap);
    eig.push_back(row.eigengap);
  }
  result.lambda = result.rows.front().lambda;
  result.init_error = bench_stats(init);
  result.recovery_error = bench_stats(rec);
  result.dual_gap = bench_stats(gap);
  result.eigengap = bench_stats(eig);
  double rank_sum = 0.0;
  for (const BenchRow& r : result.rows) rank_sum += r.solution_rank;
  result.mean_solution_rank = rank_sum / result.rows.size();
  return result;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_bench_rows_csv(const BenchResult& result, const std::string& path) {
  auto out = open_out(path);
  out << "seed,lambda,init_error,recovery_error,dual_gap,eigengap,"
         "solution_rank,certificate_failures\n";
  for (const BenchRow& r : result.rows) {
    out << r.seed << ',' << format_double(r.lambda) << ','
        << format_double(r.init_error) << ',' << format_double(r.recovery_error)
        << ',' << format_double(r.dual_gap) << ',' << format_double(r.eigengap)
        << ',' << r.solution_rank << ',' << r.certificate_failures << '\n';
  }
}

void write_bench_summary_csv(const BenchResult& result, const std::string& path) {
  auto out = open_out(path);
  out << "lambda,init_error_mean,init_error_std,recovery_error_mean,"
         "recovery_error_std,dual_gap_mean,dual_gap_std,eigengap_mean,"
         "eigengap_std,mean_solution_rank,seeds\n";
  out << format_double(result.lambda) << ','
      << format_double(result.init_error.mean) << ','
      << format_double(result.init_error.stddev) << ','
      << format_double(result.recovery_error.mean) << ','
      << format_double(result.recovery_error.stddev) << ','
      << format_double(result.dual_gap.mean) << ','
      << format_double(result.dual_gap.stddev) << ','
      << format_double(result.eigengap.mean) << ','
      << format_double(result.eigengap.stddev) << ','
      << format_double(result.mean_solution_rank) << ',' << result.rows.size()
      << '\n';
}

void write_bench_summary_json(const BenchResult& result, const std::string& path) {
  auto out = open_out(path);
  out << "{\n"
      << " \"lambda\": " << format_double(result.lambda) << ",\n"
      << " \"init_error\": {\"mean\": " << format_double(result.init_error.mean)
      << ", \"std\": " << format_double(result.init_error.stddev) << "},\n"
      << " \"recovery_error\": {\"mean\": "
      << format_double(result.recovery_error.mean)
      << ", \"std\": " << format_double(result.recovery_error.stddev) << "},\n"
      << " \"dual_gap\": {\"mean\": " << format_double(result.dual_gap.mean)
      << ", \"std\": " << format_double(result.dual_gap.stddev) << "},\n"
      << " \"eigengap\": {\"mean\": " << format_double(result.eigengap.mean)
      << ", \"std\": " << format_double(result.eigengap.stddev) << "},\n"
      << " \"mean_solution_rank\": " << format_double(result.mean_solution_rank)
      << ",\n"
      << " \"seeds\": " << result.rows.size() << "\n}\n";
}

BenchResult run_experiment(const ExperimentConfig& config) {
  if (config.seeds.empty()) throw InvalidInput("experiment: need at least one seed");
  const BenchResult result = bench(config.instance, config.solver, config.seeds);
  if (!config.outputs.empty()) {
    std::filesystem::create_directories(config.outputs);
    const std::string prefix = config.outputs + "/bench_" +
                               family_to_string(config.instance.family) + "_n" +
                               std::to_string(config.instance.n);
    if (config.emit.find("csv") != std::string::npos) {
      write_bench_rows_csv(result, prefix + "_rows.csv");
    }
    if (config.emit.find("summary") != std::string::npos) {
      write_bench_summary_csv(result, prefix + "_summary.csv");
    }
    if (config.emit.find("json") != std::string::npos) {
      write_bench_summary_json(result, prefix + "_summary.json");
    }
  }
  return result;
}

CompareResult compare_pair(const Instance& inst, SolverConfig a, SolverConfig b,
                           double step_multiplier, int iters, int stride) {
  a.step_multiplier *= step_multiplier;
  b.step_multiplier *= step_multiplier;
  a.max_iters = b.max_iters = iters;
  Solver sa(inst.objective, a, inst.x1, inst.y1);
  Solver sb(inst.objective, b, inst.x1, inst.y1);

  const double scale = inst.ground_truth.trace() / inst.meta.tau;
  const double gt_norm2 = inst.ground_truth.squaredNorm();
  const bool b_interior = b.method == Method::MegFull || b.method == Method::MegLowRank;
  const double tau = inst.meta.tau;

  CompareResult result;
  result.multiplier = step_multiplier;
  for (int t = 1; t <= iters; ++t) {
    sa.step();
    sb.step();
    if (stride > 0 && t % stride == 0) {
      CompareRow row;
      row.t = t;
      row.objective_a = inst.objective.objective(sa.z_dense());
      row.objective_b = inst.objective.objective(sb.z_dense());
      row.recovery_a = (scale * sa.z_dense() - inst.ground_truth).squaredNorm() / gt_norm2;
      row.recovery_b = (scale * sb.z_dense() - inst.ground_truth).squaredNorm() / gt_norm2;
      row.bregman_ab = b_interior
                           ? bregman_vne(sa.z_dense() / tau, sb.z_dense() / tau)
                           : std::numeric_limits<double>::quiet_NaN();
      result.rows.push_back(row);
    }
  }
  return result;
}

void write_compare_csv(const CompareResult& result, const std::string& path) {
  auto out = open_out(path);
  out << "t,objective_a,objective_b,recovery_a,recovery_b,bregman_ab\n";
  for (const CompareRow& r : result.rows) {
    out << r.t << ',' << format_double(r.objective_a) << ','
        << format_double(r.objective_b) << ',' << format_double(r.recovery_a)
        << ',' << format_double(r.recovery_b) << ','
        << format_double(r.bregman_ab) << '\n';
  }
}

std::vector<CompareResult> run_comparison(const ComparisonConfig& config) {
  const Instance inst = generate(config.instance);
  std::vector<CompareResult> results;
  if (!config.outputs.empty()) {
    std::filesystem::create_directories(config.outputs);
  }
  for (double mult : config.multipliers) {
    results.push_back(compare_pair(inst, config.arm_a, config.arm_b, mult,
                                   config.iters, config.stride));
    if (!config.outputs.empty()) {
      const std::string path = config.outputs + "/compare_" +
                               method_to_string(config.arm_a.method) + "_vs_" +
                               method_to_string(config.arm_b.method) + "_m" +
                               format_double(mult) + ".csv";
      write_compare_csv(results.back(), path);
    }
  }
  return results;
}

namespace {

struct InstanceFlags {
  std::string family = "sparse-pca";
  int n = 100;
  int rank = 1;
  double snr = 1.0;
  std::string noise = "uniform";
  double lambda = 0.0;
  double tau = 0.0;
  int m = 0;
  int op_rank = 1;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "sparse-pca | lowrank-sparse | robust-pca | lin-constrained "
                    "| least-squares-l1");
    cmd->add_option("--n", n, "ambient dimension");
    cmd->add_option("--rank", rank, "ground-truth rank");
    cmd->add_option("--snr", snr, "signal-to-noise knob");
    cmd->add_option("--noise", noise, "uniform | gaussian | sign");
    cmd->add_option("--lambda", lambda, "regularization weight (0: family default)");
    cmd->add_option("--tau", tau, "trace budget (0: family default)");
    cmd->add_option("--m", m, "measurement count (0: family default)");
    cmd->add_option("--op-rank", op_rank, "rank of each measurement matrix");
    cmd->add_option("--seed", seed, "rng seed");
  }

  InstanceSpec spec() const {
    InstanceSpec s;
    s.family = family_from_string(family);
    s.n = n;
    s.rank_gt = rank;
    s.snr = snr;
    s.noise_kind = noise_from_string(noise);
    s.lambda = lambda;
    s.tau = tau;
    s.m = m;
    s.op_rank = op_rank;
    s.seed = seed;
    return s;
  }
};

struct SolverFlags {
  std::string method = "eg-lowrank";
  int rank = 1;
  double eta = 0.0;
  double eta_mult = 1.0;
  int iters = 1000;
  std::string cert = "record";
  int gap_every = 1;
  double eps_c = 1000.0;
  bool eps_theorem = false;
  double eps_tilde0 = 0.1;
  double delta = 0.1;
  double eps0 = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", method, "eg | eg-lowrank | meg | meg-lowrank");
    cmd->add_option("--solver-rank", rank, "SVD rank r of the low-rank updates");
    cmd->add_option("--eta", eta, "step size (0: worst-case value)");
    cmd->add_option("--eta-mult", eta_mult, "step-size multiplier");
    cmd->add_option("--iters", iters, "iteration count T");
    cmd->add_option("--cert", cert, "assert | record | off");
    cmd->add_option("--gap-every", gap_every, "dual-gap evaluation stride");
    cmd->add_option("--eps-c", eps_c, "cubic schedule offset c");
    cmd->add_flag("--eps-theorem", eps_theorem,
                  "use the analytically derived eps schedule instead of plain cubic");
    cmd->add_option("--eps-tilde0", eps_tilde0, "analytic schedule eps~0");
    cmd->add_option("--delta", delta, "strict-complementarity estimate");
    cmd->add_option("--eps0", eps0, "interior smoothing mass (0: schedule value)");
  }

  SolverConfig config(const SaddleObjective& obj) const {
    SolverConfig cfg;
    cfg.method = method_from_string(method);
    cfg.rank_r = rank;
    cfg.eta = eta;
    cfg.step_multiplier = eta_mult;
    cfg.max_iters = iters;
    cfg.gap_check_every = gap_every;
    cfg.init_eps0 = eps0;
    if (cert == "assert") cfg.certificate_mode = CertificateMode::Assert;
    else if (cert == "record") cfg.certificate_mode = CertificateMode::Record;
    else if (cert == "off") cfg.certificate_mode = CertificateMode::Off;
    else throw CLI::ValidationError("--cert must be assert|record|off");
    if (eps_theorem) {
      cfg.eps.plain_cubic = false;
      cfg.eps.eps_tilde0 = eps_tilde0;
      cfg.eps.delta = delta;
      cfg.eps.c = eps_c;
      cfg.eps.grad_bound = obj.spectral.grad_bound;
      cfg.eps.beta_max = std::max(obj.spectral.beta_x, obj.spectral.beta_xy);
      cfg.eps.eta = cfg.eta > 0.0 ? cfg.eta : step_size_meg(obj.spectral);
    } else {
      cfg.eps.plain_cubic = true;
      cfg.eps.c = eps_c;
    }
    return cfg;
  }
};

std::vector<std::uint64_t> seed_list(int count, std::uint64_t first) {
  std::vector<std::uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = first + i;
  return seeds;
}

// Post-hoc record of the MEG analysis' initialization hypothesis, evaluated
// against the best-gap candidate as the stand-in for the unknown optimum.
// Diagnostic only: it never gates the run.
void report_warm_start_diagnostic(const Instance& inst, const SolverConfig& cfg,
                                  const RunOutput& run) {
  try {
    const double tau = inst.meta.tau;
    const int r = cfg.rank_r;
    const EigenDecomposition eig =
        full_eigh(SymmetricMatrix(run.record.best_z / tau));
    if (eig.values[r - 1] <= 0.0 || inst.x1.rank() != r) {
      std::cerr << "warm-start check skipped: rank mismatch against the "
                   "candidate\n";
      return;
    }
    LowRankFactor star{inst.meta.n, eig.values.head(r), eig.vectors.leftCols(r)};
    star.weights /= star.weights.sum();
    LowRankFactor x0 = inst.x1;
    x0.weights /= tau;

    const double eps0 = std::min(
        0.75, cfg.init_eps0 > 0.0 ? cfg.init_eps0 : eps_schedule(0, cfg.eps));
    const Eigen::MatrixXd grad =
        inst.objective.grad_x(run.record.best_z, run.record.best_w);
    const double delta = strict_comp_gap(SymmetricMatrix(grad), r);
    const double radius =
        meg_warm_start_radius(inst.objective.spectral,
                              inst.objective.spectral.grad_bound, delta, r,
                              star.weights[r - 1]);
    const double lhs = warm_start_lhs(star, x0, eps0);
    std::cout << "warm-start check (diagnostic): lhs=" << format_double(lhs)
              << " vs R^2=" << format_double(radius * radius) << " -> "
              << (lhs <= radius * radius ? "satisfied" : "not satisfied") << '\n';
  } catch (const std::exception& e) {
    std::cerr << "warm-start check skipped: " << e.what() << '\n';
  }
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"Low-rank mirror-prox solvers over the scaled spectrahedron"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file; flags override file values");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  InstanceFlags gen_inst;
  gen_inst.attach(gen_cmd);
  std::string gen_out = "instance.json";
  gen_cmd->add_option("--out", gen_out, "output instance file");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run one method on an instance");
  std::string solve_instance;
  solve_cmd->add_option("--instance", solve_instance, "instance file")->required();
  SolverFlags solve_flags;
  solve_flags.attach(solve_cmd);
  std::string solve_csv = "run.csv";
  std::string solve_json;
  solve_cmd->add_option("--out-csv", solve_csv, "per-iteration csv output");
  solve_cmd->add_option("--out-json", solve_json, "run summary json output");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "seed sweep with summary");
  InstanceFlags bench_inst;
  bench_inst.attach(bench_cmd);
  SolverFlags bench_flags;
  bench_flags.attach(bench_cmd);
  int bench_seeds = 10;
  std::uint64_t bench_seed0 = 0;
  std::string bench_outdir = ".";
  std::string bench_emit = "csv,summary";
  bench_cmd->add_option("--seeds", bench_seeds, "number of seeds");
  bench_cmd->add_option("--seed0", bench_seed0, "first seed");
  bench_cmd->add_option("--outdir", bench_outdir, "output directory")
      ->envname("LRMP_OUT_DIR");
  bench_cmd->add_option("--emit", bench_emit, "subset of csv,json,summary");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "paired method runs");
  InstanceFlags cmp_inst;
  cmp_inst.attach(compare_cmd);
  std::string method_a = "eg-lowrank";
  std::string method_b = "meg-lowrank";
  std::string mults = "1";
  int cmp_iters = 500;
  int cmp_rank = 1;
  int cmp_stride = 1;
  double cmp_eps_c = 1000.0;
  compare_cmd->add_option("--method-a", method_a, "first arm");
  compare_cmd->add_option("--method-b", method_b, "second arm");
  compare_cmd->add_option("--mults", mults, "comma list of step multipliers");
  compare_cmd->add_option("--iters", cmp_iters, "iterations");
  compare_cmd->add_option("--solver-rank", cmp_rank, "SVD rank of low-rank arms");
  compare_cmd->add_option("--stride", cmp_stride, "row stride");
  compare_cmd->add_option("--eps-c", cmp_eps_c, "cubic schedule offset");
  std::string cmp_outdir = ".";
  compare_cmd->add_option("--outdir", cmp_outdir, "output directory")
      ->envname("LRMP_OUT_DIR");

  // demo
  auto* demo_cmd = app.add_subcommand("demo", "small reproductions");
  auto* counter_cmd =
      demo_cmd->add_subcommand("counterexample", "rank inflation of the "
                                                 "sign-subgradient step");
  int ce_n = 8, ce_k = 2;
  double ce_eta = 0.5;
  counter_cmd->add_option("--n", ce_n, "dimension");
  counter_cmd->add_option("--k", ce_k, "support size (k <= n/4)");
  counter_cmd->add_option("--eta", ce_eta, "step size (< 2/3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) {
      const Instance inst = generate(gen_inst.spec());
      write_instance(inst, gen_out);
      std::cout << "wrote " << gen_out << " (family=" << gen_inst.family
                << ", n=" << inst.meta.n << ", lambda=" << inst.meta.lambda
                << ", tau=" << inst.meta.tau << ")\n";
      return 0;
    }
    if (*solve_cmd) {
      const Instance inst = read_instance(solve_instance);
      const SolverConfig cfg = solve_flags.config(inst.objective);
      const RunOutput run = run_solver(inst.objective, cfg, inst.x1, inst.y1);
      write_run_csv(run.record, solve_csv);
      if (!solve_json.empty()) write_run_json(run.record, solve_json);
      std::cout << "best dual gap " << format_double(run.record.best_gap)
                << " at t=" << run.record.best_iterate_index << " ("
                << run.record.rows.size() << " recorded rows)\n";
      try {
        const double avg_gap = dual_gap(
            inst.objective, SaddleCandidate{run.state.z_avg, run.state.w_avg});
        std::cout << "averaged-iterate dual gap " << format_double(avg_gap)
                  << '\n';
      } catch (const InvalidInput&) {
        // averaged point can sit just outside the tolerance; skip the extra line
      }
      for (const std::string& note : run.record.notes) {
        std::cerr << "note: " << note << '\n';
      }
      if (cfg.method == Method::MegLowRank && run.record.best_iterate_index > 0) {
        report_warm_start_diagnostic(inst, cfg, run);
      }
      return 0;
    }
    if (*bench_cmd) {
      ExperimentConfig experiment;
      experiment.instance = bench_inst.spec();
      const Instance probe = generate(experiment.instance);  // resolves defaults
      experiment.solver = bench_flags.config(probe.objective);
      experiment.seeds = seed_list(bench_seeds, bench_seed0);
      experiment.outputs = bench_outdir;
      experiment.emit = bench_emit;
      const BenchResult result = run_experiment(experiment);
      std::cout << "mean init error " << format_double(result.init_error.mean)
                << ", mean recovery error "
                << format_double(result.recovery_error.mean) << ", mean eigengap "
                << format_double(result.eigengap.mean) << ", mean rank "
                << format_double(result.mean_solution_rank) << '\n';
      return 0;
    }
    if (*compare_cmd) {
      ComparisonConfig comparison;
      comparison.instance = cmp_inst.spec();
      comparison.arm_a.method = method_from_string(method_a);
      comparison.arm_b.method = method_from_string(method_b);
      for (SolverConfig* arm : {&comparison.arm_a, &comparison.arm_b}) {
        arm->rank_r = cmp_rank;
        arm->eps.plain_cubic = true;
        arm->eps.c = cmp_eps_c;
        arm->certificate_mode = CertificateMode::Record;
        arm->gap_check_every = 0;
      }
      comparison.multipliers.clear();
      std::stringstream mult_stream(mults);
      std::string tok;
      while (std::getline(mult_stream, tok, ',')) {
        comparison.multipliers.push_back(std::stod(tok));
      }
      comparison.iters = cmp_iters;
      comparison.stride = cmp_stride;
      comparison.outputs = cmp_outdir;
      const auto results = run_comparison(comparison);
      std::cout << "wrote " << results.size() << " comparison series to "
                << cmp_outdir << '\n';
      return 0;
    }
    if (*counter_cmd) {
      const CounterexampleResult result = counterexample_demo(ce_n, ce_k, ce_eta);
      std::cout << "sign-subgradient step:    projected rank " << result.projected_rank
                << " (weights:";
      for (int i = 0; i < result.projected_weights.size(); ++i) {
        std::cout << ' ' << format_double(result.projected_weights[i]);
      }
      std::cout << ")\n";
      std::cout << "optimality-subgradient step: projected rank "
                << result.optimal_step_rank << '\n';
      return 0;
    }
    std::cerr << "demo: choose a subcommand (counterexample)\n";
    return 2;
  } catch (const CertificateViolation& e) {
    std::cerr << "certificate violation: " << e.what() << '\n';
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace lrmp
