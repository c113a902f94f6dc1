// Command-line front end: solve HNF files, generate benchmarks, run sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hsat/hnf.hpp"
#include "hsat/sweep.hpp"

namespace {

std::string read_file(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
}

struct SolverFlags {
  std::string formulation = "square";
  double alpha = 0.0;
  std::string optimizer = "gd";
  double step_size = 1e-3;
  std::uint64_t max_iters = 10'000;
  std::uint32_t restarts = 32;
  std::uint64_t seed = 0;
  double timeout = 300.0;
  double tolerance = hsat::kDefaultZeroTolerance;
  unsigned threads = 1;

  void attach(CLI::App *app, bool with_variant) {
    if (with_variant) {
      app->add_option("--formulation", formulation, "linear | square | abs")
          ->check(CLI::IsMember({"linear", "square", "abs"}));
      app->add_option("--alpha", alpha, "penalty coefficient")->check(CLI::NonNegativeNumber);
      app->add_option("--optimizer", optimizer, "gd | pgd | adam")->check(CLI::IsMember({"gd", "pgd", "adam"}));
    }
    app->add_option("--step-size", step_size, "optimizer step size")->check(CLI::PositiveNumber);
    app->add_option("--max-iters", max_iters, "iterations per restart");
    app->add_option("--restarts", restarts, "random restarts")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "seed for every random choice");
    app->add_option("--timeout", timeout, "wall-clock limit per formula, seconds")->check(CLI::PositiveNumber);
    app->add_option("--tolerance", tolerance, "objective value treated as zero")->check(CLI::NonNegativeNumber);
    app->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  hsat::SolveConfig config() const {
    hsat::SolveConfig cfg;
    cfg.formulation = *hsat::parse_formulation(formulation);
    cfg.alpha = alpha;
    cfg.optimizer.kind = *hsat::parse_optimizer(optimizer);
    cfg.optimizer.step_size = step_size;
    cfg.optimizer.max_iters = max_iters;
    cfg.optimizer.value_tol = tolerance;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.timeout_seconds = timeout;
    cfg.tolerance = tolerance;
    cfg.threads = threads;
    return cfg;
  }
};

int run_solve(const std::string &path, const SolverFlags &flags, bool self_check) {
  const auto formula = hsat::parse_hnf(read_file(path));
  const auto result = hsat::solve(formula, flags.config());
  const auto emitted = hsat::emit_result(result);
  if (self_check && result.status == hsat::SolveStatus::Sat) {
    const auto reread = hsat::parse_v_lines(emitted.text, formula.num_vars());
    if (hsat::count_violations(formula, reread) != 0) {
      std::cerr << "self-check failed: printed assignment violates the formula\n";
      return 1;
    }
  }
  std::cout << emitted.text;
  return emitted.exit_code;
}

std::vector<hsat::GridPoint> build_grid(hsat::BenchFamily family, const std::vector<double> &ratios,
                                        const std::vector<double> &rps, const std::vector<double> &rvs) {
  std::vector<hsat::GridPoint> grid;
  if (family == hsat::BenchFamily::Card) {
    for (double rp : rps)
      for (double rv : rvs)
        grid.push_back({0.0, rp, rv});
  } else {
    for (double r : ratios)
      grid.push_back({r, 0.0, 0.0});
  }
  return grid;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hybrid SAT/MaxSAT solving by continuous minimization of Walsh-Fourier objectives"};
  app.require_subcommand(1);

  SolverFlags solve_flags;
  std::string solve_path;
  bool self_check = false;
  auto *solve_cmd = app.add_subcommand("solve", "solve an HNF file; exit 10 on SAT, 0 on UNKNOWN");
  solve_cmd->add_option("file", solve_path, "HNF input ('-' for stdin)")->required();
  solve_cmd->add_flag("--self-check", self_check, "re-verify the printed assignment before exiting");
  solve_flags.attach(solve_cmd, true);

  std::string family_name = "cnf3";
  std::uint32_t n = 100;
  double ratio = 1.0;
  double rp = 0.5;
  double rv = 0.2;
  std::uint32_t count = 1;
  std::uint64_t gen_seed = 0;
  std::string out_dir;
  auto *gen_cmd = app.add_subcommand("gen", "generate random benchmark formulas in HNF");
  gen_cmd->add_option("--family", family_name, "cnf3 | xor2 | card")->check(CLI::IsMember({"cnf3", "xor2", "card"}));
  gen_cmd->add_option("--n", n, "variables")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--ratio", ratio, "m/n for cnf3 and xor2");
  gen_cmd->add_option("--rp", rp, "constraints per variable for card");
  gen_cmd->add_option("--rv", rv, "constraint width per variable for card");
  gen_cmd->add_option("--count", count, "formulas to generate")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed, "corpus seed");
  gen_cmd->add_option("--out", out_dir, "output directory (stdout when omitted and count is 1)");

  SolverFlags sweep_flags;
  sweep_flags.timeout = 60.0;
  std::string sweep_family = "cnf3";
  std::uint32_t sweep_n = 100;
  std::vector<double> ratios{1.0};
  std::vector<double> rps{0.5};
  std::vector<double> rvs{0.2};
  std::uint32_t instances = 10;
  std::vector<std::string> formulations{"square"};
  std::vector<double> alphas{0.0};
  std::vector<std::string> optimizers{"gd"};
  std::vector<std::string> variant_specs;
  std::string rows_out;
  std::string summary_out;
  bool record_time = false;
  auto *sweep_cmd = app.add_subcommand("sweep", "solve a benchmark grid under several solver variants, emit CSV");
  sweep_cmd->add_option("--family", sweep_family, "cnf3 | xor2 | card")
      ->check(CLI::IsMember({"cnf3", "xor2", "card"}));
  sweep_cmd->add_option("--n", sweep_n, "variables")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--ratios", ratios, "m/n grid (cnf3, xor2)")->delimiter(',');
  sweep_cmd->add_option("--rps", rps, "r_P grid (card)")->delimiter(',');
  sweep_cmd->add_option("--rvs", rvs, "r_V grid (card)")->delimiter(',');
  sweep_cmd->add_option("--instances", instances, "formulas per grid point")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--formulations", formulations, "crossed with alphas and optimizers")->delimiter(',');
  sweep_cmd->add_option("--alphas", alphas, "penalty coefficients")->delimiter(',');
  sweep_cmd->add_option("--optimizers", optimizers, "optimizers")->delimiter(',');
  sweep_cmd->add_option("--variant", variant_specs,
                        "explicit formulation:alpha:optimizer (repeatable; replaces the cross product)");
  sweep_cmd->add_option("--rows", rows_out, "per-cell CSV path (stdout when omitted)");
  sweep_cmd->add_option("--summary", summary_out, "solved-fraction CSV path");
  sweep_cmd->add_flag("--record-time", record_time, "fill wall_ms (makes output timing dependent)");
  sweep_flags.attach(sweep_cmd, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd)
      return run_solve(solve_path, solve_flags, self_check);

    if (*gen_cmd) {
      hsat::BenchSpec spec;
      spec.family = *hsat::parse_family(family_name);
      spec.n = n;
      spec.ratio = ratio;
      spec.r_p = rp;
      spec.r_v = rv;
      spec.count = count;
      spec.seed = gen_seed;
      if (out_dir.empty()) {
        if (count != 1)
          throw std::runtime_error("--out is required when --count > 1");
        std::cout << hsat::serialize_hnf(hsat::generate(spec, 0));
        return 0;
      }
      std::filesystem::create_directories(out_dir);
      for (std::uint32_t i = 0; i < count; ++i) {
        const auto path = std::filesystem::path(out_dir) /
                          (std::string(hsat::to_string(spec.family)) + "_" + std::to_string(i) + ".hnf");
        write_file(path.string(), hsat::serialize_hnf(hsat::generate(spec, i)));
      }
      return 0;
    }

    if (*sweep_cmd) {
      hsat::SweepSpec spec;
      spec.family = *hsat::parse_family(sweep_family);
      spec.n = sweep_n;
      spec.grid = build_grid(spec.family, ratios, rps, rvs);
      spec.instances = instances;
      spec.seed = sweep_flags.seed;
      spec.base = sweep_flags.config();
      spec.threads = sweep_flags.threads;
      spec.record_time = record_time;
      if (!variant_specs.empty()) {
        for (const auto &v : variant_specs)
          spec.variants.push_back(hsat::parse_variant(v));
      } else {
        for (const auto &f : formulations)
          for (double a : alphas)
            for (const auto &o : optimizers) {
              auto v = hsat::parse_variant(f + ":" + hsat::format_real(a) + ":" + o);
              // The cross product skips combinations the solver rejects.
              if (v.formulation == hsat::Formulation::Linear && !hsat::is_box_constrained(v.optimizer))
                continue;
              spec.variants.push_back(v);
            }
      }
      const auto rows = hsat::run_sweep(spec);
      write_file(rows_out, hsat::rows_to_csv(rows));
      if (!summary_out.empty())
        write_file(summary_out, hsat::summary_to_csv(hsat::aggregate(rows)));
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
