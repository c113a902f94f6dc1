#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hsat/benchgen.hpp"
#include "hsat/solver.hpp"

namespace hsat {

struct SolverVariant {
  Formulation formulation = Formulation::Square;
  double alpha = 0.0;
  OptimizerKind optimizer = OptimizerKind::Gd;
};

/// "square:0.4:adam" style description.
SolverVariant parse_variant(std::string_view text);

struct GridPoint {
  double ratio = 0.0; // m/n, Cnf3 and Xor2
  double r_p = 0.0;   // Card
  double r_v = 0.0;   // Card
};

struct SweepSpec {
  BenchFamily family = BenchFamily::Cnf3;
  std::uint32_t n = 100;
  std::vector<GridPoint> grid;
  std::uint32_t instances = 10;
  std::uint64_t seed = 0;
  std::vector<SolverVariant> variants;
  // Step size, iteration and restart budgets, timeout and tolerance shared by
  // every cell. Formulation, alpha, optimizer kind and seed are overridden.
  SolveConfig base;
  unsigned threads = 1;
  bool record_time = false; // wall_ms column is 0 unless set

  void validate() const;
};

struct SweepRow {
  std::size_t grid_index = 0;
  std::size_t variant_index = 0;
  std::uint32_t instance = 0;
  BenchFamily family = BenchFamily::Cnf3;
  std::uint32_t n = 0;
  GridPoint point;
  SolverVariant variant;
  std::uint64_t seed = 0;
  bool solved = false;
  std::optional<std::size_t> violated;
  std::uint64_t iters = 0;
  std::uint64_t wall_ms = 0;
  std::string note;
};

struct SummaryRow {
  BenchFamily family = BenchFamily::Cnf3;
  std::uint32_t n = 0;
  GridPoint point;
  SolverVariant variant;
  std::uint32_t instances = 0;
  std::uint32_t solved = 0;
  double solved_fraction() const { return instances ? static_cast<double>(solved) / instances : 0.0; }
};

/// One row per (grid point, variant, instance) in that canonical order. Cell
/// failures become rows with solved = 0 and a note; the sweep never aborts.
std::vector<SweepRow> run_sweep(const SweepSpec &spec);

/// Solved counts per (grid point, variant), in the same canonical order.
std::vector<SummaryRow> aggregate(const std::vector<SweepRow> &rows);

std::string rows_to_csv(const std::vector<SweepRow> &rows);
std::string summary_to_csv(const std::vector<SummaryRow> &rows);

/// Six significant digits, locale independent.
std::string format_real(double v);

} // namespace hsat
