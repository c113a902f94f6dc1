#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "hsat/optimizers.hpp"

namespace hsat {

struct SolveConfig {
  Formulation formulation = Formulation::Square;
  double alpha = 0.0;
  OptimizerConfig optimizer;
  std::uint32_t restarts = 32;
  std::uint64_t seed = 0;
  double timeout_seconds = 300.0;
  double tolerance = kDefaultZeroTolerance;
  unsigned threads = 1;
  // Iterates are rounded and checked discretely every this many steps.
  std::uint64_t check_interval = 100;

  /// Rejects LINEAR without a box-constrained optimizer and other bad values.
  void validate() const;
};

enum class SolveStatus : std::uint8_t { Sat, Unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::optional<BooleanAssignment> assignment;
  std::size_t violated = 0;
  std::uint32_t restarts_used = 0;
  std::uint64_t iters_total = 0;
  // Objective value at the real point whose rounding gave `assignment`.
  double final_objective = 0.0;

  friend bool operator==(const SolveResult &, const SolveResult &) = default;
};

/// Restart-level hook for tests and diagnostics: restart index and the state
/// after each optimizer step. Must be safe to call concurrently when
/// threads > 1.
using IterateHook = std::function<void(std::uint32_t restart, const OptimizerState &)>;

/// Incomplete solve: SAT with a verified assignment, or UNKNOWN with the
/// assignment of fewest violations found. Never reports UNSAT.
SolveResult solve(const Formula &f, const SolveConfig &cfg, const IterateHook &hook = {});

/// Corollary bound on violations of sign_round(l) given W = F^sq_{alpha=0}(l):
/// ceil(4^k W) for pure k-CNF, ceil(4W) for pure XOR, ceil(4^(k-1) W) for
/// pure k-NAE. nullopt for formulas of any other shape.
std::optional<std::uint64_t> violation_bound(const Formula &f, double w);

/// Rounding threshold: 1/2^k (OR), 1/2 (XOR), 1/2^(k-1) (NAE). Throws for CARD.
double rounding_epsilon(const Constraint &c);

/// |FE_c(x)| < epsilon(c), which guarantees sign_round(x) satisfies c.
bool epsilon_rounding_check(const Constraint &c, std::span<const double> x);

} // namespace hsat
