#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hsat/formulations.hpp"

namespace hsat {

enum class OptimizerKind : std::uint8_t { Gd, Pgd, Adam };

const char *to_string(OptimizerKind k);
std::optional<OptimizerKind> parse_optimizer(std::string_view name);

/// True for optimizers that keep iterates inside [-1,1]^n.
inline bool is_box_constrained(OptimizerKind k) { return k == OptimizerKind::Pgd; }

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Gd;
  double step_size = 1e-3;
  std::uint64_t max_iters = 10'000;
  double grad_tol = 0.0; // 0 disables the gradient stopping rule
  double value_tol = 1e-8;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  void validate() const;
};

enum class StopReason : std::uint8_t { NotStarted, ValueTolerance, GradientTolerance, MaxIterations, Deadline, Observer };

const char *to_string(StopReason r);

struct OptimizerState {
  AssignmentVector x;
  std::uint64_t iter = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  double best_value_seen = 0.0;
  AssignmentVector best_x_seen;
  // Objective at x, cached so each step evaluates the objective once.
  ObjectiveEvaluation current;
  StopReason stop_reason = StopReason::NotStarted;
};

/// A step produced a non-finite value or gradient. Holds the last state whose
/// iterate evaluated cleanly, including the best point seen so far.
class DivergedError : public std::runtime_error {
public:
  DivergedError(const std::string &what, OptimizerState last_finite)
      : std::runtime_error(what), last_finite(std::move(last_finite)) {}
  OptimizerState last_finite;
};

/// Euclidean projection onto [-1,1]^n (componentwise clamp).
AssignmentVector box_project(std::span<const double> x);

/// State at x0 with the objective already evaluated there.
OptimizerState initial_state(AssignmentVector x0, const OptimizerConfig &cfg, const Objective &obj);

/// One update: GD x -= eta * g; PGD additionally clamps; Adam uses
/// bias-corrected first/second moments. Re-evaluates at the new iterate and
/// updates the best-seen point.
OptimizerState step(OptimizerState state, const OptimizerConfig &cfg, const Objective &obj);

/// Called after every step; returning true stops the run.
using StepObserver = std::function<bool(const OptimizerState &)>;

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Steps until value <= value_tol, |grad|_inf <= grad_tol (when enabled),
/// max_iters, the deadline, or the observer asks to stop.
OptimizerState run(AssignmentVector x0, const OptimizerConfig &cfg, const Objective &obj, Deadline deadline = {},
                   const StepObserver &observer = {});

} // namespace hsat
