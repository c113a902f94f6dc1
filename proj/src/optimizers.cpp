#include "hsat/optimizers.hpp"

#include <algorithm>
#include <cmath>

namespace hsat {

const char *to_string(OptimizerKind k) {
  switch (k) {
  case OptimizerKind::Gd:
    return "gd";
  case OptimizerKind::Pgd:
    return "pgd";
  case OptimizerKind::Adam:
    return "adam";
  }
  return "?";
}

std::optional<OptimizerKind> parse_optimizer(std::string_view name) {
  if (name == "gd")
    return OptimizerKind::Gd;
  if (name == "pgd")
    return OptimizerKind::Pgd;
  if (name == "adam")
    return OptimizerKind::Adam;
  return std::nullopt;
}

const char *to_string(StopReason r) {
  switch (r) {
  case StopReason::NotStarted:
    return "not-started";
  case StopReason::ValueTolerance:
    return "value-tolerance";
  case StopReason::GradientTolerance:
    return "gradient-tolerance";
  case StopReason::MaxIterations:
    return "max-iterations";
  case StopReason::Deadline:
    return "deadline";
  case StopReason::Observer:
    return "observer";
  }
  return "?";
}

void OptimizerConfig::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size))
    throw InputError("step size must be positive");
  if (!(grad_tol >= 0.0) || !(value_tol >= 0.0))
    throw InputError("tolerances must be non-negative");
  if (kind == OptimizerKind::Adam) {
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
      throw InputError("adam betas must lie in [0, 1)");
    if (!(adam_eps > 0.0))
      throw InputError("adam epsilon must be positive");
  }
}

AssignmentVector box_project(std::span<const double> x) {
  AssignmentVector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::clamp(v, -1.0, 1.0); });
  return out;
}

OptimizerState initial_state(AssignmentVector x0, const OptimizerConfig &cfg, const Objective &obj) {
  if (x0.size() != obj.dimension())
    throw InputError("initial point has wrong dimension");
  for (double v : x0)
    if (!std::isfinite(v))
      throw InputError("initial point must be finite");
  if (is_box_constrained(cfg.kind))
    for (double v : x0)
      if (v < -1.0 || v > 1.0)
        throw InputError("projected gradient descent must start inside [-1,1]^n");
  OptimizerState s;
  s.x = std::move(x0);
  objective_gradient_into(obj, s.x, s.current);
  s.best_value_seen = s.current.value;
  s.best_x_seen = s.x;
  if (cfg.kind == OptimizerKind::Adam) {
    s.first_moment.assign(s.x.size(), 0.0);
    s.second_moment.assign(s.x.size(), 0.0);
  }
  return s;
}

OptimizerState step(OptimizerState state, const OptimizerConfig &cfg, const Objective &obj) {
  const auto &g = state.current.gradient;
  AssignmentVector next = state.x;
  switch (cfg.kind) {
  case OptimizerKind::Gd:
  case OptimizerKind::Pgd:
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] -= cfg.step_size * g[i];
    if (cfg.kind == OptimizerKind::Pgd)
      for (double &v : next)
        v = std::clamp(v, -1.0, 1.0);
    break;
  case OptimizerKind::Adam: {
    if (state.first_moment.size() != next.size()) {
      state.first_moment.assign(next.size(), 0.0);
      state.second_moment.assign(next.size(), 0.0);
    }
    const double t = static_cast<double>(state.iter + 1);
    const double c1 = 1.0 - std::pow(cfg.adam_beta1, t);
    const double c2 = 1.0 - std::pow(cfg.adam_beta2, t);
    for (std::size_t i = 0; i < next.size(); ++i) {
      auto &m = state.first_moment[i];
      auto &v = state.second_moment[i];
      m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g[i];
      v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g[i] * g[i];
      next[i] -= cfg.step_size * (m / c1) / (std::sqrt(v / c2) + cfg.adam_eps);
    }
    break;
  }
  }

  ObjectiveEvaluation eval;
  bool finite = std::all_of(next.begin(), next.end(), [](double v) { return std::isfinite(v); });
  if (finite) {
    try {
      objective_gradient_into(obj, next, eval);
    } catch (const EvaluationError &) {
      finite = false;
    }
  }
  if (!finite)
    throw DivergedError("optimizer diverged at iteration " + std::to_string(state.iter + 1), std::move(state));

  state.x = std::move(next);
  state.current = std::move(eval);
  ++state.iter;
  if (state.current.value < state.best_value_seen) {
    state.best_value_seen = state.current.value;
    state.best_x_seen = state.x;
  }
  return state;
}

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double e : v)
    m = std::max(m, std::abs(e));
  return m;
}

std::optional<StopReason> converged(const OptimizerState &s, const OptimizerConfig &cfg) {
  if (s.current.value <= cfg.value_tol)
    return StopReason::ValueTolerance;
  if (cfg.grad_tol > 0.0 && inf_norm(s.current.gradient) <= cfg.grad_tol)
    return StopReason::GradientTolerance;
  return std::nullopt;
}

} // namespace

OptimizerState run(AssignmentVector x0, const OptimizerConfig &cfg, const Objective &obj, Deadline deadline,
                   const StepObserver &observer) {
  cfg.validate();
  OptimizerState s = initial_state(std::move(x0), cfg, obj);
  if (auto r = converged(s, cfg)) {
    s.stop_reason = *r;
    return s;
  }
  while (true) {
    if (s.iter >= cfg.max_iters) {
      s.stop_reason = StopReason::MaxIterations;
      return s;
    }
    if (deadline && std::chrono::steady_clock::now() >= *deadline) {
      s.stop_reason = StopReason::Deadline;
      return s;
    }
    s = step(std::move(s), cfg, obj);
    if (auto r = converged(s, cfg)) {
      s.stop_reason = *r;
      return s;
    }
    if (observer && observer(s)) {
      s.stop_reason = StopReason::Observer;
      return s;
    }
  }
}

} // namespace hsat
