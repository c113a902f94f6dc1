#include "hsat/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "hsat/random.hpp"

namespace hsat {

void SolveConfig::validate() const {
  optimizer.validate();
  if (formulation == Formulation::Linear && !is_box_constrained(optimizer.kind))
    throw InputError("the linear formulation requires a box-constrained optimizer (pgd)");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw InputError("penalty coefficient must be a finite non-negative number");
  if (restarts == 0)
    throw InputError("at least one restart is required");
  if (!(timeout_seconds > 0.0))
    throw InputError("timeout must be positive");
  if (!(tolerance >= 0.0))
    throw InputError("tolerance must be non-negative");
  if (check_interval == 0)
    throw InputError("check interval must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

struct RestartOutcome {
  bool ran = false;
  BooleanAssignment best;
  std::size_t violated = std::numeric_limits<std::size_t>::max();
  double objective = 0.0;
  std::uint64_t iters = 0;
};

class RestartRunner {
public:
  RestartRunner(const Formula &f, const SolveConfig &cfg, Clock::time_point deadline, const IterateHook &hook)
      : formula_(f), cfg_(cfg), objective_(f, cfg.formulation, cfg.alpha), deadline_(deadline), hook_(hook) {}

  // Lowest restart index known to have reached zero violations.
  std::atomic<std::uint32_t> sat_index{std::numeric_limits<std::uint32_t>::max()};

  RestartOutcome run(std::uint32_t r) {
    RestartOutcome out;
    out.ran = true;
    Rng rng(derive_seed(cfg_.seed, r));
    AssignmentVector x0(formula_.num_vars());
    for (double &v : x0)
      v = rng.uniform(-1.0, 1.0);

    auto consider = [&](std::span<const double> x, double value) {
      auto rounded = sign_round(x);
      const auto violated = count_violations(formula_, rounded);
      if (violated < out.violated) {
        out.violated = violated;
        out.best = std::move(rounded);
        out.objective = value;
      }
    };
    consider(x0, objective_value(objective_, x0).value);
    if (out.violated == 0)
      return out;

    auto observer = [&](const OptimizerState &s) {
      if (hook_)
        hook_(r, s);
      if (r > sat_index.load(std::memory_order_relaxed))
        return true;
      if (s.iter % cfg_.check_interval == 0) {
        consider(s.x, s.current.value);
        if (out.violated == 0)
          return true;
      }
      return false;
    };

    OptimizerState final_state;
    try {
      final_state = hsat::run(x0, cfg_.optimizer, objective_, deadline_, observer);
    } catch (const DivergedError &e) {
      final_state = e.last_finite;
    }
    out.iters = final_state.iter;
    consider(final_state.x, final_state.current.value);
    consider(final_state.best_x_seen, final_state.best_value_seen);
    return out;
  }

private:
  const Formula &formula_;
  const SolveConfig &cfg_;
  Objective objective_;
  Clock::time_point deadline_;
  const IterateHook &hook_;
};

} // namespace

SolveResult solve(const Formula &f, const SolveConfig &cfg, const IterateHook &hook) {
  cfg.validate();
  const auto start = Clock::now();
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(std::min(cfg.timeout_seconds, 1e9)));

  RestartRunner runner(f, cfg, deadline, hook);
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  std::atomic<std::uint32_t> next{0};

  auto worker = [&] {
    while (true) {
      const auto r = next.fetch_add(1);
      if (r >= cfg.restarts)
        return;
      if (r > runner.sat_index.load() || Clock::now() >= deadline)
        continue;
      outcomes[r] = runner.run(r);
      if (outcomes[r].violated == 0) {
        auto cur = runner.sat_index.load();
        while (r < cur && !runner.sat_index.compare_exchange_weak(cur, r)) {
        }
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, cfg.restarts));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }

  // Aggregate in restart order so the answer does not depend on scheduling.
  SolveResult result;
  const auto sat_index = runner.sat_index.load();
  const RestartOutcome *best = nullptr;
  for (std::uint32_t r = 0; r < cfg.restarts && r <= sat_index; ++r) {
    const auto &o = outcomes[r];
    if (!o.ran)
      continue;
    ++result.restarts_used;
    result.iters_total += o.iters;
    if (!best || o.violated < best->violated)
      best = &o;
  }
  if (best) {
    result.assignment = best->best;
    result.violated = best->violated;
    result.final_objective = best->objective;
    if (best->violated == 0)
      result.status = SolveStatus::Sat;
  }
  return result;
}

std::optional<std::uint64_t> violation_bound(const Formula &f, double w) {
  if (!(w >= 0.0) || !std::isfinite(w))
    throw InputError("W must be a finite non-negative value");
  const auto cs = f.constraints();
  if (cs.empty())
    return 0;
  const auto kind = cs.front().kind();
  const auto width = cs.front().size();
  for (const auto &c : cs) {
    if (c.kind() != kind)
      return std::nullopt;
    if (kind != ConstraintKind::Xor && c.size() != width)
      return std::nullopt;
  }
  double scale = 0.0;
  switch (kind) {
  case ConstraintKind::Or:
    scale = std::ldexp(1.0, 2 * static_cast<int>(width));
    break;
  case ConstraintKind::Xor:
    scale = 4.0;
    break;
  case ConstraintKind::Nae:
    scale = std::ldexp(1.0, 2 * (static_cast<int>(width) - 1));
    break;
  case ConstraintKind::Card:
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(std::ceil(scale * w));
}

double rounding_epsilon(const Constraint &c) {
  const int k = static_cast<int>(c.size());
  switch (c.kind()) {
  case ConstraintKind::Or:
    return std::ldexp(1.0, -k);
  case ConstraintKind::Xor:
    return 0.5;
  case ConstraintKind::Nae:
    return std::ldexp(1.0, -(k - 1));
  case ConstraintKind::Card:
    break;
  }
  throw InputError("cardinality constraints are not rounding-friendly for any epsilon");
}

bool epsilon_rounding_check(const Constraint &c, std::span<const double> x) {
  const double eps = rounding_epsilon(c);
  return std::abs(fourier_eval(c, x)) < eps;
}

} // namespace hsat
