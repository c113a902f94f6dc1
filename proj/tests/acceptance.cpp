// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is non-zero if any criterion fails, except for sub-checks listed
// as known deviations (their line still reads FAIL and says why).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "hsat/benchgen.hpp"
#include "hsat/fourier_eval.hpp"
#include "hsat/hnf.hpp"
#include "hsat/oracle.hpp"
#include "hsat/random.hpp"
#include "hsat/solver.hpp"
#include "hsat/sweep.hpp"

using namespace hsat;

namespace {

struct Verdict {
  bool pass = true;
  bool known_deviation = false; // failure confined to a documented deviation
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Literal> random_literals(Rng &rng, std::uint32_t n, std::size_t k) {
  std::vector<std::uint32_t> vars(n);
  for (std::uint32_t i = 0; i < n; ++i)
    vars[i] = i + 1;
  std::vector<Literal> lits;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(vars[i], vars[i + rng.below(n - i)]);
    lits.push_back(Literal{vars[i], rng.coin()});
  }
  return lits;
}

Constraint random_constraint(Rng &rng, ConstraintKind kind, std::size_t k, std::uint32_t n) {
  auto lits = random_literals(rng, n, k);
  switch (kind) {
  case ConstraintKind::Or:
    return Constraint::make_or(std::move(lits));
  case ConstraintKind::Xor:
    return Constraint::make_xor(std::move(lits));
  case ConstraintKind::Nae:
    return Constraint::make_nae(std::move(lits));
  case ConstraintKind::Card:
    break;
  }
  return Constraint::make_card(static_cast<Comparator>(rng.below(3)), static_cast<std::uint32_t>(rng.below(k + 1)),
                               std::move(lits));
}

std::vector<double> random_point(Rng &rng, std::size_t n, double lo, double hi) {
  std::vector<double> x(n);
  for (double &v : x)
    v = rng.uniform(lo, hi);
  return x;
}

constexpr ConstraintKind kKinds[] = {ConstraintKind::Or, ConstraintKind::Xor, ConstraintKind::Nae,
                                     ConstraintKind::Card};

// 1 -------------------------------------------------------------------------
Verdict oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  double worst = 0.0;
  std::size_t evals = 0;
  for (auto kind : kKinds) {
    for (int i = 0; i < 500; ++i) {
      const std::size_t k = 2 + rng.below(9);
      const auto c = random_constraint(rng, kind, k, 12);
      const auto coeffs = oracle::brute_force_coefficients(c);
      for (int p = 0; p < 100; ++p) {
        const auto x = random_point(rng, 12, -2, 2);
        worst = std::max(worst, std::abs(fourier_eval(c, x) - oracle::eval_via_coefficients(coeffs, oracle::gather_local(c, x))));
        ++evals;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-9 && secs <= 60.0, false, fmt("max|delta| = %.3g over %zu evaluations, %.1f s", worst, evals, secs)};
}

// 2 -------------------------------------------------------------------------
Verdict gradient_correctness() {
  Rng rng(202);
  const double h = 1e-5;
  double worst = 0.0;
  std::size_t points = 0, skipped = 0;
  for (auto form : {Formulation::Linear, Formulation::Square, Formulation::Abs}) {
    for (auto kind : kKinds) {
      for (int p = 0; p < 1000; ++p) {
        const std::uint32_t n = 8;
        Formula f(n, {});
        for (int i = 0; i < 4; ++i)
          f.add(random_constraint(rng, kind, 2 + rng.below(4), n));
        const Objective obj(f, form, p % 2 ? 0.4 : 0.0);
        auto x = random_point(rng, n, -2, 2);
        const auto eval = objective_gradient(obj, x);
        if (form == Formulation::Abs &&
            std::any_of(eval.per_constraint_values.begin(), eval.per_constraint_values.end(),
                        [](double fe) { return std::abs(fe) < 1e-6; })) {
          ++skipped;
          continue;
        }
        ++points;
        for (std::size_t i = 0; i < n; ++i) {
          const double saved = x[i];
          x[i] = saved + h;
          const double up = objective_value(obj, x).value;
          x[i] = saved - h;
          const double down = objective_value(obj, x).value;
          x[i] = saved;
          const double fd = (up - down) / (2 * h);
          worst = std::max(worst, std::abs(eval.gradient[i] - fd) / std::max(1.0, std::abs(fd)));
        }
      }
    }
  }
  return {worst <= 1e-5, false,
          fmt("max relative error %.3g over %zu points (%zu ABS kink points excluded)", worst, points, skipped)};
}

// 3 -------------------------------------------------------------------------
Verdict soundness_round_trip() {
  Rng rng(303);
  std::size_t instances = 0, sat_answers = 0, false_sat = 0;
  const SolverVariant variants[] = {{Formulation::Square, 0.0, OptimizerKind::Gd},
                                    {Formulation::Square, 0.4, OptimizerKind::Adam},
                                    {Formulation::Abs, 0.0, OptimizerKind::Adam},
                                    {Formulation::Abs, 0.2, OptimizerKind::Gd},
                                    {Formulation::Linear, 0.0, OptimizerKind::Pgd}};
  std::uint64_t seed = 0;
  while (instances < 1000) {
    ++seed;
    Formula f(1, {});
    switch (seed % 4) {
    case 0:
      f = gen_random_kcnf(12, static_cast<std::uint32_t>(12 + rng.below(36)), 3, seed);
      break;
    case 1:
      f = gen_random_kxor(12, static_cast<std::uint32_t>(3 + rng.below(10)), 2 + rng.below(2), seed);
      break;
    case 2:
      f = gen_random_card(10, 0.5, 0.4, seed);
      break;
    default: {
      f = Formula(12, {});
      const std::size_t m = 5 + rng.below(15);
      for (std::size_t i = 0; i < m; ++i)
        f.add(random_constraint(rng, kKinds[rng.below(4)], 2 + rng.below(4), 12));
    }
    }
    if (oracle::brute_force_optimum(f).min_violations != 0)
      continue;
    ++instances;
    const auto &v = variants[instances % std::size(variants)];
    SolveConfig cfg;
    cfg.formulation = v.formulation;
    cfg.alpha = v.alpha;
    cfg.optimizer.kind = v.optimizer;
    cfg.optimizer.max_iters = 2000;
    cfg.restarts = 4;
    cfg.seed = seed;
    const auto r = solve(f, cfg);
    if (r.status == SolveStatus::Sat) {
      ++sat_answers;
      false_sat += count_violations(f, *r.assignment) != 0;
    }
  }
  return {false_sat == 0, false,
          fmt("%zu satisfiable instances, %zu SAT answers, %zu false SAT", instances, sat_answers, false_sat)};
}

// 4 -------------------------------------------------------------------------
Verdict epsilon_rounding() {
  Rng rng(404);
  std::size_t premise = 0, counterexamples = 0, total = 0;
  for (auto kind : {ConstraintKind::Or, ConstraintKind::Xor, ConstraintKind::Nae}) {
    for (std::size_t k = 2; k <= 8; ++k) {
      const auto c = random_constraint(rng, kind, k, static_cast<std::uint32_t>(k));
      for (int t = 0; t < 10'000; ++t) {
        // Half uniform, half scaled around random Boolean corners, so the
        // premise |FE| < eps actually fires.
        std::vector<double> x(k);
        for (double &v : x)
          v = t % 2 ? rng.uniform(-3, 3) : (rng.coin() ? -1.0 : 1.0) * rng.uniform(0.0, 2.5);
        ++total;
        if (!epsilon_rounding_check(c, x))
          continue;
        ++premise;
        counterexamples += !is_satisfied(c, sign_round(x));
      }
    }
  }
  return {counterexamples == 0 && premise > 0, false,
          fmt("%zu points, premise held at %zu, %zu counterexamples", total, premise, counterexamples)};
}

// 5 -------------------------------------------------------------------------
Verdict counterexamples() {
  const auto and2 = Constraint::make_card(Comparator::Ge, 2, {Literal{1, false}, Literal{2, false}});
  const std::vector<double> p{3, 3};
  const double fe_and = fourier_eval(and2, p);
  const bool and_violates = !is_satisfied(and2, sign_round(p));

  // The polynomial exactly as printed for the three-variable example.
  const auto printed = oracle::FourierCoefficients::from_terms(
      3, {{0b000, 3.0 / 8}, {0b001, 1.0 / 8}, {0b010, 1.0 / 8}, {0b100, -1.0 / 8}, {0b111, 1.0 / 4}});
  const auto table = oracle::TruthTable::from_violation_set(3, {"FFF", "FTT", "TFT"});
  const std::vector<double> q{0.1, 0.1, 160.0 / 49};
  const double fe_ex = oracle::eval_via_coefficients(printed, q);
  // sign_round of q is (+,+,+): FFF, row 0.
  const bool ex_violates = q[0] >= 0 && q[1] >= 0 && q[2] >= 0 && table.violates(0);

  // Independent confirmation via the falsifier on the violation set itself.
  const bool witness = oracle::falsify_rounding_friendly(table, 20'000, 5).has_value();

  const bool pass = std::abs(fe_and) <= 1e-9 && and_violates && std::abs(fe_ex) <= 1e-9 && ex_violates && witness;
  return {pass, false,
          fmt("AND FE(3,3) = %.2g, rounds to (F,F) violating: %s; example FE(0.1,0.1,160/49) = %.2g, rounds to FFF "
              "violating: %s; falsifier witness on violation set: %s",
              fe_and, and_violates ? "yes" : "no", fe_ex, ex_violates ? "yes" : "no", witness ? "yes" : "no")};
}

// 6 -------------------------------------------------------------------------
bool is_or_like(const oracle::TruthTable &t) {
  std::size_t count = 0;
  for (std::uint32_t r = 0; r < t.rows(); ++r)
    count += t.violates(r);
  return count == 1;
}

bool is_xor_like(const oracle::TruthTable &t) {
  for (std::uint32_t parity : {0u, 1u}) {
    bool match = true;
    for (std::uint32_t r = 0; r < t.rows() && match; ++r)
      match = t.violates(r) == ((std::popcount(r) & 1u) == parity);
    if (match)
      return true;
  }
  return false;
}

bool is_nae_like(const oracle::TruthTable &t) {
  if (t.arity() < 2)
    return false;
  const std::uint32_t full = static_cast<std::uint32_t>(t.rows() - 1);
  for (std::uint32_t r = 0; r < t.rows(); ++r) {
    if (!t.violates(r))
      continue;
    for (std::uint32_t s = 0; s < t.rows(); ++s)
      if (t.violates(s) != (s == r || s == (r ^ full)))
        return false;
    return true;
  }
  return false;
}

Verdict isolated_violations_direction() {
  std::size_t checked = 0, falsified = 0, non_isolated = 0, example_pattern = 0, bad = 0, friendly_type_hits = 0;
  std::size_t non_isolated_total = 0;

  auto examine = [&](const oracle::TruthTable &t, bool friendly_type, std::uint64_t trials, std::uint64_t seed) {
    ++checked;
    const bool isolated = oracle::has_isolated_violations(t);
    non_isolated_total += !isolated;
    const auto w = oracle::falsify_rounding_friendly(t, trials, seed);
    if (!w)
      return;
    ++falsified;
    if (friendly_type)
      ++friendly_type_hits;
    if (!isolated) {
      ++non_isolated;
      return;
    }
    // Isolated violations yet not rounding-friendly: the three-variable
    // example's situation. Confirm the witness independently.
    const auto coeffs = oracle::brute_force_coefficients(t);
    std::uint32_t row = 0;
    for (std::size_t j = 0; j < w->size(); ++j)
      row |= ((*w)[j] < 0 ? 1u : 0u) << j;
    if (std::abs(oracle::eval_via_coefficients(coeffs, *w)) <= oracle::kWitnessTolerance && t.violates(row))
      ++example_pattern;
    else
      ++bad;
  };

  // Every constraint of every type, all sign patterns, k <= 6.
  std::uint64_t seed = 0;
  for (std::size_t k = 1; k <= 6; ++k) {
    for (std::uint32_t signs = 0; signs < (1u << k); ++signs) {
      std::vector<Literal> lits;
      for (std::size_t j = 0; j < k; ++j)
        lits.push_back(Literal{static_cast<std::uint32_t>(j + 1), ((signs >> j) & 1u) != 0});
      examine(oracle::TruthTable::from_constraint(Constraint::make_or(lits)), true, 10'000, ++seed);
      examine(oracle::TruthTable::from_constraint(Constraint::make_xor(lits)), true, 10'000, ++seed);
      if (k >= 2)
        examine(oracle::TruthTable::from_constraint(Constraint::make_nae(lits)), true, 10'000, ++seed);
      for (auto cmp : {Comparator::Ge, Comparator::Le, Comparator::Eq})
        for (std::uint32_t b = 0; b <= k; ++b) {
          const auto t = oracle::TruthTable::from_constraint(Constraint::make_card(cmp, b, lits));
          examine(t, is_or_like(t) || is_xor_like(t) || is_nae_like(t), 10'000, ++seed);
        }
    }
  }
  // Every Boolean function of arity <= 3.
  for (std::size_t k = 1; k <= 3; ++k) {
    const std::uint32_t rows = 1u << k;
    for (std::uint32_t fn = 0; fn < (1u << rows); ++fn) {
      std::vector<std::uint8_t> v(rows);
      for (std::uint32_t r = 0; r < rows; ++r)
        v[r] = (fn >> r) & 1u;
      const oracle::TruthTable t(k, v);
      examine(t, is_or_like(t) || is_xor_like(t) || is_nae_like(t), 20'000, ++seed);
    }
  }
  return {bad == 0 && friendly_type_hits == 0 && example_pattern > 0, false,
          fmt("%zu functions; %zu proven non-rounding-friendly: %zu lack isolated violations, %zu isolated "
              "(example pattern, witnesses verified), %zu unexplained; OR/XOR/NAE falsified: %zu; non-isolated "
              "functions falsified: %zu/%zu",
              checked, falsified, non_isolated, example_pattern, bad, friendly_type_hits, non_isolated,
              non_isolated_total)};
}

// 7 -------------------------------------------------------------------------
Verdict corollary_bound() {
  std::size_t runs = 0, samples = 0, breaches = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    Formula f(1, {});
    if (i % 3 == 0) {
      f = gen_random_kcnf(50, 215, 3, i);
    } else if (i % 3 == 1) {
      f = gen_random_kxor(50, 40, 2 + i % 2, i);
    } else {
      f = Formula(50, {});
      Rng rng(i);
      for (int j = 0; j < 110; ++j)
        f.add(random_constraint(rng, ConstraintKind::Nae, 3, 50));
    }
    const Objective w_obj(f, Formulation::Square, 0.0);
    SolveConfig cfg;
    cfg.formulation = i % 2 ? Formulation::Square : Formulation::Abs;
    cfg.alpha = i % 4 == 0 ? 0.4 : 0.0;
    cfg.optimizer.kind = i % 5 < 2 ? OptimizerKind::Adam : OptimizerKind::Gd;
    cfg.optimizer.max_iters = 1500;
    cfg.restarts = 1;
    cfg.seed = i;
    solve(f, cfg, [&](std::uint32_t, const OptimizerState &s) {
      if (s.iter % 5 != 0)
        return;
      const double w = objective_value(w_obj, s.x).value;
      const auto bound = violation_bound(f, w);
      ++samples;
      if (!bound || count_violations(f, sign_round(s.x)) > *bound)
        ++breaches;
    });
    ++runs;
  }
  return {breaches == 0 && samples > 0, false,
          fmt("%zu runs, %zu sampled iterates, %zu bound violations", runs, samples, breaches)};
}

// 8 -------------------------------------------------------------------------
struct Cell {
  std::uint32_t solved = 0;
  std::uint32_t instances = 0;
};

std::vector<Cell> sweep_cells(BenchFamily family, std::vector<GridPoint> grid, std::vector<SolverVariant> variants) {
  SweepSpec spec;
  spec.family = family;
  spec.n = 100;
  spec.grid = std::move(grid);
  spec.instances = 30;
  spec.seed = 2024;
  spec.variants = std::move(variants);
  spec.base.timeout_seconds = 60;
  spec.threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Cell> out;
  for (const auto &s : aggregate(run_sweep(spec)))
    out.push_back({s.solved, s.instances});
  return out;
}

Verdict trend_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;       // everything except the documented CARD deviation
  bool card_ok = true;
  const auto gd = OptimizerKind::Gd;
  const auto sq = Formulation::Square;

  // (a) penalty sweeps
  for (auto [family, ratios] : {std::pair{BenchFamily::Cnf3, std::vector<double>{2.0, 3.0}},
                                std::pair{BenchFamily::Xor2, std::vector<double>{0.3, 0.5}}}) {
    std::vector<GridPoint> grid;
    for (double r : ratios)
      grid.push_back({r, 0, 0});
    const auto cells = sweep_cells(family, grid, {{sq, 0.0, gd}, {sq, 0.4, gd}, {sq, 0.8, gd}});
    for (std::size_t g = 0; g < ratios.size(); ++g) {
      const auto &a0 = cells[3 * g], &a4 = cells[3 * g + 1], &a8 = cells[3 * g + 2];
      const bool mono = a0.solved >= a4.solved && a4.solved >= a8.solved;
      ok = ok && mono;
      detail += fmt("%s m/n=%g alpha 0/0.4/0.8: %u/%u/%u%s; ", to_string(family), ratios[g], a0.solved, a4.solved,
                    a8.solved, mono ? "" : " NOT monotone");
    }
  }
  {
    const auto adam = OptimizerKind::Adam;
    const auto cells =
        sweep_cells(BenchFamily::Card, {{0, 0.5, 0.2}}, {{sq, 0.0, adam}, {sq, 0.4, adam}, {sq, 0.05, adam}});
    card_ok = cells[1].solved > cells[0].solved;
    detail += fmt("card r_p=0.5 r_v=0.2 adam alpha 0/0.4: %u/%u%s (alpha 0.05: %u); ", cells[0].solved,
                  cells[1].solved, card_ok ? "" : " NOT increased", cells[2].solved);
  }
  // (b) formulations under GD/PGD at m/n = 2.0
  {
    const auto cells = sweep_cells(BenchFamily::Cnf3, {{2.0, 0, 0}},
                                   {{sq, 0.0, gd}, {Formulation::Abs, 0.0, gd}, {Formulation::Linear, 0.0, OptimizerKind::Pgd}});
    const bool order = cells[0].solved >= cells[1].solved && cells[1].solved >= cells[2].solved;
    ok = ok && order;
    detail += fmt("cnf3 m/n=2 square/abs/linear: %u/%u/%u%s; ", cells[0].solved, cells[1].solved, cells[2].solved,
                  order ? "" : " NOT ordered");
  }
  // (c) Adam vs GD at m/n = 2.5
  {
    const auto cells =
        sweep_cells(BenchFamily::Cnf3, {{2.5, 0, 0}}, {{sq, 0.0, OptimizerKind::Adam}, {sq, 0.0, gd}});
    const bool better = cells[0].solved >= cells[1].solved;
    ok = ok && better;
    detail += fmt("cnf3 m/n=2.5 adam/gd: %u/%u%s; ", cells[0].solved, cells[1].solved, better ? "" : " NOT >=");
  }
  const double mins = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;
  detail += fmt("%.1f min", mins);
  if (!card_ok)
    detail += " [known deviation: penalty 0.4 does not help CARD at n=100; see README]";
  return {ok && card_ok, ok && !card_ok, detail};
}

// 9 -------------------------------------------------------------------------
Verdict determinism() {
  std::size_t compared = 0, mismatches = 0;
  auto same = [&](const std::string &a, const std::string &b) {
    ++compared;
    mismatches += a != b;
  };
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto f = gen_random_kcnf(80, 330, 3, s);
    same(serialize_hnf(f), serialize_hnf(gen_random_kcnf(80, 330, 3, s)));
    for (unsigned threads : {1u, 4u}) {
      SolveConfig cfg;
      cfg.seed = s;
      cfg.threads = threads;
      cfg.restarts = 6;
      cfg.optimizer.max_iters = 2000;
      cfg.optimizer.kind = s % 2 ? OptimizerKind::Adam : OptimizerKind::Gd;
      same(emit_result(solve(f, cfg)).text, emit_result(solve(f, cfg)).text);
    }
  }
  SweepSpec spec;
  spec.family = BenchFamily::Card;
  spec.n = 30;
  spec.grid = {{0, 0.5, 0.2}, {0, 0.6, 0.3}};
  spec.instances = 3;
  spec.seed = 9;
  spec.variants = {{Formulation::Square, 0.0, OptimizerKind::Adam}, {Formulation::Abs, 0.4, OptimizerKind::Gd}};
  spec.base.restarts = 2;
  spec.base.optimizer.max_iters = 1000;
  for (unsigned threads : {1u, 3u}) {
    spec.threads = threads;
    const auto a = run_sweep(spec), b = run_sweep(spec);
    same(rows_to_csv(a), rows_to_csv(b));
    same(summary_to_csv(aggregate(a)), summary_to_csv(aggregate(b)));
  }
  return {mismatches == 0, false, fmt("%zu repeated outputs compared byte-for-byte, %zu differ", compared, mismatches)};
}

} // namespace

int main() {
  const std::pair<const char *, std::function<Verdict()>> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"gradient correctness", gradient_correctness},
      {"soundness round-trip", soundness_round_trip},
      {"epsilon-rounding", epsilon_rounding},
      {"counterexamples reproduce", counterexamples},
      {"isolated-violations direction", isolated_violations_direction},
      {"violation bound along trajectories", corollary_bound},
      {"desk-scale trends", trend_reproduction},
      {"determinism", determinism},
  };
  int failed = 0, deviations = 0, passed = 0;
  int id = 0;
  for (const auto &[name, check] : criteria) {
    ++id;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception &e) {
      v = {false, false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
    if (v.pass)
      ++passed;
    else if (v.known_deviation)
      ++deviations;
    else
      ++failed;
  }
  std::printf("acceptance: %d passed, %d failed, %d failed as known deviation\n", passed, failed, deviations);
  return failed == 0 ? 0 : 1;
}
