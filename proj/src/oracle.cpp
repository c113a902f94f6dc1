#include "hsat/oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hsat/random.hpp"

namespace hsat::oracle {
namespace {

void check_arity(std::size_t k) {
  if (k > kMaxArity)
    throw CapacityError("arity " + std::to_string(k) + " exceeds oracle limit " + std::to_string(kMaxArity));
}

// Local point -> row index under sign rounding (negative means True).
std::uint32_t rounded_row(std::span<const double> l) {
  std::uint32_t row = 0;
  for (std::size_t j = 0; j < l.size(); ++j)
    if (l[j] < 0.0)
      row |= 1u << j;
  return row;
}

} // namespace

TruthTable::TruthTable(std::size_t arity, std::vector<std::uint8_t> violated)
    : arity_(arity), violated_(std::move(violated)) {
  check_arity(arity_);
  if (violated_.size() != (std::size_t{1} << arity_))
    throw InputError("truth table must have 2^arity rows");
}

TruthTable TruthTable::from_constraint(const Constraint &c) {
  const std::size_t k = c.size();
  check_arity(k);
  const auto lits = c.literals();
  // Evaluate on a dense assignment over the constraint's own variables.
  auto b = BooleanAssignment::all_false(c.max_var());
  std::vector<std::uint8_t> violated(std::size_t{1} << k);
  for (std::uint32_t row = 0; row < violated.size(); ++row) {
    for (std::size_t j = 0; j < k; ++j)
      b.set(lits[j].var, (row >> j) & 1u);
    violated[row] = is_satisfied(c, b) ? 0 : 1;
  }
  return TruthTable(k, std::move(violated));
}

TruthTable TruthTable::from_violation_set(std::size_t arity, std::initializer_list<std::string_view> violations) {
  check_arity(arity);
  std::vector<std::uint8_t> violated(std::size_t{1} << arity, 0);
  for (auto v : violations) {
    if (v.size() != arity)
      throw InputError("violation pattern has wrong length");
    std::uint32_t row = 0;
    for (std::size_t j = 0; j < arity; ++j) {
      if (v[j] == 'T')
        row |= 1u << j;
      else if (v[j] != 'F')
        throw InputError("violation pattern must use T and F");
    }
    violated[row] = 1;
  }
  return TruthTable(arity, std::move(violated));
}

FourierCoefficients FourierCoefficients::from_terms(std::size_t arity,
                                                    std::initializer_list<std::pair<std::uint32_t, double>> terms) {
  check_arity(arity);
  FourierCoefficients out;
  out.arity = arity;
  out.coeff.assign(std::size_t{1} << arity, 0.0);
  for (const auto &[subset, value] : terms) {
    if (subset >= out.coeff.size())
      throw InputError("subset index out of range");
    out.coeff[subset] = value;
  }
  return out;
}

// coeff(S) = 2^-k sum_b f(b) prod_{j in S} b_j. The sum is evaluated with the
// Walsh-Hadamard butterfly, which regroups exactly these 4^k products into
// k 2^k additions.
FourierCoefficients brute_force_coefficients(const TruthTable &table) {
  const std::size_t rows = table.rows();
  FourierCoefficients out;
  out.arity = table.arity();
  out.coeff.resize(rows);
  for (std::uint32_t r = 0; r < rows; ++r)
    out.coeff[r] = table.violates(r) ? 1.0 : 0.0;
  for (std::size_t half = 1; half < rows; half <<= 1) {
    for (std::size_t base = 0; base < rows; base += 2 * half) {
      for (std::size_t i = base; i < base + half; ++i) {
        const double u = out.coeff[i];        // b_j = +1 (False)
        const double v = out.coeff[i + half]; // b_j = -1 (True)
        out.coeff[i] = u + v;
        out.coeff[i + half] = u - v;
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(rows);
  for (double &c : out.coeff)
    c *= scale;
  return out;
}

FourierCoefficients brute_force_coefficients(const Constraint &c) {
  return brute_force_coefficients(TruthTable::from_constraint(c));
}

double eval_via_coefficients(const FourierCoefficients &coeffs, std::span<const double> x) {
  if (x.size() != coeffs.arity)
    throw InputError("point dimension does not match coefficient arity");
  const std::size_t rows = coeffs.coeff.size();
  thread_local std::vector<double> monomial;
  monomial.resize(rows);
  monomial[0] = 1.0;
  double value = coeffs.coeff[0];
  for (std::size_t s = 1; s < rows; ++s) {
    const auto low = static_cast<std::size_t>(std::countr_zero(s));
    monomial[s] = monomial[s & (s - 1)] * x[low];
    value += coeffs.coeff[s] * monomial[s];
  }
  return value;
}

std::vector<double> gather_local(const Constraint &c, std::span<const double> x) {
  std::vector<double> local;
  local.reserve(c.size());
  for (const auto &lit : c.literals())
    local.push_back(x[lit.var - 1]);
  return local;
}

bool has_isolated_violations(const TruthTable &table) {
  for (std::uint32_t row = 0; row < table.rows(); ++row) {
    if (!table.violates(row))
      continue;
    for (std::size_t j = 0; j < table.arity(); ++j)
      if (table.violates(row ^ (1u << j)))
        return false;
  }
  return true;
}

bool has_isolated_violations(const Constraint &c) { return has_isolated_violations(TruthTable::from_constraint(c)); }

// Every trial picks a point, then moves one coordinate to the root of the
// (affine in that coordinate) expansion: FE = l_j G + H with
// G = (FE|l_j=1 - FE|l_j=-1)/2 and H = (FE|l_j=1 + FE|l_j=-1)/2.
// Trials rotate through three ways of picking the starting point:
//   uniform in [-3,3]^k;
//   inside the orthant of a random violating assignment;
//   the same orthant with some coordinates pinned to exactly +-1 and one to
//   +-2, mirroring the zero constructed when two violations are adjacent.
std::optional<std::vector<double>> falsify_rounding_friendly(const TruthTable &table, std::uint64_t trials,
                                                             std::uint64_t seed) {
  const std::size_t k = table.arity();
  std::vector<std::uint32_t> violating;
  for (std::uint32_t r = 0; r < table.rows(); ++r)
    if (table.violates(r))
      violating.push_back(r);
  if (violating.empty() || k == 0)
    return std::nullopt;

  const auto coeffs = brute_force_coefficients(table);
  Rng rng(seed);
  std::vector<double> l(k);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto mode = t % 3;
    const auto target = violating[rng.below(violating.size())];
    const std::size_t solve_for = rng.below(k);
    for (std::size_t j = 0; j < k; ++j) {
      const double sign = ((target >> j) & 1u) ? -1.0 : 1.0;
      switch (mode) {
      case 0:
        l[j] = rng.uniform(-3.0, 3.0);
        break;
      case 1:
        l[j] = sign * rng.uniform(1e-3, 3.0);
        break;
      default:
        l[j] = rng.coin() ? sign : sign * rng.uniform(1e-3, 3.0);
        break;
      }
    }
    if (mode == 2 && k > 1) {
      std::size_t pin = rng.below(k - 1);
      if (pin >= solve_for)
        ++pin;
      l[pin] = ((target >> pin) & 1u) ? -2.0 : 2.0;
    }

    l[solve_for] = 1.0;
    const double at_plus = eval_via_coefficients(coeffs, l);
    l[solve_for] = -1.0;
    const double at_minus = eval_via_coefficients(coeffs, l);
    const double slope = 0.5 * (at_plus - at_minus);
    const double offset = 0.5 * (at_plus + at_minus);
    if (std::abs(slope) < 1e-12)
      continue;
    l[solve_for] = -offset / slope;
    if (!std::isfinite(l[solve_for]))
      continue;
    if (std::abs(eval_via_coefficients(coeffs, l)) > kWitnessTolerance)
      continue;
    if (table.violates(rounded_row(l)))
      return l;
  }
  return std::nullopt;
}

std::optional<std::vector<double>> falsify_rounding_friendly(const Constraint &c, std::uint64_t trials,
                                                             std::uint64_t seed) {
  return falsify_rounding_friendly(TruthTable::from_constraint(c), trials, seed);
}

Optimum brute_force_optimum(const Formula &f) {
  const std::size_t n = f.num_vars();
  if (n > kMaxVars)
    throw CapacityError("brute force limited to " + std::to_string(kMaxVars) + " variables");
  // Gray-code walk: consecutive assignments differ in one variable.
  auto b = BooleanAssignment::all_false(n);
  Optimum best{count_violations(f, b), b};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total && best.min_violations > 0; ++i) {
    const auto flip = static_cast<std::uint32_t>(std::countr_zero(i)) + 1;
    b.set(flip, !b.is_true(flip));
    const auto v = count_violations(f, b);
    if (v < best.min_violations)
      best = Optimum{v, b};
  }
  return best;
}

} // namespace hsat::oracle
