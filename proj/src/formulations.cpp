#include "hsat/formulations.hpp"

#include <cmath>
#include <string>

namespace hsat {

const char *to_string(Formulation f) {
  switch (f) {
  case Formulation::Linear:
    return "linear";
  case Formulation::Square:
    return "square";
  case Formulation::Abs:
    return "abs";
  }
  return "?";
}

std::optional<Formulation> parse_formulation(std::string_view name) {
  if (name == "linear")
    return Formulation::Linear;
  if (name == "square")
    return Formulation::Square;
  if (name == "abs")
    return Formulation::Abs;
  return std::nullopt;
}

Objective::Objective(const Formula &formula, Formulation formulation, double alpha)
    : formula_(&formula), formulation_(formulation), alpha_(alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw InputError("penalty coefficient must be a finite non-negative number");
}

namespace {

void check_dimension(const Objective &obj, std::span<const double> x) {
  if (x.size() != obj.dimension())
    throw InputError("point has " + std::to_string(x.size()) + " coordinates, objective expects " +
                     std::to_string(obj.dimension()));
}

double term(Formulation f, double fe) {
  switch (f) {
  case Formulation::Linear:
    return fe;
  case Formulation::Square:
    return fe * fe;
  case Formulation::Abs:
    return std::abs(fe);
  }
  return fe;
}

// d term / d FE. The ABS kink at FE = 0 takes subgradient 0.
double term_slope(Formulation f, double fe) {
  switch (f) {
  case Formulation::Linear:
    return 1.0;
  case Formulation::Square:
    return 2.0 * fe;
  case Formulation::Abs:
    return fe > 0.0 ? 1.0 : (fe < 0.0 ? -1.0 : 0.0);
  }
  return 1.0;
}

double penalty_value(std::span<const double> x) {
  double p = 0.0;
  for (double xi : x) {
    const double d = xi * xi - 1.0;
    p += d * d;
  }
  return p;
}

[[noreturn]] void fail_constraint(std::size_t index) {
  throw ObjectiveError("non-finite value in constraint " + std::to_string(index), index);
}

void check_total(double value) {
  if (!std::isfinite(value))
    throw ObjectiveError("non-finite objective value", std::nullopt);
}

} // namespace

ObjectiveEvaluation objective_value(const Objective &obj, std::span<const double> x) {
  check_dimension(obj, x);
  ObjectiveEvaluation out;
  const auto constraints = obj.formula().constraints();
  out.per_constraint_values.resize(constraints.size());
  double total = 0.0;
  for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
    const double fe = fourier_value_and_partials(constraints[ci], x, {});
    if (!std::isfinite(fe))
      fail_constraint(ci);
    out.per_constraint_values[ci] = fe;
    total += term(obj.formulation(), fe);
  }
  if (obj.alpha() > 0.0)
    total += obj.alpha() * penalty_value(x);
  check_total(total);
  out.value = total;
  return out;
}

void objective_gradient_into(const Objective &obj, std::span<const double> x, ObjectiveEvaluation &out) {
  check_dimension(obj, x);
  const auto constraints = obj.formula().constraints();
  out.per_constraint_values.resize(constraints.size());
  out.gradient.assign(x.size(), 0.0);
  thread_local std::vector<double> partials;
  double total = 0.0;
  for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
    const auto &c = constraints[ci];
    if (partials.size() < c.size())
      partials.resize(c.size());
    const double fe = fourier_value_and_partials(c, x, std::span<double>(partials.data(), c.size()));
    if (!std::isfinite(fe))
      fail_constraint(ci);
    out.per_constraint_values[ci] = fe;
    total += term(obj.formulation(), fe);
    const double slope = term_slope(obj.formulation(), fe);
    if (slope == 0.0)
      continue;
    const auto lits = c.literals();
    for (std::size_t j = 0; j < lits.size(); ++j)
      out.gradient[lits[j].var - 1] += slope * partials[j];
  }
  const double alpha = obj.alpha();
  if (alpha > 0.0) {
    total += alpha * penalty_value(x);
    for (std::size_t i = 0; i < x.size(); ++i)
      out.gradient[i] += 4.0 * alpha * x[i] * (x[i] * x[i] - 1.0);
  }
  check_total(total);
  for (double g : out.gradient)
    if (!std::isfinite(g))
      throw ObjectiveError("non-finite gradient", std::nullopt);
  out.value = total;
}

ObjectiveEvaluation objective_gradient(const Objective &obj, std::span<const double> x) {
  ObjectiveEvaluation out;
  objective_gradient_into(obj, x, out);
  return out;
}

std::optional<BooleanAssignment> satisfiability_certificate(const Objective &obj, std::span<const double> x,
                                                            double tol) {
  if (!(tol >= 0.0))
    throw InputError("tolerance must be non-negative");
  const auto eval = objective_value(obj, x);
  if (!(eval.value <= tol))
    return std::nullopt;
  auto rounded = sign_round(x);
  if (count_violations(obj.formula(), rounded) != 0)
    return std::nullopt;
  return rounded;
}

} // namespace hsat
