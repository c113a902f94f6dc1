#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hsat/core_model.hpp"
#include "hsat/fourier_eval.hpp"

namespace hsat {

enum class Formulation : std::uint8_t { Linear, Square, Abs };

const char *to_string(Formulation f);
std::optional<Formulation> parse_formulation(std::string_view name);

/// Objective-level evaluation failure; carries the constraint whose term went
/// non-finite, if one is to blame.
class ObjectiveError : public EvaluationError {
public:
  ObjectiveError(const std::string &what, std::optional<std::size_t> constraint_index)
      : EvaluationError(what), constraint_index(constraint_index) {}
  std::optional<std::size_t> constraint_index;
};

/// Whole-formula objective:
///   LINEAR  sum FE_c(x)       + alpha * P(x)
///   SQUARE  sum FE_c(x)^2     + alpha * P(x)
///   ABS     sum |FE_c(x)|     + alpha * P(x)
/// with penalty P(x) = sum_i (x_i^2 - 1)^2.
class Objective {
public:
  Objective(const Formula &formula, Formulation formulation, double alpha);

  const Formula &formula() const { return *formula_; }
  Formulation formulation() const { return formulation_; }
  double alpha() const { return alpha_; }
  std::size_t dimension() const { return formula_->num_vars(); }

private:
  const Formula *formula_;
  Formulation formulation_;
  double alpha_;
};

struct ObjectiveEvaluation {
  double value = 0.0;
  std::vector<double> gradient; // empty when only the value was requested
  std::vector<double> per_constraint_values;
};

ObjectiveEvaluation objective_value(const Objective &obj, std::span<const double> x);

ObjectiveEvaluation objective_gradient(const Objective &obj, std::span<const double> x);

/// Same as objective_gradient but reuses the buffers in `out`.
void objective_gradient_into(const Objective &obj, std::span<const double> x, ObjectiveEvaluation &out);

inline constexpr double kDefaultZeroTolerance = 1e-8;

/// sign_round(x) when the objective is within `tol` of zero and the rounded
/// assignment discretely satisfies the formula; nullopt otherwise.
std::optional<BooleanAssignment> satisfiability_certificate(const Objective &obj, std::span<const double> x,
                                                            double tol = kDefaultZeroTolerance);

} // namespace hsat
