#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hsat/core_model.hpp"

namespace hsat {

/// Raised when an evaluation sees or produces a non-finite number.
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ConstraintEvaluation {
  double value = 0.0;
  std::vector<double> gradient; // dense, one entry per formula variable
};

// Walsh-Fourier expansion FE_c of a constraint, numerized so that it is 0 on
// satisfying Boolean points and 1 on violating ones. `x` is indexed by
// variable (x[v-1]) and may lie anywhere in R^n.
//
//   OR    prod (1+y_i)/2
//   XOR   (1 + prod y_i)/2
//   NAE   (prod (1+y_i) + prod (1-y_i)) / 2^k
//   CARD  multilinear extension of the violation indicator, via a signed
//         Poisson-binomial convolution over p_i = (1-y_i)/2
//
// where y_i = -x_v for a negated literal and x_v otherwise.
double fourier_eval(const Constraint &c, std::span<const double> x);

ConstraintEvaluation fourier_grad(const Constraint &c, std::span<const double> x);

/// Value of FE_c plus its partial derivatives with respect to each literal's
/// variable, written to `partials[j]` for literal j. No input validation; the
/// objective assembly path uses this and checks finiteness of the result.
/// `partials` must have room for c.size() entries (or be empty to skip).
double fourier_value_and_partials(const Constraint &c, std::span<const double> x, std::span<double> partials);

/// FE_c with variable `var` pinned to +1 and to -1. Their mean is the value
/// at x_var = 0, their half-difference is the partial derivative.
std::pair<double, double> multilinear_split_check(const Constraint &c, std::span<const double> x, std::uint32_t var);

} // namespace hsat
