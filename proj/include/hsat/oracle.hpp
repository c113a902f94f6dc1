#pragma once

// Exhaustive ground truth for small instances. Nothing in here calls the
// closed-form evaluators; everything is derived from truth tables.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "hsat/core_model.hpp"

namespace hsat::oracle {

class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxArity = 16;
inline constexpr std::size_t kMaxVars = 20;

/// Violation indicator of a k-ary Boolean function. Bit j of an index set
/// means local variable j is True (-1).
class TruthTable {
public:
  TruthTable(std::size_t arity, std::vector<std::uint8_t> violated);

  /// Local variables are the constraint's literals' variables, in order.
  static TruthTable from_constraint(const Constraint &c);

  /// Violation set written as strings over {T,F}, e.g. {"FFF", "FTT"}.
  /// Character j is local variable j.
  static TruthTable from_violation_set(std::size_t arity, std::initializer_list<std::string_view> violations);

  std::size_t arity() const { return arity_; }
  std::size_t rows() const { return violated_.size(); }
  bool violates(std::uint32_t row) const { return violated_[row] != 0; }

private:
  std::size_t arity_;
  std::vector<std::uint8_t> violated_;
};

/// Coefficient of subset S stored at index S (bit j = local variable j).
struct FourierCoefficients {
  std::size_t arity = 0;
  std::vector<double> coeff;

  static FourierCoefficients from_terms(std::size_t arity,
                                        std::initializer_list<std::pair<std::uint32_t, double>> terms);
  double operator[](std::uint32_t subset) const { return coeff[subset]; }
};

FourierCoefficients brute_force_coefficients(const TruthTable &table);
FourierCoefficients brute_force_coefficients(const Constraint &c);

/// sum_S coeff(S) prod_{j in S} x_j over local coordinates x (size = arity).
double eval_via_coefficients(const FourierCoefficients &coeffs, std::span<const double> x);

/// Local coordinates of a constraint taken from a full point: x[var-1] per literal.
std::vector<double> gather_local(const Constraint &c, std::span<const double> x);

bool has_isolated_violations(const TruthTable &table);
bool has_isolated_violations(const Constraint &c);

/// One-sided falsifier of rounding-friendliness. Returns local coordinates l
/// with |FE(l)| <= 1e-9 and sign_round(l) violating; such a witness proves the
/// function is not rounding-friendly. Returning nullopt proves nothing.
std::optional<std::vector<double>> falsify_rounding_friendly(const TruthTable &table, std::uint64_t trials,
                                                             std::uint64_t seed);
std::optional<std::vector<double>> falsify_rounding_friendly(const Constraint &c, std::uint64_t trials,
                                                             std::uint64_t seed);

inline constexpr double kWitnessTolerance = 1e-9;

struct Optimum {
  std::size_t min_violations = 0;
  BooleanAssignment witness;
};

/// Exhaustive MaxSAT over all 2^n assignments.
Optimum brute_force_optimum(const Formula &f);

} // namespace hsat::oracle
