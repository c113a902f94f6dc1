#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsat {

/// Raised for malformed constraints, formulas and assignments.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A signed reference to a 1-based variable.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  static Literal from_dimacs(std::int64_t lit);
  std::int64_t to_dimacs() const {
    return negated ? -static_cast<std::int64_t>(var) : static_cast<std::int64_t>(var);
  }

  friend bool operator==(const Literal &, const Literal &) = default;
};

enum class ConstraintKind : std::uint8_t { Or, Xor, Nae, Card };
enum class Comparator : std::uint8_t { Ge, Le, Eq };

const char *to_string(ConstraintKind kind);
const char *to_string(Comparator cmp);

/// Real-valued point in the search space. Index i holds variable i+1.
using AssignmentVector = std::vector<double>;

/// Boolean point in the +-1 encoding: -1 is True, +1 is False.
class BooleanAssignment {
public:
  BooleanAssignment() = default;
  explicit BooleanAssignment(std::vector<std::int8_t> values);

  /// All variables False.
  static BooleanAssignment all_false(std::size_t n);

  std::size_t size() const { return values_.size(); }
  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  bool is_true(std::uint32_t var) const { return values_[var - 1] < 0; }
  void set(std::uint32_t var, bool truth) { values_[var - 1] = truth ? -1 : 1; }
  std::span<const std::int8_t> values() const { return values_; }

  /// The assignment as a real vector with entries exactly +-1.
  AssignmentVector as_real() const;

  friend bool operator==(const BooleanAssignment &, const BooleanAssignment &) = default;

private:
  std::vector<std::int8_t> values_;
};

/// One typed Boolean constraint. Immutable once built; variables are distinct.
class Constraint {
public:
  static Constraint make_or(std::vector<Literal> lits);
  static Constraint make_xor(std::vector<Literal> lits);
  static Constraint make_nae(std::vector<Literal> lits);
  static Constraint make_card(Comparator cmp, std::uint32_t bound, std::vector<Literal> lits);

  ConstraintKind kind() const { return kind_; }
  std::span<const Literal> literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  Comparator comparator() const { return cmp_; }
  std::uint32_t bound() const { return bound_; }
  std::uint32_t max_var() const;

  /// Discrete semantics of a CARD bound applied to a count of true literals.
  bool card_holds(std::size_t num_true) const;

  friend bool operator==(const Constraint &, const Constraint &) = default;

private:
  Constraint(ConstraintKind kind, std::vector<Literal> lits, Comparator cmp, std::uint32_t bound);

  ConstraintKind kind_;
  std::vector<Literal> literals_;
  Comparator cmp_ = Comparator::Ge;
  std::uint32_t bound_ = 0;
};

/// Conjunction of constraints over variables 1..num_vars.
class Formula {
public:
  Formula() = default;
  Formula(std::uint32_t num_vars, std::vector<Constraint> constraints);

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::span<const Constraint> constraints() const { return constraints_; }
  const Constraint &operator[](std::size_t i) const { return constraints_[i]; }

  void add(Constraint c);

  friend bool operator==(const Formula &, const Formula &) = default;

private:
  std::uint32_t num_vars_ = 0;
  std::vector<Constraint> constraints_;
};

bool literal_true(const Literal &lit, const BooleanAssignment &b);

bool is_satisfied(const Constraint &c, const BooleanAssignment &b);

std::size_t count_violations(const Formula &f, const BooleanAssignment &b);

/// Componentwise sign with sgn(0) = +1 (False).
BooleanAssignment sign_round(std::span<const double> x);

} // namespace hsat
