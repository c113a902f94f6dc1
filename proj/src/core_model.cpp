#include "hsat/core_model.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace hsat {

Literal Literal::from_dimacs(std::int64_t lit) {
  if (lit == 0 || lit == std::numeric_limits<std::int64_t>::min())
    throw InputError("literal must be a nonzero integer");
  const auto mag = lit < 0 ? -lit : lit;
  if (mag > std::numeric_limits<std::uint32_t>::max())
    throw InputError("variable index out of range: " + std::to_string(mag));
  return Literal{static_cast<std::uint32_t>(mag), lit < 0};
}

const char *to_string(ConstraintKind kind) {
  switch (kind) {
  case ConstraintKind::Or:
    return "or";
  case ConstraintKind::Xor:
    return "xor";
  case ConstraintKind::Nae:
    return "nae";
  case ConstraintKind::Card:
    return "card";
  }
  return "?";
}

const char *to_string(Comparator cmp) {
  switch (cmp) {
  case Comparator::Ge:
    return ">=";
  case Comparator::Le:
    return "<=";
  case Comparator::Eq:
    return "=";
  }
  return "?";
}

BooleanAssignment::BooleanAssignment(std::vector<std::int8_t> values) : values_(std::move(values)) {
  for (auto v : values_)
    if (v != 1 && v != -1)
      throw InputError("boolean assignment entries must be +1 or -1");
}

BooleanAssignment BooleanAssignment::all_false(std::size_t n) {
  return BooleanAssignment(std::vector<std::int8_t>(n, 1));
}

AssignmentVector BooleanAssignment::as_real() const {
  return AssignmentVector(values_.begin(), values_.end());
}

Constraint::Constraint(ConstraintKind kind, std::vector<Literal> lits, Comparator cmp, std::uint32_t bound)
    : kind_(kind), literals_(std::move(lits)), cmp_(cmp), bound_(bound) {
  if (literals_.empty())
    throw InputError(std::string(to_string(kind_)) + " constraint needs at least one literal");
  if (kind_ == ConstraintKind::Nae && literals_.size() < 2)
    throw InputError("nae constraint needs at least two literals");
  if (kind_ == ConstraintKind::Card && bound_ > literals_.size())
    throw InputError("cardinality bound " + std::to_string(bound_) + " exceeds constraint width " +
                     std::to_string(literals_.size()));
  std::unordered_set<std::uint32_t> seen;
  for (const auto &lit : literals_) {
    if (lit.var == 0)
      throw InputError("variable indices are 1-based");
    if (!seen.insert(lit.var).second)
      throw InputError("variable " + std::to_string(lit.var) + " appears twice in one constraint");
  }
}

Constraint Constraint::make_or(std::vector<Literal> lits) {
  return Constraint(ConstraintKind::Or, std::move(lits), Comparator::Ge, 0);
}

Constraint Constraint::make_xor(std::vector<Literal> lits) {
  return Constraint(ConstraintKind::Xor, std::move(lits), Comparator::Ge, 0);
}

Constraint Constraint::make_nae(std::vector<Literal> lits) {
  return Constraint(ConstraintKind::Nae, std::move(lits), Comparator::Ge, 0);
}

Constraint Constraint::make_card(Comparator cmp, std::uint32_t bound, std::vector<Literal> lits) {
  return Constraint(ConstraintKind::Card, std::move(lits), cmp, bound);
}

std::uint32_t Constraint::max_var() const {
  std::uint32_t m = 0;
  for (const auto &lit : literals_)
    m = std::max(m, lit.var);
  return m;
}

bool Constraint::card_holds(std::size_t num_true) const {
  switch (cmp_) {
  case Comparator::Ge:
    return num_true >= bound_;
  case Comparator::Le:
    return num_true <= bound_;
  case Comparator::Eq:
    return num_true == bound_;
  }
  return false;
}

Formula::Formula(std::uint32_t num_vars, std::vector<Constraint> constraints) : num_vars_(num_vars) {
  constraints_.reserve(constraints.size());
  for (auto &c : constraints)
    add(std::move(c));
}

void Formula::add(Constraint c) {
  if (c.max_var() > num_vars_)
    throw InputError("variable " + std::to_string(c.max_var()) + " exceeds declared count " +
                     std::to_string(num_vars_));
  constraints_.push_back(std::move(c));
}

bool literal_true(const Literal &lit, const BooleanAssignment &b) { return b.is_true(lit.var) != lit.negated; }

bool is_satisfied(const Constraint &c, const BooleanAssignment &b) {
  if (c.max_var() > b.size())
    throw InputError("assignment has " + std::to_string(b.size()) + " entries, constraint references variable " +
                     std::to_string(c.max_var()));
  std::size_t num_true = 0;
  for (const auto &lit : c.literals())
    num_true += literal_true(lit, b) ? 1 : 0;
  switch (c.kind()) {
  case ConstraintKind::Or:
    return num_true >= 1;
  case ConstraintKind::Xor:
    return num_true % 2 == 1;
  case ConstraintKind::Nae:
    return num_true != 0 && num_true != c.size();
  case ConstraintKind::Card:
    return c.card_holds(num_true);
  }
  return false;
}

std::size_t count_violations(const Formula &f, const BooleanAssignment &b) {
  if (b.size() != f.num_vars())
    throw InputError("assignment length " + std::to_string(b.size()) + " does not match " +
                     std::to_string(f.num_vars()) + " variables");
  std::size_t violated = 0;
  for (const auto &c : f.constraints())
    violated += is_satisfied(c, b) ? 0 : 1;
  return violated;
}

BooleanAssignment sign_round(std::span<const double> x) {
  std::vector<std::int8_t> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) -> std::int8_t { return v < 0.0 ? -1 : 1; });
  return BooleanAssignment(std::move(out));
}

} // namespace hsat
