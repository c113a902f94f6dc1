#include "hsat/fourier_eval.hpp"

#include <cmath>
#include <string>

namespace hsat {
namespace {

inline double literal_value(const Literal &lit, std::span<const double> x) {
  const double v = x[lit.var - 1];
  return lit.negated ? -v : v;
}

void require_finite(const Constraint &c, std::span<const double> x) {
  if (c.max_var() > x.size())
    throw InputError("point has " + std::to_string(x.size()) + " coordinates, constraint references variable " +
                     std::to_string(c.max_var()));
  for (const auto &lit : c.literals())
    if (!std::isfinite(x[lit.var - 1]))
      throw EvaluationError("non-finite coordinate for variable " + std::to_string(lit.var));
}

// Scratch storage reused across calls on the same thread.
std::vector<double> &scratch(std::size_t size) {
  thread_local std::vector<double> buf;
  if (buf.size() < size)
    buf.resize(size);
  return buf;
}

// For each j, out[j] = scale * prod_{i != j} factor(i), without division.
template <typename Factor>
double product_with_leave_one_out(std::size_t k, Factor factor, double scale, std::span<double> out) {
  double prefix = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (!out.empty())
      out[j] = prefix;
    prefix *= factor(j);
  }
  if (!out.empty()) {
    double suffix = scale;
    for (std::size_t j = k; j-- > 0;) {
      out[j] *= suffix;
      suffix *= factor(j);
    }
  }
  return prefix;
}

double eval_or(const Constraint &c, std::span<const double> x, std::span<double> partials) {
  const auto lits = c.literals();
  auto factor = [&](std::size_t j) { return 0.5 * (1.0 + literal_value(lits[j], x)); };
  // d/dy_j of (1+y_j)/2 is 1/2
  return product_with_leave_one_out(lits.size(), factor, 0.5, partials);
}

double eval_xor(const Constraint &c, std::span<const double> x, std::span<double> partials) {
  const auto lits = c.literals();
  auto factor = [&](std::size_t j) { return literal_value(lits[j], x); };
  const double prod = product_with_leave_one_out(lits.size(), factor, 0.5, partials);
  return 0.5 * (1.0 + prod);
}

double eval_nae(const Constraint &c, std::span<const double> x, std::span<double> partials) {
  const auto lits = c.literals();
  const std::size_t k = lits.size();
  const double scale = std::ldexp(1.0, -static_cast<int>(k));
  auto plus = [&](std::size_t j) { return 1.0 + literal_value(lits[j], x); };
  auto minus = [&](std::size_t j) { return 1.0 - literal_value(lits[j], x); };
  if (partials.empty()) {
    return scale * (product_with_leave_one_out(k, plus, 1.0, {}) + product_with_leave_one_out(k, minus, 1.0, {}));
  }
  auto &buf = scratch(k);
  std::span<double> minus_partials(buf.data(), k);
  const double p = product_with_leave_one_out(k, plus, scale, partials);
  const double m = product_with_leave_one_out(k, minus, -scale, minus_partials);
  for (std::size_t j = 0; j < k; ++j)
    partials[j] += minus_partials[j];
  return scale * (p + m);
}

// Multilinear extension of the CARD violation indicator. With p_j = (1-y_j)/2
// playing the role of "literal j is true", the extension equals
// sum_t D[t] * violated(t) where D is the convolution of the pairs (1-p_j, p_j).
// Entries of D may be negative off the box; the identity is polynomial.
double eval_card(const Constraint &c, std::span<const double> x, std::span<double> partials) {
  const auto lits = c.literals();
  const std::size_t k = lits.size();
  auto violated = [&](std::size_t t) { return c.card_holds(t) ? 0.0 : 1.0; };

  if (partials.empty()) {
    auto &dist = scratch(k + 1);
    std::fill(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k + 1), 0.0);
    dist[0] = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double p = 0.5 * (1.0 - literal_value(lits[j], x));
      const double q = 1.0 - p;
      for (std::size_t t = j + 1; t > 0; --t)
        dist[t] = q * dist[t] + p * dist[t - 1];
      dist[0] *= q;
    }
    double value = 0.0;
    for (std::size_t t = 0; t <= k; ++t)
      value += dist[t] * violated(t);
    return value;
  }

  // Prefix distributions D_j (over the first j literals) are kept in a
  // triangular buffer; a single backward sweep carries the expected violation
  // given a count of trues so far, so every leave-one-out derivative costs O(k).
  const std::size_t tri = (k + 1) * (k + 2) / 2;
  auto &buf = scratch(tri + (k + 1));
  double *prefix = buf.data();
  double *to_go = buf.data() + tri;
  auto row = [&](std::size_t j) { return prefix + j * (j + 1) / 2; };

  row(0)[0] = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double p = 0.5 * (1.0 - literal_value(lits[j], x));
    const double q = 1.0 - p;
    const double *src = row(j);
    double *dst = row(j + 1);
    dst[0] = q * src[0];
    for (std::size_t t = 1; t <= j; ++t)
      dst[t] = q * src[t] + p * src[t - 1];
    dst[j + 1] = p * src[j];
  }
  const double *full = row(k);
  double value = 0.0;
  for (std::size_t t = 0; t <= k; ++t) {
    value += full[t] * violated(t);
    to_go[t] = violated(t);
  }
  for (std::size_t j = k; j-- > 0;) {
    // to_go[a]: expected violation given a trues among literals 0..j
    const double *before = row(j);
    double dp = 0.0;
    for (std::size_t a = 0; a <= j; ++a)
      dp += before[a] * (to_go[a + 1] - to_go[a]);
    const double dy = -0.5 * dp;
    partials[j] = lits[j].negated ? -dy : dy;
    const double p = 0.5 * (1.0 - literal_value(lits[j], x));
    const double q = 1.0 - p;
    for (std::size_t a = 0; a <= j; ++a)
      to_go[a] = q * to_go[a] + p * to_go[a + 1];
  }
  return value;
}

} // namespace

double fourier_value_and_partials(const Constraint &c, std::span<const double> x, std::span<double> partials) {
  double value = 0.0;
  switch (c.kind()) {
  case ConstraintKind::Or:
    value = eval_or(c, x, partials);
    break;
  case ConstraintKind::Xor:
    value = eval_xor(c, x, partials);
    break;
  case ConstraintKind::Nae:
    value = eval_nae(c, x, partials);
    break;
  case ConstraintKind::Card:
    return eval_card(c, x, partials); // applies literal signs itself
  }
  if (!partials.empty()) {
    const auto lits = c.literals();
    for (std::size_t j = 0; j < lits.size(); ++j)
      if (lits[j].negated)
        partials[j] = -partials[j];
  }
  return value;
}

double fourier_eval(const Constraint &c, std::span<const double> x) {
  require_finite(c, x);
  const double v = fourier_value_and_partials(c, x, {});
  if (!std::isfinite(v))
    throw EvaluationError("constraint evaluation overflowed");
  return v;
}

ConstraintEvaluation fourier_grad(const Constraint &c, std::span<const double> x) {
  require_finite(c, x);
  std::vector<double> partials(c.size());
  ConstraintEvaluation out;
  out.value = fourier_value_and_partials(c, x, partials);
  if (!std::isfinite(out.value))
    throw EvaluationError("constraint evaluation overflowed");
  out.gradient.assign(x.size(), 0.0);
  const auto lits = c.literals();
  for (std::size_t j = 0; j < lits.size(); ++j)
    out.gradient[lits[j].var - 1] = partials[j];
  return out;
}

std::pair<double, double> multilinear_split_check(const Constraint &c, std::span<const double> x, std::uint32_t var) {
  bool present = false;
  for (const auto &lit : c.literals())
    present = present || lit.var == var;
  if (!present)
    throw InputError("variable " + std::to_string(var) + " does not occur in the constraint");
  require_finite(c, x);
  std::vector<double> pinned(x.begin(), x.end());
  pinned[var - 1] = 1.0;
  const double at_plus = fourier_value_and_partials(c, pinned, {});
  pinned[var - 1] = -1.0;
  const double at_minus = fourier_value_and_partials(c, pinned, {});
  return {at_plus, at_minus};
}

} // namespace hsat
