#include "hsat/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsat/random.hpp"

namespace hsat {

const char *to_string(BenchFamily f) {
  switch (f) {
  case BenchFamily::Cnf3:
    return "cnf3";
  case BenchFamily::Xor2:
    return "xor2";
  case BenchFamily::Card:
    return "card";
  }
  return "?";
}

std::optional<BenchFamily> parse_family(std::string_view name) {
  if (name == "cnf3")
    return BenchFamily::Cnf3;
  if (name == "xor2")
    return BenchFamily::Xor2;
  if (name == "card")
    return BenchFamily::Card;
  return std::nullopt;
}

namespace {

// Floyd's algorithm: k distinct values from [1, n], returned in draw order.
std::vector<std::uint32_t> sample_distinct(Rng &rng, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> chosen;
  chosen.reserve(k);
  for (std::uint32_t j = n - k + 1; j <= n; ++j) {
    const auto t = static_cast<std::uint32_t>(rng.below(j)) + 1;
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
      chosen.push_back(t);
    else
      chosen.push_back(j);
  }
  return chosen;
}

template <typename Make>
Formula gen_uniform(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed, Make make) {
  if (k == 0 || k > n)
    throw InputError("constraint width must be in [1, n]");
  Rng rng(seed);
  std::vector<Constraint> cs;
  cs.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto vars = sample_distinct(rng, n, k);
    std::vector<Literal> lits;
    lits.reserve(k);
    for (auto v : vars)
      lits.push_back(Literal{v, rng.coin()});
    cs.push_back(make(std::move(lits)));
  }
  return Formula(n, std::move(cs));
}

} // namespace

Formula gen_random_kcnf(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed) {
  return gen_uniform(n, m, k, seed, [](std::vector<Literal> lits) { return Constraint::make_or(std::move(lits)); });
}

Formula gen_random_kxor(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed) {
  return gen_uniform(n, m, k, seed, [](std::vector<Literal> lits) { return Constraint::make_xor(std::move(lits)); });
}

Formula gen_random_card(std::uint32_t n, double r_p, double r_v, std::uint64_t seed) {
  if (!(r_p > 0.0 && r_p <= 1.0) || !(r_v > 0.0 && r_v <= 1.0))
    throw InputError("r_p and r_v must lie in (0, 1]");
  const auto m = static_cast<std::uint32_t>(std::floor(r_p * n));
  const auto k = static_cast<std::uint32_t>(std::floor(r_v * n));
  if (m == 0 || k == 0)
    throw InputError("cardinality benchmark parameters give an empty formula or empty constraints");
  const auto bound = static_cast<std::uint32_t>(std::floor(r_v * n / 2.0));
  Rng rng(seed);
  std::vector<Constraint> cs;
  cs.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto vars = sample_distinct(rng, n, k);
    std::vector<Literal> lits;
    lits.reserve(k);
    for (auto v : vars)
      lits.push_back(Literal{v, false});
    const auto cmp = rng.coin() ? Comparator::Ge : Comparator::Le;
    cs.push_back(Constraint::make_card(cmp, bound, std::move(lits)));
  }
  return Formula(n, std::move(cs));
}

Formula generate(const BenchSpec &spec, std::uint32_t index) {
  const auto seed = derive_seed(spec.seed, index);
  const auto m = static_cast<std::uint32_t>(std::llround(spec.ratio * spec.n));
  switch (spec.family) {
  case BenchFamily::Cnf3:
    return gen_random_kcnf(spec.n, m, 3, seed);
  case BenchFamily::Xor2:
    return gen_random_kxor(spec.n, m, 2, seed);
  case BenchFamily::Card:
    return gen_random_card(spec.n, spec.r_p, spec.r_v, seed);
  }
  throw InputError("unknown benchmark family");
}

std::vector<Formula> generate_corpus(const BenchSpec &spec) {
  std::vector<Formula> out;
  out.reserve(spec.count);
  for (std::uint32_t i = 0; i < spec.count; ++i)
    out.push_back(generate(spec, i));
  return out;
}

} // namespace hsat
