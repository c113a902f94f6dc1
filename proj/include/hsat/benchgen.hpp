#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hsat/core_model.hpp"

namespace hsat {

enum class BenchFamily : std::uint8_t { Cnf3, Xor2, Card };

const char *to_string(BenchFamily f);
std::optional<BenchFamily> parse_family(std::string_view name);

/// m clauses, each over k distinct variables drawn uniformly without
/// replacement, each literal negated with probability 1/2.
Formula gen_random_kcnf(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed);

/// As gen_random_kcnf with XOR constraints.
Formula gen_random_kxor(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed);

/// floor(r_p n) cardinality constraints, each over floor(r_v n) distinct
/// positive literals, comparator uniform over {>=, <=}, bound floor(r_v n / 2).
Formula gen_random_card(std::uint32_t n, double r_p, double r_v, std::uint64_t seed);

struct BenchSpec {
  BenchFamily family = BenchFamily::Cnf3;
  std::uint32_t n = 100;
  double ratio = 1.0; // m/n for Cnf3 and Xor2
  double r_p = 0.5;   // Card only
  double r_v = 0.2;   // Card only
  std::uint32_t count = 1;
  std::uint64_t seed = 0;
};

/// Formula `index` of a corpus; each index uses its own derived stream.
Formula generate(const BenchSpec &spec, std::uint32_t index);

std::vector<Formula> generate_corpus(const BenchSpec &spec);

} // namespace hsat
