#pragma once

// HNF: a hybrid extension of DIMACS CNF.
//
//   c <comment>
//   p hnf <n> <m>
//   l1 ... lk 0                  OR
//   x l1 ... lk 0                XOR
//   n l1 ... lk 0                NAE
//   d <op> <bound> l1 ... lk 0   CARD, op in {>=, <=, =}

#include <stdexcept>
#include <string>
#include <string_view>

#include "hsat/solver.hpp"

namespace hsat {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

Formula parse_hnf(std::string_view text);

std::string serialize_hnf(const Formula &f);

struct EmittedResult {
  std::string text;
  int exit_code = 0;
};

inline constexpr int kExitSat = 10;
inline constexpr int kExitUnknown = 0;

/// "s SATISFIABLE" + "v <lits> 0" (positive literal = True), or
/// "s UNKNOWN" + "o <violated>". Exit 10 for SAT, 0 for UNKNOWN.
EmittedResult emit_result(const SolveResult &r);

/// Reads the v-lines of a SAT answer back into an assignment over n variables.
/// Variables absent from the v-lines are False.
BooleanAssignment parse_v_lines(std::string_view text, std::uint32_t n);

} // namespace hsat
