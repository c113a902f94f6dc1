#include "hsat/hnf.hpp"

#include <charconv>
#include <optional>
#include <vector>

namespace hsat {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
      ++i;
    if (i > start)
      tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view tok) {
  Int v{};
  const auto *end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    return std::nullopt;
  return v;
}

class Parser {
public:
  Formula parse(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos)
        nl = text.size();
      ++line_;
      handle_line(tokenize(text.substr(pos, nl - pos)));
      pos = nl + 1;
    }
    if (!header_)
      throw ParseError(line_, "missing 'p hnf' header");
    if (formula_.num_constraints() != declared_m_)
      throw ParseError(line_, "header declares " + std::to_string(declared_m_) + " constraints, found " +
                                  std::to_string(formula_.num_constraints()));
    return std::move(formula_);
  }

private:
  void handle_line(const std::vector<std::string_view> &tok) {
    if (tok.empty() || tok[0] == "c")
      return;
    if (tok[0] == "p") {
      if (header_)
        throw ParseError(line_, "duplicate header");
      if (tok.size() != 4 || tok[1] != "hnf")
        throw ParseError(line_, "header must be 'p hnf <n> <m>'");
      auto n = parse_int<std::uint32_t>(tok[2]);
      auto m = parse_int<std::size_t>(tok[3]);
      if (!n || !m)
        throw ParseError(line_, "malformed header counts");
      header_ = true;
      formula_ = Formula(*n, {});
      declared_m_ = *m;
      return;
    }
    if (!header_)
      throw ParseError(line_, "constraint before 'p hnf' header");
    try {
      formula_.add(parse_constraint(tok));
    } catch (const InputError &e) {
      throw ParseError(line_, e.what());
    }
  }

  Constraint parse_constraint(const std::vector<std::string_view> &tok) {
    std::size_t i = 0;
    ConstraintKind kind = ConstraintKind::Or;
    Comparator cmp = Comparator::Ge;
    std::uint32_t bound = 0;
    if (tok[0] == "x") {
      kind = ConstraintKind::Xor;
      i = 1;
    } else if (tok[0] == "n") {
      kind = ConstraintKind::Nae;
      i = 1;
    } else if (tok[0] == "d") {
      kind = ConstraintKind::Card;
      if (tok.size() < 3)
        throw ParseError(line_, "cardinality line needs '<op> <bound>'");
      if (tok[1] == ">=")
        cmp = Comparator::Ge;
      else if (tok[1] == "<=")
        cmp = Comparator::Le;
      else if (tok[1] == "=")
        cmp = Comparator::Eq;
      else
        throw ParseError(line_, "unknown comparator '" + std::string(tok[1]) + "'");
      auto b = parse_int<std::uint32_t>(tok[2]);
      if (!b)
        throw ParseError(line_, "malformed cardinality bound");
      bound = *b;
      i = 3;
    }
    std::vector<Literal> lits;
    bool terminated = false;
    for (; i < tok.size(); ++i) {
      auto v = parse_int<std::int64_t>(tok[i]);
      if (!v)
        throw ParseError(line_, "malformed literal '" + std::string(tok[i]) + "'");
      if (*v == 0) {
        if (i + 1 != tok.size())
          throw ParseError(line_, "tokens after terminating 0");
        terminated = true;
        break;
      }
      auto lit = Literal::from_dimacs(*v);
      if (lit.var > formula_.num_vars())
        throw ParseError(line_, "variable " + std::to_string(lit.var) + " exceeds declared count " +
                                    std::to_string(formula_.num_vars()));
      lits.push_back(lit);
    }
    if (!terminated)
      throw ParseError(line_, "missing terminating 0");
    switch (kind) {
    case ConstraintKind::Or:
      return Constraint::make_or(std::move(lits));
    case ConstraintKind::Xor:
      return Constraint::make_xor(std::move(lits));
    case ConstraintKind::Nae:
      return Constraint::make_nae(std::move(lits));
    case ConstraintKind::Card:
      return Constraint::make_card(cmp, bound, std::move(lits));
    }
    throw ParseError(line_, "unreachable constraint kind");
  }

  std::size_t line_ = 0;
  bool header_ = false;
  std::size_t declared_m_ = 0;
  Formula formula_;
};

} // namespace

Formula parse_hnf(std::string_view text) { return Parser{}.parse(text); }

std::string serialize_hnf(const Formula &f) {
  std::string out = "p hnf " + std::to_string(f.num_vars()) + " " + std::to_string(f.num_constraints()) + "\n";
  for (const auto &c : f.constraints()) {
    switch (c.kind()) {
    case ConstraintKind::Or:
      break;
    case ConstraintKind::Xor:
      out += "x ";
      break;
    case ConstraintKind::Nae:
      out += "n ";
      break;
    case ConstraintKind::Card:
      out += "d ";
      out += to_string(c.comparator());
      out += ' ';
      out += std::to_string(c.bound());
      out += ' ';
      break;
    }
    for (const auto &lit : c.literals()) {
      out += std::to_string(lit.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

EmittedResult emit_result(const SolveResult &r) {
  EmittedResult out;
  if (r.status == SolveStatus::Sat && r.assignment) {
    out.text = "s SATISFIABLE\nv";
    const auto &b = *r.assignment;
    for (std::uint32_t v = 1; v <= b.size(); ++v) {
      out.text += ' ';
      if (!b.is_true(v))
        out.text += '-';
      out.text += std::to_string(v);
    }
    out.text += " 0\n";
    out.exit_code = kExitSat;
  } else {
    out.text = "s UNKNOWN\no " + std::to_string(r.violated) + "\n";
    out.exit_code = kExitUnknown;
  }
  return out;
}

BooleanAssignment parse_v_lines(std::string_view text, std::uint32_t n) {
  auto b = BooleanAssignment::all_false(n);
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = text.size();
    ++line;
    const auto tok = tokenize(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (tok.empty() || tok[0] != "v")
      continue;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      auto v = parse_int<std::int64_t>(tok[i]);
      if (!v)
        throw ParseError(line, "malformed value literal");
      if (*v == 0)
        break;
      const auto lit = Literal::from_dimacs(*v);
      if (lit.var > n)
        throw ParseError(line, "value literal out of range");
      b.set(lit.var, !lit.negated);
    }
  }
  return b;
}

} // namespace hsat
