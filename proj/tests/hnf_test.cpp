#include "hsat/hnf.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "hsat/benchgen.hpp"
#include "test_support.hpp"

using namespace hsat;
using hsat::testing::neg;
using hsat::testing::pos;

namespace {

struct Run {
  std::string out;
  int code = -1;
};

Run run_cli(const std::string &args) {
  const std::string cmd = std::string(HSAT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  Run r;
  if (!pipe)
    return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string &name, const std::string &text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

Formula random_hybrid(Rng &rng, std::uint32_t n, std::size_t m) {
  Formula f(n, {});
  for (std::size_t i = 0; i < m; ++i)
    f.add(hsat::testing::random_constraint(rng, hsat::testing::kAllKinds[rng.below(4)],
                                           2 + rng.below(std::min<std::uint32_t>(n, 7) - 1), n));
  return f;
}

} // namespace

TEST(ParseHnf, Examples) {
  EXPECT_EQ(parse_hnf("p hnf 2 1\n1 2 0\n"), Formula(2, {Constraint::make_or({pos(1), pos(2)})}));
  EXPECT_EQ(parse_hnf("p hnf 3 1\nx 1 -2 3 0\n"), Formula(3, {Constraint::make_xor({pos(1), neg(2), pos(3)})}));
  EXPECT_EQ(parse_hnf("p hnf 3 1\nd >= 2 1 2 3 0\n"),
            Formula(3, {Constraint::make_card(Comparator::Ge, 2, {pos(1), pos(2), pos(3)})}));
  EXPECT_EQ(parse_hnf("c hello\np hnf 3 2\n  n   1 -3 0\nd = 0 2 0\n"),
            Formula(3, {Constraint::make_nae({pos(1), neg(3)}), Constraint::make_card(Comparator::Eq, 0, {pos(2)})}));
}

TEST(ParseHnf, ErrorsCarryLineNumbers) {
  const auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_hnf(text);
    } catch (const ParseError &e) {
      return e.line;
    }
    return 0;
  };
  EXPECT_EQ(line_of("p cnf 2 1\n1 2 0\n"), 1u);
  EXPECT_EQ(line_of("p hnf 2 1\n1 3 0\n"), 2u);   // out of range
  EXPECT_EQ(line_of("p hnf 2 1\n1 -1 0\n"), 2u);  // duplicate variable
  EXPECT_EQ(line_of("p hnf 2 1\nc x\n1 2\n"), 3u); // missing terminator
  EXPECT_EQ(line_of("p hnf 3 1\nd > 1 1 2 0\n"), 2u);
  EXPECT_EQ(line_of("p hnf 3 1\nd >= 3 1 2 0\n"), 2u);
  EXPECT_EQ(line_of("1 2 0\n"), 1u); // body before header
  EXPECT_GT(line_of("p hnf 2 2\n1 2 0\n"), 0u); // declared m mismatch
}

TEST(EmitResult, Examples) {
  SolveResult sat;
  sat.status = SolveStatus::Sat;
  sat.assignment = BooleanAssignment(std::vector<std::int8_t>{-1, 1});
  auto e = emit_result(sat);
  EXPECT_EQ(e.text, "s SATISFIABLE\nv 1 -2 0\n");
  EXPECT_EQ(e.exit_code, 10);

  SolveResult unknown;
  unknown.status = SolveStatus::Unknown;
  unknown.violated = 3;
  e = emit_result(unknown);
  EXPECT_EQ(e.text, "s UNKNOWN\no 3\n");
  EXPECT_EQ(e.exit_code, 0);

  SolveResult empty;
  empty.status = SolveStatus::Sat;
  empty.assignment = BooleanAssignment(std::vector<std::int8_t>{});
  EXPECT_EQ(emit_result(empty).text, "s SATISFIABLE\nv 0\n");
}

TEST(EmitResult, VLinesReadBack) {
  Rng rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const auto b = hsat::testing::random_boolean(rng, 1 + rng.below(120));
    SolveResult r;
    r.status = SolveStatus::Sat;
    r.assignment = b;
    EXPECT_EQ(parse_v_lines(emit_result(r).text, static_cast<std::uint32_t>(b.size())), b);
  }
}

TEST(HnfProperties, SerializeParseRoundTrip) {
  Rng rng(1234);
  for (int rep = 0; rep < 200; ++rep) {
    const auto f = random_hybrid(rng, 2 + static_cast<std::uint32_t>(rng.below(30)), rng.below(20));
    const auto text = serialize_hnf(f);
    EXPECT_EQ(parse_hnf(text), f) << text;
    EXPECT_EQ(serialize_hnf(parse_hnf(text)), text);
  }
}

TEST(Cli, SolveSatisfiableWithSelfCheck) {
  const auto path = temp_file("sat.hnf", serialize_hnf(gen_random_kcnf(30, 60, 3, 2)));
  const auto r = run_cli("solve --self-check --seed 3 --restarts 8 " + path);
  EXPECT_EQ(r.code, 10);
  ASSERT_EQ(r.out.rfind("s SATISFIABLE\n", 0), 0u) << r.out;
  EXPECT_EQ(count_violations(gen_random_kcnf(30, 60, 3, 2), parse_v_lines(r.out, 30)), 0u);
}

TEST(Cli, SolveUnknownReportsViolations) {
  const auto path = temp_file("unsat.hnf", "p hnf 1 2\nx 1 0\nx -1 0\n");
  const auto r = run_cli("solve --restarts 2 --max-iters 200 " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "s UNKNOWN\no 1\n");
}

TEST(Cli, MalformedInputExitsWithError) {
  const auto path = temp_file("bad.hnf", "p hnf 2 1\n1 3 0\n");
  EXPECT_EQ(run_cli("solve " + path).code, 1);
  EXPECT_EQ(run_cli("solve --formulation linear --optimizer adam " + path).code, 1);
}

TEST(Cli, SolveOutputIsDeterministic) {
  const auto path = temp_file("det.hnf", serialize_hnf(gen_random_kcnf(60, 250, 3, 1)));
  const std::string args = "solve --seed 5 --restarts 4 --max-iters 800 --threads 2 " + path;
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
}

TEST(Cli, GenWritesParseableFormula) {
  const auto r = run_cli("gen --family card --n 10 --rp 0.5 --rv 0.4 --seed 7");
  ASSERT_EQ(r.code, 0);
  BenchSpec spec;
  spec.family = BenchFamily::Card;
  spec.n = 10;
  spec.r_p = 0.5;
  spec.r_v = 0.4;
  spec.seed = 7;
  EXPECT_EQ(parse_hnf(r.out), generate(spec, 0));
}
