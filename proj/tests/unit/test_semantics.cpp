#include <doctest.h>

#include <array>

#include "goedel/compiler.hpp"
#include "goedel/semantics.hpp"
#include "random_ast.hpp"

using namespace goedel;

namespace {

TruthVal truth(const char* text, std::uint64_t budget = 100, const Env& env = {}) {
  return eval_truth(parse_formula(text), env, budget);
}

bool definite(TruthVal v) { return v != TruthVal::Unknown; }

}  // namespace

TEST_CASE("example statements") {
  CHECK(truth("((S0 + S0) = SS0)") == TruthVal::True);
  CHECK(truth("((S0 + S0) > SSS0)") == TruthVal::False);
  CHECK(truth("Ex0.((x0 * x0) = #10)") == TruthVal::Unknown);
  CHECK(truth("Ex0.((x0 * x0) = SSSS0)") == TruthVal::True);
  CHECK(truth("(Ax1.((x0 * Sx0) > x1) & (x0 < S0))", 20, {{0, 0}}) == TruthVal::False);
}

TEST_CASE("bounded quantifiers are decided exactly") {
  CHECK(truth("Ax0.((x0 < #20000) -> !((x0 * x0) = SS0))", 5) == TruthVal::True);
  CHECK(truth("Ex0.((x0 < #20000) & ((x0 * x0) = #19321))", 5) == TruthVal::True);
  CHECK(truth("Ax0.((#20000 > x0) -> (x0 < #20000))", 5) == TruthVal::True);
  CHECK(truth("Ax0.(x0 = x0)", 10) == TruthVal::Unknown);
}

TEST_CASE("uncovered variables are reported") {
  CHECK_THROWS_AS(eval_truth(parse_formula("(x3 = 0)"), {}, 5), UncoveredVariable);
  CHECK_THROWS_AS(eval_witnessed(compile(rf_library("add")), {{1, 2}}), UncoveredVariable);
}

TEST_CASE("property: negation coherence, budget monotonicity, desugar invariance") {
  testing::AstGen gen(41);
  gen.max_var = 2;
  gen.big_numerals = false;
  const std::array<std::uint64_t, 3> budgets{2, 5, 9};
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula(1 + i % 4);
    Env env{{0, Nat(i % 3)}, {1, Nat(i % 5)}, {2, Nat(1)}};
    INFO(render(f));
    TruthVal prev = TruthVal::Unknown;
    for (std::uint64_t b : budgets) {
      TruthVal v = eval_truth(f, env, b);
      CHECK(eval_truth(lnot(f), env, b) == tv_not(v));
      if (definite(prev)) CHECK(v == prev);
      if (definite(v)) prev = v;
      TruthVal d = eval_truth(desugar(f), env, b);
      if (definite(v) && definite(d)) CHECK(v == d);
    }
  }
}

TEST_CASE("witnessed evaluation agrees with budgeted truth on compiled formulas") {
  CompiledFormula c = compile(rf_library("add"));
  for (unsigned long a = 0; a <= 2; ++a)
    for (unsigned long b = 0; b <= 2; ++b)
      for (unsigned long y = 0; y <= 5; ++y) {
        Env env{{1, a}, {2, b}, {3, y}};
        TruthVal t = eval_truth(c.formula, env, 3);
        if (definite(t)) CHECK((t == TruthVal::True) == eval_witnessed(c, env));
      }
}
