#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "goedel/numbering.hpp"
#include "goedel/syntax.hpp"
#include "random_ast.hpp"

using namespace goedel;

namespace {

Term S(Term t) { return succ(std::move(t)); }
Term x(VarIndex i) { return var(i); }

}  // namespace

TEST_CASE("parse builds the expected tree") {
  Formula f = parse_formula("((S0 + S0) = SS0)");
  CHECK(equal(f, eq(plus(S(zero()), S(zero())), S(S(zero())))));
  CHECK(equal(parse_term("#3"), parse_term("SSS0")));
  CHECK(is_numeral(parse_term("SSS0")));
}

TEST_CASE("parse errors carry the offset") {
  try {
    parse(")(xy");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse_formula("(0 = 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("0"), ParseError);
}

TEST_CASE("canonical rendering") {
  CHECK(render(eq(plus(S(zero()), S(zero())), S(S(zero())))) == "((S0 + S0) = SS0)");
  CHECK(render(numeral(0)) == "0");
  CHECK(render(forall(0, gt(times(x(0), S(x(0))), x(1)))) == "Ax0.((x0 * Sx0) > x1)");
  CHECK(render(numeral(2)) == "SS0");
  CHECK(render(numeral(Nat("1000000000"))) == "#1000000000");
}

TEST_CASE("desugar eliminates the defined connectives") {
  CHECK(equal(desugar(exists(0, eq(x(0), zero()))), lnot(forall(0, lnot(eq(x(0), zero()))))));
  Formula k = eq(zero(), zero());
  CHECK(desugar(k) == k);
  CHECK(equal(desugar(gt(x(0), x(1))),
              lnot(forall(2, imp(eq(x(0), plus(x(1), x(2))), eq(x(2), zero()))))));
}

TEST_CASE("free variables") {
  CHECK(free_vars(forall(0, eq(x(0), x(1)))) == VarSet{1});
  CHECK(free_vars(eq(numeral(5), zero())).empty());
  CHECK(free_vars(parse_formula("(Ax1.((x0 * Sx0) > x1) & (x0 < S0))")) == VarSet{0});
}

TEST_CASE("substitution") {
  CHECK(equal(substitute(eq(x(0), numeral(2)), 0, numeral(7)), eq(numeral(7), numeral(2))));
  Formula closed = forall(0, eq(x(0), x(0)));
  CHECK(substitute(closed, 0, numeral(3)) == closed);
  CHECK_THROWS_AS(substitute(forall(1, eq(x(0), x(1))), 0, x(1)), CaptureError);
}

TEST_CASE("property: parse inverts render") {
  testing::AstGen gen(11);
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(1 + i % 8);
    INFO(render(f));
    CHECK(equal(parse_formula(render(f)), f));
  }
}

TEST_CASE("property: desugar is idempotent and keeps free variables") {
  testing::AstGen gen(12);
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(1 + i % 6);
    Formula d = desugar(f);
    INFO(render(f));
    CHECK(is_kernel(d));
    CHECK(equal(desugar(d), d));
    CHECK(free_vars(d) == free_vars(f));
  }
}

TEST_CASE("property: free variables after substitution") {
  testing::AstGen gen(13);
  int exact = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(1 + i % 6);
    Term t = gen.term(2);
    VarIndex v = gen.pick(4);
    Formula g;
    try {
      g = substitute(f, v, t);
    } catch (const CaptureError&) {
      continue;
    }
    VarSet bound = free_vars(f);
    bound.erase(v);
    VarSet ft = free_vars(t);
    bound.insert(ft.begin(), ft.end());
    VarSet got = free_vars(g);
    CHECK(std::includes(bound.begin(), bound.end(), got.begin(), got.end()));
    if (free_vars(f).count(v)) {
      CHECK(got == bound);
      ++exact;
    }
  }
  CHECK(exact > 100);
}

TEST_CASE("property: numerals and successor chains are interchangeable") {
  for (unsigned long n = 0; n <= 10000; n += (n < 50 ? 1 : 97)) {
    Term chain = zero();
    for (unsigned long i = 0; i < n; ++i) chain = succ(chain);
    Term num = numeral(n);
    CHECK(render(chain) == render(num));
    CHECK(compact_encode(eq(chain, zero())) == compact_encode(eq(num, zero())));
  }
}

// Reference enumeration: every kernel formula rendering up to a length,
// built by rendered length, filtered to free variables {x0}.
namespace {

struct ByLength {
  std::size_t max;
  std::map<std::size_t, std::vector<Term>> terms;
  std::map<std::size_t, std::vector<Formula>> formulas;

  explicit ByLength(std::size_t m) : max(m) {
    for (std::size_t len = 1; len <= max; ++len) {
      auto& ts = terms[len];
      if (len == 1) ts.push_back(zero());
      if (len == 2)
        for (VarIndex v = 0; v < 10; ++v) ts.push_back(var(v));
      for (const Term& t : terms[len - 1]) ts.push_back(succ(t));
      for (std::size_t a = 1; a + 5 <= len; ++a)
        for (const Term& l : terms[a])
          for (const Term& r : terms[len - 5 - a]) {
            ts.push_back(plus(l, r));
            ts.push_back(times(l, r));
          }
      auto& fs = formulas[len];
      for (std::size_t a = 1; a + 5 <= len; ++a)
        for (const Term& l : terms[a])
          for (const Term& r : terms[len - 5 - a]) fs.push_back(eq(l, r));
      for (const Formula& f : formulas[len - 1]) fs.push_back(lnot(f));
      for (std::size_t a = 1; a + 5 <= len; ++a)
        for (const Formula& l : formulas[a])
          for (const Formula& r : formulas[len - 5 - a]) {
            fs.push_back(land(l, r));
            fs.push_back(lor(l, r));
          }
      for (std::size_t a = 1; a + 6 <= len; ++a)
        for (const Formula& l : formulas[a])
          for (const Formula& r : formulas[len - 6 - a]) fs.push_back(imp(l, r));
      if (len > 4)
        for (VarIndex v = 0; v < 10; ++v)
          for (const Formula& f : formulas[len - 4]) fs.push_back(forall(v, f));
    }
  }
};

}  // namespace

TEST_CASE("enumerate_svf matches a length-ordered reference enumeration") {
  ByLength ref(12);
  std::vector<std::string> expect;
  for (std::size_t len = 1; len <= 12; ++len) {
    std::vector<std::string> tier;
    for (const Formula& f : ref.formulas[len])
      if (free_vars(f) == VarSet{0}) tier.push_back(render(f));
    std::sort(tier.begin(), tier.end());
    tier.erase(std::unique(tier.begin(), tier.end()), tier.end());
    expect.insert(expect.end(), tier.begin(), tier.end());
  }
  REQUIRE(expect.size() >= 25);
  for (std::size_t k = 1; k <= 25; ++k) {
    Formula f = enumerate_svf(k);
    CHECK(render(f) == expect[k - 1]);
    CHECK(free_vars(f) == VarSet{0});
  }
}
