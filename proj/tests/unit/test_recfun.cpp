#include <doctest.h>

#include <random>
#include <vector>

#include "goedel/dsl.hpp"
#include "goedel/host.hpp"
#include "goedel/numbering.hpp"
#include "goedel/recfun.hpp"
#include "random_ast.hpp"

using namespace goedel;

namespace {

constexpr std::uint64_t kFuel = 50000000;

Nat run(const RecDef& d, std::vector<Nat> args, bool kernels = true) {
  EvalOutcome o = rf_eval(d, args, kFuel, EvalOptions{kernels});
  REQUIRE_FALSE(o.exhausted);
  return o.value;
}

Nat run(std::string_view name, std::vector<Nat> args, bool kernels = true) {
  return run(rf_library(name), std::move(args), kernels);
}

Nat host_pow(const Nat& x, unsigned long n) {
  Nat r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), n);
  return r;
}

}  // namespace

TEST_CASE("basic functions and arity checks") {
  CHECK(run(rf_proj(3, 2), {1, 3, 5}) == 3);
  CHECK_THROWS_AS(rf_comp(rf_succ(), {rf_zero(1), rf_zero(1)}), ArityError);
  CHECK(run(rf_comp(rf_succ(), {rf_zero(2)}), {4, 4}) == 1);
  CHECK(rf_validate(rf_library("add")) == 2);
}

TEST_CASE("library values") {
  CHECK(run("add", {2, 3}) == 5);
  CHECK(run("add", {2, 3}, false) == 5);
  CHECK(run("mul", {4, 0}, false) == 0);
  CHECK(run("pow", {2, 10}) == 1024);
  CHECK(run("pow", {2, 10}, false) == 1024);
  CHECK(run("mod", {7, 3}) == 1);
  CHECK(run("is_formula_c", {compact_encode(parse_formula("(0 = 0)"))}) == 1);
  CHECK(run("const_42", {9}) == 42);
}

TEST_CASE("minimization and fuel") {
  using namespace dsl;
  RecDef g = fn(2, [] {
    X sq = arg(2) * arg(2);
    return (arg(1) - sq) + (sq - arg(1));
  });
  RecDef isqrt_exact = rf_mu(g);
  CHECK(run(isqrt_exact, {9}) == 3);
  EvalOutcome o = rf_eval(isqrt_exact, {10}, 20000);
  CHECK(o.exhausted);
}

TEST_CASE("text form") {
  RecDef add = rf_parse("(primrec (proj 1 1) (comp succ ((proj 3 3))))");
  CHECK(run(add, {3, 4}) == 7);
  CHECK(run(rf_parse("(lit 2 9)"), {1, 1}) == 9);
  CHECK(run(rf_parse("mod"), {17, 5}) == 2);
  for (const char* name : {"add", "mul", "pow", "pair", "beta"}) {
    RecDef d = rf_library(name);
    RecDef back = rf_parse(rf_print(d, true));
    CHECK(run(back, {5, 3}, false) == run(d, {5, 3}, false));
  }
  CHECK_THROWS_AS(rf_parse("(comp succ"), RecParseError);
  CHECK_THROWS_AS(rf_parse("nosuchprogram"), RecParseError);
  CHECK_THROWS_AS(rf_library("nosuchprogram"), UnknownName);
}

TEST_CASE("property: arithmetic programs agree with host arithmetic") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    Nat a = static_cast<unsigned long>(rng() % 30), b = static_cast<unsigned long>(rng() % 8);
    unsigned long e = rng() % 6;
    bool kernels = t % 2 == 0;
    CHECK(run("mod", {a, b}, kernels) == host_mod(a, b));
    CHECK(run("div", {a, b}, kernels) == host_div(a, b));
    CHECK(run("pow", {b, Nat(e)}, kernels) == host_pow(b, e));
    CHECK(run("pair", {a, b}, kernels) == pair(a, b));
    Nat p = pair(a, b);
    // interpreted unpairing searches quadratically, so kernels stay on here
    CHECK(run("unpair_l", {p}) == a);
    CHECK(run("unpair_r", {p}) == b);
    Nat code = seq_encode({a, b, Nat(e)});
    for (unsigned long i = 0; i <= 3; ++i) CHECK(run("beta", {code, Nat(i)}) == beta(code, i));
  }
}

TEST_CASE("property: syntactic programs agree with host oracles") {
  testing::AstGen gen(32);
  gen.kernel_only = true;
  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    Nat n;
    switch (t % 4) {
      case 0: n = static_cast<unsigned long>(rng()); break;
      case 1: n = compact_encode(gen.formula(1 + t % 3)) + (rng() % 3); break;
      default: n = compact_encode(gen.formula(1 + t % 3)); break;
    }
    INFO(n.get_str());
    CHECK(run("is_formula_c", {n}) == host_is_formula(n));
    CHECK(run("not_c", {n}) == host_not(n));
    if (t % 4 != 2) CHECK(run("diag_c", {n}) == host_diag(n));
  }
}

TEST_CASE("property: fuel monotonicity") {
  std::mt19937_64 rng(34);
  RecDef mul = rf_library("mul");
  for (int t = 0; t < 100; ++t) {
    Nat a = static_cast<unsigned long>(rng() % 20), b = static_cast<unsigned long>(rng() % 20);
    std::uint64_t fuel = 10 + rng() % 3000;
    EvalOutcome o = rf_eval(mul, {a, b}, fuel, EvalOptions{false});
    EvalOutcome more = rf_eval(mul, {a, b}, fuel * 2 + 7, EvalOptions{false});
    if (!o.exhausted) {
      CHECK_FALSE(more.exhausted);
      CHECK(more.value == o.value);
      CHECK(more.fuel_used == o.fuel_used);
    }
  }
}
