#include <doctest.h>

#include <string>

#include "goedel/metatheory.hpp"
#include "goedel/semantics.hpp"

using namespace goedel;

TEST_CASE("diagonal map D") {
  CHECK(diag_D(12345, CodecId::Compact) == 0);
  Nat n = compact_encode(parse_formula("(x0 = 0)"));
  CHECK(diag_D(n, CodecId::Compact) == compact_encode(eq(numeral(n), zero())));
  Nat closed = compact_encode(parse_formula("(0 = 0)"));
  CHECK(diag_D(closed, CodecId::Compact) == closed);
}

TEST_CASE("variable helpers") {
  CHECK(designated_var(parse_formula("Ax0.(x0 = x3)")) == 3);
  CHECK_THROWS_AS(designated_var(parse_formula("(x0 = x1)")), std::invalid_argument);
  CHECK_THROWS_AS(designated_var(parse_formula("(0 = 0)")), std::invalid_argument);
  CHECK(fresh_above({parse_formula("Ax4.(x4 = x1)")}) == 5);
  CHECK(fresh_above({parse_formula("(0 = 0)")}) == 1);
}

TEST_CASE("fixed point for a negated equation") {
  FixedPointCertificate c = build_sigma(parse_formula("!(x1 = 0)"));
  CHECK(c.check_passed);
  CHECK(equal(c.sigma, substitute(c.phi_star, 0, numeral(c.n.value))));
  CHECK(c.sigma_code == diag_D(c.n.value, CodecId::Compact));
  CHECK(free_vars(c.sigma).empty());
  CHECK(c.sigma_stats.node_count == c.phi_star_stats.node_count);
}

TEST_CASE("case analysis reports on alleged proofs") {
  FixedPointCertificate c = build_sigma(parse_formula("(x1 = x1)"));
  std::string plain = incompleteness_case_analysis(c);
  CHECK(plain.find("(a)") != std::string::npos);
  CHECK(plain.find("(b)") != std::string::npos);
  Proof bogus = parse_proof("1: (0 = S0) ; ax E1 {x:=0}\n");
  CHECK(incompleteness_case_analysis(c, bogus).find("proof rejected at line 1") !=
        std::string::npos);
  Proof unrelated = parse_proof("1: (0 = 0) ; ax E1 {x:=0}\n");
  CHECK(incompleteness_case_analysis(c, unrelated).find("accepted, but it proves") !=
        std::string::npos);
  FixedPointCertificate broken = c;
  broken.check_passed = false;
  CHECK_THROWS_AS(incompleteness_case_analysis(broken), CertificateInvalid);
}

TEST_CASE("reversal and generalized diagonalization reject foreign shapes") {
  CHECK(reversal_R(0) == 0);
  CHECK(reversal_R(compact_encode(parse_formula("(0 = 0)"))) == 0);
  std::vector<Formula> psi{parse_formula("(x2 = x2)")};
  CHECK(gd_GD(pair(compact_encode(parse_formula("(0 = 0)")), 1), psi, {1}) == 0);
  CHECK(gd_GD(7, psi, {1}) == 0);
}

TEST_CASE("successor map") {
  CHECK(successor_map(1) == std::vector<std::size_t>{1});
  CHECK(successor_map(3) == std::vector<std::size_t>{2, 3, 1});
}

TEST_CASE("Kripke sentences") {
  for (std::size_t i = 1; i <= 5; ++i) {
    KripkeSentence s = kripke_build(i);
    CHECK(s.even);
    CHECK(s.round_trip);
    CHECK(s.self_reference);
    CHECK(equal(s.a, enumerate_svf(i)));
  }
}

TEST_CASE("provability and Rosser predicates") {
  Provability p = build_provability();
  CHECK(free_vars(p.phi_provable) == VarSet{2});
  CHECK(free_vars(p.phi_formula.formula) == VarSet{1});
  CHECK(free_vars(p.phi_proof_of.formula) == VarSet{1, 2});
  Rosser r = build_rosser(p);
  CHECK(free_vars(r.phi_provable_R) == VarSet{2});
  CHECK(rosser_copies(r, p) == 2);
}

TEST_CASE("witnessed formula predicate on a formula code") {
  Provability p = build_provability();
  CHECK(eval_witnessed(p.phi_formula, {{1, compact_encode(parse_formula("(0 = 0)"))}}));
  CHECK_FALSE(eval_witnessed(p.phi_formula, {{1, Nat(300)}}));
}
