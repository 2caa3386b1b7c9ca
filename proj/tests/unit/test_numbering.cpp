#include <doctest.h>

#include <cctype>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "goedel/numbering.hpp"
#include "goedel/syntax.hpp"
#include "random_ast.hpp"

using namespace goedel;

namespace {

std::vector<unsigned long> small_primes(std::size_t count) {
  std::vector<unsigned long> ps;
  for (unsigned long n = 2; ps.size() < count; ++n) {
    bool prime = true;
    for (unsigned long p : ps) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ps.push_back(n);
  }
  return ps;
}

Nat pw(unsigned long b, unsigned long e) {
  Nat r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// Tokens of the canonical rendering, counting xN, #N and -> as one token.
std::size_t render_tokens(const std::string& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == ' ') continue;
    ++n;
    if (c == 'x' || c == '#')
      while (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) ++i;
    if (c == '-') ++i;
  }
  return n;
}

Nat numeral_bits(const Formula& f);

Nat term_numeral_bits(const Term& t) {
  if (!t) return 0;
  if (t->kind == TermKind::Numeral && t->value > kNumeralExpandLimit)
    return Nat(static_cast<unsigned long>(mpz_sizeinbase(t->value.get_mpz_t(), 2)));
  return term_numeral_bits(t->lhs) + term_numeral_bits(t->rhs);
}

Nat numeral_bits(const Formula& f) {
  if (!f) return 0;
  return term_numeral_bits(f->s) + term_numeral_bits(f->t) + numeral_bits(f->a) +
         numeral_bits(f->b);
}

}  // namespace

TEST_CASE("prime-power codec on hand-computed values") {
  Formula f = parse_formula("((S0 + S0) = SS0)");
  Nat expect = pw(2, 2) * 3 * pw(5, 3) * pw(7, 2) * 11 * pw(13, 5) * pw(17, 2) * pw(19, 2) * 23;
  CHECK(encode(f, CodecId::PrimePower).value == expect);
  CHECK(encode(parse("0"), CodecId::PrimePower).value == 2);
  Node zero_term = decode(GoedelCode{2, CodecId::PrimePower});
  CHECK(render(zero_term) == "0");
  try {
    decode(GoedelCode{7, CodecId::PrimePower});
    FAIL("expected DecodeError");
  } catch (const DecodeError& e) {
    CHECK(e.kind() == DecodeFailure::NotInImage);
  }
}

TEST_CASE("prime-power codes are products of prime powers of the token list") {
  auto ps = small_primes(400);
  testing::AstGen gen(21);
  gen.kernel_only = true;
  gen.big_numerals = false;
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.formula(1 + i % 4);
    std::vector<Nat> toks = prime_power_tokens(f);
    if (toks.size() > ps.size()) continue;
    Nat prod = 1;
    for (std::size_t k = 0; k < toks.size(); ++k) prod *= pw(ps[k], toks[k].get_ui());
    CHECK(prime_power_encode(f) == prod);
  }
  // variables use the (6+i)-th prime
  std::vector<Nat> t = prime_power_tokens(parse_formula("(x0 = x1)"));
  REQUIRE(t.size() == 3);
  CHECK(t[0] == 13);
  CHECK(t[2] == 17);
}

TEST_CASE("compact codec bytes") {
  // '(' '0' '=' '0' ')' little-endian under a 0x01 sentinel
  Nat expect = 11 + 1 * pw(256, 1) + 5 * pw(256, 2) + 1 * pw(256, 3) + 12 * pw(256, 4) +
               pw(256, 5);
  CHECK(compact_encode(parse_formula("(0 = 0)")) == expect);
  CHECK(compact_length(expect) == 5);
  CHECK_THROWS_AS(compact_encode(parse_formula("(0 < S0)")), CodecDomainError);
  try {
    compact_decode(Nat(12345));
    FAIL("expected DecodeError");
  } catch (const DecodeError& e) {
    CHECK(e.kind() == DecodeFailure::NotInImage);
  }
}

TEST_CASE("negation is an affine map on compact codes") {
  testing::AstGen gen(22);
  gen.kernel_only = true;
  for (int i = 0; i < 50; ++i) {
    Formula f = gen.formula(1 + i % 5);
    CHECK(compact_encode(lnot(f)) == 6 + 256 * compact_encode(f));
  }
}

TEST_CASE("property: codecs round trip and are injective") {
  testing::AstGen gen(23);
  gen.kernel_only = true;
  std::set<std::string> seen;
  std::set<Nat> codes;
  for (int i = 0; i < 2000; ++i) {
    Formula f = gen.formula(1 + i % 8);
    Nat c = compact_encode(f);
    CHECK(equal(decode_formula(GoedelCode{c, CodecId::Compact}), f));
    if (seen.insert(render(f)).second) codes.insert(c);
  }
  CHECK(codes.size() == seen.size());

  testing::AstGen small(24);
  small.kernel_only = true;
  small.big_numerals = false;
  for (int i = 0; i < 300; ++i) {
    Formula f = small.formula(1 + i % 3);
    if (prime_power_tokens(f).size() > 64) continue;
    Nat c = prime_power_encode(f);
    CHECK(equal(decode_formula(GoedelCode{c, CodecId::PrimePower}), f));
  }
}

TEST_CASE("property: compact code size bound") {
  testing::AstGen gen(25);
  gen.kernel_only = true;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(1 + i % 8);
    std::size_t bits = mpz_sizeinbase(compact_encode(f).get_mpz_t(), 2);
    Nat bound = 16 * render_tokens(render(f)) + 2 * numeral_bits(f) + 16;
    INFO(render(f));
    CHECK(Nat(static_cast<unsigned long>(bits)) <= bound);
  }
}

TEST_CASE("prime-power codec refuses oversize input") {
  Formula big = eq(numeral(Nat("123456789")), zero());
  CHECK_THROWS_AS(prime_power_encode(big), CodecDomainError);
  std::vector<Formula> parts(20000, eq(zero(), zero()));
  CHECK_THROWS_AS(prime_power_encode(conjunction(parts)), CapExceeded);
}

TEST_CASE("pairing") {
  CHECK(pair(0, 0) == 1);
  CHECK(pair(1, 2) == 11);
  CHECK(unpair_l(11) == 1);
  CHECK(unpair_r(11) == 2);
  CHECK(unpair_l(4) == 0);
  for (unsigned long i = 0; i < 30; ++i)
    for (unsigned long j = 0; j < 30; ++j) {
      Nat p = pair(i, j);
      CHECK(unpair_l(p) == i);
      CHECK(unpair_r(p) == j);
    }
}

TEST_CASE("CRT packing and beta") {
  PackedSequence p = crt_pack({0});
  CHECK(p.b == 1);
  CHECK(p.N == 0);
  CHECK(crt_get(p, 1) == 0);
  Nat s = seq_encode({2, 0, 3});
  CHECK(beta(s, 0) == 3);
  CHECK(beta(s, 1) == 2);
  CHECK(beta(s, 2) == 0);
  CHECK(beta(s, 3) == 3);
  CHECK(seq_decode(s) == std::vector<Nat>{2, 0, 3});
  CHECK_THROWS_AS(seq_encode({}), EmptySequence);
}

TEST_CASE("property: beta reproduces random lists") {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 8;
    std::vector<Nat> ks;
    for (std::size_t i = 0; i < n; ++i) ks.emplace_back(static_cast<unsigned long>(rng() % 51));
    PackedSequence p = crt_pack(ks);
    for (std::size_t i = 1; i <= n; ++i) {
      CHECK(crt_get(p, i) == ks[i - 1]);
      for (std::size_t j = i + 1; j <= n; ++j) {
        Nat mi = 1 + i * p.b, mj = 1 + j * p.b, g;
        mpz_gcd(g.get_mpz_t(), mi.get_mpz_t(), mj.get_mpz_t());
        CHECK(g == 1);
      }
    }
    Nat code = seq_encode(ks);
    CHECK(beta(code, 0) == n);
    for (std::size_t i = 0; i <= n; ++i) CHECK(beta(code, i) < code);
  }
}

TEST_CASE("star codec parity") {
  testing::AstGen gen(27);
  gen.kernel_only = true;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula(1 + i % 6);
    Nat c = star_encode(f);
    CHECK(mpz_odd_p(c.get_mpz_t()));
    CHECK(c == star_regular(f));
    CHECK(equal(star_decode(c), f));
  }
}

TEST_CASE("digest of big naturals") {
  CHECK(nat_digest(Nat(12345)) == "12345");
  Nat big = pw(10, 2000) + 7;
  std::string d = nat_digest(big);
  CHECK(d.rfind("...00000000000000000007 (6644 bits", 0) == 0);
}
