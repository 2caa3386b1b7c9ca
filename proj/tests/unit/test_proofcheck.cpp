#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "goedel/numbering.hpp"
#include "goedel/proofcheck.hpp"
#include "goedel/recfun.hpp"
#include "goedel/semantics.hpp"

using namespace goedel;
namespace fs = std::filesystem;

namespace {

const fs::path kProofs = fs::path(GOEDEL_SOURCE_DIR) / "proofs";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Proof load(const std::string& name) { return parse_proof(slurp(kProofs / name)); }

std::vector<std::string> corpus() {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(kProofs))
    if (e.path().extension() == ".paproof") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::size_t ref_shift(std::size_t r, std::size_t at) { return r >= at ? r + 1 : r; }

// Inserts `line` before position `at` (1-based) and shifts references.
Proof insert_line(const Proof& p, std::size_t at, const ProofLine& line) {
  Proof q;
  for (std::size_t i = 1; i <= p.lines.size(); ++i) {
    if (i == at) q.lines.push_back(line);
    ProofLine l = p.lines[i - 1];
    if (auto* mp = std::get_if<MpJust>(&l.just)) {
      mp->premise = ref_shift(mp->premise, at);
      mp->implication = ref_shift(mp->implication, at);
    } else if (auto* g = std::get_if<GenJust>(&l.just)) {
      g->line = ref_shift(g->line, at);
    } else if (auto* r = std::get_if<RenameJust>(&l.just)) {
      r->line = ref_shift(r->line, at);
    }
    q.lines.push_back(l);
  }
  return q;
}

bool dsl_accepts(const Proof& p) {
  Nat cert = proof_certificate(p);
  Nat goal = compact_encode(desugar(p.lines.back().formula));
  EvalOutcome o = rf_eval(rf_library("proof_of_c"), {cert, goal}, 100000000);
  REQUIRE_FALSE(o.exhausted);
  return o.value == 1;
}

// False under some assignment of 0..2 to the free variables.
bool refuted(const Formula& f) {
  VarSet fv = free_vars(f);
  std::vector<VarIndex> vs(fv.begin(), fv.end());
  std::size_t total = 1;
  for (std::size_t i = 0; i < vs.size(); ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Env env;
    std::size_t c = code;
    for (VarIndex v : vs) {
      env[v] = c % 3;
      c /= 3;
    }
    if (eval_truth(f, env, 6) == TruthVal::False) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("schema instances") {
  CHECK(equal(instantiate(SchemaId::E1, {{"x", var(0)}}), parse_formula("(x0 = x0)")));
  CHECK(equal(instantiate(SchemaId::A2, {{"x", numeral(1)}, {"y", zero()}}),
              parse_formula("((S0 + S0) = S(S0 + 0))")));
  try {
    instantiate(SchemaId::L4, {{"phi", parse_formula("(x0 = 0)")},
                               {"psi", parse_formula("(0 = 0)")},
                               {"x", var(0)}});
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.kind() == SchemaError::Kind::SideConditionViolated);
  }
  try {
    instantiate(SchemaId::A1, {});
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.kind() == SchemaError::Kind::MissingBinding);
  }
  CHECK(schema_from_name("IND") == SchemaId::IND);
  CHECK_FALSE(schema_from_name("X9").has_value());
}

TEST_CASE("corpus proofs are accepted by the checker and by proof_of_c") {
  for (const std::string& name : corpus()) {
    INFO(name);
    Proof p = load(name);
    Report r = check_proof(p);
    CHECK(r.accepted);
    CHECK(dsl_accepts(p));
  }
}

TEST_CASE("mutations are rejected at the expected line") {
  std::istringstream in(slurp(kProofs / "mutations" / "expected.txt"));
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    std::size_t expect = 0;
    ls >> name >> expect;
    INFO(name);
    Proof p = parse_proof(slurp(kProofs / "mutations" / (name + ".paproof")));
    Report r = check_proof(p);
    CHECK_FALSE(r.accepted);
    CHECK(r.line == expect);
    CHECK_FALSE(dsl_accepts(p));
    ++count;
  }
  CHECK(count == 7);
}

TEST_CASE("a wrong conclusion is an MP mismatch") {
  Proof p = load("one_plus_one.paproof");
  p.lines[6].formula = parse_formula("((S0 + S0) = SSS0)");
  Report r = check_proof(p);
  CHECK_FALSE(r.accepted);
  CHECK(r.line == 7);
  CHECK(r.reason == "MP mismatch");
}

TEST_CASE("generalization over any variable") {
  Proof p = parse_proof(
      "1: (0 = 0) ; ax E1 {x:=0}\n"
      "2: Ax7.(0 = 0) ; gen x7 1\n");
  CHECK(check_proof(p).accepted);
}

TEST_CASE("property: prefixes of accepted proofs are accepted") {
  for (const std::string& name : corpus()) {
    Proof p = load(name);
    for (std::size_t n = 1; n <= p.lines.size(); ++n) {
      Proof q;
      q.lines.assign(p.lines.begin(), p.lines.begin() + n);
      CHECK(check_proof(q).accepted);
    }
  }
}

TEST_CASE("property: inserting an accepted line keeps the proof accepted") {
  ProofLine extra{parse_formula("(x3 = x3)"), AxiomJust{SchemaId::E1, {{"x", var(3)}}}};
  for (const std::string& name : corpus()) {
    Proof p = load(name);
    for (std::size_t at = 1; at <= p.lines.size(); ++at) {
      INFO(name << " at " << at);
      CHECK(check_proof(insert_line(p, at, extra)).accepted);
    }
  }
}

TEST_CASE("soundness smoke test: no derived line is false") {
  for (const std::string& name : corpus())
    for (const ProofLine& l : load(name).lines) CHECK_FALSE(refuted(l.formula));
  for (const Formula& f : enumerate_theorems(6)) {
    INFO(render(f));
    CHECK_FALSE(refuted(f));
  }
}

TEST_CASE("proof text round trip") {
  for (const std::string& name : corpus()) {
    Proof p = load(name);
    Proof q = parse_proof(render_proof(p));
    REQUIRE(q.lines.size() == p.lines.size());
    CHECK(render_proof(q) == render_proof(p));
    CHECK(proof_certificate(q) == proof_certificate(p));
  }
  try {
    parse_proof("1: (0 = 0) ; ax E1 {x:=0}\n3: (0 = 0) ; mp 1 1\n");
    FAIL("expected ProofParseError");
  } catch (const ProofParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_proof("1: (0 = 0) ; ax Q9 {}\n"), ProofParseError);
}

TEST_CASE("renaming") {
  Formula f = parse_formula("Ax0.(x0 = x1)");
  CHECK(render(rename_vars(f, {{0, 1}, {1, 0}})) == "Ax1.(x1 = x0)");
  Proof bad = parse_proof(
      "1: (x0 = x0) ; ax E1 {x:=x0}\n"
      "2: (x1 = x1) ; ren 1 {x0:=x1}\n");
  Report r = check_proof(bad);
  CHECK_FALSE(r.accepted);
  CHECK(r.line == 2);
}

TEST_CASE("theorem enumeration is prefix-stable") {
  std::vector<Formula> a = enumerate_theorems(5), b = enumerate_theorems(6);
  REQUIRE(a.size() <= b.size());
  CHECK(!a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(render(a[i]) == render(b[i]));
}
