// Acceptance suite: one PASS/FAIL line per criterion.

#include <sys/resource.h>

#include <CLI11.hpp>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "goedel/compiler.hpp"
#include "goedel/host.hpp"
#include "goedel/metatheory.hpp"
#include "goedel/numbering.hpp"
#include "goedel/proofcheck.hpp"
#include "goedel/recfun.hpp"
#include "goedel/semantics.hpp"
#include "random_ast.hpp"

using namespace goedel;
namespace fs = std::filesystem;

namespace {

struct Context {
  fs::path source;
  std::string cli;
  bool write_golden = false;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures and a count.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  std::size_t checks() const { return checks_; }
  Outcome outcome(std::string summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + ", " + std::to_string(failures_) + " failures: " + notes_};
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string notes_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

long peak_rss_kib() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

Proof load_proof(const fs::path& p) { return parse_proof(slurp(p)); }

// ---- 1 -------------------------------------------------------------------

Outcome proof_corpus(const Context& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  Report main = check_proof(load_proof(ctx.source / "proofs" / "one_plus_one.paproof"));
  t.expect(main.accepted, "one_plus_one rejected");
  std::istringstream in(slurp(ctx.source / "proofs" / "mutations" / "expected.txt"));
  std::string line;
  std::size_t mutations = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    std::size_t expect = 0;
    ls >> name >> expect;
    Report r = check_proof(load_proof(ctx.source / "proofs" / "mutations" / (name + ".paproof")));
    t.expect(!r.accepted && r.line == expect,
             name + " gave line " + std::to_string(r.line) + ", expected " +
                 std::to_string(expect));
    ++mutations;
  }
  t.expect(mutations == 7, "mutation set has " + std::to_string(mutations) + " entries");
  double s = seconds_since(t0);
  t.expect(s < 1.0, "took " + fmt_seconds(s));
  return t.outcome("7-line proof accepted, " + std::to_string(mutations) +
                   " mutations rejected at their lines, " + fmt_seconds(s));
}

// ---- 2 -------------------------------------------------------------------

Outcome codec_round_trips(const Context&) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  testing::AstGen gen(1001);
  gen.kernel_only = true;
  for (int i = 0; i < 10000; ++i) {
    Formula f = gen.formula(1 + i % 8);
    Nat c = compact_encode(f);
    t.expect(equal(decode_formula(GoedelCode{c, CodecId::Compact}), f), "compact " + render(f));
  }
  testing::AstGen small(1002);
  small.kernel_only = true;
  small.big_numerals = false;
  int pp = 0;
  while (pp < 1000) {
    Formula f = small.formula(1 + small.pick(4));
    if (prime_power_tokens(f).size() > 64) continue;
    Nat c = prime_power_encode(f);
    t.expect(equal(decode_formula(GoedelCode{c, CodecId::PrimePower}), f), "pp " + render(f));
    ++pp;
  }
  double s = seconds_since(t0);
  t.expect(s < 60.0, "took " + fmt_seconds(s));
  return t.outcome("10000 compact and 1000 prime-power round trips, " + fmt_seconds(s));
}

// ---- 3 -------------------------------------------------------------------

Outcome beta_suite(const Context&) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(1003);
  std::size_t gcds = 0;
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 1 + rng() % 8;
    std::vector<Nat> ks;
    for (std::size_t i = 0; i < n; ++i) ks.emplace_back(static_cast<unsigned long>(rng() % 51));
    PackedSequence p = crt_pack(ks);
    for (std::size_t i = 1; i <= n; ++i) {
      t.expect(crt_get(p, i) == ks[i - 1], "crt_get");
      for (std::size_t j = i + 1; j <= n; ++j) {
        Nat mi = 1 + i * p.b, mj = 1 + j * p.b, g;
        mpz_gcd(g.get_mpz_t(), mi.get_mpz_t(), mj.get_mpz_t());
        t.expect(g == 1, "moduli not coprime");
        ++gcds;
      }
    }
    Nat code = seq_encode(ks);
    t.expect(beta(code, 0) == n, "length");
    for (std::size_t i = 1; i <= n; ++i) t.expect(beta(code, i) == ks[i - 1], "element");
    for (std::size_t i = 0; i <= n; ++i) t.expect(beta(code, i) < code, "beta(N, i) >= N");
  }
  double s = seconds_since(t0);
  t.expect(s < 10.0, "took " + fmt_seconds(s));
  return t.outcome("200 lists, " + std::to_string(gcds) + " gcd checks, " + fmt_seconds(s));
}

// ---- 4 -------------------------------------------------------------------

Outcome compiler_soundness(const Context&) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const char* name : {"add", "mul", "pow", "mod", "pair", "beta"}) {
    RecDef d = rf_library(name);
    CompiledFormula c = compile(d);
    for (unsigned long a = 0; a <= 8; ++a)
      for (unsigned long b = 0; b <= 8; ++b) {
        EvalOutcome o = rf_eval(d, {a, b}, 100000000);
        std::string where = std::string(name) + "(" + std::to_string(a) + ", " +
                            std::to_string(b) + ")";
        t.expect(!o.exhausted, where + " out of fuel");
        Env env{{c.inputs[0], a}, {c.inputs[1], b}, {c.output, o.value}};
        try {
          t.expect(eval_witnessed(c, env), where + " not witnessed at its value");
          env[c.output] = o.value + 1;
          t.expect(!eval_witnessed(c, env), where + " witnessed at value + 1");
        } catch (const std::exception& e) {
          t.expect(false, where + ": " + e.what());
        }
      }
  }
  double s = seconds_since(t0);
  t.expect(s < 120.0, "took " + fmt_seconds(s));
  return t.outcome("6 programs x 81 tuples, " + std::to_string(t.checks()) + " checks, " +
                   fmt_seconds(s));
}

// ---- 5 -------------------------------------------------------------------

constexpr std::uint64_t kSyntaxFuel = 50000000;
constexpr std::uint64_t kProofFuel = 100000000;

Outcome oracle_triangle(const Context& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  testing::AstGen gen(1005);
  gen.kernel_only = true;
  std::mt19937_64 rng(1006);
  auto run = [&](const char* name, const Nat& n, std::uint64_t fuel) {
    EvalOutcome o = rf_eval(rf_library(name), {n}, fuel);
    t.expect(!o.exhausted, std::string(name) + " out of fuel");
    return o.value;
  };
  for (int i = 0; i < 100; ++i) {
    // a quarter junk, a quarter near misses, half genuine codes
    Nat n;
    switch (i % 4) {
      case 0: n = static_cast<unsigned long>(rng()); break;
      case 1: n = compact_encode(gen.formula(1 + i % 4)) + 1 + rng() % 3; break;
      default: n = compact_encode(gen.formula(1 + i % 4)); break;
    }
    t.expect(run("is_formula_c", n, kSyntaxFuel) == host_is_formula(n), "is_formula_c");
    t.expect(run("not_c", n, kSyntaxFuel) == host_not(n), "not_c");
    t.expect(run("diag_c", n, kSyntaxFuel) == host_diag(n), "diag_c");
  }
  std::vector<fs::path> proofs;
  for (const fs::path& dir : {ctx.source / "proofs", ctx.source / "proofs" / "mutations"})
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".paproof") proofs.push_back(e.path());
  std::size_t checked = 0;
  for (const fs::path& p : proofs) {
    Proof proof = load_proof(p);
    Nat cert, goal;
    try {
      cert = proof_certificate(proof);
      goal = compact_encode(desugar(proof.lines.back().formula));
    } catch (const CodecDomainError&) {
      continue;
    }
    EvalOutcome o = rf_eval(rf_library("proof_of_c"), {cert, goal}, kProofFuel);
    t.expect(!o.exhausted, p.filename().string() + " out of fuel");
    t.expect((o.value == 1) == check_proof(proof).accepted, p.filename().string());
    ++checked;
  }
  double s = seconds_since(t0);
  t.expect(s < 600.0, "took " + fmt_seconds(s));
  return t.outcome("300 syntax program runs, " + std::to_string(checked) +
                   " proofs through proof_of_c, fuel " + std::to_string(kSyntaxFuel) + "/" +
                   std::to_string(kProofFuel) + ", " + fmt_seconds(s));
}

// ---- 6 -------------------------------------------------------------------

Outcome fixed_point(const Context&) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  FixedPointCertificate plain = build_sigma(parse_formula("(x1 = x1)"));
  t.expect(plain.check_passed, "Eq(y, y) check failed");
  t.expect(equal(plain.sigma, substitute(plain.phi_star, 0, numeral(plain.n.value))),
           "sigma differs from phi*[x0 := n]");
  plain = FixedPointCertificate{};

  Provability p = build_provability();
  FixedPointCertificate flag = build_sigma(lnot(p.phi_provable));
  t.expect(flag.check_passed, "flagship check failed");
  double s = seconds_since(t0);
  long rss = peak_rss_kib();
  t.expect(rss < 4L * 1024 * 1024, "peak RSS " + std::to_string(rss) + " KiB");
  t.expect(s < 1800.0, "took " + fmt_seconds(s));
  std::ostringstream os;
  os << "flagship sigma " << flag.sigma_stats.node_count << " nodes, depth "
     << flag.sigma_stats.depth << ", " << flag.sigma_stats.quantifier_count
     << " quantifiers, code " << flag.sigma_code_bits << " bits, peak RSS " << rss / 1024
     << " MiB, " << fmt_seconds(s);
  return t.outcome(os.str());
}

// ---- 7 -------------------------------------------------------------------

// chi in !Ay.!(A & chi)
const Formula& tail_conjunct(const Formula& s) { return s->a->a->a->b; }

Outcome liars(const Context&) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::vector<Formula> phis{parse_formula("(x1 = x1)"), parse_formula("!(x1 = 0)"),
                            parse_formula("(x1 < SS0)")};
  for (const Formula& phi : phis) {
    LiarPair l = build_liar2(phi);
    t.expect(l.check_sigma, "liar2 R(n) for " + render(phi));
    t.expect(l.check_tau, "liar2 R(m) for " + render(phi));
  }
  Formula psi = parse_formula("(x1 = x1)");
  for (std::size_t k : {1, 2, 3, 5}) {
    LiarCycle c = build_liark(std::vector<Formula>(k, psi), successor_map(k));
    t.expect(c.all_passed(), "liark k=" + std::to_string(k));
  }
  // k = 1: f(1) = 1 and GD(n_1) is the code of sigma_1 itself
  LiarCycle one = build_liark({psi}, {1});
  t.expect(one.all_passed() && gd_GD(one.n[0], one.psi_y, one.f) == one.sigma_code[0],
           "k=1 is not a fixed point");
  // k = 2 with (phi, !phi) against the reversal pair on the same phi
  Formula phi = phis[0];
  LiarPair pair2 = build_liar2(phi);
  LiarCycle two = build_liark({phi, lnot(phi)}, successor_map(2));
  t.expect(two.all_passed(), "k=2 cycle on (phi, !phi)");
  t.expect(two.y == pair2.y, "k=2 and liar2 bind different variables");
  t.expect(equal(tail_conjunct(two.sigma[0]), tail_conjunct(pair2.sigma)) &&
               equal(tail_conjunct(two.sigma[1]), tail_conjunct(pair2.tau)),
           "k=2 sentences say something other than the liar2 pair");
  t.expect(gd_GD(two.n[0], two.psi_y, two.f) == two.sigma_code[1] &&
               gd_GD(two.n[1], two.psi_y, two.f) == two.sigma_code[0],
           "k=2 references are not crossed");
  double s = seconds_since(t0);
  return t.outcome("liar2 on 3 formulas, liark k in {1, 2, 3, 5}, " + fmt_seconds(s));
}

// ---- 8 -------------------------------------------------------------------

Outcome kripke(const Context&) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  testing::AstGen gen(1008);
  gen.kernel_only = true;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(1 + i % 6);
    Nat c = star_encode(f);
    t.expect(mpz_odd_p(c.get_mpz_t()) && c == star_regular(f), "regular code not odd");
    t.expect(equal(star_decode(c), f), "star round trip " + render(f));
  }
  for (std::size_t i = 1; i <= 25; ++i) {
    KripkeSentence s = kripke_build(i);
    t.expect(s.even && s.round_trip && s.self_reference, "index " + std::to_string(i));
  }
  return t.outcome("1000 parity checks, indices 1..25, " + fmt_seconds(seconds_since(t0)));
}

// ---- 9 -------------------------------------------------------------------

bool definite(TruthVal v) { return v != TruthVal::Unknown; }

Outcome evaluator_coherence(const Context&) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  testing::AstGen gen(1009);
  gen.max_var = 2;
  gen.big_numerals = false;
  const std::array<std::uint64_t, 3> budgets{2, 5, 9};
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(1 + i % 4);
    Env env{{0, Nat(i % 3)}, {1, Nat(i % 5)}, {2, Nat(i % 2)}};
    TruthVal prev = TruthVal::Unknown;
    for (std::uint64_t b : budgets) {
      TruthVal v = eval_truth(f, env, b);
      t.expect(eval_truth(lnot(f), env, b) == tv_not(v), "negation " + render(f));
      if (definite(prev)) t.expect(v == prev, "monotonicity " + render(f));
      if (definite(v)) prev = v;
      TruthVal d = eval_truth(desugar(f), env, b);
      if (definite(v) && definite(d)) t.expect(v == d, "desugar " + render(f));
    }
  }
  t.expect(eval_truth(parse_formula("((S0 + S0) = SS0)"), {}, 100) == TruthVal::True,
           "1 + 1 = 2 not True");
  t.expect(eval_truth(parse_formula("((S0 + S0) > SSS0)"), {}, 100) == TruthVal::False,
           "1 + 1 > 3 not False");
  return t.outcome("1000 formulas x 3 budgets, both examples, " +
                   fmt_seconds(seconds_since(t0)));
}

// ---- 10 ------------------------------------------------------------------

std::string run_cli(const Context& ctx, const std::string& args) {
  std::string cmd = "cd '" + ctx.source.string() + "' && '" + ctx.cli + "' " + args +
                    " 2>&1; echo \"exit $?\"";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "popen failed\n";
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Outcome cli_determinism(const Context& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  if (ctx.cli.empty()) return {false, "no CLI path given"};
  fs::path dir = ctx.source / "tests" / "golden";
  std::istringstream in(slurp(dir / "commands.txt"));
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    std::string name = trim(line.substr(0, bar)), args = trim(line.substr(bar + 1));
    std::string a = run_cli(ctx, args), b = run_cli(ctx, args);
    fs::path golden = dir / (name + ".out");
    if (ctx.write_golden) std::ofstream(golden, std::ios::binary) << a;
    t.expect(a == b, name + " differs between runs");
    t.expect(fs::exists(golden) && slurp(golden) == a, name + " differs from golden file");
    ++count;
  }
  t.expect(count > 0, "no golden commands");
  return t.outcome(std::to_string(count) + " commands run twice and matched, " +
                   fmt_seconds(seconds_since(t0)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Context ctx;
  std::string source = GOEDEL_SOURCE_DIR;
  std::vector<int> only;
  app.add_option("--cli", ctx.cli, "Path to the goedel executable");
  app.add_option("--source", source, "Source tree holding proofs/ and tests/golden/");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_flag("--write-golden", ctx.write_golden, "Rewrite tests/golden/*.out");
  CLI11_PARSE(app, argc, argv);
  ctx.source = source;

  const std::vector<std::pair<const char*, std::function<Outcome(const Context&)>>> criteria{
      {"proof corpus", proof_corpus},
      {"codec round trips", codec_round_trips},
      {"beta lemma", beta_suite},
      {"compiler soundness", compiler_soundness},
      {"oracle/DSL/host triangle", oracle_triangle},
      {"fixed point", fixed_point},
      {"liar constructions", liars},
      {"Kripke star codec", kripke},
      {"evaluator coherence", evaluator_coherence},
      {"CLI determinism", cli_determinism},
  };
  std::set<int> wanted(only.begin(), only.end());
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i + 1);
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
