// goedel: command-line front end over the core library.
//
// Exit codes: 0 success, 1 usage, 2 parse or decode error, 3 check failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "goedel/compiler.hpp"
#include "goedel/metatheory.hpp"
#include "goedel/numbering.hpp"
#include "goedel/proofcheck.hpp"
#include "goedel/recfun.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"

using namespace goedel;

namespace {

constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kCheck = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_verbose = false;

void log(const std::string& s) {
  if (g_verbose) std::cerr << s << '\n';
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Formula files may carry '#' comment lines; the rest is one formula.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    out += line;
    out += ' ';
  }
  return out;
}

Formula formula_from_file(const std::string& path) {
  return parse_formula(strip_comments(slurp(path)));
}

CodecId codec_from(const std::string& s) {
  if (s == "pp") return CodecId::PrimePower;
  if (s == "compact") return CodecId::Compact;
  if (s == "star") return CodecId::Star;
  throw CLI::ValidationError("--codec", "expected pp, compact or star");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << v;
  return o.str();
}

constexpr std::size_t kInlineLimit = 4096;

std::string digest(const std::string& s) {
  std::string head = s.substr(0, 20), tail = s.size() > 40 ? s.substr(s.size() - 20) : "";
  return head + "..." + tail + " (" + std::to_string(s.size()) + " chars, fnv1a " +
         hex64(fnv1a(s)) + ")";
}

std::string show_nat(const Nat& n) { return nat_digest(n); }

std::string show_formula(const Formula& f) {
  std::string s = render(f);
  return s.size() <= kInlineLimit ? s : digest(s);
}

std::string show_stats(const FormulaStats& s) {
  return std::to_string(s.node_count) + " nodes, depth " + std::to_string(s.depth) + ", " +
         std::to_string(s.quantifier_count) + " quantifiers";
}

// Writes `text` to `path` (when given) and returns the line to print.
void emit(std::ostream& os, const std::string& label, const std::string& text,
          const std::optional<std::string>& path) {
  if (path) {
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw InputError("cannot write " + *path);
    out << text << '\n';
    os << label << ": written to " << *path << ", " << digest(text) << '\n';
  } else if (text.size() <= kInlineLimit) {
    os << label << ": " << text << '\n';
  } else {
    os << label << ": " << digest(text) << '\n';
  }
}

Env parse_env(const std::string& spec) {
  Env env;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eqpos = item.find('=');
    if (item.size() < 2 || item[0] != 'x' || eqpos == std::string::npos)
      throw InputError("bad --env entry '" + item + "', expected xN=VALUE");
    VarIndex v = static_cast<VarIndex>(std::stoul(item.substr(1, eqpos - 1)));
    env[v] = Nat(item.substr(eqpos + 1));
  }
  return env;
}

std::vector<Nat> parse_nats(const std::vector<std::string>& args) {
  std::vector<Nat> out;
  for (const std::string& a : args) {
    if (a.empty() || a.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("not a natural number: " + a);
    out.emplace_back(a);
  }
  return out;
}

std::vector<std::size_t> parse_map(const std::string& s) {
  std::vector<std::size_t> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoul(item));
  return out;
}

RecDef def_from(const std::string& text) {
  if (text.rfind("@", 0) == 0) return rf_parse(slurp(text.substr(1)));
  return rf_parse(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goedel numbering, arithmetization and self-reference toolkit"};
  app.require_subcommand(1);
  app.add_flag("--verbose", g_verbose, "Log progress to stderr");

  std::string codec_s = "compact";
  std::optional<std::string> out_path;
  auto codec_opt = [&](CLI::App* c) {
    c->add_option("--codec", codec_s, "pp, compact or star")
        ->check(CLI::IsMember({"pp", "compact", "star"}));
  };
  auto out_opt = [&](CLI::App* c) { c->add_option("--out", out_path, "Write large output here"); };

  int rc = 0;

  std::string text, file;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a term or formula and print it canonically");
  parse_cmd->add_option("text", text)->required();

  auto* fmt_cmd = app.add_subcommand("fmt", "Canonicalize a file of formulas, one per line");
  fmt_cmd->add_option("file", file)->required();

  auto* enc_cmd = app.add_subcommand("encode", "Goedel number of a term or formula");
  enc_cmd->add_option("text", text)->required();
  codec_opt(enc_cmd);

  std::string number;
  auto* dec_cmd = app.add_subcommand("decode", "Term or formula of a Goedel number");
  dec_cmd->add_option("number", number)->required();
  codec_opt(dec_cmd);

  bool dsl = false, cert = false;
  std::uint64_t fuel = 100000000;
  auto* check_cmd = app.add_subcommand("check", "Check a proof file");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_flag("--dsl", dsl, "Also run proof_of_c on the certificate");
  check_cmd->add_flag("--certificate", cert, "Print the certificate code");
  check_cmd->add_option("--fuel", fuel, "Fuel for --dsl");

  std::string def;
  std::vector<std::string> args;
  bool no_kernels = false;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a recursive-function definition");
  run_cmd->add_option("def", def, "Library name, s-expression, or @file")->required();
  run_cmd->add_option("args", args);
  run_cmd->add_option("--fuel", fuel);
  run_cmd->add_flag("--no-kernels", no_kernels, "Interpret every node");

  std::optional<std::string> plan_path;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a definition into a PA formula");
  compile_cmd->add_option("def", def)->required();
  compile_cmd->add_option("--plan", plan_path, "Write the witness-plan sidecar here");
  out_opt(compile_cmd);

  std::uint64_t budget = 100;
  std::string env_s;
  std::optional<std::string> witnessed_def;
  auto* eval_cmd = app.add_subcommand("eval", "Truth value of a formula in the standard model");
  eval_cmd->add_option("formula", text)->required();
  eval_cmd->add_option("--budget", budget);
  eval_cmd->add_option("--env", env_s, "x0=3,x1=4,...");

  std::string phi_path;
  std::optional<std::string> proof_path;
  bool case_analysis = false;
  auto* diag_cmd = app.add_subcommand("diagonalize", "Fixed point of a one-variable formula");
  diag_cmd->add_option("--phi", phi_path, "Formula file")->required();
  diag_cmd->add_flag("--case-analysis", case_analysis, "Print the incompleteness case analysis");
  diag_cmd->add_option("--proof", proof_path, "Alleged proof to report on");
  codec_opt(diag_cmd);
  out_opt(diag_cmd);

  bool flagship = false;
  auto* rosser_cmd = app.add_subcommand("rosser", "Build the Rosser provability predicate");
  rosser_cmd->add_flag("--flagship", flagship, "Also diagonalize the negated Rosser predicate");
  out_opt(rosser_cmd);

  auto* liar2_cmd = app.add_subcommand("liar2", "Two-sentence liar pair via code reversal");
  liar2_cmd->add_option("--phi", phi_path, "Formula file")->required();
  out_opt(liar2_cmd);

  std::size_t k = 2;
  std::string map_s;
  std::optional<std::string> psi_path;
  auto* liark_cmd = app.add_subcommand("liark", "Cycle of k mutually referring sentences");
  liark_cmd->add_option("--k", k)->check(CLI::Range(1, 64));
  liark_cmd->add_option("--map", map_s, "1-based f, e.g. 2,3,1 (default i+1 mod k)");
  liark_cmd->add_option("--psi", psi_path, "Formula file used for every psi_i");
  out_opt(liark_cmd);

  std::size_t index = 1;
  auto* kripke_cmd = app.add_subcommand("kripke", "Direct self-reference by star coding");
  kripke_cmd->add_option("--index", index)->check(CLI::Range(1, 100000));

  std::size_t count = 10, start = 1;
  auto* svf_cmd = app.add_subcommand("enum-svf", "Kernel formulas free in exactly x0");
  svf_cmd->add_option("--count", count);
  svf_cmd->add_option("--start", start)->check(CLI::Range(1, 1000000));

  auto* thm_cmd = app.add_subcommand("enum-theorems", "Theorems by derivation cost");
  thm_cmd->add_option("--budget", budget)->check(CLI::Range(1, 12));

  auto* stats_cmd = app.add_subcommand("stats", "Size statistics of a formula");
  stats_cmd->add_option("formula", text);
  stats_cmd->add_option("--file", file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  std::ostream& os = std::cout;
  try {
    if (*parse_cmd) {
      os << render(parse(text)) << '\n';
    } else if (*fmt_cmd) {
      std::istringstream in(slurp(file));
      std::string line;
      while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        os << render(parse(line)) << '\n';
      }
    } else if (*enc_cmd) {
      os << encode(parse(text), codec_from(codec_s)).value.get_str() << '\n';
    } else if (*dec_cmd) {
      os << render(decode(GoedelCode{parse_nats({number})[0], codec_from(codec_s)})) << '\n';
    } else if (*check_cmd) {
      Proof p = parse_proof(slurp(file));
      Report r = check_proof(p);
      if (r.accepted) os << "ACCEPTED " << p.lines.size() << " lines\n";
      else os << "REJECTED at line " << r.line << ": " << r.reason << '\n';
      if (!r.accepted) rc = kCheck;
      if (cert || dsl) {
        Nat c = proof_certificate(p);
        if (cert) os << "certificate: " << show_nat(c) << '\n';
        if (dsl) {
          const Formula& last = p.lines.back().formula;
          EvalOutcome o = rf_eval(rf_library("proof_of_c"), {c, compact_encode(desugar(last))}, fuel);
          if (o.exhausted) {
            os << "proof_of_c: out of fuel\n";
            rc = kCheck;
          } else {
            os << "proof_of_c: " << o.value.get_str() << " (fuel " << o.fuel_used << ")\n";
            if ((o.value == 1) != r.accepted) rc = kCheck;
          }
        }
      }
    } else if (*run_cmd) {
      EvalOutcome o = rf_eval(def_from(def), parse_nats(args), fuel, EvalOptions{!no_kernels});
      if (o.exhausted) {
        os << "EXHAUSTED after " << o.fuel_used << " steps\n";
        rc = kCheck;
      } else {
        os << show_nat(o.value) << '\n';
        log("fuel used " + std::to_string(o.fuel_used));
      }
    } else if (*compile_cmd) {
      CompiledFormula c = compile(def_from(def));
      emit(os, "formula", render(c.formula), out_path);
      os << "stats: " << show_stats(c.stats) << '\n';
      std::string inputs;
      for (VarIndex v : c.inputs) inputs += " x" + std::to_string(v);
      os << "inputs:" << inputs << "\noutput: x" << c.output << '\n';
      if (plan_path) {
        std::ofstream pf(*plan_path, std::ios::binary);
        if (!pf) throw InputError("cannot write " + *plan_path);
        std::string side = plan_sidecar(c);
        pf << side;
        os << "plan: written to " << *plan_path << ", " << c.plan.quantifiers.size()
           << " quantifiers, fnv1a " << hex64(fnv1a(side)) << '\n';
      }
    } else if (*eval_cmd) {
      os << truth_name(eval_truth(parse_formula(text), parse_env(env_s), budget)) << '\n';
    } else if (*diag_cmd) {
      Formula phi = formula_from_file(phi_path);
      log("diagonalizing " + render(phi));
      FixedPointCertificate c = build_sigma(phi, codec_from(codec_s));
      os << "phi: " << show_formula(c.phi) << '\n';
      os << "y: x" << c.y << '\n';
      os << "phi*: " << show_stats(c.phi_star_stats) << '\n';
      os << "n: " << show_nat(c.n.value) << '\n';
      emit(os, "sigma", render(c.sigma), out_path);
      os << "sigma stats: " << show_stats(c.sigma_stats) << ", code " << c.sigma_code_bits
         << " bits\n";
      if (case_analysis) {
        std::optional<Proof> alleged;
        if (proof_path) alleged = parse_proof(slurp(*proof_path));
        os << incompleteness_case_analysis(c, alleged);
      }
      os << "FIXED-POINT CHECK: " << (c.check_passed ? "PASS" : "FAIL") << '\n';
      if (!c.check_passed) rc = kCheck;
    } else if (*rosser_cmd) {
      Provability p = build_provability();
      Rosser r = build_rosser(p);
      std::size_t copies = rosser_copies(r, p);
      os << "proof_of: " << show_stats(p.phi_proof_of.stats) << '\n';
      os << "provable: " << show_stats(formula_stats(p.phi_provable)) << '\n';
      os << "proof_of_R: " << show_stats(formula_stats(r.phi_proof_of_R)) << '\n';
      os << "provable_R: " << show_stats(formula_stats(r.phi_provable_R)) << '\n';
      os << "k: x" << r.k << "\nl: x" << r.l << '\n';
      os << "proof_of copies: " << copies << '\n';
      if (copies != 2) rc = kCheck;
      if (flagship) {
        FixedPointCertificate c = build_sigma(lnot(r.phi_provable_R));
        emit(os, "sigma", render(c.sigma), out_path);
        os << "sigma stats: " << show_stats(c.sigma_stats) << ", code " << c.sigma_code_bits
           << " bits\n";
        os << "FIXED-POINT CHECK: " << (c.check_passed ? "PASS" : "FAIL") << '\n';
        if (!c.check_passed) rc = kCheck;
      }
    } else if (*liar2_cmd) {
      LiarPair l = build_liar2(formula_from_file(phi_path));
      os << "phi: " << show_formula(l.phi) << '\n';
      os << "negated phi: " << (l.negated_phi ? "yes" : "no") << '\n';
      os << "n: " << show_nat(l.n) << "\nm: " << show_nat(l.m) << '\n';
      std::string both = render(l.sigma) + "\n" + render(l.tau);
      emit(os, "sigma/tau", both, out_path);
      os << "sigma code: " << show_nat(l.sigma_code) << "\ntau code: " << show_nat(l.tau_code)
         << '\n';
      os << "R(n) = code(tau): " << (l.check_sigma ? "PASS" : "FAIL") << '\n';
      os << "R(m) = code(sigma): " << (l.check_tau ? "PASS" : "FAIL") << '\n';
      if (!(l.check_sigma && l.check_tau)) rc = kCheck;
    } else if (*liark_cmd) {
      Formula psi = psi_path ? formula_from_file(*psi_path) : parse_formula("!(x1 = x1)");
      std::vector<std::size_t> f = map_s.empty() ? successor_map(k) : parse_map(map_s);
      if (f.size() != k) throw InputError("--map needs exactly k entries");
      LiarCycle cyc = build_liark(std::vector<Formula>(k, psi), f);
      std::string all;
      for (std::size_t i = 0; i < k; ++i) {
        os << "n" << i + 1 << ": " << show_nat(cyc.n[i]) << '\n';
        os << "sigma" << i + 1 << " -> sigma" << f[i] << ": " << (cyc.checks[i] ? "PASS" : "FAIL")
           << '\n';
        all += render(cyc.sigma[i]) + "\n";
      }
      emit(os, "sentences", all, out_path);
      os << "CYCLE CHECK: " << (cyc.all_passed() ? "PASS" : "FAIL") << '\n';
      if (!cyc.all_passed()) rc = kCheck;
    } else if (*kripke_cmd) {
      KripkeSentence s = kripke_build(index);
      os << "A: " << render(s.a) << '\n';
      os << "k: " << show_nat(s.k) << '\n';
      os << "sentence: " << show_formula(s.sentence) << '\n';
      os << "star code: " << show_nat(s.star_code) << '\n';
      os << "even: " << (s.even ? "yes" : "no") << '\n';
      os << "round trip: " << (s.round_trip ? "PASS" : "FAIL") << '\n';
      os << "self reference: " << (s.self_reference ? "PASS" : "FAIL") << '\n';
      if (!(s.even && s.round_trip && s.self_reference)) rc = kCheck;
    } else if (*svf_cmd) {
      for (std::size_t i = start; i < start + count; ++i)
        os << i << ": " << render(enumerate_svf(i)) << '\n';
    } else if (*thm_cmd) {
      std::size_t i = 0;
      for (const Formula& f : enumerate_theorems(budget)) os << ++i << ": " << render(f) << '\n';
    } else if (*stats_cmd) {
      if (text.empty() == file.empty()) throw InputError("give a formula or --file");
      Formula f = file.empty() ? parse_formula(text) : formula_from_file(file);
      Formula k = desugar(f);
      os << "surface: " << show_stats(formula_stats(f)) << '\n';
      os << "kernel: " << show_stats(formula_stats(k)) << '\n';
      os << "free:";
      for (VarIndex v : free_vars(f)) os << " x" << v;
      os << "\ncompact bytes: " << compact_length(compact_encode(k)) << '\n';
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const RecParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ProofParseError& e) {
    std::cerr << "proof parse error: " << e.what() << '\n';
    return kParse;
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << '\n';
    return kParse;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const UnknownName& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const UncoveredVariable& e) {
    std::cerr << "error: " << e.what() << " (use --env)\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kCheck;
  }
  return rc;
}
