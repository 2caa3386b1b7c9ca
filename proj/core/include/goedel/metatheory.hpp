#pragma once

// Self-reference constructions with executable checks: diagonalization and
// the fixed point, provability and Rosser predicates, the two-sentence and
// k-sentence liars, and the direct self-reference star coding.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/compiler.hpp"
#include "goedel/numbering.hpp"
#include "goedel/proofcheck.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

class FreshVariableUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificateInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// D(n): 0 unless n codes a formula, else the code of that formula with the
/// numeral n substituted for x0.
Nat diag_D(const Nat& n, CodecId codec);

/// The single free variable of phi; throws std::invalid_argument otherwise.
VarIndex designated_var(const Formula& phi);

/// A variable above every variable of the given formulas (at least 1).
VarIndex fresh_above(const std::vector<Formula>& fs);

struct FixedPointCertificate {
  Formula phi;
  VarIndex y = 0;      // bound variable joining phi_DIAG and phi
  Formula phi_star;    // Ey.(phi_DIAG(x0, y) & phi(y))
  GoedelCode n;        // code of phi_star
  Formula sigma;       // decoded from D(n)
  Nat sigma_code;      // D(n)
  bool check_passed = false;
  FormulaStats phi_star_stats;
  FormulaStats sigma_stats;
  std::size_t sigma_code_bits = 0;
};

FixedPointCertificate build_sigma(const Formula& phi, CodecId codec = CodecId::Compact);

/// A boolean program compiled as Ex_out.(C & x_out = S0), with the output
/// witness planned.
CompiledFormula compile_predicate(const RecDef& d, const std::vector<VarIndex>& inputs,
                                  VarIndex output, VarIndex next_free);

struct Provability {
  CompiledFormula phi_formula;   // x1 codes a formula
  CompiledFormula phi_proof_of;  // x1 codes a proof of the formula coded by x2
  Formula phi_provable;          // Ex1. phi_proof_of, free in x2, no plan for x1
  VarIndex provable_var = 2;
};

Provability build_provability();

struct Rosser {
  Formula phi_proof_of_R;  // free in m = x1, n = x2
  Formula phi_provable_R;  // free in x2
  VarIndex k = 0, l = 0;   // the counter-proof and negation variables
};

/// phi_PROOF-OF(m, n) & !Ek.(k < Sm & El.(l = 6 + 256 n & phi_PROOF-OF(k, l))).
Rosser build_rosser(const Provability& p);

/// Counts the copies of phi_proof_of (up to the renaming of its two inputs)
/// among the conjuncts of a Rosser formula.
std::size_t rosser_copies(const Rosser& r, const Provability& p);

/// The meta-level reversal map R on compact codes.
Nat reversal_R(const Nat& n);

struct LiarPair {
  Formula phi;
  VarIndex y = 0;
  bool negated_phi = false;  // phi = !phi', so tau uses phi'
  Nat n, m;
  Formula sigma, tau;
  Nat sigma_code, tau_code;
  bool check_sigma = false;  // R(n) = code(tau)
  bool check_tau = false;    // R(m) = code(sigma)
};

LiarPair build_liar2(const Formula& phi);

/// GD on pair(F, i) for the table psi(y) and the 1-based map f.
Nat gd_GD(const Nat& n, const std::vector<Formula>& psi_y, const std::vector<std::size_t>& f);

struct LiarCycle {
  std::vector<Formula> psi;
  std::vector<std::size_t> f;  // 1-based
  VarIndex y = 0;
  std::vector<Formula> psi_y;  // psi_i with y substituted
  std::vector<Nat> n;          // pair(code of Ey.(phi_GD(x0, y) & psi_i(y)), i)
  std::vector<Formula> sigma;
  std::vector<Nat> sigma_code;
  std::vector<bool> checks;    // GD(n_i) = code(sigma_f(i))
  bool all_passed() const;
};

LiarCycle build_liark(const std::vector<Formula>& psi, const std::vector<std::size_t>& f);

/// f(i) = i + 1 mod k on 1..k.
std::vector<std::size_t> successor_map(std::size_t k);

struct KripkeSentence {
  std::size_t index = 0;
  Formula a;           // A_index(x0)
  Nat k;               // regular star code of Ex0.(x0 = #index & A)
  Formula sentence;    // Ex0.(x0 = #2k & A)
  Nat star_code;       // 2k
  bool even = false;
  bool round_trip = false;      // star_decode(star_code) == sentence
  bool self_reference = false;  // the numeral inside equals star_code
};

KripkeSentence kripke_build(std::size_t idx);

/// Conditional statements about the certificate's sigma.  An alleged proof,
/// when supplied, is checked and reported on.
std::string incompleteness_case_analysis(const FixedPointCertificate& cert,
                                         const std::optional<Proof>& alleged = std::nullopt);

}  // namespace goedel
