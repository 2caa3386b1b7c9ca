#include "goedel/numbering.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>

namespace goedel {

const char* codec_name(CodecId c) {
  switch (c) {
    case CodecId::PrimePower: return "prime-power";
    case CodecId::Compact: return "compact";
    case CodecId::Star: return "star";
  }
  return "?";
}

DecodeError::DecodeError(DecodeFailure kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

namespace {

[[noreturn]] void not_in_image(const std::string& why) {
  throw DecodeError(DecodeFailure::NotInImage, "not in image: " + why);
}

[[noreturn]] void not_a_formula(const std::string& why) {
  throw DecodeError(DecodeFailure::NotAFormula, "not a formula: " + why);
}

Nat import_le(const std::vector<std::uint8_t>& bytes) {
  Nat r;
  if (!bytes.empty())
    mpz_import(r.get_mpz_t(), bytes.size(), -1, 1, 0, 0, bytes.data());
  return r;
}

std::vector<std::uint8_t> export_le(const Nat& n) {
  std::size_t count = (mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8;
  std::vector<std::uint8_t> out(count);
  if (n != 0) mpz_export(out.data(), &count, -1, 1, 0, 0, n.get_mpz_t());
  out.resize(n == 0 ? 0 : count);
  return out;
}

// ---- compact writer ----

void put_term(std::vector<std::uint8_t>& out, const Term& t) {
  const TermNode* n = t.get();
  while (n->kind == TermKind::Succ) {
    out.push_back(tok::Succ);
    n = n->lhs.get();
  }
  switch (n->kind) {
    case TermKind::Numeral:
      if (n->value <= kNumeralExpandLimit) {
        out.insert(out.end(), n->value.get_ui(), tok::Succ);
        out.push_back(tok::Zero);
      } else {
        out.push_back(tok::NumMark);
        append_varint(out, n->value);
      }
      return;
    case TermKind::Var:
      out.push_back(tok::VarMark);
      append_varint(out, Nat(static_cast<unsigned long>(n->var)));
      return;
    case TermKind::Plus:
    case TermKind::Times:
      out.push_back(tok::LParen);
      put_term(out, n->lhs);
      out.push_back(n->kind == TermKind::Plus ? tok::Plus : tok::Times);
      put_term(out, n->rhs);
      out.push_back(tok::RParen);
      return;
    case TermKind::Succ: break;
  }
}

void put_formula(std::vector<std::uint8_t>& out, const Formula& f) {
  const FormulaNode* n = f.get();
  for (;;) {
    if (n->kind == FormulaKind::Not) {
      out.push_back(tok::Not);
    } else if (n->kind == FormulaKind::Forall) {
      out.push_back(tok::Forall);
      out.push_back(tok::VarMark);
      append_varint(out, Nat(static_cast<unsigned long>(n->var)));
    } else {
      break;
    }
    n = n->a.get();
  }
  auto binary = [&](auto emit_l, unsigned op, auto emit_r) {
    out.push_back(tok::LParen);
    emit_l();
    out.push_back(static_cast<std::uint8_t>(op));
    emit_r();
    out.push_back(tok::RParen);
  };
  switch (n->kind) {
    case FormulaKind::Eq:
      binary([&] { put_term(out, n->s); }, tok::Eq, [&] { put_term(out, n->t); });
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp: {
      unsigned op = n->kind == FormulaKind::And  ? tok::And
                    : n->kind == FormulaKind::Or ? tok::Or
                                                 : tok::Imp;
      binary([&] { put_formula(out, n->a); }, op, [&] { put_formula(out, n->b); });
      return;
    }
    default:
      throw CodecDomainError("compact codec needs a kernel formula; desugar first");
  }
}

// ---- compact reader ----

class CompactReader {
 public:
  explicit CompactReader(std::vector<std::uint8_t> bytes) : b_(std::move(bytes)) {}

  Node read_top() {
    if (pos_ >= b_.size()) not_a_formula("empty token stream");
    Node n = any();
    if (pos_ != b_.size()) not_a_formula("trailing tokens at byte " + std::to_string(pos_));
    return n;
  }

  // Lex-level validation before parsing, so NotInImage wins over NotAFormula.
  void lex_check() const {
    std::size_t i = 0;
    while (i < b_.size()) {
      std::uint8_t c = b_[i++];
      if (c == 0 || c > tok::NumMark) not_in_image("byte " + std::to_string(c));
      if (c == tok::VarMark || c == tok::NumMark) {
        std::size_t start = i;
        while (i < b_.size() && (b_[i] & 0x80)) ++i;
        if (i >= b_.size()) not_in_image("truncated varint");
        ++i;
        std::size_t len = i - start;
        if (len > 1 && b_[i - 1] == 0) not_in_image("non-canonical varint");
        if (c == tok::VarMark && len > 9) not_in_image("variable index too large");
        if (c == tok::NumMark && len < 3) not_in_image("short numeral payload");
      }
    }
  }

 private:
  std::vector<std::uint8_t> b_;
  std::size_t pos_ = 0;

  std::uint8_t peek() const {
    if (pos_ >= b_.size()) not_a_formula("unexpected end");
    return b_[pos_];
  }

  Nat varint() {
    // regroup 7-bit payloads into bytes; linear in the varint length
    std::vector<std::uint8_t> bytes;
    unsigned acc = 0, bits = 0;
    for (;;) {
      std::uint8_t c = b_[pos_++];
      acc |= static_cast<unsigned>(c & 0x7f) << bits;
      bits += 7;
      while (bits >= 8) {
        bytes.push_back(static_cast<std::uint8_t>(acc & 0xff));
        acc >>= 8;
        bits -= 8;
      }
      if (!(c & 0x80)) break;
    }
    if (bits) bytes.push_back(static_cast<std::uint8_t>(acc));
    return import_le(bytes);
  }

  VarIndex var_after_mark() {
    Nat v = varint();
    if (!v.fits_ulong_p()) not_in_image("variable index too large");
    return v.get_ui();
  }

  Term term() {
    Node n = any();
    if (auto* t = std::get_if<Term>(&n)) return *t;
    not_a_formula("expected a term at byte " + std::to_string(pos_));
  }

  Formula formula() {
    Node n = any();
    if (auto* f = std::get_if<Formula>(&n)) return *f;
    not_a_formula("expected a formula at byte " + std::to_string(pos_));
  }

  Node any() {
    std::size_t succs = 0;
    while (peek() == tok::Succ) {
      ++succs;
      ++pos_;
    }
    if (succs > 0) {
      Term t = term();
      for (std::size_t i = 0; i < succs; ++i) t = succ(t);
      return t;
    }
    std::vector<std::pair<bool, VarIndex>> prefix;  // (is_forall, var)
    for (;;) {
      std::uint8_t c = peek();
      if (c == tok::Not) {
        ++pos_;
        prefix.emplace_back(false, 0);
      } else if (c == tok::Forall) {
        ++pos_;
        if (peek() != tok::VarMark) not_a_formula("quantifier without variable");
        ++pos_;
        prefix.emplace_back(true, var_after_mark());
      } else {
        break;
      }
    }
    if (!prefix.empty()) {
      Formula f = formula();
      for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
        f = it->first ? forall(it->second, f) : lnot(f);
      return f;
    }
    std::uint8_t c = b_[pos_++];
    switch (c) {
      case tok::Zero: return zero();
      case tok::VarMark: return var(var_after_mark());
      case tok::NumMark: return numeral(varint());
      case tok::LParen: {
        Node l = any();
        std::uint8_t op = peek();
        ++pos_;
        Node r = any();
        if (peek() != tok::RParen) not_a_formula("expected ')'");
        ++pos_;
        bool lt = std::holds_alternative<Term>(l), rt = std::holds_alternative<Term>(r);
        switch (op) {
          case tok::Plus:
          case tok::Times:
          case tok::Eq:
            if (!lt || !rt) not_a_formula("operator needs terms");
            if (op == tok::Plus) return plus(std::get<Term>(l), std::get<Term>(r));
            if (op == tok::Times) return times(std::get<Term>(l), std::get<Term>(r));
            return eq(std::get<Term>(l), std::get<Term>(r));
          case tok::And:
          case tok::Or:
          case tok::Imp: {
            if (lt || rt) not_a_formula("connective needs formulas");
            Formula a = std::get<Formula>(l), b = std::get<Formula>(r);
            if (op == tok::And) return land(a, b);
            if (op == tok::Or) return lor(a, b);
            return imp(a, b);
          }
          default: not_a_formula("expected an operator");
        }
      }
      default: not_a_formula("unexpected token " + std::to_string(c));
    }
  }
};

// ---- primes ----

struct PrimeCache {
  std::mutex mu;
  std::vector<unsigned long> primes;
  unsigned long limit = 1;

  void grow_to(unsigned long new_limit) {
    std::vector<bool> composite(new_limit + 1, false);
    primes.clear();
    for (unsigned long i = 2; i <= new_limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (unsigned long j = i * i; j <= new_limit; j += i) composite[j] = true;
    }
    limit = new_limit;
  }
};

PrimeCache& prime_cache() {
  static PrimeCache c;
  return c;
}

constexpr unsigned long kPrimeIndexLimit = 200000000;

// ---- prime-power tokens ----

void pp_term(std::vector<Nat>& out, const Term& t, int ctx);

// ctx: 0 = free, 1 = right of '+', 2 = operand of '*' left, 3 = right of '*',
// 4 = operand of S
bool needs_parens(TermKind k, int ctx) {
  if (k == TermKind::Plus) return ctx >= 1;
  if (k == TermKind::Times) return ctx == 3 || ctx == 4;
  return false;
}

void pp_term(std::vector<Nat>& out, const Term& t, int ctx) {
  bool par = needs_parens(t->kind, ctx);
  if (par) out.emplace_back(tok::LParen);
  switch (t->kind) {
    case TermKind::Numeral:
      if (t->value > kNumeralExpandLimit)
        throw CodecDomainError("prime-power codec cannot expand numeral #" +
                               t->value.get_str());
      for (unsigned long i = 0; i < t->value.get_ui(); ++i) out.emplace_back(tok::Succ);
      out.emplace_back(tok::Zero);
      break;
    case TermKind::Var:
      out.push_back(nth_prime(6 + t->var));
      break;
    case TermKind::Succ:
      out.emplace_back(tok::Succ);
      pp_term(out, t->lhs, 4);
      break;
    case TermKind::Plus:
      pp_term(out, t->lhs, 0);
      out.emplace_back(tok::Plus);
      pp_term(out, t->rhs, 1);
      break;
    case TermKind::Times:
      pp_term(out, t->lhs, 2);
      out.emplace_back(tok::Times);
      pp_term(out, t->rhs, 3);
      break;
  }
  if (par) out.emplace_back(tok::RParen);
}

void pp_formula(std::vector<Nat>& out, const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Eq:
      pp_term(out, f->s, 0);
      out.emplace_back(tok::Eq);
      pp_term(out, f->t, 0);
      return;
    case FormulaKind::Not:
      out.emplace_back(tok::Not);
      pp_formula(out, f->a);
      return;
    case FormulaKind::Forall:
      out.emplace_back(tok::Forall);
      out.push_back(nth_prime(6 + f->var));
      pp_formula(out, f->a);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      out.emplace_back(tok::LParen);
      pp_formula(out, f->a);
      out.emplace_back(f->kind == FormulaKind::And  ? tok::And
                       : f->kind == FormulaKind::Or ? tok::Or
                                                    : tok::Imp);
      pp_formula(out, f->b);
      out.emplace_back(tok::RParen);
      return;
    default:
      throw CodecDomainError("prime-power codec needs a kernel formula; desugar first");
  }
}

Nat product_tree(const std::vector<Nat>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return xs[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(xs, lo, mid) * product_tree(xs, mid, hi);
}

// Token stream of the prime-power codec; variables are kept as (6+i)-th
// primes and mapped back to indices by the parser.
class PrimePowerParser {
 public:
  explicit PrimePowerParser(std::vector<Nat> toks) : t_(std::move(toks)) {
    match_.assign(t_.size(), 0);
    conn_.assign(t_.size(), false);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (t_[i] == tok::LParen) {
        open.push_back(i);
      } else if (t_[i] == tok::RParen) {
        if (open.empty()) not_a_formula("unbalanced ')'");
        match_[open.back()] = i;
        open.pop_back();
      } else if (!open.empty() &&
                 (t_[i] == tok::And || t_[i] == tok::Or || t_[i] == tok::Imp)) {
        conn_[open.back()] = true;
      }
    }
    if (!open.empty()) not_a_formula("unbalanced '('");
  }

  Node parse_top() {
    if (t_.empty()) not_a_formula("empty string");
    bool formula_like = false;
    for (const Nat& x : t_)
      if (x == tok::Eq || x == tok::Not || x == tok::Forall) formula_like = true;
    if (formula_like) {
      Formula f = formula();
      if (pos_ != t_.size()) not_a_formula("trailing symbols");
      return f;
    }
    Term t = sum();
    if (pos_ != t_.size()) not_a_formula("trailing symbols");
    return t;
  }

 private:
  std::vector<Nat> t_;
  std::vector<std::size_t> match_;
  std::vector<bool> conn_;
  std::size_t pos_ = 0;

  bool at(unsigned code) const { return pos_ < t_.size() && t_[pos_] == code; }

  void expect(unsigned code) {
    if (!at(code)) not_a_formula("unexpected symbol at position " + std::to_string(pos_ + 1));
    ++pos_;
  }

  std::optional<VarIndex> var_here() const {
    if (pos_ >= t_.size() || t_[pos_] < 13) return std::nullopt;
    auto idx = prime_index(t_[pos_]);
    if (!idx || *idx < 6) return std::nullopt;
    return static_cast<VarIndex>(*idx - 6);
  }

  Formula formula() {
    if (at(tok::Not)) {
      ++pos_;
      return lnot(formula());
    }
    if (at(tok::Forall)) {
      ++pos_;
      auto v = var_here();
      if (!v) not_a_formula("quantifier without variable");
      ++pos_;
      return forall(*v, formula());
    }
    if (at(tok::LParen) && conn_[pos_]) {
      ++pos_;
      Formula a = formula();
      unsigned op = 0;
      if (at(tok::And)) op = tok::And;
      else if (at(tok::Or)) op = tok::Or;
      else if (at(tok::Imp)) op = tok::Imp;
      else not_a_formula("expected a connective");
      ++pos_;
      Formula b = formula();
      expect(tok::RParen);
      if (op == tok::And) return land(a, b);
      if (op == tok::Or) return lor(a, b);
      return imp(a, b);
    }
    Term s = sum();
    expect(tok::Eq);
    Term t = sum();
    return eq(s, t);
  }

  Term sum() {
    Term t = product();
    while (at(tok::Plus)) {
      ++pos_;
      t = plus(t, product());
    }
    return t;
  }

  Term product() {
    Term t = unary();
    while (at(tok::Times)) {
      ++pos_;
      t = times(t, unary());
    }
    return t;
  }

  Term unary() {
    std::size_t succs = 0;
    while (at(tok::Succ)) {
      ++succs;
      ++pos_;
    }
    Term base;
    if (at(tok::Zero)) {
      ++pos_;
      base = zero();
    } else if (auto v = var_here()) {
      ++pos_;
      base = var(*v);
    } else if (at(tok::LParen)) {
      if (conn_[pos_]) not_a_formula("formula where a term was expected");
      ++pos_;
      base = sum();
      expect(tok::RParen);
    } else {
      not_a_formula("expected a term at position " + std::to_string(pos_ + 1));
    }
    for (std::size_t i = 0; i < succs; ++i) base = succ(base);
    return base;
  }
};

// Returns (c, A) when f is the kernel form of Ex0.((x0 = #c) & A).
std::optional<std::pair<Nat, Formula>> match_kripke_shape(const Formula& f) {
  if (f->kind != FormulaKind::Not) return std::nullopt;
  const Formula& q = f->a;
  if (q->kind != FormulaKind::Forall || q->var != 0) return std::nullopt;
  const Formula& n = q->a;
  if (n->kind != FormulaKind::Not) return std::nullopt;
  const Formula& c = n->a;
  if (c->kind != FormulaKind::And) return std::nullopt;
  const Formula& e = c->a;
  if (e->kind != FormulaKind::Eq || e->s->kind != TermKind::Var || e->s->var != 0 ||
      e->t->kind != TermKind::Numeral)
    return std::nullopt;
  return std::make_pair(e->t->value, c->b);
}

// Indices of A_n checked by the star codec are bounded so that decoding
// stays cheap; the enumeration grows quickly with n.
constexpr unsigned long kStarIndexLimit = 5000;

}  // namespace

// ---- public: compact ----

void append_varint(std::vector<std::uint8_t>& out, const Nat& n) {
  if (n.fits_ulong_p()) {
    unsigned long v = n.get_ui();
    do {
      std::uint8_t b = v & 0x7f;
      v >>= 7;
      out.push_back(v ? (b | 0x80) : b);
    } while (v);
    return;
  }
  std::vector<std::uint8_t> le = export_le(n);
  std::size_t groups = (mpz_sizeinbase(n.get_mpz_t(), 2) + 6) / 7;
  unsigned acc = 0, bits = 0;
  std::size_t next = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    while (bits < 7) {
      acc |= static_cast<unsigned>(next < le.size() ? le[next] : 0) << bits;
      ++next;
      bits += 8;
    }
    std::uint8_t b = acc & 0x7f;
    acc >>= 7;
    bits -= 7;
    out.push_back(g + 1 < groups ? (b | 0x80) : b);
  }
}

std::vector<std::uint8_t> compact_bytes(const Node& x) {
  std::vector<std::uint8_t> out;
  if (auto* t = std::get_if<Term>(&x)) put_term(out, *t);
  else put_formula(out, std::get<Formula>(x));
  return out;
}

Nat compact_tokens(const std::vector<std::uint8_t>& bytes) {
  std::vector<std::uint8_t> b = bytes;
  b.push_back(1);
  return import_le(b);
}

Nat compact_encode(const Node& x) { return compact_tokens(compact_bytes(x)); }
Nat compact_encode(const Formula& f) { return compact_encode(Node(f)); }

std::size_t compact_length(const Nat& code) {
  if (code <= 0) return 0;
  return (mpz_sizeinbase(code.get_mpz_t(), 2) - 1) / 8;
}

Nat compact_concat(const Nat& a, const Nat& b) {
  std::size_t la = compact_length(a);
  Nat body = a;
  mpz_clrbit(body.get_mpz_t(), 8 * la);
  Nat shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), b.get_mpz_t(), 8 * la);
  return body + shifted;
}

Node compact_decode(const Nat& code) {
  if (code < 256) not_in_image("compact codes need at least one token byte");
  std::vector<std::uint8_t> bytes = export_le(code);
  if (bytes.back() != 1) not_in_image("missing 0x01 sentinel");
  bytes.pop_back();
  CompactReader r(std::move(bytes));
  r.lex_check();
  return r.read_top();
}

// ---- public: prime power ----

Nat nth_prime(std::size_t k) {
  if (k == 0) throw std::invalid_argument("primes are indexed from 1");
  PrimeCache& c = prime_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  while (c.primes.size() < k) c.grow_to(std::max<unsigned long>(c.limit * 2, 1024));
  return Nat(c.primes[k - 1]);
}

std::optional<std::size_t> prime_index(const Nat& p) {
  if (!p.fits_ulong_p() || p < 2) return std::nullopt;
  unsigned long v = p.get_ui();
  if (v > kPrimeIndexLimit) return std::nullopt;
  PrimeCache& c = prime_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  while (c.limit < v) c.grow_to(std::max(c.limit * 2, v));
  auto it = std::lower_bound(c.primes.begin(), c.primes.end(), v);
  if (it == c.primes.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - c.primes.begin()) + 1;
}

std::vector<Nat> prime_power_tokens(const Node& x) {
  std::vector<Nat> out;
  if (auto* t = std::get_if<Term>(&x)) pp_term(out, *t, 0);
  else pp_formula(out, std::get<Formula>(x));
  return out;
}

Nat prime_power_encode(const Node& x) {
  std::vector<Nat> toks = prime_power_tokens(x);
  if (toks.size() > kPrimePowerSymbolCap)
    throw CapExceeded("prime-power codec: " + std::to_string(toks.size()) +
                      " symbols exceed the cap of " + std::to_string(kPrimePowerSymbolCap));
  std::vector<Nat> factors(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!toks[i].fits_ulong_p()) throw CapExceeded("variable code too large");
    mpz_pow_ui(factors[i].get_mpz_t(), nth_prime(i + 1).get_mpz_t(), toks[i].get_ui());
  }
  return product_tree(factors, 0, factors.size());
}

Node prime_power_decode(const Nat& code) {
  if (code < 1) not_in_image("zero codes nothing");
  Nat rest = code;
  std::vector<Nat> toks;
  for (std::size_t k = 1; rest != 1; ++k) {
    Nat p = nth_prime(k);
    Nat e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    if (e == 0) not_in_image("exponent of prime " + p.get_str() + " is zero");
    if (e >= 13) {
      auto idx = prime_index(e);
      if (!idx || *idx < 6) not_in_image("exponent " + e.get_str() + " is no symbol code");
    }
    toks.push_back(e);
  }
  PrimePowerParser parser(toks);
  Node n = parser.parse_top();
  if (prime_power_tokens(n) != toks) not_a_formula("non-canonical spelling");
  return n;
}

// ---- public: star ----

Formula kripke_shape(const Nat& c, const Formula& a) {
  return lnot(forall(0, lnot(land(eq(var(0), numeral(c)), a))));
}

Nat star_regular(const Formula& f) { return 2 * compact_encode(f) + 1; }

Nat star_encode(const Formula& f) {
  if (auto m = match_kripke_shape(f)) {
    const auto& [c, a] = *m;
    if (c > 0 && mpz_even_p(c.get_mpz_t())) {
      Nat k = c / 2;
      if (mpz_odd_p(k.get_mpz_t())) {
        try {
          Node inner = compact_decode((k - 1) / 2);
          if (auto* g = std::get_if<Formula>(&inner)) {
            auto mi = match_kripke_shape(*g);
            if (mi && equal(mi->second, a) && mi->first >= 1 &&
                mi->first <= kStarIndexLimit &&
                equal(enumerate_svf(mi->first.get_ui()), a))
              return c;
          }
        } catch (const DecodeError&) {
        }
      }
    }
  }
  return star_regular(f);
}

Formula star_decode(const Nat& code) {
  if (code <= 0) not_in_image("zero");
  Formula f;
  if (mpz_odd_p(code.get_mpz_t())) {
    f = decode_formula(GoedelCode{(code - 1) / 2, CodecId::Compact});
  } else {
    Formula inner = star_decode(code / 2);
    auto m = match_kripke_shape(inner);
    if (!m) not_in_image("even star code without a matching sentence");
    f = kripke_shape(code, m->second);
  }
  if (star_encode(f) != code) not_in_image("star code is not canonical for its formula");
  return f;
}

// ---- public: dispatch ----

GoedelCode encode(const Node& x, CodecId codec) {
  switch (codec) {
    case CodecId::PrimePower: return {prime_power_encode(x), codec};
    case CodecId::Compact: return {compact_encode(x), codec};
    case CodecId::Star: {
      auto* f = std::get_if<Formula>(&x);
      if (!f) throw CodecDomainError("star codec encodes formulas only");
      return {star_encode(*f), codec};
    }
  }
  throw CodecDomainError("unknown codec");
}

GoedelCode encode(const Formula& f, CodecId codec) { return encode(Node(f), codec); }

Node decode(const GoedelCode& c) {
  switch (c.codec) {
    case CodecId::PrimePower: return prime_power_decode(c.value);
    case CodecId::Compact: return compact_decode(c.value);
    case CodecId::Star: return star_decode(c.value);
  }
  throw CodecDomainError("unknown codec");
}

Formula decode_formula(const GoedelCode& c) {
  Node n = decode(c);
  if (auto* f = std::get_if<Formula>(&n)) return *f;
  not_a_formula("code denotes a term");
}

// ---- public: arithmetic ----

Nat host_mod(const Nat& x, const Nat& y) {
  if (y == 0) return x;
  Nat r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

Nat host_div(const Nat& x, const Nat& y) {
  if (y == 0) return 0;
  Nat q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return q;
}

Nat host_monus(const Nat& x, const Nat& y) { return x > y ? Nat(x - y) : Nat(0); }

Nat host_isqrt(const Nat& x) {
  Nat r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

std::size_t bit_length(const Nat& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

Nat host_bytelen(const Nat& x) {
  return Nat(static_cast<unsigned long>((bit_length(x) + 7) / 8));
}

std::string nat_digest(const Nat& n) {
  const std::size_t bits = bit_length(n);
  if (bits <= 4096) return n.get_str();
  Nat low;
  mpz_tdiv_r(low.get_mpz_t(), n.get_mpz_t(), Nat("100000000000000000000").get_mpz_t());
  std::string tail = low.get_str();
  tail.insert(0, 20 - tail.size(), '0');
  std::uint64_t h = 14695981039346656037ull;
  const mp_limb_t* limbs = mpz_limbs_read(n.get_mpz_t());
  for (std::size_t i = 0, m = mpz_size(n.get_mpz_t()); i < m; ++i) {
    mp_limb_t w = limbs[i];
    for (std::size_t b = 0; b < sizeof w; ++b, w >>= 8) {
      h ^= static_cast<unsigned char>(w);
      h *= 1099511628211ull;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return "..." + tail + " (" + std::to_string(bits) + " bits, fnv1a " + hex + ")";
}

Nat pair(const Nat& i, const Nat& j) {
  Nat s = i + j;
  return s * s + i + 1;
}

namespace {
bool unpair_raw(const Nat& n, Nat& i, Nat& j) {
  if (n < 1) return false;
  Nat m = n - 1;
  Nat s = host_isqrt(m);
  i = m - s * s;
  if (i > s) return false;
  j = s - i;
  return true;
}
}  // namespace

Nat unpair_l(const Nat& n) {
  Nat i, j;
  return unpair_raw(n, i, j) ? i : Nat(0);
}

Nat unpair_r(const Nat& n) {
  Nat i, j;
  return unpair_raw(n, i, j) ? j : Nat(0);
}

PackedSequence crt_pack(const std::vector<Nat>& ks) {
  if (ks.empty()) throw EmptySequence();
  const std::size_t n = ks.size();
  Nat fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<unsigned long>(i);
  Nat mx = *std::max_element(ks.begin(), ks.end());
  Nat b = (mx / fact + 1) * fact;
  // Incremental CRT: N ≡ k_i mod m_i for m_i = 1 + i*b.
  Nat N = 0, M = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    Nat m = 1 + b * static_cast<unsigned long>(i);
    Nat target = host_mod(ks[i - 1], m);
    Nat diff = host_mod(Nat(target - N), m);
    Nat inv;
    mpz_invert(inv.get_mpz_t(), Nat(host_mod(M, m)).get_mpz_t(), m.get_mpz_t());
    Nat t = host_mod(Nat(diff * inv), m);
    N += M * t;
    M *= m;
  }
  return {N, b};
}

Nat crt_get(const PackedSequence& p, std::size_t i) {
  return host_mod(p.N, Nat(1 + p.b * static_cast<unsigned long>(i)));
}

Nat beta(const Nat& code, const Nat& i) {
  return host_mod(unpair_l(code), Nat((i + 1) * unpair_r(code) + 1));
}

Nat beta_pack(const std::vector<Nat>& ys) {
  PackedSequence p = crt_pack(ys);
  return pair(p.N, p.b);
}

Nat seq_encode(const std::vector<Nat>& vals, bool minimal) {
  if (vals.empty()) throw EmptySequence();
  std::vector<Nat> full;
  full.reserve(vals.size() + 1);
  full.emplace_back(static_cast<unsigned long>(vals.size()));
  full.insert(full.end(), vals.begin(), vals.end());
  Nat canonical = beta_pack(full);
  if (!minimal) return canonical;
  if (canonical > kMinimalSearchBound)
    throw MinimalSearchInfeasible("canonical code " + canonical.get_str() +
                                  " exceeds the minimal-search bound");
  for (unsigned long n = 0;; ++n) {
    Nat N(n);
    bool ok = true;
    for (std::size_t i = 0; i < full.size() && ok; ++i)
      ok = beta(N, Nat(static_cast<unsigned long>(i))) == full[i];
    if (ok) return N;
  }
}

std::vector<Nat> seq_decode(const Nat& code) {
  Nat len = beta(code, 0);
  if (!len.fits_ulong_p() || len > 10000000) throw std::invalid_argument("sequence too long");
  std::vector<Nat> out;
  for (unsigned long i = 1; i <= len.get_ui(); ++i) out.push_back(beta(code, Nat(i)));
  return out;
}

}  // namespace goedel
