#include <algorithm>
#include <cmath>
#include <mutex>

#include "goedel/syntax.hpp"

namespace goedel {

namespace {

// Kernel terms and formulas grouped by the length of their canonical
// rendering.  Built lazily, one length at a time.
class ByLength {
 public:
  const std::vector<Term>& terms(std::size_t len) {
    while (terms_.size() <= len) grow_terms();
    return terms_[len];
  }

  const std::vector<Formula>& formulas(std::size_t len) {
    while (formulas_.size() <= len) grow_formulas();
    return formulas_[len];
  }

 private:
  std::vector<std::vector<Term>> terms_;
  std::vector<std::vector<Formula>> formulas_;

  void grow_terms() {
    const std::size_t len = terms_.size();
    std::vector<Term> out;
    if (len == 1) out.push_back(zero());
    if (len >= 2) {
      // x followed by len-1 digits, no leading zeros
      std::size_t d = len - 1;
      if (d <= 4) {
        VarIndex lo = d == 1 ? 0 : static_cast<VarIndex>(std::pow(10, d - 1));
        VarIndex hi = static_cast<VarIndex>(std::pow(10, d));
        for (VarIndex v = lo; v < hi; ++v) out.push_back(var(v));
      }
      for (const Term& t : terms(len - 1)) out.push_back(succ(t));
    }
    if (len >= 6) {
      // compressed numerals: '#' then len-1 digits, value above the expand limit
      std::size_t d = len - 1;
      Nat lo = 1, hi = 1;
      for (std::size_t i = 1; i < d; ++i) lo *= 10;
      hi = lo * 10;
      if (lo <= kNumeralExpandLimit) lo = kNumeralExpandLimit + 1;
      for (Nat n = lo; n < hi; ++n) out.push_back(numeral(n));
    }
    for (std::size_t l1 = 1; l1 + 6 <= len; ++l1) {
      std::size_t l2 = len - 5 - l1;
      for (const Term& a : terms(l1))
        for (const Term& b : terms(l2)) {
          out.push_back(plus(a, b));
          out.push_back(times(a, b));
        }
    }
    terms_.push_back(std::move(out));
  }

  void grow_formulas() {
    const std::size_t len = formulas_.size();
    std::vector<Formula> out;
    for (std::size_t l1 = 1; l1 + 6 <= len; ++l1) {
      std::size_t l2 = len - 5 - l1;
      for (const Term& a : terms(l1))
        for (const Term& b : terms(l2)) out.push_back(eq(a, b));
    }
    if (len >= 1)
      for (const Formula& f : formulas(len - 1)) out.push_back(lnot(f));
    for (std::size_t l1 = 1; l1 + 6 <= len; ++l1) {
      std::size_t l2 = len - 5 - l1;
      for (const Formula& a : formulas(l1))
        for (const Formula& b : formulas(l2)) {
          out.push_back(land(a, b));
          out.push_back(lor(a, b));
        }
    }
    for (std::size_t l1 = 1; l1 + 7 <= len; ++l1) {
      std::size_t l2 = len - 6 - l1;
      for (const Formula& a : formulas(l1))
        for (const Formula& b : formulas(l2)) out.push_back(imp(a, b));
    }
    // "Ax<digits>." prefix
    for (std::size_t d = 1; d + 4 <= len && d <= 4; ++d) {
      VarIndex lo = d == 1 ? 0 : static_cast<VarIndex>(std::pow(10, d - 1));
      VarIndex hi = static_cast<VarIndex>(std::pow(10, d));
      for (VarIndex v = lo; v < hi; ++v)
        for (const Formula& f : formulas(len - 3 - d)) out.push_back(forall(v, f));
    }
    formulas_.push_back(std::move(out));
  }
};

struct SvfCache {
  std::mutex mu;
  ByLength pool;
  std::vector<Formula> found;
  std::size_t next_length = 1;
};

SvfCache& svf_cache() {
  static SvfCache cache;
  return cache;
}

}  // namespace

Formula enumerate_svf(std::size_t k) {
  if (k == 0) throw std::invalid_argument("enumerate_svf index starts at 1");
  SvfCache& c = svf_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  while (c.found.size() < k) {
    std::vector<std::pair<std::string, Formula>> batch;
    for (const Formula& f : c.pool.formulas(c.next_length)) {
      VarSet fv = free_vars(f);
      if (fv.size() == 1 && *fv.begin() == 0) batch.emplace_back(render(f), f);
    }
    std::sort(batch.begin(), batch.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [text, f] : batch) c.found.push_back(f);
    ++c.next_length;
  }
  return c.found[k - 1];
}

}  // namespace goedel
