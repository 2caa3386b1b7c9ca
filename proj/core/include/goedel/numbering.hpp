#pragma once

// Arithmetization: token codes, the prime-power and compact codecs, the star
// codec layered over compact, Cantor-style pairing and CRT sequence packing.

#include <cstdint>
#include <optional>
#include <string>
#include <stdexcept>
#include <vector>

#include "goedel/syntax.hpp"

namespace goedel {

enum class CodecId : std::uint8_t { PrimePower, Compact, Star };

const char* codec_name(CodecId c);

struct GoedelCode {
  Nat value;
  CodecId codec = CodecId::Compact;
};

/// Token codes shared by both codecs.  Variables use the marker in the
/// compact codec and the (6+i)-th prime in the prime-power codec.
namespace tok {
inline constexpr unsigned Zero = 1, Succ = 2, Plus = 3, Times = 4, Eq = 5, Not = 6,
                          And = 7, Or = 8, Imp = 9, Forall = 10, LParen = 11, RParen = 12,
                          VarMark = 13, NumMark = 14;
}

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside a codec's domain (non-kernel formula, oversize numeral for
/// the prime-power codec).
class CodecDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DecodeFailure : std::uint8_t { NotInImage, NotAFormula };

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeFailure kind, const std::string& what);
  DecodeFailure kind() const { return kind_; }

 private:
  DecodeFailure kind_;
};

/// Maximum token count accepted by the prime-power encoder.
inline constexpr std::size_t kPrimePowerSymbolCap = 100000;

GoedelCode encode(const Node& x, CodecId codec);
GoedelCode encode(const Formula& f, CodecId codec);
Node decode(const GoedelCode& c);
Formula decode_formula(const GoedelCode& c);

// ---- compact codec ------------------------------------------------------

/// Token-byte stream of the canonical rendering, little-endian, with a 0x01
/// sentinel above the most significant token byte.
std::vector<std::uint8_t> compact_bytes(const Node& x);
Nat compact_encode(const Node& x);
Nat compact_encode(const Formula& f);
Node compact_decode(const Nat& code);

/// Number of token bytes in a compact code (everything below the sentinel).
std::size_t compact_length(const Nat& code);

/// Code of the concatenated token streams.
Nat compact_concat(const Nat& a, const Nat& b);

/// Code of a literal token sequence.
Nat compact_tokens(const std::vector<std::uint8_t>& bytes);

void append_varint(std::vector<std::uint8_t>& out, const Nat& n);

// ---- prime-power codec --------------------------------------------------

/// Token list used by the prime-power codec: minimal parenthesization,
/// atomic equations unbracketed, binary connectives always bracketed.
std::vector<Nat> prime_power_tokens(const Node& x);
Nat prime_power_encode(const Node& x);
Node prime_power_decode(const Nat& code);

/// k-th prime, 1-based (nth_prime(1) == 2).
Nat nth_prime(std::size_t k);

/// 1-based index of a prime, or nullopt when p is not prime.
std::optional<std::size_t> prime_index(const Nat& p);

// ---- star codec ---------------------------------------------------------

/// Kripke/Smullyan direct self-reference encoding over compact codes.
/// Ordinary formulas get 2c+1; the distinguished sentence for A_n gets 2k_n.
Nat star_encode(const Formula& f);
Formula star_decode(const Nat& code);

/// Regular (odd) star code: 2 * compact + 1.
Nat star_regular(const Formula& f);

/// Sentence Ex0.((x0 = #c) & A) in kernel form.
Formula kripke_shape(const Nat& c, const Formula& a);

// ---- pairing, CRT, beta -------------------------------------------------

Nat pair(const Nat& i, const Nat& j);
Nat unpair_l(const Nat& n);
Nat unpair_r(const Nat& n);

struct PackedSequence {
  Nat N;
  Nat b;
};

PackedSequence crt_pack(const std::vector<Nat>& ks);
/// i is 1-based.
Nat crt_get(const PackedSequence& p, std::size_t i);

Nat beta(const Nat& code, const Nat& i);

class MinimalSearchInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySequence : public std::invalid_argument {
 public:
  EmptySequence() : std::invalid_argument("sequences must be non-empty") {}
};

inline constexpr unsigned long kMinimalSearchBound = 10000000;

/// Length at position 0, values at 1..k.
Nat seq_encode(const std::vector<Nat>& vals, bool minimal = false);
std::vector<Nat> seq_decode(const Nat& code);

/// Packs y_0..y_n so that beta(N, i) == y_i, without a length slot.
Nat beta_pack(const std::vector<Nat>& ys);

// Host arithmetic matching the recursive-function library conventions.
Nat host_mod(const Nat& x, const Nat& y);  // x mod 0 = x
Nat host_div(const Nat& x, const Nat& y);  // x div 0 = 0
Nat host_monus(const Nat& x, const Nat& y);
Nat host_isqrt(const Nat& x);
std::size_t bit_length(const Nat& x);
Nat host_bytelen(const Nat& x);  // least L with 256^L > x

/// Decimal for numbers up to 4096 bits; above that the last 20 decimal
/// digits, the bit length and an FNV-1a hash of the limbs, which avoids a
/// full base conversion.
std::string nat_digest(const Nat& n);

}  // namespace goedel
