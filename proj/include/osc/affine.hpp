#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osc/oscillator.hpp"
#include "osc/word.hpp"

namespace osc {

using BigInt = boost::multiprecision::cpp_int;

/// num / 2^den_exp, normalized: num is odd or zero, and zero has den_exp 0.
struct Dyadic {
  BigInt num = 0;
  unsigned den_exp = 0;

  Dyadic() = default;
  Dyadic(BigInt n, unsigned k);  // normalizes
  static Dyadic from_int(BigInt n) { return Dyadic(std::move(n), 0); }

  bool is_integer() const { return den_exp == 0; }
  bool is_zero() const { return num == 0; }

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-() const;
  Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
  Dyadic scaled_pow2(long long e) const;  // value * 2^e

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  std::string str() const;  // "n" or "n/2^k"
  static Dyadic parse(std::string_view text);
};

/// x -> 2^log_scale * x + shift, an element of the dyadic affine group.
/// Composition convention: compose(f, g) applies g first, f second.
struct AffMap {
  long long log_scale = 0;
  Dyadic shift;

  friend bool operator==(const AffMap&, const AffMap&) = default;

  static AffMap identity() { return {}; }
  static AffMap gen_a() { return {1, Dyadic()}; }               // x -> 2x
  static AffMap gen_b() { return {0, Dyadic::from_int(1)}; }    // x -> x + 1

  std::string str() const;  // map literal "a=<log_scale>,t=<shift>"
  static AffMap parse(std::string_view text);

  Dyadic apply(const Dyadic& x) const;
};

AffMap compose(const AffMap& f, const AffMap& g);  // f after g
AffMap invert_map(const AffMap& f);

/// Left-to-right fold over the letters: the rightmost letter acts first.
/// With a = "times 2" and b = "plus 1", the word "ab" gives x -> 2x + 2 and
/// the defining relation ab = b^2 a holds literally.
AffMap word_to_map(const Word& w);

/// Exact membership in S u {e}, S the semigroup of compositions of a and b:
/// log_scale >= 0 and shift a nonnegative integer. (b^T a^A realizes every
/// such pair, and both coordinates are 'monotone' along compositions.)
bool semigroup_member(const AffMap& f);

enum class ProductSide { SSinv, SinvS };

/// Exact membership in S*S^-1 / S^-1*S (identity adjoined to S):
///   SSinv: f = s1 o s2^-1 <=> shift * 2^max(0, -log_scale) is an integer
///   SinvS: f = s1^-1 o s2 <=> always (the scale of s1 can absorb any shift)
bool product_set_member(const AffMap& f, ProductSide side);

/// Constructive factorization witnessing product_set_member; both returned
/// maps satisfy semigroup_member, and composing them per the side yields f.
std::optional<std::pair<AffMap, AffMap>> product_set_witness(const AffMap& f, ProductSide side);

/// Positive word over {a, b} evaluating to f, when f lies in S u {e}:
/// b^shift a^log_scale.
std::optional<Word> semigroup_witness_word(const AffMap& f);

/// Backend over the dyadic affine group with base S (or S^-1 when inverted).
class AffBackend {
 public:
  using Elem = AffMap;

  struct BaseSpec {
    bool inverted = false;
  };

  AffBackend() : alphabet_(Alphabet::affine_ab()) {}

  const Alphabet& alphabet() const { return alphabet_; }

  AffMap identity() const { return AffMap::identity(); }
  AffMap product(const AffMap& f, const AffMap& g) const { return compose(f, g); }
  AffMap inverse(const AffMap& f) const { return invert_map(f); }
  std::string key(const AffMap& f) const { return f.str(); }
  std::string print(const AffMap& f) const { return f.str(); }

  /// Distinct maps of positive words of length <= per_factor (identity
  /// included), sorted by (log_scale, shift): deterministic and closed under
  /// the collapse ab = b^2 a.
  std::vector<AffMap> enumerate_base(const BaseSpec& spec, int per_factor) const;

  std::optional<bool> exact_base_member(const BaseSpec& spec, const AffMap& f) const {
    return semigroup_member(spec.inverted ? invert_map(f) : f);
  }

  /// Exact for every stage: n=1 gives S / S^-1, n=2 gives the two product
  /// sets, and every stage n>=3 contains S^-1 S, which is already the whole
  /// group (the identity slots make the stages absorb it).
  std::optional<bool> exact_osc_member(const BaseSpec& spec, OscillatorExpr expr,
                                       const AffMap& f) const;

 private:
  Alphabet alphabet_;
};

}  // namespace osc
