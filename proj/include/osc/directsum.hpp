#pragma once

// Direct sums of countably many copies of the free group on {x, y}: finitely
// supported tuples of reduced words, with the neighborhood family
//   U_n = { tuples w : w_i = e for i < n, w_i a positive word for i >= n }.
// Each U_n is a subsemigroup containing the identity tuple; the family is a
// decreasing chain U_1 >= U_2 >= ... .  Oscillator membership is decidable
// coordinatewise: a tuple lies in (+-U_n)^k exactly when its support starts at
// or above n and every coordinate word lies in (+-S)^k for the per-coordinate
// positive semigroup S (block-embedding test).  Slot-wise assembly of the
// per-coordinate factorizations realizes any such tuple as an actual product
// of k signed U_n-factors, so the coordinatewise test is exact, not a bound.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osc/free_backend.hpp"
#include "osc/oscillator.hpp"
#include "osc/word.hpp"

namespace osc {

// Finitely supported map coordinate -> nonidentity reduced word.  Coordinates
// are nonnegative integers; all coordinates share one two-letter alphabet.
class TupleElement {
 public:
  using Map = std::map<int, Word>;

  TupleElement() = default;

  // Drops identity-valued coordinates; rejects negative coordinates.
  static TupleElement from_map(Map coords);
  static TupleElement single(int coord, const Word& w);

  const Map& coords() const { return coords_; }
  bool is_identity() const { return coords_.empty(); }
  std::size_t support_size() const { return coords_.size(); }
  // Largest / smallest supported coordinate; nullopt for the identity tuple.
  std::optional<int> max_support() const;
  std::optional<int> min_support() const;
  // Coordinate value (identity word when unsupported).
  const Word& at(int coord) const;
  std::size_t total_length() const;

  bool operator==(const TupleElement& o) const { return coords_ == o.coords_; }

 private:
  Map coords_;
};

TupleElement tuple_product(const TupleElement& u, const TupleElement& v);
TupleElement tuple_inverse(const TupleElement& u);

// Literal syntax: `{}` or `{1: "x y'", 3: "x x"}` (coordinate -> word text).
std::string tuple_str(const TupleElement& t, const Alphabet& alphabet);
TupleElement parse_tuple(const Alphabet& alphabet, const std::string& text);

class DirectSumBackend {
 public:
  using Elem = TupleElement;

  struct BaseSpec {
    int min_free = 1;       // coordinates below this index are pinned to e
    bool inverted = false;  // true selects the inverse set U^{-1}

    static BaseSpec nbhd(int min_free, bool inverted = false) {
      return BaseSpec{min_free, inverted};
    }
  };

  DirectSumBackend() : alphabet_(Alphabet::free2()) {}

  const Alphabet& alphabet() const { return alphabet_; }

  Elem identity() const { return TupleElement{}; }
  Elem product(const Elem& a, const Elem& b) const { return tuple_product(a, b); }
  Elem inverse(const Elem& a) const { return tuple_inverse(a); }
  std::string key(const Elem& a) const { return tuple_str(a, alphabet_); }
  std::string print(const Elem& a) const { return key(a); }

  // All tuples with positive-word coordinates, support inside the window
  // [min_free, min_free + per_factor), and total letter count <= per_factor.
  // The window cap is part of the bounded-enumeration semantics (an
  // under-approximation of the infinite base set); the membership predicates
  // below are exact and window-free.
  std::vector<Elem> enumerate_base(const BaseSpec& spec, std::size_t per_factor) const;

  // Exact: support at/above min_free and every coordinate positive
  // (inverse-positive when the spec is inverted).
  std::optional<bool> exact_base_member(const BaseSpec& spec, const Elem& g) const;

  // Exact coordinatewise oscillator membership (see file header).
  std::optional<bool> exact_osc_member(const BaseSpec& spec, OscillatorExpr expr,
                                       const Elem& g) const;

  // Ambient-group ball: all tuples with reduced-word coordinates, support in
  // [lo, lo + width), and total reduced length <= total_len.  Deterministic
  // order (coordinate-lexicographic, shortlex per coordinate).
  std::vector<Elem> enumerate_ball(int lo, int width, std::size_t total_len) const;

  // Structural facts about the U_n chain, used by the topology-axiom checker.
  static bool base_includes(const BaseSpec& inner, const BaseSpec& outer) {
    return inner.inverted == outer.inverted && inner.min_free >= outer.min_free;
  }
  static BaseSpec intersection_lower(const BaseSpec& a, const BaseSpec& b) {
    return BaseSpec{a.min_free > b.min_free ? a.min_free : b.min_free, a.inverted};
  }
  static bool base_is_subsemigroup(const BaseSpec&) { return true; }
  static bool base_is_symmetric(const BaseSpec&) { return false; }
  // A deeper basic set V with x^{-1} V x = V subset U: push the window above
  // the support of x, where conjugation acts trivially coordinate by
  // coordinate.
  BaseSpec conjugation_absorber(const Elem& x, const BaseSpec& u) const {
    int beyond = x.max_support() ? *x.max_support() + 1 : u.min_free;
    return BaseSpec{beyond > u.min_free ? beyond : u.min_free, u.inverted};
  }

 private:
  Alphabet alphabet_;
};

}  // namespace osc
