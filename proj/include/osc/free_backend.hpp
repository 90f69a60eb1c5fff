#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "osc/oscillator.hpp"
#include "osc/word.hpp"

namespace osc {

/// Exact membership of a reduced word in (+-S)^n / (-+S)^n where S is the
/// free semigroup (with identity) over the full alphabet: the word's
/// alternating block-sign sequence must embed into the expression's sign
/// pattern as an order-preserving subsequence. Empty factors make skipped
/// pattern slots harmless, which is what lets the greedy embedding decide.
inline bool free_semigroup_osc_member(const Word& w, OscillatorExpr expr) {
  auto blocks = w.blocks();
  auto pattern = expr.sign_pattern();
  std::size_t slot = 0;
  for (const Block& b : blocks) {
    while (slot < pattern.size() && pattern[slot] != b.sign) ++slot;
    if (slot == pattern.size()) return false;
    ++slot;
  }
  return true;
}

/// Constructive counterpart of free_semigroup_osc_member: positive words
/// f_1..f_n (identity allowed) whose signed product under the expression's
/// sign pattern reproduces w, or nullopt when w is outside the set. A block
/// assigned to a negative slot is stored inverted, so each factor is itself a
/// member of the base semigroup.
inline std::optional<std::vector<Word>> free_semigroup_osc_factors(const Word& w,
                                                                   OscillatorExpr expr) {
  auto blocks = w.blocks();
  auto pattern = expr.sign_pattern();
  std::vector<Word> factors(pattern.size());
  std::size_t slot = 0;
  for (const Block& b : blocks) {
    while (slot < pattern.size() && pattern[slot] != b.sign) ++slot;
    if (slot == pattern.size()) return std::nullopt;
    Word piece = w.subword(b.offset, b.length);
    factors[slot] = b.sign < 0 ? piece.inverse() : piece;
    ++slot;
  }
  return factors;
}

/// Backend over a finitely generated free group.
/// Base sets: the free semigroup over the full alphabet (identity adjoined),
/// or a finite explicit set (identity adjoined). The `inverted` flag yields
/// the mirrored base set, i.e. the same base in the mirror group.
class FreeGroupBackend {
 public:
  using Elem = Word;

  struct BaseSpec {
    enum class Kind { FreeSemigroup, Explicit };
    Kind kind = Kind::FreeSemigroup;
    std::vector<Word> elements;  // Explicit only
    bool inverted = false;

    static BaseSpec free_semigroup(bool inverted = false) {
      return BaseSpec{Kind::FreeSemigroup, {}, inverted};
    }
    static BaseSpec explicit_set(std::vector<Word> elements, bool inverted = false) {
      return BaseSpec{Kind::Explicit, std::move(elements), inverted};
    }
  };

  explicit FreeGroupBackend(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const { return alphabet_; }

  Word identity() const { return Word(); }
  Word product(const Word& a, const Word& b) const { return a * b; }
  Word inverse(const Word& a) const { return a.inverse(); }
  std::string key(const Word& a) const { return a.str(alphabet_); }
  std::string print(const Word& a) const { return a.str(alphabet_); }

  std::vector<Word> enumerate_base(const BaseSpec& spec, int per_factor) const {
    std::vector<Word> out;
    if (spec.kind == BaseSpec::Kind::FreeSemigroup) {
      out = positive_words(alphabet_.size(), per_factor);
    } else {
      out.push_back(Word());
      for (const Word& w : spec.elements) {
        if (static_cast<int>(w.size()) <= per_factor) out.push_back(w);
      }
      std::sort(out.begin(), out.end(), Word::shortlex_less);
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    if (spec.inverted) {
      for (Word& w : out) w = w.inverse();
    }
    return out;
  }

  std::optional<bool> exact_base_member(const BaseSpec& spec, const Word& w) const {
    Word probe = spec.inverted ? w.inverse() : w;
    if (spec.kind == BaseSpec::Kind::FreeSemigroup) return probe.is_positive();
    if (probe.empty()) return true;
    return std::find(spec.elements.begin(), spec.elements.end(), probe) != spec.elements.end();
  }

  /// Exact for the free-semigroup base; explicit sets only support bounded
  /// enumeration. An inverted base turns the expression into its mirror.
  std::optional<bool> exact_osc_member(const BaseSpec& spec, OscillatorExpr expr,
                                       const Word& w) const {
    if (spec.kind != BaseSpec::Kind::FreeSemigroup) return std::nullopt;
    return free_semigroup_osc_member(w, spec.inverted ? expr.flipped() : expr);
  }

  // Structural facts for the topology-axiom checker. The free semigroup is
  // closed under products but not under inverses; explicit sets claim
  // symmetry only when it is checkable by scanning.
  bool base_is_subsemigroup(const BaseSpec& spec) const {
    return spec.kind == BaseSpec::Kind::FreeSemigroup;
  }
  bool base_is_symmetric(const BaseSpec& spec) const {
    if (spec.kind != BaseSpec::Kind::Explicit) return false;
    for (const Word& w : spec.elements) {
      Word inv = w.inverse();
      if (std::find(spec.elements.begin(), spec.elements.end(), inv) == spec.elements.end()) {
        return false;
      }
    }
    return true;
  }
  bool base_includes(const BaseSpec& inner, const BaseSpec& outer) const {
    return inner.kind == BaseSpec::Kind::FreeSemigroup &&
           outer.kind == BaseSpec::Kind::FreeSemigroup && inner.inverted == outer.inverted;
  }
  // Meaningful for same-set pairs only; base_includes guards the claim.
  BaseSpec intersection_lower(const BaseSpec& a, const BaseSpec&) const { return a; }

 private:
  Alphabet alphabet_;
};

/// The additive integers with the chain of subgroups 2^k * Z as base sets.
/// Every predicate is exact, every base set is a symmetric subgroup; this is
/// the degenerate topological-group reference backend.
class IntLineBackend {
 public:
  using Elem = long long;

  struct BaseSpec {
    int scale_exp = 0;  // the base set is (2^scale_exp) * Z
    bool inverted = false;
  };

  Elem identity() const { return 0; }
  Elem product(Elem a, Elem b) const { return a + b; }
  Elem inverse(Elem a) const { return -a; }
  std::string key(Elem a) const { return std::to_string(a); }
  std::string print(Elem a) const { return std::to_string(a); }

  std::vector<Elem> enumerate_base(const BaseSpec& spec, int per_factor) const {
    long long step = 1ll << spec.scale_exp;
    std::vector<Elem> out;
    out.push_back(0);
    for (int m = 1; m <= per_factor; ++m) {
      out.push_back(m * step);
      out.push_back(-m * step);
    }
    return out;
  }

  std::optional<bool> exact_base_member(const BaseSpec& spec, Elem g) const {
    long long step = 1ll << spec.scale_exp;
    return g % step == 0;
  }

  // Subgroups are symmetric and closed under products, so every oscillator
  // stage equals the subgroup itself.
  std::optional<bool> exact_osc_member(const BaseSpec& spec, OscillatorExpr, Elem g) const {
    return exact_base_member(spec, g);
  }

  bool base_is_symmetric(const BaseSpec&) const { return true; }
  bool base_is_subsemigroup(const BaseSpec&) const { return true; }

  std::optional<bool> base_includes(const BaseSpec& inner, const BaseSpec& outer) const {
    return inner.scale_exp >= outer.scale_exp;
  }
  BaseSpec intersection_lower(const BaseSpec& a, const BaseSpec& b) const {
    return BaseSpec{a.scale_exp > b.scale_exp ? a.scale_exp : b.scale_exp, a.inverted};
  }
  // The group is abelian: conjugation is trivial, any subgroup absorbs it.
  BaseSpec conjugation_absorber(Elem, const BaseSpec& u) const { return u; }

 private:
};

}  // namespace osc
