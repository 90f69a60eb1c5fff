#pragma once

// The quotient-image group behind the separation-invariant examples: tuples
// over the direct sum of free groups are mapped by
//   psi(w) = ( sum_i xcount(w_i),  (class of w_i in <x,y | (x y^-1)^p>)_i )
// and the group under study is the image of the tuple group, carrying the
// image family psi(U_n) of the positive-cone neighborhoods U_n.
//
// Elements are PsiImage values: an integer plus finitely many nonidentity
// quotient classes, each held as a rewrite-reduced representative word.
// Representatives are NOT unique normal forms; semantic equality always goes
// through the one-relator word-problem decision, and printable keys go
// through a first-seen interning table so equal classes print identically.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osc/dehn.hpp"
#include "osc/directsum.hpp"
#include "osc/oscillator.hpp"

namespace osc {

struct PsiImage {
  long long int_part = 0;
  std::map<int, Word> cosets;  // coordinate -> nonidentity class representative

  bool is_identity() const { return int_part == 0 && cosets.empty(); }
};

enum class Ex0Verdict {
  ExactYes,    // membership with a verified factorization
  ExactNo,     // excluded by one of the two exact case arguments
  EvidenceNo,  // bounded preimage search exhausted; not a proof
};

struct Ex0Decision {
  Ex0Verdict verdict = Ex0Verdict::EvidenceNo;
  std::vector<PsiImage> factors;  // ExactYes only: one factor per pattern slot
  std::string reason;
};

class Ex0Backend {
 public:
  using Elem = PsiImage;

  struct BaseSpec {
    int min_free = 1;       // psi(U_min_free): coordinates below are pinned to e
    bool inverted = false;  // the inverse base set, for mirror runs

    static BaseSpec nbhd(int min_free, bool inverted = false) {
      return BaseSpec{min_free, inverted};
    }
  };

  // osc_word_budget: default per-coordinate word-search depth used when the
  // oscillator membership decision runs without an explicit budget.
  explicit Ex0Backend(int p, std::size_t osc_word_budget = 6);

  int p() const { return p_; }
  const Alphabet& alphabet() const { return tuples_.alphabet(); }
  const OneRelatorPresentation& presentation() const { return pres_; }
  const DirectSumBackend& tuples() const { return tuples_; }

  // The defining homomorphism from tuples; coset parts are rewrite-reduced.
  Elem psi(const TupleElement& t) const;
  // Exact semantic equality (integer parts equal, classes equal coordinatewise).
  bool psi_equal(const Elem& a, const Elem& b) const;

  Elem identity() const { return PsiImage{}; }
  Elem product(const Elem& a, const Elem& b) const;
  Elem inverse(const Elem& a) const;
  // Canonical printable key: interned class representatives, so semantically
  // equal elements get byte-identical keys within one backend instance.
  std::string key(const Elem& g) const;
  std::string print(const Elem& g) const { return key(g); }

  // psi image of the tuple-level base enumeration (injective on base tuples:
  // distinct positive tuples have distinct images, because a quotient class
  // contains at most one positive word — see positive_coset_member).
  std::vector<Elem> enumerate_base(const BaseSpec& spec, std::size_t per_factor) const;

  // true/false when exactly decidable, nullopt when the bounded search for a
  // positive class representative is exhausted without an answer.
  std::optional<bool> exact_base_member(const BaseSpec& spec, const Elem& g) const;

  // Exact-or-unknown oscillator membership: the decision route below at the
  // backend's default word budget; EvidenceNo maps to nullopt.
  std::optional<bool> exact_osc_member(const BaseSpec& spec, OscillatorExpr expr,
                                       const Elem& g) const;

  // Structural facts about the image chain psi(U_1) >= psi(U_2) >= ... for
  // the topology-axiom checker.
  static bool base_includes(const BaseSpec& inner, const BaseSpec& outer) {
    return inner.inverted == outer.inverted && inner.min_free >= outer.min_free;
  }
  static BaseSpec intersection_lower(const BaseSpec& a, const BaseSpec& b) {
    return BaseSpec{a.min_free > b.min_free ? a.min_free : b.min_free, a.inverted};
  }
  // The homomorphic image of a subsemigroup is a subsemigroup.
  static bool base_is_subsemigroup(const BaseSpec&) { return true; }
  static bool base_is_symmetric(const BaseSpec&) { return false; }
  // The integer part is central and conjugation acts trivially on classes
  // above the conjugator's support, so a deep enough window absorbs exactly.
  BaseSpec conjugation_absorber(const Elem& g, const BaseSpec& u) const {
    int beyond = g.cosets.empty() ? u.min_free : g.cosets.rbegin()->first + 1;
    return BaseSpec{beyond > u.min_free ? beyond : u.min_free, u.inverted};
  }

  // Decision route for g in psi((+-U_n)^k):
  //   1. a nonidentity class below min_free excludes g outright (every
  //      product of base factors is identity there);
  //   2. if every class of g is trivial and 1 <= k <= 2p-2, the only
  //      candidate preimage coordinates lie in (+-S)^k intersected with the
  //      relator's normal closure, which contains only e (each nonidentity
  //      closure member has a long relator subword, hence more than 2p-2
  //      sign blocks) — so g would have to be the identity;
  //   3. otherwise run a bounded preimage search: per-class candidate words
  //      plus kernel words on fresh coordinates, combined so the integer
  //      parts add up; a hit is assembled into per-slot factors and
  //      re-verified by multiplication.
  Ex0Decision decide_member(const BaseSpec& spec, OscillatorExpr expr, const Elem& g,
                            std::size_t word_budget) const;

  // The unique positive word in the class of `rep`. An already-positive
  // `rep` is returned immediately; otherwise the scan covers the one forced
  // length (the exponent-sum total, invariant under the relator closure) and
  // reports nullopt when no positive word exists or that length exceeds
  // `bound`. At most one exists: the quotient of two positive words lands in
  // the normal closure only at the identity.
  std::optional<Word> positive_coset_member(const Word& rep, std::size_t bound) const;

 private:
  const Word& canonical_rep(const Word& w) const;
  Word reduce_coset(const Word& w) const;

  int p_;
  std::size_t osc_word_budget_;
  OneRelatorPresentation pres_;
  DirectSumBackend tuples_;
  // First-seen interning of class representatives, bucketed by the exponent
  // pair invariant (xcount + ycount, (xcount - ycount) mod 2p), which is
  // constant on classes. Mutable cache: per-instance, single-threaded use.
  mutable std::map<std::pair<long long, long long>, std::vector<Word>> rep_buckets_;
};

}  // namespace osc
