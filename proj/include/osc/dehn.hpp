#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "osc/word.hpp"

namespace osc {

/// One-relator presentation with torsion: < alphabet | root^power >, power >= 2,
/// root nonempty and cyclically reduced. Words whose every letter sequence
/// equals the identity in the quotient are exactly the members of the normal
/// closure N of root^power.
struct OneRelatorPresentation {
  Alphabet alphabet;
  Word root;
  int power = 2;
  Word relator;      // root^power, reduced (concatenation is cancellation-free)
  Word relator_inv;  // relator.inverse()

  static OneRelatorPresentation make(Alphabet alphabet, Word root, int power);

  /// Text format, three lines:
  ///   gens: x y
  ///   relator: x y'
  ///   power: 2
  static OneRelatorPresentation parse(std::istream& in);
  static OneRelatorPresentation load(const std::string& path);

  /// A subword match must be strictly longer than (power-1)*|relator|/power
  /// to qualify for replacement. Both bounds are integers here since
  /// |relator| = power * |root|.
  std::size_t min_match_length() const;
};

/// How a qualifying match is chosen among candidates. The decision procedure
/// is strategy independent; alternatives exist so tests can confirm that.
enum class MatchStrategy {
  LongestLeftmost,  // longest match, ties broken by leftmost position
  Leftmost,         // leftmost position admitting any qualifying match (longest there)
  RightmostLongest, // longest match, ties broken by rightmost position
};

/// A qualifying subword occurrence: w contains `subword` at `pos`, and
/// `subword` occurs contiguously in relator^(+1|-1) at `relator_offset`.
/// `complement` satisfies subword * complement == e in the quotient and is
/// strictly shorter than `subword`.
struct LongSubword {
  std::size_t pos = 0;
  Word subword;
  Word complement;
  bool relator_inverted = false;
  std::size_t relator_offset = 0;
};

struct DehnStep {
  std::size_t pos = 0;
  Word matched;
  Word replacement;  // complement.inverse(); equals `matched` in the quotient
  bool relator_inverted = false;
  std::size_t relator_offset = 0;
  std::size_t result_length = 0;
};

struct DehnTrace {
  std::vector<DehnStep> steps;
};

std::optional<LongSubword> long_subword_search(const OneRelatorPresentation& pres, const Word& w,
                                               MatchStrategy strategy = MatchStrategy::LongestLeftmost);

/// Repeatedly replaces qualifying matches until none remains. Every step
/// strictly shortens the word, and the result equals the input in the
/// quotient. The result is empty iff the input lies in N.
std::pair<Word, DehnTrace> dehn_reduce(const OneRelatorPresentation& pres, const Word& w,
                                       MatchStrategy strategy = MatchStrategy::LongestLeftmost);

bool is_trivial_in_quotient(const OneRelatorPresentation& pres, const Word& w);

/// Re-verifies a trace against the input word using only letter-level
/// checks: each matched subword occurs at its position, matches the relator
/// at the recorded offset, and the replacement is the reduced complement
/// inverse. Returns false on any mismatch.
bool replay_trace(const OneRelatorPresentation& pres, const Word& input, const DehnTrace& trace,
                  const Word& expected_output);

/// Bounded under-approximation of the normal closure N of relator^power:
/// the closure of {g * relator^(+-1) * g^-1 : |g| <= length_bound - |relator|}
/// under products, truncated to reduced length <= length_bound.
/// Membership of a word in `members` implies true membership in N; absence
/// proves nothing. Throws on element-count overflow instead of truncating.
struct NormalClosureBall {
  std::size_t length_bound = 0;
  std::size_t conjugator_bound = 0;
  std::unordered_set<Word> members;  // contains the identity

  bool contains(const Word& w) const { return members.count(w) > 0; }
};

NormalClosureBall normal_closure_oracle(const OneRelatorPresentation& pres, std::size_t length_bound,
                                        std::size_t max_elements = 4'000'000);

}  // namespace osc
