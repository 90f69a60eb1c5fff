// Word-problem decision procedure: agreement with the bounded closure
// oracle, invariance properties, strategy independence, trace replay, and
// input validation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "osc/dehn.hpp"
#include "osc/word.hpp"

using namespace osc;

namespace {

OneRelatorPresentation builtin(int p) {
  Alphabet ab = Alphabet::free2();
  return OneRelatorPresentation::make(ab, Word::parse(ab, "x y'"), p);
}

}  // namespace

TEST_CASE("known trivial and nontrivial words") {
  auto pres = builtin(2);
  Alphabet ab = pres.alphabet;
  CHECK(is_trivial_in_quotient(pres, Word()));
  CHECK(is_trivial_in_quotient(pres, pres.relator));
  CHECK(is_trivial_in_quotient(pres, pres.relator_inv));
  CHECK(is_trivial_in_quotient(pres, pow(pres.relator, 3)));
  // conjugates of the relator
  for (const char* g : {"x", "y", "x y", "y' x"}) {
    Word c = Word::parse(ab, g);
    CHECK(is_trivial_in_quotient(pres, c * pres.relator * c.inverse()));
  }
  CHECK_FALSE(is_trivial_in_quotient(pres, Word::parse(ab, "x")));
  CHECK_FALSE(is_trivial_in_quotient(pres, Word::parse(ab, "x y'")));  // the root itself
  CHECK_FALSE(is_trivial_in_quotient(pres, Word::parse(ab, "x y")));
}

TEST_CASE("agreement with the closure oracle on all short words") {
  for (int p : {2, 3}) {
    auto pres = builtin(p);
    auto ball = normal_closure_oracle(pres, 10);
    long long disagreements = 0;
    for_each_reduced_word(2, 6, [&](const Word& w) {
      if (is_trivial_in_quotient(pres, w) != ball.contains(w)) ++disagreements;
    });
    CHECK(disagreements == 0);
  }
}

TEST_CASE("triviality is invariant under conjugation and inversion") {
  auto pres = builtin(2);
  std::mt19937_64 rng(4242);
  auto conjugators = reduced_words(2, 3);
  int trivial_seen = 0;
  for_each_reduced_word(2, 6, [&](const Word& w) {
    // sample: testing all pairs would be slow and adds nothing
    if (rng() % 17 != 0) return;
    const bool t = is_trivial_in_quotient(pres, w);
    if (t) ++trivial_seen;
    CHECK(is_trivial_in_quotient(pres, w.inverse()) == t);
    const Word& g = conjugators[rng() % conjugators.size()];
    CHECK(is_trivial_in_quotient(pres, g * w * g.inverse()) == t);
  });
  CHECK(trivial_seen > 0);
}

TEST_CASE("products of trivial words stay trivial") {
  auto pres = builtin(2);
  Alphabet ab = pres.alphabet;
  std::vector<Word> trivials{pres.relator, pres.relator_inv,
                             Word::parse(ab, "x") * pres.relator * Word::parse(ab, "x'"),
                             Word::parse(ab, "y y") * pres.relator_inv * Word::parse(ab, "y' y'")};
  for (const Word& a : trivials) {
    for (const Word& b : trivials) {
      CHECK(is_trivial_in_quotient(pres, a * b));
    }
  }
}

TEST_CASE("decision is strategy independent") {
  for (int p : {2, 3}) {
    auto pres = builtin(p);
    for_each_reduced_word(2, 7, [&](const Word& w) {
      const bool a = dehn_reduce(pres, w, MatchStrategy::LongestLeftmost).first.empty();
      const bool b = dehn_reduce(pres, w, MatchStrategy::Leftmost).first.empty();
      const bool c = dehn_reduce(pres, w, MatchStrategy::RightmostLongest).first.empty();
      CHECK(a == b);
      CHECK(a == c);
    });
  }
}

TEST_CASE("every trace replays against its input") {
  auto pres = builtin(2);
  long long replayed = 0;
  for_each_reduced_word(2, 8, [&](const Word& w) {
    auto [out, trace] = dehn_reduce(pres, w);
    if (trace.steps.empty()) return;
    ++replayed;
    CHECK(replay_trace(pres, w, trace, out));
    // a diverging final word must be rejected
    CHECK_FALSE(replay_trace(pres, w, trace, out.empty() ? pres.relator : Word()));
  });
  CHECK(replayed > 0);
}

TEST_CASE("steps strictly shorten and match lengths") {
  auto pres = builtin(3);
  Word w = pow(pres.relator, 2) * Word::parse(pres.alphabet, "x y x");
  auto [out, trace] = dehn_reduce(pres, w);
  std::size_t prev = w.size();
  for (const DehnStep& s : trace.steps) {
    CHECK(s.matched.size() >= pres.min_match_length());
    CHECK(s.replacement.size() < s.matched.size());
    CHECK(s.result_length < prev);
    prev = s.result_length;
  }
  CHECK(out.size() == prev);
}

TEST_CASE("presentation file parsing") {
  std::istringstream in("gens: x y\nrelator: x y'\npower: 2\n");
  auto pres = OneRelatorPresentation::parse(in);
  CHECK(pres.power == 2);
  CHECK(pres.root == Word::parse(pres.alphabet, "x y'"));
  CHECK(pres.relator == Word::parse(pres.alphabet, "x y' x y'"));
  // minimal qualifying match: strictly more than (power-1)*|root| letters
  CHECK(pres.min_match_length() == 3);

  CHECK_THROWS(OneRelatorPresentation::make(Alphabet::free2(),
                                            Word::parse(Alphabet::free2(), "x y'"), 1));
  CHECK_THROWS(OneRelatorPresentation::make(Alphabet::free2(), Word(), 2));
  // not cyclically reduced
  CHECK_THROWS(OneRelatorPresentation::make(Alphabet::free2(),
                                            Word::parse(Alphabet::free2(), "x y x'"), 2));
}

TEST_CASE("closure oracle basics") {
  auto pres = builtin(2);
  auto ball = normal_closure_oracle(pres, 8);
  CHECK(ball.contains(Word()));
  CHECK(ball.contains(pres.relator));
  CHECK(ball.contains(pow(pres.relator, 2)));
  CHECK_FALSE(ball.contains(Word::parse(pres.alphabet, "x")));
  for (const Word& w : ball.members) {
    CHECK(w.size() <= 8);
    CHECK(is_trivial_in_quotient(pres, w));  // soundness
  }
  CHECK_THROWS(normal_closure_oracle(pres, 3));  // below the relator length
}
