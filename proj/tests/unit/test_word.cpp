// Free-group word arithmetic against independent oracles: a rescan-based
// reducer, exhaustive algebraic laws at short lengths, and randomized laws
// at moderate lengths.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "osc/word.hpp"

using namespace osc;

namespace {

// Oracle reducer: append letters one at a time, rescanning for adjacent
// cancellations after every append. Quadratic and independent of the
// library's single-pass stack reduction.
std::vector<Letter> rescan_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  for (const Letter& l : letters) {
    out.push_back(l);
    bool changed = true;
    while (changed && out.size() >= 2) {
      changed = false;
      for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i].cancels(out[i + 1])) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(i),
                    out.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          changed = true;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<Letter> random_letters(std::mt19937_64& rng, int len, int num_gens) {
  std::vector<Letter> out;
  for (int i = 0; i < len; ++i) {
    out.push_back(Letter{static_cast<int>(rng() % static_cast<unsigned>(num_gens)),
                         rng() % 2 == 0 ? +1 : -1});
  }
  return out;
}

}  // namespace

TEST_CASE("reduction matches the rescan oracle on random letter strings") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 2000; ++trial) {
    const int len = static_cast<int>(rng() % 12);
    auto letters = random_letters(rng, len, 2);
    Word w = Word::reduce(letters);
    auto oracle = rescan_reduce(letters);
    REQUIRE(w.letters() == oracle);
  }
}

TEST_CASE("parse and print round-trip") {
  Alphabet ab = Alphabet::free2();
  for (const char* text : {"e", "x", "x'", "x y' x y'", "y y x' x'"}) {
    Word w = Word::parse(ab, text);
    CHECK(Word::parse(ab, w.str(ab)) == w);
  }
  CHECK(Word::parse(ab, "x x'").empty());
  CHECK(Word::parse(ab, "x^-1") == Word::parse(ab, "x'"));
}

TEST_CASE("group laws exhaustively at short lengths") {
  // identity, inverses, and associativity over all pairs/triples of reduced
  // words of length <= 3 (53 words, 148877 triples).
  auto words = reduced_words(2, 3);
  REQUIRE(words.size() == 53);
  Word e;
  for (const Word& a : words) {
    CHECK(a * e == a);
    CHECK(e * a == a);
    CHECK((a * a.inverse()).empty());
    CHECK(a.inverse().inverse() == a);
  }
  for (const Word& a : words) {
    for (const Word& b : words) {
      CHECK((a * b).inverse() == b.inverse() * a.inverse());
      for (const Word& c : words) {
        CHECK((a * b) * c == a * (b * c));
      }
    }
  }
}

TEST_CASE("group laws on random longer words") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 500; ++trial) {
    Word a = Word::reduce(random_letters(rng, 6, 2));
    Word b = Word::reduce(random_letters(rng, 6, 2));
    Word c = Word::reduce(random_letters(rng, 6, 2));
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).inverse() == b.inverse() * a.inverse());
    CHECK(pow(a, 3) == a * a * a);
    CHECK(pow(a, -2) == (a * a).inverse());
  }
}

TEST_CASE("cyclic reduction recomposes") {
  Alphabet ab = Alphabet::free2();
  auto [core, conj] = Word::parse(ab, "x y x'").cyclic_reduce();
  CHECK(core == Word::parse(ab, "y"));
  CHECK(conj == Word::parse(ab, "x"));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    Word w = Word::reduce(random_letters(rng, 8, 2));
    auto [c2, g2] = w.cyclic_reduce();
    CHECK(g2 * c2 * g2.inverse() == w);
    if (!c2.empty()) {
      CHECK_FALSE(c2.letters().front().cancels(c2.letters().back()));
    }
  }
}

TEST_CASE("blocks partition the word by sign") {
  Alphabet ab = Alphabet::free2();
  Word w = Word::parse(ab, "x y x' y' x");
  auto blocks = w.blocks();
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0].sign == +1);
  CHECK(blocks[0].length == 2);
  CHECK(blocks[1].sign == -1);
  CHECK(blocks[1].length == 2);
  CHECK(blocks[2].sign == +1);
  CHECK(blocks[2].length == 1);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    Word v = Word::reduce(random_letters(rng, 10, 2));
    std::size_t total = 0;
    int prev_sign = 0;
    for (const Block& b : v.blocks()) {
      CHECK(b.offset == total);
      CHECK(b.length >= 1);
      CHECK(b.sign != prev_sign);
      prev_sign = b.sign;
      total += b.length;
    }
    CHECK(total == v.size());
  }
}

TEST_CASE("exponent sums and positivity") {
  Alphabet ab = Alphabet::free2();
  Word w = Word::parse(ab, "x y' x y'");
  CHECK(w.exponent_sum(0) == 2);
  CHECK(w.exponent_sum(1) == -2);
  CHECK_FALSE(w.is_positive());
  CHECK(Word::parse(ab, "x y x").is_positive());
  CHECK(Word().is_positive());
}

TEST_CASE("shortlex enumeration is complete, duplicate-free, and ordered") {
  Alphabet ab = Alphabet::free2();
  auto words = reduced_words(2, 3);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(seen.insert(words[i].str(ab)).second);
    if (i > 0) CHECK(Word::shortlex_less(words[i - 1], words[i]));
  }
  // counts: 1 + 4 + 12 + 36
  CHECK(words.size() == 53);

  // the DFS streaming variant visits the same set
  std::set<std::string> streamed;
  for_each_reduced_word(2, 3, [&](const Word& w) { streamed.insert(w.str(ab)); });
  CHECK(streamed == seen);

  auto positives = positive_words(2, 3);
  CHECK(positives.size() == 1 + 2 + 4 + 8);
  for (const Word& w : positives) CHECK(w.is_positive());
}
