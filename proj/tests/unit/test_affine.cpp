// Dyadic affine maps: exact arithmetic, the generator relation, closed-form
// set membership against brute-force word enumeration, and constructive
// witnesses.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unordered_set>

#include "osc/affine.hpp"
#include "osc/word.hpp"

using namespace osc;

TEST_CASE("dyadic normalization and arithmetic") {
  CHECK(Dyadic(BigInt(2), 2) == Dyadic(BigInt(1), 1));  // 2/4 = 1/2
  CHECK(Dyadic(BigInt(0), 5) == Dyadic());
  CHECK(Dyadic(BigInt(3), 0).str() == "3");
  CHECK(Dyadic(BigInt(1), 1).str() == "1/2^1");
  CHECK(Dyadic::parse("1/2") == Dyadic(BigInt(1), 1));
  CHECK(Dyadic::parse("1/2^3") == Dyadic(BigInt(1), 3));
  CHECK(Dyadic::parse("-5") == Dyadic(BigInt(-5), 0));
  CHECK_THROWS(Dyadic::parse("1/3"));

  Dyadic a = Dyadic::parse("3/2^2");   // 3/4
  Dyadic b = Dyadic::parse("1/2^2");   // 1/4
  CHECK(a + b == Dyadic::from_int(1));
  CHECK(a - a == Dyadic());
  CHECK(a.scaled_pow2(2) == Dyadic::from_int(3));
  CHECK(a.scaled_pow2(-1) == Dyadic::parse("3/2^3"));
}

TEST_CASE("generators, composition order, and the defining relation") {
  AffMap a = AffMap::gen_a();
  AffMap b = AffMap::gen_b();
  Alphabet ab = Alphabet::affine_ab();

  // "ab": rightmost letter acts first -> x -> 2x + 2
  AffMap f = word_to_map(Word::parse(ab, "a b"));
  CHECK(f == compose(a, b));
  CHECK(f.log_scale == 1);
  CHECK(f.shift == Dyadic::from_int(2));
  CHECK(f.apply(Dyadic::from_int(3)) == Dyadic::from_int(8));

  // the relation a b = b^2 a
  CHECK(word_to_map(Word::parse(ab, "a b")) == word_to_map(Word::parse(ab, "b b a")));

  // inverses compose to the identity
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    AffMap g{static_cast<long long>(rng() % 9) - 4,
             Dyadic(BigInt(static_cast<long long>(rng() % 21) - 10),
                    static_cast<unsigned>(rng() % 4))};
    CHECK(compose(g, invert_map(g)) == AffMap::identity());
    CHECK(compose(invert_map(g), g) == AffMap::identity());
    CHECK(invert_map(invert_map(g)) == g);
  }
}

TEST_CASE("map literal round-trip") {
  for (const char* lit : {"a=0,t=0", "a=3,t=-7", "a=-2,t=5/2^3"}) {
    AffMap f = AffMap::parse(lit);
    CHECK(AffMap::parse(f.str()) == f);
  }
  CHECK_THROWS(AffMap::parse("nonsense"));
}

TEST_CASE("semigroup closed form against brute force") {
  Alphabet ab = Alphabet::affine_ab();
  std::unordered_set<std::string> positive_maps;
  for (const Word& w : positive_words(2, 8)) {
    AffMap f = word_to_map(w);
    positive_maps.insert(f.str());
    CHECK(semigroup_member(f));  // soundness on every positive word
    auto witness = semigroup_witness_word(f);
    REQUIRE(witness.has_value());
    CHECK(witness->is_positive());
    CHECK(word_to_map(*witness) == f);
  }
  // completeness at small coordinates: every member map with log_scale <= 2
  // and integer shift <= 5 is realized by a positive word of length <= 8
  for (long long k = 0; k <= 2; ++k) {
    for (long long t = 0; t <= 5; ++t) {
      AffMap f{k, Dyadic::from_int(t)};
      CHECK(semigroup_member(f));
      CHECK(positive_maps.count(f.str()) == 1);
    }
  }
  // non-members
  CHECK_FALSE(semigroup_member(AffMap{-1, Dyadic::from_int(0)}));
  CHECK_FALSE(semigroup_member(AffMap{1, Dyadic::from_int(-2)}));
  CHECK_FALSE(semigroup_member(AffMap{1, Dyadic::parse("1/2")}));
  CHECK(semigroup_member(AffMap::identity()));
}

TEST_CASE("product-set closed forms against brute force") {
  Alphabet ab = Alphabet::affine_ab();
  std::vector<AffMap> s_maps;
  {
    std::unordered_set<std::string> seen;
    for (const Word& w : positive_words(2, 6)) {
      AffMap f = word_to_map(w);
      if (seen.insert(f.str()).second) s_maps.push_back(f);
    }
  }
  std::unordered_set<std::string> ssinv, sinvs;
  for (const AffMap& s1 : s_maps) {
    for (const AffMap& s2 : s_maps) {
      AffMap u = compose(s1, invert_map(s2));
      AffMap v = compose(invert_map(s1), s2);
      ssinv.insert(u.str());
      sinvs.insert(v.str());
      CHECK(product_set_member(u, ProductSide::SSinv));  // soundness
      CHECK(product_set_member(v, ProductSide::SinvS));
    }
  }

  // the canonical separator: x -> x + 1/2 lies in SinvS but not SSinv
  AffMap half{0, Dyadic::parse("1/2")};
  CHECK(product_set_member(half, ProductSide::SinvS));
  CHECK_FALSE(product_set_member(half, ProductSide::SSinv));
  CHECK(sinvs.count(half.str()) == 1);
  CHECK(ssinv.count(half.str()) == 0);

  // witnesses recompose and stay in the semigroup
  std::mt19937_64 rng(17);
  int members_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    AffMap f{static_cast<long long>(rng() % 9) - 4,
             Dyadic(BigInt(static_cast<long long>(rng() % 41) - 20),
                    static_cast<unsigned>(rng() % 4))};
    for (ProductSide side : {ProductSide::SSinv, ProductSide::SinvS}) {
      const bool member = product_set_member(f, side);
      auto wit = product_set_witness(f, side);
      CHECK(member == wit.has_value());
      if (wit) {
        ++members_seen;
        CHECK(semigroup_member(wit->first));
        CHECK(semigroup_member(wit->second));
        AffMap recomposed = side == ProductSide::SSinv
                                ? compose(wit->first, invert_map(wit->second))
                                : compose(invert_map(wit->first), wit->second);
        CHECK(recomposed == f);
      }
    }
  }
  CHECK(members_seen > 0);
}

TEST_CASE("affine backend base enumeration and exact stages") {
  AffBackend aff;
  AffBackend::BaseSpec plain{false};
  auto base = aff.enumerate_base(plain, 3);
  // distinct maps of positive words of length <= 3: the 15 words collapse
  // only through a b = b^2 a (the single length-3 collision), leaving 14
  CHECK(base.size() == 14);
  CHECK(base.front() == AffMap::identity());
  for (const AffMap& f : base) CHECK(semigroup_member(f));

  // exact stage predicate: level 3 and beyond admit everything
  AffMap half{0, Dyadic::parse("1/2")};
  CHECK(aff.exact_osc_member(plain, OscillatorExpr(1, false), half) == false);
  CHECK(aff.exact_osc_member(plain, OscillatorExpr(2, false), half) == false);
  CHECK(aff.exact_osc_member(plain, OscillatorExpr(2, true), half) == true);
  CHECK(aff.exact_osc_member(plain, OscillatorExpr(3, false), half) == true);
  CHECK(aff.exact_osc_member(plain, OscillatorExpr(5, true), half) == true);
}
