// Finitely supported tuples over the rank-2 free group: literal syntax,
// coordinatewise group laws, windowed base enumeration, and the exact
// coordinatewise oscillator-membership predicate.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "osc/directsum.hpp"

using namespace osc;

namespace {

const Alphabet& ab() {
  static Alphabet a = Alphabet::free2();
  return a;
}

TupleElement random_tuple(std::mt19937_64& rng, const std::vector<Word>& pool) {
  TupleElement::Map m;
  const int support = static_cast<int>(rng() % 3);
  for (int i = 0; i < support; ++i) {
    m[static_cast<int>(rng() % 4)] = pool[rng() % pool.size()];
  }
  return TupleElement::from_map(std::move(m));
}

}  // namespace

TEST_CASE("tuple literals round-trip") {
  for (const char* lit : {"{}", "{1: \"x y'\"}", "{0: \"x\", 3: \"y y\"}"}) {
    TupleElement t = parse_tuple(ab(), lit);
    CHECK(tuple_str(t, ab()) == lit);
    CHECK(parse_tuple(ab(), tuple_str(t, ab())) == t);
  }
  CHECK(parse_tuple(ab(), "{}").is_identity());
  CHECK_THROWS(parse_tuple(ab(), "{-1: \"x\"}"));
  CHECK_THROWS(parse_tuple(ab(), "{1: \"x\""));

  // identity-valued coordinates are dropped on construction
  TupleElement t = TupleElement::from_map({{2, Word::parse(ab(), "x x'")}, {5, Word::parse(ab(), "y")}});
  CHECK(t.support_size() == 1);
  CHECK(t.min_support() == 5);
  CHECK(t.max_support() == 5);
  CHECK(t.at(2).empty());
  CHECK(t.at(5) == Word::parse(ab(), "y"));
  CHECK(t.total_length() == 1);
}

TEST_CASE("group laws hold coordinatewise") {
  std::vector<Word> pool = reduced_words(2, 2);
  std::mt19937_64 rng(11);
  const TupleElement e;
  for (int trial = 0; trial < 300; ++trial) {
    TupleElement u = random_tuple(rng, pool);
    TupleElement v = random_tuple(rng, pool);
    TupleElement w = random_tuple(rng, pool);

    TupleElement p = tuple_product(u, v);
    std::set<int> coords;
    for (auto& [c, _] : u.coords()) coords.insert(c);
    for (auto& [c, _] : v.coords()) coords.insert(c);
    for (int c : coords) CHECK(p.at(c) == u.at(c) * v.at(c));

    CHECK(tuple_product(u, e) == u);
    CHECK(tuple_product(e, u) == u);
    CHECK(tuple_product(u, tuple_inverse(u)) == e);
    CHECK(tuple_product(tuple_inverse(u), u) == e);
    CHECK(tuple_product(tuple_product(u, v), w) == tuple_product(u, tuple_product(v, w)));
  }
  // cancellation inside one coordinate
  CHECK(tuple_product(parse_tuple(ab(), "{1: \"x\"}"), parse_tuple(ab(), "{1: \"x'\"}")) == e);
}

TEST_CASE("windowed base enumeration") {
  DirectSumBackend ds;
  auto spec = DirectSumBackend::BaseSpec::nbhd(1);
  auto base = ds.enumerate_base(spec, 2);
  // window [1,3), positive coordinates, total length <= 2:
  // {} (1) + singles of length 1 (4) + singles of length 2 (8) + pairs (4)
  CHECK(base.size() == 17);
  std::set<std::string> keys;
  for (const auto& t : base) {
    CHECK(keys.insert(ds.key(t)).second);
    CHECK(*ds.exact_base_member(spec, t));
    CHECK(t.total_length() <= 2);
    if (!t.is_identity()) {
      CHECK(*t.min_support() >= 1);
      CHECK(*t.max_support() < 3);
    }
  }
  CHECK(keys.count("{}") == 1);
  CHECK(keys.count("{1: \"x y\"}") == 1);
  CHECK(keys.count("{1: \"x\", 2: \"y\"}") == 1);
  CHECK(keys.count("{1: \"x'\"}") == 0);

  // the inverted base is exactly the set of inverses of the plain base
  auto inv_base = ds.enumerate_base(DirectSumBackend::BaseSpec::nbhd(1, true), 2);
  std::set<std::string> inv_keys;
  for (const auto& t : inv_base) inv_keys.insert(ds.key(t));
  std::set<std::string> expected;
  for (const auto& t : base) expected.insert(ds.key(tuple_inverse(t)));
  CHECK(inv_keys == expected);
}

TEST_CASE("exact base membership") {
  DirectSumBackend ds;
  auto u1 = DirectSumBackend::BaseSpec::nbhd(1);
  auto u2 = DirectSumBackend::BaseSpec::nbhd(2);
  auto u1inv = DirectSumBackend::BaseSpec::nbhd(1, true);

  CHECK(*ds.exact_base_member(u1, TupleElement{}));
  CHECK(*ds.exact_base_member(u1, parse_tuple(ab(), "{1: \"x\"}")));
  CHECK_FALSE(*ds.exact_base_member(u2, parse_tuple(ab(), "{1: \"x\"}")));
  CHECK(*ds.exact_base_member(u2, parse_tuple(ab(), "{7: \"x y\"}")));
  CHECK_FALSE(*ds.exact_base_member(u1, parse_tuple(ab(), "{0: \"x\"}")));
  CHECK_FALSE(*ds.exact_base_member(u1, parse_tuple(ab(), "{1: \"x'\"}")));
  CHECK(*ds.exact_base_member(u1inv, parse_tuple(ab(), "{1: \"x'\"}")));
  CHECK_FALSE(*ds.exact_base_member(u1, parse_tuple(ab(), "{1: \"x\", 2: \"y'\"}")));
}

TEST_CASE("coordinatewise oscillator membership is exact") {
  DirectSumBackend ds;
  auto u1 = DirectSumBackend::BaseSpec::nbhd(1);
  const OscillatorExpr plain2(2, false), mirror2(2, true);

  // per-coordinate facts: x y' lies in (+-S)^2 but not (-+S)^2,
  // and x' y the other way around
  CHECK(*ds.exact_osc_member(u1, plain2, parse_tuple(ab(), "{1: \"x y'\"}")));
  CHECK_FALSE(*ds.exact_osc_member(u1, mirror2, parse_tuple(ab(), "{1: \"x y'\"}")));
  CHECK(*ds.exact_osc_member(u1, mirror2, parse_tuple(ab(), "{1: \"x' y\"}")));
  CHECK_FALSE(*ds.exact_osc_member(u1, plain2, parse_tuple(ab(), "{1: \"x' y\"}")));

  // all coordinates must pass
  CHECK(*ds.exact_osc_member(u1, plain2, parse_tuple(ab(), "{1: \"x y'\", 3: \"y x'\"}")));
  CHECK_FALSE(*ds.exact_osc_member(u1, plain2, parse_tuple(ab(), "{1: \"x y'\", 3: \"x' y\"}")));

  // support must start at or above the window
  CHECK_FALSE(*ds.exact_osc_member(u1, plain2, parse_tuple(ab(), "{0: \"x y'\"}")));
  CHECK(*ds.exact_osc_member(DirectSumBackend::BaseSpec::nbhd(0), plain2,
                             parse_tuple(ab(), "{0: \"x y'\"}")));

  // agreement with direct enumeration at stage 2
  auto spec = u1;
  std::set<std::string> enumerated;
  for_each_oscillator_product(ds, spec, plain2, EnumBudget{1, 100000},
                              [&](const TupleElement& t) { enumerated.insert(ds.key(t)); });
  for (const TupleElement& t : ds.enumerate_ball(1, 2, 2)) {
    if (enumerated.count(ds.key(t))) CHECK(*ds.exact_osc_member(spec, plain2, t));
  }
  CHECK(enumerated.count("{1: \"x y'\"}") == 1);
}

TEST_CASE("ambient ball enumeration") {
  DirectSumBackend ds;
  auto ball = ds.enumerate_ball(1, 1, 1);
  // support inside {1}, reduced words of total length <= 1
  CHECK(ball.size() == 5);
  CHECK(ball.front().is_identity());
  std::set<std::string> keys;
  for (const auto& t : ball) keys.insert(ds.key(t));
  CHECK(keys == std::set<std::string>{"{}", "{1: \"x\"}", "{1: \"x'\"}", "{1: \"y\"}", "{1: \"y'\"}"});
}

TEST_CASE("conjugation absorber commutes past the window") {
  DirectSumBackend ds;
  std::vector<Word> pool = reduced_words(2, 2);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    TupleElement x = random_tuple(rng, pool);
    auto u = DirectSumBackend::BaseSpec::nbhd(1 + static_cast<int>(rng() % 3));
    auto v = ds.conjugation_absorber(x, u);
    CHECK(DirectSumBackend::base_includes(v, u));
    TupleElement xinv = tuple_inverse(x);
    for (const TupleElement& g : ds.enumerate_base(v, 2)) {
      CHECK(tuple_product(xinv, tuple_product(g, x)) == g);
    }
  }
}
