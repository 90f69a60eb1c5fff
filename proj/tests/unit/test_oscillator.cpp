// Oscillator-set enumeration over the free-group backends: hand-computed
// small sets, the defining recursion, budget behavior, membership
// verification, inclusion scans, and the parity/duality laws.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "osc/free_backend.hpp"
#include "osc/oscillator.hpp"
#include "osc/word.hpp"

using namespace osc;

namespace {

std::set<std::string> keys_of(const BoundedSet<Word>& s) {
  std::set<std::string> out;
  for (const auto& e : s.entries) out.insert(e.key);
  return out;
}

}  // namespace

TEST_CASE("sign patterns and flips") {
  OscillatorExpr plain(3, false);
  CHECK(plain.str() == "(+-U)^3");
  CHECK(plain.sign_pattern() == std::vector<int>{+1, -1, +1});
  OscillatorExpr mirror = plain.flipped();
  CHECK(mirror.str() == "(-+U)^3");
  CHECK(mirror.sign_pattern() == std::vector<int>{-1, +1, -1});
  CHECK_THROWS(OscillatorExpr(0, false));
}

TEST_CASE("hand-computed level-1 and level-2 sets at budget 1") {
  FreeGroupBackend fb(Alphabet::free2());
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup();
  EnumBudget b1{1, 1000};
  Alphabet ab = fb.alphabet();

  // U restricted to words of length <= 1: {e, x, y}
  auto level1 = enumerate_oscillator(fb, sg, OscillatorExpr(1, false), b1);
  CHECK(keys_of(level1) == std::set<std::string>{"e", "x", "y"});
  auto level1m = enumerate_oscillator(fb, sg, OscillatorExpr(1, true), b1);
  CHECK(keys_of(level1m) == std::set<std::string>{"e", "x'", "y'"});

  // (+-U)^2 = U * U^-1 over {e,x,y}: e, x, y, x', y', x y', y x'
  auto level2 = enumerate_oscillator(fb, sg, OscillatorExpr(2, false), b1);
  CHECK(keys_of(level2) ==
        std::set<std::string>{"e", "x", "y", "x'", "y'", "x y'", "y x'"});
  // (-+U)^2 = U^-1 * U
  auto level2m = enumerate_oscillator(fb, sg, OscillatorExpr(2, true), b1);
  CHECK(keys_of(level2m) ==
        std::set<std::string>{"e", "x", "y", "x'", "y'", "x' y", "y' x"});
}

TEST_CASE("enumeration satisfies the defining recursion") {
  FreeGroupBackend fb(Alphabet::free2());
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup();
  EnumBudget budget{2, 100000};
  for (int n : {2, 3}) {
    for (bool mirror : {false, true}) {
      OscillatorExpr expr(n, mirror);
      auto full = enumerate_oscillator(fb, sg, expr, budget);
      // recompute as (first factor)^sign * enumerate(rest)
      std::set<std::string> recomputed;
      for_each_oscillator_product(fb, sg, expr, budget,
                                  [&](const Word& w) { recomputed.insert(fb.key(w)); });
      CHECK(keys_of(full) == recomputed);
    }
  }
}

TEST_CASE("budget monotonicity and element cap") {
  FreeGroupBackend fb(Alphabet::free2());
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup();
  OscillatorExpr expr(3, false);
  auto small = enumerate_oscillator(fb, sg, expr, {1, 100000});
  auto large = enumerate_oscillator(fb, sg, expr, {2, 100000});
  CHECK(small.size() < large.size());
  for (const auto& e : small.entries) CHECK(large.contains(e.key));
  CHECK_THROWS(enumerate_oscillator(fb, sg, expr, {2, 10}));
}

TEST_CASE("membership produces verified factorizations") {
  FreeGroupBackend fb(Alphabet::free2());
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup();
  Alphabet ab = fb.alphabet();
  OscillatorExpr expr(2, false);
  EnumBudget budget{2, 100000};

  auto hit = member_oscillator(fb, sg, expr, Word::parse(ab, "x y'"), budget);
  REQUIRE(hit.found);
  CHECK(verify_factorization(fb, expr, hit.factors, Word::parse(ab, "x y'")));

  auto miss = member_oscillator(fb, sg, expr, Word::parse(ab, "x' y"), budget);
  CHECK_FALSE(miss.found);
  // and the exact predicate agrees with both answers
  CHECK(exact_oscillator_member(fb, sg, expr, Word::parse(ab, "x y'")) == true);
  CHECK(exact_oscillator_member(fb, sg, expr, Word::parse(ab, "x' y")) == false);
}

TEST_CASE("inclusion scan finds the alternating witness and re-verifies it") {
  FreeGroupBackend fb(Alphabet::free2());
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup();
  auto scan = scan_inclusion(fb, sg, OscillatorExpr(2, true), sg, OscillatorExpr(2, false),
                             {1, 100000});
  REQUIRE(scan.refutation.has_value());
  CHECK(scan.refutation->right_exact);
  CHECK(verify_factorization(fb, OscillatorExpr(2, true), scan.refutation->factors,
                             scan.refutation->element));
  CHECK_FALSE(free_semigroup_osc_member(scan.refutation->element, OscillatorExpr(2, false)));

  // reflexive scans never refute
  auto self = scan_inclusion(fb, sg, OscillatorExpr(2, false), sg, OscillatorExpr(2, false),
                             {1, 100000});
  CHECK_FALSE(self.refutation.has_value());
  CHECK(self.all_exact);
}

TEST_CASE("parity law and mirror duality on mixed bases") {
  FreeGroupBackend fb(Alphabet::free2());
  Alphabet ab = fb.alphabet();
  std::vector<Word> elems{Word::parse(ab, "x"), Word::parse(ab, "x y"), Word::parse(ab, "y'")};
  auto expl = FreeGroupBackend::BaseSpec::explicit_set(elems, false);
  auto expl_inv = FreeGroupBackend::BaseSpec::explicit_set(elems, true);
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup(false);
  auto sg_inv = FreeGroupBackend::BaseSpec::free_semigroup(true);
  EnumBudget budget{2, 100000};

  for (int n : {1, 2, 3, 4}) {
    for (bool mirror : {false, true}) {
      OscillatorExpr expr(n, mirror);
      CHECK(parity_check(fb, expl, expr, budget));
      CHECK(parity_check(fb, sg, expr, budget));
      // inverted base at expr == plain base at flipped expr
      auto a = enumerate_oscillator(fb, expl_inv, expr, budget);
      auto b = enumerate_oscillator(fb, expl, expr.flipped(), budget);
      CHECK(keys_of(a) == keys_of(b));
      auto c = enumerate_oscillator(fb, sg_inv, expr, budget);
      auto d = enumerate_oscillator(fb, sg, expr.flipped(), budget);
      CHECK(keys_of(c) == keys_of(d));
    }
  }
}

TEST_CASE("free-semigroup block membership agrees with enumeration") {
  FreeGroupBackend fb(Alphabet::free2());
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup();
  EnumBudget budget{3, 500000};
  for (int n : {1, 2, 3}) {
    for (bool mirror : {false, true}) {
      OscillatorExpr expr(n, mirror);
      auto set = enumerate_oscillator(fb, sg, expr, budget);
      long long disagreements = 0;
      for_each_reduced_word(2, 3, [&](const Word& w) {
        const bool pred = free_semigroup_osc_member(w, expr);
        if (pred != set.contains(fb.key(w))) ++disagreements;
        if (pred) {
          auto factors = free_semigroup_osc_factors(w, expr);
          REQUIRE(factors.has_value());
          CHECK(verify_factorization(fb, expr, *factors, w));
        }
      });
      CHECK(disagreements == 0);
    }
  }
}

TEST_CASE("integer-line backend: subgroup base gives oscillation one") {
  IntLineBackend ib;
  IntLineBackend::BaseSpec spec{1, false};  // 2Z
  EnumBudget budget{3, 10000};
  auto set = enumerate_oscillator(ib, spec, OscillatorExpr(2, false), budget);
  for (const auto& e : set.entries) {
    CHECK(e.value % 2 == 0);
    CHECK(exact_oscillator_member(ib, spec, OscillatorExpr(2, true), e.value) == true);
  }
  CHECK(set.contains(ib.key(-4)));
  CHECK(exact_oscillator_member(ib, spec, OscillatorExpr(1, false), 3) == false);
}
