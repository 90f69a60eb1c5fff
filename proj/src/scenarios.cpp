#include "osc/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_set>
#include <utility>

#include "osc/affine.hpp"
#include "osc/dehn.hpp"
#include "osc/directsum.hpp"
#include "osc/ex0.hpp"
#include "osc/free_backend.hpp"
#include "osc/oscillator.hpp"
#include "osc/pontriagin.hpp"
#include "osc/version.hpp"
#include "osc/word.hpp"

namespace osc {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string kind_tag(BoundKind k) { return bound_kind_name(k); }

std::string estimate_line(const Estimate& e) {
  std::string out = e.quantity + " estimate " + e.interval_str() + " (lower " +
                    kind_tag(e.lower_kind);
  if (e.upper) out += ", upper " + kind_tag(e.upper_kind);
  out += "); budget: " + e.budget_desc;
  return out;
}

void append_records(Certificate& cert, const Estimate& e) {
  for (const std::string& r : e.records) cert.notes.push_back(e.quantity + ": " + r);
}

// ---------------------------------------------------------------------------
// co61: at stage 2p-2, the two oscillator sets of the positive semigroup in
// the free group meet the relator normal closure only at the identity, for
// every word up to the length budget.
// ---------------------------------------------------------------------------

struct Co61Data {
  long long scanned = 0;
  long long members = 0;
  std::vector<Word> counterexamples;
};

Co61Data run_co61_scan(int p, int max_len) {
  Co61Data res;
  Alphabet ab = Alphabet::free2();
  OneRelatorPresentation pres = OneRelatorPresentation::make(ab, Word::parse(ab, "x y'"), p);
  OscillatorExpr plain(2 * p - 2, false);
  OscillatorExpr mirror(2 * p - 2, true);
  for_each_reduced_word(2, max_len, [&](const Word& w) {
    ++res.scanned;
    if (w.empty()) return;
    if (!free_semigroup_osc_member(w, plain) && !free_semigroup_osc_member(w, mirror)) return;
    ++res.members;
    if (is_trivial_in_quotient(pres, w)) res.counterexamples.push_back(w);
  });
  return res;
}

Certificate scenario_co61(const ScenarioRequest& req) {
  if (req.p < 2) throw std::invalid_argument("co61 requires p >= 2");
  const int budget = req.budget > 0 ? req.budget : 12;
  if (budget < 1) throw std::invalid_argument("co61 requires a positive length budget");

  Certificate cert;
  cert.scenario = "co61";
  cert.params = {{"p", std::to_string(req.p)},
                 {"budget", std::to_string(budget)},
                 {"relator", "(x y')^" + std::to_string(req.p)},
                 {"stage", std::to_string(2 * req.p - 2)}};
  cert.budgets = {{"max_word_length", std::to_string(budget)}};

  Co61Data res = run_co61_scan(req.p, budget);
  Alphabet ab = Alphabet::free2();
  cert.notes.push_back("scanned " + std::to_string(res.scanned) + " reduced words of length <= " +
                       std::to_string(budget) + "; " + std::to_string(res.members) +
                       " lie in one of the two stage-" + std::to_string(2 * req.p - 2) +
                       " oscillator sets of the positive semigroup");
  if (res.counterexamples.empty()) {
    cert.verdict = "Verified";
    cert.witnesses.push_back(
        {"exhaustive scan: no nonidentity member of either stage-" +
             std::to_string(2 * req.p - 2) +
             " oscillator set within the length budget is trivial in the quotient",
         "e",
         {}});
  } else {
    cert.verdict = "RefutedWithWitness";
    for (const Word& w : res.counterexamples) {
      cert.witnesses.push_back(
          {"nonidentity oscillator-set member trivial in the quotient", w.str(ab), {}});
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------
// ex0: separation invariants of the quotient-image group.
// ---------------------------------------------------------------------------

struct Ex0MemberWitness {
  int n = 0;
  bool ok = false;
  std::string element;
  std::vector<std::string> factors;
};

struct Ex0Data {
  Ex0Estimates est;
  std::vector<Ex0MemberWitness> members;  // (p, e) in stage 2p of psi(U_n)
};

Ex0Data run_ex0_data(int p, int word_budget, int basis_count) {
  Ex0Data data;
  data.est = ex0_estimates(p, word_budget, basis_count);

  Ex0Backend backend(p, static_cast<std::size_t>(word_budget));
  PsiImage target;
  target.int_part = p;
  for (int n = 1; n <= basis_count; ++n) {
    Ex0MemberWitness w;
    w.n = n;
    Ex0Decision d = backend.decide_member(Ex0Backend::BaseSpec::nbhd(n),
                                          OscillatorExpr(2 * p, false), target,
                                          static_cast<std::size_t>(word_budget));
    w.ok = d.verdict == Ex0Verdict::ExactYes;
    w.element = backend.key(target);
    for (const PsiImage& f : d.factors) w.factors.push_back(backend.key(f));
    data.members.push_back(std::move(w));
  }
  return data;
}

Certificate scenario_ex0(const ScenarioRequest& req) {
  if (req.p < 2) throw std::invalid_argument("ex0 requires p >= 2");
  const int word_budget = req.budget > 0 ? req.budget : 6;
  const int basis_count = 5;
  const int p = req.p;

  Certificate cert;
  cert.scenario = "ex0";
  cert.params = {{"p", std::to_string(p)}, {"budget", std::to_string(word_budget)}};
  cert.budgets = {{"word_budget", std::to_string(word_budget)},
                  {"basis_count", std::to_string(basis_count)},
                  {"t1_max_stage", std::to_string(2 * p)},
                  {"t2_max_stage", std::to_string(p)}};

  Ex0Data data = run_ex0_data(p, word_budget, basis_count);

  bool members_ok = true;
  for (const Ex0MemberWitness& w : data.members) {
    members_ok = members_ok && w.ok;
    cert.witnesses.push_back({"element (" + std::to_string(p) + ", {}) lies in stage " +
                                  std::to_string(2 * p) + " of the image of U_" +
                                  std::to_string(w.n) + " (factorization re-verified)",
                              w.element, w.factors});
  }

  const int t1_target = 2 * p - 1;
  const int t2_target = p - 1;
  cert.notes.push_back(estimate_line(data.est.t1));
  cert.notes.push_back(estimate_line(data.est.t2));
  if (data.est.consistency_checked) {
    cert.notes.push_back("doubling relation T1 = 2*T2 + 1 checked on the point estimates");
  }
  cert.notes.push_back(
      "the confirmed pair (T1, T2) = (" + std::to_string(t1_target) + ", " +
      std::to_string(t2_target) +
      ") satisfies T1 = 2*T2 + 1; a Hausdorff value of p = " + std::to_string(p) +
      " would be inconsistent with the certified T1 value under that relation");
  append_records(cert, data.est.t1);
  append_records(cert, data.est.t2);

  const bool t1_ok = data.est.t1.is_point() && *data.est.t1.upper == t1_target;
  const bool t2_ok = data.est.t2.is_point() && *data.est.t2.upper == t2_target;
  if (members_ok && t1_ok && t2_ok && data.est.consistency_checked) {
    cert.verdict = "Verified";
  } else if (data.est.t1.is_point() && data.est.t2.is_point() && (!t1_ok || !t2_ok)) {
    cert.verdict = "RefutedWithWitness";
    cert.notes.push_back("point estimates disagree with the closed-form targets");
  } else {
    cert.verdict = "InconclusiveAtBound";
  }
  return cert;
}

// ---------------------------------------------------------------------------
// ex11: orientation of the level-2 oscillator sets of the dyadic affine
// semigroup, plus the oscillation split between the group and its mirror.
// ---------------------------------------------------------------------------

struct Ex11Data {
  InclusionScan<AffMap> plain_into_mirror;  // (+-S)^2 against (-+S)^2
  InclusionScan<AffMap> mirror_into_plain;  // (-+S)^2 against (+-S)^2
  std::optional<Word> witness_word;
  std::optional<std::pair<AffMap, AffMap>> closed_form;  // mirror-side factorization
  Estimate osc_plain;
  Estimate osc_mirror;
};

Ex11Data run_ex11_data(int per_factor, int max_n, int osc_per_factor, int word_search_len) {
  AffBackend aff;
  AffBackend::BaseSpec plain{false};
  AffBackend::BaseSpec mirror_base{true};
  EnumBudget budget{per_factor, 2'000'000};

  Ex11Data data;
  data.plain_into_mirror = scan_inclusion(aff, plain, OscillatorExpr(2, false), plain,
                                          OscillatorExpr(2, true), budget);
  data.mirror_into_plain = scan_inclusion(aff, plain, OscillatorExpr(2, true), plain,
                                          OscillatorExpr(2, false), budget);
  if (data.plain_into_mirror.refutation && data.mirror_into_plain.refutation) {
    throw std::logic_error("both level-2 inclusions refuted: exact predicates are inconsistent");
  }

  if (data.mirror_into_plain.refutation) {
    const AffMap& sep = data.mirror_into_plain.refutation->element;
    for (const Word& w : reduced_words(2, word_search_len)) {
      if (word_to_map(w) == sep) {
        data.witness_word = w;
        break;
      }
    }
    auto cf = product_set_witness(sep, ProductSide::SinvS);
    if (cf) {
      const AffMap recomposed = compose(invert_map(cf->first), cf->second);
      if (!(recomposed == sep) || !semigroup_member(cf->first) || !semigroup_member(cf->second)) {
        throw std::logic_error("closed-form factorization failed re-verification");
      }
      data.closed_form = cf;
    }
  }

  EnumBudget osc_budget{osc_per_factor, 2'000'000};
  data.osc_plain = estimate_osc(aff, plain, max_n, osc_budget,
                                "per-factor " + std::to_string(osc_per_factor) +
                                    " enumeration, exact closed-form right side");
  data.osc_mirror = estimate_osc(aff, mirror_base, max_n, osc_budget,
                                 "per-factor " + std::to_string(osc_per_factor) +
                                     " enumeration, exact closed-form right side (mirror base)");
  return data;
}

Certificate scenario_ex11(const ScenarioRequest& req) {
  const int per_factor = req.budget > 0 ? req.budget : 10;
  const int max_n = req.max_n > 0 ? req.max_n : 3;
  const int osc_per_factor = 3;
  const int word_search_len = 4;
  if (per_factor < 2) throw std::invalid_argument("ex11 needs a per-factor budget of at least 2");

  Certificate cert;
  cert.scenario = "ex11";
  cert.params = {{"budget", std::to_string(per_factor)},
                 {"max_n", std::to_string(max_n)},
                 {"group", "dyadic affine maps x -> 2^k x + t"},
                 {"base", "semigroup generated by x -> 2x and x -> x + 1"}};
  cert.budgets = {{"per_factor", std::to_string(per_factor)},
                  {"osc_per_factor", std::to_string(osc_per_factor)},
                  {"word_search_len", std::to_string(word_search_len)}};

  Ex11Data data = run_ex11_data(per_factor, max_n, osc_per_factor, word_search_len);

  const bool refuted_mirror_side = data.mirror_into_plain.refutation.has_value();
  const bool contained_plain_side =
      !data.plain_into_mirror.refutation && data.plain_into_mirror.all_exact;

  if (refuted_mirror_side) {
    const auto& r = *data.mirror_into_plain.refutation;
    std::vector<std::string> factors;
    for (const AffMap& f : r.factors) factors.push_back(f.str());
    cert.witnesses.push_back(
        {"lies in the mirror level-2 set (s^-1 * t form) but exactly outside the plain "
         "level-2 set (s * t^-1 form)" + std::string(r.right_exact ? "" : " [enumeration only]"),
         r.element.str(), factors});
  }
  if (data.witness_word) {
    Alphabet ab = Alphabet::affine_ab();
    cert.witnesses.push_back({"generator word of length " +
                                  std::to_string(data.witness_word->size()) +
                                  " evaluating to the separating element",
                              word_to_map(*data.witness_word).str(),
                              {data.witness_word->str(ab)}});
  }
  if (data.closed_form) {
    cert.witnesses.push_back({"mirror-side factorization s1^-1 * s2 of the separating element "
                              "(both halves in the base semigroup)",
                              data.mirror_into_plain.refutation->element.str(),
                              {data.closed_form->first.str(), data.closed_form->second.str()}});
  }

  cert.notes.push_back(
      "computed orientation: all " + std::to_string(data.plain_into_mirror.left_size) +
      " enumerated elements of the plain level-2 set lie in the mirror level-2 set with exact "
      "membership (that side admits every group element), while the mirror level-2 set contains "
      "an element exactly outside the plain one; any description placing the strict inclusion "
      "in the opposite direction contradicts these exact closed forms");
  cert.notes.push_back(estimate_line(data.osc_plain));
  cert.notes.push_back(estimate_line(data.osc_mirror));
  append_records(cert, data.osc_plain);
  append_records(cert, data.osc_mirror);

  if (refuted_mirror_side && data.mirror_into_plain.refutation->right_exact &&
      contained_plain_side) {
    cert.verdict = "RefutedWithWitness";
  } else {
    cert.verdict = "InconclusiveAtBound";
  }
  return cert;
}

// ---------------------------------------------------------------------------
// ex2: the free semigroup has oscillation beyond every tested level.
// ---------------------------------------------------------------------------

struct Ex2Data {
  std::vector<InclusionRefutation<Word>> refutations;  // one per level 1..max_n
  bool all_exact = true;
  bool xval_ok = true;
  long long xval_checks = 0;
  Estimate osc;
};

Ex2Data run_ex2_data(int witness_per_factor, int max_n, int xval_per_factor, int xval_levels,
                     int xval_word_len) {
  FreeGroupBackend fb(Alphabet::free2());
  auto sg = FreeGroupBackend::BaseSpec::free_semigroup();
  EnumBudget wb{witness_per_factor, 2'000'000};

  Ex2Data data;
  for (int n = 1; n <= max_n; ++n) {
    auto r = refute_inclusion(fb, sg, OscillatorExpr(n, true), sg, OscillatorExpr(n, false), wb);
    if (!r) {
      data.all_exact = false;
      break;
    }
    data.all_exact = data.all_exact && r->right_exact;
    data.refutations.push_back(std::move(*r));
  }

  // Cross-validation of the exact block test against bounded enumeration:
  // enumerated members must satisfy the predicate, and for short words the
  // predicate must match enumeration membership exactly (their factors fit
  // inside the enumeration budget), with factorizations re-verified.
  EnumBudget xb{xval_per_factor, 2'000'000};
  for (int n = 1; n <= xval_levels && data.xval_ok; ++n) {
    for (bool mirror : {false, true}) {
      OscillatorExpr expr(n, mirror);
      auto set = enumerate_oscillator(fb, sg, expr, xb);
      for (const auto& entry : set.entries) {
        ++data.xval_checks;
        if (!free_semigroup_osc_member(entry.value, expr)) {
          data.xval_ok = false;
          break;
        }
      }
      if (!data.xval_ok) break;
      for (const Word& w : reduced_words(2, xval_word_len)) {
        ++data.xval_checks;
        const bool pred = free_semigroup_osc_member(w, expr);
        if (pred != set.contains(fb.key(w))) {
          data.xval_ok = false;
          break;
        }
        if (pred) {
          auto factors = free_semigroup_osc_factors(w, expr);
          if (!factors || !verify_factorization(fb, expr, *factors, w)) {
            data.xval_ok = false;
            break;
          }
          for (const Word& f : *factors) {
            if (!f.is_positive()) {
              data.xval_ok = false;
              break;
            }
          }
        }
        if (!data.xval_ok) break;
      }
      if (!data.xval_ok) break;
    }
  }

  data.osc = estimate_osc(fb, sg, max_n, wb,
                          "per-factor " + std::to_string(witness_per_factor) +
                              " enumeration, exact block test on the right side");
  return data;
}

Certificate scenario_ex2(const ScenarioRequest& req) {
  const int witness_per_factor = req.budget > 0 ? req.budget : 1;
  const int max_n = req.max_n > 0 ? req.max_n : 8;
  const int xval_per_factor = 3;
  const int xval_levels = std::min(max_n, 4);
  const int xval_word_len = 3;

  Certificate cert;
  cert.scenario = "ex2";
  cert.params = {{"budget", std::to_string(witness_per_factor)},
                 {"max_n", std::to_string(max_n)},
                 {"group", "free group on two generators"},
                 {"base", "positive words (free semigroup with identity)"}};
  cert.budgets = {{"witness_per_factor", std::to_string(witness_per_factor)},
                  {"xval_per_factor", std::to_string(xval_per_factor)},
                  {"xval_levels", std::to_string(xval_levels)},
                  {"xval_word_len", std::to_string(xval_word_len)}};

  Ex2Data data = run_ex2_data(witness_per_factor, max_n, xval_per_factor, xval_levels,
                              xval_word_len);

  Alphabet ab = Alphabet::free2();
  for (std::size_t i = 0; i < data.refutations.size(); ++i) {
    const auto& r = data.refutations[i];
    std::vector<std::string> factors;
    for (const Word& f : r.factors) factors.push_back(f.str(ab));
    cert.witnesses.push_back({"level " + std::to_string(i + 1) +
                                  ": mirror oscillator element exactly outside the plain "
                                  "oscillator set (block test)",
                              r.element.str(ab), factors});
  }
  cert.notes.push_back("exact block membership agrees with bounded enumeration at levels 1.." +
                       std::to_string(xval_levels) + " (" + std::to_string(data.xval_checks) +
                       " checks, " + (data.xval_ok ? std::string("0 disagreements") :
                                                     std::string("DISAGREEMENT FOUND")) + ")");
  cert.notes.push_back(estimate_line(data.osc));
  append_records(cert, data.osc);

  if (static_cast<int>(data.refutations.size()) == max_n && data.all_exact && data.xval_ok) {
    cert.verdict = "RefutedWithWitness";
  } else {
    cert.verdict = "InconclusiveAtBound";
  }
  return cert;
}

// ---------------------------------------------------------------------------
// lsin-refute: no single member of the tuple-group neighborhood chain
// conjugates itself into the first one.
// ---------------------------------------------------------------------------

Certificate scenario_lsin(const ScenarioRequest& req) {
  const int range = req.max_n > 0 ? req.max_n : 6;
  if (range < 1) throw std::invalid_argument("lsin-refute needs a positive candidate range");

  Certificate cert;
  cert.scenario = "lsin-refute";
  cert.params = {{"max_n", std::to_string(range)},
                 {"target", "U_1"},
                 {"family", "U_1..U_" + std::to_string(range)}};
  cert.budgets = {{"candidate_range", std::to_string(range)}};

  DirectSumBackend ds;
  const Alphabet& ab = ds.alphabet();
  const Word wx = Word::parse(ab, "x");
  const Word wy = Word::parse(ab, "y");
  const auto target = DirectSumBackend::BaseSpec::nbhd(1);

  bool all_refuted = true;
  for (int m = 1; m <= range; ++m) {
    const auto wspec = DirectSumBackend::BaseSpec::nbhd(m);
    TupleElement g = TupleElement::single(m, wx);
    TupleElement w = TupleElement::single(m, wy);
    TupleElement conj = ds.product(ds.product(ds.inverse(g), w), g);

    auto g_in = ds.exact_base_member(wspec, g);
    auto w_in = ds.exact_base_member(wspec, w);
    auto conj_in = ds.exact_base_member(target, conj);
    const bool refuted = g_in && *g_in && w_in && *w_in && conj_in && !*conj_in;
    all_refuted = all_refuted && refuted;
    cert.witnesses.push_back(
        {"candidate U_" + std::to_string(m) +
             ": conjugating a member by a member lands exactly outside U_1",
         ds.key(conj), {ds.key(g), ds.key(w)}});
  }
  cert.notes.push_back(
      "for every tested candidate W in the chain, some g, w in W give g^-1 * w * g outside U_1; "
      "per-element absorbers still exist (deeper chain members), so only the uniform "
      "conjugation property fails");
  cert.verdict = all_refuted ? "RefutedWithWitness" : "InconclusiveAtBound";
  return cert;
}

}  // namespace

// ---------------------------------------------------------------------------
// public scenario surface
// ---------------------------------------------------------------------------

std::vector<std::string> scenario_ids() { return {"co61", "ex0", "ex11", "ex2", "lsin-refute"}; }

const std::map<std::string, std::string>& scenario_expectations() {
  static const std::map<std::string, std::string> table{{"co61", "Verified"},
                                                        {"ex0", "Verified"},
                                                        {"ex11", "RefutedWithWitness"},
                                                        {"ex2", "RefutedWithWitness"},
                                                        {"lsin-refute", "RefutedWithWitness"}};
  return table;
}

Certificate run_scenario(const ScenarioRequest& req) {
  const auto t0 = Clock::now();
  Certificate cert;
  if (req.id == "co61") {
    cert = scenario_co61(req);
  } else if (req.id == "ex0") {
    cert = scenario_ex0(req);
  } else if (req.id == "ex11") {
    cert = scenario_ex11(req);
  } else if (req.id == "ex2") {
    cert = scenario_ex2(req);
  } else if (req.id == "lsin-refute") {
    cert = scenario_lsin(req);
  } else {
    throw std::invalid_argument("unknown scenario id: " + req.id);
  }
  cert.seed = req.seed;
  cert.tool_version = std::string(kToolName) + " " + kToolVersion;
  cert.timings_ms["total"] = ms_since(t0);
  return cert;
}

int scenario_exit_code(const Certificate& cert) {
  const auto& table = scenario_expectations();
  auto it = table.find(cert.scenario);
  if (it != table.end() && cert.verdict == it->second) return 0;
  if (cert.verdict == "InconclusiveAtBound") return 2;
  return 1;
}

bool replay_certificate(const Certificate& cert) {
  ScenarioRequest req;
  req.id = cert.scenario;
  req.seed = cert.seed;
  if (auto it = cert.params.find("p"); it != cert.params.end()) req.p = std::stoi(it->second);
  if (auto it = cert.params.find("budget"); it != cert.params.end()) {
    req.budget = std::stoi(it->second);
  }
  if (auto it = cert.params.find("max_n"); it != cert.params.end()) {
    req.max_n = std::stoi(it->second);
  }
  Certificate rerun = run_scenario(req);
  return cert.same_content(rerun);
}

// ---------------------------------------------------------------------------
// reusable estimate runners
// ---------------------------------------------------------------------------

Ex0Estimates ex0_estimates(int p, int word_budget, int basis_count) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (word_budget < 1 || basis_count < 1) {
    throw std::invalid_argument("budgets must be positive");
  }
  Ex0Backend backend(p, static_cast<std::size_t>(word_budget));
  std::vector<Ex0Backend::BaseSpec> basis;
  for (int n = 1; n <= basis_count; ++n) basis.push_back(Ex0Backend::BaseSpec::nbhd(n));

  // Test pool: the integer points 1..p in both signs, then the image of a
  // short ambient tuple ball (nontrivial classes on the first coordinates).
  std::vector<PsiImage> tests;
  std::unordered_set<std::string> seen;
  for (long long m = 1; m <= p; ++m) {
    for (long long s : {m, -m}) {
      PsiImage img;
      img.int_part = s;
      if (seen.insert(backend.key(img)).second) tests.push_back(std::move(img));
    }
  }
  for (const TupleElement& t : backend.tuples().enumerate_ball(1, 2, 2)) {
    PsiImage img = backend.psi(t);
    if (img.is_identity()) continue;
    if (seen.insert(backend.key(img)).second) tests.push_back(std::move(img));
  }

  auto oracle = [word_budget](const Ex0Backend& b, const Ex0Backend::BaseSpec& s,
                              OscillatorExpr e, const PsiImage& g) -> std::optional<bool> {
    Ex0Decision d = b.decide_member(s, e, g, static_cast<std::size_t>(word_budget));
    if (d.verdict == Ex0Verdict::ExactYes) return true;
    if (d.verdict == Ex0Verdict::ExactNo) return false;
    return std::nullopt;
  };
  const std::string desc = "word budget " + std::to_string(word_budget) + ", basis psi(U_1)..psi(U_" +
                           std::to_string(basis_count) + "), " + std::to_string(tests.size()) +
                           " test elements";
  Ex0Estimates out;
  out.t1 = estimate_t1(backend, basis, tests, 2 * p, oracle, desc);
  out.t2 = estimate_t2(backend, basis, tests, p, oracle, desc);
  out.consistency_checked = consistency_check(out.t1, out.t2);
  return out;
}

Estimate osc_estimate_affine(bool mirrored, int max_n, int per_factor) {
  AffBackend aff;
  AffBackend::BaseSpec spec{mirrored};
  return estimate_osc(aff, spec, max_n, EnumBudget{per_factor, 2'000'000},
                      "per-factor " + std::to_string(per_factor) +
                          " enumeration, exact closed-form right side" +
                          (mirrored ? " (mirror base)" : ""));
}

Estimate osc_estimate_free_semigroup(int max_n, int per_factor) {
  FreeGroupBackend fb(Alphabet::free2());
  return estimate_osc(fb, FreeGroupBackend::BaseSpec::free_semigroup(), max_n,
                      EnumBudget{per_factor, 2'000'000},
                      "per-factor " + std::to_string(per_factor) +
                          " enumeration, exact block test on the right side");
}

Estimate osc_estimate_int_line(int scale_exp, int max_n, int per_factor) {
  IntLineBackend ib;
  return estimate_osc(ib, IntLineBackend::BaseSpec{scale_exp, false}, max_n,
                      EnumBudget{per_factor, 2'000'000},
                      "subgroup base 2^" + std::to_string(scale_exp) +
                          " Z, exact membership on the right side");
}

// ---------------------------------------------------------------------------
// acceptance criteria
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

CriterionResult criterion_word_problem() {
  CriterionResult r;
  r.index = 1;
  r.name = "word-problem decision matches the bounded closure oracle";
  r.limit_ms = 180000;  // pinned: 3 minutes
  bool ok = true;
  std::string detail;
  for (int p : {2, 3}) {
    Alphabet ab = Alphabet::free2();
    OneRelatorPresentation pres = OneRelatorPresentation::make(ab, Word::parse(ab, "x y'"), p);
    NormalClosureBall ball = normal_closure_oracle(pres, 12);
    long long scanned = 0, trivial_count = 0, disagreements = 0;
    for_each_reduced_word(2, 8, [&](const Word& w) {
      ++scanned;
      const bool dehn = is_trivial_in_quotient(pres, w);
      if (dehn) ++trivial_count;
      if (dehn != ball.contains(w)) ++disagreements;
    });
    ok = ok && disagreements == 0;
    detail += "p=" + std::to_string(p) + ": " + std::to_string(scanned) + " words, " +
              std::to_string(trivial_count) + " trivial, " + std::to_string(disagreements) +
              " disagreements; ";
  }
  r.pass = ok;
  r.detail = detail + "oracle ball length 12, exhaustive words up to length 8";
  return r;
}

CriterionResult criterion_stage_scan() {
  CriterionResult r;
  r.index = 2;
  r.name = "stage-(2p-2) oscillator sets meet the relator closure trivially";
  r.limit_ms = 300000;  // pinned: 5 minutes
  bool ok = true;
  std::string detail;
  for (int p : {2, 3}) {
    Co61Data res = run_co61_scan(p, 12);
    ok = ok && res.counterexamples.empty();
    detail += "p=" + std::to_string(p) + ": " + std::to_string(res.members) + " members of " +
              std::to_string(res.scanned) + " words, " +
              std::to_string(res.counterexamples.size()) + " counterexamples; ";
  }
  r.pass = ok;
  r.detail = detail + "length budget 12, both orientations";
  return r;
}

CriterionResult criterion_image_group() {
  CriterionResult r;
  r.index = 3;
  r.name = "image-group separation invariants take their closed-form values";
  Ex0Data data = run_ex0_data(2, 6, 5);
  bool members_ok = true;
  for (const Ex0MemberWitness& w : data.members) members_ok = members_ok && w.ok;
  const bool t1_ok = data.est.t1.is_point() && *data.est.t1.upper == 3 &&
                     data.est.t1.upper_kind == BoundKind::Proven;
  const bool t2_ok = data.est.t2.is_point() && *data.est.t2.upper == 1 &&
                     data.est.t2.upper_kind == BoundKind::Proven;
  r.pass = members_ok && t1_ok && t2_ok && data.est.consistency_checked;
  r.detail = std::to_string(data.members.size()) +
             " membership witnesses re-verified by multiplication; T1 " +
             data.est.t1.interval_str() + ", T2 " + data.est.t2.interval_str() +
             (data.est.consistency_checked ? "; doubling relation checked" : "; doubling relation unchecked");
  return r;
}

CriterionResult criterion_orientation() {
  CriterionResult r;
  r.index = 4;
  r.name = "product-set orientation decided with a short witness";
  r.limit_ms = 120000;  // pinned: 2 minutes
  Ex11Data data = run_ex11_data(10, 3, 3, 4);
  const bool one_refuted = data.mirror_into_plain.refutation.has_value() &&
                           !data.plain_into_mirror.refutation.has_value();
  const bool exact_refutation =
      one_refuted && data.mirror_into_plain.refutation->right_exact;
  const bool word_ok = data.witness_word.has_value() && data.witness_word->size() <= 4;
  const bool other_clean = data.plain_into_mirror.all_exact &&
                           !data.plain_into_mirror.refutation.has_value();
  auto is_two_evidence = [](const Estimate& e) {
    return e.is_point() && *e.upper == 2 && e.upper_kind == BoundKind::Evidence;
  };
  auto is_three_proven = [](const Estimate& e) {
    return e.lower >= 3 && e.lower_kind == BoundKind::Proven;
  };
  const bool osc_split = (is_two_evidence(data.osc_plain) && is_three_proven(data.osc_mirror)) ||
                         (is_two_evidence(data.osc_mirror) && is_three_proven(data.osc_plain));
  r.pass = one_refuted && exact_refutation && word_ok && other_clean && osc_split;
  r.detail = std::string("refuted inclusions: ") +
             (data.mirror_into_plain.refutation ? "mirror-side " : "") +
             (data.plain_into_mirror.refutation ? "plain-side " : "") +
             "(expect mirror-side only); witness word length " +
             (data.witness_word ? std::to_string(data.witness_word->size()) : std::string("none")) +
             "; other side: " + std::to_string(data.plain_into_mirror.left_size) +
             " elements, " + (other_clean ? "zero counterexamples, all exact" : "NOT clean") +
             "; osc " + data.osc_plain.interval_str() + " / mirror " +
             data.osc_mirror.interval_str();
  return r;
}

CriterionResult criterion_affine_closed_forms() {
  CriterionResult r;
  r.index = 5;
  r.name = "affine closed forms agree with brute-force enumeration";
  long long checks = 0, disagreements = 0;

  std::vector<AffMap> all_maps;
  std::unordered_set<std::string> all_keys;
  std::unordered_set<std::string> positive_keys;
  for (const Word& w : reduced_words(2, 10)) {
    AffMap f = word_to_map(w);
    if (all_keys.insert(f.str()).second) all_maps.push_back(f);
    if (w.is_positive()) positive_keys.insert(f.str());
  }

  // Semigroup membership: constructive witness when claimed, absence from the
  // positive enumeration when denied.
  for (const AffMap& f : all_maps) {
    ++checks;
    if (semigroup_member(f)) {
      auto w = semigroup_witness_word(f);
      if (!w || !w->is_positive() || !(word_to_map(*w) == f)) ++disagreements;
    } else if (positive_keys.count(f.str()) > 0) {
      ++disagreements;
    }
  }

  // Product sets: soundness over enumerated factor pairs, then the witness
  // route against the predicate for every map.
  std::vector<AffMap> s_half;
  {
    std::unordered_set<std::string> seen;
    for (const Word& w : positive_words(2, 5)) {
      AffMap f = word_to_map(w);
      if (seen.insert(f.str()).second) s_half.push_back(f);
    }
  }
  std::unordered_set<std::string> ssinv_pairs, sinvs_pairs;
  for (const AffMap& s1 : s_half) {
    for (const AffMap& s2 : s_half) {
      AffMap a = compose(s1, invert_map(s2));
      AffMap b = compose(invert_map(s1), s2);
      ssinv_pairs.insert(a.str());
      sinvs_pairs.insert(b.str());
      ++checks;
      if (!product_set_member(a, ProductSide::SSinv)) ++disagreements;
      if (!product_set_member(b, ProductSide::SinvS)) ++disagreements;
    }
  }
  for (const AffMap& f : all_maps) {
    for (ProductSide side : {ProductSide::SSinv, ProductSide::SinvS}) {
      ++checks;
      const bool member = product_set_member(f, side);
      auto wit = product_set_witness(f, side);
      if (member != wit.has_value()) {
        ++disagreements;
        continue;
      }
      if (member) {
        const AffMap recomposed = side == ProductSide::SSinv
                                      ? compose(wit->first, invert_map(wit->second))
                                      : compose(invert_map(wit->first), wit->second);
        if (!(recomposed == f) || !semigroup_member(wit->first) ||
            !semigroup_member(wit->second)) {
          ++disagreements;
        }
      } else {
        const auto& pairs = side == ProductSide::SSinv ? ssinv_pairs : sinvs_pairs;
        if (pairs.count(f.str()) > 0) ++disagreements;
      }
    }
  }
  r.pass = disagreements == 0;
  r.detail = std::to_string(all_maps.size()) + " distinct maps from words of length <= 10, " +
             std::to_string(checks) + " checks, " + std::to_string(disagreements) +
             " disagreements";
  return r;
}

CriterionResult criterion_infinite_oscillation() {
  CriterionResult r;
  r.index = 6;
  r.name = "free-semigroup oscillation exceeds every tested level";
  Ex2Data data = run_ex2_data(1, 8, 3, 4, 3);
  const bool witnesses_ok = static_cast<int>(data.refutations.size()) == 8 && data.all_exact;
  const bool osc_ok = data.osc.lower == 9 && data.osc.lower_kind == BoundKind::Proven &&
                      !data.osc.upper.has_value();
  r.pass = witnesses_ok && data.xval_ok && osc_ok;
  r.detail = std::to_string(data.refutations.size()) +
             " exact level witnesses (levels 1..8); block test vs enumeration: " +
             std::to_string(data.xval_checks) + " checks" +
             (data.xval_ok ? ", 0 disagreements" : ", DISAGREEMENT") + "; osc " +
             data.osc.interval_str();
  return r;
}

// One fuzz instance: enumerate an oscillator set on a sampled backend/base and
// check factorizations, base membership of factors, monotonicity in n, the
// inversion parity law, and mirror duality at matched budgets.
template <typename B>
std::optional<std::string> check_fuzz_instance(const B& backend,
                                               const typename B::BaseSpec& spec,
                                               const typename B::BaseSpec& inv_spec, int n,
                                               int per_factor, bool mirror) {
  EnumBudget budget{per_factor, 500'000};
  OscillatorExpr expr(n, mirror);
  auto set = enumerate_oscillator(backend, spec, expr, budget);

  for (const auto& entry : set.entries) {
    if (!verify_factorization(backend, expr, entry.factors, entry.value)) {
      return "a stored factorization failed re-verification";
    }
    for (const auto& f : entry.factors) {
      auto in_base = backend.exact_base_member(spec, f);
      if (in_base.has_value() && !*in_base) return "a stored factor lies outside the base set";
    }
  }

  if (n >= 2) {
    auto prefix = enumerate_oscillator(backend, spec, OscillatorExpr(n - 1, mirror), budget);
    auto suffix = enumerate_oscillator(backend, spec, OscillatorExpr(n - 1, !mirror), budget);
    for (const auto& entry : prefix.entries) {
      if (!set.contains(entry.key)) return "level n-1 (same start sign) escapes level n";
    }
    for (const auto& entry : suffix.entries) {
      if (!set.contains(entry.key)) return "level n-1 (opposite start sign) escapes level n";
    }
  }

  if (!parity_check(backend, spec, expr, budget)) return "inversion parity law failed";

  auto mirrored_base = enumerate_oscillator(backend, inv_spec, expr, budget);
  auto flipped = enumerate_oscillator(backend, spec, expr.flipped(), budget);
  if (mirrored_base.size() != flipped.size()) return "mirror duality: sizes differ";
  for (const auto& entry : mirrored_base.entries) {
    if (!flipped.contains(entry.key)) return "mirror duality: element sets differ";
  }
  return std::nullopt;
}

std::optional<std::string> run_fuzz_instance(std::uint64_t instance_seed) {
  std::mt19937_64 rng(instance_seed);
  const int kind = static_cast<int>(rng() % 3);
  const bool mirror = rng() % 2 == 1;
  if (kind == 0) {
    const int pf = 1 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % (pf == 1 ? 5 : 4));
    FreeGroupBackend fb(Alphabet::free2());
    auto res = check_fuzz_instance(fb, FreeGroupBackend::BaseSpec::free_semigroup(false),
                                   FreeGroupBackend::BaseSpec::free_semigroup(true), n, pf,
                                   mirror);
    if (res) return "free-semigroup base, n=" + std::to_string(n) + ", budget=" +
                    std::to_string(pf) + ": " + *res;
    return std::nullopt;
  }
  if (kind == 1) {
    const int pf = 1 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 5);
    static const std::vector<Word> pool = reduced_words(2, 3);
    std::vector<Word> elems;
    const int count = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      elems.push_back(pool[1 + rng() % (pool.size() - 1)]);
    }
    FreeGroupBackend fb(Alphabet::free2());
    auto res = check_fuzz_instance(fb, FreeGroupBackend::BaseSpec::explicit_set(elems, false),
                                   FreeGroupBackend::BaseSpec::explicit_set(elems, true), n, pf,
                                   mirror);
    if (res) return "explicit base (" + std::to_string(elems.size()) + " words), n=" +
                    std::to_string(n) + ", budget=" + std::to_string(pf) + ": " + *res;
    return std::nullopt;
  }
  const int scale = static_cast<int>(rng() % 4);
  const int pf = 1 + static_cast<int>(rng() % 4);
  const int n = 1 + static_cast<int>(rng() % 5);
  IntLineBackend ib;
  auto res = check_fuzz_instance(ib, IntLineBackend::BaseSpec{scale, false},
                                 IntLineBackend::BaseSpec{scale, true}, n, pf, mirror);
  if (res) return "integer-line base 2^" + std::to_string(scale) + " Z, n=" + std::to_string(n) +
                  ", budget=" + std::to_string(pf) + ": " + *res;
  return std::nullopt;
}

CriterionResult criterion_fuzz(long long seed, int threads) {
  CriterionResult r;
  r.index = 7;
  r.name = "oscillator algebra invariants hold on fuzzed instances";
  constexpr int kInstances = 1000;
  std::vector<std::optional<std::string>> failures(kInstances);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < kInstances; i = next.fetch_add(1)) {
      failures[static_cast<std::size_t>(i)] =
          run_fuzz_instance(splitmix64(static_cast<std::uint64_t>(seed) + static_cast<std::uint64_t>(i)));
    }
  };
  const int nthreads = std::max(1, std::min(threads, 16));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  int failed = 0;
  std::string first;
  for (int i = 0; i < kInstances; ++i) {
    if (failures[static_cast<std::size_t>(i)]) {
      ++failed;
      if (first.empty()) {
        first = "first failure at instance " + std::to_string(i) + ": " +
                *failures[static_cast<std::size_t>(i)];
      }
    }
  }
  r.pass = failed == 0;
  r.detail = std::to_string(kInstances) + " instances (n <= 5, budget <= 4), " +
             std::to_string(failed) + " failures" + (first.empty() ? "" : "; " + first);
  return r;
}

CriterionResult criterion_axiom_checker() {
  CriterionResult r;
  r.index = 8;
  r.name = "neighborhood-axiom checker classifies both families";

  Ex0Backend backend(2);
  std::vector<std::pair<std::string, Ex0Backend::BaseSpec>> family;
  for (int n = 1; n <= 4; ++n) {
    family.emplace_back("psi(U_" + std::to_string(n) + ")", Ex0Backend::BaseSpec::nbhd(n));
  }
  std::vector<PsiImage> ball;
  {
    std::unordered_set<std::string> seen;
    for (const TupleElement& t : backend.tuples().enumerate_ball(1, 2, 2)) {
      PsiImage img = backend.psi(t);
      if (seen.insert(backend.key(img)).second) ball.push_back(std::move(img));
    }
  }
  PontriaginReport image_report = pontriagin_check(backend, family, ball, {6, 5000});
  bool image_ok = true;
  for (const char* c : {"P1", "P2", "P3", "P4"}) {
    image_ok = image_ok && image_report.at(c).verdict == CheckVerdict::Verified;
  }
  const bool image_p5 = image_report.at("P5").verdict == CheckVerdict::RefutedWithWitness;

  FreeGroupBackend fb(Alphabet::free2());
  std::vector<std::pair<std::string, FreeGroupBackend::BaseSpec>> free_family{
      {"S", FreeGroupBackend::BaseSpec::free_semigroup()}};
  PontriaginReport free_report = pontriagin_check(fb, free_family, reduced_words(2, 2), {6, 5000});
  const auto& free_p5 = free_report.at("P5");
  const bool free_ok =
      free_p5.verdict == CheckVerdict::RefutedWithWitness && !free_p5.witnesses.empty();

  r.pass = image_ok && image_p5 && free_ok;
  std::string image_line;
  for (const auto& c : image_report.conditions) {
    image_line += c.condition + "=" + check_verdict_name(c.verdict) + " ";
  }
  r.detail = "image family at budget 6: " + image_line +
             "; free-semigroup family: P5=" + check_verdict_name(free_p5.verdict) + " with " +
             std::to_string(free_p5.witnesses.size()) + " witness(es)";
  return r;
}

CriterionResult timed(CriterionResult (*fn)()) {
  const auto t0 = Clock::now();
  CriterionResult r = fn();
  r.elapsed_ms = ms_since(t0);
  if (r.limit_ms > 0 && r.elapsed_ms > r.limit_ms) {
    r.pass = false;
    r.detail += "; exceeded the pinned runtime limit";
  }
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria(long long seed, int threads) {
  std::vector<CriterionResult> out;
  out.push_back(timed(&criterion_word_problem));
  out.push_back(timed(&criterion_stage_scan));
  out.push_back(timed(&criterion_image_group));
  out.push_back(timed(&criterion_orientation));
  out.push_back(timed(&criterion_affine_closed_forms));
  out.push_back(timed(&criterion_infinite_oscillation));
  {
    const auto t0 = Clock::now();
    CriterionResult r = criterion_fuzz(seed, threads);
    r.elapsed_ms = ms_since(t0);
    out.push_back(std::move(r));
  }
  out.push_back(timed(&criterion_axiom_checker));
  return out;
}

nlohmann::json selftest_json(long long seed, int threads, bool include_timings) {
  auto criteria = run_acceptance_criteria(seed, threads);
  nlohmann::json jc = nlohmann::json::array();
  nlohmann::json timings = nlohmann::json::object();
  bool all = true;
  for (const CriterionResult& c : criteria) {
    jc.push_back({{"index", c.index}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    timings[c.name] = c.elapsed_ms;
    all = all && c.pass;
  }

  // Determinism core: replay quick scenarios from their own certificates and
  // byte-compare everything except timings.
  bool det_pass = true;
  std::string det_detail;
  {
    const std::vector<ScenarioRequest> quick{{"co61", 2, 8, 0, seed, threads},
                                             {"ex2", 2, 0, 0, seed, threads},
                                             {"lsin-refute", 2, 0, 0, seed, threads}};
    int replayed = 0;
    for (const ScenarioRequest& q : quick) {
      Certificate first = run_scenario(q);
      if (!replay_certificate(first)) {
        det_pass = false;
        det_detail = "replay of scenario " + q.id + " diverged";
        break;
      }
      ++replayed;
    }
    if (det_pass) {
      det_detail = std::to_string(replayed) +
                   " scenario replays byte-identical to their certificates (timings excluded)";
    }
  }

  nlohmann::json out{{"tool", kToolName},
                     {"version", kToolVersion},
                     {"seed", seed},
                     {"criteria", jc},
                     {"determinism", {{"pass", det_pass}, {"detail", det_detail}}},
                     {"all_pass", all && det_pass}};
  if (include_timings) out["timings_ms"] = timings;
  return out;
}

bool selftest_passed(const nlohmann::json& report) {
  return report.contains("all_pass") && report["all_pass"].is_boolean() &&
         report["all_pass"].get<bool>();
}

}  // namespace osc
