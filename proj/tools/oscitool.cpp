// Command-line front end: exact word/quotient arithmetic, oscillator-set
// enumeration and membership, inclusion scans, affine closed forms, the
// quotient-image separation checks, scenario certificates, estimates, and
// the self-test suite. JSON output is byte-stable for a fixed configuration
// and seed; timings can be stripped with --no-timings.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "osc/affine.hpp"
#include "osc/dehn.hpp"
#include "osc/directsum.hpp"
#include "osc/estimate.hpp"
#include "osc/ex0.hpp"
#include "osc/free_backend.hpp"
#include "osc/oscillator.hpp"
#include "osc/scenarios.hpp"
#include "osc/version.hpp"
#include "osc/word.hpp"

namespace {

using nlohmann::json;

struct OutputOptions {
  std::string format = "text";
  std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "write output to this file instead of stdout");
}

int emit(const OutputOptions& opts, const json& j, const std::string& text) {
  std::string payload = opts.format == "json" ? j.dump(2) + "\n" : text;
  if (opts.out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(opts.out_path);
  if (!out) {
    std::cerr << "error: cannot open output file " << opts.out_path << "\n";
    return 1;
  }
  out << payload;
  return 0;
}

osc::Alphabet alphabet_from_names(const std::string& gens) {
  std::istringstream in(gens);
  osc::Alphabet ab;
  std::string name;
  while (in >> name) ab.add(name);
  if (ab.size() == 0) throw std::invalid_argument("no generator names given");
  return ab;
}

// ---------------------------------------------------------------------------
// backend selection shared by osc-enum / osc-member / refute-inclusion
// ---------------------------------------------------------------------------

struct BackendFlags {
  std::string backend = "free";
  std::string base = "semigroup";  // free backend: "semigroup" or "w1,w2,..."
  int scale_exp = 0;               // int backend: base 2^scale_exp * Z
  bool inverted = false;
};

void add_backend_flags(CLI::App* cmd, BackendFlags& flags) {
  cmd->add_option("--backend", flags.backend, "group backend")
      ->check(CLI::IsMember({"free", "int", "aff"}))
      ->capture_default_str();
  cmd->add_option("--base", flags.base,
                  "free backend base: 'semigroup' or a comma-separated word list")
      ->capture_default_str();
  cmd->add_option("--scale-exp", flags.scale_exp, "int backend base 2^k Z: the exponent k")
      ->capture_default_str();
  cmd->add_flag("--inverted", flags.inverted, "use the inverse of the base set");
}

osc::FreeGroupBackend::BaseSpec free_base_spec(const BackendFlags& flags,
                                               const osc::Alphabet& ab) {
  if (flags.base == "semigroup") {
    return osc::FreeGroupBackend::BaseSpec::free_semigroup(flags.inverted);
  }
  std::vector<osc::Word> elems;
  std::string token;
  std::istringstream in(flags.base);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) elems.push_back(osc::Word::parse(ab, token));
  }
  if (elems.empty()) throw std::invalid_argument("empty explicit base list");
  return osc::FreeGroupBackend::BaseSpec::explicit_set(std::move(elems), flags.inverted);
}

json budget_json(osc::EnumBudget budget) {
  return json{{"per_factor", budget.per_factor}, {"max_elements", budget.max_elements}};
}

json estimate_json(const osc::Estimate& e) {
  json j{{"quantity", e.quantity},
         {"interval", e.interval_str()},
         {"lower", e.lower},
         {"lower_kind", osc::bound_kind_name(e.lower_kind)},
         {"budget", e.budget_desc},
         {"records", e.records}};
  if (e.upper) {
    j["upper"] = *e.upper;
    j["upper_kind"] = osc::bound_kind_name(e.upper_kind);
  } else {
    j["upper"] = nullptr;
  }
  return j;
}

std::string estimate_text(const osc::Estimate& e) {
  std::string out = e.quantity + " " + e.interval_str() + "  (lower " +
                    osc::bound_kind_name(e.lower_kind);
  if (e.upper) out += ", upper " + std::string(osc::bound_kind_name(e.upper_kind));
  out += ")\nbudget: " + e.budget_desc + "\n";
  for (const std::string& r : e.records) out += "  - " + r + "\n";
  return out;
}

// Runs fn(backend, base_spec) with the backend selected by flags.
template <typename Fn>
int with_backend(const BackendFlags& flags, Fn&& fn) {
  if (flags.backend == "free") {
    osc::FreeGroupBackend backend(osc::Alphabet::free2());
    return fn(backend, free_base_spec(flags, backend.alphabet()));
  }
  if (flags.backend == "int") {
    osc::IntLineBackend backend;
    return fn(backend, osc::IntLineBackend::BaseSpec{flags.scale_exp, flags.inverted});
  }
  osc::AffBackend backend;
  return fn(backend, osc::AffBackend::BaseSpec{flags.inverted});
}

// Parses the element argument for the selected backend: a word over {x,y}
// for free, an integer for int, a map literal for aff.
template <typename B>
typename B::Elem parse_element(const B&, const std::string& text);

template <>
osc::Word parse_element<osc::FreeGroupBackend>(const osc::FreeGroupBackend& b,
                                               const std::string& text) {
  return osc::Word::parse(b.alphabet(), text);
}

template <>
long long parse_element<osc::IntLineBackend>(const osc::IntLineBackend&,
                                             const std::string& text) {
  return std::stoll(text);
}

template <>
osc::AffMap parse_element<osc::AffBackend>(const osc::AffBackend&, const std::string& text) {
  return osc::AffMap::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(osc::kToolName) +
               " — exact oscillator-set and separation-invariant toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(osc::kToolName) + " " + osc::kToolVersion);

  // ---- reduce ----
  struct {
    std::string word;
    std::string gens = "x y";
    OutputOptions out;
  } reduce_args;
  CLI::App* reduce = app.add_subcommand("reduce", "freely reduce a word");
  reduce->add_option("word", reduce_args.word, "word, e.g. \"x x' y\"")->required();
  reduce->add_option("--gens", reduce_args.gens, "generator names")->capture_default_str();
  add_output_flags(reduce, reduce_args.out);

  // ---- dehn ----
  struct {
    std::string word;
    std::string pres_path;
    int p = 0;
    OutputOptions out;
  } dehn_args;
  CLI::App* dehn = app.add_subcommand("dehn", "decide the word problem in <x,y | (x y')^p> "
                                              "or a presentation file");
  dehn->add_option("--word", dehn_args.word, "word to decide")->required();
  dehn->add_option("--pres", dehn_args.pres_path, "presentation file (gens:/relator:/power:)");
  dehn->add_option("--p", dehn_args.p, "shortcut: built-in presentation <x,y | (x y')^p>");
  add_output_flags(dehn, dehn_args.out);

  // ---- osc-enum ----
  struct {
    BackendFlags backend;
    int n = 1;
    bool mirror = false;
    int budget = 2;
    OutputOptions out;
  } enum_args;
  CLI::App* osc_enum = app.add_subcommand("osc-enum", "enumerate an oscillator set under budget");
  add_backend_flags(osc_enum, enum_args.backend);
  osc_enum->add_option("--n", enum_args.n, "number of factors")->required();
  osc_enum->add_flag("--mirror", enum_args.mirror, "start the sign pattern with -1");
  osc_enum->add_option("--budget", enum_args.budget, "per-factor budget")->capture_default_str();
  add_output_flags(osc_enum, enum_args.out);

  // ---- osc-member ----
  struct {
    BackendFlags backend;
    std::string element;
    int n = 1;
    bool mirror = false;
    int budget = 2;
    OutputOptions out;
  } member_args;
  CLI::App* osc_member = app.add_subcommand(
      "osc-member", "test membership of an element in an oscillator set");
  add_backend_flags(osc_member, member_args.backend);
  osc_member->add_option("--element", member_args.element,
                         "element: word (free), integer (int), or map literal (aff)")
      ->required();
  osc_member->add_option("--n", member_args.n, "number of factors")->required();
  osc_member->add_flag("--mirror", member_args.mirror, "start the sign pattern with -1");
  osc_member->add_option("--budget", member_args.budget, "per-factor budget")
      ->capture_default_str();
  add_output_flags(osc_member, member_args.out);

  // ---- refute-inclusion ----
  struct {
    BackendFlags backend;
    int n = 1;
    bool plain_left = false;
    int budget = 2;
    OutputOptions out;
  } refute_args;
  CLI::App* refute = app.add_subcommand(
      "refute-inclusion",
      "scan the mirror level-n set against the plain one (or the reverse with --plain-left)");
  add_backend_flags(refute, refute_args.backend);
  refute->add_option("--n", refute_args.n, "number of factors")->required();
  refute->add_flag("--plain-left", refute_args.plain_left,
                   "scan plain-into-mirror instead of mirror-into-plain");
  refute->add_option("--budget", refute_args.budget, "per-factor budget")->capture_default_str();
  add_output_flags(refute, refute_args.out);

  // ---- aff ----
  struct {
    std::string word;
    std::string map_literal;
    std::string set = "S";
    OutputOptions out;
  } aff_args;
  CLI::App* aff = app.add_subcommand("aff", "dyadic affine maps: evaluate words, test sets");
  CLI::App* aff_eval = aff->add_subcommand("eval", "evaluate a word over a,b to a map");
  aff_eval->add_option("--word", aff_args.word, "word over {a, b}, e.g. \"a b a'\"")->required();
  add_output_flags(aff_eval, aff_args.out);
  CLI::App* aff_member = aff->add_subcommand("member", "exact membership in S, SSinv, or SinvS");
  aff_member->add_option("--map", aff_args.map_literal, "map literal \"a=<k>,t=<dyadic>\"")
      ->required();
  aff_member->add_option("--set", aff_args.set, "which set to test")
      ->check(CLI::IsMember({"S", "SSinv", "SinvS"}))
      ->capture_default_str();
  add_output_flags(aff_member, aff_args.out);
  aff->require_subcommand(1);

  // ---- ex0 ----
  struct {
    int p = 2;
    std::string check = "t1";
    int budget = 6;
    std::string tuple = "{}";
    int n = 1;
    int stage = 1;
    bool mirror = false;
    OutputOptions out;
  } ex0_args;
  CLI::App* ex0 = app.add_subcommand(
      "ex0", "separation invariants of the quotient-image group at parameter p");
  ex0->add_option("--p", ex0_args.p, "root power p >= 2")->capture_default_str();
  ex0->add_option("--check", ex0_args.check, "what to compute")
      ->check(CLI::IsMember({"t1", "t2", "member"}))
      ->capture_default_str();
  ex0->add_option("--budget", ex0_args.budget, "word-length budget")->capture_default_str();
  ex0->add_option("--tuple", ex0_args.tuple,
                  "member check: ambient tuple literal, e.g. {1: \"x y\"}")
      ->capture_default_str();
  ex0->add_option("--n", ex0_args.n, "member check: base index of U_n")->capture_default_str();
  ex0->add_option("--stage", ex0_args.stage, "member check: number of oscillator factors")
      ->capture_default_str();
  ex0->add_flag("--mirror", ex0_args.mirror, "member check: start the sign pattern with -1");
  add_output_flags(ex0, ex0_args.out);

  // ---- scenario ----
  struct {
    std::string name;
    std::string replay_path;
    int p = 2;
    int budget = 0;
    int max_n = 0;
    long long seed = 0;
    int threads = 1;
    bool no_timings = false;
    OutputOptions out;
  } scen_args;
  CLI::App* scenario = app.add_subcommand("scenario", "run a named verification scenario "
                                                      "(exit 0 expected verdict, 2 inconclusive)");
  scenario->add_option("name", scen_args.name,
                       "one of: co61, ex0, ex11, ex2, lsin-refute");
  scenario->add_option("--replay", scen_args.replay_path,
                       "replay a certificate file and compare content");
  scenario->add_option("--p", scen_args.p, "root power where applicable")->capture_default_str();
  scenario->add_option("--budget", scen_args.budget, "main budget (0 = scenario default)");
  scenario->add_option("--max-n", scen_args.max_n, "level scan limit (0 = scenario default)");
  scenario->add_option("--seed", scen_args.seed, "seed recorded in the certificate");
  scenario->add_option("--threads", scen_args.threads, "worker cap (output-neutral)");
  scenario->add_flag("--no-timings", scen_args.no_timings, "strip timings from JSON output");
  add_output_flags(scenario, scen_args.out);

  // ---- estimate ----
  struct {
    std::string quantity = "osc";
    std::string backend = "free";
    int p = 2;
    int budget = 0;
    int max_n = 5;
    int scale_exp = 0;
    OutputOptions out;
  } est_args;
  CLI::App* estimate = app.add_subcommand("estimate", "estimate T1 / T2 / osc with bound kinds");
  estimate->add_option("--quantity", est_args.quantity, "which invariant")
      ->check(CLI::IsMember({"t1", "t2", "osc"}))
      ->capture_default_str();
  estimate->add_option("--backend", est_args.backend, "osc only: which group/base")
      ->check(CLI::IsMember({"free", "aff", "aff-mirror", "int"}))
      ->capture_default_str();
  estimate->add_option("--p", est_args.p, "t1/t2: root power")->capture_default_str();
  estimate->add_option("--budget", est_args.budget,
                       "word budget (t1/t2, default 6) or per-factor budget (osc, default 1)");
  estimate->add_option("--max-n", est_args.max_n, "osc: highest level scanned")
      ->capture_default_str();
  estimate->add_option("--scale-exp", est_args.scale_exp, "int backend: base 2^k Z exponent")
      ->capture_default_str();
  add_output_flags(estimate, est_args.out);

  // ---- selftest ----
  struct {
    long long seed = 7;
    int threads = 1;
    bool no_timings = false;
    OutputOptions out;
  } self_args;
  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance criteria in-process");
  selftest->add_option("--seed", self_args.seed, "fuzzing seed")->capture_default_str();
  selftest->add_option("--threads", self_args.threads, "worker cap (output-neutral)")
      ->capture_default_str();
  selftest->add_flag("--no-timings", self_args.no_timings, "strip timings from JSON output");
  add_output_flags(selftest, self_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*reduce) {
      osc::Alphabet ab = alphabet_from_names(reduce_args.gens);
      osc::Word w = osc::Word::parse(ab, reduce_args.word);
      auto [core, conj] = w.cyclic_reduce();
      json j{{"input", reduce_args.word},
             {"reduced", w.str(ab)},
             {"length", w.size()},
             {"cyclic_core", core.str(ab)},
             {"conjugator", conj.str(ab)}};
      return emit(reduce_args.out, j, w.str(ab) + "\n");
    }

    if (*dehn) {
      if (dehn_args.pres_path.empty() == (dehn_args.p == 0)) {
        std::cerr << "error: give exactly one of --pres FILE or --p INT\n";
        return 1;
      }
      osc::OneRelatorPresentation pres =
          dehn_args.p != 0
              ? osc::OneRelatorPresentation::make(
                    osc::Alphabet::free2(),
                    osc::Word::parse(osc::Alphabet::free2(), "x y'"), dehn_args.p)
              : osc::OneRelatorPresentation::load(dehn_args.pres_path);
      osc::Word w = osc::Word::parse(pres.alphabet, dehn_args.word);
      auto [final_word, trace] = osc::dehn_reduce(pres, w);
      if (!osc::replay_trace(pres, w, trace, final_word)) {
        throw std::logic_error("rewrite trace failed replay");
      }
      json steps = json::array();
      for (const auto& s : trace.steps) {
        steps.push_back({{"pos", s.pos},
                         {"matched", s.matched.str(pres.alphabet)},
                         {"replacement", s.replacement.str(pres.alphabet)},
                         {"relator_inverted", s.relator_inverted},
                         {"result_length", s.result_length}});
      }
      const bool trivial = final_word.empty();
      json j{{"word", w.str(pres.alphabet)},
             {"trivial", trivial},
             {"final", final_word.str(pres.alphabet)},
             {"steps", steps},
             {"trace_replayed", true}};
      std::string text = std::string(trivial ? "trivial" : "nontrivial") + " (reduces to " +
                         final_word.str(pres.alphabet) + " in " +
                         std::to_string(trace.steps.size()) +
                         (trace.steps.size() == 1 ? " step)\n" : " steps)\n");
      return emit(dehn_args.out, j, text);
    }

    if (*osc_enum) {
      return with_backend(enum_args.backend, [&](const auto& backend, const auto& spec) {
        osc::OscillatorExpr expr(enum_args.n, enum_args.mirror);
        osc::EnumBudget budget{enum_args.budget, 2'000'000};
        auto set = osc::enumerate_oscillator(backend, spec, expr, budget);
        json elements = json::array();
        std::string text = expr.str() + "  [" + set.semantics + "]  count=" +
                           std::to_string(set.size()) + "\n";
        for (const auto& entry : set.entries) {
          elements.push_back(backend.print(entry.value));
          text += "  " + backend.print(entry.value) + "\n";
        }
        json j{{"expr", expr.str()},
               {"semantics", set.semantics},
               {"count", set.size()},
               {"budget", budget_json(budget)},
               {"elements", elements}};
        return emit(enum_args.out, j, text);
      });
    }

    if (*osc_member) {
      return with_backend(member_args.backend, [&](const auto& backend, const auto& spec) {
        auto g = parse_element(backend, member_args.element);
        osc::OscillatorExpr expr(member_args.n, member_args.mirror);
        osc::EnumBudget budget{member_args.budget, 2'000'000};
        auto res = osc::member_oscillator(backend, spec, expr, g, budget);
        auto exact = osc::exact_oscillator_member(backend, spec, expr, g);
        json factors = json::array();
        for (const auto& f : res.factors) factors.push_back(backend.print(f));
        json j{{"expr", expr.str()},
               {"element", backend.print(g)},
               {"member_enumerated", res.found},
               {"factors", factors},
               {"exact", exact ? json(*exact) : json(nullptr)},
               {"budget", budget_json(budget)}};
        std::string verdict = res.found ? "member (factorization verified)"
                              : exact && !*exact ? "not a member (exact)"
                              : exact && *exact  ? "member (exact; outside enumeration budget)"
                                                 : "not found within budget";
        return emit(member_args.out, j,
                    backend.print(g) + " in " + expr.str() + ": " + verdict + "\n");
      });
    }

    if (*refute) {
      return with_backend(refute_args.backend, [&](const auto& backend, const auto& spec) {
        osc::OscillatorExpr mirror_expr(refute_args.n, !refute_args.plain_left);
        osc::OscillatorExpr plain_expr(refute_args.n, refute_args.plain_left);
        osc::EnumBudget budget{refute_args.budget, 2'000'000};
        auto scan = osc::scan_inclusion(backend, spec, mirror_expr, spec, plain_expr, budget);
        json j{{"left", mirror_expr.str()},
               {"right", plain_expr.str()},
               {"left_size", scan.left_size},
               {"all_exact", scan.all_exact},
               {"refuted", scan.refutation.has_value()},
               {"budget", budget_json(budget)}};
        std::string text;
        if (scan.refutation) {
          json factors = json::array();
          for (const auto& f : scan.refutation->factors) factors.push_back(backend.print(f));
          j["witness"] = {{"element", backend.print(scan.refutation->element)},
                          {"factors", factors},
                          {"right_exact", scan.refutation->right_exact}};
          text = "refuted: " + backend.print(scan.refutation->element) + " lies in " +
                 scan.refutation->left_claim + " but not in " + scan.refutation->right_claim +
                 (scan.refutation->right_exact ? " (exact)" : " (within budget)") + "\n";
          emit(refute_args.out, j, text);
          return 0;
        }
        text = "no counterexample among " + std::to_string(scan.left_size) + " elements" +
               (scan.all_exact ? " (right side exact)" : " (bounded scan only)") + "\n";
        emit(refute_args.out, j, text);
        return scan.all_exact ? 0 : 2;
      });
    }

    if (*aff) {
      if (*aff_eval) {
        osc::Word w = osc::Word::parse(osc::Alphabet::affine_ab(), aff_args.word);
        osc::AffMap f = osc::word_to_map(w);
        json j{{"word", w.str(osc::Alphabet::affine_ab())}, {"map", f.str()}};
        return emit(aff_args.out, j, f.str() + "\n");
      }
      osc::AffMap f = osc::AffMap::parse(aff_args.map_literal);
      bool member = false;
      json witness = nullptr;
      std::string text;
      if (aff_args.set == "S") {
        member = osc::semigroup_member(f);
        if (member) {
          auto w = osc::semigroup_witness_word(f);
          if (w) witness = w->str(osc::Alphabet::affine_ab());
        }
      } else {
        osc::ProductSide side =
            aff_args.set == "SSinv" ? osc::ProductSide::SSinv : osc::ProductSide::SinvS;
        member = osc::product_set_member(f, side);
        if (member) {
          auto pair = osc::product_set_witness(f, side);
          if (pair) witness = json{{"s1", pair->first.str()}, {"s2", pair->second.str()}};
        }
      }
      json j{{"map", f.str()}, {"set", aff_args.set}, {"member", member}, {"witness", witness}};
      text = f.str() + " in " + aff_args.set + ": " + (member ? "yes" : "no") + "\n";
      return emit(aff_args.out, j, text);
    }

    if (*ex0) {
      if (ex0_args.check == "t1" || ex0_args.check == "t2") {
        osc::Ex0Estimates est = osc::ex0_estimates(ex0_args.p, ex0_args.budget, 5);
        const osc::Estimate& e = ex0_args.check == "t1" ? est.t1 : est.t2;
        json j = estimate_json(e);
        j["doubling_relation_checked"] = est.consistency_checked;
        return emit(ex0_args.out, j, estimate_text(e));
      }
      osc::Ex0Backend backend(ex0_args.p, static_cast<std::size_t>(ex0_args.budget));
      osc::TupleElement tuple = osc::parse_tuple(backend.alphabet(), ex0_args.tuple);
      osc::PsiImage g = backend.psi(tuple);
      osc::Ex0Decision d =
          backend.decide_member(osc::Ex0Backend::BaseSpec::nbhd(ex0_args.n),
                                osc::OscillatorExpr(ex0_args.stage, ex0_args.mirror), g,
                                static_cast<std::size_t>(ex0_args.budget));
      json factors = json::array();
      for (const auto& f : d.factors) factors.push_back(backend.key(f));
      const char* verdict = d.verdict == osc::Ex0Verdict::ExactYes   ? "ExactYes"
                            : d.verdict == osc::Ex0Verdict::ExactNo ? "ExactNo"
                                                                     : "EvidenceNo";
      json j{{"p", ex0_args.p},
             {"tuple", ex0_args.tuple},
             {"image", backend.key(g)},
             {"base", "psi(U_" + std::to_string(ex0_args.n) + ")"},
             {"expr", osc::OscillatorExpr(ex0_args.stage, ex0_args.mirror).str()},
             {"verdict", verdict},
             {"reason", d.reason},
             {"factors", factors}};
      std::string text = backend.key(g) + " in stage " + std::to_string(ex0_args.stage) +
                         " of psi(U_" + std::to_string(ex0_args.n) + "): " + verdict + " (" +
                         d.reason + ")\n";
      int rc = emit(ex0_args.out, j, text);
      if (rc != 0) return rc;
      return d.verdict == osc::Ex0Verdict::EvidenceNo ? 2 : 0;
    }

    if (*scenario) {
      if (!scen_args.replay_path.empty()) {
        std::ifstream in(scen_args.replay_path);
        if (!in) {
          std::cerr << "error: cannot read " << scen_args.replay_path << "\n";
          return 1;
        }
        osc::Certificate recorded = osc::Certificate::from_json(json::parse(in));
        const bool ok = osc::replay_certificate(recorded);
        json j{{"scenario", recorded.scenario},
               {"verdict", recorded.verdict},
               {"replay", ok ? "identical" : "diverged"}};
        emit(scen_args.out, j,
             "replay of " + recorded.scenario + ": " + (ok ? "identical" : "DIVERGED") + "\n");
        return ok ? 0 : 1;
      }
      if (scen_args.name.empty()) {
        std::cerr << "error: give a scenario name or --replay FILE\n";
        return 1;
      }
      osc::ScenarioRequest req{scen_args.name, scen_args.p,      scen_args.budget,
                               scen_args.max_n, scen_args.seed,  scen_args.threads};
      osc::Certificate cert = osc::run_scenario(req);
      int rc = emit(scen_args.out, cert.to_json(!scen_args.no_timings), cert.text_report());
      if (rc != 0) return rc;
      return osc::scenario_exit_code(cert);
    }

    if (*estimate) {
      if (est_args.quantity == "t1" || est_args.quantity == "t2") {
        const int budget = est_args.budget > 0 ? est_args.budget : 6;
        osc::Ex0Estimates est = osc::ex0_estimates(est_args.p, budget, 5);
        const osc::Estimate& e = est_args.quantity == "t1" ? est.t1 : est.t2;
        json j = estimate_json(e);
        j["doubling_relation_checked"] = est.consistency_checked;
        return emit(est_args.out, j, estimate_text(e));
      }
      const int per_factor = est_args.budget > 0 ? est_args.budget : 1;
      osc::Estimate e;
      if (est_args.backend == "free") {
        e = osc::osc_estimate_free_semigroup(est_args.max_n, per_factor);
      } else if (est_args.backend == "aff") {
        e = osc::osc_estimate_affine(false, est_args.max_n, per_factor);
      } else if (est_args.backend == "aff-mirror") {
        e = osc::osc_estimate_affine(true, est_args.max_n, per_factor);
      } else {
        e = osc::osc_estimate_int_line(est_args.scale_exp, est_args.max_n, per_factor);
      }
      return emit(est_args.out, estimate_json(e), estimate_text(e));
    }

    if (*selftest) {
      json report = osc::selftest_json(self_args.seed, self_args.threads, !self_args.no_timings);
      std::string text;
      for (const auto& c : report["criteria"]) {
        text += std::string(c["pass"].get<bool>() ? "PASS" : "FAIL") + "  criterion " +
                std::to_string(c["index"].get<int>()) + ": " + c["name"].get<std::string>() +
                "\n      " + c["detail"].get<std::string>() + "\n";
      }
      text += std::string(report["determinism"]["pass"].get<bool>() ? "PASS" : "FAIL") +
              "  determinism: " + report["determinism"]["detail"].get<std::string>() + "\n";
      text += report["all_pass"].get<bool>() ? "ALL PASS\n" : "FAILURES PRESENT\n";
      int rc = emit(self_args.out, report, text);
      if (rc != 0) return rc;
      return osc::selftest_passed(report) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
