// Python bindings for the main operations: exact word arithmetic, the
// one-relator word problem, oscillator-set enumeration and membership,
// affine closed forms, the quotient-image separation checks, estimates,
// and scenario certificates. Structured results cross the boundary as
// plain dicts (via JSON), keeping the module surface small and stable.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

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

namespace py = pybind11;
using nlohmann::json;

namespace {

osc::Alphabet alphabet_from_names(const std::string& gens) {
  std::istringstream in(gens);
  osc::Alphabet ab;
  std::string name;
  while (in >> name) ab.add(name);
  if (ab.size() == 0) throw std::invalid_argument("no generator names given");
  return ab;
}

py::object json_to_py(const json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
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

osc::FreeGroupBackend::BaseSpec free_base_spec(const std::string& base, bool inverted,
                                               const osc::Alphabet& ab) {
  if (base == "semigroup") return osc::FreeGroupBackend::BaseSpec::free_semigroup(inverted);
  std::vector<osc::Word> elems;
  std::istringstream in(base);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) elems.push_back(osc::Word::parse(ab, token));
  }
  if (elems.empty()) throw std::invalid_argument("empty explicit base list");
  return osc::FreeGroupBackend::BaseSpec::explicit_set(std::move(elems), inverted);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact oscillator-set and separation-invariant toolkit";
  m.attr("__version__") = osc::kToolVersion;

  m.def(
      "reduce",
      [](const std::string& word, const std::string& gens) {
        osc::Alphabet ab = alphabet_from_names(gens);
        return osc::Word::parse(ab, word).str(ab);
      },
      py::arg("word"), py::arg("gens") = "x y", "Freely reduce a word and print it.");

  m.def(
      "cyclic_reduce",
      [](const std::string& word, const std::string& gens) {
        osc::Alphabet ab = alphabet_from_names(gens);
        auto [core, conj] = osc::Word::parse(ab, word).cyclic_reduce();
        return py::make_tuple(core.str(ab), conj.str(ab));
      },
      py::arg("word"), py::arg("gens") = "x y",
      "Cyclically reduce: returns (core, conjugator) with word = conj * core * conj'.");

  m.def(
      "is_trivial",
      [](int p, const std::string& word) {
        osc::Alphabet ab = osc::Alphabet::free2();
        auto pres = osc::OneRelatorPresentation::make(ab, osc::Word::parse(ab, "x y'"), p);
        return osc::is_trivial_in_quotient(pres, osc::Word::parse(ab, word));
      },
      py::arg("p"), py::arg("word"),
      "Word problem in <x, y | (x y')^p>: true iff the word is trivial there.");

  m.def(
      "osc_enumerate",
      [](int n, bool mirror, int budget, const std::string& base, bool inverted) {
        osc::FreeGroupBackend backend(osc::Alphabet::free2());
        auto spec = free_base_spec(base, inverted, backend.alphabet());
        auto set = osc::enumerate_oscillator(backend, spec, osc::OscillatorExpr(n, mirror),
                                             osc::EnumBudget{budget, 2'000'000});
        std::vector<std::string> out;
        out.reserve(set.entries.size());
        for (const auto& e : set.entries) out.push_back(backend.print(e.value));
        return out;
      },
      py::arg("n"), py::arg("mirror") = false, py::arg("budget") = 2,
      py::arg("base") = "semigroup", py::arg("inverted") = false,
      "Enumerate an oscillator set over the free group under a per-factor budget.");

  m.def(
      "osc_member",
      [](const std::string& word, int n, bool mirror, int budget, const std::string& base,
         bool inverted) {
        osc::FreeGroupBackend backend(osc::Alphabet::free2());
        auto spec = free_base_spec(base, inverted, backend.alphabet());
        osc::Word g = osc::Word::parse(backend.alphabet(), word);
        osc::OscillatorExpr expr(n, mirror);
        auto res = osc::member_oscillator(backend, spec, expr, g,
                                          osc::EnumBudget{budget, 2'000'000});
        auto exact = osc::exact_oscillator_member(backend, spec, expr, g);
        json factors = json::array();
        for (const auto& f : res.factors) factors.push_back(backend.print(f));
        json j{{"member_enumerated", res.found},
               {"factors", factors},
               {"exact", exact ? json(*exact) : json(nullptr)}};
        return json_to_py(j);
      },
      py::arg("word"), py::arg("n"), py::arg("mirror") = false, py::arg("budget") = 2,
      py::arg("base") = "semigroup", py::arg("inverted") = false,
      "Membership of a word in an oscillator set: bounded search plus the exact "
      "answer when the base supports one.");

  m.def(
      "aff_eval",
      [](const std::string& word) {
        return osc::word_to_map(osc::Word::parse(osc::Alphabet::affine_ab(), word)).str();
      },
      py::arg("word"), "Evaluate a word over {a, b} to a dyadic affine map literal.");

  m.def(
      "aff_member",
      [](const std::string& set, const std::string& map_literal) {
        osc::AffMap f = osc::AffMap::parse(map_literal);
        json witness = nullptr;
        bool member = false;
        if (set == "S") {
          member = osc::semigroup_member(f);
          if (member) {
            if (auto w = osc::semigroup_witness_word(f)) {
              witness = w->str(osc::Alphabet::affine_ab());
            }
          }
        } else if (set == "SSinv" || set == "SinvS") {
          osc::ProductSide side =
              set == "SSinv" ? osc::ProductSide::SSinv : osc::ProductSide::SinvS;
          member = osc::product_set_member(f, side);
          if (member) {
            if (auto pair = osc::product_set_witness(f, side)) {
              witness = json{{"s1", pair->first.str()}, {"s2", pair->second.str()}};
            }
          }
        } else {
          throw std::invalid_argument("set must be one of S, SSinv, SinvS");
        }
        return json_to_py(json{{"member", member}, {"witness", witness}});
      },
      py::arg("set"), py::arg("map"),
      "Exact membership in S, S*S^-1, or S^-1*S with a constructive witness.");

  m.def(
      "ex0_member",
      [](int p, const std::string& tuple_literal, int n, int stage, bool mirror, int budget) {
        osc::Ex0Backend backend(p, static_cast<std::size_t>(budget));
        osc::PsiImage g = backend.psi(osc::parse_tuple(backend.alphabet(), tuple_literal));
        osc::Ex0Decision d = backend.decide_member(
            osc::Ex0Backend::BaseSpec::nbhd(n), osc::OscillatorExpr(stage, mirror), g,
            static_cast<std::size_t>(budget));
        json factors = json::array();
        for (const auto& f : d.factors) factors.push_back(backend.key(f));
        const char* verdict = d.verdict == osc::Ex0Verdict::ExactYes   ? "ExactYes"
                              : d.verdict == osc::Ex0Verdict::ExactNo ? "ExactNo"
                                                                       : "EvidenceNo";
        return json_to_py(json{{"image", backend.key(g)},
                               {"verdict", verdict},
                               {"reason", d.reason},
                               {"factors", factors}});
      },
      py::arg("p"), py::arg("tuple"), py::arg("n"), py::arg("stage"), py::arg("mirror") = false,
      py::arg("budget") = 6,
      "Decide membership of a tuple's image in a stage of the image of U_n.");

  m.def(
      "separation_estimates",
      [](int p, int budget) {
        osc::Ex0Estimates est = osc::ex0_estimates(p, budget, 5);
        return json_to_py(json{{"t1", estimate_json(est.t1)},
                               {"t2", estimate_json(est.t2)},
                               {"doubling_relation_checked", est.consistency_checked}});
      },
      py::arg("p"), py::arg("budget") = 6,
      "T1 and T2 estimates for the quotient-image group, with the doubling-relation check.");

  m.def(
      "estimate_osc",
      [](const std::string& backend, int max_n, int budget, int scale_exp) {
        osc::Estimate e;
        if (backend == "free") {
          e = osc::osc_estimate_free_semigroup(max_n, budget);
        } else if (backend == "aff") {
          e = osc::osc_estimate_affine(false, max_n, budget);
        } else if (backend == "aff-mirror") {
          e = osc::osc_estimate_affine(true, max_n, budget);
        } else if (backend == "int") {
          e = osc::osc_estimate_int_line(scale_exp, max_n, budget);
        } else {
          throw std::invalid_argument("backend must be one of free, aff, aff-mirror, int");
        }
        return json_to_py(estimate_json(e));
      },
      py::arg("backend"), py::arg("max_n") = 5, py::arg("budget") = 1, py::arg("scale_exp") = 0,
      "Oscillation estimate with bound kinds for a named group/base pair.");

  m.def(
      "scenario",
      [](const std::string& id, int p, int budget, int max_n, long long seed) {
        osc::ScenarioRequest req{id, p, budget, max_n, seed, 1};
        osc::Certificate cert = osc::run_scenario(req);
        return json_to_py(cert.to_json(false));
      },
      py::arg("id"), py::arg("p") = 2, py::arg("budget") = 0, py::arg("max_n") = 0,
      py::arg("seed") = 0,
      "Run a named verification scenario and return its certificate (timings stripped).");

  m.def("scenario_ids", []() { return osc::scenario_ids(); },
        "Names of the shipped verification scenarios.");

  m.def(
      "replay",
      [](const py::object& certificate) {
        py::object dumps = py::module_::import("json").attr("dumps");
        json j = json::parse(dumps(certificate).cast<std::string>());
        return osc::replay_certificate(osc::Certificate::from_json(j));
      },
      py::arg("certificate"),
      "Re-run a certificate's scenario from its recorded parameters and compare content.");
}
