#pragma once

// Checker for the five classical neighborhood-filter conditions on a finite
// tested slice of a basis family at the identity:
//   (P1) every pair U, V has a basis member inside U and inside V;
//   (P2) every U has a basis member V with V*V inside U;
//   (P3) every U and every x in U have a basis member V with x*V inside U;
//   (P4) every U and every group element x have V with x^-1*V*x inside U;
//   (P5) every U has V with V^-1 inside U.
// A family passing (P1)-(P4) is the neighborhood basis of a paratopological
// group topology; (P5) on top upgrades it to a topological group.
//
// Verdict discipline: Verified needs a structural argument supplied by the
// backend (subsemigroup closure, symmetry, an intersection lower set, a
// conjugation absorber), cross-validated by exact membership of enumerated
// elements — a cross-validation failure is a backend contract violation and
// throws. RefutedWithWitness needs, for some instance of the outer
// quantifiers, an exact non-membership witness against EVERY tested family
// member. Everything else is InconclusiveAtBound. Universal quantifiers over
// group elements range over the supplied test ball; quantifiers over the
// basis range over the supplied family slice — reports record both.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osc/oscillator.hpp"

namespace osc {

enum class CheckVerdict { Verified, RefutedWithWitness, InconclusiveAtBound };

inline const char* check_verdict_name(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Verified:
      return "Verified";
    case CheckVerdict::RefutedWithWitness:
      return "RefutedWithWitness";
    default:
      return "InconclusiveAtBound";
  }
}

struct ConditionReport {
  std::string condition;  // "P1".."P5"
  CheckVerdict verdict = CheckVerdict::InconclusiveAtBound;
  std::string detail;
  std::vector<std::string> witnesses;
};

struct PontriaginReport {
  std::vector<ConditionReport> conditions;  // P1..P5, in order

  const ConditionReport& at(std::string_view name) const {
    for (const auto& c : conditions) {
      if (c.condition == name) return c;
    }
    throw std::out_of_range("no such condition report");
  }
};

struct PontriaginBudget {
  int per_factor = 4;             // enumeration depth for base sets
  std::size_t max_checks = 5000;  // cap on cross-validation membership checks per condition
};

namespace detail {

inline bool truthy(bool b) { return b; }
inline bool truthy(const std::optional<bool>& b) { return b.has_value() && *b; }

}  // namespace detail

template <typename B>
  requires GroupBackend<B>
PontriaginReport pontriagin_check(
    const B& backend,
    const std::vector<std::pair<std::string, typename B::BaseSpec>>& family,
    const std::vector<typename B::Elem>& ball, PontriaginBudget budget = {}) {
  using Spec = typename B::BaseSpec;
  using Elem = typename B::Elem;
  if (family.empty()) throw std::invalid_argument("the tested family must be nonempty");

  const std::size_t nf = family.size();
  std::vector<std::vector<Elem>> enums;
  enums.reserve(nf);
  for (const auto& [name, spec] : family) {
    enums.push_back(backend.enumerate_base(spec, budget.per_factor));
  }

  auto exact_no = [&](const Spec& s, const Elem& g) {
    auto v = backend.exact_base_member(s, g);
    return v.has_value() && !*v;
  };
  const std::string family_note =
      " (quantifiers over the " + std::to_string(nf) + " tested family members)";

  PontriaginReport report;
  const Spec& s0 = family.front().second;
  const Elem e0 = backend.identity();

  // ---------- P1: binary intersections ----------
  {
    ConditionReport r;
    r.condition = "P1";
    if constexpr (requires {
                    { backend.intersection_lower(s0, s0) } -> std::same_as<Spec>;
                    detail::truthy(backend.base_includes(s0, s0));
                  }) {
      bool structural = true;
      std::size_t checks = 0;
      for (std::size_t i = 0; i < nf && structural; ++i) {
        for (std::size_t j = i; j < nf && structural; ++j) {
          Spec w = backend.intersection_lower(family[i].second, family[j].second);
          if (!detail::truthy(backend.base_includes(w, family[i].second)) ||
              !detail::truthy(backend.base_includes(w, family[j].second))) {
            structural = false;
            break;
          }
          for (const Elem& g : backend.enumerate_base(w, std::min(budget.per_factor, 3))) {
            if (checks++ >= budget.max_checks) break;
            if (exact_no(family[i].second, g) || exact_no(family[j].second, g)) {
              throw std::logic_error("intersection lower set escapes its pair: backend contract violated");
            }
          }
        }
      }
      if (structural) {
        r.verdict = CheckVerdict::Verified;
        r.detail = "structural: every tested pair admits a family member included in both, "
                   "cross-validated on enumerated elements" + family_note;
      }
    }
    if (r.verdict != CheckVerdict::Verified) {
      for (std::size_t i = 0; i < nf && r.verdict != CheckVerdict::RefutedWithWitness; ++i) {
        for (std::size_t j = i; j < nf; ++j) {
          bool all_w_fail = true;
          std::vector<std::string> wit;
          for (std::size_t wi = 0; wi < nf; ++wi) {
            bool failed = false;
            for (const Elem& g : enums[wi]) {
              if (exact_no(family[i].second, g) || exact_no(family[j].second, g)) {
                wit.push_back("candidate " + family[wi].first + ": element " + backend.key(g) +
                              " is exactly outside " + family[i].first + " or " + family[j].first);
                failed = true;
                break;
              }
            }
            if (!failed) {
              all_w_fail = false;
              break;
            }
          }
          if (all_w_fail) {
            r.verdict = CheckVerdict::RefutedWithWitness;
            r.detail = "pair (" + family[i].first + ", " + family[j].first +
                       "): every tested candidate escapes the intersection" + family_note;
            r.witnesses = std::move(wit);
            break;
          }
        }
      }
      if (r.verdict != CheckVerdict::RefutedWithWitness) {
        r.detail = "no refutation found; verification needs structural intersection support" +
                   family_note;
      }
    }
    report.conditions.push_back(std::move(r));
  }

  // ---------- P2: squares ----------
  {
    ConditionReport r;
    r.condition = "P2";
    if constexpr (requires { detail::truthy(backend.base_is_subsemigroup(s0)); }) {
      bool all_closed = true;
      for (const auto& [name, spec] : family) {
        if (!detail::truthy(backend.base_is_subsemigroup(spec))) {
          all_closed = false;
          break;
        }
      }
      if (all_closed) {
        std::size_t checks = 0;
        for (std::size_t i = 0; i < nf && checks < budget.max_checks; ++i) {
          for (const Elem& a : enums[i]) {
            for (const Elem& b : enums[i]) {
              if (checks++ >= budget.max_checks) break;
              if (exact_no(family[i].second, backend.product(a, b))) {
                throw std::logic_error("subsemigroup claim contradicted by a product: backend contract violated");
              }
            }
            if (checks >= budget.max_checks) break;
          }
        }
        r.verdict = CheckVerdict::Verified;
        r.detail = "structural: every tested base set is closed under products, so V = U works; "
                   "cross-validated on enumerated pairs" + family_note;
      }
    }
    if (r.verdict != CheckVerdict::Verified) {
      for (std::size_t i = 0; i < nf; ++i) {
        bool all_v_fail = true;
        std::vector<std::string> wit;
        for (std::size_t vi = 0; vi < nf; ++vi) {
          bool failed = false;
          for (const Elem& a : enums[vi]) {
            for (const Elem& b : enums[vi]) {
              if (exact_no(family[i].second, backend.product(a, b))) {
                wit.push_back("candidate " + family[vi].first + ": product " +
                              backend.key(backend.product(a, b)) + " is exactly outside " +
                              family[i].first);
                failed = true;
                break;
              }
            }
            if (failed) break;
          }
          if (!failed) {
            all_v_fail = false;
            break;
          }
        }
        if (all_v_fail) {
          r.verdict = CheckVerdict::RefutedWithWitness;
          r.detail = "set " + family[i].first + ": every tested candidate has a product escaping it" +
                     family_note;
          r.witnesses = std::move(wit);
          break;
        }
      }
      if (r.verdict != CheckVerdict::RefutedWithWitness) {
        r.detail = "no refutation found; verification needs structural closure support" + family_note;
      }
    }
    report.conditions.push_back(std::move(r));
  }

  // ---------- P3: left translations inside a base set ----------
  {
    ConditionReport r;
    r.condition = "P3";
    if constexpr (requires { detail::truthy(backend.base_is_subsemigroup(s0)); }) {
      bool all_closed = true;
      for (const auto& [name, spec] : family) {
        if (!detail::truthy(backend.base_is_subsemigroup(spec))) {
          all_closed = false;
          break;
        }
      }
      if (all_closed) {
        std::size_t checks = 0;
        for (std::size_t i = 0; i < nf && checks < budget.max_checks; ++i) {
          for (const Elem& x : enums[i]) {
            for (const Elem& v : enums[i]) {
              if (checks++ >= budget.max_checks) break;
              if (exact_no(family[i].second, backend.product(x, v))) {
                throw std::logic_error("translation claim contradicted: backend contract violated");
              }
            }
            if (checks >= budget.max_checks) break;
          }
        }
        r.verdict = CheckVerdict::Verified;
        r.detail = "structural: base sets are closed under products, so x*U stays inside U for "
                   "x in U; cross-validated on enumerated pairs" + family_note;
      }
    }
    if (r.verdict != CheckVerdict::Verified) {
      for (std::size_t i = 0; i < nf && r.verdict != CheckVerdict::RefutedWithWitness; ++i) {
        for (const Elem& x : enums[i]) {
          bool all_v_fail = true;
          std::vector<std::string> wit;
          for (std::size_t vi = 0; vi < nf; ++vi) {
            bool failed = false;
            for (const Elem& v : enums[vi]) {
              if (exact_no(family[i].second, backend.product(x, v))) {
                wit.push_back("candidate " + family[vi].first + ": " + backend.key(x) + " * " +
                              backend.key(v) + " is exactly outside " + family[i].first);
                failed = true;
                break;
              }
            }
            if (!failed) {
              all_v_fail = false;
              break;
            }
          }
          if (all_v_fail) {
            r.verdict = CheckVerdict::RefutedWithWitness;
            r.detail = "set " + family[i].first + ", translate " + backend.key(x) +
                       ": every tested candidate escapes" + family_note;
            r.witnesses = std::move(wit);
            break;
          }
        }
      }
      if (r.verdict != CheckVerdict::RefutedWithWitness) {
        r.detail = "no refutation found; verification needs structural closure support" + family_note;
      }
    }
    report.conditions.push_back(std::move(r));
  }

  // ---------- P4: conjugation absorbers ----------
  {
    ConditionReport r;
    r.condition = "P4";
    const std::string ball_note =
        "; conjugators range over the " + std::to_string(ball.size()) + "-element test ball";
    if constexpr (requires {
                    { backend.conjugation_absorber(e0, s0) } -> std::same_as<Spec>;
                  }) {
      std::size_t checks = 0;
      for (const auto& [name, spec] : family) {
        for (const Elem& x : ball) {
          Spec v = backend.conjugation_absorber(x, spec);
          for (const Elem& g : backend.enumerate_base(v, std::min(budget.per_factor, 3))) {
            if (checks++ >= budget.max_checks) break;
            Elem conj = backend.product(backend.product(backend.inverse(x), g), x);
            if (exact_no(spec, conj)) {
              throw std::logic_error("conjugation absorber leaks: backend contract violated");
            }
          }
          if (checks >= budget.max_checks) break;
        }
      }
      r.verdict = CheckVerdict::Verified;
      r.detail = "structural: a conjugation absorber was produced for every tested "
                 "(set, conjugator) pair and cross-validated on enumerated elements" +
                 family_note + ball_note;
    } else {
      for (std::size_t i = 0; i < nf && r.verdict != CheckVerdict::RefutedWithWitness; ++i) {
        for (const Elem& x : ball) {
          bool all_v_fail = true;
          std::vector<std::string> wit;
          for (std::size_t vi = 0; vi < nf; ++vi) {
            bool failed = false;
            for (const Elem& v : enums[vi]) {
              Elem conj = backend.product(backend.product(backend.inverse(x), v), x);
              if (exact_no(family[i].second, conj)) {
                wit.push_back("candidate " + family[vi].first + ": conjugate " + backend.key(conj) +
                              " of " + backend.key(v) + " by " + backend.key(x) +
                              " is exactly outside " + family[i].first);
                failed = true;
                break;
              }
            }
            if (!failed) {
              all_v_fail = false;
              break;
            }
          }
          if (all_v_fail) {
            r.verdict = CheckVerdict::RefutedWithWitness;
            r.detail = "set " + family[i].first + ", conjugator " + backend.key(x) +
                       ": every tested candidate leaks under conjugation" + family_note + ball_note;
            r.witnesses = std::move(wit);
            break;
          }
        }
      }
      if (r.verdict != CheckVerdict::RefutedWithWitness) {
        r.detail = "no refutation found; verification needs a structural conjugation absorber" +
                   family_note + ball_note;
      }
    }
    report.conditions.push_back(std::move(r));
  }

  // ---------- P5: inverse containment ----------
  {
    ConditionReport r;
    r.condition = "P5";
    if constexpr (requires { detail::truthy(backend.base_is_symmetric(s0)); }) {
      bool all_symmetric = true;
      for (const auto& [name, spec] : family) {
        if (!detail::truthy(backend.base_is_symmetric(spec))) {
          all_symmetric = false;
          break;
        }
      }
      if (all_symmetric) {
        std::size_t checks = 0;
        for (std::size_t i = 0; i < nf && checks < budget.max_checks; ++i) {
          for (const Elem& v : enums[i]) {
            if (checks++ >= budget.max_checks) break;
            if (exact_no(family[i].second, backend.inverse(v))) {
              throw std::logic_error("symmetry claim contradicted by an inverse: backend contract violated");
            }
          }
        }
        r.verdict = CheckVerdict::Verified;
        r.detail = "structural: every tested base set is symmetric, so V = U works; "
                   "cross-validated on enumerated inverses" + family_note;
      }
    }
    if (r.verdict != CheckVerdict::Verified) {
      for (std::size_t i = 0; i < nf; ++i) {
        bool all_v_fail = true;
        std::vector<std::string> wit;
        for (std::size_t vi = 0; vi < nf; ++vi) {
          bool failed = false;
          for (const Elem& v : enums[vi]) {
            Elem gi = backend.inverse(v);
            if (exact_no(family[i].second, gi)) {
              wit.push_back("candidate " + family[vi].first + ": inverse " + backend.key(gi) +
                            " of " + backend.key(v) + " is exactly outside " + family[i].first);
              failed = true;
              break;
            }
          }
          if (!failed) {
            all_v_fail = false;
            break;
          }
        }
        if (all_v_fail) {
          r.verdict = CheckVerdict::RefutedWithWitness;
          r.detail = "set " + family[i].first +
                     ": the inverse of every tested candidate escapes it" + family_note;
          r.witnesses = std::move(wit);
          break;
        }
      }
      if (r.verdict != CheckVerdict::RefutedWithWitness) {
        r.detail = "no refutation found; verification needs structural symmetry" + family_note;
      }
    }
    report.conditions.push_back(std::move(r));
  }

  return report;
}

}  // namespace osc
