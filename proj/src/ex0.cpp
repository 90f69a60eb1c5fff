#include "osc/ex0.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "osc/free_backend.hpp"

namespace osc {

namespace {
constexpr int kGenX = 0;
constexpr int kGenY = 1;
}  // namespace

Ex0Backend::Ex0Backend(int p, std::size_t osc_word_budget)
    : p_(p), osc_word_budget_(osc_word_budget) {
  if (p < 2) throw std::invalid_argument("stage parameter p must be at least 2");
  std::vector<Letter> root{Letter{kGenX, +1}, Letter{kGenY, -1}};
  pres_ = OneRelatorPresentation::make(tuples_.alphabet(), Word::from_reduced(root), p);
}

std::optional<bool> Ex0Backend::exact_osc_member(const BaseSpec& spec, OscillatorExpr expr,
                                                 const Elem& g) const {
  Ex0Decision d = decide_member(spec, expr, g, osc_word_budget_);
  switch (d.verdict) {
    case Ex0Verdict::ExactYes:
      return true;
    case Ex0Verdict::ExactNo:
      return false;
    default:
      return std::nullopt;
  }
}

Word Ex0Backend::reduce_coset(const Word& w) const { return dehn_reduce(pres_, w).first; }

const Word& Ex0Backend::canonical_rep(const Word& w) const {
  long long a = w.exponent_sum(kGenX);
  long long b = w.exponent_sum(kGenY);
  long long mod = 2ll * p_;
  std::pair<long long, long long> bucket{a + b, ((a - b) % mod + mod) % mod};
  auto& reps = rep_buckets_[bucket];
  for (const Word& cand : reps) {
    if (is_trivial_in_quotient(pres_, w * cand.inverse())) return cand;
  }
  reps.push_back(w);
  return reps.back();
}

PsiImage Ex0Backend::psi(const TupleElement& t) const {
  PsiImage out;
  for (const auto& [coord, w] : t.coords()) {
    out.int_part += w.exponent_sum(kGenX);
    Word r = reduce_coset(w);
    if (!r.empty()) out.cosets.emplace(coord, std::move(r));
  }
  return out;
}

bool Ex0Backend::psi_equal(const Elem& a, const Elem& b) const {
  if (a.int_part != b.int_part) return false;
  auto ia = a.cosets.begin();
  auto ib = b.cosets.begin();
  while (ia != a.cosets.end() || ib != b.cosets.end()) {
    if (ib == b.cosets.end() || (ia != a.cosets.end() && ia->first < ib->first)) {
      return false;  // class present on one side only; representatives are nonidentity
    }
    if (ia == a.cosets.end() || ib->first < ia->first) {
      return false;
    }
    if (!is_trivial_in_quotient(pres_, ia->second * ib->second.inverse())) return false;
    ++ia;
    ++ib;
  }
  return true;
}

PsiImage Ex0Backend::product(const Elem& a, const Elem& b) const {
  PsiImage out;
  out.int_part = a.int_part + b.int_part;
  out.cosets = a.cosets;
  for (const auto& [coord, w] : b.cosets) {
    auto it = out.cosets.find(coord);
    if (it == out.cosets.end()) {
      out.cosets.emplace(coord, w);
    } else {
      Word prod = reduce_coset(it->second * w);
      if (prod.empty()) {
        out.cosets.erase(it);
      } else {
        it->second = std::move(prod);
      }
    }
  }
  return out;
}

PsiImage Ex0Backend::inverse(const Elem& a) const {
  PsiImage out;
  out.int_part = -a.int_part;
  for (const auto& [coord, w] : a.cosets) {
    Word r = reduce_coset(w.inverse());
    if (!r.empty()) out.cosets.emplace(coord, std::move(r));
  }
  return out;
}

std::string Ex0Backend::key(const Elem& g) const {
  std::string out = "(" + std::to_string(g.int_part) + ", {";
  bool first = true;
  for (const auto& [coord, w] : g.cosets) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(coord);
    out += ": \"";
    out += canonical_rep(w).str(tuples_.alphabet());
    out += '"';
  }
  out += "})";
  return out;
}

std::vector<PsiImage> Ex0Backend::enumerate_base(const BaseSpec& spec,
                                                 std::size_t per_factor) const {
  DirectSumBackend::BaseSpec tuple_spec{spec.min_free, spec.inverted};
  std::vector<Elem> out;
  std::unordered_set<std::string> seen;
  for (const TupleElement& t : tuples_.enumerate_base(tuple_spec, per_factor)) {
    Elem e = psi(t);
    if (seen.insert(key(e)).second) out.push_back(std::move(e));
  }
  return out;
}

std::optional<Word> Ex0Backend::positive_coset_member(const Word& rep,
                                                      std::size_t bound) const {
  if (rep.is_positive()) return rep;
  // Multiplying by relator-closure members shifts the exponent pair by
  // multiples of (p, -p), so a positive word in the class of `rep` has
  // x-count ex + p*j >= 0, y-count ey - p*j >= 0 and total length exactly
  // ex + ey. A scan over that one length is therefore exhaustive.
  const long long ex = rep.exponent_sum(kGenX);
  const long long ey = rep.exponent_sum(kGenY);
  const long long len = ex + ey;
  if (len < 1 || len > static_cast<long long>(bound)) return std::nullopt;
  for (const Word& w : positive_words(2, static_cast<int>(len))) {
    if (static_cast<long long>(w.size()) != len) continue;
    long long dx = w.exponent_sum(kGenX) - ex;
    if (dx % p_ != 0) continue;
    if (is_trivial_in_quotient(pres_, w * rep.inverse())) return w;
  }
  return std::nullopt;
}

std::optional<bool> Ex0Backend::exact_base_member(const BaseSpec& spec, const Elem& g) const {
  const Elem probe = spec.inverted ? inverse(g) : g;
  if (probe.is_identity()) return true;
  long long candidate_sum = 0;
  for (const auto& [coord, rep] : probe.cosets) {
    if (coord < spec.min_free) return false;
    // The base tuple matching `probe`, if any, is unique: each class holds at
    // most one positive word, and classes trivial in `probe` force identity
    // coordinates. So the integer part either matches that tuple or nothing.
    if (rep.is_positive()) {
      candidate_sum += rep.exponent_sum(kGenX);
      continue;
    }
    // A positive class member has length exactly ex + ey (see
    // positive_coset_member); outside [1, cap] the exact-length scan is
    // either vacuous (no positive member exists) or unaffordable (undecided).
    const long long len = rep.exponent_sum(kGenX) + rep.exponent_sum(kGenY);
    const std::size_t cap = rep.size() + 4 * static_cast<std::size_t>(p_);
    if (len < 1) return false;
    if (len > static_cast<long long>(cap)) return std::nullopt;
    auto pos = positive_coset_member(rep, cap);
    if (!pos) return false;  // scan over the exact length was exhaustive
    candidate_sum += pos->exponent_sum(kGenX);
  }
  return candidate_sum == probe.int_part;
}

Ex0Decision Ex0Backend::decide_member(const BaseSpec& spec, OscillatorExpr expr,
                                      const Elem& g, std::size_t word_budget) const {
  const OscillatorExpr eff = spec.inverted ? expr.flipped() : expr;
  const int k = expr.n;

  Ex0Decision out;
  if (g.is_identity()) {
    out.verdict = Ex0Verdict::ExactYes;
    out.factors.assign(static_cast<std::size_t>(k), identity());
    out.reason = "identity element: all factors identity";
    return out;
  }
  for (const auto& [coord, rep] : g.cosets) {
    if (coord < spec.min_free) {
      out.verdict = Ex0Verdict::ExactNo;
      out.reason = "nonidentity quotient class at coordinate " + std::to_string(coord) +
                   ", below the base window at " + std::to_string(spec.min_free);
      return out;
    }
  }
  if (g.cosets.empty() && k <= 2 * p_ - 2) {
    out.verdict = Ex0Verdict::ExactNo;
    out.reason =
        "all classes trivial with nonzero integer part: preimage coordinates would lie in "
        "the relator closure within " +
        std::to_string(k) + " <= 2p-2 alternating blocks, which holds only the identity";
    return out;
  }

  // Bounded preimage search. Candidate coordinate words are scanned once over
  // the reduced-word ball; kernel words (trivial in the quotient, nonzero
  // integer value) may sit on fresh coordinates to balance the integer part.
  std::map<long long, Word> kernel;
  std::map<int, std::map<long long, Word>> cands;
  for (const Word& v : reduced_words(2, word_budget)) {
    if (v.empty() || !free_semigroup_osc_member(v, eff)) continue;
    if (is_trivial_in_quotient(pres_, v)) {
      long long val = v.exponent_sum(kGenX);
      if (val != 0) kernel.emplace(val, v);
      continue;
    }
    for (const auto& [coord, rep] : g.cosets) {
      if (is_trivial_in_quotient(pres_, v * rep.inverse())) {
        cands[coord].emplace(v.exponent_sum(kGenX), v);
      }
    }
  }

  for (const auto& [coord, rep] : g.cosets) {
    if (cands[coord].empty()) {
      out.verdict = Ex0Verdict::EvidenceNo;
      out.reason = "no in-set preimage word found for the class at coordinate " +
                   std::to_string(coord) + " within word budget " +
                   std::to_string(word_budget);
      return out;
    }
  }

  // Partial sums over the per-class choices (first-found word per sum).
  std::map<long long, std::vector<Word>> partial;
  partial.emplace(0, std::vector<Word>{});
  std::vector<int> coords;
  for (const auto& [coord, rep] : g.cosets) coords.push_back(coord);
  for (int c : coords) {
    std::map<long long, std::vector<Word>> next;
    for (const auto& [sum, chosen] : partial) {
      for (const auto& [val, w] : cands[c]) {
        auto it = next.find(sum + val);
        if (it == next.end()) {
          std::vector<Word> ext = chosen;
          ext.push_back(w);
          next.emplace(sum + val, std::move(ext));
        }
      }
    }
    partial = std::move(next);
  }

  // Kernel reachability for the residual integer value, with reconstruction.
  const long long R = std::llabs(g.int_part) +
                      static_cast<long long>(word_budget) *
                          (static_cast<long long>(coords.size()) + 2);
  std::map<long long, std::pair<long long, Word>> parent;  // sum -> (prev, word)
  std::vector<long long> frontier{0};
  std::unordered_set<long long> reached{0};
  while (!frontier.empty()) {
    std::vector<long long> fresh;
    for (long long r : frontier) {
      for (const auto& [val, w] : kernel) {
        long long nr = r + val;
        if (std::llabs(nr) > R || reached.count(nr)) continue;
        reached.insert(nr);
        parent.emplace(nr, std::make_pair(r, w));
        fresh.push_back(nr);
      }
    }
    frontier = std::move(fresh);
  }

  for (const auto& [sum, chosen] : partial) {
    long long residual = g.int_part - sum;
    if (std::llabs(residual) > R || !reached.count(residual)) continue;

    TupleElement::Map m;
    for (std::size_t i = 0; i < coords.size(); ++i) m.emplace(coords[i], chosen[i]);
    int fresh_coord = spec.min_free;
    if (!coords.empty()) fresh_coord = std::max(fresh_coord, coords.back() + 1);
    for (long long r = residual; r != 0;) {
      const auto& [prev, w] = parent.at(r);
      m.emplace(fresh_coord++, w);
      r = prev;
    }
    TupleElement s = TupleElement::from_map(std::move(m));

    std::vector<TupleElement> tuple_factors(static_cast<std::size_t>(k));
    for (const auto& [coord, w] : s.coords()) {
      auto pieces = free_semigroup_osc_factors(w, eff);
      if (!pieces) throw std::logic_error("preimage coordinate lost its block embedding");
      for (int j = 0; j < k; ++j) {
        if (!(*pieces)[static_cast<std::size_t>(j)].empty()) {
          tuple_factors[static_cast<std::size_t>(j)] = tuple_product(
              tuple_factors[static_cast<std::size_t>(j)],
              TupleElement::single(coord, (*pieces)[static_cast<std::size_t>(j)]));
        }
      }
    }
    out.factors.clear();
    for (TupleElement& t : tuple_factors) {
      if (spec.inverted) t = tuple_inverse(t);
      out.factors.push_back(psi(t));
    }
    if (!verify_factorization(*this, expr, out.factors, g)) {
      throw std::logic_error("assembled preimage witness failed re-verification");
    }
    out.verdict = Ex0Verdict::ExactYes;
    out.reason = "preimage tuple " + tuples_.print(s) + " assembled and re-verified";
    return out;
  }

  out.verdict = Ex0Verdict::EvidenceNo;
  out.reason = "bounded preimage search exhausted at word budget " +
               std::to_string(word_budget);
  return out;
}

}  // namespace osc
