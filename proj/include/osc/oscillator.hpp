#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace osc {

/// The n-oscillator expression (+-U)^n (mirror=false) or (-+U)^n (mirror=true),
/// n >= 1. The n = 0 stage is the trivial {e} and is excluded by convention.
struct OscillatorExpr {
  int n = 1;
  bool mirror = false;

  OscillatorExpr() = default;
  OscillatorExpr(int n_, bool mirror_) : n(n_), mirror(mirror_) {
    if (n < 1) throw std::invalid_argument("oscillator expressions require n >= 1");
  }

  OscillatorExpr flipped() const { return OscillatorExpr(n, !mirror); }

  /// Signs of the n factors, alternating. (+-U)^n starts with +1 and
  /// (-+U)^n starts with -1; e.g. n=3, mirror=false -> {+1, -1, +1}.
  std::vector<int> sign_pattern() const {
    std::vector<int> out(static_cast<std::size_t>(n));
    int s = mirror ? -1 : 1;
    for (auto& v : out) {
      v = s;
      s = -s;
    }
    return out;
  }

  std::string str() const {
    return std::string(mirror ? "(-+U)^" : "(+-U)^") + std::to_string(n);
  }
};

/// Budget for bounded oscillator enumeration: a per-factor bound passed to
/// the backend's base enumeration, plus an element-count cap that errors out
/// rather than truncating silently.
struct EnumBudget {
  int per_factor = 1;
  std::size_t max_elements = 2'000'000;
};

/// Backends provide the group operations, printable canonical keys and
/// bounded base-set enumeration. Keys must be injective on the elements a
/// run touches; enumeration order must be deterministic and must include
/// the identity.
template <typename B>
concept GroupBackend = requires(const B& b, const typename B::Elem& g,
                                const typename B::BaseSpec& s, int len) {
  typename B::Elem;
  typename B::BaseSpec;
  { b.identity() } -> std::same_as<typename B::Elem>;
  { b.product(g, g) } -> std::same_as<typename B::Elem>;
  { b.inverse(g) } -> std::same_as<typename B::Elem>;
  { b.key(g) } -> std::same_as<std::string>;
  { b.enumerate_base(s, len) } -> std::same_as<std::vector<typename B::Elem>>;
  { b.exact_base_member(s, g) } -> std::same_as<std::optional<bool>>;
};

/// Bounded enumeration of an oscillator set. An under-approximation of the
/// exact (generally infinite) set: membership of listed elements is exact
/// (each carries a verified factorization), absence proves nothing.
template <typename Elem>
struct BoundedSet {
  struct Entry {
    Elem value;
    std::string key;
    std::vector<Elem> factors;  // one base element per slot of the sign pattern
  };

  static constexpr const char* semantics = "UNDER_APPROXIMATION";

  OscillatorExpr expr;
  EnumBudget budget;
  std::vector<Entry> entries;  // deterministic first-found order
  std::unordered_map<std::string, std::size_t> index;

  bool contains(const std::string& k) const { return index.count(k) > 0; }
  const Entry* find(const std::string& k) const {
    auto it = index.find(k);
    return it == index.end() ? nullptr : &entries[it->second];
  }
  std::size_t size() const { return entries.size(); }
};

namespace detail {

template <typename B>
std::vector<typename B::Elem> signed_base(const B& backend, const typename B::BaseSpec& spec,
                                          int per_factor, int sign) {
  std::vector<typename B::Elem> base = backend.enumerate_base(spec, per_factor);
  if (sign < 0) {
    for (auto& e : base) e = backend.inverse(e);
  }
  return base;
}

}  // namespace detail

/// Enumerates (+-U)^n (or its mirror) by the defining recursion: the set for
/// the last j signs is base^sign * (set for the last j-1 signs). Entries are
/// deduplicated by canonical key at every level; the first factorization
/// found (base enumeration order) is kept, so the result is deterministic.
template <typename B>
  requires GroupBackend<B>
BoundedSet<typename B::Elem> enumerate_oscillator(const B& backend,
                                                  const typename B::BaseSpec& spec,
                                                  OscillatorExpr expr, EnumBudget budget) {
  using Elem = typename B::Elem;
  BoundedSet<Elem> cur;
  cur.expr = expr;
  cur.budget = budget;
  cur.entries.push_back({backend.identity(), backend.key(backend.identity()), {}});
  cur.index.emplace(cur.entries[0].key, 0);

  std::vector<int> pattern = expr.sign_pattern();
  for (int j = expr.n - 1; j >= 0; --j) {
    int sign = pattern[static_cast<std::size_t>(j)];
    auto base = detail::signed_base(backend, spec, budget.per_factor, sign);
    BoundedSet<Elem> next;
    next.expr = expr;
    next.budget = budget;
    for (const Elem& f : base) {
      for (const auto& entry : cur.entries) {
        Elem v = backend.product(f, entry.value);
        std::string k = backend.key(v);
        if (next.index.count(k)) continue;
        if (next.entries.size() >= budget.max_elements) {
          throw std::runtime_error("oscillator enumeration exceeded its element budget");
        }
        typename BoundedSet<Elem>::Entry e;
        e.value = std::move(v);
        e.key = std::move(k);
        e.factors.reserve(entry.factors.size() + 1);
        e.factors.push_back(sign < 0 ? backend.inverse(f) : f);  // stored unsigned
        e.factors.insert(e.factors.end(), entry.factors.begin(), entry.factors.end());
        next.index.emplace(e.key, next.entries.size());
        next.entries.push_back(std::move(e));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

/// Streams every product of the factor recursion without deduplication.
/// Useful for large containment scans where storing the set is wasteful.
template <typename B, typename Fn>
  requires GroupBackend<B>
void for_each_oscillator_product(const B& backend, const typename B::BaseSpec& spec,
                                 OscillatorExpr expr, EnumBudget budget, Fn&& fn) {
  using Elem = typename B::Elem;
  std::vector<int> pattern = expr.sign_pattern();
  if (expr.n == 1) {
    auto base = detail::signed_base(backend, spec, budget.per_factor, pattern[0]);
    for (const Elem& f : base) fn(f);
    return;
  }
  OscillatorExpr tail(expr.n - 1, pattern[1] < 0);
  BoundedSet<Elem> suffix = enumerate_oscillator(backend, spec, tail, budget);
  auto base = detail::signed_base(backend, spec, budget.per_factor, pattern[0]);
  for (const Elem& f : base) {
    for (const auto& entry : suffix.entries) fn(backend.product(f, entry.value));
  }
}

template <typename Elem>
struct MemberResult {
  bool found = false;
  std::vector<Elem> factors;  // witness when found; verified by multiplication
};

/// Verifies that the signed product of `factors` equals `g`.
template <typename B>
  requires GroupBackend<B>
bool verify_factorization(const B& backend, OscillatorExpr expr,
                          const std::vector<typename B::Elem>& factors,
                          const typename B::Elem& g) {
  if (factors.size() != static_cast<std::size_t>(expr.n)) return false;
  auto pattern = expr.sign_pattern();
  typename B::Elem acc = backend.identity();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    acc = backend.product(acc, pattern[i] < 0 ? backend.inverse(f) : f);
  }
  return backend.key(acc) == backend.key(g);
}

/// Bounded witness search: Yes answers carry a verified factorization,
/// No answers mean "not within this budget" and prove nothing.
template <typename B>
  requires GroupBackend<B>
MemberResult<typename B::Elem> member_oscillator(const B& backend,
                                                 const typename B::BaseSpec& spec,
                                                 OscillatorExpr expr,
                                                 const typename B::Elem& g, EnumBudget budget) {
  auto set = enumerate_oscillator(backend, spec, expr, budget);
  MemberResult<typename B::Elem> out;
  if (const auto* e = set.find(backend.key(g))) {
    out.found = true;
    out.factors = e->factors;
    if (!verify_factorization(backend, expr, out.factors, g)) {
      throw std::logic_error("enumerated witness failed re-verification");
    }
  }
  return out;
}

/// Calls the backend's exact oscillator membership predicate when it has one.
template <typename B>
std::optional<bool> exact_oscillator_member(const B& backend, const typename B::BaseSpec& spec,
                                            OscillatorExpr expr, const typename B::Elem& g) {
  if constexpr (requires { backend.exact_osc_member(spec, expr, g); }) {
    return backend.exact_osc_member(spec, expr, g);
  } else {
    return std::nullopt;
  }
}

template <typename Elem>
struct InclusionRefutation {
  Elem element;
  std::vector<Elem> factors;     // membership witness for the left side
  bool right_exact = false;      // non-membership decided by an exact predicate
  std::string left_claim;
  std::string right_claim;
};

template <typename Elem>
struct InclusionScan {
  std::optional<InclusionRefutation<Elem>> refutation;
  // No refutation AND every containment check answered by an exact predicate.
  // Still only budget-level evidence for the inclusion (the left side is an
  // under-approximation), but free of enumeration-vs-enumeration noise.
  bool all_exact = false;
  std::size_t left_size = 0;
};

/// Scans the bounded left enumeration for an element outside the right side.
/// Per element, an exact right-side membership predicate is preferred; when
/// it is missing or undecided, non-membership is only checked against a
/// strictly larger right enumeration (computed lazily) and a witness found
/// that way is evidence, not proof.
template <typename B>
  requires GroupBackend<B>
InclusionScan<typename B::Elem> scan_inclusion(const B& backend,
                                               const typename B::BaseSpec& left_spec,
                                               OscillatorExpr left_expr,
                                               const typename B::BaseSpec& right_spec,
                                               OscillatorExpr right_expr, EnumBudget budget) {
  auto left = enumerate_oscillator(backend, left_spec, left_expr, budget);

  InclusionScan<typename B::Elem> scan;
  scan.left_size = left.size();
  scan.all_exact = true;

  BoundedSet<typename B::Elem> right_enum;
  bool right_enum_ready = false;
  auto right_contains_bounded = [&](const std::string& k) {
    if (!right_enum_ready) {
      EnumBudget bigger = budget;
      bigger.per_factor = budget.per_factor * 2 + 1;
      right_enum = enumerate_oscillator(backend, right_spec, right_expr, bigger);
      right_enum_ready = true;
    }
    return right_enum.contains(k);
  };

  for (const auto& entry : left.entries) {
    bool in_right;
    bool exact_here;
    if (auto ex = exact_oscillator_member(backend, right_spec, right_expr, entry.value)) {
      in_right = *ex;
      exact_here = true;
    } else {
      in_right = right_contains_bounded(entry.key);
      exact_here = false;
      scan.all_exact = false;
    }
    if (!in_right) {
      InclusionRefutation<typename B::Elem> out;
      out.element = entry.value;
      out.factors = entry.factors;
      out.right_exact = exact_here;
      out.left_claim = left_expr.str();
      out.right_claim = right_expr.str();
      if (!verify_factorization(backend, left_expr, out.factors, out.element)) {
        throw std::logic_error("refutation witness failed re-verification");
      }
      scan.refutation = std::move(out);
      return scan;
    }
  }
  return scan;
}

/// Convenience wrapper around scan_inclusion returning just the witness.
template <typename B>
  requires GroupBackend<B>
std::optional<InclusionRefutation<typename B::Elem>> refute_inclusion(
    const B& backend, const typename B::BaseSpec& left_spec, OscillatorExpr left_expr,
    const typename B::BaseSpec& right_spec, OscillatorExpr right_expr, EnumBudget budget) {
  return scan_inclusion(backend, left_spec, left_expr, right_spec, right_expr, budget)
      .refutation;
}

/// Checks the inversion parity law on bounded enumerations at matched
/// budgets: inverting an even-stage set maps it onto itself, inverting an
/// odd-stage set maps it onto the mirror enumeration.
template <typename B>
  requires GroupBackend<B>
bool parity_check(const B& backend, const typename B::BaseSpec& spec, OscillatorExpr expr,
                  EnumBudget budget) {
  auto set = enumerate_oscillator(backend, spec, expr, budget);
  const BoundedSet<typename B::Elem>* target = &set;
  BoundedSet<typename B::Elem> mirror_set;
  if (expr.n % 2 == 1) {
    mirror_set = enumerate_oscillator(backend, spec, expr.flipped(), budget);
    target = &mirror_set;
  }
  if (set.size() != target->size()) return false;
  for (const auto& entry : set.entries) {
    if (!target->contains(backend.key(backend.inverse(entry.value)))) return false;
  }
  return true;
}

}  // namespace osc
