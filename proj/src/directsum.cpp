#include "osc/directsum.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace osc {

TupleElement TupleElement::from_map(Map coords) {
  TupleElement t;
  for (auto& [coord, w] : coords) {
    if (coord < 0) throw std::invalid_argument("tuple coordinate must be nonnegative");
    if (!w.empty()) t.coords_.emplace(coord, std::move(w));
  }
  return t;
}

TupleElement TupleElement::single(int coord, const Word& w) {
  Map m;
  m.emplace(coord, w);
  return from_map(std::move(m));
}

std::optional<int> TupleElement::max_support() const {
  if (coords_.empty()) return std::nullopt;
  return coords_.rbegin()->first;
}

std::optional<int> TupleElement::min_support() const {
  if (coords_.empty()) return std::nullopt;
  return coords_.begin()->first;
}

const Word& TupleElement::at(int coord) const {
  static const Word kIdentity{};
  auto it = coords_.find(coord);
  return it == coords_.end() ? kIdentity : it->second;
}

std::size_t TupleElement::total_length() const {
  std::size_t n = 0;
  for (const auto& [coord, w] : coords_) n += w.size();
  return n;
}

TupleElement tuple_product(const TupleElement& u, const TupleElement& v) {
  TupleElement::Map out = u.coords();
  for (const auto& [coord, w] : v.coords()) {
    auto it = out.find(coord);
    if (it == out.end()) {
      out.emplace(coord, w);
    } else {
      Word prod = it->second * w;
      if (prod.empty()) {
        out.erase(it);
      } else {
        it->second = std::move(prod);
      }
    }
  }
  return TupleElement::from_map(std::move(out));
}

TupleElement tuple_inverse(const TupleElement& u) {
  TupleElement::Map out;
  for (const auto& [coord, w] : u.coords()) out.emplace(coord, w.inverse());
  return TupleElement::from_map(std::move(out));
}

std::string tuple_str(const TupleElement& t, const Alphabet& alphabet) {
  std::string out = "{";
  bool first = true;
  for (const auto& [coord, w] : t.coords()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(coord);
    out += ": \"";
    out += w.str(alphabet);
    out += '"';
  }
  out += '}';
  return out;
}

TupleElement parse_tuple(const Alphabet& alphabet, const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> std::runtime_error {
    return std::runtime_error("bad tuple literal at offset " + std::to_string(i) + ": " + why);
  };
  skip_ws();
  if (i >= text.size() || text[i] != '{') throw fail("expected '{'");
  ++i;
  TupleElement::Map coords;
  skip_ws();
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    while (true) {
      skip_ws();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw fail("expected coordinate index");
      int coord = std::stoi(text.substr(start, i - start));
      skip_ws();
      if (i >= text.size() || text[i] != ':') throw fail("expected ':'");
      ++i;
      skip_ws();
      if (i >= text.size() || text[i] != '"') throw fail("expected opening quote");
      ++i;
      std::size_t word_start = i;
      while (i < text.size() && text[i] != '"') ++i;
      if (i >= text.size()) throw fail("unterminated word");
      Word w = Word::parse(alphabet, text.substr(word_start, i - word_start));
      ++i;
      if (coords.count(coord)) throw fail("duplicate coordinate");
      if (!w.empty()) coords.emplace(coord, std::move(w));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      throw fail("expected ',' or '}'");
    }
  }
  skip_ws();
  if (i != text.size()) throw fail("trailing characters");
  return TupleElement::from_map(std::move(coords));
}

namespace {

// Assign words (drawn from `choices`, sorted identity-first so total length
// stays within budget via the size filter) to window coordinates, in
// coordinate-lexicographic order.
void assign_coords(const std::vector<Word>& choices, int coord, int end,
                   std::size_t remaining, TupleElement::Map& acc,
                   std::vector<TupleElement>& out) {
  if (coord == end) {
    out.push_back(TupleElement::from_map(acc));
    return;
  }
  for (const Word& w : choices) {
    if (w.size() > remaining) continue;
    if (w.empty()) {
      assign_coords(choices, coord + 1, end, remaining, acc, out);
    } else {
      acc.emplace(coord, w);
      assign_coords(choices, coord + 1, end, remaining - w.size(), acc, out);
      acc.erase(coord);
    }
  }
}

}  // namespace

std::vector<TupleElement> DirectSumBackend::enumerate_base(const BaseSpec& spec,
                                                           std::size_t per_factor) const {
  std::vector<Word> choices = positive_words(2, per_factor);
  std::vector<TupleElement> out;
  TupleElement::Map acc;
  assign_coords(choices, spec.min_free, spec.min_free + static_cast<int>(per_factor),
                per_factor, acc, out);
  if (spec.inverted) {
    for (TupleElement& t : out) t = tuple_inverse(t);
  }
  return out;
}

std::optional<bool> DirectSumBackend::exact_base_member(const BaseSpec& spec,
                                                        const Elem& g) const {
  const Elem probe = spec.inverted ? tuple_inverse(g) : g;
  if (probe.min_support() && *probe.min_support() < spec.min_free) return false;
  for (const auto& [coord, w] : probe.coords()) {
    if (!w.is_positive()) return false;
  }
  return true;
}

std::optional<bool> DirectSumBackend::exact_osc_member(const BaseSpec& spec,
                                                       OscillatorExpr expr,
                                                       const Elem& g) const {
  // A signed product of inverted base factors is the mirror product of
  // uninverted ones, so flip the expression instead of the base.
  const OscillatorExpr eff = spec.inverted ? expr.flipped() : expr;
  if (g.min_support() && *g.min_support() < spec.min_free) return false;
  for (const auto& [coord, w] : g.coords()) {
    if (!free_semigroup_osc_member(w, eff)) return false;
  }
  return true;
}

std::vector<TupleElement> DirectSumBackend::enumerate_ball(int lo, int width,
                                                           std::size_t total_len) const {
  std::vector<Word> choices = reduced_words(2, total_len);
  std::vector<TupleElement> out;
  TupleElement::Map acc;
  assign_coords(choices, lo, lo + width, total_len, acc, out);
  return out;
}

}  // namespace osc
