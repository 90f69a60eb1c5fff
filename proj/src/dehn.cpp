#include "osc/dehn.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace osc {

OneRelatorPresentation OneRelatorPresentation::make(Alphabet alphabet, Word root, int power) {
  if (power < 2) throw std::invalid_argument("relator power must be >= 2");
  if (root.empty()) throw std::invalid_argument("relator root is empty");
  if (!root.is_cyclically_reduced()) throw std::invalid_argument("relator root must be cyclically reduced");
  OneRelatorPresentation pres;
  pres.alphabet = std::move(alphabet);
  pres.root = std::move(root);
  pres.power = power;
  pres.relator = pow(pres.root, power);
  if (pres.relator.size() != pres.root.size() * static_cast<std::size_t>(power)) {
    throw std::invalid_argument("relator power collapses; root is not cyclically reduced");
  }
  pres.relator_inv = pres.relator.inverse();
  return pres;
}

OneRelatorPresentation OneRelatorPresentation::parse(std::istream& in) {
  std::string line;
  std::string gens_text, relator_text, power_text;
  while (std::getline(in, line)) {
    auto pos = line.find(':');
    if (pos == std::string::npos) {
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      throw std::invalid_argument("presentation line without ':': " + line);
    }
    std::string key = line.substr(0, pos);
    std::string value = line.substr(pos + 1);
    if (key == "gens") gens_text = value;
    else if (key == "relator") relator_text = value;
    else if (key == "power") power_text = value;
    else throw std::invalid_argument("unknown presentation key: " + key);
  }
  if (gens_text.empty() || relator_text.empty() || power_text.empty()) {
    throw std::invalid_argument("presentation needs gens:, relator: and power: lines");
  }
  Alphabet ab;
  std::istringstream gens(gens_text);
  std::string name;
  while (gens >> name) ab.add(name);
  Word root = Word::parse(ab, relator_text);
  int power = std::stoi(power_text);
  return make(std::move(ab), std::move(root), power);
}

OneRelatorPresentation OneRelatorPresentation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open presentation file: " + path);
  return parse(in);
}

std::size_t OneRelatorPresentation::min_match_length() const {
  // strictly more than (power-1)*|relator|/power = (power-1)*|root|
  return static_cast<std::size_t>(power - 1) * root.size() + 1;
}

namespace {

// Length of the longest common prefix of w[wpos..] and r[rpos..].
std::size_t common_run(const std::vector<Letter>& w, std::size_t wpos, const std::vector<Letter>& r,
                       std::size_t rpos) {
  std::size_t n = 0;
  while (wpos + n < w.size() && rpos + n < r.size() && w[wpos + n] == r[rpos + n]) ++n;
  return n;
}

struct Candidate {
  std::size_t pos = 0;
  std::size_t len = 0;
  bool inverted = false;
  std::size_t offset = 0;
};

}  // namespace

std::optional<LongSubword> long_subword_search(const OneRelatorPresentation& pres, const Word& w,
                                               MatchStrategy strategy) {
  const std::size_t min_len = pres.min_match_length();
  const auto& wl = w.letters();
  std::optional<Candidate> best;

  auto consider = [&](const Candidate& c) {
    if (c.len < min_len) return;
    if (!best) {
      best = c;
      return;
    }
    switch (strategy) {
      case MatchStrategy::LongestLeftmost:
        if (c.len > best->len || (c.len == best->len && c.pos < best->pos)) best = c;
        break;
      case MatchStrategy::Leftmost:
        if (c.pos < best->pos || (c.pos == best->pos && c.len > best->len)) best = c;
        break;
      case MatchStrategy::RightmostLongest:
        if (c.len > best->len || (c.len == best->len && c.pos > best->pos)) best = c;
        break;
    }
  };

  for (std::size_t pos = 0; pos < wl.size(); ++pos) {
    for (int which = 0; which < 2; ++which) {
      const Word& rel = which ? pres.relator_inv : pres.relator;
      const auto& rl = rel.letters();
      for (std::size_t off = 0; off < rl.size(); ++off) {
        std::size_t run = common_run(wl, pos, rl, off);
        consider(Candidate{pos, run, which == 1, off});
      }
    }
  }

  if (!best) return std::nullopt;

  const Word& rel = best->inverted ? pres.relator_inv : pres.relator;
  Word s = w.subword(best->pos, best->len);
  // relator = a * s * b as letter sequences; in the quotient s = a^-1 * b^-1,
  // so s * (b * a) = e. The complement is b * a.
  Word a = rel.subword(0, best->offset);
  Word b = rel.subword(best->offset + best->len, rel.size() - best->offset - best->len);
  LongSubword out;
  out.pos = best->pos;
  out.subword = std::move(s);
  out.complement = b * a;
  out.relator_inverted = best->inverted;
  out.relator_offset = best->offset;
  return out;
}

std::pair<Word, DehnTrace> dehn_reduce(const OneRelatorPresentation& pres, const Word& w,
                                       MatchStrategy strategy) {
  Word cur = w;
  DehnTrace trace;
  while (auto m = long_subword_search(pres, cur, strategy)) {
    Word prefix = cur.subword(0, m->pos);
    Word suffix = cur.subword(m->pos + m->subword.size(), cur.size() - m->pos - m->subword.size());
    Word replacement = m->complement.inverse();
    Word next = prefix * replacement * suffix;
    if (next.size() >= cur.size()) {
      throw std::logic_error("dehn step failed to shorten the word");
    }
    DehnStep step;
    step.pos = m->pos;
    step.matched = std::move(m->subword);
    step.replacement = std::move(replacement);
    step.relator_inverted = m->relator_inverted;
    step.relator_offset = m->relator_offset;
    step.result_length = next.size();
    trace.steps.push_back(std::move(step));
    cur = std::move(next);
  }
  return {cur, trace};
}

bool is_trivial_in_quotient(const OneRelatorPresentation& pres, const Word& w) {
  return dehn_reduce(pres, w).first.empty();
}

bool replay_trace(const OneRelatorPresentation& pres, const Word& input, const DehnTrace& trace,
                  const Word& expected_output) {
  Word cur = input;
  for (const DehnStep& step : trace.steps) {
    if (step.pos + step.matched.size() > cur.size()) return false;
    if (cur.subword(step.pos, step.matched.size()) != step.matched) return false;
    const Word& rel = step.relator_inverted ? pres.relator_inv : pres.relator;
    if (step.relator_offset + step.matched.size() > rel.size()) return false;
    if (rel.subword(step.relator_offset, step.matched.size()) != step.matched) return false;
    if (step.matched.size() < pres.min_match_length()) return false;
    Word a = rel.subword(0, step.relator_offset);
    Word b = rel.subword(step.relator_offset + step.matched.size(),
                         rel.size() - step.relator_offset - step.matched.size());
    if (step.replacement != a.inverse() * b.inverse()) return false;
    Word prefix = cur.subword(0, step.pos);
    Word suffix = cur.subword(step.pos + step.matched.size(), cur.size() - step.pos - step.matched.size());
    cur = prefix * step.replacement * suffix;
    if (cur.size() != step.result_length) return false;
  }
  return cur == expected_output;
}

NormalClosureBall normal_closure_oracle(const OneRelatorPresentation& pres, std::size_t length_bound,
                                        std::size_t max_elements) {
  if (length_bound < pres.relator.size()) {
    throw std::invalid_argument("length bound is smaller than the relator");
  }
  NormalClosureBall ball;
  ball.length_bound = length_bound;
  ball.conjugator_bound = length_bound - pres.relator.size();

  auto admit = [&](std::unordered_set<Word>& set, std::vector<Word>& frontier, const Word& w) {
    if (w.size() > length_bound) return;
    if (set.insert(w).second) {
      if (set.size() > max_elements) {
        throw std::runtime_error("normal closure oracle exceeded its element budget");
      }
      frontier.push_back(w);
    }
  };

  std::vector<Word> frontier;
  admit(ball.members, frontier, Word());
  for (const Word& g : reduced_words(pres.alphabet.size(), static_cast<int>(ball.conjugator_bound))) {
    Word gi = g.inverse();
    Word c = g * pres.relator * gi;
    admit(ball.members, frontier, c);
    admit(ball.members, frontier, c.inverse());
  }

  // Semi-naive closure under products: each round combines new elements with
  // everything seen so far, both ways, until no new element fits the bound.
  std::vector<Word> all(ball.members.begin(), ball.members.end());
  while (!frontier.empty()) {
    std::vector<Word> fresh;
    std::swap(fresh, frontier);
    std::size_t known = all.size();
    for (const Word& f : fresh) {
      for (std::size_t i = 0; i < known; ++i) {
        admit(ball.members, frontier, f * all[i]);
        admit(ball.members, frontier, all[i] * f);
      }
      for (const Word& g : fresh) {
        admit(ball.members, frontier, f * g);
      }
    }
    all.insert(all.end(), fresh.begin(), fresh.end());
  }
  return ball;
}

}  // namespace osc
