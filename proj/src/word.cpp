#include "osc/word.hpp"

#include <algorithm>
#include <cctype>

namespace osc {

Alphabet Alphabet::free2() {
  Alphabet ab;
  ab.add("x");
  ab.add("y");
  return ab;
}

Alphabet Alphabet::affine_ab() {
  Alphabet ab;
  ab.add("a");
  ab.add("b");
  return ab;
}

int Alphabet::add(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("generator name is empty");
  if (name == "e") throw std::invalid_argument("\"e\" is reserved for the identity");
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  names_.push_back(name);
  ids_.emplace(name, id);
  return id;
}

std::optional<int> Alphabet::find(std::string_view name) const {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& Alphabet::name(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("generator id out of range");
  return names_[static_cast<std::size_t>(id)];
}

Word Word::reduce(std::span<const Letter> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (const Letter& l : raw) {
    if (!out.empty() && out.back().cancels(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word Word::from_reduced(std::vector<Letter> letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    if (letters[i].cancels(letters[i + 1])) {
      throw std::invalid_argument("letter sequence is not freely reduced");
    }
  }
  return Word(std::move(letters));
}

Word Word::operator*(const Word& rhs) const {
  std::size_t i = letters_.size();
  std::size_t j = 0;
  while (i > 0 && j < rhs.letters_.size() && letters_[i - 1].cancels(rhs.letters_[j])) {
    --i;
    ++j;
  }
  std::vector<Letter> out;
  out.reserve(i + rhs.letters_.size() - j);
  out.insert(out.end(), letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(j), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

std::pair<Word, Word> Word::cyclic_reduce() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  std::vector<Letter> conj;
  while (hi - lo >= 2 && letters_[lo].cancels(letters_[hi - 1])) {
    conj.push_back(letters_[lo]);
    ++lo;
    --hi;
  }
  std::vector<Letter> core(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                           letters_.begin() + static_cast<std::ptrdiff_t>(hi));
  return {Word(std::move(core)), Word(std::move(conj))};
}

bool Word::is_cyclically_reduced() const {
  if (letters_.size() < 2) return true;
  return !letters_.front().cancels(letters_.back());
}

std::vector<Block> Word::blocks() const {
  std::vector<Block> out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j].sign == letters_[i].sign) ++j;
    out.push_back(Block{letters_[i].sign, i, j - i});
    i = j;
  }
  return out;
}

long long Word::exponent_sum(int gen) const {
  long long s = 0;
  for (const Letter& l : letters_) {
    if (l.gen == gen) s += l.sign;
  }
  return s;
}

bool Word::is_positive() const {
  return std::all_of(letters_.begin(), letters_.end(), [](const Letter& l) { return l.sign > 0; });
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  if (pos + len > letters_.size()) throw std::out_of_range("subword range");
  std::vector<Letter> out(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                          letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return Word(std::move(out));
}

std::string Word::str(const Alphabet& ab) const {
  if (letters_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += ab.name(letters_[i].gen);
    if (letters_[i].sign < 0) out += '\'';
  }
  return out;
}

bool Word::shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Letter& la = a.letters_[i];
    const Letter& lb = b.letters_[i];
    if (la.gen != lb.gen) return la.gen < lb.gen;
    if (la.sign != lb.sign) return la.sign > lb.sign;  // positive before inverse
  }
  return false;
}

Word pow(const Word& w, int k) {
  Word out;
  Word base = k < 0 ? w.inverse() : w;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

std::size_t WordHash::operator()(const Word& w) const {
  std::size_t h = 1469598103934665603ull;
  for (const Letter& l : w.letters()) {
    h ^= static_cast<std::size_t>(l.gen * 2 + (l.sign > 0 ? 0 : 1)) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct Token {
  std::string name;
  int sign = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip();
  while (i < text.size()) {
    char c = text[i];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
      throw std::invalid_argument("unexpected character in word: '" + std::string(1, c) + "'");
    }
    std::size_t j = i + 1;
    while (j < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
      ++j;
    }
    Token t;
    t.name = std::string(text.substr(i, j - i));
    i = j;
    if (i < text.size() && text[i] == '\'') {
      t.sign = -1;
      ++i;
    } else if (i + 2 < text.size() && text.compare(i, 3, "^-1") == 0) {
      t.sign = -1;
      i += 3;
    }
    out.push_back(std::move(t));
    skip();
  }
  return out;
}

std::vector<Letter> letters_from_tokens(const Alphabet& ab, Alphabet* mut,
                                        const std::vector<Token>& tokens) {
  std::vector<Letter> out;
  for (const Token& t : tokens) {
    if (t.name == "e") {
      if (t.sign < 0) throw std::invalid_argument("the identity has no inverse marker");
      continue;
    }
    std::optional<int> id = ab.find(t.name);
    if (!id) {
      if (!mut) throw std::invalid_argument("unknown generator: " + t.name);
      id = mut->add(t.name);
    }
    out.push_back(Letter{*id, t.sign});
  }
  return out;
}

}  // namespace

std::vector<Letter> parse_letters(const Alphabet& ab, std::string_view text) {
  return letters_from_tokens(ab, nullptr, tokenize(text));
}

std::vector<Letter> parse_letters(Alphabet& ab, std::string_view text, bool add_unknown) {
  return letters_from_tokens(ab, add_unknown ? &ab : nullptr, tokenize(text));
}

Word Word::parse(const Alphabet& ab, std::string_view text) {
  auto raw = parse_letters(ab, text);
  return Word::reduce(raw);
}

namespace {

void extend_words(std::vector<Word>& out, int num_gens, int max_len, bool positive_only) {
  // Breadth-first in shortlex order: extend every word of length L by each
  // letter that keeps it reduced.
  std::size_t level_begin = 0;
  out.push_back(Word());
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int g = 0; g < num_gens; ++g) {
        for (int sign : {1, -1}) {
          if (positive_only && sign < 0) continue;
          Letter l{g, sign};
          const auto& ls = out[i].letters();
          if (!ls.empty() && ls.back().cancels(l)) continue;
          std::vector<Letter> next = ls;
          next.push_back(l);
          out.push_back(Word::from_reduced(std::move(next)));
        }
      }
    }
    level_begin = level_end;
  }
  // extend_words grows level by level, so words are ordered by length; within
  // a length the recursion order matches shortlex by construction, except that
  // extension happens on the right: re-sort to guarantee the documented order.
  std::sort(out.begin(), out.end(), Word::shortlex_less);
}

}  // namespace

std::vector<Word> reduced_words(int num_gens, int max_len) {
  std::vector<Word> out;
  extend_words(out, num_gens, max_len, false);
  return out;
}

void for_each_reduced_word(int num_gens, int max_len,
                           const std::function<void(const Word&)>& fn) {
  std::vector<Letter> cur;
  fn(Word());
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int g = 0; g < num_gens; ++g) {
      for (int sign : {1, -1}) {
        Letter l{g, sign};
        if (!cur.empty() && cur.back().cancels(l)) continue;
        cur.push_back(l);
        fn(Word::from_reduced(cur));
        rec();
        cur.pop_back();
      }
    }
  };
  rec();
}

std::vector<Word> positive_words(int num_gens, int max_len) {
  std::vector<Word> out;
  extend_words(out, num_gens, max_len, true);
  return out;
}

}  // namespace osc
