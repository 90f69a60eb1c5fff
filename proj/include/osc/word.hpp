#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace osc {

/// Table of named generators. Ids are dense, starting at 0.
/// The name "e" is reserved for the identity and cannot be registered.
class Alphabet {
 public:
  Alphabet() = default;

  static Alphabet free2();      // {x, y}
  static Alphabet affine_ab();  // {a, b}

  int add(const std::string& name);
  std::optional<int> find(std::string_view name) const;
  const std::string& name(int id) const;
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> ids_;
};

struct Letter {
  std::int32_t gen = 0;
  std::int32_t sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  Letter inverse() const { return {gen, -sign}; }
  bool cancels(const Letter& o) const { return gen == o.gen && sign == -o.sign; }
};

/// A maximal run of letters of one sign. `offset`/`length` index into the word.
struct Block {
  int sign = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

/// Freely reduced word over an alphabet. The empty word is the identity.
/// Immutable value type: every operation returns a new reduced word.
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw);

  /// Wraps a sequence that is already reduced; throws if it is not.
  static Word from_reduced(std::vector<Letter> letters);

  /// Parses the word syntax: generators juxtaposed with spaces or '*',
  /// inverse marked by a trailing ' or ^-1, "e" for the identity.
  /// The result is freely reduced.
  static Word parse(const Alphabet& ab, std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  Word operator*(const Word& rhs) const;
  Word inverse() const;

  /// Cyclic reduction: returns {core, conjugator} with *this == conjugator * core * conjugator^-1.
  std::pair<Word, Word> cyclic_reduce() const;
  bool is_cyclically_reduced() const;

  std::vector<Block> blocks() const;
  long long exponent_sum(int gen) const;

  bool is_positive() const;  // every letter has sign +1 (e counts as positive)
  Word subword(std::size_t pos, std::size_t len) const;

  std::string str(const Alphabet& ab) const;  // "e" for the identity

  friend bool operator==(const Word&, const Word&) = default;
  static bool shortlex_less(const Word& a, const Word& b);

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;
};

Word pow(const Word& w, int k);

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

/// Parses a letter sequence without reducing it. With `add_unknown`, new
/// generator names are registered in order of first appearance.
std::vector<Letter> parse_letters(const Alphabet& ab, std::string_view text);
std::vector<Letter> parse_letters(Alphabet& ab, std::string_view text, bool add_unknown);

/// All freely reduced words of length <= max_len over the first num_gens
/// generators, in shortlex order (identity first).
std::vector<Word> reduced_words(int num_gens, int max_len);

/// Streams every freely reduced word of length <= max_len (identity first)
/// to `fn` without materializing the list. Deterministic depth-first prefix
/// order — not shortlex; use reduced_words when the order matters.
void for_each_reduced_word(int num_gens, int max_len,
                           const std::function<void(const Word&)>& fn);

/// All positive words of length <= max_len (identity included), shortlex.
std::vector<Word> positive_words(int num_gens, int max_len);

}  // namespace osc

template <>
struct std::hash<osc::Word> {
  std::size_t operator()(const osc::Word& w) const { return osc::WordHash{}(w); }
};
