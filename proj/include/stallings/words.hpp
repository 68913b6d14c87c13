#pragma once

// Free group arithmetic: alphabets, signed letters and freely reduced words.
//
// Text convention: one Latin letter per generator, lowercase for the
// generator and uppercase for its inverse ("abA" = a b a^-1). The empty
// word is the identity and formats as "".

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stallings/error.hpp"

namespace stallings {

/// Ordered set of generator symbols x_1..x_N. The order fixes canonical
/// tie-breaking everywhere (x_i before x_i^-1 before x_{i+1}).
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) throw invalid_input("empty alphabet symbol");
      for (std::size_t j = 0; j < i; ++j) {
        if (symbols_[i] == symbols_[j]) {
          throw invalid_input("duplicate alphabet symbol '" + symbols_[i] + "'");
        }
      }
    }
  }

  /// "ab" -> {a, b}. Each character must be a lowercase Latin letter.
  static Alphabet from_letters(std::string_view letters) {
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      char c = letters[i];
      if (!std::islower(static_cast<unsigned char>(c))) {
        throw parse_error(std::string("alphabet letters must be lowercase, got '") + c + "'", i);
      }
      symbols.emplace_back(1, c);
    }
    return Alphabet(std::move(symbols));
  }

  /// Alphabet {a, b, c, ...} of the given size (falls back to y1, y2, ... past 26).
  static Alphabet standard(std::size_t size) {
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < size; ++i) {
      symbols.push_back(size <= 26 ? std::string(1, static_cast<char>('a' + i))
                                   : "y" + std::to_string(i + 1));
    }
    return Alphabet(std::move(symbols));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  /// Number of signed letters, 2N.
  std::size_t signed_size() const noexcept { return 2 * symbols_.size(); }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  /// True when every symbol is a single lowercase character.
  bool is_textual() const {
    return std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) {
      return s.size() == 1 && std::islower(static_cast<unsigned char>(s[0]));
    });
  }

  /// Concatenated symbols; the JSON "alphabet" field.
  std::string to_string() const {
    std::string out;
    for (const auto& s : symbols_) out += s;
    return out;
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

/// Signed letter x_i^{+-1}, stored as code = 2 i + (inverse ? 1 : 0).
struct Letter {
  std::uint32_t code = 0;

  static constexpr Letter positive(std::uint32_t generator) { return Letter{2 * generator}; }
  static constexpr Letter negative(std::uint32_t generator) { return Letter{2 * generator + 1}; }

  constexpr std::uint32_t generator() const { return code >> 1; }
  constexpr bool is_inverse() const { return (code & 1U) != 0; }
  constexpr int sign() const { return is_inverse() ? -1 : 1; }
  constexpr Letter inverse() const { return Letter{code ^ 1U}; }

  constexpr auto operator<=>(const Letter&) const = default;
};

/// A freely reduced word; the empty word is the identity. Every
/// constructor path goes through free reduction, so the invariant holds.
class Word {
 public:
  Word() = default;

  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

  /// Freely reduces `letters` with a single left-to-right stack scan.
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce_in_place(); }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  /// Subword [pos, pos + count); a subword of a reduced word is reduced.
  Word subword(std::size_t pos, std::size_t count) const {
    Word w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + count));
    return w;
  }

  /// First letter differs from the inverse of the last letter.
  bool is_cyclically_reduced() const {
    return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
  }

  /// Highest generator index used plus one (0 for the identity).
  std::uint32_t generator_bound() const {
    std::uint32_t bound = 0;
    for (Letter l : letters_) bound = std::max(bound, l.generator() + 1);
    return bound;
  }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  void reduce_in_place() {
    std::size_t top = 0;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (top > 0 && letters_[top - 1] == letters_[i].inverse()) {
        --top;
      } else {
        letters_[top++] = letters_[i];
      }
    }
    letters_.resize(top);
  }

  std::vector<Letter> letters_;
};

/// Shortlex order: shorter first, then lexicographic on letter codes.
inline bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u < v;
}

inline Word free_reduce(std::span<const Letter> raw) {
  return Word(std::vector<Letter>(raw.begin(), raw.end()));
}

/// As above but rejects letters whose generator is outside `alphabet`.
inline Word free_reduce(std::span<const Letter> raw, const Alphabet& alphabet) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].generator() >= alphabet.size()) {
      throw invalid_input("letter " + std::to_string(i) + " is outside the alphabet");
    }
  }
  return free_reduce(raw);
}

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

inline Word multiply(const Word& u, const Word& v) {
  std::vector<Letter> out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return Word(std::move(out));
}

inline Word multiply(std::initializer_list<Word> factors) {
  std::vector<Letter> out;
  for (const auto& f : factors) out.insert(out.end(), f.begin(), f.end());
  return Word(std::move(out));
}

/// Result of peeling a word as conjugator * core * conjugator^-1.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced and the
/// conjugator as long as possible.
inline CyclicDecomposition cyclic_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return {w.subword(0, lo), w.subword(lo, hi - lo)};
}

/// w^m for m >= 0, built from the cyclic decomposition so the result is
/// already reduced: conjugator * core^m * conjugator^-1.
inline Word power(const Word& w, std::size_t m) {
  if (m == 0 || w.empty()) return {};
  auto [conj, core] = cyclic_reduce(w);
  std::vector<Letter> out(conj.begin(), conj.end());
  for (std::size_t i = 0; i < m; ++i) out.insert(out.end(), core.begin(), core.end());
  Word tail = invert(conj);
  out.insert(out.end(), tail.begin(), tail.end());
  return Word(std::move(out));
}

/// Parses the textual convention over a textual alphabet. Whitespace is
/// skipped and a lone "1" denotes the identity; the result is freely reduced.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> raw;
  std::size_t non_space = 0;
  for (char c : text) non_space += std::isspace(static_cast<unsigned char>(c)) ? 0 : 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '1' && non_space == 1) return {};
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::uint32_t gen = 0;
    bool found = false;
    for (std::uint32_t g = 0; g < alphabet.size(); ++g) {
      const auto& s = alphabet.symbol(g);
      if (s.size() == 1 && s[0] == lower) {
        gen = g;
        found = true;
        break;
      }
    }
    if (!found || !std::isalpha(static_cast<unsigned char>(c))) {
      throw parse_error(std::string("unknown letter '") + c + "' for alphabet \"" +
                            alphabet.to_string() + "\"",
                        i);
    }
    raw.push_back(std::isupper(static_cast<unsigned char>(c)) ? Letter::negative(gen)
                                                              : Letter::positive(gen));
  }
  return Word(std::move(raw));
}

/// Comma-separated list of words; empty items are dropped.
inline std::vector<Word> parse_word_list(std::string_view text, const Alphabet& alphabet) {
  std::vector<Word> words;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    try {
      if (item.find_first_not_of(" \t") != std::string_view::npos) {
        words.push_back(parse_word(item, alphabet));
      }
    } catch (const parse_error& e) {
      throw parse_error(std::string("in word list: ") + e.what(), start + e.position());
    }
    start = comma + 1;
  }
  return words;
}

/// Lowercase for positive letters, uppercase for inverses. Alphabets with
/// multi-character symbols use "sym" / "sym^-1" separated by spaces.
inline std::string format_word(const Word& w, const Alphabet& alphabet) {
  std::string out;
  bool textual = alphabet.is_textual();
  for (Letter l : w) {
    const std::string& s = alphabet.symbol(l.generator());
    if (textual) {
      out += l.is_inverse() ? static_cast<char>(std::toupper(static_cast<unsigned char>(s[0]))) : s[0];
    } else {
      if (!out.empty()) out += ' ';
      out += s;
      if (l.is_inverse()) out += "^-1";
    }
  }
  return out;
}

}  // namespace stallings
