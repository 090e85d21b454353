#pragma once

// Free words over a named, involutive alphabet.
//
// Two encodings are used throughout the toolkit:
//  * Word: a freely reduced sequence of syllables (generator, nonzero exponent),
//    tied to an Alphabet. This is the public currency between modules.
//  * Letter vectors: one entry per letter, letter = 2*generator + (inverse ? 1 : 0).
//    Inner loops (Todd-Coxeter, Tietze, Reidemeister-Schreier) work on these.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vrkit {

class Alphabet {
 public:
  /// Throws AlphabetError on an invalid or duplicated name.
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t generator) const;
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Like find(), but throws AlphabetError for an unknown name.
  std::size_t index(std::string_view name) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

  static bool valid_name(std::string_view name);

 private:
  std::vector<std::string> names_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);
bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

struct Syllable {
  std::size_t generator = 0;
  std::int64_t exponent = 0;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

using Letter = std::uint32_t;

constexpr Letter make_letter(std::size_t generator, bool inverse) {
  return static_cast<Letter>(2 * generator + (inverse ? 1 : 0));
}
constexpr std::size_t letter_generator(Letter l) { return l >> 1; }
constexpr bool letter_is_inverse(Letter l) { return (l & 1U) != 0; }
constexpr Letter inverse_letter(Letter l) { return l ^ 1U; }

using LetterWord = std::vector<Letter>;

class Word {
 public:
  /// The identity over `alphabet`.
  explicit Word(AlphabetPtr alphabet);

  static Word from_letters(AlphabetPtr alphabet, std::span<const Letter> letters);
  static Word generator(AlphabetPtr alphabet, std::size_t generator, std::int64_t exponent = 1);
  /// Parses the canonical text syntax: `g`, `g^-1`, `g^k` atoms separated by
  /// whitespace, or the literal `1` for the identity.
  static Word parse(AlphabetPtr alphabet, std::string_view text);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  bool is_identity() const noexcept { return syllables_.empty(); }
  /// Number of letters counted with multiplicity.
  std::size_t length() const noexcept;
  LetterWord letters() const;
  std::string to_string() const;

  /// Exponent sum of every generator.
  std::vector<std::int64_t> exponent_sums() const;

  friend bool operator==(const Word& a, const Word& b);

 private:
  friend Word reduce(AlphabetPtr alphabet, std::span<const Syllable> raw);
  Word(AlphabetPtr alphabet, std::vector<Syllable> reduced)
      : alphabet_(std::move(alphabet)), syllables_(std::move(reduced)) {}

  AlphabetPtr alphabet_;
  std::vector<Syllable> syllables_;
};

/// Freely reduces a raw syllable sequence. Zero exponents are allowed in the
/// input and vanish. Throws AlphabetError on an out-of-range generator and
/// OverflowError when merged exponents leave int64.
Word reduce(AlphabetPtr alphabet, std::span<const Syllable> raw);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
Word power(const Word& w, std::int64_t k);
/// Image of `w` under the substitution generator i -> images[i].
Word substitute(const Word& w, std::span<const Word> images, AlphabetPtr target);

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclic_reduce(const Word& w);

// Letter-vector helpers.

/// In-place free reduction.
void free_reduce(LetterWord& w);
/// Free and cyclic reduction.
void cyclic_reduce(LetterWord& w);
LetterWord inverse_word(std::span<const Letter> w);
LetterWord concat(std::span<const Letter> a, std::span<const Letter> b);
/// Canonical representative of the cyclic conjugacy class of w and w^-1
/// (lexicographically least rotation). `w` must be cyclically reduced.
LetterWord cyclic_canonical(std::span<const Letter> w);

}  // namespace vrkit
