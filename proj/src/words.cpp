#include "vrkit/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include "vrkit/error.hpp"

namespace vrkit {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("exponent overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("exponent overflow");
  return out;
}

std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError("exponent overflow");
  return -a;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i])) throw AlphabetError("invalid generator name '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == names_[i]) throw AlphabetError("duplicate generator name '" + names_[i] + "'");
  }
}

bool Alphabet::valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

const std::string& Alphabet::name(std::size_t generator) const {
  if (generator >= names_.size()) throw AlphabetError("generator index out of range");
  return names_[generator];
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw AlphabetError("unknown generator '" + std::string(name) + "'");
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Word::Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw AlphabetError("word without alphabet");
}

Word reduce(AlphabetPtr alphabet, std::span<const Syllable> raw) {
  if (!alphabet) throw AlphabetError("word without alphabet");
  std::vector<Syllable> out;
  out.reserve(raw.size());
  for (const Syllable& s : raw) {
    if (s.generator >= alphabet->size()) throw AlphabetError("generator index out of range");
    if (s.exponent == 0) continue;
    if (!out.empty() && out.back().generator == s.generator) {
      out.back().exponent = checked_add(out.back().exponent, s.exponent);
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return Word(std::move(alphabet), std::move(out));
}

Word Word::from_letters(AlphabetPtr alphabet, std::span<const Letter> letters) {
  std::vector<Syllable> raw;
  raw.reserve(letters.size());
  for (Letter l : letters) raw.push_back({letter_generator(l), letter_is_inverse(l) ? -1 : 1});
  return reduce(std::move(alphabet), raw);
}

Word Word::generator(AlphabetPtr alphabet, std::size_t generator, std::int64_t exponent) {
  Syllable s{generator, exponent};
  return reduce(std::move(alphabet), std::span<const Syllable>(&s, 1));
}

Word Word::parse(AlphabetPtr alphabet, std::string_view text) {
  std::vector<Syllable> raw;
  std::size_t pos = 0;
  bool saw_identity = false;
  bool saw_atom = false;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  if (pos == text.size()) throw ParseError("empty word", pos);
  while (pos < text.size()) {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string_view atom = text.substr(start, pos - start);
    if (atom == "1") {
      if (saw_identity || saw_atom) throw ParseError("identity literal must stand alone", start);
      saw_identity = true;
    } else {
      if (saw_identity) throw ParseError("identity literal must stand alone", start);
      saw_atom = true;
      std::string_view name = atom;
      std::int64_t exponent = 1;
      if (auto caret = atom.find('^'); caret != std::string_view::npos) {
        name = atom.substr(0, caret);
        std::string_view digits = atom.substr(caret + 1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
        if (ec == std::errc::result_out_of_range) throw ParseError("exponent out of range", start + caret + 1);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || exponent == 0)
          throw ParseError("bad exponent '" + std::string(digits) + "'", start + caret + 1);
      }
      if (!Alphabet::valid_name(name)) throw ParseError("bad generator token '" + std::string(atom) + "'", start);
      auto g = alphabet->find(name);
      if (!g) throw AlphabetError("unknown generator '" + std::string(name) + "'");
      raw.push_back({*g, exponent});
    }
    skip_space();
  }
  return reduce(std::move(alphabet), raw);
}

std::size_t Word::length() const noexcept {
  std::size_t n = 0;
  for (const Syllable& s : syllables_)
    n += static_cast<std::size_t>(s.exponent < 0 ? -(s.exponent + 1) + 1 : s.exponent);
  return n;
}

LetterWord Word::letters() const {
  LetterWord out;
  out.reserve(length());
  for (const Syllable& s : syllables_) {
    Letter l = make_letter(s.generator, s.exponent < 0);
    std::size_t count = static_cast<std::size_t>(s.exponent < 0 ? -(s.exponent + 1) + 1 : s.exponent);
    out.insert(out.end(), count, l);
  }
  return out;
}

std::string Word::to_string() const {
  if (syllables_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Syllable& s : syllables_) {
    if (!first) os << ' ';
    first = false;
    os << alphabet_->name(s.generator);
    if (s.exponent != 1) os << '^' << s.exponent;
  }
  return os.str();
}

std::vector<std::int64_t> Word::exponent_sums() const {
  std::vector<std::int64_t> sums(alphabet_->size(), 0);
  for (const Syllable& s : syllables_) sums[s.generator] = checked_add(sums[s.generator], s.exponent);
  return sums;
}

bool operator==(const Word& a, const Word& b) {
  return a.syllables_ == b.syllables_ && same_alphabet(a.alphabet_, b.alphabet_);
}

Word multiply(const Word& u, const Word& v) {
  if (!same_alphabet(u.alphabet(), v.alphabet())) throw AlphabetError("alphabet mismatch in multiply");
  std::vector<Syllable> raw = u.syllables();
  raw.insert(raw.end(), v.syllables().begin(), v.syllables().end());
  return reduce(u.alphabet(), raw);
}

Word invert(const Word& w) {
  std::vector<Syllable> raw(w.syllables().rbegin(), w.syllables().rend());
  for (Syllable& s : raw) s.exponent = checked_neg(s.exponent);
  return reduce(w.alphabet(), raw);
}

Word power(const Word& w, std::int64_t k) {
  if (k == 0 || w.is_identity()) return Word(w.alphabet());
  Word base = k < 0 ? invert(w) : w;
  std::int64_t n = k < 0 ? checked_neg(k) : k;
  if (base.syllables().size() == 1) {
    Syllable s = base.syllables().front();
    s.exponent = checked_mul(s.exponent, n);
    return reduce(w.alphabet(), std::span<const Syllable>(&s, 1));
  }
  CyclicReduction cr = cyclic_reduce(base);
  std::vector<Syllable> raw;
  for (std::int64_t i = 0; i < n; ++i)
    raw.insert(raw.end(), cr.core.syllables().begin(), cr.core.syllables().end());
  Word body = reduce(w.alphabet(), raw);
  return multiply(multiply(cr.conjugator, body), invert(cr.conjugator));
}

Word substitute(const Word& w, std::span<const Word> images, AlphabetPtr target) {
  if (images.size() != w.alphabet()->size()) throw AlphabetError("substitution arity mismatch");
  std::vector<Syllable> raw;
  for (const Syllable& s : w.syllables()) {
    const Word& img = images[s.generator];
    if (!same_alphabet(img.alphabet(), target)) throw AlphabetError("substitution image over wrong alphabet");
    Word p = power(img, s.exponent);
    raw.insert(raw.end(), p.syllables().begin(), p.syllables().end());
  }
  return reduce(std::move(target), raw);
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& s = w.syllables();
  std::size_t lo = 0;
  std::size_t hi = s.size();
  std::vector<Syllable> conj;
  std::optional<Syllable> merged_middle;
  // Peel matching outer syllables g^a ... g^b: when a == -b both go to the
  // conjugator; otherwise the ends merge into one syllable of the core.
  while (hi - lo >= 2 && s[lo].generator == s[hi - 1].generator) {
    std::int64_t a = s[lo].exponent;
    std::int64_t b = s[hi - 1].exponent;
    if (a == checked_neg(b)) {
      conj.push_back(s[lo]);
      ++lo;
      --hi;
      continue;
    }
    // Keep core = g^(a+b) followed by the inside; conjugator gains g^a.
    conj.push_back(s[lo]);
    merged_middle = Syllable{s[lo].generator, checked_add(a, b)};
    ++lo;
    --hi;
    break;
  }
  std::vector<Syllable> core;
  if (merged_middle) core.push_back(*merged_middle);
  core.insert(core.end(), s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi));
  // When merged, the core is g^(a+b) * inside and w = g^a * inside * g^b
  // = g^a * (inside * g^(a+b)) * g^-a, so rotate the merged syllable to the end.
  if (merged_middle) std::rotate(core.begin(), core.begin() + 1, core.end());
  return {reduce(w.alphabet(), core), reduce(w.alphabet(), conj)};
}

void free_reduce(LetterWord& w) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (out > 0 && w[out - 1] == inverse_letter(w[i])) {
      --out;
    } else {
      w[out++] = w[i];
    }
  }
  w.resize(out);
}

void cyclic_reduce(LetterWord& w) {
  free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == inverse_letter(w[hi - 1])) {
    ++lo;
    --hi;
  }
  if (lo > 0) {
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(hi), w.end());
    w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lo));
  }
}

LetterWord inverse_word(std::span<const Letter> w) {
  LetterWord out(w.rbegin(), w.rend());
  for (Letter& l : out) l = inverse_letter(l);
  return out;
}

LetterWord concat(std::span<const Letter> a, std::span<const Letter> b) {
  LetterWord out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  free_reduce(out);
  return out;
}

LetterWord cyclic_canonical(std::span<const Letter> w) {
  LetterWord best(w.begin(), w.end());
  if (w.empty()) return best;
  auto consider = [&](const LetterWord& base) {
    LetterWord rot(base);
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (rot < best) best = rot;
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
  };
  LetterWord fwd(w.begin(), w.end());
  consider(fwd);
  consider(inverse_word(w));
  return best;
}

}  // namespace vrkit
