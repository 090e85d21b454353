#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vrkit/error.hpp"
#include "vrkit/words.hpp"

using namespace vrkit;

namespace {
AlphabetPtr ab() { return make_alphabet({"a", "b"}); }
Word w(const AlphabetPtr& a, const char* s) { return Word::parse(a, s); }
}  // namespace

TEST_CASE("reduce cancels and merges") {
  auto a = ab();
  std::vector<Syllable> s1{{0, 1}, {0, -1}};
  CHECK(reduce(a, s1).is_identity());
  std::vector<Syllable> s2{{0, 2}, {0, 1}};
  CHECK(reduce(a, s2).to_string() == "a^3");
  std::vector<Syllable> s3{{0, 1}, {1, 1}, {1, -1}, {0, 1}};
  CHECK(reduce(a, s3).to_string() == "a^2");
  std::vector<Syllable> s4{{0, 0}, {1, 3}};
  CHECK(reduce(a, s4).to_string() == "b^3");
  std::vector<Syllable> bad{{2, 1}};
  CHECK_THROWS_AS(reduce(a, bad), AlphabetError);
}

TEST_CASE("multiply, invert, power") {
  auto a = ab();
  CHECK(multiply(w(a, "a"), w(a, "a^-1")).is_identity());
  CHECK(multiply(w(a, "a b"), w(a, "b^-1 a")) == w(a, "a^2"));
  CHECK(multiply(Word(a), w(a, "a b^2")) == w(a, "a b^2"));
  CHECK(invert(w(a, "a b^-1")) == w(a, "b a^-1"));
  CHECK(invert(Word(a)).is_identity());
  CHECK(invert(w(a, "a^3")) == w(a, "a^-3"));
  CHECK(power(w(a, "a b"), 2).to_string() == "a b a b");
  CHECK(power(w(a, "a b"), -1) == w(a, "b^-1 a^-1"));
}

TEST_CASE("cyclic reduction") {
  auto a = ab();
  auto r = cyclic_reduce(w(a, "a b a^-1"));
  CHECK(r.core == w(a, "b"));
  CHECK(r.conjugator == w(a, "a"));
  r = cyclic_reduce(w(a, "a b"));
  CHECK(r.core == w(a, "a b"));
  CHECK(r.conjugator.is_identity());
  r = cyclic_reduce(w(a, "b^-1 a^2 b"));
  CHECK(r.core == w(a, "a^2"));
  CHECK(r.conjugator == w(a, "b^-1"));
}

TEST_CASE("text syntax round trips") {
  auto a = make_alphabet({"a1", "a2", "t"});
  for (const char* s : {"1", "a1", "a1^-1", "a1^3 t^-2 a2", "t a1 t^-1 a2^-1"}) CHECK(w(a, s).to_string() == s);
  CHECK(w(a, "a1 a1 a1") .to_string() == "a1^3");
  CHECK_THROWS_AS(w(a, "a3"), AlphabetError);
  CHECK_THROWS_AS(w(a, "a1^0"), ParseError);
  CHECK_THROWS_AS(w(a, "a1^"), ParseError);
  CHECK_THROWS_AS(make_alphabet({"x", "x"}), AlphabetError);
}

TEST_CASE("properties on random words") {
  std::mt19937_64 rng(7);
  auto a = make_alphabet({"a", "b", "c"});
  for (int i = 0; i < 500; ++i) {
    Word u = oracle::random_word(rng, a, 12), v = oracle::random_word(rng, a, 12), x = oracle::random_word(rng, a, 12);
    CHECK(reduce(a, u.syllables()) == u);  // idempotent
    CHECK(multiply(multiply(u, v), x) == multiply(u, multiply(v, x)));
    CHECK(multiply(u, invert(u)).is_identity());
    CHECK(Word::parse(a, u.to_string()) == u);
    auto c = cyclic_reduce(u);
    CHECK(multiply(multiply(c.conjugator, c.core), invert(c.conjugator)) == u);
    LetterWord l = c.core.letters();
    if (l.size() > 1) CHECK(l.front() != inverse_letter(l.back()));
    // Canonical cyclic form is shared by rotations and the inverse.
    if (!l.empty()) {
      LetterWord rot(l.begin() + 1, l.end());
      rot.push_back(l.front());
      CHECK(cyclic_canonical(rot) == cyclic_canonical(l));
      CHECK(cyclic_canonical(inverse_word(l)) == cyclic_canonical(l));
    }
  }
}

TEST_CASE("substitution") {
  auto a = ab();
  auto x = make_alphabet({"x"});
  std::vector<Word> images{Word::parse(x, "x^2"), Word::parse(x, "x^-1")};
  CHECK(substitute(w(a, "a b^3"), images, x).to_string() == "x^-1");
}
