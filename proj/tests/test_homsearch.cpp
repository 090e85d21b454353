#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vrkit/homsearch.hpp"

using namespace vrkit;

namespace {
Presentation g5() {
  return make_presentation({"a1", "a2", "b1", "b2", "t"},
                           {"a1^3", "a2^3", "a1 a2 a1 a2", "b1^3", "b2^3", "b1 b2 b1 b2", "a1 b1 b2 a1 b1 b2",
                            "t a1 t^-1 b1^-1"});
}
}  // namespace

TEST_CASE("hom counts") {
  CHECK(enumerate_homs(make_presentation({"x", "y"}, {}), named_group("S3")).homs.size() == 36);
  auto l = enumerate_homs(make_presentation({"x"}, {"x^2"}), named_group("A4"));
  CHECK(l.homs.size() == 4);
  CHECK(enumerate_homs(make_presentation({"x", "y"}, {}), named_group("S3"), {}, 10).truncated);
}

TEST_CASE("completeness against brute force") {
  std::mt19937_64 rng(9);
  auto a = make_alphabet({"x", "y"});
  for (const char* target : {"S3", "A4", "Z4", "(1 2);(3 4)", "Z12"}) {
    auto t = named_group(target);
    for (int it = 0; it < 8; ++it) {
      std::vector<Word> rels;
      for (int k = 0; k < 1 + it % 3; ++k) {
        Word r = oracle::random_word(rng, a, 6, 1);
        if (!r.is_identity()) rels.push_back(r);
      }
      Presentation p = make_presentation(a, rels);
      HomList l = enumerate_homs(p, t);
      CHECK(l.homs.size() == oracle::count_homs(p, *t));
      for (const GroupHom& h : l.homs) CHECK_NOTHROW(validate_hom(p, h.images));
      CHECK(enumerate_homs(p, t).homs.size() == l.homs.size());
    }
  }
}

TEST_CASE("fixed images") {
  Presentation g = g5();
  auto psi = images_from_names(
      g, {{"a1", "(1 2 3)"}, {"a2", "(2 3 4)"}, {"b1", "(2 4 3)"}, {"b2", "(3 5 4)"}, {"t", "(1 4 2)"}}, 5);
  FixedImages fixed;
  for (std::size_t i = 0; i < psi.size(); ++i) fixed.emplace(i, psi[i]);
  HomList l = enumerate_homs(g, named_group("A5"), fixed);
  REQUIRE(l.homs.size() == 1);
  CHECK(l.homs[0].images == psi);
}

TEST_CASE("injective search") {
  Presentation g = g5();
  auto W = [&](const char* s) { return Word::parse(g.alphabet, s); };
  std::vector<FiniteSubgroupSpec> subs{{{W("a1"), W("a2")}, 12}, {{W("b1"), W("b2")}, 12}, {{W("a1"), W("b1 b2")}, 6}};
  InjectiveSearch s = find_injective_on(g, subs, {named_group("A5")});
  REQUIRE(s.hom);
  CHECK_NOTHROW(validate_hom(g, s.hom->images));
  for (const auto& sub : subs) CHECK(injective_on(*s.hom, sub.generators, sub.order));

  Presentation z3 = make_presentation({"x"}, {"x^3"});
  std::vector<FiniteSubgroupSpec> x{{{Word::parse(z3.alphabet, "x")}, 3}};
  InjectiveSearch found = find_injective_on(z3, x, {named_group("S3")});
  REQUIRE(found.hom);
  CHECK(found.hom->images[0].order() == 3);
  InjectiveSearch none = find_injective_on(z3, x, {named_group("Z2")});
  CHECK(!none.hom);
  CHECK(!none.budget_exhausted);
}
