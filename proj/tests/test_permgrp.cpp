#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "vrkit/error.hpp"
#include "vrkit/permgrp.hpp"

using namespace vrkit;

namespace {
Permutation P(const char* s, std::size_t n = 0) { return Permutation::parse(s, n); }
}  // namespace

TEST_CASE("composition is left to right") {
  CHECK(compose(P("(1 2 3)"), P("(1 2)", 3)).to_string() == "(2 3)");
  Permutation p = P("(1 4 2)(3 5)");
  CHECK(compose(p, p.inverse()).is_identity());
  CHECK(compose(Permutation::identity(5), p) == p);
  CHECK(P("()").is_identity());
  CHECK(P("(1 2 3)(4 5)").order() == 6);
  CHECK(power(P("(1 2 3)"), -1) == P("(1 3 2)"));
  CHECK_THROWS(Permutation::from_images({0, 0}));
  CHECK_THROWS(P("(1 1)"));
}

TEST_CASE("closure sizes") {
  std::vector<Permutation> a4{P("(1 2 3)", 4), P("(2 3 4)")};
  CHECK(closure(a4, 4).size() == 12);
  std::vector<Permutation> a5{P("(1 2 3)", 5), P("(2 3 4)", 5), P("(3 4 5)")};
  auto els = closure(a5, 5);
  CHECK(els.size() == 60);
  CHECK(closure({}, 3).size() == 1);
  std::set<Permutation> s(els.begin(), els.end());
  for (const auto& x : els)
    for (const auto& y : els) CHECK(s.count(compose(x, y)));
  CHECK_THROWS_AS(closure(a5, 5, 10), CapExceeded);
  CHECK(named_group("S4")->order() == 24);
  CHECK(named_group("Z7")->order() == 7);
  CHECK(named_group("(1 2);(1 2 3)")->order() == 6);
}

TEST_CASE("homomorphism validation and injectivity") {
  Presentation g = make_presentation({"a1", "a2", "b1", "b2", "t"},
                                     {"a1^3", "a2^3", "a1 a2 a1 a2", "b1^3", "b2^3", "b1 b2 b1 b2",
                                      "a1 b1 b2 a1 b1 b2", "t a1 t^-1 b1^-1"});
  auto psi = images_from_names(
      g, {{"a1", "(1 2 3)"}, {"a2", "(2 3 4)"}, {"b1", "(2 4 3)"}, {"b2", "(3 5 4)"}, {"t", "(1 4 2)"}}, 5);
  GroupHom h = validate_hom(g, psi);
  auto W = [&](const char* s) { return Word::parse(g.alphabet, s); };
  std::vector<Word> v1{W("a1"), W("a2")}, v2{W("b1"), W("b2")}, v3{W("a1"), W("b1 b2")};
  CHECK(injective_on(h, v1, 12));
  CHECK(injective_on(h, v2, 12));
  CHECK(injective_on(h, v3, 6));
  CHECK(injective_on(h, {}, 1));
  CHECK(!injective_on(h, v3, 12));

  Presentation a4 = make_presentation({"a1", "a2"}, {"a1^3", "a2^3", "a1 a2 a1 a2"});
  try {
    validate_hom(a4, {P("(1 2)", 4), P("(2 3 4)")});
    FAIL("expected an error");
  } catch (const NotAHomomorphism& e) {
    CHECK(e.relator() == "a1^3");
  }
}

TEST_CASE("coset actions") {
  PermGroup a5(5, {P("(1 2 3)", 5), P("(2 3 4)", 5), P("(3 4 5)")});
  std::vector<Permutation> stab;
  for (const auto& x : a5.elements())
    if (x[0] == 0) stab.push_back(x);
  CHECK(coset_action(a5, stab).index == 5);
  CHECK(coset_action(a5, a5.elements()).index == 1);
  PermGroup s3(3, {P("(1 2 3)"), P("(1 2)", 3)});
  CosetAction c = coset_action(s3, std::vector<Permutation>{Permutation::identity(3)});
  CHECK(c.index == 6);
  // The action is a homomorphism of the group's generators.
  for (const auto& x : c.generator_actions) CHECK(x.degree() == 6);
  CHECK(closure(c.generator_actions, 6).size() == 6);
}

TEST_CASE("brute-force hom counts") {
  auto s3 = named_group("S3");
  Presentation f2 = make_presentation({"x", "y"}, {});
  CHECK(oracle::count_homs(f2, *s3) == 36);
}
