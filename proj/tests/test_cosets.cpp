#include <doctest.h>

#include "vrkit/cosets.hpp"
#include "vrkit/error.hpp"
#include "vrkit/rs.hpp"

using namespace vrkit;

namespace {
Presentation s3() { return make_presentation({"c1", "c2"}, {"c1^3", "c2^2", "c1 c2 c1 c2"}); }
Presentation a4() { return make_presentation({"a1", "a2"}, {"a1^3", "a2^3", "a1 a2 a1 a2"}); }
std::vector<Word> words(const Presentation& p, std::initializer_list<const char*> ws) {
  std::vector<Word> out;
  for (const char* w : ws) out.push_back(Word::parse(p.alphabet, w));
  return out;
}
}  // namespace

TEST_CASE("enumeration examples") {
  CosetTable t = enumerate_cosets(s3(), words(s3(), {"c2"}));
  CHECK(t.index() == 3);
  CHECK(t.check().empty());
  CHECK(enumerate_cosets(a4(), {}).index() == 12);
  CHECK(group_order(a4()) == 12);
  CHECK(group_order(s3()) == 6);
  CHECK(group_order(make_presentation({"x"}, {"x^5"})) == 5);
  CHECK_THROWS_AS(enumerate_cosets(make_presentation({"x", "y"}, {}), {}, 100), CosetOverflow);
  try {
    enumerate_cosets(make_presentation({"x"}, {}), {}, 50);
  } catch (const CosetOverflow& e) {
    CHECK(!e.partial().complete);
  }
}

TEST_CASE("permutation representations") {
  CosetTable t = enumerate_cosets(s3(), words(s3(), {"c2"}));
  auto rep = perm_rep(t);
  CHECK(rep.size() == 2);
  CHECK(closure(rep, 3).size() == 6);
  for (const auto& x : perm_rep(enumerate_cosets(s3(), words(s3(), {"c1", "c2"})))) CHECK(x.is_identity());
  auto reg = perm_rep(enumerate_cosets(a4(), {}));
  CHECK(reg[0].degree() == 12);
  CHECK(closure(reg, 12).size() == 12);
}

TEST_CASE("standardization is canonical") {
  Presentation g = make_presentation({"a1", "a2", "b1", "b2", "t"},
                                     {"a1^3", "a2^3", "a1 a2 a1 a2", "b1^3", "b2^3", "b1 b2 b1 b2",
                                      "a1 b1 b2 a1 b1 b2", "t a1 t^-1 b1^-1"});
  for (const Presentation& p : {s3(), a4()}) {
    for (std::size_t n = 0; n < 2; ++n) {
      std::vector<Word> sub;
      if (n) sub.push_back(Word::generator(p.alphabet, 0));
      CosetTable f = enumerate_cosets(p, sub, kDefaultCosetLimit, EnumerationStrategy::forward);
      CosetTable r = enumerate_cosets(p, sub, kDefaultCosetLimit, EnumerationStrategy::reversed);
      CHECK(f.rows == r.rows);
      CHECK(standardize(f).rows == f.rows);
    }
  }
  (void)g;
}

TEST_CASE("tables from actions agree with enumeration") {
  auto gens = perm_rep(enumerate_cosets(s3(), words(s3(), {"c2"})));
  CosetTable t = table_from_action(s3(), gens);
  CHECK(t.rows == enumerate_cosets(s3(), words(s3(), {"c2"})).rows);
  // The orbit of coset 0 under the representation is the whole table.
  CHECK(t.index() == 3);
  CHECK_THROWS(table_from_action(s3(), std::vector<Permutation>{Permutation::parse("(1 2 3)"), Permutation::parse("(1 2 3)")}));
}

TEST_CASE("transversals") {
  CosetTable t = enumerate_cosets(s3(), words(s3(), {"c2"}));
  auto tr = schreier_transversal(t);
  REQUIRE(tr.size() == 3);
  CHECK(tr[0].is_identity());
  CHECK(tr[1].to_string() == "c1");
  CHECK(tr[2].to_string() == "c1^-1");  // shortlex: c1^-1 precedes c1 c1
  CHECK(schreier_transversal(enumerate_cosets(s3(), words(s3(), {"c1", "c2"}))).size() == 1);

  Presentation f2 = make_presentation({"a", "b"}, {});
  CosetTable c = enumerate_cosets(f2, words(f2, {"a^2", "b", "a b a^-1"}));
  auto tf = schreier_transversal(c);
  REQUIRE(tf.size() == 2);
  CHECK(tf[1].to_string() == "a");
}

TEST_CASE("reidemeister-schreier") {
  Presentation f2 = make_presentation({"a", "b"}, {});
  CosetTable c = enumerate_cosets(f2, words(f2, {"a^2", "b", "a b a^-1"}));
  SubgroupPresentation s = subgroup_presentation(c);
  CHECK(s.presentation.generator_count() == 3);
  CHECK(s.presentation.relators.empty());
  for (const Word& e : s.embedding) CHECK(c.trace(0, e) == 0);

  CosetTable z3 = enumerate_cosets(s3(), words(s3(), {"c1"}));
  SubgroupPresentation sz = subgroup_presentation(z3);
  CHECK(abelian_invariants(tietze_simplify(sz.presentation).presentation) == AbelianInvariants{{3}, 0});
  CHECK(sz.raw_relators.size() == 2 * 3);
  CHECK(sz.presentation.generator_count() == 2 * 2 - 1);
  CHECK(rewrite(sz, z3, Word::parse(s3().alphabet, "c1^2")).length() >= 1);
  CHECK_THROWS(rewrite(sz, z3, Word::parse(s3().alphabet, "c2")));

  // Rewriting respects the embedding.
  Word w = Word::parse(s3().alphabet, "c2 c1 c2^-1");
  Word r = rewrite(sz, z3, w);
  std::vector<Word> emb = sz.embedding;
  CHECK(enumerate_cosets(s3(), std::vector<Word>{multiply(substitute(r, emb, s3().alphabet), invert(w))}).index() == 6);
}
