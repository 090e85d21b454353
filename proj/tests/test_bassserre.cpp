#include <doctest.h>

#include <random>

#include "random_gog.hpp"
#include "vrkit/cosets.hpp"
#include "vrkit/error.hpp"
#include "vrkit/pipeline.hpp"

using namespace vrkit;
using nlohmann::json;

namespace {

GraphOfGroups z3_loop() {
  return graph_of_groups_from_json(R"J({
    "vertices": [{"name": "X", "generators": ["x"], "permutations": {"x": "(1 2 3)"}, "relators": ["x^3"]}],
    "edges": [{"name": "L", "from": "X", "to": "X", "order": 3, "stable_letter": "t",
               "map0": {"z": "(1 2 3)", "z^2": "(1 3 2)"}, "map1": {"z": "(1 2 3)", "z^2": "(1 3 2)"}}]
  })J"_json);
}

GraphOfGroups amalgam() {
  return graph_of_groups_from_json(R"J({
    "vertices": [
      {"name": "A", "generators": ["f1", "f2"], "permutations": {"f1": "(1 2 3)", "f2": "(2 3 4)"},
       "relators": ["f1^3", "f2^3", "f1 f2 f1 f2"]},
      {"name": "B", "generators": ["g1", "g3"], "permutations": {"g1": "(1 2 3)", "g3": "(2 3 4)"},
       "relators": ["g1^3", "g3^3", "g1 g3 g1 g3"]}],
    "edges": [{"name": "E", "from": "A", "to": "B", "order": 3,
               "map0": {"z": "(1 2 3)", "z^2": "(1 3 2)"}, "map1": {"z": "(1 2 3)", "z^2": "(1 3 2)"}}]
  })J"_json);
}

std::size_t element(const GraphOfGroups& g, const char* v, const char* name) {
  return *g.vertices[g.vertex_index(v)].group.find(name);
}

}  // namespace

TEST_CASE("finite group tables") {
  auto t = FiniteGroupTable::from_perm_group(*named_group("A4"));
  CHECK(t.size() == 12);
  CHECK(t.element_order(*t.find("(1 2 3)")) == 3);
  CHECK(t.subgroup({*t.find("(1 2 3)")}).size() == 3);
  std::vector<std::size_t> gens;
  auto p = FiniteGroupTable::from_presentation(make_presentation({"c1", "c2"}, {"c1^3", "c2^2", "c1 c2 c1 c2"}), &gens);
  CHECK(p.size() == 6);
  CHECK(p.element_order(gens[0]) == 3);
  CHECK_THROWS_AS(FiniteGroupTable({"1", "x"}, {{0, 1}, {1, 1}}), InvalidArgument);
  auto c3 = oracle::cyclic_table(3);
  CHECK(is_monomorphism(c3, t, {t.identity(), *t.find("(1 2 3)"), *t.find("(1 3 2)")}));
  CHECK(!is_monomorphism(c3, t, {t.identity(), *t.find("(1 2 3)"), *t.find("(1 2 3)")}));
}

TEST_CASE("json validation") {
  json bad = R"J({
    "vertices": [{"name": "X", "permutations": {"x": "(1 2 3)"}}],
    "edges": [{"name": "L", "from": "X", "to": "X", "order": 3,
               "map0": {"z": "(1 2 3)", "z^2": "(1 2 3)"}, "map1": {"z": "(1 2 3)", "z^2": "(1 3 2)"}}]
  })J"_json;
  CHECK_THROWS_AS(graph_of_groups_from_json(bad), InvalidArgument);
  GraphOfGroups g = example_graph_of_groups();
  CHECK(graph_of_groups_from_json(g.to_json()).to_json() == g.to_json());
}

TEST_CASE("fundamental presentations") {
  FundamentalPresentation f = fundamental_presentation(example_graph_of_groups(), example_tree());
  CHECK(f.presentation.generator_count() == 7);
  CHECK(f.presentation.relators.size() == 12);
  CHECK(f.presentation.relators[9].to_string() == "t a1 t^-1 b1^-1");

  FundamentalPresentation l = fundamental_presentation(z3_loop(), {});
  CHECK(l.presentation.alphabet->names() == std::vector<std::string>{"x", "t"});
  CHECK(abelian_invariants(l.presentation) == AbelianInvariants{{3}, 1});
  CHECK(l.presentation.relators.size() == 2);

  FundamentalPresentation a = fundamental_presentation(amalgam(), {0});
  CHECK(a.presentation.generator_count() == 4);
  TietzeResult s = tietze_simplify(a.presentation);
  CHECK(s.presentation.generator_count() == 3);
  CHECK(abelian_invariants(s.presentation) == abelian_invariants(a.presentation));
}

TEST_CASE("trivial edge groups give free products with a free group") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    GraphOfGroups g = oracle::random_graph_of_groups(rng);
    for (auto& e : g.edges) {
      e.group = oracle::cyclic_table(1);
      e.mono0 = {g.vertices[e.end0].group.identity()};
      e.mono1 = {g.vertices[e.end1].group.identity()};
    }
    std::vector<std::size_t> tree;
    for (std::size_t i = 0; i + 1 < g.vertices.size(); ++i) tree.push_back(i);
    FundamentalPresentation f = fundamental_presentation(g, tree);
    std::size_t vgens = 0;
    for (const auto& vg : f.vertex_generators) vgens += vg.size();
    CHECK(f.presentation.generator_count() == vgens + g.edges.size() - g.vertices.size() + 1);
  }
}

TEST_CASE("fixed subtrees: documented examples") {
  GraphOfGroups loop = z3_loop();
  std::size_t x = element(loop, "X", "(1 2 3)");
  CHECK(fixed_tree_infinite(loop, 0, x).infinite);
  CHECK(ball_growth(loop, 0, x, 5) == std::vector<std::size_t>{1, 2, 2, 2, 2, 2});

  GraphOfGroups am = amalgam();
  std::size_t z = element(am, "A", "(1 2 3)");
  FixedTreeVerdict v = fixed_tree_infinite(am, 0, z);
  CHECK(!v.infinite);
  CHECK(v.diameter == 1);
  CHECK(ball_growth(am, 0, z, 5) == std::vector<std::size_t>{1, 1, 0, 0, 0, 0});
  std::size_t dt = element(am, "A", "(1 2)(3 4)");
  CHECK(ball_growth(am, 0, dt, 3) == std::vector<std::size_t>{1, 0, 0, 0});

  GraphOfGroups g = example_graph_of_groups();
  std::size_t v1 = g.vertex_index("V1");
  for (std::size_t f = 0; f < g.vertices[v1].group.size(); ++f) {
    if (f == g.vertices[v1].group.identity()) continue;
    CHECK(!fixed_tree_infinite(g, v1, f).infinite);
    CHECK(oracle::fixed_tree_disagreement(g, v1, f) == "");
  }
}

TEST_CASE("criterion") {
  GraphOfGroups g = example_graph_of_groups();
  for (const char* v : {"V1", "V2", "V3"}) CHECK(criterion_finite_subgroup(g, g.vertex_index(v)).satisfied);
  GraphOfGroups loop = z3_loop();
  CriterionResult c = criterion_finite_subgroup(loop, 0);
  CHECK(!c.satisfied);
  REQUIRE(c.violator);
  CHECK(loop.vertices[0].group.element_order(*c.violator) == 3);
  GraphOfGroups am = amalgam();
  CHECK(criterion_finite_subgroup(am, 0).satisfied);
  CHECK(criterion_finite_subgroup(am, 1).satisfied);
}

TEST_CASE("criterion is invariant under relabeling a vertex table") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 30; ++it) {
    GraphOfGroups g = oracle::random_graph_of_groups(rng);
    std::size_t v = std::uniform_int_distribution<std::size_t>(0, g.vertices.size() - 1)(rng);
    CriterionResult before = criterion_finite_subgroup(g, v);
    std::vector<std::size_t> perm(g.vertices[v].group.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    GraphOfGroups h = g;
    h.vertices[v].group = g.vertices[v].group.relabeled(perm);
    for (auto& e : h.edges) {
      if (e.end0 == v)
        for (auto& x : e.mono0) x = perm[x];
      if (e.end1 == v)
        for (auto& x : e.mono1) x = perm[x];
    }
    h.validate();
    CriterionResult after = criterion_finite_subgroup(h, v);
    CHECK(after.satisfied == before.satisfied);
  }
}

TEST_CASE("fixed subtrees agree with ball growth on random graphs") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 25; ++it) {
    GraphOfGroups g = oracle::random_graph_of_groups(rng);
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      for (std::size_t f = 0; f < g.vertices[v].group.size(); ++f) {
        if (f == g.vertices[v].group.identity()) continue;
        std::string d = oracle::fixed_tree_disagreement(g, v, f);
        CHECK_MESSAGE(d.empty(), d);
      }
  }
}

TEST_CASE("free product orders") {
  Presentation a4 = make_presentation({"a1", "a2"}, {"a1^3", "a2^3", "a1 a2 a1 a2"});
  std::vector<std::size_t> ge;
  FiniteGroupTable t = FiniteGroupTable::from_presentation(a4, &ge);
  std::vector<FiniteGroupTable> blocks{t, t};
  FreeProductWord h1{{0, ge[0], false}}, h2{{0, ge[1], false}};
  CHECK(free_product_order(blocks, 20, {h1, h2}).order == std::size_t{12});
  // A conjugate by a free letter has the same order.
  FreeProductWord u{{-1, 3, false}}, ui{{-1, 3, true}};
  auto conj = [&](const FreeProductWord& x) {
    return free_product_multiply(blocks, free_product_multiply(blocks, u, x), ui);
  };
  CHECK(free_product_order(blocks, 20, {conj(h1), conj(h2)}).order == std::size_t{12});
  CHECK(!free_product_order(blocks, 20, {u}, 500).order);
  CHECK(free_product_order(blocks, 20, {}).order == std::size_t{1});
  // Elements from two blocks generate an infinite group.
  FreeProductWord k1{{1, ge[0], false}};
  CHECK(!free_product_order(blocks, 20, {h1, k1}, 1000).order);
  CHECK(free_product_multiply(blocks, u, ui).empty());
}
