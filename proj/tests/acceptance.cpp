// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "random_gog.hpp"
#include "vrkit/error.hpp"
#include "vrkit/homsearch.hpp"
#include "vrkit/pipeline.hpp"
#include "vrkit/stallings.hpp"

using namespace vrkit;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail.str("");
      detail << what;
    }
  }
};

int failures = 0;

void criterion(int n, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail.str("");
    o.detail << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " -- " << o.detail.str() << " ["
            << secs << " s]" << std::endl;
}

Presentation g5() {
  return make_presentation({"a1", "a2", "b1", "b2", "t"},
                           {"a1^3", "a2^3", "a1 a2 a1 a2", "b1^3", "b2^3", "b1 b2 b1 b2", "a1 b1 b2 a1 b1 b2",
                            "t a1 t^-1 b1^-1"});
}

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
      {"name": "A", "permutations": {"f1": "(1 2 3)", "f2": "(2 3 4)"}},
      {"name": "B", "permutations": {"g1": "(1 2 3)", "g3": "(2 3 4)"}}],
    "edges": [{"name": "E", "from": "A", "to": "B", "order": 3,
               "map0": {"z": "(1 2 3)", "z^2": "(1 3 2)"}, "map1": {"z": "(1 2 3)", "z^2": "(1 3 2)"}}]
  })J"_json);
}

}  // namespace

int main() {
  criterion(1, "worked example reproduction", [](Outcome& o) {
    AppendixOptions opt;
    opt.run_witness = false;
    AppendixReport r = appendix_report(opt);
    const std::vector<std::pair<const char*, std::vector<const char*>>> parts{
        {"a", {"fundamental_presentation", "G_simplified"}},
        {"b", {"psi_hom", "psi_injective"}},
        {"c", {"G0_index", "G1_index", "total_index"}},
        {"d", {"G0_abelian", "G1_abelian"}},
        {"e", {"G1_split", "W_order"}}};
    for (const auto& [part, names] : parts)
      for (const char* n : names) {
        const Checkpoint* c = r.find(n);
        o.require(c && c->status == Checkpoint::Status::pass,
                  std::string("(") + part + ") " + n + ": " + (c ? c->detail : "missing"));
      }
    o.require(r.passed(), "report not passed at " + r.first_failure());
    if (o.ok) {
      const Checkpoint* s0 = r.find("G0_shape");
      const Checkpoint* s1 = r.find("G1_shape");
      bool stretch = s0 && s1 && s0->status == Checkpoint::Status::pass && s1->status == Checkpoint::Status::pass;
      o.detail << "checkpoints a-e pass; stretch (f) " << (stretch ? "reached: 7/5 and 24/6" : "not reached: ")
               << (stretch ? "" : (s0 ? s0->detail : "") + "; " + (s1 ? s1->detail : ""));
    }
  });

  criterion(2, "criterion and witness agree", [](Outcome& o) {
    GraphOfGroups g = example_graph_of_groups();
    for (const char* v : {"V1", "V2"})
      o.require(criterion_finite_subgroup(g, g.vertex_index(v)).satisfied, std::string(v) + " violates the criterion");
    Presentation p = g5();
    WitnessOptions wo;
    wo.targets = {named_group("A5")};
    WitnessResult w =
        free_factor_witness(p, {{Word::parse(p.alphabet, "b1"), Word::parse(p.alphabet, "b2")}, 12}, wo);
    o.require(w.certificate && w.certificate->total_index == 25, "no index-25 certificate: " + w.report);
    if (w.certificate) o.require(verify_certificate(*w.certificate).empty(), "certificate rejected");

    GraphOfGroups loop = z3_loop();
    CriterionResult c = criterion_finite_subgroup(loop, 0);
    o.require(!c.satisfied, "Z3 x Z loop satisfies the criterion");
    Presentation z = fundamental_presentation(loop, {}).presentation;
    WitnessOptions lo;
    lo.hom_budget = 10'000;
    WitnessResult n = free_factor_witness(z, {{Word::parse(z.alphabet, "x")}, 3}, lo);
    o.require(!n.certificate, "witness found for Z3 in Z3 x Z");
    if (o.ok)
      o.detail << "V1, V2 satisfied; certificate index 25 after " << w.homs_examined
               << " homs; Z3 x Z violator found and no witness (" << n.report << ")";
  });

  criterion(3, "Stallings property suite", [](Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::size_t words_checked = 0, completions = 0;
    for (int it = 0; it < 500 && o.ok; ++it) {
      std::size_t rank = 1 + it % 3;
      std::vector<std::string> names{"a", "b", "c"};
      names.resize(rank);
      auto a = make_alphabet(names);
      std::vector<Word> gens;
      std::size_t ng = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      for (std::size_t i = 0; i < ng; ++i) gens.push_back(oracle::random_word(rng, a, 8));
      StallingsGraph g = build_subgroup_graph(a, gens);
      for (int k = 0; k < 10; ++k)
        o.require(build_subgroup_graph(a, gens, &rng) == g, "fold order changed the graph, subgroup " + std::to_string(it));

      // Every reduced word of length <= 6 against the wedge oracle, and
      // products of <= 4 generators must be members.
      oracle::WedgeMembership wedge(a, gens);
      oracle::for_each_reduced_word(rank, 6, [&](const LetterWord& l) {
        Word w = Word::from_letters(a, l);
        if (membership(g, w) != wedge.contains(w)) o.require(false, "membership disagrees on " + w.to_string());
        ++words_checked;
      });
      std::vector<Word> gi;
      for (const Word& h : gens) {
        gi.push_back(h);
        gi.push_back(invert(h));
      }
      std::vector<Word> layer{Word(a)};
      for (int d = 0; d < 4; ++d) {
        std::vector<Word> next;
        for (const Word& x : layer)
          for (const Word& h : gi) {
            Word y = multiply(x, h);
            if (y.length() <= 6) o.require(membership(g, y), "product " + y.to_string() + " rejected");
            if (next.size() < 4000) next.push_back(y);
          }
        layer = std::move(next);
      }

      HallCompletion c = hall_completion(g);
      std::size_t idx = cover_index(c.cover);
      o.require(c.cover.is_covering(), "completion is not a covering");
      o.require(c.k_basis.size() == 1 + idx * (rank - 1), "rank formula fails");
      for (const Word& b : basis(g)) {
        o.require(membership(c.cover, b), "basis word outside the completion");
        o.require(apply_retraction(c, b) == b, "retraction moves a basis word");
      }
      ++completions;
    }
    if (o.ok)
      o.detail << "500 subgroups, 10 fold orders each, " << words_checked << " membership checks, " << completions
               << " completions";
  });

  criterion(4, "Smith normal form suite", [](Outcome& o) {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    std::size_t three = 0;
    for (int it = 0; it < 1000 && o.ok; ++it) {
      std::size_t m = dim(rng), n = dim(rng);
      if (it % 10 == 0) m = n = 3;
      auto a = oracle::random_matrix(rng, m, n, -20, 20);
      IntMatrix A = IntMatrix::from_rows(a, n);
      SNFResult r = snf(A);
      o.require(r.U * A * r.V == r.D, "U A V != D");
      o.require(abs(oracle::det(oracle::to_mat(r.U))) == 1 && abs(oracle::det(oracle::to_mat(r.V))) == 1,
                "transform not unimodular");
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) o.require(r.D(i, j) == 0, "D not diagonal");
      auto d = r.diagonal();
      for (std::size_t i = 0; i + 1 < d.size(); ++i)
        o.require(d[i] >= 0 && (d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0), "divisibility chain broken");
      if (m == 3 && n == 3) {
        o.require(d == oracle::naive_snf(a), "3x3 disagrees with the naive reducer");
        ++three;
      }
    }
    if (o.ok) o.detail << "1000 matrices up to 8x8, " << three << " 3x3 cases checked against the naive reducer";
  });

  criterion(5, "invariant complement suite", [](Outcome& o) {
    std::mt19937_64 rng(555);
    int done = 0;
    while (done < 50 && o.ok) {
      std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
      std::size_t ng = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
      std::vector<IntMatrix> gens;
      for (std::size_t k = 0; k < ng; ++k) {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        IntMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) g(i, perm[i]) = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
        gens.push_back(g);
      }
      std::vector<IntMatrix> group;
      try {
        group = matrix_group_closure(gens, n);
      } catch (const CapExceeded&) {
        continue;
      }
      // T: the orbit lattice of a random vector, sometimes of two.
      std::vector<std::vector<BigInt>> rows;
      std::size_t seeds = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
      for (std::size_t s = 0; s < seeds; ++s) {
        auto v = oracle::random_matrix(rng, 1, n, -3, 3);
        IntMatrix vm = IntMatrix::from_rows(v, n);
        for (const IntMatrix& g : group) rows.push_back((vm * g).row(0));
      }
      Lattice t(n, IntMatrix::from_rows(rows, n));
      Lattice r = invariant_complement(gens, t);
      for (const IntMatrix& g : gens) o.require(transform_lattice(r, g) == r, "complement not invariant");
      o.require(lattice_intersection(t, r).rank() == 0, "T and R intersect");
      o.require(sublattice_index(lattice_sum(t, r)).has_value(), "T + R has infinite index");
      ++done;
    }
    if (o.ok) o.detail << done << " random signed-permutation groups";
  });

  criterion(6, "Todd-Coxeter exactness", [](Outcome& o) {
    Presentation a4 = make_presentation({"a1", "a2"}, {"a1^3", "a2^3", "a1 a2 a1 a2"});
    Presentation s3 = make_presentation({"c1", "c2"}, {"c1^3", "c2^2", "c1 c2 c1 c2"});
    std::size_t oa = group_order(a4), os = group_order(s3);
    std::vector<Word> c2{Word::parse(s3.alphabet, "c2")};
    std::size_t idx = enumerate_cosets(s3, c2).index();
    o.require(oa == 12 && os == 6 && idx == 3, "got " + std::to_string(oa) + ", " + std::to_string(os) + ", " +
                                                   std::to_string(idx));
    if (o.ok) o.detail << "|A4| = 12, |S3| = 6, |S3 : <c2>| = 3";
  });

  criterion(7, "homomorphism search completeness", [](Outcome& o) {
    std::size_t n = enumerate_homs(make_presentation({"x", "y"}, {}), named_group("S3")).homs.size();
    o.require(n == 36, "#Hom(F2, S3) = " + std::to_string(n));
    Presentation g = g5();
    auto psi = images_from_names(
        g, {{"a1", "(1 2 3)"}, {"a2", "(2 3 4)"}, {"b1", "(2 4 3)"}, {"b2", "(3 5 4)"}, {"t", "(1 4 2)"}}, 5);
    auto start = std::chrono::steady_clock::now();
    bool seen = false;
    std::size_t total = for_each_hom(g, named_group("A5"), {}, [&](const GroupHom& h) {
      if (h.images == psi) seen = true;
      return true;
    });
    auto W = [&](const char* s) { return Word::parse(g.alphabet, s); };
    std::vector<FiniteSubgroupSpec> subs{
        {{W("a1"), W("a2")}, 12}, {{W("b1"), W("b2")}, 12}, {{W("a1"), W("b1 b2")}, 6}};
    InjectiveSearch s = find_injective_on(g, subs, {named_group("A5")});
    FixedImages fixed{{0, psi[0]}, {1, psi[1]}};
    InjectiveSearch pinned = find_injective_on(g, subs, {named_group("A5")}, 1'000'000, fixed);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(seen, "psi missing from the enumeration");
    o.require(s.hom.has_value(), "no injective homomorphism found");
    o.require(pinned.hom.has_value(), "no injective homomorphism extending psi on V1");
    o.require(secs < 30, "search took " + std::to_string(secs) + " s");
    if (o.ok)
      o.detail << "#Hom(F2,S3) = 36; psi among " << total << " homs G -> A5; injective hom found after " << s.examined
               << " tested; " << secs << " s";
  });

  criterion(8, "fixed-subtree oracle agreement", [](Outcome& o) {
    GraphOfGroups loop = z3_loop();
    std::size_t x = *loop.vertices[0].group.find("(1 2 3)");
    o.require(fixed_tree_infinite(loop, 0, x).infinite, "loop: x should fix an infinite subtree");
    o.require(oracle::fixed_tree_disagreement(loop, 0, x).empty(), "loop disagreement");
    GraphOfGroups am = amalgam();
    std::size_t z = *am.vertices[0].group.find("(1 2 3)");
    o.require(!fixed_tree_infinite(am, 0, z).infinite, "amalgam: finite subtree expected");
    o.require(oracle::fixed_tree_disagreement(am, 0, z).empty(), "amalgam disagreement");
    GraphOfGroups g = example_graph_of_groups();
    std::size_t v1 = g.vertex_index("V1");
    for (std::size_t f = 0; f < g.vertices[v1].group.size(); ++f)
      if (f != g.vertices[v1].group.identity()) {
        o.require(!fixed_tree_infinite(g, v1, f).infinite, "V1 element with infinite fixed subtree");
        o.require(oracle::fixed_tree_disagreement(g, v1, f).empty(), oracle::fixed_tree_disagreement(g, v1, f));
      }
    std::mt19937_64 rng(8888);
    std::size_t elements = 0, infinite = 0;
    for (int it = 0; it < 100 && o.ok; ++it) {
      GraphOfGroups r = oracle::random_graph_of_groups(rng);
      for (std::size_t v = 0; v < r.vertices.size(); ++v)
        for (std::size_t f = 0; f < r.vertices[v].group.size(); ++f) {
          if (f == r.vertices[v].group.identity()) continue;
          std::string d = oracle::fixed_tree_disagreement(r, v, f);
          o.require(d.empty(), "random graph " + std::to_string(it) + ": " + d);
          ++elements;
          infinite += fixed_tree_infinite(r, v, f).infinite;
        }
    }
    if (o.ok)
      o.detail << "3 documented examples and 100 random graphs (" << elements << " elements, " << infinite
               << " with infinite fixed subtrees), no disagreement";
  });

  std::cout << (failures == 0 ? "all acceptance criteria pass" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
