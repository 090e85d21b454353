#include <doctest.h>

#include "vrkit/error.hpp"
#include "vrkit/pipeline.hpp"

using namespace vrkit;

namespace {
Presentation g5() {
  return make_presentation({"a1", "a2", "b1", "b2", "t"},
                           {"a1^3", "a2^3", "a1 a2 a1 a2", "b1^3", "b2^3", "b1 b2 b1 b2", "a1 b1 b2 a1 b1 b2",
                            "t a1 t^-1 b1^-1"});
}
WitnessOptions a5_only(std::size_t budget = 1'000'000) {
  WitnessOptions o;
  o.targets = {named_group("A5")};
  o.hom_budget = budget;
  return o;
}
}  // namespace

TEST_CASE("free factor check on the two-block presentation") {
  std::vector<std::string> gens;
  for (int i = 1; i <= 24; ++i) gens.push_back("h" + std::to_string(i));
  Presentation p = make_presentation(gens, {"h1^3", "h2^3", "h2 h1 h2 h1", "h7^3", "h20^3", "h20 h7^-1 h20 h7^-1"});
  auto W = [&](const char* s) { return Word::parse(p.alphabet, s); };
  auto c = check_free_factor(p, {W("h1"), W("h2")}, 12);
  REQUIRE(c);
  CHECK(c->block == 0);
  CHECK(c->block_order == 12);
  auto conj = check_free_factor(p, {W("h5 h7 h5^-1"), W("h5 h20 h5^-1")}, 12);
  REQUIRE(conj);
  CHECK(conj->block == 1);
  std::string why;
  CHECK(!check_free_factor(p, {W("h1"), W("h7")}, 12, &why));
  CHECK(!why.empty());
  CHECK(!check_free_factor(p, {W("h1")}, 12, &why));
}

TEST_CASE("witness on the worked example") {
  Presentation g = g5();
  FiniteSubgroupSpec f{{Word::parse(g.alphabet, "b1"), Word::parse(g.alphabet, "b2")}, 12};
  WitnessResult r = free_factor_witness(g, f, a5_only());
  REQUIRE(r.certificate);
  const FreeFactorCertificate& c = *r.certificate;
  CHECK(c.stages.size() == 2);
  CHECK(c.stages[0].table.index() == 5);
  CHECK(c.stages[1].table.index() == 5);
  CHECK(c.total_index == 25);
  CHECK(c.check.block_order == 12);
  CHECK(verify_certificate(c) == "");

  // Determinism, also with a larger budget.
  WitnessResult again = free_factor_witness(g, f, a5_only(2'000'000));
  REQUIRE(again.certificate);
  CHECK(again.certificate->to_json() == c.to_json());

  // Tampering is caught.
  FreeFactorCertificate bad = c;
  bad.total_index = 5;
  CHECK(verify_certificate(bad) != "");
  bad = c;
  bad.stages[0].hom.images[0] = Permutation::parse("(1 2 4)", 5);
  CHECK(verify_certificate(bad) != "");
  bad = c;
  bad.tracked[0] = Word::parse(bad.final_presentation().alphabet, "1");
  CHECK(verify_certificate(bad) != "");
}

TEST_CASE("witness edge cases") {
  Presentation a4 = make_presentation({"a1", "a2"}, {"a1^3", "a2^3", "a1 a2 a1 a2"});
  FiniteSubgroupSpec whole{{Word::parse(a4.alphabet, "a1"), Word::parse(a4.alphabet, "a2")}, 12};
  WitnessResult r = free_factor_witness(a4, whole, {});
  REQUIRE(r.certificate);
  CHECK(r.certificate->total_index == 1);
  CHECK(r.certificate->check.split.blocks.size() == 1);
  CHECK(verify_certificate(*r.certificate) == "");

  Presentation z3z = make_presentation({"x", "t"}, {"x^3", "t x t^-1 x^-1"});
  FiniteSubgroupSpec x{{Word::parse(z3z.alphabet, "x")}, 3};
  WitnessOptions o;
  o.hom_budget = 10'000;
  WitnessResult none = free_factor_witness(z3z, x, o);
  CHECK(!none.certificate);

  CHECK_THROWS_AS(free_factor_witness(z3z, {{}, 2}, o), InvalidArgument);
  o.hom_budget = 0;
  CHECK_THROWS_AS(free_factor_witness(z3z, x, o), InvalidArgument);
}

TEST_CASE("appendix report") {
  AppendixOptions opt;
  opt.run_witness = false;
  AppendixReport r = appendix_report(opt);
  CHECK(r.passed());
  for (const Checkpoint& c : r.checkpoints) CHECK_MESSAGE(c.status == Checkpoint::Status::pass, (c.name + ": " + c.detail));
  CHECK(r.to_json()["schema_version"].get<int>() == 1);

  opt.sabotage_psi = true;
  AppendixReport s = appendix_report(opt);
  CHECK(!s.passed());
  CHECK(s.first_failure() == "psi_hom");
  CHECK(s.find("G0_index")->status == Checkpoint::Status::skipped);

  opt.sabotage_psi = false;
  opt.trivial_e2 = true;
  opt.keep_going = true;
  AppendixReport t = appendix_report(opt);
  CHECK(!t.passed());
  CHECK(t.find("G0_abelian")->status == Checkpoint::Status::fail);
}
