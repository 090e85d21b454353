#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vrkit/error.hpp"
#include "vrkit/pipeline.hpp"
#include "vrkit/stallings.hpp"

using namespace vrkit;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const std::string& path) {
  std::vector<std::string> warnings;
  Presentation p = parse_presentation(slurp(path), &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return p;
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<Word> parse_words(const AlphabetPtr& a, const std::string& s) {
  std::vector<Word> out;
  for (const std::string& w : split_list(s)) out.push_back(Word::parse(a, w));
  return out;
}

std::vector<PermGroupPtr> parse_targets(const std::string& s) {
  std::vector<PermGroupPtr> out;
  for (const std::string& t : split_list(s)) out.push_back(named_group(t));
  return out;
}

json words_json(const std::vector<Word>& ws) {
  json j = json::array();
  for (const Word& w : ws) j.push_back(w.to_string());
  return j;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vrkit: virtual retraction and free-factor certificates for finitely presented groups"};
  app.require_subcommand(1);
  int status = 0;

  // appendix
  auto* appendix = app.add_subcommand("appendix", "Reproduce the A4/A4/S3 worked example with checkpoints");
  std::string json_out;
  AppendixOptions aopt;
  bool no_witness = false;
  appendix->add_option("--json", json_out, "Write the report JSON here");
  appendix->add_flag("--sabotage-psi", aopt.sabotage_psi, "Negative control: send a1 to (1 2 4)");
  appendix->add_flag("--trivial-e2", aopt.trivial_e2, "Negative control: trivial Z2 edge group");
  appendix->add_flag("--keep-going", aopt.keep_going, "Run every checkpoint even after a failure");
  appendix->add_flag("--no-witness", no_witness, "Skip the automatic witness search");
  appendix->callback([&] {
    aopt.run_witness = !no_witness;
    AppendixReport r = appendix_report(aopt);
    for (const Checkpoint& c : r.checkpoints) {
      const char* s = c.status == Checkpoint::Status::pass ? "PASS" : c.status == Checkpoint::Status::fail ? "FAIL" : "SKIP";
      std::cout << s << "  " << c.name << (c.blocking ? "" : " (stretch)") << "  " << c.detail << "\n";
    }
    if (!json_out.empty()) std::ofstream(json_out) << r.to_json().dump(2) << "\n";
    if (!r.passed()) {
      std::string f = r.first_failure();
      std::cout << "appendix FAILED" << (f.empty() ? "" : " at " + f) << "\n";
      status = 1;
    } else {
      std::cout << "appendix passed\n";
    }
  });

  // witness
  auto* witness = app.add_subcommand("witness", "Search for a finite-index subgroup with F as a free factor");
  std::string pres_path, subgroup, targets;
  std::size_t order = 0;
  WitnessOptions wopt;
  witness->add_option("--pres", pres_path, "Presentation JSON")->required();
  witness->add_option("--subgroup", subgroup, "Comma-separated generators of F")->required();
  witness->add_option("--order", order, "|F|")->required();
  witness->add_option("--targets", targets, "Comma-separated target groups (default A5,S5,A4,S4)");
  witness->add_option("--max-stages", wopt.max_stages);
  witness->add_option("--budget", wopt.hom_budget, "Homomorphisms tested in total");
  witness->callback([&] {
    Presentation p = load_presentation(pres_path);
    wopt.targets = parse_targets(targets);
    WitnessResult r = free_factor_witness(p, {parse_words(p.alphabet, subgroup), order}, wopt);
    json out{{"schema_version", 1}, {"homs_examined", r.homs_examined}, {"report", r.report}};
    if (r.certificate) {
      std::string bad = verify_certificate(*r.certificate);
      out["certificate"] = r.certificate->to_json();
      out["verified"] = bad.empty();
      if (!bad.empty()) out["verifier"] = bad;
      status = bad.empty() ? 0 : 1;
    } else {
      out["certificate"] = nullptr;
      out["deepest_stage"] = r.deepest_stage;
      out["budget_exhausted"] = r.budget_exhausted;
      status = 1;
    }
    print(out);
  });

  // tc
  auto* tc = app.add_subcommand("tc", "Todd-Coxeter coset enumeration");
  std::size_t limit = kDefaultCosetLimit;
  bool table_out = false;
  tc->add_option("--pres", pres_path)->required();
  tc->add_option("--subgroup", subgroup, "Comma-separated subgroup generators (default trivial)");
  tc->add_option("--limit", limit, "Maximum cosets defined");
  tc->add_flag("--table", table_out, "Print the full table");
  tc->callback([&] {
    Presentation p = load_presentation(pres_path);
    CosetTable t = enumerate_cosets(p, parse_words(p.alphabet, subgroup), limit);
    json out{{"index", t.index()}};
    if (table_out) out["table"] = t.to_json();
    print(out);
  });

  // rs
  auto* rs = app.add_subcommand("rs", "Reidemeister-Schreier presentation of a finite-index subgroup");
  std::string prefix = "f";
  bool simplify = false;
  rs->add_option("--pres", pres_path)->required();
  rs->add_option("--subgroup", subgroup)->required();
  rs->add_option("--prefix", prefix);
  rs->add_flag("--simplify", simplify, "Run Tietze simplification afterwards");
  rs->callback([&] {
    Presentation p = load_presentation(pres_path);
    CosetTable t = enumerate_cosets(p, parse_words(p.alphabet, subgroup));
    SubgroupPresentation s = subgroup_presentation(t, prefix);
    json out = s.to_json();
    if (simplify) {
      TietzeResult r = tietze_simplify(s.presentation);
      out["simplified"] = to_json(r.presentation);
      out["trail"] = r.trail.to_json();
    }
    print(out);
  });

  // stallings
  auto* st = app.add_subcommand("stallings", "Subgroup graphs of free groups");
  std::string generators, member;
  bool complete = false;
  st->add_option("--generators", generators, "Comma-separated free generators")->required();
  st->add_option("--subgroup", subgroup, "Comma-separated subgroup generators")->required();
  st->add_option("--member", member, "Comma-separated words to test");
  st->add_flag("--complete", complete, "Hall completion to a finite cover");
  st->callback([&] {
    AlphabetPtr a = make_alphabet(split_list(generators));
    std::vector<Word> gens = parse_words(a, subgroup);
    StallingsGraph g = build_subgroup_graph(a, gens);
    json out{{"graph", g.to_json()}, {"basis", words_json(basis(g))}};
    if (!member.empty()) {
      json m = json::object();
      for (const Word& w : parse_words(a, member)) m[w.to_string()] = membership(g, w);
      out["membership"] = m;
    }
    if (complete) {
      HallCompletion c = hall_completion(g);
      out["cover"] = c.cover.to_json();
      out["index"] = cover_index(c.cover);
      out["k_basis"] = words_json(c.k_basis);
      out["complement_basis"] = words_json(c.complement_basis);
    }
    print(out);
  });

  // snf
  auto* sn = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  std::string matrix;
  sn->add_option("--matrix", matrix, "JSON rows, e.g. [[2,4],[6,8]]")->required();
  sn->callback([&] {
    json j = json::parse(matrix);
    std::vector<std::vector<BigInt>> rows;
    for (const auto& r : j) {
      rows.emplace_back();
      for (const auto& x : r) rows.back().push_back(BigInt(x.is_string() ? x.get<std::string>() : x.dump()));
    }
    SNFResult r = snf(IntMatrix::from_rows(rows));
    json diag = json::array();
    for (const BigInt& d : r.diagonal()) diag.push_back(d.str());
    print({{"diagonal", diag}, {"D", r.D.to_string()}, {"U", r.U.to_string()}, {"V", r.V.to_string()}});
  });

  // homsearch
  auto* hs = app.add_subcommand("homsearch", "Enumerate homomorphisms into a finite permutation group");
  std::string target = "S3";
  std::size_t cap = 1'000'000;
  bool list = false;
  hs->add_option("--pres", pres_path)->required();
  hs->add_option("--target", target);
  hs->add_option("--cap", cap);
  hs->add_flag("--list", list, "Print every homomorphism");
  hs->callback([&] {
    Presentation p = load_presentation(pres_path);
    HomList l = enumerate_homs(p, named_group(target), {}, cap);
    json out{{"count", l.homs.size()}, {"truncated", l.truncated}};
    if (list) {
      out["homs"] = json::array();
      for (const GroupHom& h : l.homs) out["homs"].push_back(h.to_json());
    }
    print(out);
  });

  // tietze / abelian
  auto* tz = app.add_subcommand("tietze", "Simplify a presentation");
  std::string keep;
  tz->add_option("--pres", pres_path)->required();
  tz->add_option("--keep", keep, "Comma-separated generators to keep");
  tz->callback([&] {
    Presentation p = load_presentation(pres_path);
    TietzeOptions o;
    o.keep = split_list(keep);
    TietzeResult r = tietze_simplify(p, o);
    print({{"presentation", to_json(r.presentation)}, {"trail", r.trail.to_json()}});
  });
  auto* ab = app.add_subcommand("abelian", "Abelian invariants");
  ab->add_option("--pres", pres_path)->required();
  ab->callback([&] {
    AbelianInvariants inv = abelian_invariants(load_presentation(pres_path));
    json t = json::array();
    for (const BigInt& d : inv.torsion) t.push_back(d.str());
    print({{"torsion", t}, {"free_rank", inv.free_rank}, {"text", inv.to_string()}});
  });

  // gog
  auto* gog = app.add_subcommand("gog", "Graphs of finite groups");
  gog->require_subcommand(1);
  std::string gog_file, vertex, element, tree;
  std::size_t radius = 4;
  auto* crit = gog->add_subcommand("criterion", "Does every finite subgroup at a vertex fix a finite subtree");
  crit->add_option("--file", gog_file)->required();
  crit->add_option("--vertex", vertex)->required();
  crit->callback([&] {
    GraphOfGroups g = graph_of_groups_from_json(json::parse(slurp(gog_file)));
    std::size_t v = g.vertex_index(vertex);
    CriterionResult c = criterion_finite_subgroup(g, v);
    json out{{"vertex", vertex}, {"satisfied", c.satisfied}, {"checked", c.checked}};
    if (c.violator) out["violator"] = g.vertices[v].group.name(*c.violator);
    print(out);
    status = c.satisfied ? 0 : 1;
  });
  auto* fixed = gog->add_subcommand("fixed", "Fixed subtree of one vertex-group element");
  fixed->add_option("--file", gog_file)->required();
  fixed->add_option("--vertex", vertex)->required();
  fixed->add_option("--element", element, "Element name")->required();
  fixed->add_option("--radius", radius, "Also count fixed vertices by distance up to this radius");
  fixed->callback([&] {
    GraphOfGroups g = graph_of_groups_from_json(json::parse(slurp(gog_file)));
    std::size_t v = g.vertex_index(vertex);
    auto f = g.vertices[v].group.find(element);
    if (!f) throw InvalidArgument("no element " + element + " in " + vertex);
    FixedTreeVerdict r = fixed_tree_infinite(g, v, *f);
    print({{"infinite", r.infinite},
           {"states", r.states},
           {"diameter", r.diameter},
           {"ball", ball_growth(g, v, *f, radius)}});
  });
  auto* pres = gog->add_subcommand("presentation", "Presentation of the fundamental group");
  pres->add_option("--file", gog_file)->required();
  pres->add_option("--tree", tree, "Comma-separated spanning tree edge names")->required();
  pres->callback([&] {
    GraphOfGroups g = graph_of_groups_from_json(json::parse(slurp(gog_file)));
    std::vector<std::size_t> t;
    for (const std::string& e : split_list(tree)) t.push_back(g.edge_index(e));
    print(to_json(fundamental_presentation(g, t).presentation));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
