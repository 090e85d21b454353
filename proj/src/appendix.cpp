#include <functional>
#include <set>

#include "vrkit/error.hpp"
#include "vrkit/pipeline.hpp"

namespace vrkit {

GraphOfGroups example_graph_of_groups(bool trivial_e2) {
  nlohmann::json j = R"J({
    "vertices": [
      {"name": "V1", "generators": ["a1", "a2"], "permutations": {"a1": "(1 2 3)", "a2": "(2 3 4)"},
       "relators": ["a1^3", "a2^3", "a1 a2 a1 a2"]},
      {"name": "V2", "generators": ["b1", "b2"], "permutations": {"b1": "(1 2 3)", "b2": "(2 3 4)"},
       "relators": ["b1^3", "b2^3", "b1 b2 b1 b2"]},
      {"name": "V3", "generators": ["c1", "c2"], "permutations": {"c1": "(1 2 3)", "c2": "(1 2)"},
       "relators": ["c1^3", "c2^2", "c1 c2 c1 c2"]}
    ],
    "edges": [
      {"name": "E1", "from": "V1", "to": "V2", "order": 3, "stable_letter": "t",
       "map0": {"z": "(1 2 3)", "z^2": "(1 3 2)"}, "map1": {"z": "(1 2 3)", "z^2": "(1 3 2)"}},
      {"name": "E3", "from": "V1", "to": "V3", "order": 3,
       "map0": {"z": "(1 2 3)", "z^2": "(1 3 2)"}, "map1": {"z": "(1 2 3)", "z^2": "(1 3 2)"}},
      {"name": "E2", "from": "V2", "to": "V3", "order": 2,
       "map0": {"z": "(1 3)(2 4)"}, "map1": {"z": "(1 2)"}}
    ]
  })J"_json;
  if (trivial_e2) {
    j["edges"][2]["order"] = 1;
    j["edges"][2]["map0"] = nlohmann::json::object();
    j["edges"][2]["map1"] = nlohmann::json::object();
  }
  return graph_of_groups_from_json(j);
}

std::vector<std::size_t> example_tree() { return {1, 2}; }

bool AppendixReport::passed() const {
  for (const Checkpoint& c : checkpoints)
    if (c.blocking && c.status != Checkpoint::Status::pass) return false;
  return true;
}

const Checkpoint* AppendixReport::find(const std::string& name) const {
  for (const Checkpoint& c : checkpoints)
    if (c.name == name) return &c;
  return nullptr;
}

std::string AppendixReport::first_failure() const {
  for (const Checkpoint& c : checkpoints)
    if (c.blocking && c.status == Checkpoint::Status::fail) return c.name;
  return {};
}

nlohmann::json AppendixReport::to_json() const {
  nlohmann::json cps = nlohmann::json::array();
  for (const Checkpoint& c : checkpoints) {
    const char* status = c.status == Checkpoint::Status::pass ? "pass" : c.status == Checkpoint::Status::fail ? "fail" : "skipped";
    cps.push_back({{"name", c.name}, {"status", status}, {"blocking", c.blocking}, {"detail", c.detail}});
  }
  return {{"schema_version", schema_version}, {"passed", passed()}, {"checkpoints", cps}, {"data", data}};
}

namespace {

std::set<LetterWord> canonical_set(const Presentation& p) {
  std::set<LetterWord> out;
  for (const Word& r : p.relators) out.insert(cyclic_canonical(r.letters()));
  return out;
}

// Relators equal as a set up to rotation and inversion, same generators.
bool same_presentation(const Presentation& p, const std::vector<std::string>& gens, const std::vector<std::string>& rels,
                       std::string& detail) {
  if (p.alphabet->names() != gens) {
    detail = "generators differ";
    return false;
  }
  Presentation q = make_presentation(gens, rels);
  if (p.relators.size() != q.relators.size()) {
    detail = std::to_string(p.relators.size()) + " relators, expected " + std::to_string(q.relators.size());
    return false;
  }
  std::set<LetterWord> a = canonical_set(p);
  std::set<LetterWord> b;
  for (const Word& r : q.relators) b.insert(cyclic_canonical(Word::from_letters(p.alphabet, r.letters()).letters()));
  if (a != b) {
    detail = "relator sets differ";
    return false;
  }
  return true;
}

std::string relator_list(const Presentation& p) {
  std::string out;
  for (const Word& r : p.relators) out += (out.empty() ? "" : "; ") + r.to_string();
  return out;
}

// Relator shapes: cubes of a generator, and squares of words of a given length.
struct Shape {
  std::size_t cubes = 0;
  std::map<std::size_t, std::size_t> squares;  // root length -> count
  std::size_t other = 0;
};

Shape shape_of(const Presentation& p) {
  Shape s;
  for (const Word& r : p.relators) {
    LetterWord w = r.letters();
    if (r.syllables().size() == 1 && w.size() == 3) {
      ++s.cubes;
      continue;
    }
    std::size_t n = w.size();
    if (n % 2 == 0 && std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n / 2),
                                 w.begin() + static_cast<std::ptrdiff_t>(n / 2))) {
      ++s.squares[n / 2];
      continue;
    }
    ++s.other;
  }
  return s;
}

std::string sizes(const Presentation& p) {
  return std::to_string(p.generator_count()) + " generators, " + std::to_string(p.relators.size()) + " relators";
}

class Runner {
 public:
  Runner(AppendixReport& report, bool keep_going) : report_(report), keep_going_(keep_going) {}

  // `body` returns true on success and may fill `detail`; throwing fails the
  // checkpoint with the exception text.
  bool step(const std::string& name, bool blocking, const std::function<bool(std::string&)>& body) {
    Checkpoint c;
    c.name = name;
    c.blocking = blocking;
    if (halted_) {
      c.detail = "not run after an earlier failure";
      report_.checkpoints.push_back(c);
      return false;
    }
    try {
      std::string detail;
      bool ok = body(detail);
      c.status = ok ? Checkpoint::Status::pass : Checkpoint::Status::fail;
      c.detail = detail;
    } catch (const MissingInput& m) {
      c.status = Checkpoint::Status::skipped;
      c.detail = m.what();
    } catch (const std::exception& e) {
      c.status = Checkpoint::Status::fail;
      c.detail = e.what();
    }
    if (c.status != Checkpoint::Status::pass && blocking && !keep_going_) halted_ = true;
    report_.checkpoints.push_back(c);
    return c.status == Checkpoint::Status::pass;
  }

  struct MissingInput : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  template <class T>
  static const T& need(const std::optional<T>& x, const char* what) {
    if (!x) throw MissingInput(std::string("needs ") + what);
    return *x;
  }

 private:
  AppendixReport& report_;
  bool keep_going_;
  bool halted_ = false;
};

}  // namespace

AppendixReport appendix_report(const AppendixOptions& options) {
  AppendixReport report;
  Runner run(report, options.keep_going);
  auto& data = report.data;
  const PermGroupPtr a5 = named_group("A5");

  std::optional<GraphOfGroups> gog;
  std::optional<FundamentalPresentation> fp;
  std::optional<TietzeResult> g_simple;
  std::optional<GroupHom> psi;
  std::optional<CosetTable> table0;
  std::optional<SubgroupPresentation> rs0;
  std::optional<TietzeResult> g0;
  std::optional<TietzeResult> g0_short;
  std::optional<GroupHom> phi;
  std::optional<CosetTable> table1;
  std::optional<SubgroupPresentation> rs1;
  std::optional<TietzeResult> g1;
  std::optional<FreeFactorCheck> w_check;

  run.step("graph_of_groups", true, [&](std::string& d) {
    gog = example_graph_of_groups(options.trivial_e2);
    data["graph_of_groups"] = gog->to_json();
    d = "3 vertices, 3 edges, maps injective";
    return true;
  });

  run.step("criterion_V1_V2", true, [&](std::string& d) {
    const auto& g = Runner::need(gog, "the graph of groups");
    bool ok = true;
    for (const char* v : {"V1", "V2"}) {
      CriterionResult c = criterion_finite_subgroup(g, g.vertex_index(v));
      d += std::string(d.empty() ? "" : "; ") + v + (c.satisfied ? " satisfied" : " violated") + " (" +
           std::to_string(c.checked) + " classes meet an edge group)";
      ok = ok && c.satisfied;
    }
    return ok;
  });

  run.step("fundamental_presentation", true, [&](std::string& d) {
    const auto& g = Runner::need(gog, "the graph of groups");
    fp = fundamental_presentation(g, example_tree());
    data["G_full"] = to_json(fp->presentation);
    d = sizes(fp->presentation) + ": " + relator_list(fp->presentation);
    std::string why;
    bool ok = same_presentation(fp->presentation, {"a1", "a2", "b1", "b2", "c1", "c2", "t"},
                                {"a1^3", "a2^3", "a1 a2 a1 a2", "b1^3", "b2^3", "b1 b2 b1 b2", "c1^3", "c2^2",
                                 "c1 c2 c1 c2", "t a1 t^-1 b1^-1", "a1 c1^-1", "b1 b2 c2^-1"},
                                why);
    if (!ok) d += " (" + why + ")";
    return ok;
  });

  run.step("G_simplified", true, [&](std::string& d) {
    const auto& f = Runner::need(fp, "the fundamental presentation");
    TietzeOptions opts;
    for (const char* keep : {"a1", "a2", "b1", "b2", "t"})
      if (f.presentation.alphabet->find(keep)) opts.keep.push_back(keep);
    g_simple = tietze_simplify(f.presentation, opts);
    data["G"] = to_json(g_simple->presentation);
    data["G_trail"] = g_simple->trail.to_json();
    d = sizes(g_simple->presentation) + ": " + relator_list(g_simple->presentation);
    std::string why;
    bool ok = same_presentation(g_simple->presentation, {"a1", "a2", "b1", "b2", "t"},
                                {"a1^3", "a2^3", "a1 a2 a1 a2", "b1^3", "b2^3", "b1 b2 b1 b2",
                                 "a1 b1 b2 a1 b1 b2", "t a1 t^-1 b1^-1"},
                                why);
    if (!ok) d += " (" + why + ")";
    return ok;
  });

  run.step("psi_hom", true, [&](std::string& d) {
    const auto& g = Runner::need(g_simple, "the simplified presentation").presentation;
    std::map<std::string, std::string> img{{"a1", options.sabotage_psi ? "(1 2 4)" : "(1 2 3)"},
                                           {"a2", "(2 3 4)"},
                                           {"b1", "(2 4 3)"},
                                           {"b2", "(3 5 4)"},
                                           {"t", "(1 4 2)"}};
    // Generators a mutated input leaves behind are sent where their defining
    // vertex elements go.
    auto value = [&](const char* word) {
      Presentation five = make_presentation({"a1", "a2", "b1", "b2", "t"}, {});
      std::vector<Permutation> ims = images_from_names(five, img, 5);
      return evaluate_word(Word::parse(five.alphabet, word), ims, 5).to_string();
    };
    if (g.alphabet->find("c1")) img["c1"] = value("a1");
    if (g.alphabet->find("c2")) img["c2"] = value("b1 b2");
    psi = validate_hom(g, images_from_names(g, img, 5), a5);
    data["psi"] = psi->to_json();
    PermGroup image(5, psi->images);
    d = "all relators killed; image order " + std::to_string(image.order());
    return image.order() == 60;
  });

  run.step("psi_injective", true, [&](std::string& d) {
    const auto& h = Runner::need(psi, "psi");
    const auto& a = h.domain.alphabet;
    const Presentation& f = Runner::need(fp, "the fundamental presentation").presentation;
    (void)f;
    auto order_of = [](std::vector<std::string> gens, std::vector<std::string> rels) {
      return group_order(make_presentation(std::move(gens), rels));
    };
    std::size_t o1 = order_of({"a1", "a2"}, {"a1^3", "a2^3", "a1 a2 a1 a2"});
    std::size_t o2 = order_of({"b1", "b2"}, {"b1^3", "b2^3", "b1 b2 b1 b2"});
    std::size_t o3 = order_of({"c1", "c2"}, {"c1^3", "c2^2", "c1 c2 c1 c2"});
    struct Sub {
      const char* name;
      std::vector<Word> gens;
      std::size_t order;
    };
    std::vector<Sub> subs{{"V1", {Word::parse(a, "a1"), Word::parse(a, "a2")}, o1},
                          {"V2", {Word::parse(a, "b1"), Word::parse(a, "b2")}, o2},
                          {"V3", {Word::parse(a, "a1"), Word::parse(a, "b1 b2")}, o3}};
    bool ok = o1 == 12 && o2 == 12 && o3 == 6;
    for (const Sub& s : subs) {
      std::vector<Permutation> im;
      for (const Word& w : s.gens) im.push_back(h.evaluate(w));
      std::size_t got = closure(im, 5).size();
      d += std::string(d.empty() ? "" : ", ") + s.name + ": " + std::to_string(got) + "/" + std::to_string(s.order);
      ok = ok && injective_on(h, s.gens, s.order);
    }
    return ok;
  });

  run.step("G0_index", true, [&](std::string& d) {
    const auto& h = Runner::need(psi, "psi");
    PermGroup image(5, h.images);
    std::vector<Permutation> v2{h.evaluate(Word::parse(h.domain.alphabet, "b1")),
                                h.evaluate(Word::parse(h.domain.alphabet, "b2"))};
    CosetAction action = coset_action(image, closure(v2, 5));
    table0 = table_from_action(h.domain, action.generator_actions);
    rs0 = subgroup_presentation(*table0, "f");
    // Todd-Coxeter on the preimage's Schreier generators as a cross-check.
    std::size_t tc = enumerate_cosets(h.domain, rs0->embedding).index();
    data["G0_coset_table"] = table0->to_json();
    d = "coset action index " + std::to_string(table0->index()) + ", Todd-Coxeter index " + std::to_string(tc);
    return table0->index() == 5 && tc == 5;
  });

  run.step("G0_rs_counts", true, [&](std::string& d) {
    const auto& s = Runner::need(rs0, "the subgroup presentation");
    const auto& t = Runner::need(table0, "the coset table");
    std::size_t n = t.presentation.generator_count();
    std::size_t want_gens = t.index() * n - (t.index() - 1);
    std::size_t want_rels = t.index() * t.presentation.relators.size();
    d = std::to_string(s.presentation.generator_count()) + " Schreier generators, " +
        std::to_string(s.raw_relators.size()) + " raw relators";
    return s.presentation.generator_count() == want_gens && s.raw_relators.size() == want_rels &&
           s.presentation.generator_count() == 21 && s.raw_relators.size() == 40;
  });

  run.step("G0_abelian", true, [&](std::string& d) {
    const auto& s = Runner::need(rs0, "the subgroup presentation");
    g0 = tietze_simplify(s.presentation);
    data["G0"] = to_json(g0->presentation);
    data["G0_trail"] = g0->trail.to_json();
    AbelianInvariants raw = abelian_invariants(s.presentation);
    AbelianInvariants inv = abelian_invariants(g0->presentation);
    d = inv.to_string();
    return inv == raw && inv == AbelianInvariants{{3}, 4};
  });

  run.step("G0_split", true, [&](std::string& d) {
    const auto& g = Runner::need(g0, "the simplified G0").presentation;
    FreeSplit split = split_free_product(g);
    d = std::to_string(split.blocks.size()) + " relator block(s), " + std::to_string(split.free_generators.size()) +
        " free generators";
    return split.blocks.size() == 1;
  });

  run.step("G0_shape", false, [&](std::string& d) {
    const auto& g = Runner::need(g0, "the simplified G0").presentation;
    Shape s = shape_of(g);
    d = sizes(g) + ": " + relator_list(g);
    return g.generator_count() == 7 && g.relators.size() == 5 && s.cubes == 3 && s.squares[2] == 1 &&
           s.squares[4] == 1 && s.other == 0;
  });

  run.step("G0_short_form", true, [&](std::string& d) {
    Presentation printed = make_presentation({"f1", "f2", "f3", "f4", "f5", "f6", "f7"},
                                           {"f1^3", "f2^3", "f3^3", "f1 f2 f1 f2", "f6 f1 f6^-1 f3^-1 f6 f1 f6^-1 f3^-1"});
    AbelianInvariants ours = abelian_invariants(Runner::need(g0, "the simplified G0").presentation);
    g0_short = replace_generator(printed, "f3", "f3t", Word::parse(printed.alphabet, "f6^-1 f3^-1 f6"));
    data["G0_short"] = to_json(g0_short->presentation);
    d = relator_list(g0_short->presentation);
    std::string why;
    bool ok = same_presentation(g0_short->presentation, {"f1", "f2", "f3t", "f4", "f5", "f6", "f7"},
                                {"f1^3", "f2^3", "f3t^3", "f1 f2 f1 f2", "f1 f3t f1 f3t"}, why);
    if (!ok) d += " (" + why + ")";
    if (abelian_invariants(printed) != ours) {
      d += "; abelian invariants differ from the computed G0";
      ok = false;
    }
    FreeSplit split = split_free_product(g0_short->presentation);
    d += "; " + std::to_string(split.blocks.size()) + " block, " + std::to_string(split.free_generators.size()) + " free";
    return ok && split.blocks.size() == 1 && split.blocks[0].generators.size() == 3 &&
           split.free_generators.size() == 4;
  });

  run.step("phi_hom", true, [&](std::string& d) {
    const auto& g = Runner::need(g0_short, "the short G0").presentation;
    phi = validate_hom(g,
                       images_from_names(g,
                                         {{"f1", "(2 3 4)"},
                                          {"f2", "(1 2 3)"},
                                          {"f3t", "(3 4 5)"},
                                          {"f4", "()"},
                                          {"f5", "()"},
                                          {"f6", "()"},
                                          {"f7", "()"}},
                                         5),
                       a5);
    data["phi"] = phi->to_json();
    d = "all relators killed";
    return true;
  });

  run.step("G1_index", true, [&](std::string& d) {
    const auto& h = Runner::need(phi, "phi");
    PermGroup image(5, h.images);
    std::vector<Permutation> w{h.images[0], h.images[1]};
    CosetAction action = coset_action(image, closure(w, 5));
    table1 = table_from_action(h.domain, action.generator_actions);
    rs1 = subgroup_presentation(*table1, "h");
    std::size_t tc = enumerate_cosets(h.domain, rs1->embedding).index();
    data["G1_coset_table"] = table1->to_json();
    d = "coset action index " + std::to_string(table1->index()) + ", Todd-Coxeter index " + std::to_string(tc);
    return table1->index() == 5 && tc == 5;
  });

  run.step("G1_rs_counts", true, [&](std::string& d) {
    const auto& s = Runner::need(rs1, "the subgroup presentation");
    d = std::to_string(s.presentation.generator_count()) + " Schreier generators, " +
        std::to_string(s.raw_relators.size()) + " raw relators";
    return s.presentation.generator_count() == 31 && s.raw_relators.size() == 25;
  });

  run.step("G1_abelian", true, [&](std::string& d) {
    const auto& s = Runner::need(rs1, "the subgroup presentation");
    g1 = tietze_simplify(s.presentation);
    data["G1"] = to_json(g1->presentation);
    data["G1_trail"] = g1->trail.to_json();
    AbelianInvariants inv = abelian_invariants(g1->presentation);
    d = inv.to_string();
    return inv == abelian_invariants(s.presentation) && inv == AbelianInvariants{{3, 3}, 20};
  });

  run.step("G1_split", true, [&](std::string& d) {
    const auto& g = Runner::need(g1, "the simplified G1").presentation;
    FreeSplit split = split_free_product(g);
    data["G1_split"] = split.to_json(g);
    bool ok = split.blocks.size() == 2 && split.free_generators.size() == 20;
    for (const auto& b : split.blocks) {
      std::size_t order = group_order(b.presentation, 10'000);
      d += std::to_string(b.generators.size()) + "-generator block of order " + std::to_string(order) + ", ";
      ok = ok && b.generators.size() == 2 && order == 12;
    }
    d += std::to_string(split.free_generators.size()) + " free generators";
    return ok;
  });

  run.step("W_order", true, [&](std::string& d) {
    const auto& s = Runner::need(rs1, "the subgroup presentation");
    const auto& t = Runner::need(table1, "the coset table");
    const auto& g = Runner::need(g1, "the simplified G1");
    std::vector<Word> tracked;
    for (const char* w : {"f1", "f2"})
      tracked.push_back(apply_trail(g.trail, rewrite(s, t, Word::parse(t.presentation.alphabet, w))));
    std::string why;
    w_check = check_free_factor(g.presentation, tracked, 12, &why);
    nlohmann::json tj = nlohmann::json::array();
    for (const Word& w : tracked) tj.push_back(w.to_string());
    data["W_in_G1"] = tj;
    if (!w_check) {
      d = why;
      return false;
    }
    d = "order " + std::to_string(w_check->order) + ", conjugate to block " + std::to_string(w_check->block) +
        " of order " + std::to_string(w_check->block_order);
    return w_check->order == 12;
  });

  run.step("total_index", true, [&](std::string& d) {
    std::size_t i0 = Runner::need(table0, "the G0 table").index();
    std::size_t i1 = Runner::need(table1, "the G1 table").index();
    d = std::to_string(i0) + " x " + std::to_string(i1) + " = " + std::to_string(i0 * i1);
    return i0 * i1 == 25;
  });

  run.step("G1_shape", false, [&](std::string& d) {
    const auto& g = Runner::need(g1, "the simplified G1").presentation;
    Shape s = shape_of(g);
    d = sizes(g) + ": " + relator_list(g);
    return g.generator_count() == 24 && g.relators.size() == 6 && s.cubes == 4 && s.squares[2] == 2 && s.other == 0;
  });

  if (options.run_witness) {
    run.step("witness", true, [&](std::string& d) {
      const auto& g = Runner::need(g_simple, "the simplified presentation").presentation;
      WitnessOptions wo;
      wo.targets = {a5};
      FiniteSubgroupSpec f{{Word::parse(g.alphabet, "b1"), Word::parse(g.alphabet, "b2")}, 12};
      WitnessResult r = free_factor_witness(g, f, wo);
      d = r.report;
      if (!r.certificate) return false;
      std::string bad = verify_certificate(*r.certificate);
      if (!bad.empty()) {
        d += "; verifier: " + bad;
        return false;
      }
      d += "; verifier accepts";
      data["witness"] = {{"total_index", r.certificate->total_index},
                         {"homs_examined", r.homs_examined},
                         {"final_split", r.certificate->check.split.to_json(r.certificate->final_presentation())}};
      return r.certificate->total_index == 25;
    });
  }
  return report;
}

}  // namespace vrkit
