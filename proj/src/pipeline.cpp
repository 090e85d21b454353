#include "vrkit/pipeline.hpp"

#include <algorithm>
#include <set>

#include "vrkit/error.hpp"

namespace vrkit {

namespace {

// Finite-order elements of a free product have reduced form u b u^-1 with b a
// single block letter; returns that block.
std::optional<std::size_t> conjugate_block(const std::vector<FiniteGroupTable>& tables, FreeProductWord w) {
  while (w.size() > 1) {
    const FreeProductLetter& a = w.front();
    const FreeProductLetter& b = w.back();
    bool inverse_pair = a.block < 0 ? (b.block < 0 && a.value == b.value && a.inverse != b.inverse)
                                    : (b.block == a.block &&
                                       tables[static_cast<std::size_t>(a.block)].inv(a.value) == b.value);
    if (!inverse_pair) return std::nullopt;
    w.erase(w.begin());
    w.pop_back();
  }
  if (w.size() != 1 || w.front().block < 0) return std::nullopt;
  return static_cast<std::size_t>(w.front().block);
}

std::string join_words(const std::vector<Word>& ws) {
  std::string out;
  for (const Word& w : ws) out += (out.empty() ? "" : ", ") + w.to_string();
  return out;
}

}  // namespace

std::optional<FreeFactorCheck> check_free_factor(const Presentation& p, const std::vector<Word>& tracked,
                                                 std::size_t expected, std::string* why, std::size_t order_cap) {
  auto fail = [&](const std::string& reason) -> std::optional<FreeFactorCheck> {
    if (why) *why = reason;
    return std::nullopt;
  };
  FreeFactorCheck out;
  out.split = split_free_product(p);
  const std::size_t nb = out.split.blocks.size();

  // Blocks touched by F must be finite.
  std::vector<bool> touched(nb, false);
  for (const Word& w : tracked)
    for (const Syllable& s : w.syllables()) {
      std::ptrdiff_t b = out.split.block_of(s.generator);
      if (b >= 0) touched[static_cast<std::size_t>(b)] = true;
    }
  std::vector<FiniteGroupTable> tables(nb);
  std::vector<std::vector<std::size_t>> gen_elements(nb);
  std::vector<std::optional<std::size_t>> orders(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    if (!touched[b]) continue;
    try {
      tables[b] = FiniteGroupTable::from_presentation(out.split.blocks[b].presentation, &gen_elements[b], order_cap);
      orders[b] = tables[b].size();
    } catch (const CapExceeded&) {
      return fail("block " + std::to_string(b) + " is infinite or larger than " + std::to_string(order_cap));
    }
  }

  std::vector<std::size_t> free_index(p.generator_count(), 0);
  for (std::size_t i = 0; i < out.split.free_generators.size(); ++i) free_index[out.split.free_generators[i]] = i;
  std::vector<FreeProductWord> words;
  for (const Word& w : tracked) {
    FreeProductWord fw;
    for (const Syllable& s : w.syllables()) {
      std::ptrdiff_t b = out.split.block_of(s.generator);
      if (b < 0) {
        std::uint64_t n = s.exponent < 0 ? static_cast<std::uint64_t>(-s.exponent) : static_cast<std::uint64_t>(s.exponent);
        for (std::uint64_t k = 0; k < n; ++k) fw.push_back({-1, free_index[s.generator], s.exponent < 0});
      } else {
        const auto bi = static_cast<std::size_t>(b);
        const auto& block_gens = out.split.blocks[bi].generators;
        std::size_t local = static_cast<std::size_t>(
            std::find(block_gens.begin(), block_gens.end(), s.generator) - block_gens.begin());
        fw.push_back({b, tables[bi].power(gen_elements[bi][local], s.exponent), false});
      }
    }
    words.push_back(std::move(fw));
  }
  FreeProductOrder ord = free_product_order(tables, out.split.free_generators.size(), words, order_cap);
  if (!ord.order) return fail("the tracked subgroup has more than " + std::to_string(order_cap) + " elements");
  out.order = *ord.order;
  if (out.order != expected)
    return fail("the tracked subgroup has order " + std::to_string(out.order) + ", expected " + std::to_string(expected));
  if (expected == 1) {
    out.block = 0;
    out.block_order = nb ? 0 : 1;
    return out;
  }
  std::optional<std::size_t> block = conjugate_block(tables, ord.elements[1]);
  if (!block) return fail("tracked element is not conjugate into a block");
  out.block = *block;
  out.block_order = *orders[*block];
  if (out.block_order != expected)
    return fail("block " + std::to_string(*block) + " has order " + std::to_string(out.block_order) +
                ", expected " + std::to_string(expected));
  return out;
}

nlohmann::json FreeFactorCertificate::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const WitnessStage& s : stages) {
    nlohmann::json tin = nlohmann::json::array(), tout = nlohmann::json::array();
    for (const Word& w : s.tracked_in) tin.push_back(w.to_string());
    for (const Word& w : s.tracked_out) tout.push_back(w.to_string());
    st.push_back({{"input", vrkit::to_json(s.input)},
                  {"tracked_in", tin},
                  {"hom", s.hom.to_json()},
                  {"index", s.table.index()},
                  {"coset_table", s.table.to_json()},
                  {"subgroup", s.subgroup.to_json()},
                  {"simplified", vrkit::to_json(s.simplified.presentation)},
                  {"trail", s.simplified.trail.to_json()},
                  {"tracked_out", tout}});
  }
  nlohmann::json fin = nlohmann::json::array();
  for (const Word& w : tracked) fin.push_back(w.to_string());
  nlohmann::json fgens = nlohmann::json::array();
  for (const Word& w : f_generators) fgens.push_back(w.to_string());
  return {{"original", vrkit::to_json(original)},
          {"F", fgens},
          {"F_order", f_order},
          {"stages", st},
          {"final_presentation", vrkit::to_json(final_presentation())},
          {"final_trail", final_simplification.trail.to_json()},
          {"final_split", check.split.to_json(final_presentation())},
          {"tracked_F", fin},
          {"F_block", check.block},
          {"F_block_order", check.block_order},
          {"F_order_check", check.order},
          {"total_index", total_index}};
}

namespace {

class WitnessSearch {
 public:
  WitnessSearch(const Presentation& p, const FiniteSubgroupSpec& f, const WitnessOptions& o) : p_(p), f_(f), o_(o) {}

  WitnessResult run() {
    WitnessResult res;
    std::string why;
    TietzeResult initial = tietze_simplify(p_);
    std::vector<Word> tracked0;
    for (const Word& w : f_.generators) tracked0.push_back(apply_trail(initial.trail, w));
    if (auto chk = check_free_factor(initial.presentation, tracked0, f_.order, &why, o_.order_cap)) {
      certificate_ = make_certificate({}, initial, tracked0, *chk);
    } else {
      search(p_, f_.generators, 0);
    }
    res.certificate = certificate_;
    res.homs_examined = examined_;
    res.deepest_stage = deepest_;
    res.budget_exhausted = exhausted_;
    if (certificate_)
      res.report = "certificate with " + std::to_string(certificate_->stages.size()) + " stages, total index " +
                   std::to_string(certificate_->total_index);
    else if (exhausted_)
      res.report = "budget of " + std::to_string(o_.hom_budget) + " homomorphisms exhausted; deepest stage " +
                   std::to_string(deepest_);
    else
      res.report = "search space exhausted after " + std::to_string(examined_) + " homomorphisms; deepest stage " +
                   std::to_string(deepest_);
    return res;
  }

 private:
  FreeFactorCertificate make_certificate(std::vector<WitnessStage> stages, TietzeResult fin, std::vector<Word> tracked,
                                         FreeFactorCheck chk) const {
    FreeFactorCertificate c;
    c.original = p_;
    c.f_generators = f_.generators;
    c.f_order = f_.order;
    c.total_index = 1;
    for (const WitnessStage& s : stages) c.total_index *= s.table.index();
    c.stages = std::move(stages);
    c.final_simplification = std::move(fin);
    c.tracked = std::move(tracked);
    c.check = std::move(chk);
    return c;
  }

  // Free factor of q carried by F's words: every block F touches plus free
  // generators F uses. Injectivity on F only depends on this part.
  struct Part {
    Presentation presentation;
    std::vector<std::size_t> index;  // part generator -> q generator
    std::vector<Word> tracked;
  };

  static Part carrier(const Presentation& q, const std::vector<Word>& tracked) {
    FreeSplit split = split_free_product(q);
    std::vector<bool> touched(q.generator_count(), false);
    for (const Word& w : tracked)
      for (const Syllable& s : w.syllables()) {
        std::ptrdiff_t b = split.block_of(s.generator);
        if (b < 0) {
          touched[s.generator] = true;
        } else {
          for (std::size_t g : split.blocks[static_cast<std::size_t>(b)].generators) touched[g] = true;
        }
      }
    Part part;
    std::vector<std::string> names;
    for (std::size_t g = 0; g < q.generator_count(); ++g)
      if (touched[g]) {
        names.push_back(q.alphabet->name(g));
        part.index.push_back(g);
      }
    std::vector<std::string> relators;
    for (const Word& r : q.relators)
      if (!r.syllables().empty() && touched[r.syllables().front().generator]) relators.push_back(r.to_string());
    part.presentation = make_presentation(names, relators);
    for (const Word& w : tracked) part.tracked.push_back(Word::parse(part.presentation.alphabet, w.to_string()));
    return part;
  }

  // Smaller is more promising: size of F's carrier, then its relator length.
  static std::pair<std::size_t, std::size_t> score(const WitnessStage& st) {
    Part part = carrier(st.simplified.presentation, st.tracked_out);
    std::size_t length = 0;
    for (const Word& r : part.presentation.relators) length += r.length();
    return {part.index.size(), length};
  }

  bool spend() {
    if (examined_ >= o_.hom_budget) {
      exhausted_ = true;
      return false;
    }
    ++examined_;
    return true;
  }

  // Returns true once a certificate has been found.
  //
  // Candidates are first the homomorphisms of F's carrier extended trivially to
  // the other free factors, deduplicated by the preimage subgroup (conjugate
  // homomorphisms share it) and explored best-first. Remaining budget then
  // goes to every other extension, depth-first.
  bool search(const Presentation& q, const std::vector<Word>& tracked, std::size_t depth) {
    if (depth >= o_.max_stages) return false;
    const std::string prefix = depth < o_.prefixes.size() ? o_.prefixes[depth] : "s" + std::to_string(depth + 1) + "_";
    const Part part = carrier(q, tracked);
    std::set<std::vector<std::vector<std::int64_t>>> seen;

    std::vector<WitnessStage> candidates;
    for (const PermGroupPtr& target : o_.targets) {
      for_each_hom(part.presentation, target, {}, [&](const GroupHom& hp) {
        if (!spend()) return false;
        if (!injective_on(hp, part.tracked, f_.order)) return true;
        GroupHom h{q, target, std::vector<Permutation>(q.generator_count(), Permutation::identity(target->degree()))};
        for (std::size_t i = 0; i < part.index.size(); ++i) h.images[part.index[i]] = hp.images[i];
        auto st = build_stage(q, tracked, prefix, h, seen);
        if (!st) return true;
        deepest_ = std::max(deepest_, depth + 1);
        std::string why;
        if (auto chk = check_free_factor(st->simplified.presentation, st->tracked_out, f_.order, &why, o_.order_cap)) {
          path_.push_back(*st);
          certificate_ = make_certificate(path_, st->simplified, st->tracked_out, *chk);
          return false;
        }
        candidates.push_back(std::move(*st));
        return true;
      });
      if (certificate_) return true;
      if (exhausted_) break;
    }
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> order;
    for (std::size_t i = 0; i < candidates.size(); ++i) order.push_back({score(candidates[i]), i});
    std::stable_sort(order.begin(), order.end());
    for (const auto& [sc, i] : order) {
      if (depth + 1 >= o_.max_stages) break;
      path_.push_back(candidates[i]);
      if (search(candidates[i].simplified.presentation, candidates[i].tracked_out, depth + 1)) return true;
      path_.pop_back();
      if (exhausted_) return false;
    }
    if (exhausted_) return false;

    for (const PermGroupPtr& target : o_.targets) {
      for_each_hom(part.presentation, target, {}, [&](const GroupHom& hp) {
        if (!injective_on(hp, part.tracked, f_.order)) return true;
        FixedImages fixed;
        for (std::size_t i = 0; i < part.index.size(); ++i) fixed.emplace(part.index[i], hp.images[i]);
        for_each_hom(q, target, fixed, [&](const GroupHom& h) {
          if (!spend()) return false;
          auto st = build_stage(q, tracked, prefix, h, seen);
          if (!st) return true;
          deepest_ = std::max(deepest_, depth + 1);
          path_.push_back(*st);
          std::string why;
          if (auto chk = check_free_factor(st->simplified.presentation, st->tracked_out, f_.order, &why, o_.order_cap)) {
            certificate_ = make_certificate(path_, st->simplified, st->tracked_out, *chk);
            return false;
          }
          if (search(st->simplified.presentation, st->tracked_out, depth + 1)) return false;
          path_.pop_back();
          return !exhausted_;
        });
        return !certificate_ && !exhausted_;
      });
      if (certificate_) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  // The stage for h, or nothing when h is not injective on F, gains no index,
  // or yields a preimage already seen.
  std::optional<WitnessStage> build_stage(const Presentation& q, const std::vector<Word>& tracked,
                                          const std::string& prefix, const GroupHom& h,
                                          std::set<std::vector<std::vector<std::int64_t>>>& seen) {
    if (!injective_on(h, tracked, f_.order)) return std::nullopt;
    PermGroup image(h.degree(), h.images);
    std::vector<Permutation> fimg;
    for (const Word& w : tracked) fimg.push_back(h.evaluate(w));
    std::vector<Permutation> f_elements = closure(fimg, h.degree());
    if (f_elements.size() == image.order()) return std::nullopt;  // index one: nothing gained

    WitnessStage st;
    st.input = q;
    st.tracked_in = tracked;
    st.hom = h;
    CosetAction action = coset_action(image, f_elements);
    st.table = table_from_action(q, action.generator_actions);
    if (!seen.insert(st.table.rows).second) return std::nullopt;
    st.prefix = prefix;
    st.subgroup = subgroup_presentation(st.table, prefix);
    std::vector<Word> rewritten;
    for (const Word& w : tracked) rewritten.push_back(rewrite(st.subgroup, st.table, w));
    st.simplified = tietze_simplify(st.subgroup.presentation);
    for (const Word& w : rewritten) st.tracked_out.push_back(apply_trail(st.simplified.trail, w));
    return st;
  }

  const Presentation& p_;
  const FiniteSubgroupSpec& f_;
  const WitnessOptions& o_;
  std::vector<WitnessStage> path_;
  std::optional<FreeFactorCertificate> certificate_;
  std::size_t examined_ = 0;
  std::size_t deepest_ = 0;
  bool exhausted_ = false;
};

}  // namespace

WitnessResult free_factor_witness(const Presentation& p, const FiniteSubgroupSpec& f, const WitnessOptions& options) {
  if (f.order == 0) throw InvalidArgument("expected order must be positive");
  if (options.hom_budget == 0) throw InvalidArgument("budget must be positive");
  for (const Word& w : f.generators)
    if (!same_alphabet(w.alphabet(), p.alphabet)) throw AlphabetError("subgroup word over a different alphabet");
  // The expected order must at least be consistent with a faithful finite quotient,
  // which the search checks; here only reject an impossible trivial case.
  if (f.generators.empty() && f.order != 1) throw InvalidArgument("the trivial subgroup has order 1");
  WitnessOptions o = options;
  if (o.targets.empty())
    for (const char* name : {"A5", "S5", "A4", "S4"}) o.targets.push_back(named_group(name));
  WitnessSearch s(p, f, o);
  return s.run();
}

std::string verify_certificate(const FreeFactorCertificate& c) {
  try {
    const Presentation* current = &c.original;
    std::vector<Word> tracked = c.f_generators;
    std::size_t index = 1;
    for (std::size_t i = 0; i < c.stages.size(); ++i) {
      const WitnessStage& s = c.stages[i];
      const std::string at = "stage " + std::to_string(i + 1) + ": ";
      if (to_json(s.input) != to_json(*current)) return at + "input is not the previous presentation";
      if (join_words(s.tracked_in) != join_words(tracked)) return at + "tracked words do not chain";
      GroupHom h = validate_hom(s.input, s.hom.images);
      if (!injective_on(h, s.tracked_in, c.f_order)) return at + "homomorphism is not injective on F";
      if (std::string why = s.table.check(); !why.empty()) return at + "coset table: " + why;
      PermGroup image(h.degree(), h.images);
      std::vector<Permutation> fimg;
      for (const Word& w : s.tracked_in) fimg.push_back(h.evaluate(w));
      CosetAction action = coset_action(image, closure(fimg, h.degree()));
      if (table_from_action(s.input, action.generator_actions).rows != s.table.rows)
        return at + "coset table is not the preimage of the image of F";
      for (const Word& w : s.subgroup.embedding)
        if (s.table.trace(0, w) != 0) return at + "Schreier generator outside the subgroup";
      SubgroupPresentation again = subgroup_presentation(s.table, s.prefix);
      if (to_json(again.presentation) != to_json(s.subgroup.presentation))
        return at + "subgroup presentation does not match the coset table";
      std::string why;
      if (!trail_is_sound(s.simplified.trail, s.subgroup.presentation, s.simplified.presentation, &why))
        return at + "Tietze trail: " + why;
      std::vector<Word> out;
      for (const Word& w : s.tracked_in) out.push_back(apply_trail(s.simplified.trail, rewrite(s.subgroup, s.table, w)));
      if (join_words(out) != join_words(s.tracked_out)) return at + "tracked words do not follow the trail";
      index *= s.table.index();
      current = &s.simplified.presentation;
      tracked = s.tracked_out;
    }
    if (c.stages.empty()) {
      std::string why;
      if (!trail_is_sound(c.final_simplification.trail, c.original, c.final_presentation(), &why))
        return "initial Tietze trail: " + why;
      std::vector<Word> out;
      for (const Word& w : c.f_generators) out.push_back(apply_trail(c.final_simplification.trail, w));
      tracked = out;
    } else if (to_json(c.final_presentation()) != to_json(*current)) {
      return "final presentation is not the last stage's";
    }
    if (join_words(tracked) != join_words(c.tracked)) return "final tracked words do not chain";
    if (index != c.total_index) return "total index is not the product of the stage indices";
    std::string why;
    auto chk = check_free_factor(c.final_presentation(), c.tracked, c.f_order, &why);
    if (!chk) return "free factor check: " + why;
    if (chk->split.to_json(c.final_presentation()) != c.check.split.to_json(c.final_presentation()))
      return "recorded split differs";
    if (chk->block != c.check.block || chk->block_order != c.check.block_order || chk->order != c.check.order)
      return "recorded order check differs";
  } catch (const Error& e) {
    return std::string("verification raised: ") + e.what();
  }
  return {};
}

}  // namespace vrkit
