#include "vrkit/rs.hpp"

namespace vrkit {

namespace {

struct Tree {
  std::vector<LetterWord> rep;
  // tree_entry[c][x]: the entry (c, x) or its mirror is a BFS tree edge
  std::vector<std::vector<bool>> tree_entry;
};

Tree bfs_tree(const CosetTable& t) {
  if (!t.complete) throw InvalidArgument("coset table is incomplete");
  const std::size_t n = t.index();
  Tree tree;
  tree.rep.assign(n, {});
  tree.tree_entry.assign(n, std::vector<bool>(t.columns(), false));
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::size_t c = queue[i];
    for (std::size_t x = 0; x < t.columns(); ++x) {
      std::size_t d = static_cast<std::size_t>(t.rows[c][x]);
      if (seen[d]) continue;
      seen[d] = true;
      queue.push_back(d);
      tree.rep[d] = tree.rep[c];
      tree.rep[d].push_back(static_cast<Letter>(x));
      tree.tree_entry[c][x] = true;
      tree.tree_entry[d][x ^ 1U] = true;
    }
  }
  return tree;
}

LetterWord rewrite_letters(const SubgroupPresentation& s, const CosetTable& t, std::size_t& coset, const LetterWord& w) {
  LetterWord out;
  for (Letter x : w) {
    std::size_t next = static_cast<std::size_t>(t.rows[coset][x]);
    std::size_t g = letter_generator(x);
    if (!letter_is_inverse(x)) {
      std::ptrdiff_t sym = s.symbol[coset][g];
      if (sym >= 0) out.push_back(make_letter(static_cast<std::size_t>(sym), false));
    } else {
      std::ptrdiff_t sym = s.symbol[next][g];
      if (sym >= 0) out.push_back(make_letter(static_cast<std::size_t>(sym), true));
    }
    coset = next;
  }
  free_reduce(out);
  return out;
}

}  // namespace

std::vector<Word> schreier_transversal(const CosetTable& t) {
  Tree tree = bfs_tree(t);
  std::vector<Word> out;
  for (const LetterWord& r : tree.rep) out.push_back(Word::from_letters(t.presentation.alphabet, r));
  return out;
}

SubgroupPresentation subgroup_presentation(const CosetTable& t, const std::string& prefix) {
  Tree tree = bfs_tree(t);
  const std::size_t n = t.index();
  const std::size_t gens = t.presentation.generator_count();
  const AlphabetPtr& amb = t.presentation.alphabet;

  SubgroupPresentation s;
  s.symbol.assign(n, std::vector<std::ptrdiff_t>(gens, -1));
  std::vector<std::string> names;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < gens; ++g) {
      if (tree.tree_entry[c][2 * g]) continue;
      s.symbol[c][g] = static_cast<std::ptrdiff_t>(names.size());
      names.push_back(prefix + std::to_string(names.size() + 1));
      std::size_t d = static_cast<std::size_t>(t.rows[c][2 * g]);
      LetterWord e = tree.rep[c];
      e.push_back(make_letter(g, false));
      LetterWord back = inverse_word(tree.rep[d]);
      e.insert(e.end(), back.begin(), back.end());
      free_reduce(e);
      s.embedding.push_back(Word::from_letters(amb, e));
    }
  AlphabetPtr sub = make_alphabet(names);
  for (const LetterWord& r : tree.rep) s.transversal.push_back(Word::from_letters(amb, r));

  std::vector<Word> raw;
  for (std::size_t c = 0; c < n; ++c)
    for (const Word& r : t.presentation.relators) {
      std::size_t coset = c;
      LetterWord w = rewrite_letters(s, t, coset, r.letters());
      raw.push_back(Word::from_letters(sub, w));
    }
  s.raw_relators = raw;
  s.presentation = make_presentation(sub, raw);
  return s;
}

Word rewrite(const SubgroupPresentation& s, const CosetTable& t, const Word& w) {
  if (!same_alphabet(w.alphabet(), t.presentation.alphabet)) throw AlphabetError("word over a different alphabet");
  std::size_t coset = 0;
  LetterWord out = rewrite_letters(s, t, coset, w.letters());
  if (coset != 0) throw InvalidArgument("word " + w.to_string() + " does not lie in the subgroup");
  return Word::from_letters(s.presentation.alphabet, out);
}

nlohmann::json SubgroupPresentation::to_json() const {
  nlohmann::json j = vrkit::to_json(presentation);
  nlohmann::json emb = nlohmann::json::object();
  for (std::size_t i = 0; i < embedding.size(); ++i) emb[presentation.alphabet->name(i)] = embedding[i].to_string();
  j["embedding"] = emb;
  nlohmann::json tr = nlohmann::json::array();
  for (const Word& w : transversal) tr.push_back(w.to_string());
  j["transversal"] = tr;
  j["raw_relator_count"] = raw_relators.size();
  return j;
}

}  // namespace vrkit
