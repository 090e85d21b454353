#include "vrkit/fpgroup.hpp"

#include <numeric>
#include <sstream>

#include "vrkit/error.hpp"

namespace vrkit {

std::size_t Presentation::total_length() const {
  std::size_t n = 0;
  for (const Word& r : relators) n += r.length();
  return n;
}

Presentation make_presentation(AlphabetPtr alphabet, const std::vector<Word>& relators,
                               std::vector<std::string>* warnings) {
  Presentation p{std::move(alphabet), {}};
  for (std::size_t i = 0; i < relators.size(); ++i) {
    if (!same_alphabet(relators[i].alphabet(), p.alphabet)) throw AlphabetError("relator over a different alphabet");
    Word core = cyclic_reduce(relators[i]).core;
    if (core.is_identity()) {
      if (warnings) warnings->push_back("relator " + std::to_string(i) + " reduces to the identity; dropped");
      continue;
    }
    p.relators.push_back(Word::from_letters(p.alphabet, core.letters()));
  }
  return p;
}

Presentation make_presentation(std::vector<std::string> generators, const std::vector<std::string>& relators,
                               std::vector<std::string>* warnings) {
  AlphabetPtr a = make_alphabet(std::move(generators));
  std::vector<Word> words;
  for (const auto& r : relators) words.push_back(Word::parse(a, r));
  return make_presentation(a, words, warnings);
}

Presentation presentation_from_json(const nlohmann::json& j, std::vector<std::string>* warnings) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
    throw ParseError("presentation must be an object with \"generators\" and \"relators\"", 0);
  if (!j["generators"].is_array() || !j["relators"].is_array())
    throw ParseError("\"generators\" and \"relators\" must be arrays", 0);
  std::vector<std::string> gens;
  for (const auto& g : j["generators"]) {
    if (!g.is_string()) throw ParseError("generator names must be strings", 0);
    gens.push_back(g.get<std::string>());
  }
  std::vector<std::string> rels;
  for (const auto& r : j["relators"]) {
    if (!r.is_string()) throw ParseError("relators must be word strings", 0);
    rels.push_back(r.get<std::string>());
  }
  return make_presentation(std::move(gens), rels, warnings);
}

Presentation parse_presentation(std::string_view json_text, std::vector<std::string>* warnings) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON syntax error: ") + e.what(), e.byte);
  }
  return presentation_from_json(j, warnings);
}

nlohmann::json to_json(const Presentation& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (const Word& r : p.relators) rels.push_back(r.to_string());
  return {{"generators", p.alphabet->names()}, {"relators", rels}};
}

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(p.relators.size(), p.generator_count());
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (const Syllable& s : p.relators[r].syllables()) m(r, s.generator) += s.exponent;
  return m;
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  os << "torsion [";
  for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
  os << "], free rank " << free_rank;
  return os.str();
}

AbelianInvariants abelian_invariants_of_matrix(const IntMatrix& relations) {
  SNFResult s = snf(relations);
  AbelianInvariants out;
  std::size_t nonzero = 0;
  for (const BigInt& d : s.diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) out.torsion.push_back(d);
  }
  out.free_rank = relations.cols() - nonzero;
  return out;
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  return abelian_invariants_of_matrix(relation_matrix(p));
}

std::ptrdiff_t FreeSplit::block_of(std::size_t generator) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t g : blocks[b].generators)
      if (g == generator) return static_cast<std::ptrdiff_t>(b);
  return -1;
}

nlohmann::json FreeSplit::to_json(const Presentation& p) const {
  nlohmann::json out;
  nlohmann::json bl = nlohmann::json::array();
  for (const Block& b : blocks) bl.push_back(vrkit::to_json(b.presentation));
  out["blocks"] = bl;
  nlohmann::json fr = nlohmann::json::array();
  for (std::size_t g : free_generators) fr.push_back(p.alphabet->name(g));
  out["free"] = fr;
  return out;
}

FreeSplit split_free_product(const Presentation& p) {
  const std::size_t n = p.generator_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> used(n, false);
  for (const Word& r : p.relators) {
    const auto& syl = r.syllables();
    for (const Syllable& s : syl) used[s.generator] = true;
    for (std::size_t i = 1; i < syl.size(); ++i) {
      std::size_t a = find(syl[0].generator);
      std::size_t b = find(syl[i].generator);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  FreeSplit out;
  std::vector<std::ptrdiff_t> block_of_root(n, -1);
  for (std::size_t g = 0; g < n; ++g) {
    if (!used[g]) {
      out.free_generators.push_back(g);
      continue;
    }
    std::size_t root = find(g);
    if (block_of_root[root] < 0) {
      block_of_root[root] = static_cast<std::ptrdiff_t>(out.blocks.size());
      out.blocks.emplace_back();
    }
    out.blocks[static_cast<std::size_t>(block_of_root[root])].generators.push_back(g);
  }
  for (FreeSplit::Block& b : out.blocks) {
    std::vector<std::string> names;
    std::vector<std::size_t> local(n, 0);
    for (std::size_t i = 0; i < b.generators.size(); ++i) {
      names.push_back(p.alphabet->name(b.generators[i]));
      local[b.generators[i]] = i;
    }
    AlphabetPtr a = make_alphabet(names);
    std::vector<Word> rels;
    for (const Word& r : p.relators) {
      if (find(r.syllables().front().generator) != find(b.generators.front())) continue;
      std::vector<Syllable> syl = r.syllables();
      for (Syllable& s : syl) s.generator = local[s.generator];
      rels.push_back(reduce(a, syl));
    }
    b.presentation = make_presentation(a, rels);
  }
  return out;
}

}  // namespace vrkit
