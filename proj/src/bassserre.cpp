#include "vrkit/bassserre.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

#include "vrkit/cosets.hpp"
#include "vrkit/error.hpp"

namespace vrkit {

// --- finite group tables -------------------------------------------------------

FiniteGroupTable::FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const std::size_t n = names_.size();
  if (n == 0) throw InvalidArgument("a group has at least one element");
  if (table_.size() != n) throw InvalidArgument("multiplication table has the wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw InvalidArgument("multiplication table row has the wrong length");
    std::vector<bool> hit(n, false);
    for (std::size_t x : row) {
      if (x >= n || hit[x]) throw InvalidArgument("multiplication table rows must be permutations");
      hit[x] = true;
    }
  }
  std::optional<std::size_t> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) id = e;
  }
  if (!id) throw InvalidArgument("multiplication table has no identity");
  identity_ = *id;
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (inverse_[a] == n || table_[inverse_[a]][a] != identity_) throw InvalidArgument("element without an inverse");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw InvalidArgument("multiplication is not associative");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw InvalidArgument("duplicate element name '" + names_[i] + "'");
}

FiniteGroupTable FiniteGroupTable::from_perm_group(const PermGroup& g) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(g.order(), std::vector<std::size_t>(g.order()));
  for (std::size_t a = 0; a < g.order(); ++a) {
    names.push_back(g.elements()[a].to_string());
    for (std::size_t b = 0; b < g.order(); ++b) table[a][b] = g.multiply(a, b);
  }
  return FiniteGroupTable(std::move(names), std::move(table));
}

FiniteGroupTable FiniteGroupTable::from_presentation(const Presentation& p, std::vector<std::size_t>* generator_elements,
                                                     std::size_t limit) {
  CosetTable t = enumerate_cosets(p, {}, limit);
  std::vector<Permutation> rep = perm_rep(t);
  PermGroup g(t.index(), rep, limit);
  FiniteGroupTable out = from_perm_group(g);
  for (std::size_t i = 0; i < out.size(); ++i) out.names_[i] = "x" + std::to_string(i);
  if (generator_elements) {
    generator_elements->clear();
    for (const Permutation& r : rep) generator_elements->push_back(static_cast<std::size_t>(g.index_of(r)));
  }
  return out;
}

std::size_t FiniteGroupTable::power(std::size_t a, std::int64_t k) const {
  std::size_t base = k < 0 ? inv(a) : a;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  n %= element_order(a);
  std::size_t out = identity_;
  for (std::uint64_t i = 0; i < n; ++i) out = mul(out, base);
  return out;
}

std::size_t FiniteGroupTable::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::optional<std::size_t> FiniteGroupTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::size_t> FiniteGroupTable::subgroup(const std::vector<std::size_t>& gens) const {
  std::vector<bool> in(size(), false);
  std::vector<std::size_t> queue{identity_};
  in[identity_] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t g : gens) {
      std::size_t x = mul(queue[i], g);
      if (!in[x]) {
        in[x] = true;
        queue.push_back(x);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

FiniteGroupTable FiniteGroupTable::relabeled(const std::vector<std::size_t>& perm) const {
  const std::size_t n = size();
  std::vector<std::string> names(n);
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    names[perm[a]] = names_[a];
    for (std::size_t b = 0; b < n; ++b) table[perm[a]][perm[b]] = perm[table_[a][b]];
  }
  return FiniteGroupTable(std::move(names), std::move(table));
}

nlohmann::json FiniteGroupTable::to_json() const { return {{"elements", names_}, {"table", table_}}; }

bool is_monomorphism(const FiniteGroupTable& from, const FiniteGroupTable& to, const std::vector<std::size_t>& map) {
  if (map.size() != from.size()) return false;
  std::vector<bool> hit(to.size(), false);
  for (std::size_t x : map) {
    if (x >= to.size() || hit[x]) return false;
    hit[x] = true;
  }
  for (std::size_t a = 0; a < from.size(); ++a)
    for (std::size_t b = 0; b < from.size(); ++b)
      if (map[from.mul(a, b)] != to.mul(map[a], map[b])) return false;
  return true;
}

// --- graphs of groups ----------------------------------------------------------

void GraphOfGroups::validate() const {
  if (vertices.empty()) throw InvalidArgument("graph of groups has no vertices");
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const GogEdge& e : edges) {
    if (e.end0 >= vertices.size() || e.end1 >= vertices.size()) throw InvalidArgument("edge " + e.name + " has a bad endpoint");
    if (!is_monomorphism(e.group, vertices[e.end0].group, e.mono0))
      throw InvalidArgument("edge " + e.name + ": first map is not an injective homomorphism");
    if (!is_monomorphism(e.group, vertices[e.end1].group, e.mono1))
      throw InvalidArgument("edge " + e.name + ": second map is not an injective homomorphism");
    parent[find(e.end0)] = find(e.end1);
  }
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (find(v) != find(0)) throw InvalidArgument("graph of groups is not connected");
  for (const GogVertex& v : vertices) {
    if (v.generator_names.size() != v.generator_elements.size())
      throw InvalidArgument("vertex " + v.name + ": generator names and elements differ in number");
    for (std::size_t x : v.generator_elements)
      if (x >= v.group.size()) throw InvalidArgument("vertex " + v.name + ": generator element out of range");
  }
}

std::size_t GraphOfGroups::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].name == name) return i;
  throw InvalidArgument("no vertex named '" + name + "'");
}

std::size_t GraphOfGroups::edge_index(const std::string& name) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return i;
  throw InvalidArgument("no edge named '" + name + "'");
}

nlohmann::json GraphOfGroups::to_json() const {
  nlohmann::json vs = nlohmann::json::array();
  for (const GogVertex& v : vertices) {
    nlohmann::json j = v.group.to_json();
    j["name"] = v.name;
    nlohmann::json gens = nlohmann::json::object();
    for (std::size_t i = 0; i < v.generator_names.size(); ++i)
      gens[v.generator_names[i]] = v.group.name(v.generator_elements[i]);
    j["generators"] = v.generator_names;
    j["generator_elements"] = gens;
    if (!v.relators.empty()) j["relators"] = v.relators;
    vs.push_back(j);
  }
  nlohmann::json es = nlohmann::json::array();
  for (const GogEdge& e : edges) {
    nlohmann::json j = e.group.to_json();
    j["name"] = e.name;
    j["from"] = vertices[e.end0].name;
    j["to"] = vertices[e.end1].name;
    if (!e.stable_letter.empty()) j["stable_letter"] = e.stable_letter;
    nlohmann::json m0 = nlohmann::json::object(), m1 = nlohmann::json::object();
    for (std::size_t x = 0; x < e.group.size(); ++x) {
      m0[e.group.name(x)] = vertices[e.end0].group.name(e.mono0[x]);
      m1[e.group.name(x)] = vertices[e.end1].group.name(e.mono1[x]);
    }
    j["map0"] = m0;
    j["map1"] = m1;
    es.push_back(j);
  }
  return {{"vertices", vs}, {"edges", es}};
}

namespace {

FiniteGroupTable table_from_json(const nlohmann::json& j, const std::string& what) {
  if (j.contains("order")) {
    std::size_t n = j.at("order").get<std::size_t>();
    if (n == 0) throw InvalidArgument(what + ": order must be positive");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(i == 0 ? "1" : i == 1 ? "z" : "z^" + std::to_string(i));
      for (std::size_t k = 0; k < n; ++k) table[i][k] = (i + k) % n;
    }
    return FiniteGroupTable(std::move(names), std::move(table));
  }
  if (j.contains("elements") && j.contains("table"))
    return FiniteGroupTable(j.at("elements").get<std::vector<std::string>>(),
                            j.at("table").get<std::vector<std::vector<std::size_t>>>());
  throw InvalidArgument(what + ": expected \"order\", \"permutations\" or \"elements\" with \"table\"");
}

std::vector<std::size_t> map_from_json(const nlohmann::json& j, const FiniteGroupTable& from, const FiniteGroupTable& to,
                                       const std::string& what) {
  std::vector<std::size_t> map(from.size(), to.size());
  map[from.identity()] = to.identity();
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto a = from.find(it.key());
    auto b = to.find(it.value().get<std::string>());
    if (!a) throw InvalidArgument(what + ": unknown edge element '" + it.key() + "'");
    if (!b) throw InvalidArgument(what + ": unknown vertex element '" + it.value().get<std::string>() + "'");
    map[*a] = *b;
  }
  for (std::size_t x : map)
    if (x == to.size()) throw InvalidArgument(what + ": map is not defined on every element");
  return map;
}

}  // namespace

GraphOfGroups graph_of_groups_from_json(const nlohmann::json& j) {
  GraphOfGroups g;
  try {
    for (const auto& jv : j.at("vertices")) {
      GogVertex v;
      v.name = jv.at("name").get<std::string>();
      if (jv.contains("permutations")) {
        const auto& perms = jv.at("permutations");
        std::vector<std::string> names;
        if (jv.contains("generators"))
          names = jv.at("generators").get<std::vector<std::string>>();
        else
          for (auto it = perms.begin(); it != perms.end(); ++it) names.push_back(it.key());
        std::vector<Permutation> gens;
        std::size_t degree = 0;
        for (const auto& n : names) {
          gens.push_back(Permutation::parse(perms.at(n).get<std::string>()));
          degree = std::max(degree, gens.back().degree());
        }
        for (auto& p : gens) p = p.extended(degree);
        PermGroup pg(degree, gens);
        v.group = FiniteGroupTable::from_perm_group(pg);
        v.generator_names = names;
        for (const auto& p : gens) v.generator_elements.push_back(static_cast<std::size_t>(pg.index_of(p)));
      } else {
        v.group = table_from_json(jv, "vertex " + v.name);
        if (jv.contains("generator_elements")) {
          const auto& ge = jv.at("generator_elements");
          std::vector<std::string> names;
          if (jv.contains("generators"))
            names = jv.at("generators").get<std::vector<std::string>>();
          else
            for (auto it = ge.begin(); it != ge.end(); ++it) names.push_back(it.key());
          for (const auto& n : names) {
            auto e = v.group.find(ge.at(n).get<std::string>());
            if (!e) throw InvalidArgument("vertex " + v.name + ": unknown generator element");
            v.generator_names.push_back(n);
            v.generator_elements.push_back(*e);
          }
        }
      }
      if (jv.contains("relators")) v.relators = jv.at("relators").get<std::vector<std::string>>();
      g.vertices.push_back(std::move(v));
    }
    for (const auto& je : j.at("edges")) {
      GogEdge e;
      e.name = je.at("name").get<std::string>();
      e.end0 = g.vertex_index(je.at("from").get<std::string>());
      e.end1 = g.vertex_index(je.at("to").get<std::string>());
      e.group = table_from_json(je, "edge " + e.name);
      e.mono0 = map_from_json(je.at("map0"), e.group, g.vertices[e.end0].group, "edge " + e.name);
      e.mono1 = map_from_json(je.at("map1"), e.group, g.vertices[e.end1].group, "edge " + e.name);
      if (je.contains("stable_letter")) e.stable_letter = je.at("stable_letter").get<std::string>();
      g.edges.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("graph of groups JSON: ") + ex.what(), 0);
  }
  g.validate();
  return g;
}

// --- fundamental group presentation --------------------------------------------

namespace {

// Generators of a finite group: greedily in element order.
std::vector<std::size_t> greedy_generators(const FiniteGroupTable& t) {
  std::vector<std::size_t> gens;
  std::vector<std::size_t> current{t.identity()};
  for (std::size_t x = 0; x < t.size() && current.size() < t.size(); ++x) {
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = t.subgroup(gens);
  }
  return gens;
}

// Smallest generating set of size one or two in lexicographic order, else
// the greedy set.
std::vector<std::size_t> small_generating_set(const FiniteGroupTable& t) {
  if (t.size() == 1) return {};
  for (std::size_t a = 0; a < t.size(); ++a)
    if (t.subgroup({a}).size() == t.size()) return {a};
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b)
      if (t.subgroup({a, b}).size() == t.size()) return {a, b};
  return greedy_generators(t);
}

// Shortest words for all elements, breadth first; letters tried in the order
// g1, g2, ..., g1^-1, g2^-1, ...
std::vector<LetterWord> element_words(const FiniteGroupTable& t, const std::vector<std::size_t>& gens,
                                      std::size_t offset) {
  std::vector<std::pair<Letter, std::size_t>> steps;
  for (std::size_t i = 0; i < gens.size(); ++i) steps.emplace_back(make_letter(offset + i, false), gens[i]);
  for (std::size_t i = 0; i < gens.size(); ++i) steps.emplace_back(make_letter(offset + i, true), t.inv(gens[i]));
  std::vector<LetterWord> words(t.size());
  std::vector<bool> seen(t.size(), false);
  std::vector<std::size_t> queue{t.identity()};
  seen[t.identity()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto [letter, g] : steps) {
      std::size_t y = t.mul(queue[i], g);
      if (seen[y]) continue;
      seen[y] = true;
      words[y] = words[queue[i]];
      words[y].push_back(letter);
      queue.push_back(y);
    }
  if (queue.size() != t.size()) throw InvalidArgument("vertex generators do not generate the vertex group");
  return words;
}

std::string default_name(const std::string& vertex, std::size_t k) {
  std::string base;
  for (char c : vertex)
    if (std::isalnum(static_cast<unsigned char>(c))) base += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (base.empty() || !std::isalpha(static_cast<unsigned char>(base[0]))) base = "v" + base;
  return base + "_" + std::to_string(k + 1);
}

}  // namespace

FundamentalPresentation fundamental_presentation(const GraphOfGroups& g, const std::vector<std::size_t>& tree) {
  g.validate();
  const std::size_t nv = g.vertices.size();
  if (tree.size() + 1 != nv) throw InvalidArgument("a spanning tree has one edge fewer than there are vertices");
  std::vector<bool> in_tree(g.edges.size(), false);
  {
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t e : tree) {
      if (e >= g.edges.size() || in_tree[e]) throw InvalidArgument("bad spanning tree edge");
      in_tree[e] = true;
      std::size_t a = find(g.edges[e].end0), b = find(g.edges[e].end1);
      if (a == b) throw InvalidArgument("spanning tree contains a cycle");
      parent[a] = b;
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> gens(nv);
  std::vector<std::size_t> offset(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const GogVertex& vx = g.vertices[v];
    offset[v] = names.size();
    if (!vx.generator_names.empty()) {
      gens[v] = vx.generator_elements;
      names.insert(names.end(), vx.generator_names.begin(), vx.generator_names.end());
    } else {
      gens[v] = small_generating_set(vx.group);
      for (std::size_t k = 0; k < gens[v].size(); ++k) names.push_back(default_name(vx.name, k));
    }
  }
  std::vector<std::size_t> stable(g.edges.size(), 0);
  std::size_t stable_count = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (in_tree[e]) continue;
    stable[e] = names.size();
    ++stable_count;
    names.push_back(!g.edges[e].stable_letter.empty() ? g.edges[e].stable_letter
                    : stable_count == 1              ? std::string("t")
                                                     : "t" + std::to_string(stable_count));
  }
  AlphabetPtr alphabet = make_alphabet(names);

  FundamentalPresentation out;
  std::vector<Word> relators;
  for (std::size_t v = 0; v < nv; ++v) {
    const GogVertex& vx = g.vertices[v];
    const FiniteGroupTable& t = vx.group;
    std::vector<LetterWord> words = element_words(t, gens[v], offset[v]);
    std::vector<Word> elems;
    for (const LetterWord& w : words) elems.push_back(Word::from_letters(alphabet, w));
    std::vector<Word> vg;
    for (std::size_t k = 0; k < gens[v].size(); ++k) vg.push_back(Word::generator(alphabet, offset[v] + k));
    out.vertex_generators.push_back(vg);

    // Value of a word over this vertex's generators.
    auto evaluate = [&](const LetterWord& w) {
      std::size_t x = t.identity();
      for (Letter l : w) {
        std::size_t e = gens[v][letter_generator(l) - offset[v]];
        x = t.mul(x, letter_is_inverse(l) ? t.inv(e) : e);
      }
      return x;
    };

    if (!vx.relators.empty()) {
      std::vector<std::string> local_names(names.begin() + static_cast<std::ptrdiff_t>(offset[v]),
                                           names.begin() + static_cast<std::ptrdiff_t>(offset[v] + gens[v].size()));
      Presentation local = make_presentation(local_names, vx.relators);
      for (const Word& r : local.relators) {
        LetterWord w = r.letters();
        for (Letter& l : w) l = make_letter(letter_generator(l) + offset[v], letter_is_inverse(l));
        if (evaluate(w) != t.identity())
          throw InvalidArgument("vertex " + vx.name + ": relator " + r.to_string() + " fails in the group table");
        relators.push_back(Word::from_letters(alphabet, w));
      }
      if (group_order(local, 100'000) != t.size())
        throw InvalidArgument("vertex " + vx.name + ": relators do not present the vertex group");
    } else {
      // Cayley-graph relators: w_x g w_{xg}^-1.
      std::set<LetterWord> seen;
      for (std::size_t x = 0; x < t.size(); ++x)
        for (std::size_t k = 0; k < gens[v].size(); ++k) {
          LetterWord w = words[x];
          w.push_back(make_letter(offset[v] + k, false));
          LetterWord back = inverse_word(words[t.mul(x, gens[v][k])]);
          w.insert(w.end(), back.begin(), back.end());
          cyclic_reduce(w);
          if (w.empty()) continue;
          if (seen.insert(cyclic_canonical(w)).second) relators.push_back(Word::from_letters(alphabet, w));
        }
    }
    out.vertex_element_words.push_back(std::move(elems));
  }

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const GogEdge& ed = g.edges[e];
    for (std::size_t x : greedy_generators(ed.group)) {
      const Word& w0 = out.vertex_element_words[ed.end0][ed.mono0[x]];
      const Word& w1 = out.vertex_element_words[ed.end1][ed.mono1[x]];
      if (in_tree[e]) {
        relators.push_back(multiply(w0, invert(w1)));
      } else {
        Word t = Word::generator(alphabet, stable[e]);
        relators.push_back(multiply(multiply(multiply(t, w0), invert(t)), invert(w1)));
      }
    }
  }
  out.presentation = make_presentation(alphabet, relators);
  return out;
}

// --- fixed subtrees ---------------------------------------------------------------

namespace {

struct OrientedEdge {
  std::size_t from, to;
  const FiniteGroupTable* edge_group;
  const std::vector<std::size_t>* alpha;  // into G_from
  const std::vector<std::size_t>* beta;   // into G_to
  std::vector<std::ptrdiff_t> alpha_inverse;  // G_from element -> edge element or -1
  std::vector<std::size_t> coset_of;          // left coset g alpha(G_e) of each element
  std::vector<std::size_t> reps;              // minimal element of each coset
};

std::vector<OrientedEdge> oriented_edges(const GraphOfGroups& g) {
  std::vector<OrientedEdge> out;
  for (const GogEdge& e : g.edges)
    for (int o = 0; o < 2; ++o) {
      OrientedEdge y;
      y.from = o == 0 ? e.end0 : e.end1;
      y.to = o == 0 ? e.end1 : e.end0;
      y.edge_group = &e.group;
      y.alpha = o == 0 ? &e.mono0 : &e.mono1;
      y.beta = o == 0 ? &e.mono1 : &e.mono0;
      const FiniteGroupTable& gv = g.vertices[y.from].group;
      y.alpha_inverse.assign(gv.size(), -1);
      for (std::size_t k = 0; k < e.group.size(); ++k) y.alpha_inverse[(*y.alpha)[k]] = static_cast<std::ptrdiff_t>(k);
      constexpr std::size_t unset = static_cast<std::size_t>(-1);
      y.coset_of.assign(gv.size(), unset);
      for (std::size_t x = 0; x < gv.size(); ++x) {
        if (y.coset_of[x] != unset) continue;
        for (std::size_t k = 0; k < e.group.size(); ++k) y.coset_of[gv.mul(x, (*y.alpha)[k])] = y.reps.size();
        y.reps.push_back(x);
      }
      out.push_back(std::move(y));
    }
  return out;
}

}  // namespace

FixedTreeVerdict fixed_tree_infinite(const GraphOfGroups& g, std::size_t v, std::size_t f) {
  if (v >= g.vertices.size()) throw InvalidArgument("vertex out of range");
  if (f >= g.vertices[v].group.size()) throw InvalidArgument("element not in the vertex group");
  if (f == g.vertices[v].group.identity()) throw InvalidArgument("the identity fixes the whole tree");
  std::vector<OrientedEdge> ys = oriented_edges(g);

  auto successors = [&](const TreeState& s) {
    std::vector<TreeState> out;
    const FiniteGroupTable& gw = g.vertices[s.vertex].group;
    for (std::size_t yi = 0; yi < ys.size(); ++yi) {
      const OrientedEdge& y = ys[yi];
      if (y.from != s.vertex) continue;
      for (std::size_t c = 0; c < y.reps.size(); ++c) {
        std::size_t rep = y.reps[c];
        if (static_cast<std::ptrdiff_t>(yi) == s.entry && c == y.coset_of[gw.identity()]) continue;
        std::size_t k = gw.mul(gw.mul(gw.inv(rep), s.element), rep);
        std::ptrdiff_t pre = y.alpha_inverse[k];
        if (pre < 0) continue;
        out.push_back({y.to, (*y.beta)[static_cast<std::size_t>(pre)], static_cast<std::ptrdiff_t>(yi ^ 1U), 0});
      }
    }
    return out;
  };

  // Iterative three-colour DFS; grey states on the stack reveal a cycle.
  enum Colour { white, grey, black };
  std::map<TreeState, Colour> colour;
  std::map<TreeState, std::size_t> depth;  // longest path from the state (finished states)
  struct Frame {
    TreeState state;
    std::vector<TreeState> next;
    std::size_t i = 0;
    std::size_t best = 0;
  };
  FixedTreeVerdict verdict;
  TreeState root{v, f, -1, 0};
  std::vector<Frame> stack;
  stack.push_back({root, successors(root)});
  colour[root] = grey;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.i < top.next.size()) {
      TreeState s = top.next[top.i++];
      Colour c = colour.count(s) ? colour[s] : white;
      if (c == grey) {
        verdict.infinite = true;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& fr) { return fr.state == s; });
        for (; it != stack.end(); ++it) verdict.cycle.push_back(it->state);
        verdict.cycle.push_back(s);
        verdict.states = colour.size();
        return verdict;
      }
      if (c == black) {
        top.best = std::max(top.best, depth[s] + 1);
        continue;
      }
      colour[s] = grey;
      std::vector<TreeState> nx = successors(s);
      stack.push_back({s, std::move(nx)});
      continue;
    }
    colour[top.state] = black;
    depth[top.state] = top.best;
    std::size_t finished = top.best;
    stack.pop_back();
    if (!stack.empty()) stack.back().best = std::max(stack.back().best, finished + 1);
  }
  verdict.states = colour.size();
  verdict.diameter = depth[root];
  return verdict;
}

std::vector<std::size_t> ball_growth(const GraphOfGroups& g, std::size_t v, std::size_t f, std::size_t radius,
                                     std::size_t cap) {
  if (v >= g.vertices.size()) throw InvalidArgument("vertex out of range");
  if (f >= g.vertices[v].group.size()) throw InvalidArgument("element not in the vertex group");
  std::vector<OrientedEdge> ys = oriented_edges(g);
  // A tree vertex is g1 s_y1 g2 s_y2 ... gn s_yn G_{vn} with gi a coset
  // representative; stored as the list of (yi, gi).
  using NormalForm = std::vector<std::pair<std::size_t, std::size_t>>;

  auto act = [&](const NormalForm& x) {
    NormalForm out;
    std::size_t carry = f;
    std::size_t at = v;
    for (auto [yi, gi] : x) {
      const OrientedEdge& y = ys[yi];
      const FiniteGroupTable& gv = g.vertices[at].group;
      std::size_t prod = gv.mul(carry, gi);
      std::size_t rep = y.reps[y.coset_of[prod]];
      std::ptrdiff_t k = y.alpha_inverse[gv.mul(gv.inv(rep), prod)];
      carry = (*y.beta)[static_cast<std::size_t>(k)];
      out.emplace_back(yi, rep);
      at = y.to;
    }
    return out;
  };

  std::vector<std::size_t> counts{1};
  std::vector<NormalForm> level{NormalForm{}};
  std::size_t processed = 1;
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<NormalForm> next;
    for (const NormalForm& x : level) {
      std::size_t at = x.empty() ? v : ys[x.back().first].to;
      const FiniteGroupTable& gv = g.vertices[at].group;
      for (std::size_t yi = 0; yi < ys.size(); ++yi) {
        const OrientedEdge& y = ys[yi];
        if (y.from != at) continue;
        for (std::size_t rep : y.reps) {
          bool backtrack = !x.empty() && (x.back().first ^ 1U) == yi && y.coset_of[rep] == y.coset_of[gv.identity()];
          if (backtrack) continue;
          if (++processed > cap) throw CapExceeded("ball exceeds " + std::to_string(cap) + " vertices");
          NormalForm child = x;
          child.emplace_back(yi, rep);
          if (act(child) == child) next.push_back(std::move(child));
        }
      }
    }
    counts.push_back(next.size());
    level = std::move(next);
  }
  return counts;
}

CriterionResult criterion_finite_subgroup(const GraphOfGroups& g, std::size_t v) {
  if (v >= g.vertices.size()) throw InvalidArgument("vertex out of range");
  const FiniteGroupTable& t = g.vertices[v].group;
  std::vector<OrientedEdge> ys = oriented_edges(g);
  CriterionResult out;
  std::vector<bool> covered(t.size(), false);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (f == t.identity() || covered[f]) continue;
    bool meets_edge = false;
    for (std::size_t x = 0; x < t.size(); ++x) {
      std::size_t c = t.mul(t.mul(x, f), t.inv(x));
      covered[c] = true;
      for (const OrientedEdge& y : ys)
        if (y.from == v && y.alpha_inverse[c] >= 0) meets_edge = true;
    }
    if (!meets_edge) continue;
    ++out.checked;
    if (fixed_tree_infinite(g, v, f).infinite) {
      out.satisfied = false;
      out.violator = f;
      return out;
    }
  }
  return out;
}

}  // namespace vrkit
