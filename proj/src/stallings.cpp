#include "vrkit/stallings.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "vrkit/error.hpp"

namespace vrkit {

namespace {

struct Edge {
  std::size_t src, dst, gen;
};

std::size_t find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Renumbers vertices breadth-first from `base`, dropping unreachable ones.
StallingsGraph renumber(const AlphabetPtr& a, const std::vector<std::vector<std::int64_t>>& next, std::size_t base) {
  std::vector<std::int64_t> number(next.size(), StallingsGraph::none);
  std::vector<std::size_t> order{base};
  number[base] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::int64_t d : next[order[i]])
      if (d != StallingsGraph::none && number[static_cast<std::size_t>(d)] == StallingsGraph::none) {
        number[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(order.size());
        order.push_back(static_cast<std::size_t>(d));
      }
  StallingsGraph g;
  g.alphabet = a;
  for (std::size_t v : order) {
    std::vector<std::int64_t> row = next[v];
    for (std::int64_t& d : row)
      if (d != StallingsGraph::none) d = number[static_cast<std::size_t>(d)];
    g.next.push_back(std::move(row));
  }
  return g;
}

struct SpanningTree {
  std::vector<LetterWord> rep;
  std::vector<std::vector<bool>> in_tree;  // [v][letter]
};

SpanningTree bfs_tree(const StallingsGraph& g) {
  const std::size_t n = g.vertex_count();
  SpanningTree t;
  t.rep.assign(n, {});
  t.in_tree.assign(n, std::vector<bool>(2 * g.rank(), false));
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::size_t v = queue[i];
    for (std::size_t x = 0; x < 2 * g.rank(); ++x) {
      std::int64_t d = g.next[v][x];
      if (d == StallingsGraph::none || seen[static_cast<std::size_t>(d)]) continue;
      std::size_t u = static_cast<std::size_t>(d);
      seen[u] = true;
      queue.push_back(u);
      t.rep[u] = t.rep[v];
      t.rep[u].push_back(static_cast<Letter>(x));
      t.in_tree[v][x] = true;
      t.in_tree[u][x ^ 1U] = true;
    }
  }
  return t;
}

Word edge_word(const StallingsGraph& g, const SpanningTree& t, std::size_t v, std::size_t gen) {
  std::size_t u = static_cast<std::size_t>(g.next[v][2 * gen]);
  LetterWord w = t.rep[v];
  w.push_back(make_letter(gen, false));
  LetterWord back = inverse_word(t.rep[u]);
  w.insert(w.end(), back.begin(), back.end());
  free_reduce(w);
  return Word::from_letters(g.alphabet, w);
}

}  // namespace

std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> StallingsGraph::edges() const {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  for (std::size_t v = 0; v < next.size(); ++v)
    for (std::size_t gen = 0; gen < rank(); ++gen)
      if (next[v][2 * gen] != none) out.emplace_back(v, static_cast<std::size_t>(next[v][2 * gen]), gen);
  return out;
}

std::size_t StallingsGraph::edge_count() const { return edges().size(); }

bool StallingsGraph::is_covering() const {
  for (const auto& row : next)
    for (std::int64_t d : row)
      if (d == none) return false;
  return true;
}

nlohmann::json StallingsGraph::to_json() const {
  nlohmann::json e = nlohmann::json::array();
  for (auto [s, d, gen] : edges()) e.push_back({s, d, alphabet->name(gen)});
  return {{"vertices", vertex_count()}, {"base", 0}, {"edges", e}};
}

StallingsGraph build_subgroup_graph(const AlphabetPtr& alphabet, std::span<const Word> gens, std::mt19937_64* shuffle) {
  std::vector<Edge> edges;
  std::size_t vertices = 1;
  for (const Word& w : gens) {
    if (!same_alphabet(w.alphabet(), alphabet)) throw AlphabetError("generator over a different alphabet");
    LetterWord letters = w.letters();
    std::size_t at = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      std::size_t to = i + 1 == letters.size() ? 0 : vertices++;
      Letter x = letters[i];
      if (letter_is_inverse(x))
        edges.push_back({to, at, letter_generator(x)});
      else
        edges.push_back({at, to, letter_generator(x)});
      at = to;
    }
  }

  std::vector<std::size_t> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    if (shuffle) std::shuffle(order.begin(), order.end(), *shuffle);
    std::map<std::pair<std::size_t, Letter>, std::size_t> slot;
    for (std::size_t i : order) {
      const Edge& e = edges[i];
      std::size_t s = find(parent, e.src);
      std::size_t d = find(parent, e.dst);
      for (auto [from, letter, to] : {std::tuple{s, make_letter(e.gen, false), d}, std::tuple{d, make_letter(e.gen, true), s}}) {
        auto [it, fresh] = slot.emplace(std::pair{from, letter}, to);
        if (fresh) continue;
        std::size_t a = find(parent, it->second);
        std::size_t b = find(parent, to);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
          changed = true;
        }
      }
      if (changed) break;
    }
  }

  std::vector<std::vector<std::int64_t>> next(vertices, std::vector<std::int64_t>(2 * alphabet->size(), StallingsGraph::none));
  for (const Edge& e : edges) {
    std::size_t s = find(parent, e.src);
    std::size_t d = find(parent, e.dst);
    next[s][make_letter(e.gen, false)] = static_cast<std::int64_t>(d);
    next[d][make_letter(e.gen, true)] = static_cast<std::int64_t>(s);
  }
  std::size_t base = find(parent, 0);

  // Trim hanging trees.
  std::vector<bool> removed(vertices, false);
  for (std::size_t v = 0; v < vertices; ++v)
    if (find(parent, v) != v) removed[v] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < vertices; ++v) {
      if (removed[v] || v == base) continue;
      std::size_t degree = 0;
      for (std::int64_t d : next[v]) degree += d != StallingsGraph::none;
      if (degree > 1) continue;
      for (std::size_t x = 0; x < next[v].size(); ++x) {
        std::int64_t d = next[v][x];
        if (d == StallingsGraph::none) continue;
        next[static_cast<std::size_t>(d)][x ^ 1U] = StallingsGraph::none;
        next[v][x] = StallingsGraph::none;
      }
      removed[v] = true;
      changed = true;
    }
  }
  return renumber(alphabet, next, base);
}

bool membership(const StallingsGraph& g, const Word& w) {
  if (!same_alphabet(w.alphabet(), g.alphabet)) throw AlphabetError("word over a different alphabet");
  std::int64_t v = 0;
  for (Letter x : w.letters()) {
    v = g.next[static_cast<std::size_t>(v)][x];
    if (v == StallingsGraph::none) return false;
  }
  return v == 0;
}

std::vector<Word> basis(const StallingsGraph& g) {
  SpanningTree t = bfs_tree(g);
  std::vector<Word> out;
  for (auto [v, u, gen] : g.edges()) {
    (void)u;
    if (!t.in_tree[v][2 * gen]) out.push_back(edge_word(g, t, v, gen));
  }
  return out;
}

HallCompletion hall_completion(const StallingsGraph& g) {
  SpanningTree t = bfs_tree(g);
  HallCompletion c;
  c.cover = g;
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> added(n, std::vector<bool>(g.rank(), false));
  for (std::size_t gen = 0; gen < g.rank(); ++gen) {
    std::vector<std::size_t> sources, targets;
    for (std::size_t v = 0; v < n; ++v) {
      if (g.next[v][2 * gen] == StallingsGraph::none) sources.push_back(v);
      if (g.next[v][2 * gen + 1] == StallingsGraph::none) targets.push_back(v);
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
      c.cover.next[sources[i]][2 * gen] = static_cast<std::int64_t>(targets[i]);
      c.cover.next[targets[i]][2 * gen + 1] = static_cast<std::int64_t>(sources[i]);
      added[sources[i]][gen] = true;
    }
  }
  c.symbol.assign(n, std::vector<std::ptrdiff_t>(g.rank(), -1));
  for (auto [v, u, gen] : g.edges()) {
    (void)u;
    if (t.in_tree[v][2 * gen]) continue;
    c.symbol[v][gen] = static_cast<std::ptrdiff_t>(c.k_basis.size());
    c.k_basis.push_back(edge_word(g, t, v, gen));
  }
  std::size_t fixed = c.k_basis.size();
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t gen = 0; gen < g.rank(); ++gen)
      if (added[v][gen]) {
        c.symbol[v][gen] = static_cast<std::ptrdiff_t>(fixed + c.complement_basis.size());
        c.complement_basis.push_back(edge_word(c.cover, t, v, gen));
      }
  c.k_basis.insert(c.k_basis.end(), c.complement_basis.begin(), c.complement_basis.end());

  std::vector<std::string> names;
  for (std::size_t i = 0; i < c.k_basis.size(); ++i) names.push_back("k" + std::to_string(i + 1));
  c.rho.basis_alphabet = make_alphabet(names);
  c.rho.domain_basis = c.k_basis;
  c.rho.fixed_count = c.k_basis.size() - c.complement_basis.size();
  for (std::size_t i = 0; i < c.k_basis.size(); ++i)
    c.rho.images.push_back(i < c.rho.fixed_count ? Word::generator(c.rho.basis_alphabet, i) : Word(c.rho.basis_alphabet));
  return c;
}

std::size_t cover_index(const StallingsGraph& cover) {
  if (!cover.is_covering()) throw InvalidArgument("graph is not a covering of the rose");
  return cover.vertex_count();
}

Word express_in_basis(const HallCompletion& c, const Word& w) {
  if (!same_alphabet(w.alphabet(), c.cover.alphabet)) throw AlphabetError("word over a different alphabet");
  LetterWord out;
  std::size_t v = 0;
  for (Letter x : w.letters()) {
    std::size_t u = static_cast<std::size_t>(c.cover.next[v][x]);
    std::size_t gen = letter_generator(x);
    std::ptrdiff_t sym = letter_is_inverse(x) ? c.symbol[u][gen] : c.symbol[v][gen];
    if (sym >= 0) out.push_back(make_letter(static_cast<std::size_t>(sym), letter_is_inverse(x)));
    v = u;
  }
  if (v != 0) throw InvalidArgument("word " + w.to_string() + " does not lie in the completed subgroup");
  free_reduce(out);
  return Word::from_letters(c.rho.basis_alphabet, out);
}

Word apply_retraction(const HallCompletion& c, const Word& w) {
  Word k = express_in_basis(c, w);
  Word image = substitute(k, c.rho.images, c.rho.basis_alphabet);
  return substitute(image, c.rho.domain_basis, c.cover.alphabet);
}

}  // namespace vrkit
