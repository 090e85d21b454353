#pragma once

// Subgroup graphs of free groups: folding, membership, bases and the
// completion of a finite subgroup graph to a finite cover of the rose.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "vrkit/words.hpp"

namespace vrkit {

struct StallingsGraph {
  static constexpr std::int64_t none = -1;

  AlphabetPtr alphabet;
  /// next[v][letter]: endpoint of the unique edge leaving v with that letter
  /// (an inverse letter walks an edge backwards), or none.
  std::vector<std::vector<std::int64_t>> next;

  std::size_t vertex_count() const { return next.size(); }
  std::size_t rank() const { return alphabet->size(); }
  /// Positive edges (source, target, generator) ordered by source, generator.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const;
  /// Every vertex has every letter defined.
  bool is_covering() const;
  nlohmann::json to_json() const;

  friend bool operator==(const StallingsGraph& a, const StallingsGraph& b) {
    return same_alphabet(a.alphabet, b.alphabet) && a.next == b.next;
  }
};

/// Wedge of loops at the base, folded, trimmed to the core and renumbered by
/// breadth-first search from the base. With `shuffle`, fold candidates are
/// visited in a random order; the result does not depend on it.
StallingsGraph build_subgroup_graph(const AlphabetPtr& alphabet, std::span<const Word> gens,
                                    std::mt19937_64* shuffle = nullptr);

bool membership(const StallingsGraph& g, const Word& w);

/// One freely reduced word per edge outside the breadth-first spanning tree,
/// ordered by (source vertex, generator).
std::vector<Word> basis(const StallingsGraph& g);

struct Retraction {
  /// K's basis as ambient words; the first `fixed_count` form H's basis.
  std::vector<Word> domain_basis;
  std::size_t fixed_count = 0;
  /// Over the alphabet k1..km naming domain_basis: ki for i <= fixed_count,
  /// the identity otherwise.
  std::vector<Word> images;
  AlphabetPtr basis_alphabet;
};

struct HallCompletion {
  StallingsGraph cover;
  std::vector<Word> k_basis;           // basis(g) followed by complement_basis
  std::vector<Word> complement_basis;  // words of the edges added by completion
  Retraction rho;
  /// symbol[v][gen]: k_basis index of the edge leaving v labelled gen, or -1
  /// for spanning-tree edges.
  std::vector<std::vector<std::ptrdiff_t>> symbol;
};

HallCompletion hall_completion(const StallingsGraph& g);

/// Number of sheets; throws InvalidArgument unless `cover` is a covering.
std::size_t cover_index(const StallingsGraph& cover);

/// Writes w (an element of the subgroup whose completion is `c`) in the
/// k_basis letters k1..km.
Word express_in_basis(const HallCompletion& c, const Word& w);

/// rho(w) as an ambient word.
Word apply_retraction(const HallCompletion& c, const Word& w);

}  // namespace vrkit
