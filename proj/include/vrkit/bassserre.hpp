#pragma once

// Graphs of finite groups: presentations of the fundamental group, fixed
// subtrees of finite-order elements in the Bass-Serre tree, and normal forms
// in free products of finite groups and a free group.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vrkit/fpgroup.hpp"
#include "vrkit/permgrp.hpp"

namespace vrkit {

class FiniteGroupTable {
 public:
  FiniteGroupTable() = default;
  /// Validates identity, inverses and associativity; throws InvalidArgument.
  FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);
  /// Elements in the group's discovery order, named by cycle notation.
  static FiniteGroupTable from_perm_group(const PermGroup& g);
  /// Regular representation of a finite presentation via coset enumeration.
  /// `generator_elements` receives the element of each generator.
  static FiniteGroupTable from_presentation(const Presentation& p, std::vector<std::size_t>* generator_elements = nullptr,
                                            std::size_t limit = 100'000);

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, std::int64_t k) const;
  std::size_t element_order(std::size_t a) const;
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Elements of the subgroup generated by `gens`, sorted.
  std::vector<std::size_t> subgroup(const std::vector<std::size_t>& gens) const;
  /// The same group with elements permuted: element i becomes perm[i].
  FiniteGroupTable relabeled(const std::vector<std::size_t>& perm) const;
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

/// True iff `map` is an injective homomorphism from `from` into `to`.
bool is_monomorphism(const FiniteGroupTable& from, const FiniteGroupTable& to, const std::vector<std::size_t>& map);

struct GogVertex {
  std::string name;
  FiniteGroupTable group;
  /// Named generators with their elements; optional relators over them that
  /// must present the group. Both may be empty.
  std::vector<std::string> generator_names;
  std::vector<std::size_t> generator_elements;
  std::vector<std::string> relators;
};

struct GogEdge {
  std::string name;
  std::size_t end0 = 0, end1 = 0;
  FiniteGroupTable group;
  std::vector<std::size_t> mono0, mono1;  // element maps into the end groups
  std::string stable_letter;              // used when the edge is off the tree
};

struct GraphOfGroups {
  std::vector<GogVertex> vertices;
  std::vector<GogEdge> edges;

  /// Throws InvalidArgument when a map is not a monomorphism or the graph is
  /// disconnected.
  void validate() const;
  std::size_t vertex_index(const std::string& name) const;
  std::size_t edge_index(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Vertices are given either by "permutations" ({generator: cycles}) with
/// optional "relators", or by "elements" and a multiplication "table". Edge
/// maps are objects {"edge element": "vertex element"}.
GraphOfGroups graph_of_groups_from_json(const nlohmann::json& j);

struct FundamentalPresentation {
  Presentation presentation;
  /// Per vertex, its generators as words of the presentation.
  std::vector<std::vector<Word>> vertex_generators;
  /// Per vertex, every element as a word (index = element index).
  std::vector<std::vector<Word>> vertex_element_words;
};

/// `tree` lists edge indices forming a spanning tree. A non-tree edge e with
/// stable letter t contributes t w0(x) t^-1 w1(x)^-1 for generators x of the
/// edge group; tree edges contribute w0(x) w1(x)^-1.
FundamentalPresentation fundamental_presentation(const GraphOfGroups& g, const std::vector<std::size_t>& tree);

struct TreeState {
  std::size_t vertex;       // vertex of the quotient graph
  std::size_t element;      // the element, in this vertex group's frame
  std::ptrdiff_t entry;     // oriented edge 2e+o used to arrive, -1 at the root
  std::size_t coset = 0;    // entry coset representative (always the trivial one)
  friend auto operator<=>(const TreeState&, const TreeState&) = default;
};

struct FixedTreeVerdict {
  bool infinite = false;
  /// Infinite: a repeating sequence of states, first == last.
  std::vector<TreeState> cycle;
  /// Finite: number of reachable states and the longest path (the radius of
  /// the fixed subtree around the base vertex).
  std::size_t states = 0;
  std::size_t diameter = 0;
};

/// Decides whether f (an element of vertex v's group) fixes an infinite
/// subtree of the Bass-Serre tree.
FixedTreeVerdict fixed_tree_infinite(const GraphOfGroups& g, std::size_t v, std::size_t f);

/// Fixed vertices at distances 0..radius from the base vertex of type v,
/// computed on explicit normal forms. Throws CapExceeded past `cap` vertices.
std::vector<std::size_t> ball_growth(const GraphOfGroups& g, std::size_t v, std::size_t f, std::size_t radius,
                                     std::size_t cap = 2'000'000);

struct CriterionResult {
  bool satisfied = true;
  std::optional<std::size_t> violator;
  std::size_t checked = 0;  // elements examined with the tree automaton
};

CriterionResult criterion_finite_subgroup(const GraphOfGroups& g, std::size_t v);

// --- free products -----------------------------------------------------------

/// A letter of a free product of finite groups and a free group: either a
/// nontrivial element of a block or a free generator with a sign.
struct FreeProductLetter {
  std::ptrdiff_t block = -1;  // -1 for a free generator
  std::size_t value = 0;      // block element or free generator index
  bool inverse = false;       // free letters only
  friend auto operator<=>(const FreeProductLetter&, const FreeProductLetter&) = default;
};

using FreeProductWord = std::vector<FreeProductLetter>;

/// Reduced normal form of a product.
FreeProductWord free_product_multiply(const std::vector<FiniteGroupTable>& blocks, const FreeProductWord& a,
                                      const FreeProductWord& b);

struct FreeProductOrder {
  std::optional<std::size_t> order;  // empty when the closure exceeds the cap
  std::size_t cap = 0;
  std::vector<FreeProductWord> elements;  // filled when finite
};

FreeProductOrder free_product_order(const std::vector<FiniteGroupTable>& blocks, std::size_t free_rank,
                                    const std::vector<FreeProductWord>& gens, std::size_t cap = 10'000);

}  // namespace vrkit
