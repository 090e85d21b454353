#pragma once

// Reidemeister-Schreier rewriting over a complete coset table.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrkit/cosets.hpp"
#include "vrkit/fpgroup.hpp"

namespace vrkit {

/// Coset representatives from the BFS spanning tree of a standardized table.
/// Representative 0 is the identity and the set is prefix-closed.
std::vector<Word> schreier_transversal(const CosetTable& t);

struct SubgroupPresentation {
  /// Schreier generators and the rewritten relators (identity relators dropped).
  Presentation presentation;
  /// index * (number of ambient relators) rewrites, in (coset, relator) order,
  /// before any cleanup.
  std::vector<Word> raw_relators;
  /// Per Schreier generator, its value as an ambient word.
  std::vector<Word> embedding;
  std::vector<Word> transversal;
  /// Schreier generator of the table entry (coset, generator), or -1 for tree
  /// entries.
  std::vector<std::vector<std::ptrdiff_t>> symbol;

  nlohmann::json to_json() const;
};

/// Generators are named prefix1, prefix2, ... in (coset, generator) order.
SubgroupPresentation subgroup_presentation(const CosetTable& t, const std::string& prefix = "f");

/// Rewrites an ambient word lying in the subgroup as a word in the Schreier
/// generators. Throws InvalidArgument when w does not fix coset 0.
Word rewrite(const SubgroupPresentation& s, const CosetTable& t, const Word& w);

}  // namespace vrkit
