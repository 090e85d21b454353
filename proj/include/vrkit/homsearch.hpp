#pragma once

// Backtracking search for homomorphisms onto small permutation groups.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vrkit/fpgroup.hpp"
#include "vrkit/permgrp.hpp"

namespace vrkit {

/// Generator index -> prescribed image.
using FixedImages = std::map<std::size_t, Permutation>;

/// Visits every homomorphism extending `fixed`, lexicographically in the
/// target's element order. The visitor returns false to stop. Returns the
/// number of homomorphisms visited.
std::size_t for_each_hom(const Presentation& p, const PermGroupPtr& target, const FixedImages& fixed,
                         const std::function<bool(const GroupHom&)>& visit);

struct HomList {
  std::vector<GroupHom> homs;
  bool truncated = false;
};

HomList enumerate_homs(const Presentation& p, const PermGroupPtr& target, const FixedImages& fixed = {},
                       std::size_t cap = 1'000'000);

struct FiniteSubgroupSpec {
  std::vector<Word> generators;
  std::size_t order = 1;
};

struct InjectiveSearch {
  std::optional<GroupHom> hom;
  std::size_t examined = 0;  // homomorphisms tested against the subgroups
  bool budget_exhausted = false;
  std::string report;
};

/// First homomorphism (targets in order) injective on every listed subgroup.
InjectiveSearch find_injective_on(const Presentation& p, const std::vector<FiniteSubgroupSpec>& subgroups,
                                  const std::vector<PermGroupPtr>& targets, std::size_t budget = 1'000'000,
                                  const FixedImages& fixed = {});

}  // namespace vrkit
