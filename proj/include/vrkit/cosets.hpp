#pragma once

// Todd-Coxeter coset enumeration (HLT with coincidence processing).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrkit/error.hpp"
#include "vrkit/fpgroup.hpp"
#include "vrkit/permgrp.hpp"

namespace vrkit {

struct CosetTable {
  static constexpr std::int64_t blank = -1;

  Presentation presentation;
  std::vector<Word> subgroup_gens;
  /// rows[c][letter]; columns follow the letter encoding g, g^-1, h, h^-1, ...
  std::vector<std::vector<std::int64_t>> rows;
  bool complete = false;

  std::size_t index() const { return rows.size(); }
  std::size_t columns() const { return 2 * presentation.generator_count(); }
  /// Follows w from `coset`; returns blank when the path runs off the table.
  std::int64_t trace(std::size_t coset, const Word& w) const;
  /// Empty when all invariants hold, else a description of the first failure.
  std::string check() const;
  nlohmann::json to_json() const;
};

class CosetOverflow : public CapExceeded {
 public:
  CosetOverflow(std::size_t limit, CosetTable partial)
      : CapExceeded("coset enumeration exceeded " + std::to_string(limit) + " cosets"),
        partial_(std::move(partial)) {}
  const CosetTable& partial() const noexcept { return partial_; }

 private:
  CosetTable partial_;
};

enum class EnumerationStrategy {
  forward,   // subgroup generators and relators in the given order
  reversed,  // both lists scanned back to front
};

inline constexpr std::size_t kDefaultCosetLimit = 1'000'000;

/// `limit` bounds the total number of cosets ever defined. The result is
/// compacted, standardized and checked.
CosetTable enumerate_cosets(const Presentation& p, std::span<const Word> subgroup,
                            std::size_t limit = kDefaultCosetLimit,
                            EnumerationStrategy strategy = EnumerationStrategy::forward);

/// Order of the group: enumeration over the trivial subgroup.
std::size_t group_order(const Presentation& p, std::size_t limit = kDefaultCosetLimit);

/// Renumbers cosets by breadth-first search from coset 0, scanning columns
/// in order.
CosetTable standardize(const CosetTable& t);

/// One permutation of {1..index} per generator.
std::vector<Permutation> perm_rep(const CosetTable& t);

/// Builds a complete table from a transitive permutation action (point 0 plays
/// the role of the subgroup). The subgroup generator list is left empty.
CosetTable table_from_action(const Presentation& p, std::span<const Permutation> actions);

}  // namespace vrkit
