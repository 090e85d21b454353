#pragma once

// Free-factor witnesses: finite quotients, preimage subgroups, subgroup
// presentations and free product splittings chained into a checkable
// certificate. Also the end-to-end run on the two-vertex-A4 example.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrkit/bassserre.hpp"
#include "vrkit/cosets.hpp"
#include "vrkit/fpgroup.hpp"
#include "vrkit/homsearch.hpp"
#include "vrkit/permgrp.hpp"
#include "vrkit/rs.hpp"

namespace vrkit {

struct WitnessStage {
  Presentation input;
  std::vector<Word> tracked_in;  // F over `input`
  GroupHom hom;
  CosetTable table;  // cosets of the preimage of hom(F)
  std::string prefix;  // Schreier generator names
  SubgroupPresentation subgroup;
  TietzeResult simplified;
  std::vector<Word> tracked_out;  // F over simplified.presentation
};

/// Where F sits inside a free product decomposition.
struct FreeFactorCheck {
  FreeSplit split;
  std::size_t block = 0;        // block F is conjugate to
  std::size_t block_order = 0;  // coset enumeration order of that block
  std::size_t order = 0;        // free product closure order of F
};

/// Certifies that `tracked` generates a conjugate of a finite block of order
/// `expected` in the free product splitting of `p`.
std::optional<FreeFactorCheck> check_free_factor(const Presentation& p, const std::vector<Word>& tracked,
                                                 std::size_t expected, std::string* why = nullptr,
                                                 std::size_t order_cap = 10'000);

struct FreeFactorCertificate {
  Presentation original;
  std::vector<Word> f_generators;
  std::size_t f_order = 0;
  std::vector<WitnessStage> stages;
  /// The presentation that splits: Tietze simplification of the last stage's
  /// subgroup, or of the original when there are no stages.
  TietzeResult final_simplification;
  std::vector<Word> tracked;  // F over the final presentation
  FreeFactorCheck check;
  std::size_t total_index = 1;

  const Presentation& final_presentation() const { return final_simplification.presentation; }
  nlohmann::json to_json() const;
};

struct WitnessOptions {
  std::vector<PermGroupPtr> targets;  // empty: A5, S5, A4, S4
  std::size_t max_stages = 2;
  std::size_t hom_budget = 1'000'000;  // homomorphisms tested, over the whole search
  std::size_t order_cap = 10'000;
  std::vector<std::string> prefixes{"f", "h", "k", "m"};
};

struct WitnessResult {
  std::optional<FreeFactorCertificate> certificate;
  std::size_t homs_examined = 0;
  std::size_t deepest_stage = 0;
  bool budget_exhausted = false;
  std::string report;
};

/// Depth-first search over homomorphisms injective on F (in the order of
/// find_injective_on), descending into preimage subgroups up to max_stages.
WitnessResult free_factor_witness(const Presentation& p, const FiniteSubgroupSpec& f, const WitnessOptions& options);

/// Re-derives every field of the certificate from its raw data. Returns an
/// empty string when everything checks out.
std::string verify_certificate(const FreeFactorCertificate& c);

// --- the worked example -------------------------------------------------------

/// Three vertices (A4, A4, S3) and three edges (Z3 off the tree, Z3 and Z2 on
/// it). With `trivial_e2` the Z2 edge group is replaced by the trivial group.
GraphOfGroups example_graph_of_groups(bool trivial_e2 = false);
/// Edge indices of the spanning tree used for the example.
std::vector<std::size_t> example_tree();

struct AppendixOptions {
  bool sabotage_psi = false;  // send a1 to (1 2 4)
  bool trivial_e2 = false;
  bool keep_going = false;    // run later checkpoints after a failure
  bool run_witness = true;    // include the witness search and its verifier
};

struct Checkpoint {
  enum class Status { pass, fail, skipped };
  std::string name;
  Status status = Status::skipped;
  bool blocking = true;
  std::string detail;
};

struct AppendixReport {
  static constexpr int schema_version = 1;
  std::vector<Checkpoint> checkpoints;
  nlohmann::json data;

  /// True when no blocking checkpoint failed or was skipped.
  bool passed() const;
  const Checkpoint* find(const std::string& name) const;
  std::string first_failure() const;
  nlohmann::json to_json() const;
};

AppendixReport appendix_report(const AppendixOptions& options = {});

}  // namespace vrkit
