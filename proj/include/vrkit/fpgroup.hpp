#pragma once

// Finite presentations: parsing, abelianization, Tietze simplification with a
// recorded trail, and splitting along disjoint generator supports.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vrkit/intlin.hpp"
#include "vrkit/words.hpp"

namespace vrkit {

struct Presentation {
  AlphabetPtr alphabet;
  /// Cyclically reduced, non-identity. Order is significant.
  std::vector<Word> relators;

  std::size_t generator_count() const { return alphabet->size(); }
  /// Sum of relator lengths.
  std::size_t total_length() const;
};

/// Cyclically reduces every relator and drops identity relators. A note is
/// appended to `warnings` for each dropped relator.
Presentation make_presentation(AlphabetPtr alphabet, const std::vector<Word>& relators,
                               std::vector<std::string>* warnings = nullptr);
Presentation make_presentation(std::vector<std::string> generators, const std::vector<std::string>& relators,
                               std::vector<std::string>* warnings = nullptr);

/// {"generators": [names], "relators": [word strings]}
Presentation parse_presentation(std::string_view json_text, std::vector<std::string>* warnings = nullptr);
Presentation presentation_from_json(const nlohmann::json& j, std::vector<std::string>* warnings = nullptr);
nlohmann::json to_json(const Presentation& p);

/// Rows = relators, columns = generators, entries = exponent sums.
IntMatrix relation_matrix(const Presentation& p);

struct AbelianInvariants {
  /// d1 | d2 | ... | dk, each >= 2.
  std::vector<BigInt> torsion;
  std::size_t free_rank = 0;

  std::string to_string() const;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants abelian_invariants(const Presentation& p);
AbelianInvariants abelian_invariants_of_matrix(const IntMatrix& relations);

// --- Tietze transformations -------------------------------------------------

struct TietzeMove {
  enum class Kind {
    eliminate_generator,  // generator := word, defining relator removed
    add_generator,        // new generator := word over the current generators
    remove_relator,       // identity or duplicate relator pruned
    replace_relator,      // relator rewritten modulo another relator
  };
  Kind kind;
  std::string generator;  // eliminate/add
  std::string word;       // defining word (eliminate/add)
  std::string before;     // replace/remove
  std::string after;      // replace
  std::string reason;

  nlohmann::json to_json() const;
};

struct TietzeTrail {
  AlphabetPtr original;
  AlphabetPtr final;
  std::vector<TietzeMove> moves;
  /// Per original generator, a word over `final`.
  std::vector<Word> forward_map;
  /// Per final generator, a word over `original`.
  std::vector<Word> backward_map;

  static TietzeTrail identity(const AlphabetPtr& alphabet);
  nlohmann::json to_json() const;
};

struct TietzeResult {
  Presentation presentation;
  TietzeTrail trail;
  bool budget_exhausted = false;
};

inline constexpr std::size_t kDefaultTietzeBudget = 1'000'000;

/// Deterministic simplification loop: prune identity and duplicate relators,
/// eliminate generators that occur exactly once in a relator when this does
/// not lengthen the presentation, and shorten relators by substituting long
/// pieces of other relators. Stops at a fixpoint or after `budget` moves.
TietzeResult tietze_simplify(const Presentation& p, std::size_t budget = kDefaultTietzeBudget);

struct TietzeOptions {
  std::size_t budget = kDefaultTietzeBudget;
  /// Generators that must survive.
  std::vector<std::string> keep;
};

TietzeResult tietze_simplify(const Presentation& p, const TietzeOptions& options);

/// Introduces `new_name` := `definition` (a word over p's generators in which
/// `old_name` occurs exactly once), then eliminates `old_name`. The new
/// generator takes the old one's position.
TietzeResult replace_generator(const Presentation& p, std::string_view old_name, std::string_view new_name,
                               const Word& definition);

/// Image of w (over the trail's original alphabet) under the forward map.
Word apply_trail(const TietzeTrail& trail, const Word& w);

/// Runs `second` after `first`.
TietzeTrail compose_trails(const TietzeTrail& first, const TietzeTrail& second);

/// Abelianized soundness of a trail against the presentations it connects:
/// backward(forward(x)) = x modulo the original relations, and every original
/// relator maps into the row space of the new relation matrix.
bool trail_is_sound(const TietzeTrail& trail, const Presentation& original, const Presentation& simplified,
                    std::string* failure = nullptr);

// --- free product splitting -------------------------------------------------

struct FreeSplit {
  struct Block {
    std::vector<std::size_t> generators;  // indices into the split presentation
    Presentation presentation;            // over the block's own generators
  };
  std::vector<Block> blocks;
  std::vector<std::size_t> free_generators;

  /// Block containing a generator, or -1 when it is free.
  std::ptrdiff_t block_of(std::size_t generator) const;
  nlohmann::json to_json(const Presentation& p) const;
};

/// Connected components of the generator/relator support graph. Generators
/// in no relator form the free part; blocks are ordered by smallest generator.
FreeSplit split_free_product(const Presentation& p);

}  // namespace vrkit
