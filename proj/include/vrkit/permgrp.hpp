#pragma once

// Permutations multiplied left to right: (p * q)(i) = q(p(i)), so the
// product "first p, then q". Points are 1-based in text and 0-based inside.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "vrkit/error.hpp"
#include "vrkit/fpgroup.hpp"

namespace vrkit {

class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t degree);
  /// From 0-based images; throws InvalidArgument unless a bijection.
  static Permutation from_images(std::vector<std::uint32_t> images);
  /// Cycle notation such as "(1 2 3)(4 5)" or "()". The degree is the larger
  /// of `degree` and the largest point mentioned.
  static Permutation parse(std::string_view cycles, std::size_t degree = 0);

  std::size_t degree() const noexcept { return images_.size(); }
  /// 0-based image of a 0-based point.
  std::uint32_t operator[](std::size_t point) const { return images_[point]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }
  bool is_identity() const;
  Permutation inverse() const;
  std::size_t order() const;
  /// Same permutation on a larger point set.
  Permutation extended(std::size_t degree) const;
  std::string to_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

/// Left-to-right product: first p, then q.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation power(const Permutation& p, std::int64_t k);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

inline constexpr std::size_t kDefaultClosureCap = 100'000;

/// Breadth-first closure from the identity, right-multiplying by generators.
/// Throws CapExceeded when the group would exceed `cap` elements.
std::vector<Permutation> closure(std::span<const Permutation> gens, std::size_t degree,
                                 std::size_t cap = kDefaultClosureCap);

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t cap = kDefaultClosureCap);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  /// In discovery order; element 0 is the identity.
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  /// Position in elements(), or -1.
  std::ptrdiff_t index_of(const Permutation& p) const;
  bool contains(const Permutation& p) const { return index_of(p) >= 0; }
  /// Index of elements()[a] * elements()[b].
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::string name_;
};

using PermGroupPtr = std::shared_ptr<const PermGroup>;

/// "A4", "A5", "S3", "S4", "S5", "Z2".."Z12", or a ';'-separated list of
/// cycle-notation generators.
PermGroupPtr named_group(std::string_view name);

struct GroupHom {
  Presentation domain;
  PermGroupPtr target;  // may be null when only the images are known
  std::vector<Permutation> images;

  std::size_t degree() const { return images.empty() ? (target ? target->degree() : 0) : images.front().degree(); }
  Permutation evaluate(const Word& w) const;
  nlohmann::json to_json() const;
};

/// Evaluates w under generator images, left to right.
Permutation evaluate_word(const Word& w, std::span<const Permutation> images, std::size_t degree);

/// Checks that every relator dies; throws NotAHomomorphism naming the first
/// surviving relator.
GroupHom validate_hom(const Presentation& p, std::vector<Permutation> images, PermGroupPtr target = nullptr);

class NotAHomomorphism : public Error {
 public:
  NotAHomomorphism(const std::string& relator)
      : Error("relator " + relator + " is not killed"), relator_(relator) {}
  const std::string& relator() const noexcept { return relator_; }

 private:
  std::string relator_;
};

/// Images by generator name in cycle notation, e.g. {"a1": "(1 2 3)"}.
std::vector<Permutation> images_from_names(const Presentation& p, const std::map<std::string, std::string>& cycles,
                                           std::size_t degree);

/// True iff the subgroup generated by the images of `subgroup` has exactly
/// `expected_order` elements.
bool injective_on(const GroupHom& h, std::span<const Word> subgroup, std::size_t expected_order,
                  std::size_t cap = kDefaultClosureCap);

struct CosetAction {
  std::size_t index = 0;
  /// Per group generator, its action on cosets (coset 0 = the subgroup).
  std::vector<Permutation> generator_actions;
  /// Coset number of each group element.
  std::vector<std::size_t> coset_of;
};

/// Right cosets Hx of H = subgroup_elements in the group; cosets are numbered
/// by their first element in discovery order.
CosetAction coset_action(const PermGroup& group, std::span<const Permutation> subgroup_elements);
/// Action of arbitrary elements of the group on the cosets of `action`.
Permutation act_on_cosets(const PermGroup& group, const CosetAction& action, const Permutation& x);

}  // namespace vrkit
