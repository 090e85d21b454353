#include "vrkit/homsearch.hpp"

#include <algorithm>

#include "vrkit/error.hpp"

namespace vrkit {

namespace {

constexpr std::size_t kMaxTableOrder = 5000;
constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

struct RelatorPlan {
  LetterWord letters;
  std::size_t last_generator = 0;
  // Set when last_generator occurs exactly once: its position in `letters`.
  std::optional<std::size_t> solve_at;
};

class Searcher {
 public:
  Searcher(const Presentation& p, const PermGroupPtr& target, const FixedImages& fixed,
           const std::function<bool(const GroupHom&)>& visit)
      : p_(p), target_(target), visit_(visit), n_(p.generator_count()) {
    if (!target) throw InvalidArgument("target group required");
    const std::size_t order = target->order();
    if (order > kMaxTableOrder) throw CapExceeded("target group too large for exhaustive search");
    mult_.assign(order * order, 0);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b) mult_[a * order + b] = target->multiply(a, b);
    inv_.resize(order);
    for (std::size_t a = 0; a < order; ++a) inv_[a] = target->inverse(a);

    fixed_.assign(n_, kUnset);
    for (const auto& [g, perm] : fixed) {
      if (g >= n_) throw InvalidArgument("fixed image for an unknown generator");
      Permutation q = perm.degree() < target->degree() ? perm.extended(target->degree()) : perm;
      auto idx = target->index_of(q);
      if (idx < 0) throw InvalidArgument("fixed image " + perm.to_string() + " lies outside the target");
      fixed_[g] = static_cast<std::size_t>(idx);
    }

    by_last_.resize(n_);
    for (const Word& r : p.relators) {
      RelatorPlan plan;
      plan.letters = r.letters();
      for (Letter l : plan.letters) plan.last_generator = std::max(plan.last_generator, letter_generator(l));
      std::size_t count = 0;
      for (std::size_t i = 0; i < plan.letters.size(); ++i)
        if (letter_generator(plan.letters[i]) == plan.last_generator) {
          ++count;
          plan.solve_at = i;
        }
      if (count != 1) plan.solve_at.reset();
      by_last_[plan.last_generator].push_back(std::move(plan));
    }
    value_.assign(n_, 0);
  }

  std::size_t run() {
    descend(0);
    return visited_;
  }

 private:
  std::size_t letter_value(Letter l) const {
    std::size_t v = value_[letter_generator(l)];
    return letter_is_inverse(l) ? inv_[v] : v;
  }
  std::size_t mul(std::size_t a, std::size_t b) const { return mult_[a * target_->order() + b]; }

  bool relators_hold(std::size_t g) const {
    for (const RelatorPlan& r : by_last_[g]) {
      std::size_t x = 0;
      for (Letter l : r.letters) x = mul(x, letter_value(l));
      if (x != 0) return false;
    }
    return true;
  }

  // Value forced on generator g by a relator in which it occurs once, if any.
  std::optional<std::size_t> forced(std::size_t g) const {
    for (const RelatorPlan& r : by_last_[g]) {
      if (!r.solve_at) continue;
      // r = u x^e v = 1  =>  x^e = u^-1 v^-1
      std::size_t u = 0, v = 0;
      for (std::size_t i = 0; i < *r.solve_at; ++i) u = mul(u, letter_value(r.letters[i]));
      for (std::size_t i = *r.solve_at + 1; i < r.letters.size(); ++i) v = mul(v, letter_value(r.letters[i]));
      std::size_t xe = mul(inv_[u], inv_[v]);
      return letter_is_inverse(r.letters[*r.solve_at]) ? inv_[xe] : xe;
    }
    return std::nullopt;
  }

  bool try_value(std::size_t g, std::size_t v) {
    value_[g] = v;
    if (!relators_hold(g)) return true;
    return descend(g + 1);
  }

  // Returns false when the visitor asked to stop.
  bool descend(std::size_t g) {
    if (g == n_) {
      ++visited_;
      std::vector<Permutation> images;
      for (std::size_t x : value_) images.push_back(target_->elements()[x]);
      GroupHom h{p_, target_, std::move(images)};
      return visit_(h);
    }
    if (fixed_[g] != kUnset) return try_value(g, fixed_[g]);
    if (auto f = forced(g)) return try_value(g, *f);
    for (std::size_t v = 0; v < target_->order(); ++v)
      if (!try_value(g, v)) return false;
    return true;
  }

  const Presentation& p_;
  PermGroupPtr target_;
  const std::function<bool(const GroupHom&)>& visit_;
  std::size_t n_;
  std::vector<std::size_t> mult_;
  std::vector<std::size_t> inv_;
  std::vector<std::size_t> fixed_;
  std::vector<std::vector<RelatorPlan>> by_last_;
  std::vector<std::size_t> value_;
  std::size_t visited_ = 0;
};

}  // namespace

std::size_t for_each_hom(const Presentation& p, const PermGroupPtr& target, const FixedImages& fixed,
                         const std::function<bool(const GroupHom&)>& visit) {
  Searcher s(p, target, fixed, visit);
  return s.run();
}

HomList enumerate_homs(const Presentation& p, const PermGroupPtr& target, const FixedImages& fixed, std::size_t cap) {
  if (cap == 0) throw InvalidArgument("result cap must be positive");
  HomList out;
  for_each_hom(p, target, fixed, [&](const GroupHom& h) {
    if (out.homs.size() >= cap) {
      out.truncated = true;
      return false;
    }
    out.homs.push_back(h);
    return true;
  });
  return out;
}

InjectiveSearch find_injective_on(const Presentation& p, const std::vector<FiniteSubgroupSpec>& subgroups,
                                  const std::vector<PermGroupPtr>& targets, std::size_t budget,
                                  const FixedImages& fixed) {
  InjectiveSearch out;
  for (const PermGroupPtr& target : targets) {
    for_each_hom(p, target, fixed, [&](const GroupHom& h) {
      if (out.examined >= budget) {
        out.budget_exhausted = true;
        return false;
      }
      ++out.examined;
      for (const FiniteSubgroupSpec& s : subgroups)
        if (!injective_on(h, s.generators, s.order)) return true;
      out.hom = h;
      return false;
    });
    if (out.hom) {
      out.report = "found in " + (target->name().empty() ? std::string("target") : target->name()) + " after " +
                   std::to_string(out.examined) + " homomorphisms";
      return out;
    }
    if (out.budget_exhausted) {
      out.report = "budget of " + std::to_string(budget) + " homomorphisms exhausted in " + target->name();
      return out;
    }
  }
  out.report = "no suitable homomorphism among " + std::to_string(out.examined) + " candidates";
  return out;
}

}  // namespace vrkit
