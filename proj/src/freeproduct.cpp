#include <deque>
#include <set>

#include "vrkit/bassserre.hpp"
#include "vrkit/error.hpp"

namespace vrkit {

namespace {

void push_letter(const std::vector<FiniteGroupTable>& blocks, FreeProductWord& w, FreeProductLetter l) {
  if (l.block >= 0) {
    const FiniteGroupTable& t = blocks[static_cast<std::size_t>(l.block)];
    if (l.value == t.identity()) return;
    if (!w.empty() && w.back().block == l.block) {
      std::size_t m = t.mul(w.back().value, l.value);
      w.pop_back();
      if (m != t.identity()) w.push_back({l.block, m, false});
      return;
    }
    w.push_back({l.block, l.value, false});
    return;
  }
  if (!w.empty() && w.back().block < 0 && w.back().value == l.value && w.back().inverse != l.inverse) {
    w.pop_back();
    return;
  }
  w.push_back(l);
}

void check_letter(const std::vector<FiniteGroupTable>& blocks, std::size_t free_rank, const FreeProductLetter& l) {
  if (l.block >= 0) {
    if (static_cast<std::size_t>(l.block) >= blocks.size()) throw InvalidArgument("letter names a missing block");
    if (l.value >= blocks[static_cast<std::size_t>(l.block)].size()) throw InvalidArgument("block element out of range");
  } else if (l.value >= free_rank) {
    throw InvalidArgument("free letter out of range");
  }
}

}  // namespace

FreeProductWord free_product_multiply(const std::vector<FiniteGroupTable>& blocks, const FreeProductWord& a,
                                      const FreeProductWord& b) {
  FreeProductWord out;
  for (const FreeProductLetter& l : a) push_letter(blocks, out, l);
  for (const FreeProductLetter& l : b) push_letter(blocks, out, l);
  return out;
}

FreeProductOrder free_product_order(const std::vector<FiniteGroupTable>& blocks, std::size_t free_rank,
                                    const std::vector<FreeProductWord>& gens, std::size_t cap) {
  std::vector<FreeProductWord> reduced;
  for (const FreeProductWord& g : gens) {
    for (const FreeProductLetter& l : g) check_letter(blocks, free_rank, l);
    reduced.push_back(free_product_multiply(blocks, {}, g));
  }
  FreeProductOrder out;
  out.cap = cap;
  std::set<FreeProductWord> seen{FreeProductWord{}};
  std::vector<FreeProductWord> elements{FreeProductWord{}};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const FreeProductWord& g : reduced) {
      FreeProductWord x = free_product_multiply(blocks, elements[i], g);
      if (seen.count(x)) continue;
      if (elements.size() >= cap) return out;
      seen.insert(x);
      elements.push_back(std::move(x));
    }
  out.order = elements.size();
  out.elements = std::move(elements);
  return out;
}

}  // namespace vrkit
