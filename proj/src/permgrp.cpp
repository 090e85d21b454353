#include "vrkit/permgrp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "vrkit/error.hpp"

namespace vrkit {

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), 0U);
  return p;
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
  std::vector<bool> hit(images.size(), false);
  for (std::uint32_t x : images) {
    if (x >= images.size() || hit[x]) throw InvalidArgument("images do not form a bijection");
    hit[x] = true;
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t pos = 0;
  std::size_t max_point = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos == text.size()) throw ParseError("empty permutation", pos);
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '('", pos);
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip();
      if (pos >= text.size()) throw ParseError("unterminated cycle", pos);
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      std::uint32_t point = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), point);
      if (ec != std::errc() || point == 0) throw ParseError("expected a positive point", pos);
      pos = static_cast<std::size_t>(ptr - text.data());
      cycle.push_back(point - 1);
      max_point = std::max<std::size_t>(max_point, point);
    }
    cycles.push_back(std::move(cycle));
    skip();
  }
  Permutation p = identity(std::max(degree, max_point));
  std::vector<bool> moved(p.degree(), false);
  for (const auto& c : cycles) {
    for (std::uint32_t x : c) {
      if (moved[x]) throw ParseError("point repeated in cycle notation", 0);
      moved[x] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) p.images_[c[i]] = c[(i + 1) % c.size()];
  }
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation q;
  q.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) q.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return q;
}

std::size_t Permutation::order() const {
  std::size_t ord = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Permutation Permutation::extended(std::size_t degree) const {
  if (degree < images_.size()) throw InvalidArgument("cannot shrink a permutation");
  Permutation p = identity(degree);
  std::copy(images_.begin(), images_.end(), p.images_.begin());
  return p;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      first = false;
      os << j + 1;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw InvalidArgument("degree mismatch in compose");
  std::vector<std::uint32_t> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q[p[i]];
  return Permutation::from_images(std::move(img));
}

Permutation power(const Permutation& p, std::int64_t k) {
  Permutation base = k < 0 ? p.inverse() : p;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  n %= base.order();
  Permutation out = Permutation::identity(p.degree());
  for (std::uint64_t i = 0; i < n; ++i) out = compose(out, base);
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (std::uint32_t x : p.images()) h = (h ^ x) * 1099511628211ULL;
  return h;
}

std::vector<Permutation> closure(std::span<const Permutation> gens, std::size_t degree, std::size_t cap) {
  if (cap < 1) throw InvalidArgument("closure cap must be positive");
  for (const Permutation& g : gens)
    if (g.degree() != degree) throw InvalidArgument("generator degree mismatch");
  std::vector<Permutation> elements{Permutation::identity(degree)};
  std::unordered_map<Permutation, std::size_t, PermutationHash> seen{{elements[0], 0}};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const Permutation& g : gens) {
      Permutation x = compose(elements[i], g);
      if (seen.count(x)) continue;
      if (elements.size() >= cap) throw CapExceeded("permutation group closure exceeds cap " + std::to_string(cap));
      seen.emplace(x, elements.size());
      elements.push_back(std::move(x));
    }
  }
  return elements;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t cap)
    : degree_(degree), generators_(std::move(generators)) {
  elements_ = closure(generators_, degree_, cap);
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::ptrdiff_t PermGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::size_t PermGroup::multiply(std::size_t a, std::size_t b) const {
  return static_cast<std::size_t>(index_of(compose(elements_[a], elements_[b])));
}

std::size_t PermGroup::inverse(std::size_t a) const {
  return static_cast<std::size_t>(index_of(elements_[a].inverse()));
}

PermGroupPtr named_group(std::string_view name) {
  auto make = [&](std::size_t degree, std::vector<std::string> cycles) {
    std::vector<Permutation> gens;
    for (const auto& c : cycles) gens.push_back(Permutation::parse(c, degree));
    auto g = std::make_shared<PermGroup>(degree, std::move(gens));
    g->set_name(std::string(name));
    return PermGroupPtr(g);
  };
  if (name == "A4") return make(4, {"(1 2 3)", "(2 3 4)"});
  if (name == "A5") return make(5, {"(1 2 3)", "(2 3 4)", "(3 4 5)"});
  if (name == "S3") return make(3, {"(1 2 3)", "(1 2)"});
  if (name == "S4") return make(4, {"(1 2 3 4)", "(1 2)"});
  if (name == "S5") return make(5, {"(1 2 3 4 5)", "(1 2)"});
  if (name.size() >= 2 && name[0] == 'Z') {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size() && n >= 2 && n <= 12) {
      std::string cycle = "(";
      for (std::size_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
      return make(n, {cycle});
    }
  }
  if (name.find('(') != std::string_view::npos) {
    std::vector<Permutation> gens;
    std::size_t degree = 0;
    std::size_t start = 0;
    while (start <= name.size()) {
      std::size_t end = name.find(';', start);
      if (end == std::string_view::npos) end = name.size();
      std::string_view piece = name.substr(start, end - start);
      if (piece.find('(') != std::string_view::npos) {
        gens.push_back(Permutation::parse(piece));
        degree = std::max(degree, gens.back().degree());
      }
      start = end + 1;
    }
    for (auto& g : gens) g = g.extended(degree);
    auto g = std::make_shared<PermGroup>(degree, std::move(gens));
    g->set_name(std::string(name));
    return g;
  }
  throw InvalidArgument("unknown group name '" + std::string(name) + "'");
}

Permutation evaluate_word(const Word& w, std::span<const Permutation> images, std::size_t degree) {
  if (images.size() != w.alphabet()->size()) throw AlphabetError("one image per generator required");
  Permutation out = Permutation::identity(degree);
  for (const Syllable& s : w.syllables()) out = compose(out, power(images[s.generator], s.exponent));
  return out;
}

Permutation GroupHom::evaluate(const Word& w) const {
  if (!same_alphabet(w.alphabet(), domain.alphabet)) throw AlphabetError("word not over the domain alphabet");
  return evaluate_word(w, images, degree());
}

nlohmann::json GroupHom::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t g = 0; g < images.size(); ++g) j[domain.alphabet->name(g)] = images[g].to_string();
  return j;
}

GroupHom validate_hom(const Presentation& p, std::vector<Permutation> images, PermGroupPtr target) {
  if (images.size() != p.generator_count()) throw InvalidArgument("one image per generator required");
  std::size_t degree = target ? target->degree() : 0;
  for (const auto& im : images) degree = std::max(degree, im.degree());
  for (auto& im : images)
    if (im.degree() != degree) im = im.extended(degree);
  if (target)
    for (const auto& im : images)
      if (!target->contains(im)) throw InvalidArgument("image " + im.to_string() + " lies outside the target group");
  GroupHom h{p, std::move(target), std::move(images)};
  for (const Word& r : p.relators)
    if (!h.evaluate(r).is_identity()) throw NotAHomomorphism(r.to_string());
  return h;
}

std::vector<Permutation> images_from_names(const Presentation& p, const std::map<std::string, std::string>& cycles,
                                           std::size_t degree) {
  std::vector<Permutation> out;
  for (const std::string& name : p.alphabet->names()) {
    auto it = cycles.find(name);
    if (it == cycles.end()) throw AlphabetError("no image given for generator '" + name + "'");
    out.push_back(Permutation::parse(it->second, degree));
    degree = std::max(degree, out.back().degree());
  }
  for (auto& x : out) x = x.extended(degree);
  return out;
}

bool injective_on(const GroupHom& h, std::span<const Word> subgroup, std::size_t expected_order, std::size_t cap) {
  std::vector<Permutation> gens;
  for (const Word& w : subgroup) gens.push_back(h.evaluate(w));
  return closure(gens, h.degree(), cap).size() == expected_order;
}

CosetAction coset_action(const PermGroup& group, std::span<const Permutation> subgroup_elements) {
  const auto& elems = group.elements();
  std::vector<std::size_t> sub;
  for (const Permutation& h : subgroup_elements) {
    auto i = group.index_of(h);
    if (i < 0) throw InvalidArgument("subgroup element outside the group");
    sub.push_back(static_cast<std::size_t>(i));
  }
  if (sub.empty()) throw InvalidArgument("subgroup must contain the identity");
  // Closure check: the product of any two subgroup elements stays inside.
  std::vector<bool> in_sub(elems.size(), false);
  for (std::size_t i : sub) in_sub[i] = true;
  if (!in_sub[0]) throw InvalidArgument("subgroup must contain the identity");
  for (std::size_t a : sub)
    for (std::size_t b : sub)
      if (!in_sub[group.multiply(a, b)]) throw InvalidArgument("subgroup elements are not closed");

  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  CosetAction out;
  out.coset_of.assign(elems.size(), unset);
  std::vector<std::size_t> representative;
  for (std::size_t x = 0; x < elems.size(); ++x) {
    if (out.coset_of[x] != unset) continue;
    for (std::size_t h : sub) out.coset_of[group.multiply(h, x)] = representative.size();
    representative.push_back(x);
  }
  out.index = representative.size();
  for (const Permutation& g : group.generators()) out.generator_actions.push_back(act_on_cosets(group, out, g));
  (void)representative;
  return out;
}

Permutation act_on_cosets(const PermGroup& group, const CosetAction& action, const Permutation& x) {
  auto xi = group.index_of(x);
  if (xi < 0) throw InvalidArgument("element outside the group");
  std::vector<std::uint32_t> img(action.index);
  // Coset c contains some element y; Hy * x = H(yx).
  std::vector<std::size_t> rep(action.index, static_cast<std::size_t>(-1));
  for (std::size_t y = 0; y < action.coset_of.size(); ++y)
    if (rep[action.coset_of[y]] == static_cast<std::size_t>(-1)) rep[action.coset_of[y]] = y;
  for (std::size_t c = 0; c < action.index; ++c)
    img[c] = static_cast<std::uint32_t>(action.coset_of[group.multiply(rep[c], static_cast<std::size_t>(xi))]);
  return Permutation::from_images(std::move(img));
}

}  // namespace vrkit
