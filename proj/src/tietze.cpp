#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "vrkit/error.hpp"
#include "vrkit/fpgroup.hpp"

namespace vrkit {

nlohmann::json TietzeMove::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::eliminate_generator:
      j = {{"move", "eliminate_generator"}, {"generator", generator}, {"word", word}};
      break;
    case Kind::add_generator:
      j = {{"move", "add_generator"}, {"generator", generator}, {"word", word}};
      break;
    case Kind::remove_relator:
      j = {{"move", "remove_relator"}, {"relator", before}, {"reason", reason}};
      break;
    case Kind::replace_relator:
      j = {{"move", "replace_relator"}, {"before", before}, {"after", after}, {"reason", reason}};
      break;
  }
  return j;
}

TietzeTrail TietzeTrail::identity(const AlphabetPtr& alphabet) {
  TietzeTrail t;
  t.original = alphabet;
  t.final = alphabet;
  for (std::size_t g = 0; g < alphabet->size(); ++g) {
    t.forward_map.push_back(Word::generator(alphabet, g));
    t.backward_map.push_back(Word::generator(alphabet, g));
  }
  return t;
}

nlohmann::json TietzeTrail::to_json() const {
  nlohmann::json moves_json = nlohmann::json::array();
  for (const TietzeMove& m : moves) moves_json.push_back(m.to_json());
  nlohmann::json fwd = nlohmann::json::object();
  for (std::size_t g = 0; g < forward_map.size(); ++g) fwd[original->name(g)] = forward_map[g].to_string();
  nlohmann::json bwd = nlohmann::json::object();
  for (std::size_t g = 0; g < backward_map.size(); ++g) bwd[final->name(g)] = backward_map[g].to_string();
  return {{"original_generators", original->names()},
          {"final_generators", final->names()},
          {"moves", moves_json},
          {"forward", fwd},
          {"backward", bwd}};
}

namespace {

std::size_t occurrences(const LetterWord& w, std::size_t g) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [g](Letter l) { return letter_generator(l) == g; }));
}

LetterWord substitute_letters(const LetterWord& w, std::size_t g, const LetterWord& image,
                              const LetterWord& image_inverse) {
  LetterWord out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (letter_generator(l) != g) {
      out.push_back(l);
    } else {
      const LetterWord& img = letter_is_inverse(l) ? image_inverse : image;
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  free_reduce(out);
  return out;
}

class Simplifier {
 public:
  explicit Simplifier(const Presentation& p) : original_(p.alphabet) {
    const std::size_t n = p.generator_count();
    names_ = p.alphabet->names();
    active_.assign(n, true);
    protected_.assign(n, false);
    order_key_.resize(n);
    std::iota(order_key_.begin(), order_key_.end(), 0);
    for (std::size_t g = 0; g < n; ++g) {
      forward_.push_back({make_letter(g, false)});
      backward_.push_back({make_letter(g, false)});
    }
    for (const Word& r : p.relators) relators_.push_back(r.letters());
  }

  std::size_t moves() const { return moves_.size(); }
  void protect(std::size_t g) { protected_[g] = true; }

  void add_generator(const std::string& name, std::size_t slot_of, const LetterWord& definition) {
    if (!Alphabet::valid_name(name)) throw AlphabetError("invalid generator name '" + name + "'");
    for (std::size_t g = 0; g < names_.size(); ++g)
      if (active_[g] && names_[g] == name) throw AlphabetError("duplicate generator name '" + name + "'");
    const std::size_t g = names_.size();
    names_.push_back(name);
    active_.push_back(true);
    protected_.push_back(false);
    order_key_.push_back(order_key_[slot_of]);
    // definition is over the working alphabet; express it over the original.
    LetterWord back;
    for (Letter l : definition) {
      const LetterWord& b = backward_[letter_generator(l)];
      if (letter_is_inverse(l)) {
        LetterWord inv = inverse_word(b);
        back.insert(back.end(), inv.begin(), inv.end());
      } else {
        back.insert(back.end(), b.begin(), b.end());
      }
    }
    free_reduce(back);
    backward_.push_back(back);
    LetterWord rel{make_letter(g, true)};
    rel.insert(rel.end(), definition.begin(), definition.end());
    cyclic_reduce(rel);
    relators_.push_back(rel);
    moves_.push_back({TietzeMove::Kind::add_generator, name, text(definition), {}, {}, "new generator"});
  }

  /// Eliminates generator g using relator index ri, where g occurs exactly once.
  void eliminate(std::size_t g, std::size_t ri) {
    LetterWord r = relators_[ri];
    auto it = std::find_if(r.begin(), r.end(), [g](Letter l) { return letter_generator(l) == g; });
    std::rotate(r.begin(), it, r.end());
    bool inverse = letter_is_inverse(r.front());
    LetterWord rest(r.begin() + 1, r.end());
    LetterWord image = inverse ? rest : inverse_word(rest);
    LetterWord image_inv = inverse_word(image);
    moves_.push_back({TietzeMove::Kind::eliminate_generator, names_[g], text(image), {}, {}, "defined by " + text(relators_[ri])});
    relators_.erase(relators_.begin() + static_cast<std::ptrdiff_t>(ri));
    for (LetterWord& w : relators_) {
      w = substitute_letters(w, g, image, image_inv);
      cyclic_reduce(w);
    }
    for (LetterWord& w : forward_) w = substitute_letters(w, g, image, image_inv);
    active_[g] = false;
  }

  /// Removes identity relators and relators equal (up to rotation and
  /// inversion) to an earlier one. Returns true when anything was removed.
  bool prune(std::size_t& budget) {
    bool changed = false;
    std::set<LetterWord> seen;
    std::vector<LetterWord> kept;
    for (LetterWord& w : relators_) {
      cyclic_reduce(w);
      if (w.empty()) {
        changed = true;
        moves_.push_back({TietzeMove::Kind::remove_relator, {}, {}, "1", {}, "identity"});
        if (budget) --budget;
        continue;
      }
      LetterWord key = cyclic_canonical(w);
      if (!seen.insert(key).second) {
        changed = true;
        moves_.push_back({TietzeMove::Kind::remove_relator, {}, {}, text(w), {}, "duplicate"});
        if (budget) --budget;
        continue;
      }
      kept.push_back(std::move(w));
    }
    relators_ = std::move(kept);
    return changed;
  }

  /// Greedy generator elimination. Candidates come from the shortest relators
  /// first; only eliminations that do not lengthen the pruned presentation
  /// are taken. Ties: smaller resulting length, then fewer occurrences of the
  /// generator, then larger generator index.
  bool try_eliminate() {
    std::vector<std::size_t> order(relators_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return relators_[a].size() < relators_[b].size(); });
    const std::size_t current = total_length();
    struct Candidate {
      std::size_t relator_length;
      std::size_t result_length;
      std::size_t occurrences;
      std::size_t generator;
      std::size_t relator;
    };
    std::optional<Candidate> best;
    for (std::size_t ri : order) {
      const LetterWord& r = relators_[ri];
      if (best && r.size() > best->relator_length) break;
      std::vector<std::size_t> gens;
      for (Letter l : r) gens.push_back(letter_generator(l));
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      for (std::size_t g : gens) {
        if (protected_[g] || occurrences(r, g) != 1) continue;
        std::size_t result = trial_length(g, ri);
        if (result > current) continue;
        std::size_t occ = 0;
        for (const LetterWord& w : relators_) occ += occurrences(w, g);
        Candidate c{r.size(), result, occ, g, ri};
        auto key = [](const Candidate& x) {
          return std::make_tuple(x.relator_length, x.result_length, x.occurrences, ~x.generator);
        };
        if (!best || key(c) < key(*best)) best = c;
      }
    }
    if (!best) return false;
    eliminate(best->generator, best->relator);
    return true;
  }

  /// Replaces the longest available piece of one relator by the shorter
  /// complement from a rotation of another (or its inverse).
  bool try_shorten() {
    struct Best {
      std::size_t gain = 0;
      std::size_t target = 0;
      LetterWord replacement;
      std::size_t source = 0;
    } best;
    for (std::size_t ti = 0; ti < relators_.size(); ++ti) {
      const LetterWord& r = relators_[ti];
      const std::size_t rn = r.size();
      for (std::size_t si = 0; si < relators_.size(); ++si) {
        if (si == ti) continue;
        const LetterWord& s = relators_[si];
        const std::size_t sn = s.size();
        if (sn > rn || sn == 0) continue;
        for (int dir = 0; dir < 2; ++dir) {
          LetterWord sv = dir == 0 ? s : inverse_word(s);
          for (std::size_t sr = 0; sr < sn; ++sr) {
            for (std::size_t a = 0; a < rn; ++a) {
              std::size_t len = 0;
              while (len < sn && len < rn && r[(a + len) % rn] == sv[(sr + len) % sn]) ++len;
              if (2 * len <= sn) continue;
              // Quick bound on the gain before building the word.
              if (2 * len - sn <= best.gain) continue;
              LetterWord repl;
              repl.reserve(rn - len + sn - len);
              for (std::size_t k = sn; k-- > len;) repl.push_back(inverse_letter(sv[(sr + k) % sn]));
              for (std::size_t k = len; k < rn; ++k) repl.push_back(r[(a + k) % rn]);
              cyclic_reduce(repl);
              std::size_t gain = rn - std::min(rn, repl.size());
              if (repl.size() < rn && gain > best.gain) best = {gain, ti, std::move(repl), si};
            }
          }
        }
      }
    }
    if (best.gain == 0) return false;
    moves_.push_back({TietzeMove::Kind::replace_relator, {}, {}, text(relators_[best.target]), text(best.replacement),
                      "shortened using " + text(relators_[best.source])});
    relators_[best.target] = std::move(best.replacement);
    return true;
  }

  TietzeResult finish(bool exhausted) const {
    std::vector<std::size_t> survivors;
    for (std::size_t g = 0; g < names_.size(); ++g)
      if (active_[g]) survivors.push_back(g);
    std::stable_sort(survivors.begin(), survivors.end(),
                     [&](std::size_t a, std::size_t b) { return order_key_[a] < order_key_[b]; });
    std::vector<std::string> final_names;
    std::vector<std::size_t> to_final(names_.size(), 0);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      final_names.push_back(names_[survivors[i]]);
      to_final[survivors[i]] = i;
    }
    AlphabetPtr fin = make_alphabet(final_names);
    auto convert = [&](const LetterWord& w) {
      LetterWord out;
      for (Letter l : w) out.push_back(make_letter(to_final[letter_generator(l)], letter_is_inverse(l)));
      return Word::from_letters(fin, out);
    };
    TietzeResult res;
    res.presentation.alphabet = fin;
    for (const LetterWord& r : relators_) res.presentation.relators.push_back(convert(r));
    res.trail.original = original_;
    res.trail.final = fin;
    res.trail.moves = moves_;
    for (const LetterWord& f : forward_) res.trail.forward_map.push_back(convert(f));
    for (std::size_t g : survivors) res.trail.backward_map.push_back(Word::from_letters(original_, backward_[g]));
    res.budget_exhausted = exhausted;
    return res;
  }

  std::size_t total_length() const {
    std::size_t n = 0;
    for (const LetterWord& w : relators_) n += w.size();
    return n;
  }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t g = 0; g < names_.size(); ++g)
      if (active_[g] && names_[g] == name) return g;
    throw AlphabetError("unknown generator '" + std::string(name) + "'");
  }

  std::size_t relator_count() const { return relators_.size(); }

 private:
  std::string text(const LetterWord& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      if (!out.empty()) out += ' ';
      out += names_[letter_generator(w[i])];
      std::int64_t e = static_cast<std::int64_t>(j - i) * (letter_is_inverse(w[i]) ? -1 : 1);
      if (e != 1) out += "^" + std::to_string(e);
      i = j;
    }
    return out;
  }

  /// Total relator length after eliminating g via relator ri and pruning.
  std::size_t trial_length(std::size_t g, std::size_t ri) const {
    LetterWord r = relators_[ri];
    auto it = std::find_if(r.begin(), r.end(), [g](Letter l) { return letter_generator(l) == g; });
    std::rotate(r.begin(), it, r.end());
    bool inverse = letter_is_inverse(r.front());
    LetterWord rest(r.begin() + 1, r.end());
    LetterWord image = inverse ? rest : inverse_word(rest);
    LetterWord image_inv = inverse_word(image);
    std::set<LetterWord> seen;
    std::size_t total = 0;
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (i == ri) continue;
      LetterWord w = substitute_letters(relators_[i], g, image, image_inv);
      cyclic_reduce(w);
      if (w.empty()) continue;
      if (!seen.insert(cyclic_canonical(w)).second) continue;
      total += w.size();
    }
    return total;
  }

  AlphabetPtr original_;
  std::vector<std::string> names_;
  std::vector<bool> active_;
  std::vector<bool> protected_;
  std::vector<std::size_t> order_key_;
  std::vector<LetterWord> relators_;
  std::vector<LetterWord> forward_;
  std::vector<LetterWord> backward_;
  std::vector<TietzeMove> moves_;
};

}  // namespace

TietzeResult tietze_simplify(const Presentation& p, std::size_t budget) {
  return tietze_simplify(p, TietzeOptions{budget, {}});
}

TietzeResult tietze_simplify(const Presentation& p, const TietzeOptions& options) {
  Simplifier s(p);
  for (const std::string& name : options.keep) s.protect(p.alphabet->index(name));
  std::size_t remaining = options.budget;
  s.prune(remaining);
  for (;;) {
    if (remaining == 0) return s.finish(true);
    if (s.try_eliminate() || s.try_shorten()) {
      --remaining;
      s.prune(remaining);
      continue;
    }
    break;
  }
  return s.finish(false);
}

TietzeResult replace_generator(const Presentation& p, std::string_view old_name, std::string_view new_name,
                               const Word& definition) {
  if (!same_alphabet(definition.alphabet(), p.alphabet)) throw AlphabetError("definition over a different alphabet");
  std::size_t old_g = p.alphabet->index(old_name);
  LetterWord def = definition.letters();
  if (occurrences(def, old_g) != 1)
    throw InvalidArgument("replaced generator must occur exactly once in its definition");
  Simplifier s(p);
  s.add_generator(std::string(new_name), old_g, def);
  s.eliminate(old_g, s.relator_count() - 1);
  std::size_t unlimited = 0;
  s.prune(unlimited);
  return s.finish(false);
}

Word apply_trail(const TietzeTrail& trail, const Word& w) {
  if (!same_alphabet(w.alphabet(), trail.original)) throw AlphabetError("word is not over the trail's original alphabet");
  return substitute(w, trail.forward_map, trail.final);
}

TietzeTrail compose_trails(const TietzeTrail& first, const TietzeTrail& second) {
  if (!same_alphabet(first.final, second.original)) throw AlphabetError("trails do not compose");
  TietzeTrail t;
  t.original = first.original;
  t.final = second.final;
  t.moves = first.moves;
  t.moves.insert(t.moves.end(), second.moves.begin(), second.moves.end());
  for (const Word& w : first.forward_map) t.forward_map.push_back(substitute(w, second.forward_map, second.final));
  for (const Word& w : second.backward_map) t.backward_map.push_back(substitute(w, first.backward_map, first.original));
  return t;
}

bool trail_is_sound(const TietzeTrail& trail, const Presentation& original, const Presentation& simplified,
                    std::string* failure) {
  auto fail = [&](const std::string& why) {
    if (failure) *failure = why;
    return false;
  };
  if (!same_alphabet(trail.original, original.alphabet)) return fail("original alphabet mismatch");
  if (!same_alphabet(trail.final, simplified.alphabet)) return fail("final alphabet mismatch");
  const std::size_t n = original.generator_count();
  const std::size_t m = simplified.generator_count();
  if (trail.forward_map.size() != n || trail.backward_map.size() != m) return fail("map arity mismatch");

  IntMatrix orig_rel = relation_matrix(original);
  Lattice orig_rows(n, orig_rel.rows() ? orig_rel : IntMatrix(0, n));
  for (std::size_t g = 0; g < n; ++g) {
    Word round = substitute(trail.forward_map[g], trail.backward_map, trail.original);
    auto sums = round.exponent_sums();
    std::vector<BigInt> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = BigInt(sums[i]) - (i == g ? 1 : 0);
    if (!orig_rows.contains(diff)) return fail("backward(forward(" + original.alphabet->name(g) + ")) differs in the abelianization");
  }
  IntMatrix new_rel = relation_matrix(simplified);
  Lattice new_rows(m, new_rel.rows() ? new_rel : IntMatrix(0, m));
  for (const Word& r : original.relators) {
    Word img = apply_trail(trail, r);
    auto sums = img.exponent_sums();
    std::vector<BigInt> v(sums.begin(), sums.end());
    if (!new_rows.contains(v)) return fail("relator " + r.to_string() + " leaves the new relation lattice");
  }
  return true;
}

}  // namespace vrkit
