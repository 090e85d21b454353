#include "vrkit/cosets.hpp"

#include <algorithm>
#include <deque>

namespace vrkit {

namespace {

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t limit) : p_(p), limit_(limit), cols_(2 * p.generator_count()) {}

  void run(const std::vector<LetterWord>& subgroup, const std::vector<LetterWord>& relators) {
    new_coset();
    for (const LetterWord& w : subgroup) scan_and_fill(0, w);
    for (std::size_t c = 0; c < table_.size(); ++c) {
      for (const LetterWord& r : relators) {
        if (!alive(c)) break;
        scan_and_fill(c, r);
      }
      for (std::size_t x = 0; x < cols_ && alive(c); ++x)
        if (table_[c][x] == CosetTable::blank) define(c, x);
    }
  }

  CosetTable result(std::span<const Word> subgroup) const {
    CosetTable t;
    t.presentation = p_;
    t.subgroup_gens.assign(subgroup.begin(), subgroup.end());
    std::vector<std::int64_t> renumber(table_.size(), CosetTable::blank);
    std::size_t n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (alive(c)) renumber[c] = static_cast<std::int64_t>(n++);
    bool complete = true;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(c)) continue;
      std::vector<std::int64_t> row(cols_);
      for (std::size_t x = 0; x < cols_; ++x) {
        std::int64_t d = table_[c][x];
        row[x] = d == CosetTable::blank ? CosetTable::blank : renumber[static_cast<std::size_t>(d)];
        if (row[x] == CosetTable::blank) complete = false;
      }
      t.rows.push_back(std::move(row));
    }
    t.complete = complete;
    return t;
  }

 private:
  bool alive(std::size_t c) const { return parent_[c] == c; }

  std::size_t new_coset() {
    if (table_.size() >= limit_) {
      throw CosetOverflow(limit_, result({}));
    }
    table_.emplace_back(cols_, CosetTable::blank);
    parent_.push_back(table_.size() - 1);
    return table_.size() - 1;
  }

  void define(std::size_t c, std::size_t x) {
    std::size_t d = new_coset();
    table_[c][x] = static_cast<std::int64_t>(d);
    table_[d][x ^ 1U] = static_cast<std::int64_t>(c);
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::size_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::size_t a, std::size_t b, std::deque<std::size_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::size_t e = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < cols_; ++x) {
        std::int64_t fe = table_[e][x];
        if (fe == CosetTable::blank) continue;
        std::size_t f = static_cast<std::size_t>(fe);
        table_[f][x ^ 1U] = CosetTable::blank;
        std::size_t e1 = rep(e);
        std::size_t f1 = rep(f);
        if (table_[e1][x] != CosetTable::blank) {
          merge(f1, static_cast<std::size_t>(table_[e1][x]), queue);
        } else if (table_[f1][x ^ 1U] != CosetTable::blank) {
          merge(e1, static_cast<std::size_t>(table_[f1][x ^ 1U]), queue);
        } else {
          table_[e1][x] = static_cast<std::int64_t>(f1);
          table_[f1][x ^ 1U] = static_cast<std::int64_t>(e1);
        }
      }
    }
  }

  void scan_and_fill(std::size_t c, const LetterWord& w) {
    if (w.empty()) return;
    std::size_t f = c;
    std::size_t b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && table_[f][w[i]] != CosetTable::blank) f = static_cast<std::size_t>(table_[f][w[i++]]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && table_[b][w[j - 1] ^ 1U] != CosetTable::blank)
        b = static_cast<std::size_t>(table_[b][w[--j] ^ 1U]);
      if (i == j) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_[f][w[i]] = static_cast<std::int64_t>(b);
        table_[b][w[i] ^ 1U] = static_cast<std::int64_t>(f);
        return;
      }
      define(f, w[i]);
    }
  }

  const Presentation& p_;
  std::size_t limit_;
  std::size_t cols_;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::size_t> parent_;
};

}  // namespace

std::int64_t CosetTable::trace(std::size_t coset, const Word& w) const {
  std::int64_t c = static_cast<std::int64_t>(coset);
  for (Letter l : w.letters()) {
    c = rows[static_cast<std::size_t>(c)][l];
    if (c == blank) return blank;
  }
  return c;
}

std::string CosetTable::check() const {
  if (rows.empty()) return "table has no cosets";
  const std::size_t n = index();
  for (std::size_t c = 0; c < n; ++c) {
    if (rows[c].size() != columns()) return "row " + std::to_string(c) + " has the wrong width";
    for (std::size_t x = 0; x < columns(); ++x) {
      std::int64_t d = rows[c][x];
      if (d == blank) return "blank entry at coset " + std::to_string(c);
      if (d < 0 || static_cast<std::size_t>(d) >= n) return "entry out of range";
      if (rows[static_cast<std::size_t>(d)][x ^ 1U] != static_cast<std::int64_t>(c))
        return "inverse columns disagree at coset " + std::to_string(c);
    }
  }
  for (const Word& h : subgroup_gens)
    if (trace(0, h) != 0) return "subgroup generator " + h.to_string() + " moves coset 0";
  for (std::size_t c = 0; c < n; ++c)
    for (const Word& r : presentation.relators)
      if (trace(c, r) != static_cast<std::int64_t>(c))
        return "relator " + r.to_string() + " moves coset " + std::to_string(c);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::int64_t d : rows[queue[i]])
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        queue.push_back(static_cast<std::size_t>(d));
      }
  if (queue.size() != n) return "action is not transitive";
  return {};
}

nlohmann::json CosetTable::to_json() const {
  nlohmann::json cols = nlohmann::json::array();
  for (const std::string& g : presentation.alphabet->names()) {
    cols.push_back(g);
    cols.push_back(g + "^-1");
  }
  return {{"index", index()}, {"columns", cols}, {"rows", rows}, {"complete", complete}};
}

CosetTable enumerate_cosets(const Presentation& p, std::span<const Word> subgroup, std::size_t limit,
                            EnumerationStrategy strategy) {
  if (limit < 1) throw InvalidArgument("coset limit must be positive");
  for (const Word& w : subgroup)
    if (!same_alphabet(w.alphabet(), p.alphabet)) throw AlphabetError("subgroup word over a different alphabet");
  std::vector<LetterWord> sub;
  for (const Word& w : subgroup) sub.push_back(w.letters());
  std::vector<LetterWord> rels;
  for (const Word& r : p.relators) rels.push_back(r.letters());
  if (strategy == EnumerationStrategy::reversed) {
    std::reverse(sub.begin(), sub.end());
    std::reverse(rels.begin(), rels.end());
  }
  Enumerator e(p, limit);
  e.run(sub, rels);
  CosetTable t = standardize(e.result(subgroup));
  if (std::string why = t.check(); !why.empty()) throw Error("coset enumeration produced an invalid table: " + why);
  return t;
}

std::size_t group_order(const Presentation& p, std::size_t limit) {
  return enumerate_cosets(p, {}, limit).index();
}

CosetTable standardize(const CosetTable& t) {
  const std::size_t n = t.index();
  std::vector<std::int64_t> number(n, CosetTable::blank);
  std::vector<std::size_t> order{0};
  number[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::int64_t d : t.rows[order[i]]) {
      if (d == CosetTable::blank || number[static_cast<std::size_t>(d)] != CosetTable::blank) continue;
      number[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(order.size());
      order.push_back(static_cast<std::size_t>(d));
    }
  if (order.size() != n) throw InvalidArgument("cannot standardize a disconnected table");
  CosetTable out = t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = t.rows[order[i]];
    for (std::size_t x = 0; x < row.size(); ++x)
      out.rows[i][x] = row[x] == CosetTable::blank ? CosetTable::blank : number[static_cast<std::size_t>(row[x])];
  }
  return out;
}

std::vector<Permutation> perm_rep(const CosetTable& t) {
  if (!t.complete) throw InvalidArgument("coset table is incomplete");
  std::vector<Permutation> out;
  for (std::size_t g = 0; g < t.presentation.generator_count(); ++g) {
    std::vector<std::uint32_t> img(t.index());
    for (std::size_t c = 0; c < t.index(); ++c) img[c] = static_cast<std::uint32_t>(t.rows[c][2 * g]);
    out.push_back(Permutation::from_images(std::move(img)));
  }
  return out;
}

CosetTable table_from_action(const Presentation& p, std::span<const Permutation> actions) {
  if (actions.size() != p.generator_count()) throw InvalidArgument("one action per generator required");
  const std::size_t n = actions.empty() ? 1 : actions.front().degree();
  CosetTable t;
  t.presentation = p;
  t.rows.assign(n, std::vector<std::int64_t>(2 * p.generator_count()));
  for (std::size_t g = 0; g < actions.size(); ++g) {
    if (actions[g].degree() != n) throw InvalidArgument("actions of different degrees");
    for (std::size_t c = 0; c < n; ++c) {
      t.rows[c][2 * g] = actions[g][c];
      t.rows[actions[g][c]][2 * g + 1] = static_cast<std::int64_t>(c);
    }
  }
  t.complete = true;
  t = standardize(t);
  if (std::string why = t.check(); !why.empty()) throw InvalidArgument("action does not give a coset table: " + why);
  return t;
}

}  // namespace vrkit
