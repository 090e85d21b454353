#include "vrkit/intlin.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "vrkit/error.hpp"

namespace vrkit {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Floor division; cpp_int division truncates toward zero.
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<BigInt> IntMatrix::row(std::size_t r) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<std::vector<BigInt>> IntMatrix::to_rows() const {
  std::vector<std::vector<BigInt>> out;
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const BigInt& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::append_row(std::span<const BigInt> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw InvalidArgument("row length mismatch");
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<BigInt> SNFResult::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SNFResult snf(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& k) {
    a.add_row(dst, src, k);
    u.add_row(dst, src, k);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& k) {
    a.add_col(dst, src, k);
    v.add_col(dst, src, k);
  };
  auto swap_r = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    u.swap_rows(x, y);
  };
  auto swap_c = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    v.swap_cols(x, y);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Pivot: smallest nonzero |entry| in the trailing block, first in row-major order.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (!best || abs_big(a(i, j)) < abs_big(a(best->first, best->second)))) best = {{i, j}};
    if (!best) break;
    swap_r(t, best->first);
    swap_c(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        row_op(i, t, -BigInt(a(i, t) / a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        col_op(j, t, -BigInt(a(t, j) / a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is smaller than the pivot; move the smallest into place.
        std::size_t bi = t;
        std::size_t bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0 && abs_big(a(i, t)) < abs_big(a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0 && abs_big(a(t, j)) < abs_big(a(bi, bj))) bi = t, bj = j;
        swap_r(t, bi);
        swap_c(t, bj);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_op(t, *bad_row, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(a), std::move(u), std::move(v)};
}

IntMatrix hermite_normal_form(const IntMatrix& input, IntMatrix* transform) {
  IntMatrix h = input;
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  IntMatrix u = IntMatrix::identity(m);

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < n && pivot_row < m; ++c) {
    // Euclid on column c among rows >= pivot_row.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t r = pivot_row; r < m; ++r)
        if (h(r, c) != 0 && (!best || abs_big(h(r, c)) < abs_big(h(*best, c)))) best = r;
      if (!best) break;
      h.swap_rows(pivot_row, *best);
      u.swap_rows(pivot_row, *best);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < m; ++r) {
        if (h(r, c) == 0) continue;
        BigInt q = h(r, c) / h(pivot_row, c);
        h.add_row(r, pivot_row, -q);
        u.add_row(r, pivot_row, -q);
        if (h(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0) {
      h.negate_row(pivot_row);
      u.negate_row(pivot_row);
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      BigInt q = floor_div(h(r, c), h(pivot_row, c));
      h.add_row(r, pivot_row, -q);
      u.add_row(r, pivot_row, -q);
    }
    ++pivot_row;
  }
  if (transform) *transform = std::move(u);
  return h;
}

namespace {

IntMatrix drop_zero_rows(const IntMatrix& h) {
  IntMatrix out(0, h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    auto row = h.row(r);
    if (std::any_of(row.begin(), row.end(), [](const BigInt& x) { return x != 0; })) out.append_row(row);
  }
  return out;
}

}  // namespace

IntMatrix left_kernel(const IntMatrix& a) {
  IntMatrix u;
  IntMatrix h = hermite_normal_form(a, &u);
  IntMatrix k(0, a.rows());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    bool zero = true;
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (h(r, c) != 0) {
        zero = false;
        break;
      }
    if (zero) k.append_row(u.row(r));
  }
  return drop_zero_rows(hermite_normal_form(k));
}

Lattice::Lattice(std::size_t ambient_dim, const IntMatrix& generators) : dim_(ambient_dim) {
  if (generators.rows() > 0 && generators.cols() != ambient_dim) throw InvalidArgument("lattice dimension mismatch");
  IntMatrix g = generators.rows() == 0 ? IntMatrix(0, ambient_dim) : generators;
  basis_ = drop_zero_rows(hermite_normal_form(g));
}

Lattice Lattice::zero(std::size_t ambient_dim) { return Lattice(ambient_dim, IntMatrix(0, ambient_dim)); }

Lattice Lattice::standard(std::size_t ambient_dim) { return Lattice(ambient_dim, IntMatrix::identity(ambient_dim)); }

bool Lattice::contains(std::span<const BigInt> v) const {
  if (v.size() != dim_) throw InvalidArgument("vector dimension mismatch");
  std::vector<BigInt> rest(v.begin(), v.end());
  // Reduce against the echelon basis.
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    std::size_t p = 0;
    while (basis_(r, p) == 0) ++p;
    for (std::size_t c = 0; c < p; ++c)
      if (rest[c] != 0) return false;
    if (rest[p] % basis_(r, p) != 0) return false;
    BigInt q = rest[p] / basis_(r, p);
    for (std::size_t c = p; c < dim_; ++c) rest[c] -= q * basis_(r, c);
  }
  return std::all_of(rest.begin(), rest.end(), [](const BigInt& x) { return x == 0; });
}

bool Lattice::contains(const Lattice& other) const {
  for (std::size_t r = 0; r < other.basis_.rows(); ++r) {
    auto row = other.basis_.row(r);
    if (!contains(row)) return false;
  }
  return true;
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidArgument("lattice dimension mismatch");
  IntMatrix g(0, a.ambient_dim());
  for (std::size_t r = 0; r < a.rank(); ++r) g.append_row(a.basis().row(r));
  for (std::size_t r = 0; r < b.rank(); ++r) g.append_row(b.basis().row(r));
  return Lattice(a.ambient_dim(), g);
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidArgument("lattice dimension mismatch");
  const std::size_t n = a.ambient_dim();
  if (a.rank() == 0 || b.rank() == 0) return Lattice::zero(n);
  // x * A = y * B  <=>  (x, y) * [A; -B] = 0.
  IntMatrix stacked(0, n);
  for (std::size_t r = 0; r < a.rank(); ++r) stacked.append_row(a.basis().row(r));
  for (std::size_t r = 0; r < b.rank(); ++r) {
    auto row = b.basis().row(r);
    for (auto& x : row) x = -x;
    stacked.append_row(row);
  }
  IntMatrix k = left_kernel(stacked);
  IntMatrix gens(0, n);
  for (std::size_t r = 0; r < k.rows(); ++r) {
    std::vector<BigInt> v(n);
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t c = 0; c < n; ++c) v[c] += k(r, i) * a.basis()(i, c);
    gens.append_row(v);
  }
  return Lattice(n, gens);
}

std::optional<BigInt> sublattice_index(const Lattice& l) {
  if (l.rank() < l.ambient_dim()) return std::nullopt;
  BigInt idx = 1;
  for (std::size_t r = 0; r < l.rank(); ++r) idx *= l.basis()(r, r);
  return abs_big(idx);
}

Lattice transform_lattice(const Lattice& l, const IntMatrix& g) {
  if (l.rank() == 0) return l;
  return Lattice(l.ambient_dim(), l.basis() * g);
}

std::vector<IntMatrix> matrix_group_closure(std::span<const IntMatrix> gens, std::size_t n, std::size_t cap) {
  auto key = [](const IntMatrix& m) { return m.to_rows(); };
  std::vector<IntMatrix> elements{IntMatrix::identity(n)};
  std::map<std::vector<std::vector<BigInt>>, std::size_t> seen{{key(elements[0]), 0}};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const IntMatrix& g : gens) {
      IntMatrix x = elements[i] * g;
      auto k = key(x);
      if (seen.count(k)) continue;
      if (elements.size() >= cap) throw CapExceeded("matrix group closure exceeds cap " + std::to_string(cap));
      seen.emplace(std::move(k), elements.size());
      elements.push_back(std::move(x));
    }
  }
  return elements;
}

namespace {

using RatMatrix = std::vector<std::vector<BigRational>>;

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), std::vector<BigRational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = BigRational(m(r, c));
  return out;
}

RatMatrix mul(const RatMatrix& a, const RatMatrix& b) {
  std::size_t n = a.size();
  std::size_t k = b.size();
  std::size_t m = k ? b[0].size() : 0;
  RatMatrix out(n, std::vector<BigRational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

RatMatrix inverse(RatMatrix a) {
  std::size_t n = a.size();
  RatMatrix inv(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InvalidArgument("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    BigRational d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      BigRational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

Lattice invariant_complement(std::span<const IntMatrix> gens, const Lattice& t, std::size_t cap) {
  const std::size_t n = t.ambient_dim();
  for (const IntMatrix& g : gens) {
    if (g.rows() != n || g.cols() != n) throw InvalidArgument("generator has wrong dimensions");
    BigInt d = determinant(g);
    if (d != 1 && d != -1) throw InvalidArgument("generator is not invertible over Z");
    if (!(transform_lattice(t, g) == t)) throw InvalidArgument("sublattice is not invariant under a generator");
  }
  std::vector<IntMatrix> group = matrix_group_closure(gens, n, cap);

  // Projection onto T ⊗ Q along the coordinate complement of the HNF pivots.
  const IntMatrix& tb = t.basis();
  std::vector<bool> pivot(n, false);
  for (std::size_t r = 0; r < tb.rows(); ++r) {
    std::size_t p = 0;
    while (tb(r, p) == 0) ++p;
    pivot[p] = true;
  }
  IntMatrix b(0, n);
  for (std::size_t r = 0; r < tb.rows(); ++r) b.append_row(tb.row(r));
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot[c]) continue;
    std::vector<BigInt> e(n);
    e[c] = 1;
    b.append_row(e);
  }
  RatMatrix br = to_rational(b);
  RatMatrix keep(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < tb.rows(); ++i) keep[i][i] = 1;
  RatMatrix p0 = mul(mul(inverse(br), keep), br);

  // Average g * P0 * g^-1 over the group (row-vector action).
  RatMatrix avg(n, std::vector<BigRational>(n));
  for (const IntMatrix& g : group) {
    RatMatrix gr = to_rational(g);
    RatMatrix term = mul(mul(gr, p0), inverse(gr));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) avg[i][j] += term[i][j];
  }
  // The kernel of the average equals the kernel of the sum; clear denominators.
  BigInt lcm = 1;
  for (const auto& row : avg)
    for (const auto& x : row) {
      BigInt d = boost::multiprecision::denominator(x);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
  IntMatrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigRational x = avg[i][j] * lcm;
      scaled(i, j) = boost::multiprecision::numerator(x);
    }
  return Lattice(n, left_kernel(scaled));
}

}  // namespace vrkit
