#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms, lattices in Z^n
// and invariant complements of sublattices under finite matrix groups.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vrkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Row-major nested initializer, e.g. {{3,0},{0,3},{2,2}}.
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols_if_empty = 0);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::vector<BigInt> row(std::size_t r) const;
  std::vector<std::vector<BigInt>> to_rows() const;

  bool is_zero() const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& k);
  void add_col(std::size_t dst, std::size_t src, const BigInt& k);
  void negate_row(std::size_t r);
  void append_row(std::span<const BigInt> row);

  std::string to_string() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

BigInt determinant(const IntMatrix& a);

struct SNFResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  /// The min(rows, cols) diagonal entries of D.
  std::vector<BigInt> diagonal() const;
};

/// U * A * V = D with U, V unimodular and d1 | d2 | ... on the diagonal, all >= 0.
SNFResult snf(const IntMatrix& a);

/// Row-style Hermite normal form with positive pivots and reduced entries
/// above each pivot. Zero rows are kept at the bottom. When `transform` is
/// given it receives a unimodular U with U * A = H.
IntMatrix hermite_normal_form(const IntMatrix& a, IntMatrix* transform = nullptr);

/// Z-basis (rows) of { x : x * A = 0 }, in Hermite normal form.
IntMatrix left_kernel(const IntMatrix& a);

class Lattice {
 public:
  /// The sublattice of Z^n spanned by the rows of `generators`.
  Lattice(std::size_t ambient_dim, const IntMatrix& generators);
  static Lattice zero(std::size_t ambient_dim);
  static Lattice standard(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  /// Canonical Hermite basis; equal lattices have equal bases.
  const IntMatrix& basis() const noexcept { return basis_; }
  bool contains(std::span<const BigInt> v) const;
  bool contains(const Lattice& other) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  std::size_t dim_;
  IntMatrix basis_;
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);
/// |Z^n : L|, or nullopt when L has infinite index.
std::optional<BigInt> sublattice_index(const Lattice& l);

/// Image of L under v -> v * g.
Lattice transform_lattice(const Lattice& l, const IntMatrix& g);

inline constexpr std::size_t kMatrixGroupCap = 20000;

/// Enumerates the matrix group generated by `gens`; throws CapExceeded past `cap`.
std::vector<IntMatrix> matrix_group_closure(std::span<const IntMatrix> gens, std::size_t n,
                                            std::size_t cap = kMatrixGroupCap);

/// For a finite group X <= GL_n(Z) given by generators (acting on row
/// vectors, v -> v * g) and an X-invariant sublattice T, returns
/// R = W ∩ Z^n where W is the averaged X-invariant complement of T ⊗ Q.
/// R is X-invariant, T ∩ R = 0 and T + R has finite index in Z^n.
Lattice invariant_complement(std::span<const IntMatrix> gens, const Lattice& t,
                             std::size_t cap = kMatrixGroupCap);

}  // namespace vrkit
