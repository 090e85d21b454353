#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vrkit/fpgroup.hpp"
#include "vrkit/intlin.hpp"

using namespace vrkit;

namespace {
IntMatrix M(const std::vector<std::vector<BigInt>>& rows, std::size_t cols = 0) { return IntMatrix::from_rows(rows, cols); }

void check_snf(const IntMatrix& a) {
  SNFResult r = snf(a);
  CHECK(r.U * a * r.V == r.D);
  CHECK(abs(oracle::det(oracle::to_mat(r.U))) == 1);
  CHECK(abs(oracle::det(oracle::to_mat(r.V))) == 1);
  auto d = r.diagonal();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) CHECK(r.D(i, j) == 0);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (d[i] == 0) CHECK(d[i + 1] == 0);
    else CHECK(d[i + 1] % d[i] == 0);
  }
}
}  // namespace

TEST_CASE("snf examples") {
  SNFResult r = snf(M({{3, 0}, {0, 3}, {2, 2}}));
  CHECK(r.diagonal() == std::vector<BigInt>{1, 3});
  CHECK(snf(IntMatrix::identity(3)).D == IntMatrix::identity(3));
  CHECK(snf(IntMatrix(2, 3)).D.is_zero());
  CHECK(snf(IntMatrix(0, 4)).diagonal().empty());
}

TEST_CASE("snf against determinantal divisors and the naive reducer") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int it = 0; it < 150; ++it) {
    std::size_t m = dim(rng), n = dim(rng);
    auto a = oracle::random_matrix(rng, m, n, -20, 20);
    if (it % 5 == 0)  // force rank deficiency
      for (std::size_t j = 0; j < n; ++j) a[m - 1][j] = a[0][j] * 2;
    IntMatrix A = M(a, n);
    check_snf(A);
    auto d = snf(A).diagonal();
    CHECK(d == oracle::invariant_factors(a, m, n));
    CHECK(d == oracle::naive_snf(a));
  }
}

TEST_CASE("hermite normal form and kernels") {
  IntMatrix u;
  IntMatrix h = hermite_normal_form(M({{2, 4}, {6, 8}}), &u);
  CHECK(u * M({{2, 4}, {6, 8}}) == h);
  CHECK(h == M({{2, 0}, {0, 4}}));
  IntMatrix k = left_kernel(M({{1, 2}, {2, 4}, {0, 1}}));
  CHECK(k.rows() == 1);
  CHECK((k * M({{1, 2}, {2, 4}, {0, 1}})).is_zero());
}

TEST_CASE("lattices") {
  Lattice a(2, M({{1, 1}})), b(2, M({{1, -1}}));
  Lattice s = lattice_sum(a, b);
  CHECK(s == Lattice(2, M({{1, 1}, {0, 2}})));
  CHECK(sublattice_index(s) == BigInt(2));
  // Residues mod 2: exactly the vectors with even coordinate sum.
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) {
      std::vector<BigInt> v{x, y};
      CHECK(s.contains(v) == ((x + y) % 2 == 0));
    }
  CHECK(lattice_intersection(Lattice(2, M({{1, 0}})), Lattice(2, M({{0, 1}}))).rank() == 0);
  CHECK(lattice_sum(a, a) == a);
  CHECK(sublattice_index(Lattice::standard(4)) == BigInt(1));
  CHECK(!sublattice_index(Lattice(2, M({{1, 0}}))));
  CHECK(lattice_intersection(Lattice(2, M({{2, 0}, {0, 1}})), Lattice(2, M({{1, 0}, {0, 3}}))) ==
        Lattice(2, M({{2, 0}, {0, 3}})));
}

TEST_CASE("invariant complements") {
  std::vector<IntMatrix> swap{M({{0, 1}, {1, 0}})};
  Lattice r = invariant_complement(swap, Lattice(2, M({{1, 1}})));
  CHECK(r == Lattice(2, M({{1, -1}})));
  CHECK(sublattice_index(lattice_sum(r, Lattice(2, M({{1, 1}})))) == BigInt(2));

  std::vector<IntMatrix> none;
  CHECK(invariant_complement(none, Lattice(3, M({{1, 0, 0}}))) == Lattice(3, M({{0, 1, 0}, {0, 0, 1}})));

  std::vector<IntMatrix> minus{M({{-1, 0}, {0, -1}})};
  CHECK(invariant_complement(minus, Lattice(2, M({{1, 0}}))) == Lattice(2, M({{0, 1}})));

  // T must be invariant.
  CHECK_THROWS(invariant_complement(swap, Lattice(2, M({{1, 0}}))));
}

TEST_CASE("abelian invariants against counting homomorphisms to Z/60") {
  // |Hom(A, Z/M)| = prod gcd(d_i, M) * M^rank, counted by brute force.
  std::mt19937_64 rng(5);
  const int mod = 60;
  for (int it = 0; it < 25; ++it) {
    std::size_t n = 1 + it % 3, m = 1 + (it / 3) % 3;
    auto a = oracle::random_matrix(rng, m, n, -6, 6);
    std::vector<std::string> gens;
    std::vector<std::string> rels;
    for (std::size_t j = 0; j < n; ++j) gens.push_back("x" + std::to_string(j + 1));
    for (const auto& row : a) {
      std::string r;
      for (std::size_t j = 0; j < n; ++j)
        if (row[j] != 0) r += (r.empty() ? "" : " ") + gens[j] + "^" + row[j].str();
      if (!r.empty()) rels.push_back(r);
    }
    AbelianInvariants inv = abelian_invariants(make_presentation(gens, rels));
    long long expect = 1;
    for (const BigInt& d : inv.torsion) expect *= static_cast<long long>(oracle::gcd(d, mod));
    for (std::size_t k = 0; k < inv.free_rank; ++k) expect *= mod;
    long long count = 0;
    std::vector<int> x(n, 0);
    for (;;) {
      bool ok = true;
      for (const auto& row : a) {
        long long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += static_cast<long long>(row[j]) * x[j];
        if (((s % mod) + mod) % mod != 0) ok = false;
      }
      count += ok;
      std::size_t j = 0;
      while (j < n && ++x[j] == mod) x[j++] = 0;
      if (j == n) break;
    }
    CHECK(count == expect);
  }
}
