#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hfkcable/homalg.hpp"
#include "support/oracles.hpp"

using namespace hfk;

namespace {

using Dense = std::vector<std::vector<Int>>;

Dense dense(std::size_t r, std::size_t c) { return Dense(r, std::vector<Int>(c, 0)); }

Dense identity(std::size_t n) {
  Dense d = dense(n, n);
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

Dense mul(const Dense& a, const Dense& b) {
  const std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
  Dense out = dense(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

// A random unimodular matrix and its inverse, as a product of elementary moves.
std::pair<Dense, Dense> random_unimodular(std::size_t n, std::mt19937& rng, int moves = 12) {
  Dense w = identity(n), winv = identity(n);
  if (n < 2) return {w, winv};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int s = 0; s < moves; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const Int c = coef(rng);
    // w <- w * (I + c e_ij): column j += c * column i
    for (std::size_t r = 0; r < n; ++r) w[r][j] += c * w[r][i];
    // winv <- (I - c e_ij) * winv: row i -= c * row j
    for (std::size_t r = 0; r < n; ++r) winv[i][r] -= c * winv[j][r];
  }
  return {w, winv};
}

// from_dense loses the column count of a matrix with no rows.
IntMatrix shaped(const Dense& d, std::size_t r, std::size_t c) {
  return r == 0 ? IntMatrix(0, c) : IntMatrix::from_dense(d);
}

std::vector<Int> diag_of(const IntMatrix& d) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d.at(i, i) != 0) out.push_back(d.at(i, i));
  return out;
}

void expect_valid_snf(const IntMatrix& m) {
  const SmithForm f = smith_normal_form(m);
  ASSERT_EQ(f.U * m * f.V, f.D);
  for (const auto& [k, v] : f.D.entries()) EXPECT_EQ(k.first, k.second);
  for (std::size_t i = 0; i + 1 < f.diagonal.size(); ++i) EXPECT_EQ(f.diagonal[i + 1] % f.diagonal[i], 0);
  for (const auto& d : f.diagonal) EXPECT_GT(d, 0);
  EXPECT_EQ(abs_int(oracle::bareiss_det(f.U.to_dense())), 1);
  EXPECT_EQ(abs_int(oracle::bareiss_det(f.V.to_dense())), 1);
  EXPECT_EQ(diag_of(f.D), f.diagonal);
}

}  // namespace

TEST(IntMatrix, StoresNoZeros) {
  IntMatrix m(2, 2);
  m.set(0, 1, 5);
  m.set(0, 1, 0);
  EXPECT_TRUE(m.is_zero());
  m.add(1, 1, 3);
  m.add(1, 1, -3);
  EXPECT_EQ(m.nonzeros(), 0u);
}

TEST(IntMatrix, OutOfRangeThrows) {
  IntMatrix m(2, 3);
  EXPECT_THROW(m.set(2, 0, 1), std::exception);
}

TEST(SmithNormalForm, OneByOne) {
  const auto f = smith_normal_form(IntMatrix::from_dense({{6}}));
  EXPECT_EQ(f.D, IntMatrix::from_dense({{6}}));
  EXPECT_EQ(f.U, IntMatrix::from_dense({{1}}));
  EXPECT_EQ(f.V, IntMatrix::from_dense({{1}}));
}

TEST(SmithNormalForm, TwoByTwo) {
  const auto m = IntMatrix::from_dense({{2, 4}, {6, 8}});
  const auto f = smith_normal_form(m);
  EXPECT_EQ(f.diagonal, (std::vector<Int>{2, 4}));
  EXPECT_EQ(f.diagonal, oracle::determinantal_factors(m.to_dense()));
  expect_valid_snf(m);
}

TEST(SmithNormalForm, ZeroMatrix) {
  const IntMatrix z(3, 2);
  const auto f = smith_normal_form(z);
  EXPECT_TRUE(f.D.is_zero());
  EXPECT_EQ(f.D.rows(), 3u);
  EXPECT_EQ(f.D.cols(), 2u);
  EXPECT_EQ(f.U, IntMatrix::identity(3));
  EXPECT_EQ(f.V, IntMatrix::identity(2));
}

TEST(SmithNormalForm, NegativeAndNonPrincipalPivot) {
  expect_valid_snf(IntMatrix::from_dense({{-4, 6}, {10, -14}}));
  expect_valid_snf(IntMatrix::from_dense({{0, 0, 3}, {0, 0, 0}, {5, 0, 0}}));
  EXPECT_EQ(invariant_factors(IntMatrix::from_dense({{2, 0}, {0, 3}})), (std::vector<Int>{1, 6}));
}

TEST(SmithNormalForm, BigEntriesDoNotOverflow) {
  // Entries beyond 64 bits survive exactly.
  const Int big = Int(1) << 100;
  const auto m = IntMatrix::from_dense({{big, big + 1}, {big * 3, big * 3 + 7}});
  expect_valid_snf(m);
  EXPECT_EQ(invariant_factors(m), oracle::determinantal_factors(m.to_dense()));
}

TEST(SmithNormalForm, RandomAgainstDeterminantalDivisors) {
  std::mt19937 rng(20240901);
  std::uniform_int_distribution<int> dim(1, 4), val(-6, 6), sparsity(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = dim(rng), c = dim(rng);
    Dense d = dense(r, c);
    for (auto& row : d)
      for (auto& x : row) x = sparsity(rng) == 0 ? 0 : val(rng);
    const auto m = IntMatrix::from_dense(d);
    SCOPED_TRACE(trial);
    expect_valid_snf(m);
    EXPECT_EQ(invariant_factors(m), oracle::determinantal_factors(d));
  }
}

TEST(SmithNormalForm, LargerSparseMatrices) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(5, 30), val(-9, 9), density(0, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = dim(rng), c = dim(rng);
    Dense d = dense(r, c);
    for (auto& row : d)
      for (auto& x : row) x = density(rng) < 2 ? val(rng) : 0;
    SCOPED_TRACE(trial);
    expect_valid_snf(IntMatrix::from_dense(d));
  }
}

TEST(AbelianGroup, NormalizesCyclicOrders) {
  const auto g = AbelianGroup::from_cyclic_orders({2, 3});
  EXPECT_EQ(g.free_rank(), 0u);
  EXPECT_EQ(g.torsion(), (std::vector<Int>{6}));
  EXPECT_EQ(AbelianGroup::from_cyclic_orders({4, 6}).torsion(), (std::vector<Int>{2, 12}));
  EXPECT_TRUE(AbelianGroup::from_cyclic_orders({1, 1}).is_zero());
  EXPECT_EQ(AbelianGroup::from_cyclic_orders({0}).free_rank(), 1u);
}

TEST(AbelianGroup, RejectsBrokenChain) {
  EXPECT_THROW(AbelianGroup(0, {3, 4}), std::exception);
  EXPECT_THROW(AbelianGroup(0, {1}), std::exception);
}

TEST(AbelianGroup, ToString) {
  EXPECT_EQ(AbelianGroup().to_string(), "0");
  EXPECT_EQ(AbelianGroup::free(1).to_string(), "Z");
  EXPECT_EQ(AbelianGroup(2, {2}).to_string(), "Z^2+Z/2");
}

TEST(GradedGroup, DropsZeroAndShifts) {
  GradedGroup g;
  g.set(0, AbelianGroup::free(1));
  g.set(1, AbelianGroup());
  EXPECT_EQ(g.groups().size(), 1u);
  const auto s = g.shifted(-2);
  EXPECT_EQ(s.at(-2), AbelianGroup::free(1));
  EXPECT_TRUE(s.at(0).is_zero());
  g.add(0, AbelianGroup::free(2));
  EXPECT_EQ(g.at(0).free_rank(), 3u);
}

TEST(ChainHomology, NoDifferentials) {
  EXPECT_EQ(chain_homology(IntMatrix(1, 0), IntMatrix(0, 1)), AbelianGroup::free(1));
}

TEST(ChainHomology, CokernelOfTwo) {
  const auto h = chain_homology(IntMatrix::from_dense({{2}}), IntMatrix(0, 1));
  EXPECT_EQ(h.free_rank(), 0u);
  EXPECT_EQ(h.torsion(), (std::vector<Int>{2}));
}

TEST(ChainHomology, SingleGeneratorLevel) {
  // The bottom generator of the trefoil staircase alone: Z.
  EXPECT_EQ(chain_homology(IntMatrix(1, 0), IntMatrix(0, 1)).to_string(), "Z");
}

TEST(ChainHomology, Errors) {
  EXPECT_THROW(chain_homology(IntMatrix(2, 1), IntMatrix(1, 3)), DimensionMismatch);
  EXPECT_THROW(chain_homology(IntMatrix::from_dense({{1}}), IntMatrix::from_dense({{1}})), CompositionNonzero);
}

// Random complexes Z^a -> Z^k -> Z^b with known homology, disguised by
// unimodular changes of basis on all three groups.
TEST(ChainHomology, RandomComplexesWithKnownHomology) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> small(0, 3), factor(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r_out = small(rng), r_in = small(rng), extra = small(rng);
    const std::size_t k = r_out + r_in + extra;
    const std::size_t a = r_in + small(rng), b = r_out + small(rng);
    Dense out0 = dense(b, k), in0 = dense(k, a);
    for (std::size_t i = 0; i < r_out; ++i) out0[i][i] = factor(rng);
    std::vector<Int> orders;
    for (std::size_t i = 0; i < r_in; ++i) {
      const Int f = factor(rng);
      in0[r_out + i][i] = f;
      orders.push_back(f);
    }
    auto [w, winv] = random_unimodular(k, rng);
    auto [l, linv] = random_unimodular(b, rng);
    auto [rr, rrinv] = random_unimodular(a, rng);
    const Dense out = mul(mul(l, out0), winv);
    const Dense in = mul(mul(w, in0), rr);
    const auto h = chain_homology(shaped(in, k, a), shaped(out, b, k));
    const auto expect = AbelianGroup::free(extra).direct_sum(AbelianGroup::from_cyclic_orders(orders));
    SCOPED_TRACE(trial);
    EXPECT_EQ(h, expect);
  }
}

// Homology does not depend on the order of the basis.
TEST(ChainHomology, PermutationInvariance) {
  std::mt19937 rng(99);
  const Dense in = {{1, 0}, {1, 2}, {0, 0}, {0, 0}};
  const Dense out = {{0, 0, 1, 1}, {0, 0, 0, 0}};
  const auto base = chain_homology(IntMatrix::from_dense(in), IntMatrix::from_dense(out));
  EXPECT_EQ(base.to_string(), "Z+Z/2");
  std::vector<std::size_t> perm(4);
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 24; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    Dense pin = dense(4, 2), pout = dense(2, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      pin[perm[i]] = in[i];
      for (std::size_t r = 0; r < 2; ++r) pout[r][perm[i]] = out[r][i];
    }
    EXPECT_EQ(chain_homology(IntMatrix::from_dense(pin), IntMatrix::from_dense(pout)), base);
  }
}

// Rank-nullity: rank + nullity = columns, nullity computed from the SNF of V.
TEST(SmithNormalForm, RankNullity) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dim(1, 7), val(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = dim(rng), c = dim(rng);
    Dense d = dense(r, c);
    for (auto& row : d)
      for (auto& x : row) x = val(rng);
    const auto m = IntMatrix::from_dense(d);
    const auto f = smith_normal_form(m);
    // The last (cols - rank) columns of V span the kernel.
    std::size_t kernel = 0;
    for (std::size_t j = f.rank(); j < m.cols(); ++j) {
      IntMatrix col(m.cols(), 1);
      for (std::size_t i = 0; i < m.cols(); ++i) col.set(i, 0, f.V.at(i, j));
      EXPECT_TRUE((m * col).is_zero());
      ++kernel;
    }
    EXPECT_EQ(matrix_rank(m) + kernel, m.cols());
  }
}

// Euler characteristic: alternating generator counts equal alternating
// homology ranks for random three-term complexes.
TEST(ChainHomology, EulerCharacteristicConservation) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> small(0, 3), factor(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    // 0 -> Z^a -d1-> Z^k -d0-> Z^b -> 0
    const std::size_t r1 = small(rng), r0 = small(rng), extra = small(rng);
    const std::size_t k = r0 + r1 + extra, a = r1 + small(rng), b = r0 + small(rng);
    Dense d0 = dense(b, k), d1 = dense(k, a);
    for (std::size_t i = 0; i < r0; ++i) d0[i][i] = factor(rng);
    for (std::size_t i = 0; i < r1; ++i) d1[r0 + i][i] = factor(rng);
    auto [w, winv] = random_unimodular(k, rng);
    const IntMatrix D1 = shaped(mul(w, d1), k, a);
    const IntMatrix D0 = shaped(mul(d0, winv), b, k);
    const auto h2 = chain_homology(IntMatrix(a, 0), D1);
    const auto h1 = chain_homology(D1, D0);
    const auto h0 = chain_homology(D0, IntMatrix(0, b));
    const long long chi_chain = static_cast<long long>(a) - static_cast<long long>(k) + static_cast<long long>(b);
    const long long chi_h = static_cast<long long>(h2.free_rank()) - static_cast<long long>(h1.free_rank()) +
                            static_cast<long long>(h0.free_rank());
    EXPECT_EQ(chi_chain, chi_h);
  }
}
