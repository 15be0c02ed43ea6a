#include <gtest/gtest.h>

#include <random>

#include "hamlie/symplectic.hpp"
#include "oracle.hpp"

using namespace hamlie;

namespace {

Grade random_grade(std::mt19937_64& g, std::size_t N, int radius) {
  Grade r(N);
  for (auto& x : r) x = static_cast<std::int64_t>(g() % (2 * radius + 1)) - radius;
  return r;
}

// Flattened N x N matrices as vectors of length N^2.
hamlie::Vector flatten(const SparseMatrix& m) {
  hamlie::Vector v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, x] : m.row(i)) v[i * m.cols() + j] = x;
  return v;
}

}  // namespace

TEST(Symplectic, BasisSpansTheWholeAlgebra) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto alg = build_sp(n);
    const std::size_t N = 2 * n;
    EXPECT_EQ(alg->dim(), 2 * n * n + n);
    // dim {M : M^T J + J M = 0} computed from the linear system itself
    const auto J = oracle::symplectic_J(n);
    oracle::Mat system;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        std::vector<oracle::Q> row(N * N, 0);
        // (M^T J + J M)_{ab} = sum_c M_{ca} J_{cb} + J_{ac} M_{cb}
        for (std::size_t c = 0; c < N; ++c) {
          row[c * N + a] += J[c][b];
          row[c * N + b] += J[a][c];
        }
        system.push_back(row);
      }
    EXPECT_EQ(N * N - oracle::rank(system), alg->dim());
    std::vector<hamlie::Vector> flat;
    for (const auto& m : alg->matrices()) {
      flat.push_back(flatten(m));
      const auto d = oracle::dense(m);
      EXPECT_TRUE(oracle::is_zero(oracle::add(oracle::mul(oracle::transpose(d), J), oracle::mul(J, d))));
    }
    EXPECT_EQ(oracle::rank_of(flat), alg->dim());
  }
}

TEST(Symplectic, BasisMatricesAndLabels) {
  const auto alg = build_sp(1);
  EXPECT_EQ(alg->labels(), (std::vector<std::string>{"h1", "X[2e1]", "X[-2e1]"}));
  SparseMatrix x(2, 2);
  x.set(0, 1, 2);
  EXPECT_EQ(alg->matrix(alg->x_sum(0, 0)), x);
  const auto alg2 = build_sp(2);
  EXPECT_EQ(alg2->labels()[2], "X[e1-e2]");
  EXPECT_EQ(alg2->index_of("X[-e1-e2]"), alg2->x_neg(1, 0));
  EXPECT_THROW((void)alg2->index_of("X[e9]"), std::invalid_argument);
  EXPECT_THROW((void)build_sp(0), std::invalid_argument);
}

TEST(Symplectic, BracketsStayInTheAlgebra) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto alg = build_sp(n);
    for (std::size_t a = 0; a < alg->dim(); ++a)
      for (std::size_t b = 0; b < alg->dim(); ++b) {
        const auto c = alg->decompose(bracket(alg->matrix(a), alg->matrix(b)));
        EXPECT_EQ(alg->combine(c), bracket(alg->matrix(a), alg->matrix(b)));
      }
  }
}

TEST(Symplectic, DecomposeRejectsNonSymplecticMatrices) {
  const auto alg = build_sp(2);
  EXPECT_THROW((void)alg->decompose(SparseMatrix::identity(4)), std::domain_error);
  SparseMatrix m(4, 4);
  m.set(0, 2, 1);
  m.set(1, 3, 1);
  m.set(0, 3, 5);  // X[e1+e2] needs a matching (1,2) entry
  EXPECT_THROW((void)alg->decompose(m), std::domain_error);
  EXPECT_THROW((void)alg->decompose(SparseMatrix(3, 3)), std::invalid_argument);
}

TEST(Symplectic, OuterBarLiesInSp) {
  std::mt19937_64 g(11);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto alg = build_sp(n);
    for (int t = 0; t < 100; ++t) {
      const Grade r = random_grade(g, 2 * n, 6);
      const auto m = outer_bar(r);
      // oracle: r (J r)^T with J from the test helper
      const auto J = oracle::symplectic_J(n);
      oracle::Mat col = oracle::zeros(2 * n, 1);
      for (std::size_t i = 0; i < 2 * n; ++i) col[i][0] = r[i];
      EXPECT_EQ(oracle::dense(m), oracle::mul(col, oracle::transpose(oracle::mul(J, col))));
      EXPECT_EQ(alg->combine(alg->decompose(m)), m);
    }
  }
}

TEST(Symplectic, BarAndPairing) {
  std::mt19937_64 g(12);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t N = 2 * (1 + g() % 4);
    const Grade r = random_grade(g, N, 9), s = random_grade(g, N, 9);
    ASSERT_EQ(bar_pairing(r, s), -bar_pairing(s, r));
    ASSERT_EQ(bar_pairing(r, s), pairing(bar(r), s));
    Grade minus_r(r);
    for (auto& x : minus_r) x = -x;
    ASSERT_EQ(bar(bar(r)), minus_r);
    ASSERT_TRUE(bar_pairing(r, r).is_zero());
  }
  EXPECT_EQ(bar(Grade{1, 2, 3, 4}), (Grade{3, 4, -1, -2}));
  EXPECT_THROW((void)bar(Grade{1, 2, 3}), std::invalid_argument);
}

TEST(RootHeight, ClosedForms) {
  for (std::size_t n = 1; n <= 10; ++n) {
    std::size_t count = 0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i; j <= n; ++j) {
        if (j == i + 1) {
          EXPECT_EQ(root_height(Generator{GeneratorKind::EpsDiff, i - 1, j - 1}.root(n), n).height, 1);
        }
        if (j > i) {
          EXPECT_EQ(root_height(Generator{GeneratorKind::EpsDiff, i - 1, j - 1}.root(n), n).height,
                    static_cast<std::int64_t>(j - i));
          ++count;
        }
        EXPECT_EQ(root_height(Generator{GeneratorKind::EpsSum, i - 1, j - 1}.root(n), n).height,
                  static_cast<std::int64_t>(2 * n - (i + j) + 1));
        ++count;
      }
    EXPECT_EQ(count, n * n);
    EXPECT_EQ(positive_roots(n).size(), n * n);
  }
  EXPECT_THROW((void)root_height({1, 1}, 1), std::invalid_argument);
  EXPECT_THROW((void)root_height({-1, 1}, 2), std::invalid_argument);
}

TEST(RootHeight, HighestRootIsTwiceFirstEpsilon) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::int64_t> top(n, 0);
    top[0] = 2;
    const auto d = root_height(top, n);
    EXPECT_EQ(d.height, static_cast<std::int64_t>(2 * n - 1));
    for (std::size_t m = 0; m + 1 < n; ++m) EXPECT_EQ(d.simple_coeffs[m], 2);
    EXPECT_EQ(d.simple_coeffs[n - 1], 1);
  }
}
