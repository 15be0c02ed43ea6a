#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hamlie/linalg.hpp"
#include "oracle.hpp"

using namespace hamlie;

namespace {

SparseMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, int density_pct = 40) {
  SparseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (static_cast<int>(g() % 100) < density_pct)
        m.set(i, j, Rational(static_cast<std::int64_t>(g() % 11) - 5, static_cast<std::int64_t>(g() % 4) + 1));
  return m;
}

// Low-rank matrices make nullspaces interesting.
SparseMatrix low_rank(std::mt19937_64& g, std::size_t rows, std::size_t cols, std::size_t rank) {
  return random_matrix(g, rows, rank, 70) * random_matrix(g, rank, cols, 70);
}

}  // namespace

TEST(SparseMatrix, ProductMatchesDenseOracle) {
  std::mt19937_64 g(1);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_matrix(g, 1 + g() % 6, 4);
    const auto b = random_matrix(g, 4, 1 + g() % 6);
    EXPECT_EQ(oracle::dense(a * b), oracle::mul(oracle::dense(a), oracle::dense(b)));
    EXPECT_EQ(oracle::dense(a.transpose()), oracle::transpose(oracle::dense(a)));
  }
}

TEST(SparseMatrix, NeverStoresZeros) {
  SparseMatrix m(2, 2);
  m.set(0, 1, Rational(3));
  m.add_to(0, 1, Rational(-3));
  EXPECT_EQ(m.nnz(), 0u);
  EXPECT_TRUE(m.is_zero());
  EXPECT_EQ(m, SparseMatrix(2, 2));
}

TEST(SparseMatrix, JsonRoundTripAndErrors) {
  std::mt19937_64 g(2);
  const auto m = random_matrix(g, 5, 7);
  EXPECT_EQ(SparseMatrix::from_json(m.to_json()), m);
  EXPECT_EQ(m.to_json().dump(), SparseMatrix::from_json(m.to_json()).to_json().dump());

  auto bad = m.to_json();
  bad.erase("cols");
  try {
    (void)SparseMatrix::from_json(bad);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cols"), std::string::npos);
  }
  EXPECT_THROW((void)SparseMatrix::from_json(json::parse(R"({"rows":1,"cols":1,"entries":[[0,0,"0.5"]]})")),
               std::invalid_argument);
  EXPECT_THROW((void)SparseMatrix::from_json(json::parse(R"({"rows":1,"cols":1,"entries":[[0,3,"1"]]})")),
               std::invalid_argument);
}

TEST(Rref, RankAgreesWithFractionFreeElimination) {
  std::mt19937_64 g(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 1 + g() % 7, cols = 1 + g() % 7;
    const auto m = (t % 2) ? random_matrix(g, rows, cols) : low_rank(g, rows, cols, 1 + g() % 3);
    const auto r = rref(m);
    EXPECT_EQ(r.rank, oracle::rank(oracle::dense(m)));
    // reduced: pivot columns are unit columns
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t k = 0; k < r.matrix.rows(); ++k)
        EXPECT_EQ(r.matrix.get(k, r.pivots[i]), Rational(k == i ? 1 : 0));
  }
}

TEST(Nullspace, DimensionAndAnnihilation) {
  std::mt19937_64 g(4);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 1 + g() % 6, cols = 1 + g() % 8;
    const auto m = low_rank(g, rows, cols, 1 + g() % 3);
    const auto ns = nullspace(m);
    EXPECT_EQ(ns.dim(), cols - oracle::rank(oracle::dense(m)));
    for (const auto& v : ns.basis()) EXPECT_TRUE(is_zero(m.apply(v)));
    EXPECT_EQ(oracle::rank_of(ns.basis()), ns.dim());
  }
}

TEST(Subspace, CanonicalBasisIndependentOfInsertionOrder) {
  std::mt19937_64 g(5);
  for (int t = 0; t < 40; ++t) {
    std::vector<Vector> vs;
    const auto m = low_rank(g, 6, 5, 3);
    for (std::size_t i = 0; i < m.rows(); ++i) vs.push_back(m.to_dense()[i]);
    const auto a = Subspace::span(5, vs);
    std::shuffle(vs.begin(), vs.end(), g);
    for (auto& v : vs) v = scaled(Rational(-7, 3), v);
    const auto b = Subspace::span(5, vs);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.dim(), oracle::rank_of(vs));
  }
}

TEST(Subspace, MembershipMatchesRankOracle) {
  std::mt19937_64 g(6);
  for (int t = 0; t < 100; ++t) {
    std::vector<Vector> vs;
    for (int i = 0; i < 2; ++i) vs.push_back(random_matrix(g, 1, 5, 60).to_dense()[0]);
    const auto s = Subspace::span(5, vs);
    Vector probe = (t % 2) ? random_matrix(g, 1, 5, 60).to_dense()[0] : Vector(5);
    if (t % 2 == 0) {
      axpy(Rational(2), vs[0], probe);
      axpy(Rational(-1, 3), vs[1], probe);
    }
    EXPECT_EQ(s.contains(probe), oracle::in_span(vs, probe));
  }
}

TEST(Subspace, IntersectionAndSumDimensions) {
  std::mt19937_64 g(7);
  for (int t = 0; t < 40; ++t) {
    const auto ma = low_rank(g, 4, 6, 1 + g() % 4);
    const auto mb = low_rank(g, 4, 6, 1 + g() % 4);
    const auto a = Subspace::span(6, ma.to_dense());
    const auto b = Subspace::span(6, mb.to_dense());
    const auto i = intersect(a, b);
    const auto s = sum(a, b);
    EXPECT_EQ(i.dim() + s.dim(), a.dim() + b.dim());
    for (const auto& v : i.basis()) {
      EXPECT_TRUE(a.contains(v));
      EXPECT_TRUE(b.contains(v));
    }
    EXPECT_TRUE(i.is_subspace_of(a));
    EXPECT_TRUE(a.is_subspace_of(s));
  }
}

TEST(Subspace, JsonRoundTrip) {
  const auto s = Subspace::span(3, {Vector{Rational(1), Rational(2), Rational(1, 2)}, Vector{Rational(0), Rational(1), Rational(0)}});
  EXPECT_EQ(Subspace::from_json(3, s.to_json(), "basis"), s);
  EXPECT_THROW((void)Subspace::from_json(2, s.to_json(), "basis"), std::invalid_argument);
}

TEST(Subspace, EdgeCases) {
  EXPECT_TRUE(Subspace(4).empty());
  EXPECT_TRUE(Subspace::full(4).is_full());
  EXPECT_FALSE(Subspace(2).insert(Vector(2)));
  EXPECT_EQ(annihilator(Subspace(3)), Subspace::full(3));
  EXPECT_EQ(annihilator(Subspace::full(3)).dim(), 0u);
  EXPECT_THROW((void)Subspace(3).contains(Vector(2)), std::invalid_argument);
}
