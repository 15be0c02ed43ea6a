#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "hamlie/reps.hpp"
#include "oracle.hpp"

using namespace hamlie;

namespace {

// rho([x, y]) = [rho(x), rho(y)] on every basis pair, with products taken in
// the dense oracle.
void expect_homomorphism(const Representation& rep) {
  const auto& alg = *rep.alg;
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = 0; b < alg.dim(); ++b) {
      const auto c = alg.decompose(bracket(alg.matrix(a), alg.matrix(b)));
      const auto ra = oracle::dense(rep.action[a]);
      const auto rb = oracle::dense(rep.action[b]);
      ASSERT_EQ(oracle::dense(rep.rho(c)), oracle::sub(oracle::mul(ra, rb), oracle::mul(rb, ra)))
          << rep.name << " " << alg.labels()[a] << " " << alg.labels()[b];
    }
}

// theta_k on e_{t_1} ^ ... ^ e_{t_k} straight from the defining sum, using
// the symplectic form w(x, y) = (x, bar(y)) evaluated on coordinate vectors.
std::map<std::vector<std::size_t>, oracle::Q> theta_on_tuple(const std::vector<std::size_t>& t, std::size_t n) {
  std::map<std::vector<std::size_t>, oracle::Q> out;
  auto w = [n](std::size_t p, std::size_t q) {
    // (e_p, bar(e_q)); bar(e_q) = -e_{q+n} (q < n) or e_{q-n} (q >= n)
    if (q < n) return p == q + n ? -1 : 0;
    return p == q - n ? 1 : 0;
  };
  const std::size_t k = t.size();
  for (std::size_t a = 1; a <= k; ++a)
    for (std::size_t b = a + 1; b <= k; ++b) {
      const int f = w(t[a - 1], t[b - 1]);
      if (!f) continue;
      std::vector<std::size_t> rest;
      for (std::size_t c = 1; c <= k; ++c)
        if (c != a && c != b) rest.push_back(t[c - 1]);
      out[rest] += ((a + b - 1) % 2 == 0 ? 1 : -1) * f;
    }
  return out;
}

}  // namespace

TEST(Reps, NaturalTrivialAndPowersAreRepresentations) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto alg = build_sp(n);
    const auto nat = natural_rep(alg);
    expect_homomorphism(*nat);
    expect_homomorphism(*trivial_rep(alg));
    for (std::size_t k = 0; k <= 2 * n; ++k) {
      const auto ext = exterior_power(nat, k);
      EXPECT_EQ(static_cast<std::int64_t>(ext->dim()), oracle::choose(2 * n, k));
      expect_homomorphism(*ext);
    }
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto sym = symmetric_power(nat, k);
      EXPECT_EQ(static_cast<std::int64_t>(sym->dim()), oracle::choose(2 * n + k - 1, k));
      expect_homomorphism(*sym);
    }
    expect_homomorphism(*tensor_product(nat, nat));
  }
}

TEST(Reps, WeightsOfNaturalRepresentation) {
  const auto alg = build_sp(2);
  const auto nat = natural_rep(alg);
  EXPECT_EQ(nat->weights, (std::vector<Weight>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
  const auto ext = exterior_power(nat, 2);
  EXPECT_EQ(ext->labels[0], "e1^e2");
  EXPECT_EQ(ext->weights[0], (Weight{1, 1}));
}

TEST(Reps, ThetaMatchesDefiningFormula) {
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto alg = build_sp(n);
    for (std::size_t k = 2; k <= n; ++k) {
      const auto theta = contraction_theta(alg, k);
      const auto src = detail::tuples(2 * n, k, true);
      const auto tgt = wedge_index(2 * n, k - 2);
      const auto d = oracle::dense(theta.matrix);
      for (std::size_t col = 0; col < src.size(); ++col) {
        std::vector<oracle::Q> expected(tgt.size(), 0);
        for (const auto& [rest, c] : theta_on_tuple(src[col], n)) expected[tgt.at(rest)] = c;
        for (std::size_t row = 0; row < tgt.size(); ++row) ASSERT_EQ(d[row][col], expected[row]);
      }
    }
  }
}

TEST(Reps, ThetaIsAnIntertwinerWithKernelOfExpectedDimension) {
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto alg = build_sp(n);
    for (std::size_t k = 2; k <= n; ++k) {
      const auto theta = contraction_theta(alg, k);
      EXPECT_TRUE(verify_intertwiner(theta).ok);
      const auto nn = static_cast<std::int64_t>(2 * n), kk = static_cast<std::int64_t>(k);
      const auto kernel = oracle::choose(nn, kk) - static_cast<std::int64_t>(oracle::rank(oracle::dense(theta.matrix)));
      EXPECT_EQ(kernel, oracle::choose(nn, kk) - oracle::choose(nn, kk - 2));
      const auto v = fundamental_rep(alg, k);
      EXPECT_EQ(static_cast<std::int64_t>(v->dim()), kernel);
      EXPECT_EQ(kernel_degree(*v), k);
      expect_homomorphism(*v);
    }
  }
}

TEST(Reps, KernelOfTheta2ForRank2) {
  const auto alg = build_sp(2);
  const auto v = fundamental_rep(alg, 2);
  ASSERT_EQ(v->dim(), 5u);
  const auto& K = v->embedding->subspace;
  // Lambda^2 basis order: 12 13 14 23 24 34
  auto e = [](std::size_t i) { return unit_vector(6, i); };
  EXPECT_TRUE(K.contains(e(0)));
  EXPECT_TRUE(K.contains(e(2)));
  EXPECT_TRUE(K.contains(e(3)));
  EXPECT_TRUE(K.contains(e(5)));
  EXPECT_FALSE(K.contains(e(1)));
  Vector d = e(1);
  d[4] = -1;  // e1^e3 - e2^e4
  EXPECT_TRUE(K.contains(d));
}

TEST(Reps, IrreducibilityCriterion) {
  const auto alg = build_sp(2);
  const auto nat = natural_rep(alg);
  EXPECT_TRUE(is_irreducible(*nat));
  EXPECT_TRUE(is_irreducible(*trivial_rep(alg)));
  EXPECT_TRUE(is_irreducible(*symmetric_power(nat, 2)));
  EXPECT_TRUE(is_irreducible(*fundamental_rep(alg, 2)));
  EXPECT_FALSE(is_irreducible(*exterior_power(nat, 2)));  // V(delta_2) + trivial
  EXPECT_FALSE(is_irreducible(*tensor_product(nat, nat)));
  EXPECT_EQ(highest_weight_vectors(*exterior_power(nat, 2)).size(), 2u);
  const auto alg3 = build_sp(3);
  EXPECT_TRUE(is_irreducible(*fundamental_rep(alg3, 3)));
}

TEST(Reps, HighestWeightSubrepFromTensorSquare) {
  const auto alg = build_sp(2);
  const auto nat = natural_rep(alg);
  const auto v = highest_weight_subrep(tensor_product(nat, nat), Weight{2, 0}, "V(2delta1)");
  EXPECT_EQ(v->dim(), 10u);
  EXPECT_TRUE(is_irreducible(*v));
  EXPECT_THROW((void)highest_weight_subrep(nat, Weight{3, 3}, "none"), std::invalid_argument);
}

TEST(Reps, SubrepresentationRejectsNonInvariantSubspace) {
  const auto alg = build_sp(1);
  const auto nat = natural_rep(alg);
  EXPECT_THROW((void)subrepresentation(nat, Subspace::span(2, {unit_vector(2, 0)}), "bad"), std::invalid_argument);
}

TEST(Wedge, SignsAndAntisymmetry) {
  std::mt19937_64 g(21);
  auto rv = [&](std::size_t N) {
    Vector v(N);
    for (auto& x : v) x = Rational(static_cast<std::int64_t>(g() % 7) - 3);
    return v;
  };
  for (int t = 0; t < 50; ++t) {
    const Vector a = rv(6), b = rv(6), c = rv(6);
    EXPECT_EQ(wedge({a, b}, 6), scaled(Rational(-1), wedge({b, a}, 6)));
    EXPECT_TRUE(is_zero(wedge({a, b, a}, 6)));
    EXPECT_EQ(wedge({a, b, c}, 6), wedge({b, c, a}, 6));
    // u ^ (b ^ c) through the matrix agrees with the iterated product
    EXPECT_EQ(wedge_with(a, 2).apply(wedge({b, c}, 6)), wedge({a, b, c}, 6));
    // nonzero iff independent
    EXPECT_EQ(is_zero(wedge({a, b, c}, 6)), oracle::rank_of({a, b, c}) < 3);
  }
  // e1 ^ e2 is the first basis vector
  EXPECT_EQ(wedge({unit_vector(4, 0), unit_vector(4, 1)}, 4), unit_vector(6, 0));
}

TEST(Serialization, RoundTripIsExact) {
  const auto alg = build_sp(2);
  for (const auto& rep : {natural_rep(alg), fundamental_rep(alg, 2), symmetric_power(natural_rep(alg), 2)}) {
    const auto j = rep_to_json(*rep);
    const auto back = rep_from_json(j);
    EXPECT_EQ(back->dim(), rep->dim());
    EXPECT_EQ(back->action, rep->action);
    EXPECT_EQ(back->labels, rep->labels);
    EXPECT_EQ(rep_to_json(*back).dump(), j.dump());
    EXPECT_EQ(kernel_degree(*back), kernel_degree(*rep));
  }
}

TEST(Serialization, CorruptedInputNamesTheField) {
  const auto alg = build_sp(2);
  auto j = rep_to_json(*fundamental_rep(alg, 2));
  auto expect_field = [](const json& bad, const std::string& field) {
    try {
      (void)rep_from_json(bad);
      FAIL() << "accepted corrupted representation";
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  auto no_labels = j;
  no_labels.erase("labels");
  expect_field(no_labels, "labels");
  auto bad_action = j;
  bad_action["action"].erase("h1");
  expect_field(bad_action, "h1");
  auto bad_weights = j;
  bad_weights["weights"][0][0] = 7;
  expect_field(bad_weights, "weights");
  auto bad_dim = j;
  bad_dim["dim"] = 4;
  expect_field(bad_dim, "labels");

  const auto path = std::filesystem::temp_directory_path() / "hamlie_truncated_rep.json";
  {
    std::ofstream out(path);
    out << j.dump().substr(0, 40);
  }
  EXPECT_THROW((void)load_rep(path.string()), std::invalid_argument);
  std::filesystem::remove(path);
}
