#pragma once

// The symplectic Lie algebra sp_2n in its natural N x N realization
// (N = 2n), with the bar map on Z^N / Q^N and the root height function.

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamlie/linalg.hpp"
#include "hamlie/sparse_matrix.hpp"

namespace hamlie {

using Grade = std::vector<std::int64_t>;

// ---------------------------------------------------------------------------
// Bar map and pairing

/// bar(r) = (r_{n+1}, ..., r_{2n}, -r_1, ..., -r_n).
template <typename T>
std::vector<T> bar(const std::vector<T>& r) {
  if (r.size() % 2 != 0 || r.empty()) throw std::invalid_argument("bar: vector length must be even and positive");
  const std::size_t n = r.size() / 2;
  std::vector<T> out(r.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = r[n + i];
    out[n + i] = -r[i];
  }
  return out;
}

/// Standard bilinear form sum u_i v_i, exact.
template <typename T, typename U>
Rational pairing(const std::vector<T>& u, const std::vector<U>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("pairing: length mismatch");
  Rational s;
  for (std::size_t i = 0; i < u.size(); ++i) s += Rational(u[i]) * Rational(v[i]);
  return s;
}

/// (bar(r), x) without materializing bar(r).
template <typename T>
Rational bar_pairing(const Grade& r, const std::vector<T>& x) {
  if (r.size() != x.size()) throw std::invalid_argument("pairing: length mismatch");
  const std::size_t n = r.size() / 2;
  Rational s;
  for (std::size_t i = 0; i < n; ++i) {
    if (r[n + i] != 0) s += Rational(r[n + i]) * Rational(x[i]);
    if (r[i] != 0) s -= Rational(r[i]) * Rational(x[n + i]);
  }
  return s;
}

inline Vector to_rational(const Grade& g) { return Vector(g.begin(), g.end()); }

inline Vector add(const Grade& g, const Vector& a) {
  if (g.size() != a.size()) throw std::invalid_argument("lattice vector length mismatch");
  Vector out(a);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] += Rational(g[i]);
  return out;
}

/// r bar(r)^T as an N x N matrix.
template <typename T>
SparseMatrix outer_bar(const std::vector<T>& r) {
  const auto rb = bar(r);
  SparseMatrix m(r.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      const Rational v = Rational(r[i]) * Rational(rb[j]);
      if (!v.is_zero()) m.set(i, j, v);
    }
  return m;
}

/// The matrix J with J v = bar(v).
inline SparseMatrix bar_form(std::size_t n) {
  SparseMatrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j.set(i, n + i, 1);
    j.set(n + i, i, -1);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Basis labels

enum class GeneratorKind { Cartan, EpsDiff, EpsSum, NegEpsSum };

/// One basis element of sp_2n. Indices are zero-based internally;
/// names use the usual one-based notation.
struct Generator {
  GeneratorKind kind;
  std::size_t i = 0;
  std::size_t j = 0;

  [[nodiscard]] std::string name() const {
    const auto a = std::to_string(i + 1), b = std::to_string(j + 1);
    switch (kind) {
      case GeneratorKind::Cartan: return "h" + a;
      case GeneratorKind::EpsDiff: return "X[e" + a + "-e" + b + "]";
      case GeneratorKind::EpsSum: return i == j ? "X[2e" + a + "]" : "X[e" + a + "+e" + b + "]";
      case GeneratorKind::NegEpsSum: return i == j ? "X[-2e" + a + "]" : "X[-e" + a + "-e" + b + "]";
    }
    return {};
  }

  /// Root in epsilon coordinates (zero for Cartan elements).
  [[nodiscard]] std::vector<std::int64_t> root(std::size_t n) const {
    std::vector<std::int64_t> r(n, 0);
    switch (kind) {
      case GeneratorKind::Cartan: break;
      case GeneratorKind::EpsDiff: r[i] += 1; r[j] -= 1; break;
      case GeneratorKind::EpsSum: r[i] += 1; r[j] += 1; break;
      case GeneratorKind::NegEpsSum: r[i] -= 1; r[j] -= 1; break;
    }
    return r;
  }

  [[nodiscard]] bool is_positive_root() const {
    return (kind == GeneratorKind::EpsDiff && i < j) || kind == GeneratorKind::EpsSum;
  }

  friend bool operator==(const Generator&, const Generator&) = default;
};

// ---------------------------------------------------------------------------
// Root heights

struct RootDatum {
  std::vector<std::int64_t> root;
  std::vector<std::int64_t> simple_coeffs;
  std::int64_t height = 0;
};

/// Simple roots alpha_m = e_m - e_{m+1} (m < n), alpha_n = 2 e_n, in epsilon coordinates.
inline std::vector<std::vector<std::int64_t>> simple_roots(std::size_t n) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    std::vector<std::int64_t> a(n, 0);
    a[m] = 1;
    a[m + 1] = -1;
    out.push_back(a);
  }
  std::vector<std::int64_t> last(n, 0);
  last[n - 1] = 2;
  out.push_back(last);
  return out;
}

inline std::vector<std::vector<std::int64_t>> positive_roots(std::size_t n) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(Generator{GeneratorKind::EpsDiff, i, j}.root(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) out.push_back(Generator{GeneratorKind::EpsSum, k, l}.root(n));
  return out;
}

inline RootDatum root_height(const std::vector<std::int64_t>& root, std::size_t n) {
  if (n < 1 || root.size() != n) throw std::invalid_argument("root_height: root must have n epsilon coordinates");
  bool known = false;
  for (const auto& p : positive_roots(n)) known = known || p == root;
  if (!known) throw std::invalid_argument("root_height: not a positive root of sp_2n");
  // Triangular solve: x_1 = a_1, x_m = a_m - a_{m-1}, x_n = 2 a_n - a_{n-1}.
  RootDatum d{root, std::vector<std::int64_t>(n, 0), 0};
  std::int64_t prev = 0;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    d.simple_coeffs[m] = root[m] + prev;
    prev = d.simple_coeffs[m];
  }
  d.simple_coeffs[n - 1] = (root[n - 1] + prev) / 2;
  const auto simple = simple_roots(n);
  std::vector<std::int64_t> check(n, 0);
  for (std::size_t m = 0; m < n; ++m) {
    if (d.simple_coeffs[m] < 0) throw std::logic_error("root_height: negative simple coefficient");
    for (std::size_t c = 0; c < n; ++c) check[c] += d.simple_coeffs[m] * simple[m][c];
  }
  if (check != root) throw std::logic_error("root_height: simple coefficients do not reproduce the root");
  d.height = std::accumulate(d.simple_coeffs.begin(), d.simple_coeffs.end(), std::int64_t{0});
  return d;
}

// ---------------------------------------------------------------------------
// The algebra

class SpAlgebra {
public:
  [[nodiscard]] std::size_t rank() const { return n_; }
  [[nodiscard]] std::size_t N() const { return 2 * n_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<Generator>& generators() const { return basis_; }
  [[nodiscard]] const std::vector<SparseMatrix>& matrices() const { return matrices_; }
  [[nodiscard]] const SparseMatrix& matrix(std::size_t idx) const { return matrices_.at(idx); }
  [[nodiscard]] std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& g : basis_) out.push_back(g.name());
    return out;
  }

  [[nodiscard]] std::size_t index_of(const Generator& g) const {
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (basis_[k] == g) return k;
    throw std::invalid_argument("generator not in basis");
  }
  [[nodiscard]] std::size_t index_of(const std::string& label) const {
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (basis_[k].name() == label) return k;
    throw std::invalid_argument("unknown sp basis label '" + label + "'");
  }
  [[nodiscard]] std::size_t h(std::size_t i) const { return index_of(Generator{GeneratorKind::Cartan, i, i}); }
  /// X_{e_i - e_j}, i != j.
  [[nodiscard]] std::size_t x_diff(std::size_t i, std::size_t j) const {
    return index_of(Generator{GeneratorKind::EpsDiff, i, j});
  }
  /// X_{e_k + e_l} (order-insensitive).
  [[nodiscard]] std::size_t x_sum(std::size_t k, std::size_t l) const {
    return index_of(Generator{GeneratorKind::EpsSum, std::min(k, l), std::max(k, l)});
  }
  /// X_{-e_k - e_l} (order-insensitive).
  [[nodiscard]] std::size_t x_neg(std::size_t k, std::size_t l) const {
    return index_of(Generator{GeneratorKind::NegEpsSum, std::min(k, l), std::max(k, l)});
  }

  /// Exact coordinates of m in the basis. Throws std::domain_error if m is
  /// not in sp_2n.
  [[nodiscard]] Vector decompose(const SparseMatrix& m) const {
    if (m.rows() != N() || m.cols() != N()) throw std::invalid_argument("sp_decompose: matrix has wrong size");
    const Rational half(1, 2);
    Vector c(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      const auto& g = basis_[k];
      switch (g.kind) {
        case GeneratorKind::Cartan: c[k] = m.get(g.i, g.i); break;
        case GeneratorKind::EpsDiff: c[k] = m.get(g.i, g.j); break;
        case GeneratorKind::EpsSum: c[k] = g.i == g.j ? half * m.get(g.i, n_ + g.i) : m.get(g.i, n_ + g.j); break;
        case GeneratorKind::NegEpsSum: c[k] = g.i == g.j ? half * m.get(n_ + g.i, g.i) : m.get(n_ + g.i, g.j); break;
      }
    }
    if (combine(c) != m) throw std::domain_error("sp_decompose: matrix is not in sp_2n");
    return c;
  }

  [[nodiscard]] SparseMatrix combine(const Vector& coeffs) const {
    SparseMatrix out(N(), N());
    for (std::size_t k = 0; k < dim(); ++k) out.add_scaled(coeffs.at(k), matrices_[k]);
    return out;
  }

  /// M^T J + J M = 0 for the bar form J.
  [[nodiscard]] static bool is_symplectic(const SparseMatrix& m, std::size_t n) {
    const auto j = bar_form(n);
    return (m.transpose() * j + j * m).is_zero();
  }

  /// Brackets of all basis pairs decompose in the basis.
  [[nodiscard]] bool closed_under_bracket() const {
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t b = a + 1; b < dim(); ++b) {
        try {
          (void)decompose(bracket(matrices_[a], matrices_[b]));
        } catch (const std::domain_error&) {
          return false;
        }
      }
    return true;
  }

  [[nodiscard]] json to_json() const {
    json mats = json::array();
    for (const auto& m : matrices_) mats.push_back(m.to_json());
    return json{{"n", n_}, {"labels", labels()}, {"matrices", std::move(mats)}};
  }

  friend std::shared_ptr<const SpAlgebra> build_sp(std::size_t n);

private:
  std::size_t n_ = 0;
  std::vector<Generator> basis_;
  std::vector<SparseMatrix> matrices_;
};

using SpAlgebraPtr = std::shared_ptr<const SpAlgebra>;

/// sp_2n with basis h_i, X_{e_i-e_j}, X_{e_k+e_l}, X_{-e_k-e_l} in that order.
inline SpAlgebraPtr build_sp(std::size_t n) {
  if (n < 1) throw std::invalid_argument("build_sp: rank must be at least 1");
  auto alg = std::make_shared<SpAlgebra>();
  alg->n_ = n;
  const std::size_t N = 2 * n;
  auto push = [&](Generator g, SparseMatrix m) {
    alg->basis_.push_back(g);
    alg->matrices_.push_back(std::move(m));
  };
  for (std::size_t i = 0; i < n; ++i) {
    SparseMatrix m(N, N);
    m.set(i, i, 1);
    m.set(n + i, n + i, -1);
    push({GeneratorKind::Cartan, i, i}, std::move(m));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      SparseMatrix m(N, N);
      m.set(i, j, 1);
      m.set(n + j, n + i, -1);
      push({GeneratorKind::EpsDiff, i, j}, std::move(m));
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) {
      SparseMatrix m(N, N);
      m.add_to(k, n + l, 1);
      m.add_to(l, n + k, 1);
      push({GeneratorKind::EpsSum, k, l}, std::move(m));
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) {
      SparseMatrix m(N, N);
      m.add_to(n + k, l, 1);
      m.add_to(n + l, k, 1);
      push({GeneratorKind::NegEpsSum, k, l}, std::move(m));
    }
  if (alg->dim() != 2 * n * n + n) throw std::logic_error("build_sp: wrong dimension");
  if (!alg->closed_under_bracket()) throw std::logic_error("build_sp: basis not closed under bracket");
  return alg;
}

/// Coefficients of m in the basis of alg (free-function form).
inline Vector sp_decompose(const SparseMatrix& m, const SpAlgebra& alg) { return alg.decompose(m); }

}  // namespace hamlie
