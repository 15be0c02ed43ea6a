#pragma once

// Polynomials in the lattice variables s_1..s_N with rational or
// End(V)-valued coefficients.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamlie/reps.hpp"
#include "hamlie/sparse_matrix.hpp"

namespace hamlie {

using Monomial = std::vector<std::uint8_t>;  // exponent of each variable

inline std::size_t degree(const Monomial& m) {
  std::size_t d = 0;
  for (auto e : m) d += e;
  return d;
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw std::invalid_argument("monomial arity mismatch");
  Monomial c(a);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = static_cast<std::uint8_t>(c[i] + b[i]);
  return c;
}

/// Builds a monomial from (variable, exponent) pairs with zero-based variables.
inline Monomial monomial(std::size_t nvars, std::initializer_list<std::pair<std::size_t, unsigned>> powers) {
  Monomial m(nvars, 0);
  for (auto [v, e] : powers) m.at(v) = static_cast<std::uint8_t>(m.at(v) + e);
  return m;
}

inline std::string monomial_name(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "s" + std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

template <typename T>
Rational evaluate(const Monomial& m, const std::vector<T>& point) {
  Rational v(1);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (unsigned e = 0; e < m[i]; ++e) v *= Rational(point[i]);
  return v;
}

class ScalarPolynomial {
public:
  explicit ScalarPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static ScalarPolynomial constant(std::size_t nvars, const Rational& c) {
    ScalarPolynomial p(nvars);
    p.add(Monomial(nvars, 0), c);
    return p;
  }
  static ScalarPolynomial variable(std::size_t nvars, std::size_t i) {
    ScalarPolynomial p(nvars);
    p.add(monomial(nvars, {{i, 1}}), Rational(1));
    return p;
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }

  void add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend ScalarPolynomial operator+(ScalarPolynomial a, const ScalarPolynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend ScalarPolynomial operator-(ScalarPolynomial a, const ScalarPolynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }
  friend ScalarPolynomial operator-(const ScalarPolynomial& a) { return ScalarPolynomial(a.nvars_) - a; }
  friend ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b) {
    ScalarPolynomial p(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add(ma * mb, ca * cb);
    return p;
  }

  template <typename T>
  [[nodiscard]] Rational evaluate(const std::vector<T>& point) const {
    Rational v;
    for (const auto& [m, c] : terms_) v += c * hamlie::evaluate(m, point);
    return v;
  }

private:
  std::size_t nvars_;
  std::map<Monomial, Rational> terms_;
};

/// A vector in Q^N whose coordinates are polynomials in s.
using PolyVector = std::vector<ScalarPolynomial>;

inline PolyVector constant_vector(const Vector& v) {
  PolyVector out;
  for (const auto& x : v) out.push_back(ScalarPolynomial::constant(v.size(), x));
  return out;
}

/// The vector of variables (s_1, ..., s_N).
inline PolyVector variable_vector(std::size_t nvars) {
  PolyVector out;
  for (std::size_t i = 0; i < nvars; ++i) out.push_back(ScalarPolynomial::variable(nvars, i));
  return out;
}

inline PolyVector operator+(const PolyVector& a, const PolyVector& b) {
  PolyVector out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}
inline PolyVector operator-(const PolyVector& a, const PolyVector& b) {
  PolyVector out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

inline PolyVector bar(const PolyVector& r) {
  const std::size_t n = r.size() / 2;
  PolyVector out(r.size(), ScalarPolynomial(r.empty() ? 0 : r[0].nvars()));
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = r[n + i];
    out[n + i] = -r[i];
  }
  return out;
}

inline ScalarPolynomial pairing(const PolyVector& a, const PolyVector& b) {
  ScalarPolynomial p(a.empty() ? 0 : a[0].nvars());
  for (std::size_t i = 0; i < a.size(); ++i) p = p + a[i] * b[i];
  return p;
}

/// Polynomial with End(V) coefficients.
class MatrixPolynomial {
public:
  MatrixPolynomial(std::size_t nvars, std::size_t dim) : nvars_(nvars), dim_(dim) {}

  static MatrixPolynomial scalar(const ScalarPolynomial& p, std::size_t dim) {
    MatrixPolynomial out(p.nvars(), dim);
    const auto id = SparseMatrix::identity(dim);
    for (const auto& [m, c] : p.terms()) out.add(m, c * id);
    return out;
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::map<Monomial, SparseMatrix>& terms() const { return terms_; }

  [[nodiscard]] std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, hamlie::degree(m));
    return d;
  }

  void add(const Monomial& m, const SparseMatrix& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] SparseMatrix coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? SparseMatrix(dim_, dim_) : it->second;
  }

  template <typename T>
  [[nodiscard]] SparseMatrix evaluate(const std::vector<T>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("MatrixPolynomial::evaluate: wrong number of variables");
    SparseMatrix out(dim_, dim_);
    for (const auto& [m, c] : terms_) out.add_scaled(hamlie::evaluate(m, point), c);
    return out;
  }

  friend MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    MatrixPolynomial p(a.nvars_, a.dim_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add(ma * mb, ca * cb);
    return p;
  }

private:
  std::size_t nvars_;
  std::size_t dim_;
  std::map<Monomial, SparseMatrix> terms_;
};

/// rho(u bar(u)^T) for a polynomial vector u, collected by monomial. Each
/// monomial's gl_N coefficient must itself lie in sp_2n.
inline MatrixPolynomial rho_outer_bar(const PolyVector& u, const Representation& rep) {
  const std::size_t N = u.size();
  const std::size_t nvars = u.empty() ? 0 : u[0].nvars();
  const PolyVector ub = bar(u);
  std::map<Monomial, SparseMatrix> gl;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const ScalarPolynomial e = u[i] * ub[j];
      for (const auto& [m, c] : e.terms()) {
        auto it = gl.try_emplace(m, N, N).first;
        it->second.add_to(i, j, c);
      }
    }
  MatrixPolynomial out(nvars, rep.dim());
  for (const auto& [m, c] : gl) out.add(m, rep.rho(rep.alg->decompose(c)));
  return out;
}

}  // namespace hamlie
