#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hamlie/sparse_matrix.hpp"

namespace hamlie {

struct RrefResult {
  SparseMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination: columns left to right, first nonzero row as
/// pivot, leading entries scaled to 1. Zero rows end up at the bottom.
inline RrefResult rref(const SparseMatrix& m) {
  auto a = m.to_dense();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!a[r][j].is_zero()) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = -a[i][c];
      axpy(f, a[r], a[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  return {SparseMatrix::from_dense(a, cols), r, std::move(pivots)};
}

/// A subspace of Q^d held as its canonical reduced row-echelon basis.
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace full(std::size_t d) {
    Subspace s(d);
    for (std::size_t i = 0; i < d; ++i) {
      s.basis_.push_back(unit_vector(d, i));
      s.pivots_.push_back(i);
    }
    return s;
  }

  static Subspace span(std::size_t d, const std::vector<Vector>& vectors) {
    Subspace s(d);
    for (const auto& v : vectors) s.insert(v);
    return s;
  }

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] bool is_full() const { return basis_.size() == ambient_; }
  [[nodiscard]] bool empty() const { return basis_.empty(); }
  [[nodiscard]] const std::vector<Vector>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residue of v after elimination against the basis; zero iff v is in the span.
  [[nodiscard]] Vector reduce(Vector v) const {
    check_len(v.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto p = pivots_[i];
      if (!v[p].is_zero()) {
        const Rational f = -v[p];
        axpy(f, basis_[i], v);
      }
    }
    return v;
  }

  [[nodiscard]] bool contains(std::span<const Rational> v) const {
    return hamlie::is_zero(reduce(Vector(v.begin(), v.end())));
  }

  /// Coordinates of v (which must lie in the subspace) in the stored basis.
  [[nodiscard]] Vector coordinates(std::span<const Rational> v) const {
    check_len(v.size());
    Vector c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  /// Adds v to the span, keeping the basis in RREF. Returns true if the
  /// dimension grew.
  bool insert(std::span<const Rational> v) {
    Vector w = reduce(Vector(v.begin(), v.end()));
    std::size_t p = 0;
    while (p < w.size() && w[p].is_zero()) ++p;
    if (p == w.size()) return false;
    if (!w[p].is_one()) {
      const Rational inv = w[p].inverse();
      for (std::size_t j = p; j < w.size(); ++j)
        if (!w[j].is_zero()) w[j] *= inv;
    }
    for (auto& row : basis_)
      if (!row[p].is_zero()) {
        const Rational f = -row[p];
        axpy(f, w, row);
      }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
    return true;
  }

  [[nodiscard]] bool is_subspace_of(const Subspace& o) const {
    same_ambient(o);
    if (dim() > o.dim()) return false;
    for (const auto& v : basis_)
      if (!o.contains(v)) return false;
    return true;
  }

  [[nodiscard]] SparseMatrix as_matrix() const { return SparseMatrix::from_dense(basis_, ambient_); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  [[nodiscard]] json to_json() const {
    json rows = json::array();
    for (const auto& v : basis_) rows.push_back(vector_to_json(v));
    return rows;
  }

  static Subspace from_json(std::size_t d, const json& j, const std::string& field) {
    if (!j.is_array()) throw std::invalid_argument("field '" + field + "' must be an array of rows");
    Subspace s(d);
    for (const auto& row : j) {
      Vector v = vector_from_json(row, field);
      if (v.size() != d) throw std::invalid_argument("field '" + field + "' has a row of wrong length");
      s.insert(v);
    }
    return s;
  }

  void same_ambient(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("subspace ambient dimension mismatch");
  }

private:
  void check_len(std::size_t n) const {
    if (n != ambient_) throw std::invalid_argument("vector length does not match ambient dimension");
  }

  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical basis of {v : m v = 0}.
inline Subspace nullspace(const SparseMatrix& m) {
  const auto r = rref(m);
  const std::size_t cols = m.cols();
  std::vector<char> is_pivot(cols, 0);
  for (auto p : r.pivots) is_pivot[p] = 1;
  Subspace out(cols);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) {
      const Rational x = r.matrix.get(i, f);
      if (!x.is_zero()) v[r.pivots[i]] = -x;
    }
    out.insert(v);
  }
  return out;
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  a.same_ambient(b);
  Subspace s = a;
  for (const auto& v : b.basis()) s.insert(v);
  return s;
}

/// Vectors orthogonal (under the dot product) to every element of s.
inline Subspace annihilator(const Subspace& s) {
  if (s.empty()) return Subspace::full(s.ambient_dim());
  return nullspace(s.as_matrix());
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  a.same_ambient(b);
  if (a.empty() || b.empty()) return Subspace(a.ambient_dim());
  if (b.is_full()) return a;
  if (a.is_full()) return b;
  // x = sum c_i a_i lies in b iff z . x = 0 for all z in ann(b).
  const Subspace zb = annihilator(b);
  SparseMatrix conditions(zb.dim(), a.dim());
  for (std::size_t j = 0; j < zb.dim(); ++j)
    for (std::size_t i = 0; i < a.dim(); ++i) conditions.set(j, i, dot(zb.basis()[j], a.basis()[i]));
  const Subspace coeffs = nullspace(conditions);
  Subspace out(a.ambient_dim());
  for (const auto& c : coeffs.basis()) {
    Vector x(a.ambient_dim());
    for (std::size_t i = 0; i < c.size(); ++i) axpy(c[i], a.basis()[i], x);
    out.insert(x);
  }
  return out;
}

}  // namespace hamlie
