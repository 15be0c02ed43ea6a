#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hamlie/rational.hpp"

namespace hamlie {

using Vector = std::vector<Rational>;
using json = nlohmann::json;

inline Vector zero_vector(std::size_t n) { return Vector(n); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

// y += c * x
inline void axpy(const Rational& c, std::span<const Rational> x, std::span<Rational> y) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

inline Vector scaled(const Rational& c, std::span<const Rational> x) {
  Vector out(x.size());
  if (!c.is_zero())
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) out[i] = c * x[i];
  return out;
}

inline json vector_to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline Vector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw std::invalid_argument("field '" + field + "' must be an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_string()) throw std::invalid_argument("field '" + field + "' must hold rational strings");
    v.push_back(Rational::parse(x.get<std::string>()));
  }
  return v;
}

/// Row-compressed sparse matrix over the rationals. Each row keeps its
/// nonzero entries sorted by column; zeros are never stored.
class SparseMatrix {
public:
  using Entry = std::pair<std::size_t, Rational>;
  using Row = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
  }

  static SparseMatrix from_dense(const std::vector<Vector>& rows, std::size_t cols) {
    SparseMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("from_dense: ragged rows");
      for (std::size_t j = 0; j < cols; ++j)
        if (!rows[i][j].is_zero()) m.data_[i].emplace_back(j, rows[i][j]);
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return data_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const Row& row(std::size_t i) const { return data_.at(i); }

  [[nodiscard]] std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }
  [[nodiscard]] bool is_zero() const { return nnz() == 0; }

  [[nodiscard]] Rational get(std::size_t i, std::size_t j) const {
    check(i, j);
    const auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.first < c; });
    return (it != r.end() && it->first == j) ? it->second : Rational();
  }

  void set(std::size_t i, std::size_t j, const Rational& v) {
    check(i, j);
    auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      if (v.is_zero())
        r.erase(it);
      else
        it->second = v;
    } else if (!v.is_zero()) {
      r.insert(it, Entry(j, v));
    }
  }

  void add_to(std::size_t i, std::size_t j, const Rational& v) {
    if (!v.is_zero()) set(i, j, get(i, j) + v);
  }

  [[nodiscard]] std::vector<Vector> to_dense() const {
    std::vector<Vector> out(rows(), Vector(cols_));
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) out[i][j] = v;
    return out;
  }

  [[nodiscard]] Vector apply(std::span<const Rational> x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: vector length mismatch");
    Vector y(rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i])
        if (!x[j].is_zero()) y[i] += v * x[j];
    return y;
  }

  [[nodiscard]] SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
    return t;
  }

  SparseMatrix& operator+=(const SparseMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < rows(); ++i) data_[i] = merge(data_[i], o.data_[i], Rational(1));
    return *this;
  }
  SparseMatrix& operator-=(const SparseMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < rows(); ++i) data_[i] = merge(data_[i], o.data_[i], Rational(-1));
    return *this;
  }
  /// this += c * o
  SparseMatrix& add_scaled(const Rational& c, const SparseMatrix& o) {
    same_shape(o);
    if (!c.is_zero())
      for (std::size_t i = 0; i < rows(); ++i) data_[i] = merge(data_[i], o.data_[i], c);
    return *this;
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }

  friend SparseMatrix operator*(const Rational& c, const SparseMatrix& m) {
    SparseMatrix out(m.rows(), m.cols());
    if (c.is_zero()) return out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      out.data_[i].reserve(m.data_[i].size());
      for (const auto& [j, v] : m.data_[i]) out.data_[i].emplace_back(j, c * v);
    }
    return out;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimension mismatch");
    SparseMatrix out(a.rows(), b.cols());
    Vector acc(b.cols());
    std::vector<char> touched(b.cols(), 0);
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      cols.clear();
      for (const auto& [k, av] : a.data_[i])
        for (const auto& [j, bv] : b.data_[k]) {
          if (!touched[j]) {
            touched[j] = 1;
            cols.push_back(j);
          }
          acc[j] += av * bv;
        }
      std::sort(cols.begin(), cols.end());
      for (std::size_t j : cols) {
        if (!acc[j].is_zero()) out.data_[i].emplace_back(j, acc[j]);
        acc[j] = Rational();
        touched[j] = 0;
      }
    }
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

  /// {"rows": n, "cols": m, "entries": [[i, j, "p/q"], ...]}, row-major.
  [[nodiscard]] json to_json() const {
    json entries = json::array();
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) entries.push_back(json::array({i, j, v.str()}));
    return json{{"rows", rows()}, {"cols", cols_}, {"entries", std::move(entries)}};
  }

  static SparseMatrix from_json(const json& j) {
    auto field = [&](const char* name) -> const json& {
      if (!j.is_object() || !j.contains(name)) throw std::invalid_argument(std::string("matrix: missing field '") + name + "'");
      return j.at(name);
    };
    const json& r = field("rows");
    const json& c = field("cols");
    const json& e = field("entries");
    if (!r.is_number_unsigned() && !(r.is_number_integer() && r.get<long long>() >= 0))
      throw std::invalid_argument("matrix: field 'rows' must be a non-negative integer");
    if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0))
      throw std::invalid_argument("matrix: field 'cols' must be a non-negative integer");
    if (!e.is_array()) throw std::invalid_argument("matrix: field 'entries' must be an array");
    SparseMatrix m(r.get<std::size_t>(), c.get<std::size_t>());
    for (const auto& t : e) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
          !t[2].is_string())
        throw std::invalid_argument("matrix: malformed entry in field 'entries'");
      const auto i = t[0].get<long long>();
      const auto k = t[1].get<long long>();
      if (i < 0 || k < 0 || static_cast<std::size_t>(i) >= m.rows() || static_cast<std::size_t>(k) >= m.cols())
        throw std::invalid_argument("matrix: entry index out of bounds in field 'entries'");
      const Rational v = Rational::parse(t[2].get<std::string>());
      if (v.is_zero()) throw std::invalid_argument("matrix: explicit zero in field 'entries'");
      if (!m.get(i, k).is_zero()) throw std::invalid_argument("matrix: duplicate entry in field 'entries'");
      m.set(i, k, v);
    }
    return m;
  }

private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols_) throw std::out_of_range("matrix index out of range");
  }
  void same_shape(const SparseMatrix& o) const {
    if (rows() != o.rows() || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  static Row merge(const Row& a, const Row& b, const Rational& c) {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t p = 0, q = 0;
    while (p < a.size() || q < b.size()) {
      if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
        out.push_back(a[p++]);
      } else if (p == a.size() || b[q].first < a[p].first) {
        out.emplace_back(b[q].first, c * b[q].second);
        ++q;
      } else {
        Rational v = a[p].second + c * b[q].second;
        if (!v.is_zero()) out.emplace_back(a[p].first, std::move(v));
        ++p;
        ++q;
      }
    }
    return out;
  }

  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

/// Matrix commutator xy - yx.
inline SparseMatrix bracket(const SparseMatrix& x, const SparseMatrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw std::invalid_argument("bracket: operands must be square of equal size");
  return x * y - y * x;
}

}  // namespace hamlie
