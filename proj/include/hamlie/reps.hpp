#pragma once

// Finite-dimensional representations of sp_2n: natural, exterior, symmetric
// and tensor powers, the contraction kernels V(delta_k), cyclic
// subrepresentations, and the irreducibility test used throughout.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hamlie/linalg.hpp"
#include "hamlie/symplectic.hpp"

namespace hamlie {

using Weight = std::vector<std::int64_t>;

/// Realization of a representation as a subspace of another one.
struct Embedding {
  std::string ambient_name;
  std::vector<std::string> ambient_labels;
  Subspace subspace;  // basis rows = images of this representation's basis vectors
};

struct Representation {
  SpAlgebraPtr alg;
  std::string name;
  std::vector<std::string> labels;
  std::vector<SparseMatrix> action;  // one matrix per basis element of alg, in basis order
  std::vector<Weight> weights;       // epsilon coordinates, one per basis vector
  std::optional<Embedding> embedding;

  [[nodiscard]] std::size_t dim() const { return labels.size(); }
  [[nodiscard]] std::size_t rank() const { return alg->rank(); }
  [[nodiscard]] const SparseMatrix& rho(std::size_t generator) const { return action.at(generator); }

  /// rho of the element sum_k c_k basis_k.
  [[nodiscard]] SparseMatrix rho(const Vector& coeffs) const {
    SparseMatrix out(dim(), dim());
    for (std::size_t k = 0; k < action.size(); ++k) out.add_scaled(coeffs.at(k), action[k]);
    return out;
  }
};

using RepresentationPtr = std::shared_ptr<const Representation>;

struct LinearMap {
  RepresentationPtr source;
  RepresentationPtr target;
  SparseMatrix matrix;  // target.dim x source.dim
};

namespace detail {

/// Reads weights off the diagonal of rho(h_i); the Cartan action must be diagonal.
inline std::vector<Weight> diagonal_weights(const Representation& rep) {
  const std::size_t n = rep.rank();
  std::vector<Weight> w(rep.dim(), Weight(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& h = rep.action.at(rep.alg->h(i));
    for (std::size_t r = 0; r < h.rows(); ++r)
      for (const auto& [c, v] : h.row(r)) {
        if (c != r) throw std::logic_error("representation basis is not a weight basis");
        w[r][i] = v.to_int64();
      }
  }
  return w;
}

inline std::string join(const std::vector<std::string>& parts, const std::vector<std::size_t>& idx,
                        const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? sep : "") + parts[idx[k]];
  return s;
}

template <typename Pred>
void for_each_tuple(std::size_t n, std::size_t k, bool strict, std::vector<std::size_t>& cur, Pred&& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  std::size_t start = cur.empty() ? 0 : cur.back() + (strict ? 1 : 0);
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    for_each_tuple(n, k, strict, cur, f);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> tuples(std::size_t n, std::size_t k, bool strict) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  for_each_tuple(n, k, strict, cur, [&](const std::vector<std::size_t>& t) { out.push_back(t); });
  return out;
}

// Sorts t in place; returns the permutation sign, or 0 if an index repeats.
inline int sort_with_sign(std::vector<std::size_t>& t) {
  int sign = 1;
  for (std::size_t a = 1; a < t.size(); ++a)
    for (std::size_t b = a; b > 0 && t[b - 1] >= t[b]; --b) {
      if (t[b - 1] == t[b]) return 0;
      std::swap(t[b - 1], t[b]);
      sign = -sign;
    }
  return sign;
}

}  // namespace detail

inline RepresentationPtr trivial_rep(const SpAlgebraPtr& alg) {
  auto rep = std::make_shared<Representation>();
  rep->alg = alg;
  rep->name = "trivial";
  rep->labels = {"1"};
  rep->action.assign(alg->dim(), SparseMatrix(1, 1));
  rep->weights = {Weight(alg->rank(), 0)};
  return rep;
}

inline RepresentationPtr natural_rep(const SpAlgebraPtr& alg) {
  auto rep = std::make_shared<Representation>();
  rep->alg = alg;
  rep->name = "natural";
  for (std::size_t i = 0; i < alg->N(); ++i) rep->labels.push_back("e" + std::to_string(i + 1));
  rep->action = alg->matrices();
  rep->weights = detail::diagonal_weights(*rep);
  return rep;
}

inline bool is_natural(const Representation& rep) {
  return rep.dim() == rep.alg->N() && rep.action == rep.alg->matrices();
}

inline bool is_trivial(const Representation& rep) {
  return rep.dim() == 1 && std::all_of(rep.action.begin(), rep.action.end(), [](const auto& m) { return m.is_zero(); });
}

/// Lambda^k of rep with derivation action on the basis of increasing tuples.
inline RepresentationPtr exterior_power(const RepresentationPtr& base, std::size_t k) {
  if (k > base->dim()) throw std::invalid_argument("exterior_power: k out of range");
  const auto basis = detail::tuples(base->dim(), k, true);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

  auto rep = std::make_shared<Representation>();
  rep->alg = base->alg;
  rep->name = base->name == "natural" ? "exterior:" + std::to_string(k)
                                      : "exterior:" + std::to_string(k) + "(" + base->name + ")";
  for (const auto& t : basis) rep->labels.push_back(k == 0 ? "1" : detail::join(base->labels, t, "^"));
  for (const auto& x : base->action) {
    const auto xt = x.transpose();  // column access: xt.row(c) = entries x[m][c]
    SparseMatrix m(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const auto& t = basis[col];
      for (std::size_t pos = 0; pos < k; ++pos)
        for (const auto& [target, v] : xt.row(t[pos])) {
          auto u = t;
          u[pos] = target;
          const int s = detail::sort_with_sign(u);
          if (s != 0) m.add_to(index.at(u), col, s > 0 ? v : -v);
        }
    }
    rep->action.push_back(std::move(m));
  }
  rep->weights = detail::diagonal_weights(*rep);
  return rep;
}

/// Sym^k of rep in the monomial basis (weakly increasing tuples).
inline RepresentationPtr symmetric_power(const RepresentationPtr& base, std::size_t k) {
  const auto basis = detail::tuples(base->dim(), k, false);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

  auto rep = std::make_shared<Representation>();
  rep->alg = base->alg;
  rep->name = base->name == "natural" ? "sym:" + std::to_string(k)
                                      : "sym:" + std::to_string(k) + "(" + base->name + ")";
  for (const auto& t : basis) rep->labels.push_back(k == 0 ? "1" : detail::join(base->labels, t, "."));
  for (const auto& x : base->action) {
    const auto xt = x.transpose();
    SparseMatrix m(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const auto& t = basis[col];
      for (std::size_t pos = 0; pos < k; ++pos)
        for (const auto& [target, v] : xt.row(t[pos])) {
          auto u = t;
          u[pos] = target;
          std::sort(u.begin(), u.end());
          m.add_to(index.at(u), col, v);
        }
    }
    rep->action.push_back(std::move(m));
  }
  rep->weights = detail::diagonal_weights(*rep);
  return rep;
}

inline RepresentationPtr tensor_product(const RepresentationPtr& a, const RepresentationPtr& b) {
  if (a->alg != b->alg && a->alg->rank() != b->alg->rank())
    throw std::invalid_argument("tensor_product: representations of different algebras");
  auto rep = std::make_shared<Representation>();
  rep->alg = a->alg;
  rep->name = "(" + a->name + ")x(" + b->name + ")";
  const std::size_t db = b->dim();
  for (const auto& la : a->labels)
    for (const auto& lb : b->labels) rep->labels.push_back(la + "(x)" + lb);
  for (std::size_t g = 0; g < a->action.size(); ++g) {
    SparseMatrix m(rep->dim(), rep->dim());
    const auto& xa = a->action[g];
    const auto& xb = b->action[g];
    for (std::size_t i = 0; i < a->dim(); ++i) {
      for (const auto& [i2, v] : xa.row(i))
        for (std::size_t j = 0; j < db; ++j) m.add_to(i * db + j, i2 * db + j, v);
      for (std::size_t j = 0; j < db; ++j)
        for (const auto& [j2, v] : xb.row(j)) m.add_to(i * db + j, i * db + j2, v);
    }
    rep->action.push_back(std::move(m));
  }
  rep->weights = detail::diagonal_weights(*rep);
  return rep;
}

/// The restriction of rep to an invariant subspace, in the subspace's RREF basis.
/// Throws if the subspace is not invariant.
inline RepresentationPtr subrepresentation(const RepresentationPtr& base, const Subspace& sub, std::string name) {
  if (sub.ambient_dim() != base->dim()) throw std::invalid_argument("subrepresentation: ambient mismatch");
  auto rep = std::make_shared<Representation>();
  rep->alg = base->alg;
  rep->name = std::move(name);
  for (std::size_t j = 0; j < sub.dim(); ++j)
    rep->labels.push_back("v" + std::to_string(j + 1) + "[" + base->labels[sub.pivots()[j]] + "]");
  for (const auto& x : base->action) {
    SparseMatrix m(sub.dim(), sub.dim());
    for (std::size_t j = 0; j < sub.dim(); ++j) {
      const Vector y = x.apply(sub.basis()[j]);
      if (!sub.contains(y)) throw std::invalid_argument("subrepresentation: subspace is not invariant");
      const Vector c = sub.coordinates(y);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) m.set(i, j, c[i]);
    }
    rep->action.push_back(std::move(m));
  }
  rep->weights = detail::diagonal_weights(*rep);
  rep->embedding = Embedding{base->name, base->labels, sub};
  return rep;
}

// ---------------------------------------------------------------------------
// Contraction map Lambda^k -> Lambda^{k-2}

/// theta_k(v_1 ^ ... ^ v_k) = sum_{a<b} (-1)^{a+b-1} (v_a, bar(v_b)) v_1 ^ .. ^ v_k with slots a, b removed.
inline LinearMap contraction_theta(const SpAlgebraPtr& alg, std::size_t k) {
  if (k < 2) throw std::invalid_argument("contraction_theta: k must be at least 2");
  if (k > alg->N()) throw std::invalid_argument("contraction_theta: k exceeds N");
  const auto nat = natural_rep(alg);
  auto src = exterior_power(nat, k);
  auto tgt = exterior_power(nat, k - 2);
  const std::size_t n = alg->rank();
  const auto basis = detail::tuples(alg->N(), k, true);
  const auto tbasis = detail::tuples(alg->N(), k - 2, true);
  std::map<std::vector<std::size_t>, std::size_t> tindex;
  for (std::size_t i = 0; i < tbasis.size(); ++i) tindex[tbasis[i]] = i;
  // (e_p, bar(e_q)): bar(e_q) = -e_{q+n} for q < n, e_{q-n} for q >= n.
  auto form = [n](std::size_t p, std::size_t q) -> int {
    if (q < n) return p == q + n ? -1 : 0;
    return p + n == q ? 1 : 0;
  };
  SparseMatrix m(tbasis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& t = basis[col];
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        const int f = form(t[a], t[b]);
        if (f == 0) continue;
        // one-based positions a+1, b+1: sign (-1)^{a+b+1}
        const int sign = ((a + b + 1) % 2 == 0) ? 1 : -1;
        std::vector<std::size_t> rest;
        for (std::size_t c = 0; c < k; ++c)
          if (c != a && c != b) rest.push_back(t[c]);
        m.add_to(tindex.at(rest), col, sign * f);
      }
  }
  return {src, tgt, std::move(m)};
}

struct IntertwinerReport {
  bool ok = true;
  std::vector<std::string> violations;  // labels of basis elements x with f rho(x) != rho(x) f
};

inline IntertwinerReport verify_intertwiner(const LinearMap& f) {
  IntertwinerReport r;
  const auto& alg = *f.source->alg;
  if (f.matrix.rows() != f.target->dim() || f.matrix.cols() != f.source->dim())
    throw std::invalid_argument("verify_intertwiner: matrix shape does not match source/target");
  for (std::size_t g = 0; g < alg.dim(); ++g)
    if (f.matrix * f.source->action[g] != f.target->action[g] * f.matrix) {
      r.ok = false;
      r.violations.push_back(alg.generators()[g].name());
    }
  return r;
}

/// V(delta_k): trivial for k = 0, natural for k = 1, Ker(theta_k) for k >= 2.
inline RepresentationPtr fundamental_rep(const SpAlgebraPtr& alg, std::size_t k) {
  if (k > alg->rank()) throw std::invalid_argument("fundamental_rep: k exceeds the rank");
  if (k == 0) return trivial_rep(alg);
  if (k == 1) return natural_rep(alg);
  const auto theta = contraction_theta(alg, k);
  return subrepresentation(theta.source, nullspace(theta.matrix), "fundamental:" + std::to_string(k));
}

/// k such that rep is the kernel realization of V(delta_k), k >= 2.
inline std::optional<std::size_t> kernel_degree(const Representation& rep) {
  const std::string prefix = "fundamental:";
  if (!rep.embedding || rep.name.rfind(prefix, 0) != 0) return std::nullopt;
  const std::size_t k = std::stoul(rep.name.substr(prefix.size()));
  return k >= 2 ? std::optional<std::size_t>(k) : std::nullopt;
}

// ---------------------------------------------------------------------------
// Weight vectors, cyclic spans, irreducibility

/// Weight of a vector supported on basis vectors of a single weight.
inline Weight weight_of(const Representation& rep, const Vector& v) {
  std::optional<Weight> w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!w)
      w = rep.weights[i];
    else if (*w != rep.weights[i])
      throw std::invalid_argument("weight_of: vector is not a weight vector");
  }
  if (!w) throw std::invalid_argument("weight_of: zero vector");
  return *w;
}

inline std::vector<std::pair<Vector, Weight>> highest_weight_vectors(const Representation& rep) {
  const auto& alg = *rep.alg;
  std::vector<std::size_t> positive;
  for (std::size_t g = 0; g < alg.dim(); ++g)
    if (alg.generators()[g].is_positive_root()) positive.push_back(g);
  SparseMatrix stacked(positive.size() * rep.dim(), rep.dim());
  for (std::size_t b = 0; b < positive.size(); ++b) {
    const auto& x = rep.action[positive[b]];
    for (std::size_t i = 0; i < rep.dim(); ++i)
      for (const auto& [j, v] : x.row(i)) stacked.set(b * rep.dim() + i, j, v);
  }
  std::vector<std::pair<Vector, Weight>> out;
  const Subspace ker = nullspace(stacked);
  for (const auto& v : ker.basis()) out.emplace_back(v, weight_of(rep, v));
  return out;
}

/// Smallest invariant subspace containing v.
inline Subspace cyclic_span(const Representation& rep, const Vector& v) {
  Subspace s(rep.dim());
  std::deque<Vector> queue;
  if (s.insert(v)) queue.push_back(v);
  while (!queue.empty() && !s.is_full()) {
    const Vector u = std::move(queue.front());
    queue.pop_front();
    for (const auto& x : rep.action) {
      Vector w = x.apply(u);
      if (s.insert(w)) queue.push_back(std::move(w));
    }
  }
  return s;
}

/// Cyclic from every basis vector and a unique highest-weight line.
inline bool is_irreducible(const Representation& rep) {
  if (rep.dim() == 0) throw std::invalid_argument("is_irreducible: zero-dimensional representation");
  if (highest_weight_vectors(rep).size() != 1) return false;
  for (std::size_t i = 0; i < rep.dim(); ++i)
    if (!cyclic_span(rep, unit_vector(rep.dim(), i)).is_full()) return false;
  return true;
}

/// Cyclic subrepresentation generated by a highest-weight vector of weight lambda.
inline RepresentationPtr highest_weight_subrep(const RepresentationPtr& rep, const Weight& lambda, std::string name) {
  for (const auto& [v, w] : highest_weight_vectors(*rep))
    if (w == lambda) return subrepresentation(rep, cyclic_span(*rep, v), std::move(name));
  throw std::invalid_argument("highest_weight_subrep: no highest-weight vector of the requested weight");
}

/// Pairs (x, y) of basis elements with rho([x,y]) != [rho(x), rho(y)].
inline std::vector<std::pair<std::string, std::string>> bracket_violations(const Representation& rep) {
  const auto& alg = *rep.alg;
  std::vector<std::pair<std::string, std::string>> bad;
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = a + 1; b < alg.dim(); ++b) {
      const Vector c = alg.decompose(bracket(alg.matrix(a), alg.matrix(b)));
      if (rep.rho(c) != bracket(rep.action[a], rep.action[b]))
        bad.emplace_back(alg.generators()[a].name(), alg.generators()[b].name());
    }
  return bad;
}

// ---------------------------------------------------------------------------
// Wedge products in Lambda^k Q^N (basis: increasing tuples, lexicographic)

/// Index of every increasing k-tuple of {0..N-1} in lexicographic order.
inline std::map<std::vector<std::size_t>, std::size_t> wedge_index(std::size_t N, std::size_t k) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  const auto basis = detail::tuples(N, k, true);
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  return index;
}

/// Matrix of x -> u ^ x from Lambda^k to Lambda^{k+1}.
inline SparseMatrix wedge_with(const Vector& u, std::size_t k) {
  const std::size_t N = u.size();
  const auto src = detail::tuples(N, k, true);
  const auto dst = wedge_index(N, k + 1);
  SparseMatrix m(dst.size(), src.size());
  for (std::size_t col = 0; col < src.size(); ++col)
    for (std::size_t a = 0; a < N; ++a) {
      if (u[a].is_zero()) continue;
      std::vector<std::size_t> t{a};
      t.insert(t.end(), src[col].begin(), src[col].end());
      const int s = detail::sort_with_sign(t);
      if (s != 0) m.add_to(dst.at(t), col, s > 0 ? u[a] : -u[a]);
    }
  return m;
}

/// v_1 ^ ... ^ v_k in Lambda^k coordinates.
inline Vector wedge(const std::vector<Vector>& factors, std::size_t N) {
  Vector acc{Rational(1)};  // Lambda^0
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].size() != N) throw std::invalid_argument("wedge: factor has wrong length");
    // acc ^ v = (-1)^k v ^ acc
    Vector next = wedge_with(factors[k], k).apply(acc);
    if (k % 2 == 1)
      for (auto& x : next) x = -x;
    acc = std::move(next);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Serialization

inline json rep_to_json(const Representation& rep) {
  json action = json::object();
  const auto labels = rep.alg->labels();
  for (std::size_t g = 0; g < labels.size(); ++g) action[labels[g]] = rep.action[g].to_json();
  json j{{"n", rep.rank()},       {"name", rep.name},       {"dim", rep.dim()},
         {"labels", rep.labels}, {"weights", rep.weights}, {"action", std::move(action)}};
  if (rep.embedding)
    j["embedding"] = json{{"ambient_name", rep.embedding->ambient_name},
                          {"ambient_labels", rep.embedding->ambient_labels},
                          {"basis", rep.embedding->subspace.to_json()}};
  return j;
}

inline RepresentationPtr rep_from_json(const json& j) {
  auto need = [&](const char* f) -> const json& {
    if (!j.is_object() || !j.contains(f)) throw std::invalid_argument(std::string("representation: missing field '") + f + "'");
    return j.at(f);
  };
  const json& jn = need("n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1)
    throw std::invalid_argument("representation: field 'n' must be a positive integer");
  auto rep = std::make_shared<Representation>();
  rep->alg = build_sp(jn.get<std::size_t>());
  const json& jname = need("name");
  if (!jname.is_string()) throw std::invalid_argument("representation: field 'name' must be a string");
  rep->name = jname.get<std::string>();
  const json& jdim = need("dim");
  if (!jdim.is_number_integer() || jdim.get<long long>() < 0)
    throw std::invalid_argument("representation: field 'dim' must be a non-negative integer");
  const auto dim = jdim.get<std::size_t>();
  const json& jl = need("labels");
  if (!jl.is_array() || jl.size() != dim) throw std::invalid_argument("representation: field 'labels' must list dim labels");
  for (const auto& l : jl) {
    if (!l.is_string()) throw std::invalid_argument("representation: field 'labels' must hold strings");
    rep->labels.push_back(l.get<std::string>());
  }
  const json& ja = need("action");
  if (!ja.is_object()) throw std::invalid_argument("representation: field 'action' must be an object");
  for (const auto& label : rep->alg->labels()) {
    if (!ja.contains(label)) throw std::invalid_argument("representation: field 'action' lacks label '" + label + "'");
    auto m = SparseMatrix::from_json(ja.at(label));
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("representation: field 'action." + label + "' has wrong shape");
    rep->action.push_back(std::move(m));
  }
  if (ja.size() != rep->alg->dim())
    throw std::invalid_argument("representation: field 'action' has labels outside the sp basis");
  const json& jw = need("weights");
  std::vector<Weight> weights;
  try {
    weights = jw.get<std::vector<Weight>>();
  } catch (const json::exception&) {
    throw std::invalid_argument("representation: field 'weights' must be integer vectors");
  }
  try {
    rep->weights = detail::diagonal_weights(*rep);
  } catch (const std::exception&) {
    throw std::invalid_argument("representation: field 'action' has a non-diagonal Cartan action");
  }
  if (weights != rep->weights) throw std::invalid_argument("representation: field 'weights' disagrees with the Cartan action");
  if (j.contains("embedding")) {
    const json& je = j.at("embedding");
    if (!je.is_object() || !je.contains("ambient_labels") || !je.contains("basis") || !je.contains("ambient_name"))
      throw std::invalid_argument("representation: field 'embedding' is malformed");
    Embedding e;
    e.ambient_name = je.at("ambient_name").get<std::string>();
    e.ambient_labels = je.at("ambient_labels").get<std::vector<std::string>>();
    e.subspace = Subspace::from_json(e.ambient_labels.size(), je.at("basis"), "embedding.basis");
    if (e.subspace.dim() != dim) throw std::invalid_argument("representation: field 'embedding.basis' has wrong rank");
    rep->embedding = std::move(e);
  }
  return rep;
}

inline void save_rep(const Representation& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << rep_to_json(rep).dump(1) << '\n';
}

inline RepresentationPtr load_rep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("representation file '" + path + "' is not valid JSON: " + e.what());
  }
  return rep_from_json(j);
}

}  // namespace hamlie
