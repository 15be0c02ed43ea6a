#pragma once

// The Hamiltonian Lie algebra acting on F^{alpha,beta}(V) = V (x) A_N:
//   H_r (v (x) t^s) = ((bar(r), s + alpha) I + rho(r bar(r)^T)) v (x) t^{r+s}
//   d_i (v (x) t^s) = (s_i + beta_i) v (x) t^s
// together with the coefficient systems g1, g2 of composed generators.

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hamlie/parallel.hpp"
#include "hamlie/polynomial.hpp"
#include "hamlie/random.hpp"
#include "hamlie/report.hpp"
#include "hamlie/reps.hpp"

namespace hamlie {

struct ModuleParams {
  RepresentationPtr rep;
  Vector alpha;
  Vector beta;

  void validate() const {
    if (!rep) throw std::invalid_argument("module parameters: missing representation");
    const std::size_t N = rep->alg->N();
    if (alpha.size() != N) throw std::invalid_argument("module parameters: alpha must have length 2n");
    if (beta.size() != N) throw std::invalid_argument("module parameters: beta must have length 2n");
  }

  [[nodiscard]] bool alpha_integral() const {
    return std::all_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a.is_integer(); });
  }

  [[nodiscard]] json to_json() const {
    return json{{"rep", rep->name}, {"n", rep->rank()}, {"alpha", vector_to_json(alpha)}, {"beta", vector_to_json(beta)}};
  }
};

/// v (x) t^grade.
struct GradedVector {
  Grade grade;
  Vector payload;

  friend bool operator==(const GradedVector&, const GradedVector&) = default;

  [[nodiscard]] json to_json() const { return json{{"grade", grade}, {"payload", vector_to_json(payload)}}; }
};

/// rho(r bar(r)^T) memoized per r. Concurrent readers, single writer on insert.
class RankOneCache {
public:
  explicit RankOneCache(RepresentationPtr rep) : rep_(std::move(rep)) {}

  const SparseMatrix& get(const Grade& r) const {
    {
      std::shared_lock lock(mutex_);
      auto it = cache_.find(r);
      if (it != cache_.end()) return it->second;
    }
    SparseMatrix m = rep_->rho(rep_->alg->decompose(outer_bar(r)));
    std::unique_lock lock(mutex_);
    return cache_.try_emplace(r, std::move(m)).first->second;
  }

  [[nodiscard]] const RepresentationPtr& rep() const { return rep_; }

private:
  RepresentationPtr rep_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Grade, SparseMatrix> cache_;
};

class ShenLarssonModule {
public:
  explicit ShenLarssonModule(ModuleParams p, std::shared_ptr<RankOneCache> cache = nullptr)
      : params_(std::move(p)), cache_(std::move(cache)) {
    params_.validate();
    if (!cache_) cache_ = std::make_shared<RankOneCache>(params_.rep);
    if (cache_->rep() != params_.rep) throw std::invalid_argument("rank-one cache belongs to another representation");
  }

  /// Same representation and cache, new parameters.
  [[nodiscard]] ShenLarssonModule with_parameters(Vector alpha, Vector beta) const {
    return ShenLarssonModule(ModuleParams{params_.rep, std::move(alpha), std::move(beta)}, cache_);
  }

  [[nodiscard]] const ModuleParams& params() const { return params_; }
  [[nodiscard]] const Representation& rep() const { return *params_.rep; }
  [[nodiscard]] std::size_t N() const { return params_.alpha.size(); }
  [[nodiscard]] std::size_t rank() const { return N() / 2; }
  [[nodiscard]] std::size_t dim() const { return params_.rep->dim(); }

  [[nodiscard]] const SparseMatrix& rank_one(const Grade& r) const { return cache_->get(r); }

  /// (bar(r), s + alpha).
  [[nodiscard]] Rational scalar_part(const Grade& r, const Grade& s) const {
    return bar_pairing(r, s) + bar_pairing(r, params_.alpha);
  }

  /// Matrix of H_r from grade s to grade s + r. r = 0 gives the zero matrix.
  [[nodiscard]] SparseMatrix h_matrix(const Grade& r, const Grade& s) const {
    return rank_one(r) + scalar_part(r, s) * SparseMatrix::identity(dim());
  }

  [[nodiscard]] Vector apply_h(const Grade& r, const Grade& s, const Vector& v) const {
    Vector out = rank_one(r).apply(v);
    axpy(scalar_part(r, s), v, out);
    return out;
  }

  [[nodiscard]] GradedVector act_H(const Grade& r, const GradedVector& x) const {
    check(r, x);
    if (std::all_of(r.begin(), r.end(), [](auto c) { return c == 0; }))
      throw std::invalid_argument("act_H: H_0 is not a generator");
    Grade g(x.grade);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += r[i];
    return {std::move(g), apply_h(r, x.grade, x.payload)};
  }

  /// d_i with zero-based i < N.
  [[nodiscard]] GradedVector act_d(std::size_t i, const GradedVector& x) const {
    if (i >= N()) throw std::invalid_argument("act_d: index out of range");
    if (x.grade.size() != N() || x.payload.size() != dim()) throw std::invalid_argument("act_d: malformed graded vector");
    return {x.grade, scaled(Rational(x.grade[i]) + params_.beta[i], x.payload)};
  }

private:
  void check(const Grade& r, const GradedVector& x) const {
    if (r.size() != N() || x.grade.size() != N()) throw std::invalid_argument("lattice vector must have length 2n");
    if (x.payload.size() != dim()) throw std::invalid_argument("payload length must equal dim V");
  }

  ModuleParams params_;
  std::shared_ptr<RankOneCache> cache_;
};

inline Grade operator+(const Grade& a, const Grade& b) {
  Grade c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.at(i);
  return c;
}
inline Grade operator-(const Grade& a, const Grade& b) {
  Grade c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.at(i);
  return c;
}
inline Grade operator-(const Grade& a) {
  Grade c(a);
  for (auto& x : c) x = -x;
  return c;
}

inline bool is_zero_grade(const Grade& g) {
  return std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; });
}

inline Grade unit_grade(std::size_t N, std::size_t i) {
  Grade g(N, 0);
  g.at(i) = 1;
  return g;
}

// ---------------------------------------------------------------------------
// Bracket law

struct BracketOutcome {
  bool equal = false;
  GradedVector lhs;  // H_r H_s x - H_s H_r x
  GradedVector rhs;  // (bar(r), s) H_{r+s} x, or zero when r + s = 0
};

/// [H_r, H_s] = (bar(r), s) H_{r+s} on x. For r + s = 0 the right side is the
/// zero vector at the grade of x: the commutator of H_r and H_{-r} is computed
/// directly and must vanish.
inline BracketOutcome bracket_outcome(const ShenLarssonModule& m, const Grade& r, const Grade& s, const GradedVector& x) {
  if (is_zero_grade(r) || is_zero_grade(s)) throw std::invalid_argument("verify_ham_bracket: r and s must be nonzero");
  BracketOutcome o;
  const auto rs = m.act_H(r, m.act_H(s, x));
  const auto sr = m.act_H(s, m.act_H(r, x));
  o.lhs = {rs.grade, rs.payload};
  for (std::size_t i = 0; i < o.lhs.payload.size(); ++i) o.lhs.payload[i] -= sr.payload[i];
  const Grade sum = r + s;
  if (is_zero_grade(sum)) {
    o.rhs = {x.grade, Vector(m.dim())};
  } else {
    auto h = m.act_H(sum, x);
    o.rhs = {h.grade, scaled(bar_pairing(r, s), h.payload)};
  }
  o.equal = o.lhs == o.rhs;
  return o;
}

inline bool verify_ham_bracket(const ShenLarssonModule& m, const Grade& r, const Grade& s, const GradedVector& x) {
  return bracket_outcome(m, r, s, x).equal;
}

/// Random (r, s, grade, payload, alpha) samples. Alpha alternates between
/// integral and non-integral draws; the rank-one cache is shared.
inline Report ham_bracket_sweep(const ShenLarssonModule& base, std::size_t samples, std::uint64_t seed,
                                std::int64_t radius = 3) {
  Report rep{"ham-bracket"};
  rep.params = base.params().to_json();
  rep.params["samples"] = samples;
  rep.params["seed"] = seed;
  rep.params["radius"] = radius;
  const std::size_t N = base.N();
  struct Sample {
    Grade r, s;
    GradedVector x;
    Vector alpha;
  };
  Rng rng(seed);
  std::vector<Sample> draws;
  for (std::size_t k = 0; k < samples; ++k) {
    Sample d;
    d.alpha = (k % 2 == 0) ? rng.non_integral_vector(N) : to_rational(rng.grade(N, 2));
    d.r = rng.nonzero_grade(N, radius);
    d.s = (k % 50 == 7) ? -d.r : rng.nonzero_grade(N, radius);
    d.x = {rng.grade(N, radius), rng.nonzero_vector(base.dim())};
    draws.push_back(std::move(d));
  }
  const auto outcomes = parallel_map(draws.size(), [&](std::size_t k) {
    const auto& d = draws[k];
    const auto m = base.with_parameters(d.alpha, base.params().beta);
    return bracket_outcome(m, d.r, d.s, d.x);
  });
  for (std::size_t k = 0; k < draws.size(); ++k) {
    const auto& o = outcomes[k];
    rep.record(o.equal, o.equal ? json(nullptr)
                                : json{{"r", draws[k].r},
                                       {"s", draws[k].s},
                                       {"alpha", vector_to_json(draws[k].alpha)},
                                       {"x", draws[k].x.to_json()},
                                       {"lhs", o.lhs.to_json()},
                                       {"rhs", o.rhs.to_json()}});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// g1 and g2

/// g1(s) = (bar(s), r + alpha) I + rho(s bar(s)^T): the matrix of H_s from grade r - s.
inline MatrixPolynomial g1_polynomial(const ShenLarssonModule& m, const Grade& r) {
  const std::size_t N = m.N();
  const PolyVector s = variable_vector(N);
  const PolyVector shift = constant_vector(add(r, m.params().alpha));
  return MatrixPolynomial::scalar(pairing(bar(s), shift), m.dim()) + rho_outer_bar(s, m.rep());
}

/// g2(s) = [(bar(r) - bar(s), k + s + alpha) I + rho((r - s)(bar(r) - bar(s))^T)]
///         [(bar(s), k + alpha) I + rho(s bar(s)^T)]
inline MatrixPolynomial g2_polynomial(const ShenLarssonModule& m, const Grade& r, const Grade& k) {
  const std::size_t N = m.N();
  const PolyVector s = variable_vector(N);
  const PolyVector kalpha = constant_vector(add(k, m.params().alpha));
  const PolyVector rs = constant_vector(to_rational(r)) - s;
  const auto first = MatrixPolynomial::scalar(pairing(bar(rs), kalpha + s), m.dim()) + rho_outer_bar(rs, m.rep());
  const auto second = MatrixPolynomial::scalar(pairing(bar(s), kalpha), m.dim()) + rho_outer_bar(s, m.rep());
  return first * second;
}

/// Degree-two part of g1 written out in the sp basis.
inline MatrixPolynomial g1_displayed_quadratic(const Representation& rep) {
  const auto& alg = *rep.alg;
  const std::size_t n = alg.rank(), N = alg.N();
  const Rational half(1, 2);
  MatrixPolynomial p(N, rep.dim());
  for (std::size_t a = 0; a < n; ++a) {
    p.add(monomial(N, {{a, 1}, {n + a, 1}}), rep.rho(alg.h(a)));
    p.add(monomial(N, {{n + a, 2}}), half * rep.rho(alg.x_neg(a, a)));
    p.add(monomial(N, {{a, 2}}), -half * rep.rho(alg.x_sum(a, a)));
  }
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c)
      if (b != c) p.add(monomial(N, {{b, 1}, {n + c, 1}}), rep.rho(alg.x_diff(b, c)));
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t e = d + 1; e < n; ++e) {
      p.add(monomial(N, {{n + d, 1}, {n + e, 1}}), rep.rho(alg.x_neg(d, e)));
      p.add(monomial(N, {{d, 1}, {e, 1}}), Rational(-1) * rep.rho(alg.x_sum(d, e)));
    }
  return p;
}

/// g1: displayed expansion of the quadratic part, the linear part, and
/// agreement with H_s at grade r - s on sampled integer s.
inline Report verify_g1(const ShenLarssonModule& m, const Grade& r, std::size_t samples, std::uint64_t seed) {
  Report rep{"g1-check"};
  rep.params = m.params().to_json();
  rep.params["r"] = r;
  rep.params["samples"] = samples;
  rep.params["seed"] = seed;
  const auto g1 = g1_polynomial(m, r);
  rep.record(g1.degree() <= 2, json{{"reason", "degree exceeds 2"}});
  const auto expected = g1_displayed_quadratic(m.rep());
  MatrixPolynomial quadratic(m.N(), m.dim());
  for (const auto& [mono, c] : g1.terms())
    if (degree(mono) == 2) quadratic.add(mono, c);
  rep.record(quadratic.terms() == expected.terms(), json{{"reason", "quadratic part differs from the sp-basis expansion"}});
  rep.record(g1.coefficient(Monomial(m.N(), 0)).is_zero(), json{{"reason", "nonzero constant term"}});
  // linear part: (bar(s), r + alpha) I
  const Vector ra = add(r, m.params().alpha);
  const Vector rab = bar(ra);
  bool linear_ok = true;
  for (std::size_t i = 0; i < m.N(); ++i) {
    // (bar(s), u) = sum_i s_i * (coefficient): bar(s)_j = s_{n+j} (j<n), -s_{j-n} (j>=n)
    // so the coefficient of s_i is -bar(u)_i.
    const auto c = g1.coefficient(monomial(m.N(), {{i, 1}}));
    linear_ok = linear_ok && c == (-rab[i]) * SparseMatrix::identity(m.dim());
  }
  rep.record(linear_ok, json{{"reason", "linear part is not (bar(s), r + alpha) I"}});
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Grade s = rng.grade(m.N(), 4);
    const bool ok = g1.evaluate(s) == m.h_matrix(s, r - s);
    rep.record(ok, json{{"s", s}, {"reason", "g1(s) differs from H_s at grade r - s"}});
  }
  return rep;
}

/// g2 evaluated at integer s against the composed matrices of H_{r-s} H_s at grade k.
inline Report verify_g2_evaluation(const ShenLarssonModule& m, const Grade& r, const Grade& k, std::size_t samples,
                                   std::uint64_t seed) {
  Report rep{"g2-evaluation"};
  rep.params = m.params().to_json();
  rep.params["r"] = r;
  rep.params["k"] = k;
  const auto g2 = g2_polynomial(m, r, k);
  rep.record(g2.degree() <= 4, json{{"reason", "degree exceeds 4"}});
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Grade s = rng.grade(m.N(), 4);
    const bool ok = g2.evaluate(s) == m.h_matrix(r - s, k + s) * m.h_matrix(s, k);
    rep.record(ok, json{{"s", s}});
  }
  return rep;
}

/// Degree-four coefficients of g2 against the closed-form operators:
///   s_i^4              1/4 X[2e_i]^2
///   s_i^2 s_j^2        X[e_i+e_j]^2 + 1/2 X[2e_i] X[2e_j]          (i < j)
///   s_{n+i}^4          1/4 X[-2e_i]^2
///   s_{n+i}^2 s_{n+j}^2 X[-e_i-e_j]^2 + 1/2 X[-2e_j] X[-2e_i]       (i < j)
///   s_i^2 s_{n+j}^2    X[e_i-e_j]^2 - 1/2 X[-2e_j] X[2e_i]          (i != j)
///   s_i^3 s_{n+j}      -X[e_i-e_j] X[2e_i]                          (i != j)
inline Report verify_g2_table(const ShenLarssonModule& m, const Grade& r, const Grade& k) {
  Report rep{"g2-table"};
  rep.params = m.params().to_json();
  rep.params["r"] = r;
  rep.params["k"] = k;
  const auto& R = m.rep();
  const auto& alg = *R.alg;
  const std::size_t n = alg.rank(), N = alg.N();
  const auto g2 = g2_polynomial(m, r, k);
  const Rational quarter(1, 4), half(1, 2);
  auto X = [&](std::size_t idx) -> const SparseMatrix& { return R.rho(idx); };
  json rows = json::array();
  auto check = [&](const char* row, std::size_t i, std::size_t j, const Monomial& mono, const SparseMatrix& want) {
    const bool ok = g2.coefficient(mono) == want;
    json entry{{"row", row}, {"i", i + 1}, {"j", j + 1}, {"monomial", monomial_name(mono)}, {"pass", ok}};
    rows.push_back(entry);
    rep.record(ok, entry);
  };
  for (std::size_t i = 0; i < n; ++i) {
    check("s_i^4", i, i, monomial(N, {{i, 4}}), quarter * (X(alg.x_sum(i, i)) * X(alg.x_sum(i, i))));
    check("s_{n+i}^4", i, i, monomial(N, {{n + i, 4}}), quarter * (X(alg.x_neg(i, i)) * X(alg.x_neg(i, i))));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      check("s_i^2 s_j^2", i, j, monomial(N, {{i, 2}, {j, 2}}),
            X(alg.x_sum(i, j)) * X(alg.x_sum(i, j)) + half * (X(alg.x_sum(i, i)) * X(alg.x_sum(j, j))));
      check("s_{n+i}^2 s_{n+j}^2", i, j, monomial(N, {{n + i, 2}, {n + j, 2}}),
            X(alg.x_neg(i, j)) * X(alg.x_neg(i, j)) + half * (X(alg.x_neg(j, j)) * X(alg.x_neg(i, i))));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      check("s_i^2 s_{n+j}^2", i, j, monomial(N, {{i, 2}, {n + j, 2}}),
            X(alg.x_diff(i, j)) * X(alg.x_diff(i, j)) - half * (X(alg.x_neg(j, j)) * X(alg.x_sum(i, i))));
      check("s_i^3 s_{n+j}", i, j, monomial(N, {{i, 3}, {n + j, 1}}),
            Rational(-1) * (X(alg.x_diff(i, j)) * X(alg.x_sum(i, i))));
    }
  rep.details["entries"] = std::move(rows);
  return rep;
}

// ---------------------------------------------------------------------------
// Named generator actions and the shift isomorphism

/// H_{e_i}, H_{e_{n+i}} and H_{e_i + e_{n+j}} (i != j) against their closed forms.
inline Report verify_named_actions(const ShenLarssonModule& m, std::size_t samples, std::uint64_t seed) {
  Report rep{"named-actions"};
  rep.params = m.params().to_json();
  rep.params["samples"] = samples;
  rep.params["seed"] = seed;
  const auto& R = m.rep();
  const auto& alg = *R.alg;
  const std::size_t n = alg.rank(), N = alg.N();
  const auto& alpha = m.params().alpha;
  const Rational half(1, 2);
  Rng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    const Grade k = rng.grade(N, 4);
    const Vector v = rng.nonzero_vector(R.dim());
    const GradedVector x{k, v};
    for (std::size_t i = 0; i < n; ++i) {
      // (1) H_{e_i}: -(k_{n+i} + alpha_{n+i}) v - 1/2 X[2e_i] v
      {
        const Grade r = unit_grade(N, i);
        Vector want = scaled(-(Rational(k[n + i]) + alpha[n + i]), v);
        axpy(-half, R.rho(alg.x_sum(i, i)).apply(v), want);
        const auto got = m.act_H(r, x);
        const bool ok = got == GradedVector{k + r, want};
        rep.record(ok, json{{"item", 1}, {"i", i + 1}, {"x", x.to_json()}, {"got", got.to_json()}});
      }
      // (2) H_{e_{n+i}}: (k_i + alpha_i) v + 1/2 X[-2e_i] v
      {
        const Grade r = unit_grade(N, n + i);
        Vector want = scaled(Rational(k[i]) + alpha[i], v);
        axpy(half, R.rho(alg.x_neg(i, i)).apply(v), want);
        const auto got = m.act_H(r, x);
        const bool ok = got == GradedVector{k + r, want};
        rep.record(ok, json{{"item", 2}, {"i", i + 1}, {"x", x.to_json()}, {"got", got.to_json()}});
      }
    }
    // (3) H_{e_i + e_{n+j}}, i != j:
    //     (k_j + alpha_j - k_{n+i} - alpha_{n+i}) v + X[e_i-e_j] v + 1/2 X[-2e_j] v - 1/2 X[2e_i] v
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Grade r = unit_grade(N, i) + unit_grade(N, n + j);
        Vector want = scaled(Rational(k[j]) + alpha[j] - Rational(k[n + i]) - alpha[n + i], v);
        axpy(Rational(1), R.rho(alg.x_diff(i, j)).apply(v), want);
        axpy(half, R.rho(alg.x_neg(j, j)).apply(v), want);
        axpy(-half, R.rho(alg.x_sum(i, i)).apply(v), want);
        const auto got = m.act_H(r, x);
        const bool ok = got == GradedVector{k + r, want};
        rep.record(ok, json{{"item", 3}, {"i", i + 1}, {"j", j + 1}, {"x", x.to_json()}, {"got", got.to_json()}});
      }
  }
  return rep;
}

/// v (x) t^r -> v (x) t^{r - gamma} intertwines F^{alpha,beta} and F^{alpha+gamma,beta+gamma}.
inline Report verify_shift_isomorphism(const ShenLarssonModule& m, const Grade& gamma, std::size_t samples,
                                       std::uint64_t seed) {
  Report rep{"shift-iso"};
  rep.params = m.params().to_json();
  rep.params["gamma"] = gamma;
  rep.params["samples"] = samples;
  rep.params["seed"] = seed;
  const std::size_t N = m.N();
  if (gamma.size() != N) throw std::invalid_argument("shift isomorphism: gamma must have length 2n");
  const auto shifted = m.with_parameters(add(gamma, m.params().alpha), add(gamma, m.params().beta));
  auto phi = [&](GradedVector x) {
    x.grade = x.grade - gamma;
    return x;
  };
  Rng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    const GradedVector x{rng.grade(N, 4), rng.nonzero_vector(m.dim())};
    const Grade r = rng.nonzero_grade(N, 3);
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(N) - 1));
    const bool h_ok = phi(m.act_H(r, x)) == shifted.act_H(r, phi(x));
    const bool d_ok = phi(m.act_d(i, x)) == shifted.act_d(i, phi(x));
    rep.record(h_ok && d_ok, json{{"x", x.to_json()}, {"r", r}, {"i", i + 1}, {"H_ok", h_ok}, {"d_ok", d_ok}});
  }
  return rep;
}

}  // namespace hamlie
