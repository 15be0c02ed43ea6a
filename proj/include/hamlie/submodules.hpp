#pragma once

// Box-truncated graded families inside F^{alpha,beta}(V): saturation under a
// finite set of H_r, invariance checks, the explicit submodule families, and
// the finite irreducibility probe.

#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hamlie/hamiltonian.hpp"

namespace hamlie {

/// {s in Z^N : |s_i| <= radius}, indexed in mixed radix with the first
/// coordinate varying fastest.
class Box {
public:
  Box(std::size_t N, std::int64_t radius) : N_(N), radius_(radius) {
    if (radius < 1) throw std::invalid_argument("box radius must be at least 1");
    if (N == 0) throw std::invalid_argument("box dimension must be positive");
    size_ = 1;
    for (std::size_t i = 0; i < N; ++i) {
      stride_.push_back(static_cast<std::int64_t>(size_));
      size_ *= static_cast<std::size_t>(side());
    }
  }

  [[nodiscard]] std::size_t N() const { return N_; }
  [[nodiscard]] std::int64_t radius() const { return radius_; }
  [[nodiscard]] std::int64_t side() const { return 2 * radius_ + 1; }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] const std::vector<std::int64_t>& strides() const { return stride_; }

  [[nodiscard]] bool contains(const Grade& g) const {
    if (g.size() != N_) return false;
    return std::all_of(g.begin(), g.end(), [&](auto x) { return x >= -radius_ && x <= radius_; });
  }

  [[nodiscard]] std::size_t index(const Grade& g) const {
    if (!contains(g)) throw std::out_of_range("grade " + grade_key(g) + " lies outside the box");
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < N_; ++i) idx += (g[i] + radius_) * stride_[i];
    return static_cast<std::size_t>(idx);
  }

  [[nodiscard]] Grade grade(std::size_t idx) const {
    Grade g(N_);
    for (std::size_t i = 0; i < N_; ++i) {
      g[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(side())) - radius_;
      idx /= static_cast<std::size_t>(side());
    }
    return g;
  }

  /// Whether g is at distance >= margin from the boundary.
  [[nodiscard]] bool is_inner(const Grade& g, std::int64_t margin) const {
    return std::all_of(g.begin(), g.end(), [&](auto x) { return x >= -(radius_ - margin) && x <= radius_ - margin; });
  }

private:
  std::size_t N_;
  std::int64_t radius_;
  std::size_t size_ = 0;
  std::vector<std::int64_t> stride_;
};

/// Nonzero r with max |r_i| <= radius.
struct GeneratorSet {
  std::int64_t radius = 0;
  std::vector<Grade> elements;

  static GeneratorSet make(std::size_t N, std::int64_t radius) {
    if (radius < 1) throw std::invalid_argument("generator radius must be at least 1");
    GeneratorSet g{radius, {}};
    const Box b(N, radius);
    for (std::size_t i = 0; i < b.size(); ++i) {
      Grade r = b.grade(i);
      if (!is_zero_grade(r)) g.elements.push_back(std::move(r));
    }
    return g;
  }
};

/// A subspace of V at each grade of a box.
struct TruncatedModule {
  ShenLarssonModule module;
  Box box;
  std::vector<Subspace> spaces;

  TruncatedModule(ShenLarssonModule m, Box b) : module(std::move(m)), box(std::move(b)) {
    if (box.N() != module.N()) throw std::invalid_argument("box dimension does not match the module");
    spaces.assign(box.size(), Subspace(module.dim()));
  }

  [[nodiscard]] const Subspace& at(const Grade& g) const { return spaces[box.index(g)]; }
  Subspace& at(const Grade& g) { return spaces[box.index(g)]; }

  /// Every grade of this family is contained in the same grade of other.
  [[nodiscard]] bool is_subfamily_of(const TruncatedModule& other) const {
    if (other.box.size() != box.size()) throw std::invalid_argument("families live on different boxes");
    for (std::size_t i = 0; i < spaces.size(); ++i)
      if (!spaces[i].is_subspace_of(other.spaces[i])) return false;
    return true;
  }

  [[nodiscard]] json to_json() const {
    json spaces_json = json::object();
    for (std::size_t i = 0; i < spaces.size(); ++i)
      if (!spaces[i].empty()) spaces_json[grade_key(box.grade(i))] = spaces[i].to_json();
    return json{{"alpha", vector_to_json(module.params().alpha)},
                {"beta", vector_to_json(module.params().beta)},
                {"rep_ref", module.rep().name},
                {"box_radius", box.radius()},
                {"spaces", spaces_json}};
  }
};

namespace detail {

/// H_r data reused across a sweep.
struct Step {
  Grade r;
  Grade rbar;
  const SparseMatrix* rank_one = nullptr;
  Rational r_alpha;  // (bar(r), alpha)
  std::int64_t offset = 0;
};

inline std::vector<Step> steps(const ShenLarssonModule& m, const Box& box, const GeneratorSet& gens) {
  std::vector<Step> out;
  for (const auto& r : gens.elements) {
    if (r.size() != box.N()) throw std::invalid_argument("generator length does not match the box");
    Step s;
    s.r = r;
    s.rbar = bar(r);
    s.rank_one = &m.rank_one(r);
    s.r_alpha = bar_pairing(r, m.params().alpha);
    for (std::size_t i = 0; i < r.size(); ++i) s.offset += r[i] * box.strides()[i];
    out.push_back(std::move(s));
  }
  return out;
}

inline bool shifted_inside(const Grade& s, const Grade& r, std::int64_t radius) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto t = s[i] + r[i];
    if (t < -radius || t > radius) return false;
  }
  return true;
}

inline Vector apply_step(const Step& st, const Grade& s, const Vector& v) {
  Rational c = st.r_alpha;
  std::int64_t p = 0;
  for (std::size_t i = 0; i < s.size(); ++i) p += st.rbar[i] * s[i];
  c += Rational(p);
  Vector w = st.rank_one->apply(v);
  if (!c.is_zero()) axpy(c, v, w);
  return w;
}

}  // namespace detail

/// Smallest family containing the seeds and closed under every H_r, r in
/// gens, whose target grade stays inside the box.
inline TruncatedModule closure(const std::vector<GradedVector>& seeds, const ShenLarssonModule& m, const Box& box,
                               const GeneratorSet& gens) {
  TruncatedModule fam(m, box);
  const auto st = detail::steps(m, box, gens);
  std::deque<std::pair<std::size_t, Vector>> work;
  for (const auto& x : seeds) {
    if (x.payload.size() != m.dim()) throw std::invalid_argument("closure: seed payload has wrong length");
    if (!box.contains(x.grade)) throw std::out_of_range("closure: seed grade " + grade_key(x.grade) + " lies outside the box");
    const auto idx = box.index(x.grade);
    if (fam.spaces[idx].insert(x.payload)) work.emplace_back(idx, x.payload);
  }
  while (!work.empty()) {
    auto [idx, v] = std::move(work.front());
    work.pop_front();
    const Grade s = box.grade(idx);
    for (const auto& step : st) {
      if (!detail::shifted_inside(s, step.r, box.radius())) continue;
      const auto t = static_cast<std::size_t>(static_cast<std::int64_t>(idx) + step.offset);
      if (fam.spaces[t].is_full()) continue;
      Vector w = detail::apply_step(step, s, v);
      if (is_zero(w)) continue;
      if (fam.spaces[t].insert(w)) work.emplace_back(t, std::move(w));
    }
  }
  return fam;
}

/// Checks H_r family(s) subset family(s + r) for every grade s and r in gens
/// with s + r in the box. Samples count (s, r) pairs with nonzero family(s).
/// With a deadline the sweep may stop early; the report is then incomplete.
inline Report invariance_check(const TruncatedModule& fam, const GeneratorSet& gens,
                               std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt,
                               std::size_t max_witnesses = 20) {
  Report rep{"invariance"};
  rep.params = fam.module.params().to_json();
  rep.params["box_radius"] = fam.box.radius();
  rep.params["gen_radius"] = gens.radius;
  const auto st = detail::steps(fam.module, fam.box, gens);

  struct Partial {
    std::size_t pairs = 0, passes = 0;
    json witnesses = json::array();
    bool stopped = false;
  };
  const std::size_t chunk = 64;
  const std::size_t chunks = (fam.box.size() + chunk - 1) / chunk;
  const auto partials = parallel_map(chunks, [&](std::size_t c) {
    Partial p;
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
      p.stopped = true;
      return p;
    }
    const std::size_t end = std::min(fam.box.size(), (c + 1) * chunk);
    for (std::size_t idx = c * chunk; idx < end; ++idx) {
      const auto& src = fam.spaces[idx];
      if (src.empty()) continue;
      const Grade s = fam.box.grade(idx);
      for (const auto& step : st) {
        if (!detail::shifted_inside(s, step.r, fam.box.radius())) continue;
        const auto t = static_cast<std::size_t>(static_cast<std::int64_t>(idx) + step.offset);
        const auto& dst = fam.spaces[t];
        ++p.pairs;
        bool ok = true;
        for (const auto& v : src.basis()) {
          if (dst.is_full()) break;
          Vector w = detail::apply_step(step, s, v);
          if (dst.contains(w)) continue;
          ok = false;
          if (p.witnesses.size() < max_witnesses)
            p.witnesses.push_back(json{{"grade", s}, {"r", step.r}, {"vector", vector_to_json(v)}, {"image", vector_to_json(w)}});
          break;
        }
        if (ok) ++p.passes;
      }
    }
    return p;
  });
  std::size_t covered = 0;
  for (const auto& p : partials) {
    rep.samples += p.pairs;
    rep.passes += p.passes;
    for (const auto& w : p.witnesses)
      if (rep.failures.size() < max_witnesses) rep.failures.push_back(w);
    if (p.stopped)
      rep.complete = false;
    else
      ++covered;
  }
  if (rep.samples > rep.passes && rep.failures.empty()) rep.failures.push_back("violations beyond witness cap");
  rep.details["violations"] = rep.samples - rep.passes;
  rep.details["grade_chunks_covered"] = covered;
  rep.details["grade_chunks_total"] = chunks;
  return rep;
}

// ---------------------------------------------------------------------------
// Explicit families

enum class SubmoduleKind { TrivialLine, Delta1, DeltaK };

inline SubmoduleKind parse_submodule_kind(const std::string& s) {
  if (s == "trivial_line") return SubmoduleKind::TrivialLine;
  if (s == "delta1") return SubmoduleKind::Delta1;
  if (s == "deltak") return SubmoduleKind::DeltaK;
  throw std::invalid_argument("unknown submodule kind '" + s + "' (expected trivial_line, delta1 or deltak)");
}

inline std::string to_string(SubmoduleKind k) {
  switch (k) {
    case SubmoduleKind::TrivialLine: return "trivial_line";
    case SubmoduleKind::Delta1: return "delta1";
    case SubmoduleKind::DeltaK: return "deltak";
  }
  return "?";
}

/// The submodule of V(delta_k) (x) t^* with (r + alpha) ^ Lambda^{k-1} intersected
/// with Ker(theta_k) at grade r, in the coordinates of the kernel basis.
inline Subspace deltak_space(const Representation& rep, const Vector& u) {
  const auto k = kernel_degree(rep);
  if (!k) throw std::invalid_argument("deltak: representation is not a kernel realization of V(delta_k)");
  const auto& kern = rep.embedding->subspace;
  if (is_zero(u)) return Subspace::full(rep.dim());
  // u ^ x = 0 with x = sum_j c_j K_j
  const SparseMatrix wedge_u = wedge_with(u, *k);
  const SparseMatrix kt = kern.as_matrix().transpose();
  return nullspace(wedge_u * kt);
}

inline TruncatedModule build_submodule(SubmoduleKind kind, const ShenLarssonModule& m, const Box& box) {
  TruncatedModule fam(m, box);
  const auto& p = m.params();
  switch (kind) {
    case SubmoduleKind::TrivialLine: {
      if (!is_trivial(m.rep())) throw std::invalid_argument("trivial_line requires the trivial representation");
      if (!p.alpha_integral()) throw std::invalid_argument("trivial_line requires an integral alpha");
      Grade g;
      for (const auto& a : p.alpha) g.push_back(-a.to_int64());
      if (box.contains(g)) fam.at(g) = Subspace::full(1);
      break;
    }
    case SubmoduleKind::Delta1: {
      if (!is_natural(m.rep())) throw std::invalid_argument("delta1 requires the natural representation");
      for (std::size_t i = 0; i < box.size(); ++i) {
        const Vector u = add(box.grade(i), p.alpha);
        if (!is_zero(u)) fam.spaces[i].insert(u);
      }
      break;
    }
    case SubmoduleKind::DeltaK: {
      if (!kernel_degree(m.rep()))
        throw std::invalid_argument("deltak requires a fundamental:k representation with k >= 2");
      auto spaces = parallel_map(box.size(), [&](std::size_t i) { return deltak_space(m.rep(), add(box.grade(i), p.alpha)); });
      fam.spaces = std::move(spaces);
      break;
    }
  }
  return fam;
}

// ---------------------------------------------------------------------------
// Constructive nonvanishing of (r + alpha) ^ Lambda^{k-1} intersected with Ker(theta_k)

struct Claim2Witness {
  Vector u;                   // r + alpha
  std::vector<Vector> factors;  // v_1, ..., v_{k-1}
  Vector wedge;               // u ^ v_1 ^ ... ^ v_{k-1} in Lambda^k coordinates

  [[nodiscard]] json to_json() const {
    json f = json::array();
    for (const auto& v : factors) f.push_back(vector_to_json(v));
    return json{{"u", vector_to_json(u)}, {"factors", f}, {"wedge", vector_to_json(wedge)}};
  }
};

/// {w : (w, v) = (w, bar(v)) = 0 for all v in vs}.
inline Subspace symplectic_complement(const std::vector<Vector>& vs, std::size_t N) {
  SparseMatrix m(2 * vs.size(), N);
  for (std::size_t a = 0; a < vs.size(); ++a) {
    const Vector vb = bar(vs[a]);
    for (std::size_t j = 0; j < N; ++j) {
      m.set(2 * a, j, vs[a][j]);
      m.set(2 * a + 1, j, vb[j]);
    }
  }
  return nullspace(m);
}

/// Picks v_i as the first canonical basis vector of the joint complement of
/// u, v_1, ..., v_{i-1} and their bars, then verifies the wedge.
inline Claim2Witness claim2_witness(const SpAlgebraPtr& alg, const Vector& alpha, const Grade& r, std::size_t k) {
  const std::size_t N = alg->N();
  if (alpha.size() != N || r.size() != N) throw std::invalid_argument("claim2_witness: vectors must have length 2n");
  if (k < 1 || k > alg->rank()) throw std::invalid_argument("claim2_witness: k must satisfy 1 <= k <= n");
  Claim2Witness w;
  w.u = add(r, alpha);
  if (is_zero(w.u)) throw std::invalid_argument("claim2_witness: r + alpha = 0, the wedge space is zero");
  std::vector<Vector> chain{w.u};
  for (std::size_t i = 1; i < k; ++i) {
    const Subspace L = symplectic_complement(chain, N);
    if (L.empty()) throw std::logic_error("claim2_witness: complement collapsed");
    chain.push_back(L.basis().front());
    w.factors.push_back(L.basis().front());
  }
  w.wedge = wedge(chain, N);
  if (is_zero(w.wedge)) throw std::logic_error("claim2_witness: wedge vanished");
  if (k >= 2) {
    const auto theta = contraction_theta(alg, k);
    if (!is_zero(theta.matrix.apply(w.wedge))) throw std::logic_error("claim2_witness: wedge is not in Ker(theta_k)");
  }
  if (!is_zero(wedge_with(w.u, k).apply(w.wedge))) throw std::logic_error("claim2_witness: wedge is not divisible by r + alpha");
  return w;
}

/// Random (n, k, r, alpha) instances with 2 <= k <= n <= n_max.
inline Report claim2_sweep(std::size_t samples, std::uint64_t seed, std::size_t n_max = 3) {
  if (n_max < 2) throw std::invalid_argument("claim2_sweep: n_max must be at least 2");
  Report rep{"claim2-witness"};
  rep.params = json{{"samples", samples}, {"seed", seed}, {"n_max", n_max}};
  std::vector<SpAlgebraPtr> algs;
  std::vector<std::vector<SparseMatrix>> thetas;
  for (std::size_t n = 2; n <= n_max; ++n) {
    algs.push_back(build_sp(n));
    thetas.emplace_back();
    for (std::size_t k = 2; k <= n; ++k) thetas.back().push_back(contraction_theta(algs.back(), k).matrix);
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(n_max)));
    const auto k = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(n)));
    const std::size_t N = 2 * n;
    const Vector alpha = (i % 2 == 0) ? rng.non_integral_vector(N) : to_rational(rng.grade(N, 2));
    Grade r = rng.grade(N, 3);
    if (is_zero(add(r, alpha))) r[0] += 1;
    json instance{{"n", n}, {"k", k}, {"r", r}, {"alpha", vector_to_json(alpha)}};
    try {
      const auto w = claim2_witness(algs[n - 2], alpha, r, k);
      const bool in_kernel = is_zero(thetas[n - 2][k - 2].apply(w.wedge));
      const bool divisible = is_zero(wedge_with(w.u, k).apply(w.wedge));
      const bool ok = !is_zero(w.wedge) && in_kernel && divisible;
      if (!ok) instance["witness"] = w.to_json();
      rep.record(ok, ok ? json(nullptr) : instance);
    } catch (const std::logic_error& e) {
      instance["error"] = e.what();
      rep.record(false, instance);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dimension inequality for V(delta_k)

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

/// C(2n,k) - C(2n,k-2) > C(2n-1,k-1) for 2 <= k <= n <= n_max, together with
/// the ratio identity (C(2n,k) - C(2n,k-2)) / C(2n-1,k-1)
///   = 2n/k - 2n(k-1) / ((2n-k+2)(2n-k+1)).
inline Report claim1_inequality(std::size_t n_max) {
  if (n_max < 2) throw std::invalid_argument("claim1_inequality: n_max must be at least 2");
  if (n_max > 30) throw std::invalid_argument("claim1_inequality: n_max too large for 64-bit binomials");
  Report rep{"claim1-ineq"};
  rep.params = json{{"n_max", n_max}};
  json rows = json::array();
  for (std::int64_t n = 2; n <= static_cast<std::int64_t>(n_max); ++n)
    for (std::int64_t k = 2; k <= n; ++k) {
      const std::int64_t dim = binomial(2 * n, k) - binomial(2 * n, k - 2);
      const std::int64_t bound = binomial(2 * n - 1, k - 1);
      const Rational ratio(dim, bound);
      const Rational formula = Rational(2 * n, k) - Rational(2 * n * (k - 1), (2 * n - k + 2) * (2 * n - k + 1));
      const bool ok = dim > bound && ratio == formula && Rational(1) < ratio;
      json row{{"n", n}, {"k", k}, {"dim", dim}, {"bound", bound}, {"ratio", ratio.str()}, {"pass", ok}};
      rows.push_back(row);
      rep.record(ok, ok ? json(nullptr) : row);
    }
  rep.details["rows"] = rows;
  return rep;
}

// ---------------------------------------------------------------------------
// Finite irreducibility probe

struct SeedOutcome {
  std::string origin;  // "basis:i" or "random:i"
  Vector seed;
  TruncatedModule family;
  bool deficient = false;
  json profile;
};

struct ProbeResult {
  std::string verdict;  // FULL, PROPER or INCONCLUSIVE
  json params;
  std::vector<SeedOutcome> seeds;

  [[nodiscard]] bool ok() const { return verdict != "INCONCLUSIVE"; }

  [[nodiscard]] const SeedOutcome* first_deficient() const {
    for (const auto& s : seeds)
      if (s.deficient) return &s;
    return nullptr;
  }

  [[nodiscard]] json to_json() const {
    json per_seed = json::array();
    for (const auto& s : seeds)
      per_seed.push_back(json{{"origin", s.origin}, {"seed", vector_to_json(s.seed)}, {"deficient", s.deficient}, {"profile", s.profile}});
    json j{{"check", "probe"}, {"params", params}, {"verdict", verdict}, {"seeds", per_seed}};
    if (verdict == "FULL")
      j["caveat"] = "FULL is evidence only: every seed filled every inner-box grade of its truncated closure, "
                    "which is consistent with irreducibility but cannot prove it.";
    else if (verdict == "PROPER")
      j["caveat"] = "PROPER: a seed's truncated closure is closed under the generators inside the box and is "
                    "deficient at an inner-box grade. Grades outside the box are never visited.";
    else
      j["caveat"] = "INCONCLUSIVE: the inner box is empty (box radius must exceed the generator radius).";
    return j;
  }
};

/// Dimension table of fam over the grades at distance >= margin from the boundary.
inline json inner_profile(const TruncatedModule& fam, std::int64_t margin, bool& deficient) {
  json dims = json::object();
  std::size_t lo = fam.module.dim(), hi = 0, count = 0, short_grades = 0;
  deficient = false;
  for (std::size_t i = 0; i < fam.box.size(); ++i) {
    const Grade g = fam.box.grade(i);
    if (!fam.box.is_inner(g, margin)) continue;
    const auto d = fam.spaces[i].dim();
    dims[grade_key(g)] = d;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    ++count;
    if (d < fam.module.dim()) {
      deficient = true;
      ++short_grades;
    }
  }
  return json{{"inner_grades", count}, {"min_dim", count ? lo : 0}, {"max_dim", hi}, {"deficient_grades", short_grades}, {"dims", dims}};
}

inline ProbeResult irreducibility_probe(const ShenLarssonModule& m, std::int64_t box_radius, std::int64_t gen_radius,
                                        std::uint64_t seed = kDefaultSeed, std::size_t random_seeds = 4) {
  ProbeResult res;
  res.params = m.params().to_json();
  res.params["box_radius"] = box_radius;
  res.params["gen_radius"] = gen_radius;
  res.params["rng_seed"] = seed;
  res.params["random_seeds"] = random_seeds;
  const Box box(m.N(), box_radius);
  const auto gens = GeneratorSet::make(m.N(), gen_radius);
  const std::int64_t margin = gen_radius;
  if (box_radius <= margin) {
    res.verdict = "INCONCLUSIVE";
    return res;
  }
  std::vector<std::pair<std::string, Vector>> seeds;
  for (std::size_t i = 0; i < m.dim(); ++i) seeds.emplace_back("basis:" + std::to_string(i), unit_vector(m.dim(), i));
  Rng rng(seed);
  for (std::size_t i = 0; i < random_seeds; ++i) seeds.emplace_back("random:" + std::to_string(i), rng.nonzero_vector(m.dim()));

  const Grade zero(m.N(), 0);
  bool any_deficient = false;
  for (auto& [origin, v] : seeds) {
    SeedOutcome out{origin, v, closure({GradedVector{zero, v}}, m, box, gens), false, nullptr};
    out.profile = inner_profile(out.family, margin, out.deficient);
    any_deficient = any_deficient || out.deficient;
    res.seeds.push_back(std::move(out));
  }
  res.verdict = any_deficient ? "PROPER" : "FULL";
  return res;
}

/// For V trivial and alpha integral: the closure of 1 (x) t^g for every inner
/// grade g != -alpha must reach every inner grade except -alpha, i.e. the
/// quotient by the line at -alpha shows no proper family on the inner box.
inline Report trivial_quotient_probe(const ShenLarssonModule& m, std::int64_t box_radius, std::int64_t gen_radius) {
  if (!is_trivial(m.rep())) throw std::invalid_argument("quotient probe requires the trivial representation");
  if (!m.params().alpha_integral()) throw std::invalid_argument("quotient probe requires an integral alpha");
  Report rep{"quotient-probe"};
  rep.params = m.params().to_json();
  rep.params["box_radius"] = box_radius;
  rep.params["gen_radius"] = gen_radius;
  if (box_radius <= gen_radius) {
    rep.complete = false;
    return rep;
  }
  const Box box(m.N(), box_radius);
  const auto gens = GeneratorSet::make(m.N(), gen_radius);
  Grade minus_alpha;
  for (const auto& a : m.params().alpha) minus_alpha.push_back(-a.to_int64());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Grade g = box.grade(i);
    if (!box.is_inner(g, gen_radius) || g == minus_alpha) continue;
    const auto fam = closure({GradedVector{g, Vector{Rational(1)}}}, m, box, gens);
    bool ok = true;
    json missing = json::array();
    for (std::size_t j = 0; j < box.size(); ++j) {
      const Grade h = box.grade(j);
      if (!box.is_inner(h, gen_radius)) continue;
      const bool want = h != minus_alpha;
      if (fam.spaces[j].is_full() != want) {
        ok = false;
        missing.push_back(h);
      }
    }
    rep.record(ok, ok ? json(nullptr) : json{{"seed_grade", g}, {"wrong_grades", missing}});
  }
  return rep;
}

}  // namespace hamlie
