#pragma once

// Command dispatch shared by the hamlie executable and the tests. Every
// command produces a JSON envelope {command, ok, reports: [...]} and a short
// plain-text summary.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamlie/submodules.hpp"

namespace hamlie::cli {

struct RunConfig {
  std::string command;
  std::string kind;  // submodule-check family
  std::size_t n = 2;
  std::string rep_spec = "natural";
  std::string alpha;  // "p/q,..."; empty means zero
  std::string beta;
  std::string r;      // optional lattice vector literal
  std::string gamma;  // shift-iso
  std::int64_t box_radius = 3;
  std::int64_t gen_radius = 2;
  std::size_t samples = 100;
  std::uint64_t rng_seed = kDefaultSeed;
  std::size_t k = 0;  // 0: every admissible k
  std::string output;
  std::size_t threads = 0;
  double time_limit = 0;  // seconds, 0 = unlimited
  bool quotient = false;
};

struct RunResult {
  int exit_code = 0;
  json report;
  std::string summary;
};

struct CheckInfo {
  const char* command;
  const char* verifies;
};

inline const std::vector<CheckInfo>& list_checks() {
  static const std::vector<CheckInfo> checks{
      {"sp-check", "sp_2n basis closed under brackets, symplectic condition, r bar(r)^T in sp_2n, pairing antisymmetry, root heights"},
      {"rep-build", "representation construction, bracket compatibility, irreducibility, JSON serialization"},
      {"theta-check", "theta_k commutes with the sp_2n action"},
      {"dim-check", "dim Ker(theta_k) = C(2n,k) - C(2n,k-2) and the kernel is irreducible"},
      {"ham-bracket", "[H_r, H_s] = (bar(r), s) H_{r+s} on F^{alpha,beta}(V)"},
      {"g1-check", "g1(s) degree, displayed quadratic expansion, evaluation against H_s"},
      {"g2-table", "degree-4 coefficients of g2(s) and evaluation against H_{r-s} H_s"},
      {"named-actions", "closed forms of H_{e_i}, H_{e_{n+i}}, H_{e_i+e_{n+j}}"},
      {"shift-iso", "v (x) t^r -> v (x) t^{r-gamma} intertwines (alpha,beta) and (alpha+gamma,beta+gamma)"},
      {"submodule-check", "trivial_line / delta1 / deltak families are invariant, nonzero and proper"},
      {"claim2-witness", "(r+alpha) ^ Lambda^{k-1} meets Ker(theta_k) nontrivially, constructively"},
      {"claim1-ineq", "C(2n,k) - C(2n,k-2) > C(2n-1,k-1) and the ratio identity"},
      {"probe", "finite closure probe: FULL, PROPER or INCONCLUSIVE"},
  };
  return checks;
}

// ---------------------------------------------------------------------------
// Literal parsing

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

inline Vector parse_vector(const std::string& s, std::size_t len, const std::string& what) {
  if (s.empty()) return Vector(len);
  Vector v;
  for (const auto& item : split_commas(s)) v.push_back(Rational::parse(item));
  if (v.size() != len)
    throw std::invalid_argument(what + " must have " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
  return v;
}

inline Grade parse_grade(const std::string& s, std::size_t len, const std::string& what) {
  Grade g;
  for (const auto& x : parse_vector(s, len, what)) {
    if (!x.is_integer()) throw std::invalid_argument(what + " must be an integer vector");
    g.push_back(x.to_int64());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Representations

inline RepresentationPtr build_rep(const std::string& spec, const SpAlgebraPtr& alg) {
  auto index_after = [&](const std::string& prefix) -> std::size_t {
    const auto tail = spec.substr(prefix.size());
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("representation spec '" + spec + "' needs a non-negative integer after '" + prefix + "'");
    return std::stoul(tail);
  };
  if (spec == "natural") return natural_rep(alg);
  if (spec == "trivial") return trivial_rep(alg);
  if (spec.rfind("fundamental:", 0) == 0) return fundamental_rep(alg, index_after("fundamental:"));
  if (spec.rfind("sym:", 0) == 0) return symmetric_power(natural_rep(alg), index_after("sym:"));
  if (spec.rfind("exterior:", 0) == 0) return exterior_power(natural_rep(alg), index_after("exterior:"));
  throw std::invalid_argument("unknown representation spec '" + spec +
                              "' (expected natural, trivial, fundamental:k, sym:k, exterior:k or file:path)");
}

/// Resolves a spec, reading and writing $HAMLIE_CACHE_DIR when it is set.
inline RepresentationPtr resolve_rep(const std::string& spec, std::size_t n) {
  if (spec.rfind("file:", 0) == 0) {
    auto rep = load_rep(spec.substr(5));
    if (rep->rank() != n)
      throw std::invalid_argument("representation file has n = " + std::to_string(rep->rank()) + ", expected " + std::to_string(n));
    return rep;
  }
  const auto alg = build_sp(n);
  const char* dir = std::getenv("HAMLIE_CACHE_DIR");
  if (!dir || !*dir) return build_rep(spec, alg);
  std::string fname = "n" + std::to_string(n) + "_" + spec + ".json";
  for (auto& c : fname)
    if (c == ':') c = '_';
  const auto path = std::filesystem::path(dir) / fname;
  if (std::filesystem::exists(path)) return load_rep(path.string());
  auto rep = build_rep(spec, alg);
  std::filesystem::create_directories(dir);
  save_rep(*rep, path.string());
  return rep;
}

// ---------------------------------------------------------------------------
// Suites that are not a single library call

inline Report sp_structure_report(std::size_t n, std::size_t samples, std::uint64_t seed) {
  const auto alg = build_sp(n);
  Report rep{"sp-structure"};
  rep.params = json{{"n", n}, {"samples", samples}, {"seed", seed}};
  for (std::size_t a = 0; a < alg->dim(); ++a)
    for (std::size_t b = a + 1; b < alg->dim(); ++b) {
      bool ok = true;
      try {
        (void)alg->decompose(bracket(alg->matrices()[a], alg->matrices()[b]));
      } catch (const std::domain_error&) {
        ok = false;
      }
      rep.record(ok, ok ? json(nullptr) : json{{"bracket", {alg->labels()[a], alg->labels()[b]}}});
    }
  for (std::size_t a = 0; a < alg->dim(); ++a) {
    const bool ok = SpAlgebra::is_symplectic(alg->matrices()[a], n);
    rep.record(ok, ok ? json(nullptr) : json{{"not_symplectic", alg->labels()[a]}});
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Grade r = rng.grade(2 * n, 5);
    const SparseMatrix m = outer_bar(r);
    bool ok = true;
    try {
      ok = alg->combine(alg->decompose(m)) == m;
    } catch (const std::domain_error&) {
      ok = false;
    }
    rep.record(ok, ok ? json(nullptr) : json{{"r", r}});
  }
  return rep;
}

inline Report pairing_report(std::size_t n, std::size_t samples, std::uint64_t seed) {
  Report rep{"pairing-antisymmetry"};
  rep.params = json{{"n", n}, {"samples", samples}, {"seed", seed}};
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Grade r = rng.grade(2 * n, 9), s = rng.grade(2 * n, 9);
    const bool ok = bar_pairing(r, s) == -bar_pairing(s, r);
    rep.record(ok, ok ? json(nullptr) : json{{"r", r}, {"s", s}});
  }
  return rep;
}

/// Heights of eps_i - eps_j (= j - i) and eps_i + eps_j (= 2n - (i + j) + 1,
/// one-based, i <= j) for every positive root.
inline Report height_report(std::size_t n) {
  Report rep{"root-heights"};
  rep.params = json{{"n", n}};
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      if (i < j) {
        const auto d = root_height(Generator{GeneratorKind::EpsDiff, i - 1, j - 1}.root(n), n);
        const bool ok = d.height == static_cast<std::int64_t>(j - i);
        rep.record(ok, ok ? json(nullptr) : json{{"root", d.root}, {"height", d.height}});
      }
      const auto d = root_height(Generator{GeneratorKind::EpsSum, i - 1, j - 1}.root(n), n);
      const bool ok = d.height == static_cast<std::int64_t>(2 * n - (i + j) + 1);
      rep.record(ok, ok ? json(nullptr) : json{{"root", d.root}, {"height", d.height}});
    }
  return rep;
}

inline Report theta_report(std::size_t n, std::size_t k) {
  const auto alg = build_sp(n);
  Report rep{"theta-equivariance"};
  rep.params = json{{"n", n}, {"k", k}};
  const auto theta = contraction_theta(alg, k);
  const auto res = verify_intertwiner(theta);
  rep.record(res.ok, res.ok ? json(nullptr) : json{{"violations", res.violations}});
  return rep;
}

inline Report dim_report(std::size_t n, std::size_t k, bool irreducibility) {
  const auto alg = build_sp(n);
  Report rep{"kernel-dimension"};
  rep.params = json{{"n", n}, {"k", k}};
  const auto v = fundamental_rep(alg, k);
  const auto nn = static_cast<std::int64_t>(2 * n), kk = static_cast<std::int64_t>(k);
  const auto expected = static_cast<std::size_t>(binomial(nn, kk) - binomial(nn, kk - 2));
  rep.record(v->dim() == expected, json{{"dim", v->dim()}, {"expected", expected}});
  rep.details["dim"] = v->dim();
  if (irreducibility) {
    const bool irr = is_irreducible(*v);
    rep.record(irr, json{{"irreducible", false}});
    rep.details["irreducible"] = irr;
  }
  return rep;
}

/// Structural facts about a built family beyond invariance.
inline Report family_structure_report(SubmoduleKind kind, const TruncatedModule& fam, const GeneratorSet& gens) {
  Report rep{"family-structure"};
  rep.params = json{{"kind", to_string(kind)}};
  const auto& m = fam.module;
  const auto& alpha = m.params().alpha;
  std::map<std::string, std::size_t> histogram;
  for (std::size_t i = 0; i < fam.box.size(); ++i) {
    const Grade g = fam.box.grade(i);
    const Vector u = add(g, alpha);
    const auto d = fam.spaces[i].dim();
    ++histogram[std::to_string(d)];
    switch (kind) {
      case SubmoduleKind::TrivialLine: break;
      case SubmoduleKind::Delta1: {
        const bool ok = d == (is_zero(u) ? 0u : 1u);
        rep.record(ok, ok ? json(nullptr) : json{{"grade", g}, {"dim", d}});
        break;
      }
      case SubmoduleKind::DeltaK: {
        if (is_zero(u)) {
          const bool ok = fam.spaces[i].is_full();
          rep.record(ok, ok ? json(nullptr) : json{{"grade", g}, {"dim", d}});
        } else {
          const bool ok = d > 0 && d < m.dim();
          rep.record(ok, ok ? json(nullptr) : json{{"grade", g}, {"dim", d}});
        }
        break;
      }
    }
  }
  if (kind == SubmoduleKind::TrivialLine) {
    Grade g;
    for (const auto& a : alpha) g.push_back(-a.to_int64());
    for (const auto& r : gens.elements) {
      const auto y = m.act_H(r, GradedVector{g, Vector{Rational(1)}});
      rep.record(is_zero(y.payload), json{{"r", r}});
    }
  }
  if (kind == SubmoduleKind::Delta1) {
    // H_s (r+alpha) = (bar(s), r+alpha) (s+r+alpha) on sampled grades
    Rng rng(kDefaultSeed);
    for (std::size_t i = 0; i < 50; ++i) {
      const Grade r = rng.grade(m.N(), fam.box.radius());
      const Grade s = rng.nonzero_grade(m.N(), gens.radius);
      const Vector u = add(r, alpha);
      const auto y = m.act_H(s, GradedVector{r, u});
      const bool ok = y.payload == scaled(bar_pairing(s, u), add(r + s, alpha));
      rep.record(ok, ok ? json(nullptr) : json{{"r", r}, {"s", s}});
    }
  }
  rep.details["dim_histogram"] = histogram;
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

inline ShenLarssonModule module_from(const RunConfig& c) {
  auto rep = resolve_rep(c.rep_spec, c.n);
  const std::size_t N = 2 * c.n;
  return ShenLarssonModule(ModuleParams{rep, parse_vector(c.alpha, N, "--alpha"), parse_vector(c.beta, N, "--beta")});
}

inline std::vector<std::size_t> ks(const RunConfig& c, std::size_t lo) {
  if (c.k) {
    if (c.k < lo || c.k > c.n) throw std::invalid_argument("--k must satisfy " + std::to_string(lo) + " <= k <= n");
    return {c.k};
  }
  std::vector<std::size_t> out;
  for (std::size_t k = lo; k <= c.n; ++k) out.push_back(k);
  return out;
}

inline Grade grade_or_random(const std::string& literal, std::size_t N, Rng& rng, const std::string& what) {
  return literal.empty() ? rng.nonzero_grade(N, 3) : parse_grade(literal, N, what);
}

}  // namespace detail

inline RunResult run(const RunConfig& c) {
  if (c.n < 1) throw std::invalid_argument("--n must be at least 1");
  if (c.box_radius < 1 || c.gen_radius < 1) throw std::invalid_argument("--box and --gens must be at least 1");
  thread_limit() = c.threads;
  std::vector<Report> reports;
  json extra = json::object();
  std::optional<bool> verdict_ok;
  const std::size_t N = 2 * c.n;
  Rng rng(c.rng_seed);

  if (c.command == "sp-check") {
    reports.push_back(sp_structure_report(c.n, c.samples, c.rng_seed));
    reports.push_back(pairing_report(c.n, c.samples, c.rng_seed));
    reports.push_back(height_report(c.n));
  } else if (c.command == "rep-build") {
    const auto rep = resolve_rep(c.rep_spec, c.n);
    Report r{"rep-build"};
    r.params = json{{"n", c.n}, {"rep", rep->name}};
    const auto bad = bracket_violations(*rep);
    r.record(bad.empty(), bad.empty() ? json(nullptr) : json{{"bracket_violations", bad.size()}});
    r.details["dim"] = rep->dim();
    r.details["irreducible"] = is_irreducible(*rep);
    reports.push_back(r);
    extra["representation"] = rep_to_json(*rep);
  } else if (c.command == "theta-check") {
    if (c.n < 2 && !c.k) throw std::invalid_argument("theta-check needs n >= 2");
    for (auto k : detail::ks(c, 2)) reports.push_back(theta_report(c.n, k));
  } else if (c.command == "dim-check") {
    if (c.n < 2 && !c.k) throw std::invalid_argument("dim-check needs n >= 2");
    for (auto k : detail::ks(c, 2)) reports.push_back(dim_report(c.n, k, true));
  } else if (c.command == "ham-bracket") {
    reports.push_back(ham_bracket_sweep(detail::module_from(c), c.samples, c.rng_seed));
  } else if (c.command == "g1-check") {
    const auto m = detail::module_from(c);
    reports.push_back(verify_g1(m, detail::grade_or_random(c.r, N, rng, "--r"), c.samples, c.rng_seed));
  } else if (c.command == "g2-table") {
    const auto m = detail::module_from(c);
    const Grade r = detail::grade_or_random(c.r, N, rng, "--r");
    const Grade k = rng.grade(N, 3);
    reports.push_back(verify_g2_table(m, r, k));
    reports.push_back(verify_g2_evaluation(m, r, k, c.samples, c.rng_seed));
  } else if (c.command == "named-actions") {
    reports.push_back(verify_named_actions(detail::module_from(c), c.samples, c.rng_seed));
  } else if (c.command == "shift-iso") {
    const auto m = detail::module_from(c);
    reports.push_back(verify_shift_isomorphism(m, detail::grade_or_random(c.gamma, N, rng, "--gamma"), c.samples, c.rng_seed));
  } else if (c.command == "submodule-check") {
    const auto kind = parse_submodule_kind(c.kind);
    const auto m = detail::module_from(c);
    const Box box(N, c.box_radius);
    const auto gens = GeneratorSet::make(N, c.gen_radius);
    const auto fam = build_submodule(kind, m, box);
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (c.time_limit > 0)
      deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(c.time_limit));
    reports.push_back(invariance_check(fam, gens, deadline));
    reports.push_back(family_structure_report(kind, fam, gens));
  } else if (c.command == "claim2-witness") {
    if (c.r.empty()) {
      reports.push_back(claim2_sweep(c.samples, c.rng_seed, std::max<std::size_t>(c.n, 2)));
    } else {
      const auto alg = build_sp(c.n);
      const std::size_t k = c.k ? c.k : c.n;
      const auto w = claim2_witness(alg, parse_vector(c.alpha, N, "--alpha"), parse_grade(c.r, N, "--r"), k);
      Report r{"claim2-witness"};
      r.params = json{{"n", c.n}, {"k", k}, {"r", c.r}, {"alpha", c.alpha}};
      r.record(true);
      reports.push_back(r);
      extra["witness"] = w.to_json();
    }
  } else if (c.command == "claim1-ineq") {
    reports.push_back(claim1_inequality(std::max<std::size_t>(c.n, 2)));
  } else if (c.command == "probe") {
    const auto m = detail::module_from(c);
    const auto res = irreducibility_probe(m, c.box_radius, c.gen_radius, c.rng_seed);
    extra["probe"] = res.to_json();
    verdict_ok = res.ok();
    if (c.quotient) reports.push_back(trivial_quotient_probe(m, c.box_radius, c.gen_radius));
  } else {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }

  bool ok = verdict_ok.value_or(true);
  json list = json::array();
  std::ostringstream summary;
  for (const auto& r : reports) {
    ok = ok && r.ok();
    list.push_back(r.to_json());
    summary << r.check << ": " << (r.ok() ? "PASS" : "FAIL") << " (" << r.passes << "/" << r.samples
            << (r.complete ? "" : ", incomplete") << ")\n";
  }
  if (extra.contains("probe")) summary << "probe: " << extra["probe"]["verdict"].get<std::string>() << "\n";
  json env{{"command", c.command}, {"ok", ok}, {"reports", list}};
  for (auto& [key, value] : extra.items()) env[key] = value;

  if (!c.output.empty()) {
    std::ofstream out(c.output);
    if (!out) throw std::runtime_error("cannot write '" + c.output + "'");
    out << env.dump(2) << '\n';
  }
  return {ok ? 0 : 1, std::move(env), summary.str()};
}

}  // namespace hamlie::cli
