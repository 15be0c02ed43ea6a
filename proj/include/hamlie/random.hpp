#pragma once

// Seeded sampling of lattice vectors and small rationals. Uses only the raw
// mt19937_64 stream (which is fully specified) so that samples are identical
// across standard library implementations.

#include <cstdint>
#include <random>
#include <vector>

#include "hamlie/rational.hpp"
#include "hamlie/sparse_matrix.hpp"
#include "hamlie/symplectic.hpp"

namespace hamlie {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

class Rng {
public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  /// p/q with |p| <= max_num and q drawn from dens.
  Rational rational(std::int64_t max_num, const std::vector<std::int64_t>& dens) {
    const auto p = uniform(-max_num, max_num);
    const auto q = dens[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(dens.size()) - 1))];
    return {p, q};
  }

  Grade grade(std::size_t len, std::int64_t radius) {
    Grade g(len);
    for (auto& x : g) x = uniform(-radius, radius);
    return g;
  }

  Grade nonzero_grade(std::size_t len, std::int64_t radius) {
    for (;;) {
      Grade g = grade(len, radius);
      for (auto x : g)
        if (x != 0) return g;
    }
  }

  Vector vector(std::size_t len, std::int64_t max_num = 3, const std::vector<std::int64_t>& dens = {1, 2, 3}) {
    Vector v(len);
    for (auto& x : v) x = rational(max_num, dens);
    return v;
  }

  Vector nonzero_vector(std::size_t len, std::int64_t max_num = 3, const std::vector<std::int64_t>& dens = {1, 2, 3}) {
    for (;;) {
      Vector v = vector(len, max_num, dens);
      if (!is_zero(v)) return v;
    }
  }

  /// Parameter vector guaranteed to lie outside Z^N: every coordinate gets a
  /// denominator from {2, 3, 5, 7}.
  Vector non_integral_vector(std::size_t len, std::int64_t max_num = 3) {
    Vector v(len);
    const std::vector<std::int64_t> dens{2, 3, 5, 7};
    for (auto& x : v) {
      const auto q = dens[static_cast<std::size_t>(uniform(0, 3))];
      std::int64_t p = uniform(-max_num * q, max_num * q);
      if (p % q == 0) p += 1;
      x = Rational(p, q);
    }
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace hamlie
