#pragma once

#include <cstdint>
#include <random>

#include "weavekit/linalg.hpp"

namespace weavekit {

// Deterministic random source. mt19937_64 and seed_seq are pinned by the
// standard, and all derived draws below avoid std distributions, so a seed
// reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n), rejection-sampled to kill modulo bias.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  cx complex_uniform(double lo = -1.0, double hi = 1.0) {
    const double re = uniform(lo, hi);
    const double im = uniform(lo, hi);
    return cx{re, im};
  }

  cx complex_normal() {
    const double re = normal();
    const double im = normal();
    return cx{re, im};
  }

  /// Unit-modulus scalar with uniform phase.
  cx phase() {
    const double t = uniform(0.0, 6.283185307179586476925286766559);
    return cx{std::cos(t), std::sin(t)};
  }

  Vector vector_uniform(std::size_t dim, double lo = -1.0, double hi = 1.0) {
    Vector v(dim);
    for (auto& z : v) z = complex_uniform(lo, hi);
    return v;
  }

  Matrix matrix_uniform(std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex_uniform(lo, hi);
    return m;
  }

  /// Random unitary: modified Gram-Schmidt of a Gaussian matrix, resampled
  /// on (measure-zero) near-degeneracy.
  Matrix unitary(std::size_t n) {
    for (;;) {
      Matrix g(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = complex_normal();
      bool ok = true;
      for (std::size_t c = 0; c < n && ok; ++c) {
        Vector col = g.column(c);
        for (std::size_t prev = 0; prev < c; ++prev) {
          const Vector pcol = g.column(prev);
          const cx proj = inner(col, pcol);
          for (std::size_t i = 0; i < n; ++i) col[i] -= proj * pcol[i];
        }
        const double len = norm(col);
        if (len < 1e-6) {
          ok = false;
          break;
        }
        for (std::size_t i = 0; i < n; ++i) g(i, c) = col[i] / len;
      }
      if (ok) return g;
    }
  }

  /// Random permutation of {0..n-1} (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace weavekit
