#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace alexgeo::detail {

/// Estimate of lim_{t->0} f(t) from samples at t0 * 2^-k with a two-level
/// Richardson table (leading error terms t^2 and t^4 eliminated).
struct LimitEstimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  double residual = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

template <typename F>
LimitEstimate richardson_limit(F&& sample, double t0, int max_halvings, double rel_tol) {
  std::array<double, 3> prev{};
  LimitEstimate best;
  double prev_extrap = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k <= max_halvings; ++k) {
    std::array<double, 3> row{};
    row[0] = sample(t0 * std::ldexp(1.0, -k));
    if (k >= 1) row[1] = (4.0 * row[0] - prev[0]) / 3.0;
    if (k >= 2) {
      row[2] = (16.0 * row[1] - prev[1]) / 15.0;
      if (!std::isnan(prev_extrap)) {
        const double resid = std::abs(row[2] - prev_extrap) / (1.0 + std::abs(row[2]));
        if (resid < best.residual) {
          best.residual = resid;
          best.value = row[2];
        }
        if (resid <= rel_tol) {
          best.converged = true;
          best.evaluations = k + 1;
          return best;
        }
      }
      prev_extrap = row[2];
    }
    prev = row;
  }
  best.evaluations = max_halvings + 1;
  return best;
}

/// Golden-section maximization on [lo, hi]; returns (argmax, max).
/// Assumes f is unimodal on the interval (tolerates flat stretches).
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double xtol) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  static const double invphi2 = 1.0 - invphi;
  double a = lo, b = hi;
  double h = b - a;
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc = f(c);
  double fd = f(d);
  while (h > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = f(d);
    }
  }
  return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic mixing of a base seed with a stream index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  return splitmix64(state);
}

/// Halton points in [0,1)^dims with a seeded Cranley-Patterson rotation.
inline std::vector<std::vector<double>> halton_sequence(int dims, int count, std::uint64_t seed) {
  static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19};
  std::uint64_t state = seed;
  std::vector<double> shift(dims);
  for (int j = 0; j < dims; ++j) {
    shift[j] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  }
  std::vector<std::vector<double>> points(count, std::vector<double>(dims));
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < dims; ++j) {
      const int base = bases[j % 8];
      double value = 0.0, denom = 1.0;
      int n = i + 1;
      while (n > 0) {
        denom *= base;
        value += (n % base) / denom;
        n /= base;
      }
      value += shift[j];
      points[i][j] = value - std::floor(value);
    }
  }
  return points;
}

/// Low-discrepancy directions on the unit sphere of R^d (Halton points pushed
/// through Box-Muller and normalized).
inline std::vector<std::vector<double>> low_discrepancy_directions(int d, int count,
                                                                   std::uint64_t seed) {
  if (d == 1) {
    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < count; ++i) dirs.push_back({i % 2 == 0 ? 1.0 : -1.0});
    return dirs;
  }
  const int pairs = (d + 1) / 2;
  const auto pts = halton_sequence(2 * pairs, count, seed);
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<std::vector<double>> dirs;
  dirs.reserve(count);
  for (const auto& u : pts) {
    std::vector<double> g(d);
    for (int j = 0; j < pairs; ++j) {
      const double u1 = std::max(u[2 * j], 1e-12);
      const double u2 = u[2 * j + 1];
      const double r = std::sqrt(-2.0 * std::log(u1));
      g[2 * j] = r * std::cos(two_pi * u2);
      if (2 * j + 1 < d) g[2 * j + 1] = r * std::sin(two_pi * u2);
    }
    double norm_sq = 0.0;
    for (double x : g) norm_sq += x * x;
    if (norm_sq < 1e-24) {
      g.assign(d, 0.0);
      g[0] = 1.0;
      norm_sq = 1.0;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : g) x *= inv;
    dirs.push_back(std::move(g));
  }
  return dirs;
}

}  // namespace alexgeo::detail
