#include "alexgeo/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "alexgeo/detail/numerics.hpp"

namespace alexgeo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double diameter_bound(double kappa) {
  return kappa > 0.0 ? std::numbers::pi / std::sqrt(kappa)
                     : std::numeric_limits<double>::infinity();
}

void require_triangle_sides(double a, double b, double c) {
  const double slack = 1e-9 * std::max(1.0, a + b + c);
  if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
    throw std::invalid_argument("comparison: side lengths violate the triangle inequality");
  }
  if (a < 0.0 || b < 0.0 || c < 0.0) {
    throw std::invalid_argument("comparison: side lengths must be nonnegative");
  }
}

ModelSpace model_plane(double kappa) {
  if (kappa > 0.0) return ModelSpace::sphere(2, kappa);
  if (kappa < 0.0) return ModelSpace::hyperbolic(2, kappa);
  return ModelSpace::euclidean(2);
}

}  // namespace

double s_kappa(double kappa, double r) {
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    return std::sin(r * s) / s;
  }
  if (kappa < 0.0) {
    const double s = std::sqrt(-kappa);
    return std::sinh(r * s) / s;
  }
  return r;
}

double c_kappa(double kappa, double r) {
  if (kappa > 0.0) return std::cos(r * std::sqrt(kappa));
  if (kappa < 0.0) return std::cosh(r * std::sqrt(-kappa));
  return 1.0;
}

std::optional<double> comparison_angle(double kappa, double dpx, double dpy, double dxy) {
  if (!(dpx > 0.0) || !(dpy > 0.0)) {
    throw std::invalid_argument("comparison_angle: sides adjacent to the apex must be positive");
  }
  require_triangle_sides(dpx, dpy, dxy);
  if (dpx + dpy + dxy >= 2.0 * diameter_bound(kappa)) return std::nullopt;
  double cosine;
  if (kappa == 0.0) {
    cosine = (dpx * dpx + dpy * dpy - dxy * dxy) / (2.0 * dpx * dpy);
  } else {
    cosine = (c_kappa(kappa, dxy) - c_kappa(kappa, dpx) * c_kappa(kappa, dpy)) /
             (kappa * s_kappa(kappa, dpx) * s_kappa(kappa, dpy));
  }
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

ComparisonTriangle build_comparison_triangle(double kappa, const std::array<double, 3>& sides) {
  const double a = sides[0], b = sides[1], c = sides[2];
  require_triangle_sides(a, b, c);
  if (a + b + c >= 2.0 * diameter_bound(kappa)) {
    throw std::invalid_argument("build_comparison_triangle: perimeter reaches twice the diameter bound");
  }
  const ModelSpace plane = model_plane(kappa);
  const Point apex = canonical_base_point(plane);
  const auto basis = tangent_basis(apex);

  double angle = 0.0;
  if (a > 0.0 && b > 0.0) {
    angle = *comparison_angle(kappa, a, b, c);
  }
  const Point vx = a > 0.0 ? exp_map(TangentVector(apex, a * basis[0])) : apex;
  const Eigen::VectorXd dir_y = std::cos(angle) * basis[0] + std::sin(angle) * basis[1];
  const Point vy = b > 0.0 ? exp_map(TangentVector(apex, b * dir_y)) : apex;
  return ComparisonTriangle{kappa, sides, {apex, vx, vy}};
}

FourPointResult four_point_check_distances(double kappa, double dpx, double dpy, double dpz,
                                           double dxy, double dxz, double dyz) {
  const auto axy = comparison_angle(kappa, dpx, dpy, dxy);
  const auto axz = comparison_angle(kappa, dpx, dpz, dxz);
  const auto ayz = comparison_angle(kappa, dpy, dpz, dyz);
  if (!axy || !axz || !ayz) {
    return {FourPointOutcome::Inconclusive, std::numeric_limits<double>::quiet_NaN(), 0.0};
  }
  const double sum = *axy + *axz + *ayz;
  if (sum <= kTwoPi + 1e-9) return {FourPointOutcome::Pass, sum, 0.0};
  return {FourPointOutcome::Fail, sum, sum - kTwoPi};
}

FourPointResult four_point_check(double kappa, const Point& p, const Point& x, const Point& y,
                                 const Point& z) {
  const double dpx = distance(p, x);
  const double dpy = distance(p, y);
  const double dpz = distance(p, z);
  if (dpx == 0.0 || dpy == 0.0 || dpz == 0.0) {
    throw std::invalid_argument("four_point_check: the apex must be distinct from x, y, z");
  }
  return four_point_check_distances(kappa, dpx, dpy, dpz, distance(x, y), distance(x, z),
                                    distance(y, z));
}

SideComparisonResult side_comparison_check(double kappa, const Point& p, const Point& x,
                                           const Point& y, double s, double t) {
  if (!p.space().has_geodesics()) {
    throw std::invalid_argument("side_comparison_check: space does not support geodesics");
  }
  if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0) {
    throw std::invalid_argument("side_comparison_check: s, t must lie in [0, 1]");
  }
  const double a = distance(p, x);
  const double b = distance(p, y);
  const double c = distance(x, y);
  if (a == 0.0 || b == 0.0) {
    throw std::invalid_argument("side_comparison_check: degenerate triangle (p coincides with x or y)");
  }
  if (a + b + c >= 2.0 * diameter_bound(kappa)) {
    throw std::invalid_argument("side_comparison_check: perimeter reaches twice the diameter bound");
  }
  const Geodesic gx = geodesic_between(p, x);
  const Geodesic gy = geodesic_between(p, y);
  const double space_d = distance(gx.at(s), gy.at(t));

  const ComparisonTriangle tri = build_comparison_triangle(kappa, {a, b, c});
  const Geodesic mx = geodesic_between(tri.vertices[0], tri.vertices[1]);
  const Geodesic my = geodesic_between(tri.vertices[0], tri.vertices[2]);
  const double model_d = distance(mx.at(s), my.at(t));

  const bool pass = space_d >= model_d - 1e-9;
  return {pass, space_d, model_d, std::max(0.0, model_d - space_d)};
}

namespace {

struct CandidateScan {
  bool feasible = true;
  bool any_defined = false;
  long checked = 0;
  long inconclusive = 0;
  std::vector<CurvatureViolation> violations;
};

// Runs the four-point test over a fixed quadruple list at one candidate kappa.
CandidateScan scan_candidate(const Eigen::MatrixXd& m,
                             const std::vector<std::array<int, 4>>& quadruples, double kappa,
                             int max_witnesses) {
  CandidateScan scan;
  for (const auto& q : quadruples) {
    const int p = q[0], x = q[1], y = q[2], z = q[3];
    const auto result = four_point_check_distances(kappa, m(p, x), m(p, y), m(p, z), m(x, y),
                                                   m(x, z), m(y, z));
    ++scan.checked;
    if (result.outcome == FourPointOutcome::Inconclusive) {
      ++scan.inconclusive;
      continue;
    }
    scan.any_defined = true;
    if (result.outcome == FourPointOutcome::Fail) {
      scan.feasible = false;
      if (static_cast<int>(scan.violations.size()) < max_witnesses) {
        scan.violations.push_back({q, result.angle_sum, result.excess});
      } else {
        break;
      }
    }
  }
  std::sort(scan.violations.begin(), scan.violations.end(),
            [](const CurvatureViolation& lhs, const CurvatureViolation& rhs) {
              return lhs.quadruple < rhs.quadruple;
            });
  return scan;
}

std::vector<std::array<int, 4>> build_quadruples(int n, const CurvatureAuditOptions& options) {
  std::vector<std::array<int, 4>> quadruples;
  if (n < options.exhaustive_below) {
    for (int p = 0; p < n; ++p) {
      for (int x = 0; x < n; ++x) {
        if (x == p) continue;
        for (int y = x + 1; y < n; ++y) {
          if (y == p) continue;
          for (int z = y + 1; z < n; ++z) {
            if (z == p) continue;
            quadruples.push_back({p, x, y, z});
          }
        }
      }
    }
    return quadruples;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  quadruples.reserve(options.budget);
  while (static_cast<long>(quadruples.size()) < options.budget) {
    std::array<int, 4> q{pick(rng), pick(rng), pick(rng), pick(rng)};
    if (q[1] == q[0] || q[2] == q[0] || q[3] == q[0]) continue;
    if (q[1] == q[2] || q[1] == q[3] || q[2] == q[3]) continue;
    std::sort(q.begin() + 1, q.end());
    quadruples.push_back(q);
  }
  return quadruples;
}

}  // namespace

CurvatureAuditReport estimate_curvature_lower_bound(const Eigen::MatrixXd& distances,
                                                    double kappa_lo, double kappa_hi,
                                                    const CurvatureAuditOptions& options) {
  if (!(kappa_lo < kappa_hi)) {
    throw std::invalid_argument("estimate_curvature_lower_bound: need kappa_lo < kappa_hi");
  }
  const int n = static_cast<int>(distances.rows());
  if (n < 4) {
    throw std::invalid_argument("estimate_curvature_lower_bound: need at least 4 sample points");
  }
  const auto quadruples = build_quadruples(n, options);

  CurvatureAuditReport report;
  auto evaluate = [&](double kappa) {
    CandidateScan scan = scan_candidate(distances, quadruples, kappa, options.max_witnesses);
    report.quadruples_checked += scan.checked;
    report.inconclusive += scan.inconclusive;
    if (!scan.any_defined) {
      throw std::runtime_error(
          "estimate_curvature_lower_bound: every sampled quadruple is inconclusive at kappa = " +
          std::to_string(kappa));
    }
    return scan;
  };

  CandidateScan hi_scan = evaluate(kappa_hi);
  if (hi_scan.feasible) {
    report.kappa_tested = kappa_hi;
    report.kappa_max_estimate = kappa_hi;
    return report;
  }
  CandidateScan lo_scan = evaluate(kappa_lo);
  if (!lo_scan.feasible) {
    report.kappa_tested = kappa_lo;
    report.kappa_max_estimate = kappa_lo;
    report.violations = std::move(lo_scan.violations);
    return report;
  }

  double lo = kappa_lo, hi = kappa_hi;
  std::vector<CurvatureViolation> hi_violations = std::move(hi_scan.violations);
  while (hi - lo > options.resolution) {
    const double mid = 0.5 * (lo + hi);
    CandidateScan scan = evaluate(mid);
    if (scan.feasible) {
      lo = mid;
    } else {
      hi = mid;
      hi_violations = std::move(scan.violations);
    }
  }
  report.kappa_tested = hi;
  report.kappa_max_estimate = lo;
  report.violations = std::move(hi_violations);
  return report;
}

CurvatureAuditReport estimate_curvature_lower_bound(const std::vector<Point>& samples,
                                                    double kappa_lo, double kappa_hi,
                                                    const CurvatureAuditOptions& options) {
  const int n = static_cast<int>(samples.size());
  if (n < 4) {
    throw std::invalid_argument("estimate_curvature_lower_bound: need at least 4 sample points");
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = distance(samples[i], samples[j]);
    }
  }
  return estimate_curvature_lower_bound(m, kappa_lo, kappa_hi, options);
}

}  // namespace alexgeo
