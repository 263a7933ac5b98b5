#include "alexgeo/tangent_cone.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "alexgeo/comparison.hpp"
#include "alexgeo/detail/numerics.hpp"

namespace alexgeo {

namespace {

constexpr int kMaxHalvings = 12;
constexpr double kStabilizeTol = 1e-8;
constexpr double kAcceptTol = 1e-6;

void require_common_base(const Geodesic& g1, const Geodesic& g2) {
  if (!g1.base().space().same_space(g2.base().space()) ||
      distance(g1.base(), g2.base()) > 1e-12) {
    throw std::invalid_argument("tangent cone: geodesics must issue from a common base point");
  }
}

double limit_start(const Geodesic& g1, const Geodesic& g2) {
  return std::min(0.1, 0.1 * std::min(g1.tau(), g2.tau()));
}

double extract(const detail::LimitEstimate& est, const char* what) {
  if (est.converged || est.residual <= kAcceptTol) return est.value;
  throw std::runtime_error(std::string(what) + ": extrapolation failed to stabilize");
}

}  // namespace

double cone_distance(const ConePoint& a, const ConePoint& b, double angular_distance) {
  if (angular_distance < 0.0 || angular_distance > std::numbers::pi + 1e-15) {
    throw std::invalid_argument("cone_distance: angular distance must lie in [0, pi]");
  }
  if (a.radius < 0.0 || b.radius < 0.0) {
    throw std::invalid_argument("cone_distance: radii must be nonnegative");
  }
  // (s - t)^2 + 4 s t sin^2(angle / 2) is the stable form of the law of cosines.
  const double diff = a.radius - b.radius;
  const double half = std::sin(0.5 * std::min(angular_distance, std::numbers::pi));
  return std::sqrt(diff * diff + 4.0 * a.radius * b.radius * half * half);
}

double inner_product(const TangentVector& u, const TangentVector& v) {
  if (!u.base().space().same_space(v.base().space()) ||
      (u.base().coords() - v.base().coords()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("inner_product: tangent vectors at different base points");
  }
  if (u.base().space().kind() == SpaceKind::Hyperbolic) {
    return minkowski_dot(u.direction(), v.direction());
  }
  return u.direction().dot(v.direction());
}

double norm(const TangentVector& u) { return u.norm(); }

double tangent_distance(const TangentVector& u, const TangentVector& v) {
  if (!u.base().space().same_space(v.base().space()) ||
      (u.base().coords() - v.base().coords()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("tangent_distance: tangent vectors at different base points");
  }
  const Eigen::VectorXd diff = u.direction() - v.direction();
  if (u.base().space().kind() == SpaceKind::Hyperbolic) {
    return std::sqrt(std::max(0.0, minkowski_dot(diff, diff)));
  }
  return diff.norm();
}

double angle_between_geodesics(const Geodesic& g1, const Geodesic& g2) {
  require_common_base(g1, g2);
  const double a = g1.speed();
  const double b = g2.speed();
  if (a == 0.0 || b == 0.0) {
    throw std::invalid_argument("angle_between_geodesics: both geodesics must be non-trivial");
  }
  auto sample = [&](double t) {
    const double dxy = distance(g1.at(t), g2.at(t));
    return *comparison_angle(0.0, t * a, t * b, dxy);
  };
  return extract(detail::richardson_limit(sample, limit_start(g1, g2), kMaxHalvings, kStabilizeTol),
                 "angle_between_geodesics");
}

double geodesic_separation_rate(const Geodesic& g1, const Geodesic& g2) {
  require_common_base(g1, g2);
  auto sample = [&](double t) { return distance(g1.at(t), g2.at(t)) / t; };
  return extract(detail::richardson_limit(sample, limit_start(g1, g2), kMaxHalvings, kStabilizeTol),
                 "geodesic_separation_rate");
}

double midpoint_limit(const Geodesic& g1, const Geodesic& g2) {
  require_common_base(g1, g2);
  if (!g1.base().space().has_geodesics()) {
    throw std::invalid_argument("midpoint_limit: space does not support midpoints");
  }
  const Point& p = g1.base();
  auto sample = [&](double t) {
    const Point a = g1.at(t);
    const Point b = g2.at(t);
    const Point mid = exp_map(log_map(a, b).scaled(0.5));
    const double d = distance(p, mid);
    return 4.0 * d * d / (t * t);
  };
  return extract(detail::richardson_limit(sample, limit_start(g1, g2), kMaxHalvings, kStabilizeTol),
                 "midpoint_limit");
}

}  // namespace alexgeo
