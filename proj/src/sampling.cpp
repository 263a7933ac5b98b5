#include "alexgeo/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace alexgeo {

TangentVector random_unit_tangent(const Point& p, Rng& rng) {
  const auto basis = tangent_basis(p);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd dir = Eigen::VectorXd::Zero(p.space().ambient_dim());
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    dir.setZero();
    for (const auto& b : basis) {
      const double c = gauss(rng);
      dir += c * b;
      norm_sq += c * c;
    }
  } while (norm_sq < 1e-24);
  return TangentVector(p, dir / std::sqrt(norm_sq));
}

Point random_point_in_ball(const Point& center, double radius, Rng& rng) {
  if (radius < 0.0) throw std::invalid_argument("random_point_in_ball: negative radius");
  const ModelSpace& space = center.space();
  if (space.kind() == SpaceKind::Sphere && !(radius < space.diameter_bound())) {
    throw std::invalid_argument("random_point_in_ball: radius exceeds the sphere diameter bound");
  }
  if (radius == 0.0) return center;
  const TangentVector dir = random_unit_tangent(center, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r = radius * std::pow(unif(rng), 1.0 / space.dim());
  return exp_map(dir.scaled(r));
}

TangentVector random_tangent(const Point& p, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> unif(lo, hi);
  return random_unit_tangent(p, rng).scaled(unif(rng));
}

}  // namespace alexgeo
