#include "alexgeo/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alexgeo/sampling.hpp"
#include "alexgeo/tangent_cone.hpp"

namespace alexgeo {

DiscreteMeasure::DiscreteMeasure(std::vector<Point> support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty()) throw std::invalid_argument("measure: support must be non-empty");
  if (support_.size() != weights_.size()) {
    throw std::invalid_argument("measure: support and weights must have equal length");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw std::invalid_argument("measure: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("measure: weights must sum to one");
  }
  for (const Point& p : support_) {
    if (!p.space().same_space(support_.front().space())) {
      throw std::invalid_argument("measure: support points belong to different spaces");
    }
  }
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<Point> support) {
  const std::size_t n = support.size();
  if (n == 0) throw std::invalid_argument("measure: support must be non-empty");
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  // Make the sum exactly one regardless of n.
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) partial += weights[i];
  weights[n - 1] = 1.0 - partial;
  return DiscreteMeasure(std::move(support), std::move(weights));
}

double variance(const DiscreteMeasure& mu, const Point& x) {
  if (!x.space().same_space(mu.space())) {
    throw std::invalid_argument("variance: point belongs to a different space");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d = distance(x, mu.support()[i]);
    total += mu.weights()[i] * d * d;
  }
  return total;
}

namespace {

Point default_start(const DiscreteMeasure& mu) {
  std::size_t best = 0;
  double best_v = variance(mu, mu.support()[0]);
  for (std::size_t i = 1; i < mu.size(); ++i) {
    const double v = variance(mu, mu.support()[i]);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  return mu.support()[best];
}

void check_safe_zone(const DiscreteMeasure& mu, const Point& x0) {
  const ModelSpace& space = mu.space();
  if (space.kind() != SpaceKind::Sphere) return;
  const double limit = 0.5 * space.diameter_bound();
  for (const Point& p : mu.support()) {
    if (!(distance(x0, p) < limit)) {
      throw std::invalid_argument(
          "solve_barycenter: support escapes the sphere safe zone around the starting point");
    }
  }
}

Eigen::VectorXd mean_log(const DiscreteMeasure& mu, const Point& x) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.space().ambient_dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    acc += mu.weights()[i] * log_map(x, mu.support()[i]).direction();
  }
  return acc;
}

}  // namespace

BarycenterResult solve_barycenter(const DiscreteMeasure& mu, const BarycenterOptions& options) {
  if (!mu.space().has_geodesics()) {
    throw std::invalid_argument("solve_barycenter: space does not support geodesics");
  }
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve_barycenter: tol must be positive");
  Point x = options.x0.value_or(default_start(mu));
  if (!x.space().same_space(mu.space())) {
    throw std::invalid_argument("solve_barycenter: starting point belongs to a different space");
  }
  check_safe_zone(mu, x);

  std::vector<double> trace;
  trace.push_back(variance(mu, x));
  int iterations = 0;
  double residual = 0.0;
  while (true) {
    TangentVector direction(x, mean_log(mu, x));
    residual = direction.norm();
    if (residual <= options.tol) break;
    if (iterations >= options.max_iter) {
      throw std::runtime_error("solve_barycenter: iteration limit reached before convergence");
    }
    x = exp_map(direction.scaled(options.step));
    ++iterations;
    trace.push_back(variance(mu, x));
  }

  BarycenterResult result{
      x, trace.back(), iterations, residual,
      first_order_audit(mu, x, options.audit_probes, options.audit_seed), std::move(trace)};
  return result;
}

double first_order_audit(const DiscreteMeasure& mu, const Point& x_star, int probes,
                         std::uint64_t seed) {
  if (!x_star.space().same_space(mu.space())) {
    throw std::invalid_argument("first_order_audit: point belongs to a different space");
  }
  std::vector<TangentVector> directions;
  for (const auto& b : tangent_basis(x_star)) {
    directions.emplace_back(x_star, b);
    directions.emplace_back(x_star, -b);
  }
  Rng rng = make_rng(seed);
  for (int i = 0; i < probes; ++i) directions.push_back(random_unit_tangent(x_star, rng));

  std::vector<TangentVector> logs;
  logs.reserve(mu.size());
  for (const Point& p : mu.support()) logs.push_back(log_map(x_star, p));

  double worst = 0.0;
  for (const TangentVector& u : directions) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      acc += mu.weights()[i] * inner_product(logs[i], u);
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace alexgeo
