#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "alexgeo/model_space.hpp"

namespace alexgeo {

/// Finitely supported probability measure: support points in one space and
/// positive weights summing to one (within 1e-12).
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<Point> support, std::vector<double> weights);

  /// Uniform weights over the given support.
  static DiscreteMeasure uniform(std::vector<Point> support);

  const std::vector<Point>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }
  const ModelSpace& space() const { return support_.front().space(); }

 private:
  std::vector<Point> support_;
  std::vector<double> weights_;
};

/// Variance functional: sum of w_i * d^2(x, x_i).
double variance(const DiscreteMeasure& mu, const Point& x);

struct BarycenterOptions {
  std::optional<Point> x0;  // defaults to the support point of least variance
  double step = 1.0;
  double tol = 1e-10;       // on the norm of the mean log
  int max_iter = 10000;
  int audit_probes = 32;
  std::uint64_t audit_seed = 0;
};

struct BarycenterResult {
  Point point;
  double variance_at_point;
  int iterations;
  double residual;            // norm of the mean log at the returned point
  double first_order_report;  // max probed |sum_i w_i <log(x_i), u>|
  std::vector<double> variance_trace;
};

/// Fixed-point iteration x <- exp_x(step * sum_i w_i log_x(x_i)). Requires the
/// support to sit inside a safe ball on spheres (radius < D_kappa / 4 around
/// the starting point) so that logs stay single-valued along the run.
BarycenterResult solve_barycenter(const DiscreteMeasure& mu, const BarycenterOptions& options = {});

/// Max over probe directions u (random unit tangents plus the signed
/// coordinate frame) of |sum_i w_i <log_x(x_i), u>_x|; near zero at a
/// barycenter.
double first_order_audit(const DiscreteMeasure& mu, const Point& x_star, int probes,
                         std::uint64_t seed);

}  // namespace alexgeo
