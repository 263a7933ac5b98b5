#include "alexgeo/semiconcave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "alexgeo/detail/numerics.hpp"
#include "alexgeo/sampling.hpp"
#include "alexgeo/tangent_cone.hpp"

namespace alexgeo {

namespace {

constexpr int kMaxGridDepth = 20;
constexpr double kStabilizeTol = 1e-8;
constexpr double kAcceptTol = 1e-6;
constexpr double kMonotoneSlack = 1e-9;

double default_sq_alpha(const ModelSpace& space) {
  return space.kind() == SpaceKind::Sphere ? 0.0 : 2.0;
}

}  // namespace

ScalarField::ScalarField(std::string name, Evaluator evaluator, double alpha_claim)
    : name_(std::move(name)), evaluator_(std::move(evaluator)), alpha_claim_(alpha_claim) {
  if (!evaluator_) throw std::invalid_argument("scalar field: evaluator must be callable");
}

ScalarField& ScalarField::with_lipschitz_estimate(double value) {
  if (value < 0.0) throw std::invalid_argument("scalar field: Lipschitz estimate must be nonnegative");
  lipschitz_estimate_ = value;
  return *this;
}

TangentVector ScalarField::closed_form_gradient(const Point& p) const {
  if (!gradient_) throw std::logic_error("scalar field: no closed-form gradient");
  return gradient_(p);
}

ScalarField& ScalarField::with_closed_form_gradient(GradientFn fn) {
  gradient_ = std::move(fn);
  return *this;
}

ScalarField ScalarField::negated() const {
  ScalarField out("neg(" + name_ + ")", [eval = evaluator_](const Point& p) { return -eval(p); },
                  -alpha_claim_);
  if (lipschitz_estimate_) out.lipschitz_estimate_ = lipschitz_estimate_;
  if (gradient_) {
    out.gradient_ = [grad = gradient_](const Point& p) { return grad(p).scaled(-1.0); };
  }
  out.anchor_ = anchor_;
  return out;
}

ScalarField ScalarField::squared_distance_to(const Point& anchor) {
  return squared_distance_to(anchor, default_sq_alpha(anchor.space()));
}

ScalarField ScalarField::squared_distance_to(const Point& anchor, double alpha_claim) {
  ScalarField f("squared_distance",
                [anchor](const Point& p) {
                  const double d = distance(p, anchor);
                  return d * d;
                },
                alpha_claim);
  f.with_closed_form_gradient(
      [anchor](const Point& p) { return log_map(p, anchor).scaled(-2.0); });
  f.anchor_ = anchor;
  return f;
}

ScalarField ScalarField::neg_squared_distance_to(const Point& anchor) {
  return neg_squared_distance_to(anchor, -2.0);
}

ScalarField ScalarField::neg_squared_distance_to(const Point& anchor, double alpha_claim) {
  ScalarField f("neg_squared_distance",
                [anchor](const Point& p) {
                  const double d = distance(p, anchor);
                  return -d * d;
                },
                alpha_claim);
  f.with_closed_form_gradient(
      [anchor](const Point& p) { return log_map(p, anchor).scaled(2.0); });
  f.anchor_ = anchor;
  return f;
}

ScalarField ScalarField::distance_to(const Point& anchor, double alpha_claim) {
  ScalarField f("distance", [anchor](const Point& p) { return distance(p, anchor); },
                alpha_claim);
  f.with_lipschitz_estimate(1.0);
  f.anchor_ = anchor;
  return f;
}

ScalarField ScalarField::linear(const ModelSpace& space, const Eigen::VectorXd& coefficients,
                                double alpha_claim) {
  if (space.kind() != SpaceKind::Euclidean) {
    throw std::invalid_argument("scalar field: linear fields exist on Euclidean spaces only");
  }
  if (coefficients.size() != space.dim()) {
    throw std::invalid_argument("scalar field: coefficient count must match the dimension");
  }
  ScalarField f("linear",
                [coefficients](const Point& p) { return coefficients.dot(p.coords()); },
                alpha_claim);
  f.with_lipschitz_estimate(coefficients.norm());
  f.with_closed_form_gradient(
      [coefficients](const Point& p) { return TangentVector(p, coefficients); });
  return f;
}

ScalarField ScalarField::constant(double value, double alpha_claim) {
  return ScalarField("constant", [value](const Point&) { return value; }, alpha_claim);
}

CertifyResult certify_alpha(const ScalarField& f, const Point& center, double radius, double alpha,
                            CertifyMode mode, const CertifyOptions& options) {
  const ModelSpace& space = center.space();
  if (!space.has_geodesics()) {
    throw std::invalid_argument("certify_alpha: space does not support geodesics");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("certify_alpha: radius must be positive");
  if (space.kind() == SpaceKind::Sphere && !(radius < 0.5 * space.diameter_bound())) {
    throw std::invalid_argument("certify_alpha: region leaves the sphere safe domain");
  }

  const int grid_points = (1 << (options.depth + 1)) + 1;
  std::vector<double> grid(grid_points);
  std::vector<double> values(grid_points);
  for (int i = 0; i < grid_points; ++i) grid[i] = static_cast<double>(i) / (grid_points - 1);

  Rng rng = make_rng(options.seed);
  CertifyResult result;
  const double sign = mode == CertifyMode::Convex ? 1.0 : -1.0;
  for (int trial = 0; trial < options.budget; ++trial) {
    const Point a = random_point_in_ball(center, radius, rng);
    const Point b = random_point_in_ball(center, radius, rng);
    const double span = distance(a, b);
    if (span < 1e-12) continue;
    const Geodesic g = geodesic_between(a, b);
    ++result.geodesics_tested;
    // g(t) = f(gamma(t)) - (alpha/2) d^2(gamma(0), gamma(t)) with gamma(0) = a.
    for (int i = 0; i < grid_points; ++i) {
      const double t = grid[i];
      values[i] = f(g.at(t)) - 0.5 * alpha * t * t * span * span;
    }
    for (int i = 0; i < grid_points; ++i) {
      for (int j = i + 2; j < grid_points; j += 2) {
        const int mid = (i + j) / 2;
        const double defect = sign * (values[mid] - 0.5 * (values[i] + values[j]));
        if (defect > kMonotoneSlack) {
          result.certified = false;
          result.witness = CertifyWitness{a, b, grid[i], grid[mid], grid[j], defect};
          return result;
        }
      }
    }
  }
  result.certified = true;
  return result;
}

double differential(const ScalarField& f, const Geodesic& g, double alpha_concave) {
  const double speed = g.speed();
  if (speed == 0.0) return 0.0;  // the tip direction: d_p f(0_p) = 0
  const double tau = g.tau();
  const double f0 = f(g.base());
  const double quad = 0.5 * alpha_concave * speed * speed;

  double prev_h = -std::numeric_limits<double>::infinity();
  double prev_r = std::numeric_limits<double>::quiet_NaN();
  double prev_s = std::numeric_limits<double>::quiet_NaN();
  double best = -std::numeric_limits<double>::infinity();
  double best_resid = std::numeric_limits<double>::infinity();
  double best_value = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k <= kMaxGridDepth; ++k) {
    const double t = tau * std::ldexp(1.0, -k);
    const double h = (f(g.at(t)) - f0) / t - quad * t;
    if (h < prev_h - kMonotoneSlack * (1.0 + std::abs(prev_h))) {
      throw std::domain_error(
          "differential: grid supremum decreased under refinement; the concavity claim fails "
          "along this geodesic");
    }
    best = std::max(best, h);
    if (k >= 1) {
      const double r = 2.0 * h - prev_h;
      if (k >= 2) {
        const double s = (4.0 * r - prev_r) / 3.0;
        if (!std::isnan(prev_s)) {
          const double resid = std::abs(s - prev_s) / (1.0 + std::abs(s));
          if (resid < best_resid) {
            best_resid = resid;
            best_value = s;
          }
          if (resid <= kStabilizeTol) return std::max(s, best);
        }
        prev_s = s;
      }
      prev_r = r;
    }
    prev_h = h;
  }
  if (best_resid <= kAcceptTol) return std::max(best_value, best);
  throw std::runtime_error("differential: supremum failed to stabilize");
}

namespace {

struct UnitSupResult {
  double d_sup;
  TangentVector direction;  // unit direction achieving d_sup
};

// Maximizes the differential over unit tangent directions: low-discrepancy
// multistarts, a symmetrized linear estimate from the basis directions, then
// cyclic golden-section ascent along great circles of the tangent sphere.
UnitSupResult sup_unit_differential(const ScalarField& f, const Point& p, double alpha_concave,
                                    const GradientOptions& options, double tau) {
  const ModelSpace& space = p.space();
  const auto basis = tangent_basis(p);
  const int d = static_cast<int>(basis.size());

  long budget = options.search_budget;
  auto evaluate_intrinsic = [&](const Eigen::VectorXd& w) {
    if (--budget < 0) {
      throw std::runtime_error("gradient: search budget exhausted before stabilization");
    }
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(space.ambient_dim());
    for (int i = 0; i < d; ++i) dir += w(i) * basis[i];
    return differential(f, Geodesic(TangentVector(p, dir), tau), alpha_concave);
  };

  std::vector<Eigen::VectorXd> candidates;
  for (const auto& dir : detail::low_discrepancy_directions(d, options.multistarts, options.seed)) {
    Eigen::VectorXd w(d);
    for (int i = 0; i < d; ++i) w(i) = dir[i];
    candidates.push_back(std::move(w));
  }
  for (int i = 0; i < d; ++i) {
    candidates.push_back(Eigen::VectorXd::Unit(d, i));
    candidates.push_back(-Eigen::VectorXd::Unit(d, i));
  }
  // Symmetrized first-order estimate: exact when the differential is linear.
  {
    Eigen::VectorXd est(d);
    for (int i = 0; i < d; ++i) {
      const double plus = evaluate_intrinsic(Eigen::VectorXd::Unit(d, i));
      const double minus = evaluate_intrinsic(-Eigen::VectorXd::Unit(d, i));
      est(i) = 0.5 * (plus - minus);
    }
    if (est.norm() > 1e-14) candidates.push_back(est.normalized());
  }

  Eigen::VectorXd best_w = candidates.front();
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& w : candidates) {
    const double value = evaluate_intrinsic(w);
    if (value > best_value) {
      best_value = value;
      best_w = w;
    }
  }

  if (d > 1) {
    for (int cycle = 0; cycle < 8; ++cycle) {
      const double window = cycle == 0 ? 1.2 : 0.3;
      double moved = 0.0;
      for (int axis = 0; axis < d; ++axis) {
        Eigen::VectorXd q = Eigen::VectorXd::Unit(d, axis);
        q -= q.dot(best_w) * best_w;
        const double qn = q.norm();
        if (qn < 1e-10) continue;
        q /= qn;
        auto along = [&](double phi) {
          return evaluate_intrinsic(std::cos(phi) * best_w + std::sin(phi) * q);
        };
        const auto [phi, value] = detail::golden_section_max(along, -window, window, 1e-7);
        if (value > best_value) {
          best_value = value;
          best_w = (std::cos(phi) * best_w + std::sin(phi) * q).normalized();
          moved += std::abs(phi);
        }
      }
      if (moved < 1e-8) break;
    }
  }

  Eigen::VectorXd dir = Eigen::VectorXd::Zero(space.ambient_dim());
  for (int i = 0; i < d; ++i) dir += best_w(i) * basis[i];
  return {best_value, TangentVector(p, dir)};
}

}  // namespace

double gradient_search_tau(const ModelSpace& space) {
  if (space.kind() == SpaceKind::Sphere) return std::min(1.0, 0.16 * space.diameter_bound());
  return 1.0;
}

TangentVector gradient(const ScalarField& f, const Point& p, double alpha_concave,
                       const GradientOptions& options) {
  const auto sup = sup_unit_differential(f, p, alpha_concave, options, gradient_search_tau(p.space()));
  TangentVector result =
      sup.d_sup <= 0.0 ? TangentVector::zero(p) : sup.direction.scaled(sup.d_sup);
  if (f.has_closed_form_gradient()) {
    const TangentVector reference = f.closed_form_gradient(p);
    const double mismatch = tangent_distance(result, reference);
    if (mismatch > 1e-5 * (1.0 + reference.norm())) {
      throw std::runtime_error("gradient: numeric result disagrees with the closed form by " +
                               std::to_string(mismatch));
    }
  }
  return result;
}

DirectionSupCheck direction_sup_inequality_check(const ScalarField& f, const Point& p,
                                                 const TangentVector& u, const TangentVector& v,
                                                 double alpha_concave,
                                                 const GradientOptions& options) {
  if (u.is_tip() && v.is_tip()) {
    throw std::invalid_argument("direction_sup_inequality_check: u and v must not both be tips");
  }
  const double tau = gradient_search_tau(p.space());
  auto dpf = [&](const TangentVector& w) {
    if (w.is_tip()) return 0.0;
    const double len = w.norm();
    // Homogeneity: evaluate along the unit-speed geodesic and rescale.
    return len * differential(f, Geodesic(w.scaled(1.0 / len), tau), alpha_concave);
  };
  const double numerator = dpf(u) + dpf(v);
  const double denom_sq =
      u.norm() * u.norm() + 2.0 * inner_product(u, v) + v.norm() * v.norm();
  const double lhs = sup_unit_differential(f, p, alpha_concave, options, tau).d_sup;
  if (denom_sq <= 1e-12) {
    const bool pass = numerator <= 1e-9;
    return {pass, lhs, 0.0, pass ? 0.0 : numerator};
  }
  const double rhs = numerator / std::sqrt(denom_sq);
  const bool pass = lhs >= rhs - 1e-6;
  return {pass, lhs, rhs, std::max(0.0, rhs - lhs)};
}

}  // namespace alexgeo
