#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "alexgeo/model_space.hpp"

namespace alexgeo {

/// Generalized sine of the model plane of curvature kappa:
/// sin(r sqrt(k))/sqrt(k) for k > 0, sinh(r sqrt(-k))/sqrt(-k) for k < 0,
/// and r at k = 0 (the analytic limit).
double s_kappa(double kappa, double r);

/// Derivative of s_kappa in r: cos(r sqrt(k)), cosh(r sqrt(-k)), or 1.
double c_kappa(double kappa, double r);

/// Angle at the p-vertex of the model-plane triangle with side lengths
/// d(p,x) = dpx, d(p,y) = dpy, d(x,y) = dxy. Returns nullopt (undefined)
/// when the perimeter reaches twice the diameter bound of the model plane.
/// Requires dpx, dpy > 0 and the triangle inequality.
std::optional<double> comparison_angle(double kappa, double dpx, double dpy, double dxy);

struct ComparisonTriangle {
  double kappa;
  std::array<double, 3> sides;    // d(p,x), d(p,y), d(x,y)
  std::array<Point, 3> vertices;  // realizations of p, x, y in the model plane
};

/// Realizes the given side lengths as a triangle in the two-dimensional model
/// space of curvature kappa. Vertices reproduce the sides within 1e-10.
ComparisonTriangle build_comparison_triangle(double kappa, const std::array<double, 3>& sides);

enum class FourPointOutcome { Pass, Fail, Inconclusive };

struct FourPointResult {
  FourPointOutcome outcome;
  double angle_sum;  // NaN when inconclusive
  double excess;     // angle_sum - 2*pi when failing, else 0
};

/// Comparison-angle test at apex p against the model plane of curvature
/// kappa: the three angles at p must sum to at most 2*pi whenever all three
/// are defined.
FourPointResult four_point_check(double kappa, const Point& p, const Point& x, const Point& y,
                                 const Point& z);

/// Same test from the six pairwise distances.
FourPointResult four_point_check_distances(double kappa, double dpx, double dpy, double dpz,
                                           double dxy, double dxz, double dyz);

struct SideComparisonResult {
  bool pass;
  double space_distance;  // d(gamma_x(s), gamma_y(t))
  double model_distance;  // the comparison counterpart
  double deficit;         // max(0, model - space)
};

/// Checks d(gamma_x(s), gamma_y(t)) >= d_kappa(comparison counterparts) for
/// the geodesics from p to x and from p to y, s, t in [0, 1].
SideComparisonResult side_comparison_check(double kappa, const Point& p, const Point& x,
                                           const Point& y, double s, double t);

struct CurvatureViolation {
  std::array<int, 4> quadruple;  // apex p first
  double angle_sum;
  double excess;
};

struct CurvatureAuditOptions {
  long budget = 50000;       // quadruples per candidate when not exhaustive
  int exhaustive_below = 15; // point counts below this enumerate all quadruples
  std::uint64_t seed = 0;
  double resolution = 1e-3;  // bisection width in kappa
  int max_witnesses = 16;
};

struct CurvatureAuditReport {
  double kappa_tested = 0.0;        // the candidate the reported violations refer to
  long quadruples_checked = 0;      // accumulated over all candidates
  std::vector<CurvatureViolation> violations;
  double kappa_max_estimate = 0.0;  // largest candidate with zero failures
  long inconclusive = 0;
};

/// Bisects kappa over [kappa_lo, kappa_hi] for the largest curvature bound
/// compatible with the four-point condition on the sampled quadruples.
/// The same seeded quadruple set is reused for every candidate.
CurvatureAuditReport estimate_curvature_lower_bound(const Eigen::MatrixXd& distances,
                                                    double kappa_lo, double kappa_hi,
                                                    const CurvatureAuditOptions& options = {});

CurvatureAuditReport estimate_curvature_lower_bound(const std::vector<Point>& samples,
                                                    double kappa_lo, double kappa_hi,
                                                    const CurvatureAuditOptions& options = {});

}  // namespace alexgeo
