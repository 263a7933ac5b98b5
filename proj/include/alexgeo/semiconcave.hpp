#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "alexgeo/model_space.hpp"

namespace alexgeo {

/// Evaluable real function on a model space with a claimed geodesic
/// convexity modulus. The claim is just that: certify_alpha samples
/// geodesics to back it before it is relied on.
class ScalarField {
 public:
  using Evaluator = std::function<double(const Point&)>;
  using GradientFn = std::function<TangentVector(const Point&)>;

  ScalarField(std::string name, Evaluator evaluator, double alpha_claim);

  double operator()(const Point& p) const { return evaluator_(p); }
  const std::string& name() const { return name_; }
  double alpha_claim() const { return alpha_claim_; }

  std::optional<double> lipschitz_estimate() const { return lipschitz_estimate_; }
  ScalarField& with_lipschitz_estimate(double value);

  bool has_closed_form_gradient() const { return static_cast<bool>(gradient_); }
  TangentVector closed_form_gradient(const Point& p) const;
  ScalarField& with_closed_form_gradient(GradientFn fn);

  /// Anchor point of the distance-based catalog entries, when there is one.
  const std::optional<Point>& anchor() const { return anchor_; }

  /// -f with the claim negated (f alpha-convex iff -f is (-alpha)-concave).
  ScalarField negated() const;

  // Catalog entries. Default claims: d^2 is 2-convex on Euclidean and
  // hyperbolic spaces and 0-convex on sphere caps within the safe zone;
  // -d^2 is (-2)-convex everywhere on those domains.
  static ScalarField squared_distance_to(const Point& anchor);
  static ScalarField squared_distance_to(const Point& anchor, double alpha_claim);
  static ScalarField neg_squared_distance_to(const Point& anchor);
  static ScalarField neg_squared_distance_to(const Point& anchor, double alpha_claim);
  static ScalarField distance_to(const Point& anchor, double alpha_claim = 0.0);
  static ScalarField linear(const ModelSpace& space, const Eigen::VectorXd& coefficients,
                            double alpha_claim = 0.0);
  static ScalarField constant(double value, double alpha_claim = 0.0);

 private:
  std::string name_;
  Evaluator evaluator_;
  double alpha_claim_;
  std::optional<double> lipschitz_estimate_;
  GradientFn gradient_;
  std::optional<Point> anchor_;
};

enum class CertifyMode { Convex, Concave };

struct CertifyWitness {
  Point geodesic_start;
  Point geodesic_end;
  double t1, tmid, t2;
  double defect;  // violation of the midpoint inequality
};

struct CertifyResult {
  bool certified = false;
  std::optional<CertifyWitness> witness;
  long geodesics_tested = 0;
};

struct CertifyOptions {
  int budget = 64;  // geodesics sampled
  int depth = 4;    // dyadic grid depth; triples come from the level-(depth+1) grid
  std::uint64_t seed = 0;
};

/// Samples geodesics with endpoints in the ball and tests midpoint convexity
/// (or concavity) of t -> f(gamma(t)) - (alpha/2) d^2(gamma(0), gamma(t)) on
/// dyadic triples. Refuted results carry the first witness found.
CertifyResult certify_alpha(const ScalarField& f, const Point& center, double radius, double alpha,
                            CertifyMode mode, const CertifyOptions& options = {});

/// Directional derivative of an alpha-concave, locally Lipschitz f along the
/// geodesic, evaluated as the supremum of
///   (f(gamma(t)) - f(gamma(0)))/t - (alpha t / 2) |gamma'|^2
/// over a dyadic grid in (0, tau]. The grid values increase monotonically as
/// t -> 0; a monotonicity violation beyond rounding means the concavity
/// claim is false along this geodesic and raises an error.
double differential(const ScalarField& f, const Geodesic& g, double alpha_concave);

struct GradientOptions {
  int multistarts = 32;
  int search_budget = 40000;  // differential evaluations
  std::uint64_t seed = 0;
};

/// Gradient of an alpha-concave f at p: d_sup * w where w maximizes the
/// differential over unit tangent directions and d_sup is the maximum. When
/// no direction ascends (d_sup <= 0) the gradient is the cone tip.
/// Cross-checks against the closed form when the field carries one.
TangentVector gradient(const ScalarField& f, const Point& p, double alpha_concave,
                       const GradientOptions& options = {});

struct DirectionSupCheck {
  bool pass;
  double lhs;  // sup over unit directions of the differential
  double rhs;
  double gap;  // max(0, rhs - lhs)
};

/// Checks sup_{|w|=1} d_p f(w) >= (d_p f(u) + d_p f(v)) / sqrt(|u|^2 + 2<u,v> + |v|^2).
DirectionSupCheck direction_sup_inequality_check(const ScalarField& f, const Point& p,
                                                 const TangentVector& u, const TangentVector& v,
                                                 double alpha_concave,
                                                 const GradientOptions& options = {});

/// Domain endpoint of the unit-speed geodesics the gradient search follows;
/// shortened on spheres to stay well inside the injectivity domain.
double gradient_search_tau(const ModelSpace& space);

}  // namespace alexgeo
