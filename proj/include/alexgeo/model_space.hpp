#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>
#include <vector>

namespace alexgeo {

enum class SpaceKind { Euclidean, Sphere, Hyperbolic, FiniteMetric };

std::string to_string(SpaceKind kind);

/// Descriptor of the ambient geometry: a simply connected model space of
/// constant curvature (plane, sphere, hyperbolic space) in any dimension,
/// or a finite metric space given by a validated distance matrix.
///
/// Sphere and hyperbolic spaces are represented extrinsically: the sphere of
/// radius 1/sqrt(kappa) in R^{d+1}, and the upper sheet of the hyperboloid
/// <x,x>_Mink = 1/kappa in R^{d+1}. Finite metric spaces support distance
/// queries only.
class ModelSpace {
 public:
  static ModelSpace euclidean(int dim);
  static ModelSpace sphere(int dim, double kappa = 1.0);
  static ModelSpace hyperbolic(int dim, double kappa = -1.0);
  static ModelSpace finite_metric(Eigen::MatrixXd distances);

  SpaceKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double kappa() const { return kappa_; }

  /// Length of the coordinate vector of a point: dim for Euclidean,
  /// dim + 1 for Sphere/Hyperbolic, 1 (an index) for FiniteMetric.
  int ambient_dim() const;

  /// Diameter bound of the model geometry: pi/sqrt(kappa) for kappa > 0,
  /// +infinity otherwise.
  double diameter_bound() const;

  bool has_geodesics() const { return kind_ != SpaceKind::FiniteMetric; }

  /// Number of points (FiniteMetric only).
  int point_count() const;
  const Eigen::MatrixXd& dmatrix() const;

  /// Two descriptors denote the same space when kind, dimension and curvature
  /// agree; finite metric spaces must share the same underlying matrix.
  bool same_space(const ModelSpace& other) const;

 private:
  ModelSpace(SpaceKind kind, int dim, double kappa,
             std::shared_ptr<const Eigen::MatrixXd> dmatrix);

  SpaceKind kind_;
  int dim_;
  double kappa_;
  std::shared_ptr<const Eigen::MatrixXd> dmatrix_;
};

/// Reads an n x n comma-separated matrix (no header). Validation of the
/// metric axioms happens in ModelSpace::finite_metric.
Eigen::MatrixXd load_distance_matrix_csv(const std::string& path);

/// Minkowski bilinear form -x0*y0 + x1*y1 + ... on R^{d+1}.
double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// A point of a model space. The constructor validates the on-manifold
/// constraints (unit-sphere / hyperboloid equations within 1e-10).
class Point {
 public:
  Point(ModelSpace space, Eigen::VectorXd coords);

  /// FiniteMetric points are indices into the distance matrix.
  static Point finite_metric_point(ModelSpace space, int index);

  const ModelSpace& space() const { return space_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  int index() const;

 private:
  ModelSpace space_;
  Eigen::VectorXd coords_;
};

/// Base-pointed tangent data in the ambient representation. The zero vector
/// is the tip of the tangent cone at the base point; all zero-magnitude
/// vectors at the same base compare equal.
class TangentVector {
 public:
  TangentVector(Point base, Eigen::VectorXd direction);

  static TangentVector zero(const Point& base);

  const Point& base() const { return base_; }
  const Eigen::VectorXd& direction() const { return direction_; }

  /// Riemannian norm at the base point (Minkowski norm on hyperbolic spaces).
  double norm() const;
  bool is_tip(double tol = 0.0) const;

  TangentVector scaled(double factor) const;

 private:
  Point base_;
  Eigen::VectorXd direction_;
};

/// Constant-speed path record gamma(t) = exp_base(t * velocity), t in [0, tau].
class Geodesic {
 public:
  Geodesic(TangentVector velocity, double tau);

  const Point& base() const { return velocity_.base(); }
  const TangentVector& velocity() const { return velocity_; }
  double tau() const { return tau_; }
  double speed() const { return velocity_.norm(); }

  /// gamma(t); throws when t lies outside [0, tau].
  Point at(double t) const;

 private:
  TangentVector velocity_;
  double tau_;
};

double distance(const Point& a, const Point& b);

/// gamma(1) of the geodesic issuing from v.base() with initial tangent v.
/// On spheres the tangent norm must stay below the diameter bound.
Point exp_map(const TangentVector& v);

/// Initial tangent of the (unique) geodesic [0,1] -> M from p to x, so that
/// exp_map(log_map(p, x)) == x and |log_map(p, x)| == d(p, x). Antipodal
/// sphere pairs are rejected: the minimizing geodesic is not unique there.
TangentVector log_map(const Point& p, const Point& x);

Point geodesic_point(const Geodesic& g, double t);

/// Geodesic [0, tau] -> M with gamma(0) = p and gamma(tau) = x.
Geodesic geodesic_between(const Point& p, const Point& x, double tau = 1.0);

/// Sum of consecutive distances of a polyline; a lower bound for the length
/// of any path through the samples, monotone under refinement.
double path_length(const std::vector<Point>& samples);

/// Orthonormal basis of the tangent space at p in the ambient representation
/// (orthonormal under the Minkowski form on hyperbolic spaces).
std::vector<Eigen::VectorXd> tangent_basis(const Point& p);

/// Canonical base point: the origin, or the first coordinate pole of the
/// sphere / hyperboloid.
Point canonical_base_point(const ModelSpace& space);

}  // namespace alexgeo
