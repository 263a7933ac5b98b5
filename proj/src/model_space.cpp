#include "alexgeo/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace alexgeo {

namespace {

constexpr double kOnManifoldTol = 1e-10;

double manifold_scale(double kappa) {
  return std::max(1.0, std::abs(1.0 / kappa));
}

void validate_distance_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw std::invalid_argument("finite metric: matrix must be square and non-empty");
  }
  const auto n = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (m(i, i) != 0.0) {
      throw std::invalid_argument("finite metric: diagonal must be zero");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && !(m(i, j) > 0.0)) {
        throw std::invalid_argument("finite metric: off-diagonal entries must be positive");
      }
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument("finite metric: matrix must be symmetric");
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        if (m(i, j) > m(i, k) + m(k, j) + 1e-12 * scale) {
          std::ostringstream msg;
          msg << "finite metric: triangle inequality fails for (" << i << "," << j << "," << k
              << "): " << m(i, j) << " > " << m(i, k) << " + " << m(k, j);
          throw std::invalid_argument(msg.str());
        }
      }
    }
  }
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::Hyperbolic: return "hyperbolic";
    case SpaceKind::FiniteMetric: return "finite_metric";
  }
  return "unknown";
}

ModelSpace::ModelSpace(SpaceKind kind, int dim, double kappa,
                       std::shared_ptr<const Eigen::MatrixXd> dmatrix)
    : kind_(kind), dim_(dim), kappa_(kappa), dmatrix_(std::move(dmatrix)) {}

ModelSpace ModelSpace::euclidean(int dim) {
  if (dim < 1) throw std::invalid_argument("euclidean: dim must be positive");
  return ModelSpace(SpaceKind::Euclidean, dim, 0.0, nullptr);
}

ModelSpace ModelSpace::sphere(int dim, double kappa) {
  if (dim < 1) throw std::invalid_argument("sphere: dim must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("sphere: kappa must be positive");
  return ModelSpace(SpaceKind::Sphere, dim, kappa, nullptr);
}

ModelSpace ModelSpace::hyperbolic(int dim, double kappa) {
  if (dim < 1) throw std::invalid_argument("hyperbolic: dim must be positive");
  if (!(kappa < 0.0)) throw std::invalid_argument("hyperbolic: kappa must be negative");
  return ModelSpace(SpaceKind::Hyperbolic, dim, kappa, nullptr);
}

ModelSpace ModelSpace::finite_metric(Eigen::MatrixXd distances) {
  validate_distance_matrix(distances);
  auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(distances));
  return ModelSpace(SpaceKind::FiniteMetric, 0, 0.0, std::move(shared));
}

int ModelSpace::ambient_dim() const {
  switch (kind_) {
    case SpaceKind::Euclidean: return dim_;
    case SpaceKind::Sphere:
    case SpaceKind::Hyperbolic: return dim_ + 1;
    case SpaceKind::FiniteMetric: return 1;
  }
  return 0;
}

double ModelSpace::diameter_bound() const {
  if (kappa_ > 0.0) return std::numbers::pi / std::sqrt(kappa_);
  return std::numeric_limits<double>::infinity();
}

int ModelSpace::point_count() const {
  if (kind_ != SpaceKind::FiniteMetric) {
    throw std::logic_error("point_count: not a finite metric space");
  }
  return static_cast<int>(dmatrix_->rows());
}

const Eigen::MatrixXd& ModelSpace::dmatrix() const {
  if (kind_ != SpaceKind::FiniteMetric) {
    throw std::logic_error("dmatrix: not a finite metric space");
  }
  return *dmatrix_;
}

bool ModelSpace::same_space(const ModelSpace& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == SpaceKind::FiniteMetric) return dmatrix_ == other.dmatrix_;
  return dim_ == other.dim_ && kappa_ == other.kappa_;
}

Eigen::MatrixXd load_distance_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distance matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("distance matrix: cannot parse entry '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("distance matrix: file is empty");
  const auto n = rows.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::runtime_error("distance matrix: row " + std::to_string(i) +
                               " has " + std::to_string(rows[i].size()) +
                               " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double result = -a(0) * b(0);
  for (Eigen::Index i = 1; i < a.size(); ++i) result += a(i) * b(i);
  return result;
}

Point::Point(ModelSpace space, Eigen::VectorXd coords)
    : space_(std::move(space)), coords_(std::move(coords)) {
  if (coords_.size() != space_.ambient_dim()) {
    throw std::invalid_argument("point: expected " + std::to_string(space_.ambient_dim()) +
                                " coordinates, got " + std::to_string(coords_.size()));
  }
  switch (space_.kind()) {
    case SpaceKind::Euclidean:
      break;
    case SpaceKind::Sphere: {
      const double target = 1.0 / space_.kappa();
      if (std::abs(coords_.squaredNorm() - target) > kOnManifoldTol * manifold_scale(space_.kappa())) {
        throw std::invalid_argument("point: coordinates are not on the sphere |x|^2 = 1/kappa");
      }
      break;
    }
    case SpaceKind::Hyperbolic: {
      const double target = 1.0 / space_.kappa();
      if (std::abs(minkowski_dot(coords_, coords_) - target) >
          kOnManifoldTol * manifold_scale(space_.kappa())) {
        throw std::invalid_argument("point: coordinates are not on the hyperboloid <x,x> = 1/kappa");
      }
      if (!(coords_(0) > 0.0)) {
        throw std::invalid_argument("point: hyperboloid points must have positive first coordinate");
      }
      break;
    }
    case SpaceKind::FiniteMetric: {
      const double idx = coords_(0);
      if (idx != std::floor(idx) || idx < 0 || idx >= space_.point_count()) {
        throw std::invalid_argument("point: finite metric index out of range");
      }
      break;
    }
  }
}

Point Point::finite_metric_point(ModelSpace space, int index) {
  Eigen::VectorXd c(1);
  c(0) = index;
  return Point(std::move(space), std::move(c));
}

int Point::index() const {
  if (space_.kind() != SpaceKind::FiniteMetric) {
    throw std::logic_error("index: not a finite metric point");
  }
  return static_cast<int>(coords_(0));
}

TangentVector::TangentVector(Point base, Eigen::VectorXd direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  const ModelSpace& space = base_.space();
  if (!space.has_geodesics()) {
    throw std::invalid_argument("tangent vector: finite metric spaces have no tangent data");
  }
  if (direction_.size() != space.ambient_dim()) {
    throw std::invalid_argument("tangent vector: wrong coordinate count");
  }
  const double scale = std::max(1.0, direction_.cwiseAbs().maxCoeff());
  if (space.kind() == SpaceKind::Sphere) {
    if (std::abs(direction_.dot(base_.coords())) > 1e-10 * scale * manifold_scale(space.kappa())) {
      throw std::invalid_argument("tangent vector: not orthogonal to the sphere base point");
    }
  } else if (space.kind() == SpaceKind::Hyperbolic) {
    if (std::abs(minkowski_dot(direction_, base_.coords())) >
        1e-10 * scale * manifold_scale(space.kappa())) {
      throw std::invalid_argument("tangent vector: not Minkowski-orthogonal to the base point");
    }
  }
}

TangentVector TangentVector::zero(const Point& base) {
  return TangentVector(base, Eigen::VectorXd::Zero(base.space().ambient_dim()));
}

double TangentVector::norm() const {
  if (base_.space().kind() == SpaceKind::Hyperbolic) {
    // Tangent vectors to the hyperboloid are spacelike; clamp tiny negatives.
    return std::sqrt(std::max(0.0, minkowski_dot(direction_, direction_)));
  }
  return direction_.norm();
}

bool TangentVector::is_tip(double tol) const { return norm() <= tol; }

TangentVector TangentVector::scaled(double factor) const {
  return TangentVector(base_, factor * direction_);
}

Geodesic::Geodesic(TangentVector velocity, double tau)
    : velocity_(std::move(velocity)), tau_(tau) {
  if (!(tau_ > 0.0)) throw std::invalid_argument("geodesic: tau must be positive");
  const ModelSpace& space = velocity_.base().space();
  if (space.kind() == SpaceKind::Sphere && !(speed() * tau_ < space.diameter_bound())) {
    throw std::invalid_argument("geodesic: sphere geodesic extends past the diameter bound");
  }
}

Point Geodesic::at(double t) const {
  if (t < -1e-15 || t > tau_ * (1.0 + 1e-12) + 1e-15) {
    throw std::invalid_argument("geodesic: parameter outside [0, tau]");
  }
  return exp_map(velocity_.scaled(std::clamp(t, 0.0, tau_)));
}

double distance(const Point& a, const Point& b) {
  const ModelSpace& space = a.space();
  if (!space.same_space(b.space())) {
    throw std::invalid_argument("distance: points belong to different spaces");
  }
  switch (space.kind()) {
    case SpaceKind::Euclidean:
      return (a.coords() - b.coords()).norm();
    case SpaceKind::Sphere: {
      // Chord-based formula: accurate for nearby points, exactly capped at D_kappa.
      const double radius = 1.0 / std::sqrt(space.kappa());
      const double chord = (a.coords() - b.coords()).norm();
      const double angle = 2.0 * std::asin(std::min(1.0, 0.5 * chord / radius));
      return radius * angle;
    }
    case SpaceKind::Hyperbolic: {
      const double radius = 1.0 / std::sqrt(-space.kappa());
      const Eigen::VectorXd diff = a.coords() - b.coords();
      const double q = std::max(0.0, minkowski_dot(diff, diff));
      return 2.0 * radius * std::asinh(0.5 * std::sqrt(q) / radius);
    }
    case SpaceKind::FiniteMetric:
      return space.dmatrix()(a.index(), b.index());
  }
  return 0.0;
}

Point exp_map(const TangentVector& v) {
  const Point& base = v.base();
  const ModelSpace& space = base.space();
  const double len = v.norm();
  switch (space.kind()) {
    case SpaceKind::Euclidean:
      return Point(space, base.coords() + v.direction());
    case SpaceKind::Sphere: {
      if (!(len < space.diameter_bound())) {
        throw std::invalid_argument("exp_map: sphere tangent norm exceeds the diameter bound");
      }
      if (len == 0.0) return base;
      const double radius = 1.0 / std::sqrt(space.kappa());
      const double angle = len / radius;
      Eigen::VectorXd out = std::cos(angle) * base.coords() +
                            (radius * std::sin(angle) / len) * v.direction();
      out *= radius / out.norm();
      return Point(space, std::move(out));
    }
    case SpaceKind::Hyperbolic: {
      if (len == 0.0) return base;
      const double radius = 1.0 / std::sqrt(-space.kappa());
      const double angle = len / radius;
      Eigen::VectorXd out = std::cosh(angle) * base.coords() +
                            (radius * std::sinh(angle) / len) * v.direction();
      const double q = minkowski_dot(out, out);  // should be -radius^2
      out /= std::sqrt(q * space.kappa());
      return Point(space, std::move(out));
    }
    case SpaceKind::FiniteMetric:
      throw std::invalid_argument("exp_map: finite metric spaces have no geodesics");
  }
  throw std::logic_error("exp_map: unreachable");
}

TangentVector log_map(const Point& p, const Point& x) {
  const ModelSpace& space = p.space();
  if (!space.same_space(x.space())) {
    throw std::invalid_argument("log_map: points belong to different spaces");
  }
  switch (space.kind()) {
    case SpaceKind::Euclidean:
      return TangentVector(p, x.coords() - p.coords());
    case SpaceKind::Sphere: {
      const double d = distance(p, x);
      const double radius = 1.0 / std::sqrt(space.kappa());
      const double angle = d / radius;
      if (angle >= std::numbers::pi * (1.0 - 1e-9)) {
        throw std::domain_error("log_map: antipodal sphere points have no unique geodesic");
      }
      if (d == 0.0) return TangentVector::zero(p);
      Eigen::VectorXd w = x.coords() - std::cos(angle) * p.coords();
      // Remove residual normal component: keeps the tangency invariant exact.
      w -= (w.dot(p.coords()) * space.kappa()) * p.coords();
      const double wn = w.norm();
      if (wn == 0.0) return TangentVector::zero(p);
      return TangentVector(p, (d / wn) * w);
    }
    case SpaceKind::Hyperbolic: {
      const double d = distance(p, x);
      if (d == 0.0) return TangentVector::zero(p);
      const double radius = 1.0 / std::sqrt(-space.kappa());
      const double angle = d / radius;
      Eigen::VectorXd w = x.coords() - std::cosh(angle) * p.coords();
      w -= (minkowski_dot(w, p.coords()) * space.kappa()) * p.coords();
      const double wn = std::sqrt(std::max(0.0, minkowski_dot(w, w)));
      if (wn == 0.0) return TangentVector::zero(p);
      return TangentVector(p, (d / wn) * w);
    }
    case SpaceKind::FiniteMetric:
      throw std::invalid_argument("log_map: finite metric spaces have no geodesics");
  }
  throw std::logic_error("log_map: unreachable");
}

Point geodesic_point(const Geodesic& g, double t) { return g.at(t); }

Geodesic geodesic_between(const Point& p, const Point& x, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("geodesic_between: tau must be positive");
  return Geodesic(log_map(p, x).scaled(1.0 / tau), tau);
}

double path_length(const std::vector<Point>& samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("path_length: need at least two points");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    total += distance(samples[i - 1], samples[i]);
  }
  return total;
}

std::vector<Eigen::VectorXd> tangent_basis(const Point& p) {
  const ModelSpace& space = p.space();
  if (!space.has_geodesics()) {
    throw std::invalid_argument("tangent_basis: finite metric spaces have no tangent data");
  }
  const int ambient = space.ambient_dim();
  const int d = space.dim();
  if (space.kind() == SpaceKind::Euclidean) {
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(d);
    for (int i = 0; i < d; ++i) basis.push_back(Eigen::VectorXd::Unit(d, i));
    return basis;
  }
  const bool hyperbolic = space.kind() == SpaceKind::Hyperbolic;
  auto form = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return hyperbolic ? minkowski_dot(a, b) : a.dot(b);
  };
  const Eigen::VectorXd& base = p.coords();
  const double base_sq = form(base, base);  // 1/kappa, nonzero
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(d);
  for (int i = 0; i < ambient && static_cast<int>(basis.size()) < d; ++i) {
    Eigen::VectorXd w = Eigen::VectorXd::Unit(ambient, i);
    w -= (form(w, base) / base_sq) * base;
    for (const auto& b : basis) w -= form(w, b) * b;
    const double sq = form(w, w);
    if (sq > 1e-12) basis.push_back(w / std::sqrt(sq));
  }
  if (static_cast<int>(basis.size()) != d) {
    throw std::logic_error("tangent_basis: failed to build a full basis");
  }
  return basis;
}

Point canonical_base_point(const ModelSpace& space) {
  switch (space.kind()) {
    case SpaceKind::Euclidean:
      return Point(space, Eigen::VectorXd::Zero(space.dim()));
    case SpaceKind::Sphere: {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(space.dim() + 1);
      c(0) = 1.0 / std::sqrt(space.kappa());
      return Point(space, std::move(c));
    }
    case SpaceKind::Hyperbolic: {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(space.dim() + 1);
      c(0) = 1.0 / std::sqrt(-space.kappa());
      return Point(space, std::move(c));
    }
    case SpaceKind::FiniteMetric:
      return Point::finite_metric_point(space, 0);
  }
  throw std::logic_error("canonical_base_point: unreachable");
}

}  // namespace alexgeo
