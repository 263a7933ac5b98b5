#pragma once

#include "alexgeo/model_space.hpp"

namespace alexgeo {

/// Point of an abstract Euclidean cone: a direction label together with a
/// radius. Radius zero is the tip; all labels collapse there.
struct ConePoint {
  int direction_label = 0;
  double radius = 0.0;
};

inline bool same_cone_point(const ConePoint& a, const ConePoint& b) {
  if (a.radius == 0.0 && b.radius == 0.0) return true;
  return a.direction_label == b.direction_label && a.radius == b.radius;
}

/// Cone metric sqrt(s^2 - 2 s t cos(angle) + t^2) for radii s, t and the
/// angular distance (in [0, pi]) between the direction labels.
double cone_distance(const ConePoint& a, const ConePoint& b, double angular_distance);

/// Riemannian inner product of the ambient tangent representations; equals
/// the cone inner product |u||v| cos(angle) on the model spaces.
double inner_product(const TangentVector& u, const TangentVector& v);

double norm(const TangentVector& u);

/// Cone distance |u - v| at the common base point.
double tangent_distance(const TangentVector& u, const TangentVector& v);

/// Angle between two geodesics issuing from the same point, computed as the
/// numeric limit of flat comparison angles at shrinking parameters with
/// Richardson extrapolation. Throws when the extrapolation fails to
/// stabilize below 1e-6.
double angle_between_geodesics(const Geodesic& g1, const Geodesic& g2);

/// lim d(gamma1(t), gamma2(t)) / t, the cone distance of the initial data.
double geodesic_separation_rate(const Geodesic& g1, const Geodesic& g2);

/// 4 * lim d^2(p, m_t) / t^2 where m_t is the midpoint of gamma1(t) and
/// gamma2(t); equals |u|^2 + 2<u,v> + |v|^2 for the initial tangents.
double midpoint_limit(const Geodesic& g1, const Geodesic& g2);

}  // namespace alexgeo
