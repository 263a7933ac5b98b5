#pragma once

#include <cstdint>
#include <random>

#include "alexgeo/model_space.hpp"

namespace alexgeo {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniformly distributed unit tangent vector at p.
TangentVector random_unit_tangent(const Point& p, Rng& rng);

/// Approximately uniform point of the metric ball around `center` (Gaussian
/// direction, radius r = radius * u^{1/d}).
Point random_point_in_ball(const Point& center, double radius, Rng& rng);

/// Tangent vector with direction chosen uniformly and norm in [lo, hi].
TangentVector random_tangent(const Point& p, double lo, double hi, Rng& rng);

}  // namespace alexgeo
