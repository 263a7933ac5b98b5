#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alexgeo/sampling.hpp"
#include "alexgeo/tangent_cone.hpp"
#include "test_helpers.hpp"

using namespace alexgeo;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("cone distance") {
  CHECK(cone_distance({0, 1.0}, {1, 1.0}, kPi / 2) == doctest::Approx(std::sqrt(2.0)));
  SUBCASE("tip cases") {
    CHECK(cone_distance({0, 1.0}, {1, 0.0}, 2.3) == doctest::Approx(1.0));
    CHECK(cone_distance({0, 0.0}, {1, 0.0}, 1.0) == doctest::Approx(0.0));
    CHECK(same_cone_point({0, 0.0}, {5, 0.0}));
  }
  SUBCASE("cone over a circle of diameter pi is flat") {
    for (double theta : {0.1, 0.7, 1.9, 3.0}) {
      CHECK(cone_distance({0, 1.0}, {1, 1.0}, theta) ==
            doctest::Approx(2.0 * std::sin(theta / 2)));
    }
  }
  SUBCASE("monotone in the angle for fixed radii") {
    double previous = 0.0;
    for (double theta = 0.0; theta <= kPi + 1e-9; theta += 0.05) {
      const double d = cone_distance({0, 0.8}, {1, 1.7}, std::min(theta, kPi));
      CHECK(d >= previous - 1e-12);
      previous = d;
    }
  }
  SUBCASE("invalid angles are rejected") {
    CHECK_THROWS_AS(cone_distance({0, 1.0}, {1, 1.0}, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(cone_distance({0, 1.0}, {1, 1.0}, 3.5), std::invalid_argument);
  }
}

TEST_CASE("tangent inner products") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Point base(plane, vec2(0.3, -0.4));
  const TangentVector u(base, vec2(1, 0));
  const TangentVector v(base, vec2(0, 2));
  CHECK(inner_product(u, v) == doctest::Approx(0.0));
  CHECK(norm(u) == doctest::Approx(1.0));
  CHECK(norm(v) == doctest::Approx(2.0));

  SUBCASE("tip behavior") {
    const TangentVector tip = TangentVector::zero(base);
    CHECK(inner_product(tip, v) == doctest::Approx(0.0));
    CHECK(tangent_distance(tip, v) == doctest::Approx(norm(v)));
  }
  SUBCASE("orthogonal meridian tangents on the sphere") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    const Point pole(sphere, vec3(1, 0, 0));
    CHECK(inner_product(TangentVector(pole, vec3(0, 0.7, 0)), TangentVector(pole, vec3(0, 0, 1.1))) ==
          doctest::Approx(0.0));
  }
  SUBCASE("different base points are rejected") {
    const Point other(plane, vec2(1, 1));
    CHECK_THROWS_AS(inner_product(u, TangentVector(other, vec2(1, 0))), std::invalid_argument);
  }
  SUBCASE("law of cosines identity holds by construction") {
    Rng rng = make_rng(99);
    for (const ModelSpace& space :
         {ModelSpace::euclidean(3), ModelSpace::sphere(3), ModelSpace::hyperbolic(3)}) {
      const Point p = random_point_in_ball(canonical_base_point(space), 0.8, rng);
      const TangentVector a = random_tangent(p, 0.1, 2.0, rng);
      const TangentVector b = random_tangent(p, 0.1, 2.0, rng);
      const double lhs = tangent_distance(a, b) * tangent_distance(a, b);
      const double rhs = norm(a) * norm(a) - 2 * inner_product(a, b) + norm(b) * norm(b);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  SUBCASE("positive homogeneity") {
    for (double lambda : {0.0, 0.5, 2.0, 7.5}) {
      CHECK(inner_product(u.scaled(lambda), v) == doctest::Approx(lambda * inner_product(u, v)));
      CHECK(norm(u.scaled(lambda)) == doctest::Approx(lambda * norm(u)));
    }
  }
}

TEST_CASE("angle between geodesics") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Point origin(plane, vec2(0, 0));
  const Geodesic e1(TangentVector(origin, vec2(1, 0)), 1.0);
  const Geodesic e2(TangentVector(origin, vec2(0, 1)), 1.0);
  CHECK(angle_between_geodesics(e1, e2) == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(angle_between_geodesics(e1, e1) == doctest::Approx(0.0));

  SUBCASE("sphere meridians separated by longitude 0.7") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    const Point pole(sphere, vec3(1, 0, 0));
    const Geodesic m1(TangentVector(pole, vec3(0, 1, 0)), 1.0);
    const Geodesic m2(TangentVector(pole, vec3(0, std::cos(0.7), std::sin(0.7))), 1.0);
    CHECK(std::abs(angle_between_geodesics(m1, m2) - 0.7) < 1e-6);
  }
  SUBCASE("non-common base points are rejected") {
    const Geodesic shifted(TangentVector(Point(plane, vec2(1, 0)), vec2(1, 0)), 1.0);
    CHECK_THROWS_AS(angle_between_geodesics(e1, shifted), std::invalid_argument);
  }
  SUBCASE("trivial geodesics are rejected") {
    const Geodesic still(TangentVector::zero(origin), 1.0);
    CHECK_THROWS_AS(angle_between_geodesics(e1, still), std::invalid_argument);
  }
}

TEST_CASE("separation rate") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Point origin(plane, vec2(0, 0));
  const Geodesic e1(TangentVector(origin, vec2(1, 0)), 1.0);
  const Geodesic e2(TangentVector(origin, vec2(0, 1)), 1.0);
  CHECK(geodesic_separation_rate(e1, e2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(geodesic_separation_rate(e1, e1) == doctest::Approx(0.0));

  SUBCASE("sphere meridians, speeds 1 and 2, longitude gap pi/2") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    const Point pole(sphere, vec3(1, 0, 0));
    const Geodesic m1(TangentVector(pole, vec3(0, 1, 0)), 1.0);
    const Geodesic m2(TangentVector(pole, vec3(0, 0, 2)), 1.0);
    CHECK(std::abs(geodesic_separation_rate(m1, m2) - std::sqrt(5.0)) < 1e-6);
  }
}

TEST_CASE("midpoint limit") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Point origin(plane, vec2(0, 0));
  const Geodesic e1(TangentVector(origin, vec2(1, 0)), 1.0);
  const Geodesic e2(TangentVector(origin, vec2(0, 1)), 1.0);
  CHECK(midpoint_limit(e1, e2) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(midpoint_limit(e1, e1) == doctest::Approx(4.0).epsilon(1e-9));

  SUBCASE("sphere orthogonal unit meridians") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    const Point pole(sphere, vec3(1, 0, 0));
    const Geodesic m1(TangentVector(pole, vec3(0, 1, 0)), 1.0);
    const Geodesic m2(TangentVector(pole, vec3(0, 0, 1)), 1.0);
    CHECK(std::abs(midpoint_limit(m1, m2) - 2.0) < 1e-5);
  }
}

TEST_CASE("tangent cone identities on random geodesic pairs") {
  for (const ModelSpace& space :
       {ModelSpace::euclidean(3), ModelSpace::sphere(3), ModelSpace::hyperbolic(3)}) {
    Rng rng = make_rng(4242);
    const Point center = canonical_base_point(space);
    for (int trial = 0; trial < 100; ++trial) {
      const Point p = random_point_in_ball(center, 0.8, rng);
      const TangentVector u = random_tangent(p, 0.25, 2.0, rng);
      const TangentVector v = random_tangent(p, 0.25, 2.0, rng);
      const Geodesic g1(u, 1.0);
      const Geodesic g2(v, 1.0);

      const double angle = angle_between_geodesics(g1, g2);
      CHECK(std::abs(angle - alexgeo::testing::ambient_angle_oracle(p, u.direction(),
                                                                    v.direction())) < 1e-6);

      const double rate = geodesic_separation_rate(g1, g2);
      const double a = u.norm(), b = v.norm();
      const double cos_law = a * a + b * b - 2 * a * b * std::cos(angle);
      CHECK(std::abs(rate * rate - cos_law) < 1e-6);

      const double mid = midpoint_limit(g1, g2);
      const double expected = a * a + 2 * inner_product(u, v) + b * b;
      CHECK(std::abs(mid - expected) < 1e-5);
    }
  }
}
