#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alexgeo/barycenter.hpp"
#include "alexgeo/sampling.hpp"
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

TEST_CASE("measure validation") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Point a(plane, vec2(0, 0));
  const Point b(plane, vec2(1, 0));
  CHECK_THROWS_AS(DiscreteMeasure({a, b}, {0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({a, b}, {1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({a, b}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({a, Point(ModelSpace::euclidean(3), vec3(0, 0, 0))}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_NOTHROW(DiscreteMeasure::uniform({a, b}));
}

TEST_CASE("variance") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Point origin(plane, vec2(0, 0));
  CHECK(variance(DiscreteMeasure::uniform({Point(plane, vec2(3, 4))}), origin) ==
        doctest::Approx(25.0));
  CHECK(variance(DiscreteMeasure::uniform({Point(plane, vec2(1, 0)), Point(plane, vec2(-1, 0))}),
                 origin) == doctest::Approx(1.0));

  const ModelSpace sphere = ModelSpace::sphere(2);
  const Point pole(sphere, vec3(1, 0, 0));
  const DiscreteMeasure mu =
      DiscreteMeasure::uniform({Point(sphere, vec3(0, 1, 0)), Point(sphere, vec3(0, 0, 1))});
  CHECK(variance(mu, pole) == doctest::Approx(kPi * kPi / 4));
}

TEST_CASE("barycenter solving") {
  SUBCASE("weighted Euclidean mean in one iteration") {
    const ModelSpace plane = ModelSpace::euclidean(2);
    const DiscreteMeasure mu({Point(plane, vec2(0, 0)), Point(plane, vec2(2, 0)),
                              Point(plane, vec2(0, 4))},
                             {0.5, 0.25, 0.25});
    const auto result = solve_barycenter(mu);
    CHECK((result.point.coords() - vec2(0.5, 1.0)).norm() < 1e-12);
    CHECK(result.iterations <= 2);
    CHECK(result.residual <= 1e-10);
    CHECK(result.first_order_report <= 1e-10);
  }
  SUBCASE("two sphere points meet at the geodesic midpoint") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    const Point a(sphere, vec3(1, 0, 0));
    const Point b = exp_map(TangentVector(a, vec3(0, 1.1, 0.3)));
    const auto result = solve_barycenter(DiscreteMeasure::uniform({a, b}));
    const Point midpoint = geodesic_between(a, b).at(0.5);
    CHECK(distance(result.point, midpoint) < 1e-8);
  }
  SUBCASE("hyperbolic barycenter beats a dense polar grid") {
    const ModelSpace hyp = ModelSpace::hyperbolic(2);
    Rng rng = make_rng(911);
    const Point center = canonical_base_point(hyp);
    const auto cloud = alexgeo::testing::random_cloud(center, 1.0, 3, rng);
    const DiscreteMeasure mu = DiscreteMeasure::uniform(cloud);
    const auto result = solve_barycenter(mu);
    const double grid_min = alexgeo::testing::polar_grid_min_variance(mu, result.point, 1.5);
    CHECK(result.variance_at_point <= grid_min + 1e-6);
    for (const Point& support_point : cloud) {
      CHECK(result.variance_at_point <= variance(mu, support_point) + 1e-12);
    }
  }
  SUBCASE("point mass converges immediately") {
    const ModelSpace hyp = ModelSpace::hyperbolic(3);
    const Point y = canonical_base_point(hyp);
    const auto result = solve_barycenter(DiscreteMeasure::uniform({y}));
    CHECK(result.iterations == 0);
    CHECK(result.variance_at_point == 0.0);
  }
  SUBCASE("variance descends monotonically along the iteration") {
    for (const ModelSpace& space :
         {ModelSpace::euclidean(3), ModelSpace::sphere(2), ModelSpace::hyperbolic(3)}) {
      Rng rng = make_rng(321);
      const double radius = space.kind() == SpaceKind::Sphere ? 0.6 : 1.5;
      const auto cloud =
          alexgeo::testing::random_cloud(canonical_base_point(space), radius, 8, rng);
      const auto result = solve_barycenter(DiscreteMeasure::uniform(cloud));
      for (std::size_t i = 1; i < result.variance_trace.size(); ++i) {
        CHECK(result.variance_trace[i] <= result.variance_trace[i - 1] + 1e-12);
      }
    }
  }
  SUBCASE("Euclidean scaling equivariance") {
    const ModelSpace plane = ModelSpace::euclidean(3);
    Rng rng = make_rng(17);
    const auto cloud = alexgeo::testing::random_cloud(canonical_base_point(plane), 2.0, 6, rng);
    const DiscreteMeasure mu = DiscreteMeasure::uniform(cloud);
    const Eigen::VectorXd base = solve_barycenter(mu).point.coords();
    for (double lambda : {2.0, 0.5, 4.0}) {  // powers of two scale bit-exactly
      std::vector<Point> scaled;
      for (const Point& p : cloud) scaled.emplace_back(plane, lambda * p.coords());
      const Eigen::VectorXd result = solve_barycenter(DiscreteMeasure::uniform(scaled)).point.coords();
      CHECK((result - lambda * base).cwiseAbs().maxCoeff() == 0.0);
    }
    std::vector<Point> scaled;
    for (const Point& p : cloud) scaled.emplace_back(plane, 3.0 * p.coords());
    const Eigen::VectorXd result = solve_barycenter(DiscreteMeasure::uniform(scaled)).point.coords();
    CHECK((result - 3.0 * base).cwiseAbs().maxCoeff() < 1e-14 * (1.0 + base.cwiseAbs().maxCoeff()));
  }
  SUBCASE("sphere support outside the safe zone is rejected") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    const Point a(sphere, vec3(1, 0, 0));
    const Point far = exp_map(TangentVector(a, vec3(0, 0.98 * kPi, 0)));
    CHECK_THROWS_AS(solve_barycenter(DiscreteMeasure::uniform({a, far})), std::invalid_argument);
  }
  SUBCASE("iteration limit raises") {
    const ModelSpace plane = ModelSpace::euclidean(2);
    const DiscreteMeasure mu =
        DiscreteMeasure::uniform({Point(plane, vec2(0, 0)), Point(plane, vec2(1, 0))});
    BarycenterOptions options;
    options.max_iter = 0;
    CHECK_THROWS_AS(solve_barycenter(mu, options), std::runtime_error);
  }
}

TEST_CASE("first order audit") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  SUBCASE("exact mean audits to zero") {
    const DiscreteMeasure mu({Point(plane, vec2(1, 0)), Point(plane, vec2(-1, 0))}, {0.5, 0.5});
    CHECK(first_order_audit(mu, Point(plane, vec2(0, 0)), 16, 3) <= 1e-12);
  }
  SUBCASE("point mass audits to zero at its atom") {
    const Point y(plane, vec2(0.3, 0.7));
    CHECK(first_order_audit(DiscreteMeasure::uniform({y}), y, 8, 1) == 0.0);
  }
  SUBCASE("a perturbed mean audits to the perturbation size") {
    const DiscreteMeasure mu({Point(plane, vec2(1, 0)), Point(plane, vec2(-1, 0))}, {0.5, 0.5});
    const double eps = 1e-2;
    // shift along a coordinate axis: the frame probes pick up exactly eps
    const double audit = first_order_audit(mu, Point(plane, vec2(eps, 0)), 16, 3);
    CHECK(audit == doctest::Approx(eps).epsilon(1e-10));
  }
  SUBCASE("solver output audits within ten times the tolerance") {
    for (const ModelSpace& space :
         {ModelSpace::euclidean(2), ModelSpace::sphere(3), ModelSpace::hyperbolic(4)}) {
      Rng rng = make_rng(808);
      const double radius = space.kind() == SpaceKind::Sphere ? 0.6 : 1.5;
      std::uniform_int_distribution<int> count(2, 12);
      for (int trial = 0; trial < 50; ++trial) {
        const auto cloud = alexgeo::testing::random_cloud(canonical_base_point(space), radius,
                                                          count(rng), rng);
        const auto result = solve_barycenter(DiscreteMeasure::uniform(cloud));
        const double audit =
            first_order_audit(DiscreteMeasure::uniform(cloud), result.point, 32, trial);
        CHECK(audit <= 10.0 * 1e-10);
      }
    }
  }
}
