#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "alexgeo/model_space.hpp"
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

ModelSpace space_for(SpaceKind kind, int dim) {
  switch (kind) {
    case SpaceKind::Sphere: return ModelSpace::sphere(dim);
    case SpaceKind::Hyperbolic: return ModelSpace::hyperbolic(dim);
    default: return ModelSpace::euclidean(dim);
  }
}

}  // namespace

TEST_CASE("distance closed forms") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  CHECK(distance(Point(plane, vec2(0, 0)), Point(plane, vec2(3, 4))) == doctest::Approx(5.0));

  const ModelSpace sphere = ModelSpace::sphere(2);
  CHECK(distance(Point(sphere, vec3(1, 0, 0)), Point(sphere, vec3(0, 1, 0))) ==
        doctest::Approx(std::numbers::pi / 2));

  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  CHECK(distance(Point(hyp, vec3(1, 0, 0)), Point(hyp, vec3(std::cosh(1.0), std::sinh(1.0), 0))) ==
        doctest::Approx(1.0));

  SUBCASE("mismatched spaces are rejected") {
    CHECK_THROWS_AS(distance(Point(plane, vec2(0, 0)), Point(ModelSpace::euclidean(3), vec3(0, 0, 0))),
                    std::invalid_argument);
    CHECK_THROWS_AS(distance(Point(sphere, vec3(1, 0, 0)), Point(hyp, vec3(1, 0, 0))),
                    std::invalid_argument);
  }
}

TEST_CASE("point validation") {
  const ModelSpace sphere = ModelSpace::sphere(2, 4.0);  // radius 1/2
  CHECK_NOTHROW(Point(sphere, vec3(0.5, 0, 0)));
  CHECK_THROWS_AS(Point(sphere, vec3(1, 0, 0)), std::invalid_argument);

  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  CHECK_THROWS_AS(Point(hyp, vec3(-1, 0, 0)), std::invalid_argument);  // lower sheet
  CHECK_THROWS_AS(Point(hyp, vec3(1, 0.5, 0)), std::invalid_argument);

  SUBCASE("tangency validation") {
    CHECK_THROWS_AS(TangentVector(Point(ModelSpace::sphere(2), vec3(1, 0, 0)), vec3(1, 0, 0)),
                    std::invalid_argument);
    CHECK_NOTHROW(TangentVector(Point(ModelSpace::sphere(2), vec3(1, 0, 0)), vec3(0, 2, 1)));
  }
}

TEST_CASE("exp map") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Point origin(plane, vec2(0, 0));
  CHECK((exp_map(TangentVector(origin, vec2(1, 2))).coords() - vec2(1, 2)).norm() == 0.0);

  const ModelSpace sphere = ModelSpace::sphere(2);
  const Point pole(sphere, vec3(1, 0, 0));
  const Point quarter = exp_map(TangentVector(pole, vec3(0, std::numbers::pi / 2, 0)));
  CHECK((quarter.coords() - vec3(0, 1, 0)).norm() < 1e-12);
  CHECK_THROWS_AS(exp_map(TangentVector(pole, vec3(0, 3.2, 0))), std::invalid_argument);

  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  const Point base(hyp, vec3(1, 0, 0));
  const Point moved = exp_map(TangentVector(base, vec3(0, 1, 0)));
  CHECK((moved.coords() - vec3(std::cosh(1.0), std::sinh(1.0), 0)).norm() < 1e-12);
}

TEST_CASE("log map") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const TangentVector v = log_map(Point(plane, vec2(1, 1)), Point(plane, vec2(4, 5)));
  CHECK((v.direction() - vec2(3, 4)).norm() == 0.0);
  CHECK(v.norm() == doctest::Approx(5.0));

  const ModelSpace sphere = ModelSpace::sphere(2);
  const Point pole(sphere, vec3(1, 0, 0));
  const TangentVector w = log_map(pole, Point(sphere, vec3(0, 1, 0)));
  CHECK((w.direction() - vec3(0, std::numbers::pi / 2, 0)).norm() < 1e-12);

  SUBCASE("log at the base point is the tip") {
    CHECK(log_map(pole, pole).is_tip());
    CHECK(log_map(Point(plane, vec2(2, 3)), Point(plane, vec2(2, 3))).is_tip());
  }
  SUBCASE("antipodal pairs are rejected") {
    CHECK_THROWS_AS(log_map(pole, Point(sphere, vec3(-1, 0, 0))), std::domain_error);
  }
}

TEST_CASE("geodesic evaluation") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const Geodesic g = geodesic_between(Point(plane, vec2(0, 0)), Point(plane, vec2(2, 0)));
  CHECK((g.at(0.5).coords() - vec2(1, 0)).norm() < 1e-15);
  CHECK_THROWS_AS(g.at(1.5), std::invalid_argument);
  CHECK_THROWS_AS(g.at(-0.1), std::invalid_argument);

  const ModelSpace sphere = ModelSpace::sphere(2);
  const Geodesic q =
      geodesic_between(Point(sphere, vec3(1, 0, 0)), Point(sphere, vec3(0, 1, 0)));
  const double r = std::sqrt(0.5);
  CHECK((q.at(0.5).coords() - vec3(r, r, 0)).norm() < 1e-12);

  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  const Geodesic h(TangentVector(Point(hyp, vec3(1, 0, 0)), vec3(0, 1, 0)), 2.0);
  CHECK((h.at(2.0).coords() - vec3(std::cosh(2.0), std::sinh(2.0), 0)).norm() < 1e-12);

  SUBCASE("sphere geodesics cannot extend past the diameter bound") {
    CHECK_THROWS_AS(Geodesic(TangentVector(Point(sphere, vec3(1, 0, 0)), vec3(0, 1, 0)), 3.2),
                    std::invalid_argument);
  }
}

TEST_CASE("path length") {
  const ModelSpace plane = ModelSpace::euclidean(2);
  const std::vector<Point> polyline{Point(plane, vec2(0, 0)), Point(plane, vec2(1, 0)),
                                    Point(plane, vec2(1, 1))};
  CHECK(path_length(polyline) == doctest::Approx(2.0));
  CHECK_THROWS_AS(path_length({Point(plane, vec2(0, 0))}), std::invalid_argument);

  SUBCASE("geodesic samples reproduce the endpoint distance") {
    const ModelSpace hyp = ModelSpace::hyperbolic(3);
    Rng rng = make_rng(7);
    const Point a = random_point_in_ball(canonical_base_point(hyp), 1.5, rng);
    const Point b = random_point_in_ball(canonical_base_point(hyp), 1.5, rng);
    const Geodesic g = geodesic_between(a, b);
    std::vector<Point> samples;
    for (int i = 0; i <= 17; ++i) samples.push_back(g.at(i / 17.0));
    CHECK(path_length(samples) == doctest::Approx(distance(a, b)).epsilon(1e-9));
  }

  SUBCASE("sphere quarter great circle at 100 samples") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    const Geodesic g =
        geodesic_between(Point(sphere, vec3(1, 0, 0)), Point(sphere, vec3(0, 0, 1)));
    std::vector<Point> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(g.at(i / 99.0));
    CHECK(std::abs(path_length(samples) - std::numbers::pi / 2) < 1e-3);
  }

  SUBCASE("refinement never decreases the length") {
    const ModelSpace sphere = ModelSpace::sphere(2);
    Rng rng = make_rng(21);
    const Point center = canonical_base_point(sphere);
    const Point a = random_point_in_ball(center, 1.0, rng);
    const Point b = random_point_in_ball(center, 1.0, rng);
    const Point c = random_point_in_ball(center, 1.0, rng);
    const std::vector<Point> coarse{a, c};
    const std::vector<Point> fine{a, b, c};
    CHECK(path_length(fine) >= path_length(coarse) - 1e-15);
  }
}

TEST_CASE("round trip and constant speed properties") {
  for (const SpaceKind kind : {SpaceKind::Euclidean, SpaceKind::Sphere, SpaceKind::Hyperbolic}) {
    for (int dim = 1; dim <= 4; ++dim) {
      const ModelSpace space = space_for(kind, dim);
      Rng rng = make_rng(1000 + dim);
      const double horizon =
          kind == SpaceKind::Sphere ? 0.45 * space.diameter_bound() : 2.0;
      for (int trial = 0; trial < 50; ++trial) {
        const Point p = random_point_in_ball(canonical_base_point(space), horizon, rng);
        const Point x = random_point_in_ball(p, horizon, rng);
        // exp(log) round trip within 1e-9
        const Point back = exp_map(log_map(p, x));
        CHECK((back.coords() - x.coords()).norm() < 1e-9);
        CHECK(std::abs(log_map(p, x).norm() - distance(p, x)) < 1e-9);

        // constant speed along a random geodesic
        const Geodesic g(random_tangent(p, 0.1, 1.0, rng), 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double s = unif(rng), t = unif(rng);
        if (s > t) std::swap(s, t);
        const double dst = distance(g.at(s), g.at(t));
        const double dfull = distance(g.at(0.0), g.at(1.0));
        CHECK(std::abs(dst - (t - s) * dfull) < 1e-9);
      }
    }
  }
}

TEST_CASE("sphere distances never exceed the diameter bound") {
  const ModelSpace sphere = ModelSpace::sphere(3, 2.0);
  Rng rng = make_rng(99);
  const Point pole = canonical_base_point(sphere);
  for (int trial = 0; trial < 500; ++trial) {
    const Point a = random_point_in_ball(pole, 0.9 * sphere.diameter_bound(), rng);
    const Point b = random_point_in_ball(pole, 0.9 * sphere.diameter_bound(), rng);
    CHECK(distance(a, b) <= sphere.diameter_bound() + 1e-12);
  }
}

TEST_CASE("finite metric spaces") {
  Eigen::MatrixXd good(3, 3);
  good << 0, 1, 1.5, 1, 0, 1, 1.5, 1, 0;
  const ModelSpace space = ModelSpace::finite_metric(good);
  CHECK(space.point_count() == 3);
  CHECK(distance(Point::finite_metric_point(space, 0), Point::finite_metric_point(space, 2)) ==
        doctest::Approx(1.5));

  SUBCASE("corrupted matrices are rejected") {
    Eigen::MatrixXd broken = good;
    broken(0, 2) = broken(2, 0) = 5.0;  // 5 > 1 + 1
    CHECK_THROWS_AS(ModelSpace::finite_metric(broken), std::invalid_argument);

    Eigen::MatrixXd asym = good;
    asym(0, 1) = 1.2;
    CHECK_THROWS_AS(ModelSpace::finite_metric(asym), std::invalid_argument);

    Eigen::MatrixXd diag = good;
    diag(1, 1) = 0.1;
    CHECK_THROWS_AS(ModelSpace::finite_metric(diag), std::invalid_argument);

    Eigen::MatrixXd negative = good;
    negative(0, 1) = negative(1, 0) = -1.0;
    CHECK_THROWS_AS(ModelSpace::finite_metric(negative), std::invalid_argument);
  }

  SUBCASE("no geodesics") {
    const Point a = Point::finite_metric_point(space, 0);
    const Point b = Point::finite_metric_point(space, 1);
    CHECK_THROWS_AS(log_map(a, b), std::invalid_argument);
  }
}

TEST_CASE("distance matrix csv ingestion") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good_path = dir / "alexgeo_test_dist.csv";
  {
    std::ofstream out(good_path);
    out << "0,1,1.5\n1,0,1\n1.5,1,0\n";
  }
  const Eigen::MatrixXd m = load_distance_matrix_csv(good_path.string());
  CHECK(m.rows() == 3);
  CHECK(m(0, 2) == doctest::Approx(1.5));
  CHECK_NOTHROW(ModelSpace::finite_metric(m));

  SUBCASE("ragged and malformed files fail") {
    const auto bad_path = dir / "alexgeo_test_dist_bad.csv";
    {
      std::ofstream out(bad_path);
      out << "0,1\n1,0,2\n";
    }
    CHECK_THROWS_AS(load_distance_matrix_csv(bad_path.string()), std::runtime_error);
    CHECK_THROWS_AS(load_distance_matrix_csv("/nonexistent/alexgeo.csv"), std::runtime_error);
    std::filesystem::remove(bad_path);
  }
  std::filesystem::remove(good_path);
}
