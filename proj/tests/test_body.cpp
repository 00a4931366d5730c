#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "conediv/body.hpp"
#include "conediv/quadrature.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conediv;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd dir2(double theta) {
  Eigen::VectorXd u(2);
  u << std::cos(theta), std::sin(theta);
  return u;
}

// The sphere-side polar-volume integral (1/n) int h^{-n} dsigma, evaluated
// independently of the cached exact branches.
double generic_polar_volume(const ConvexBody& K, const SphereRule& rule) {
  std::vector<double> terms(rule.nodes.size());
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    terms[i] = rule.weights[i] *
               std::pow(K.support(rule.nodes[i]), -K.dim()) / K.dim();
  }
  return pairwise_sum(terms);
}

}  // namespace

TEST_CASE("support function closed forms") {
  const Ellipsoid ball = Ellipsoid::unit_ball(2);
  CHECK(ball.support(dir2(0.3)) == doctest::Approx(1.0).epsilon(1e-14));

  const Ellipsoid ellipse(Eigen::Matrix2d(Eigen::Vector2d(4, 1).asDiagonal()));
  CHECK(ellipse.support(dir2(0.0)) == doctest::Approx(2.0).epsilon(1e-14));

  const Polytope square = Polytope::box(Eigen::Vector2d(1, 1));
  CHECK(square.support(dir2(kPi / 4)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  Eigen::VectorXd not_unit(2);
  not_unit << 1.0, 1.0;
  CHECK_THROWS_AS(square.support(not_unit), std::invalid_argument);
}

TEST_CASE("boundary points from normals") {
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const BoundaryPoint p0 = disk.boundary_point_from_normal(dir2(0.0));
  CHECK(p0.x(0) == doctest::Approx(1.0));
  CHECK(p0.x(1) == doctest::Approx(0.0));
  CHECK(p0.curvature == doctest::Approx(1.0));
  CHECK(p0.curvature_function == doctest::Approx(1.0));
  CHECK(p0.support == doctest::Approx(1.0));

  // radius of curvature at the major-axis endpoint is b^2/a, so kappa = a/b^2
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const BoundaryPoint pe = ellipse.boundary_point_from_normal(dir2(0.0));
  CHECK(pe.x(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(pe.curvature == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(pe.curvature_function == doctest::Approx(0.5).epsilon(1e-13));

  const RoundedPolygon rsq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.1);
  const BoundaryPoint pc = rsq.boundary_point_from_normal(dir2(kPi / 4));
  CHECK(pc.curvature == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(pc.x(0) == doctest::Approx(1.0 + 0.1 * std::cos(kPi / 4)));

  // a segment-normal direction resolves to the segment midpoint, kappa = 0
  const BoundaryPoint pm = rsq.boundary_point_from_normal(dir2(0.0));
  CHECK(pm.curvature == 0.0);
  CHECK(std::isinf(pm.curvature_function));
  CHECK(pm.x(0) == doctest::Approx(1.1));
  CHECK(pm.x(1) == doctest::Approx(0.0));

  const Polytope square = Polytope::box(Eigen::Vector2d(1, 1));
  CHECK_THROWS_AS(square.boundary_point_from_normal(dir2(0.0)),
                  std::invalid_argument);
}

TEST_CASE("curvature function closed forms") {
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  for (double t : {0.0, 1.0, 2.5}) {
    CHECK(disk.curvature_function(dir2(t)) == doctest::Approx(1.0));
  }
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  // a^2 b^2 / h^3 with h(0) = 2
  CHECK(ellipse.curvature_function(dir2(0.0)) ==
        doctest::Approx(0.5).epsilon(1e-13));

  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  for (double t : {0.0, 0.4, 1.7, 3.0}) {
    CHECK(wavy.curvature_function(dir2(t)) ==
          doctest::Approx(1.0 - 0.8 * std::cos(3 * t)).epsilon(1e-12));
  }

  const Polytope square = Polytope::box(Eigen::Vector2d(1, 1));
  CHECK(std::isinf(square.curvature_function(dir2(0.0))));  // facet normal
  CHECK(square.curvature_function(dir2(0.3)) == 0.0);
}

TEST_CASE("kappa times the curvature function is 1 along smooth boundaries") {
  const Ellipsoid e3 = Ellipsoid::from_semi_axes({1.0, 2.0, 3.0});
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  const RoundedPolygon rsq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.2);
  testutil::Rng rng(7);
  for (int i = 0; i < 64; ++i) {
    const double t = rng.uniform(0.0, 2.0 * kPi);
    for (const ConvexBody* K :
         std::vector<const ConvexBody*>{&wavy, &rsq}) {
      const BoundaryPoint bp = K->boundary_point_from_normal(dir2(t));
      if (std::isinf(bp.curvature_function)) continue;
      CHECK(bp.curvature * bp.curvature_function ==
            doctest::Approx(1.0).epsilon(1e-9));
      CHECK(bp.x.dot(bp.normal) == doctest::Approx(bp.support).epsilon(1e-9));
    }
    Eigen::VectorXd u(3);
    const double z = rng.uniform(-1.0, 1.0);
    const double r = std::sqrt(1 - z * z);
    u << r * std::cos(t), r * std::sin(t), z;
    const BoundaryPoint bp = e3.boundary_point_from_normal(u);
    CHECK(bp.curvature * bp.curvature_function == doctest::Approx(1.0));
    CHECK(bp.x.dot(bp.normal) == doctest::Approx(bp.support).epsilon(1e-9));
  }
}

TEST_CASE("volumes") {
  CHECK(Ellipsoid::unit_ball(2).volume() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(Ellipsoid::from_semi_axes({2.0, 1.0}).volume() ==
        doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(Polytope::box(Eigen::Vector3d(1, 1, 1)).volume() ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(Polytope::regular_polygon(6).volume() ==
        doctest::Approx(2.598076211353316).epsilon(1e-12));
  const RoundedPolygon rsq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.1);
  CHECK(rsq.volume() ==
        doctest::Approx(4.0 + 0.1 * 8.0 + kPi * 0.01).epsilon(1e-14));
  // (1/2) int h (h + h'') dtheta for h = 1 + 0.1 cos 3t is 0.96 pi
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  CHECK(wavy.volume() == doctest::Approx(0.96 * kPi).epsilon(1e-12));
}

TEST_CASE("polar volumes") {
  CHECK(Ellipsoid::unit_ball(2).polar_volume() == doctest::Approx(kPi));
  CHECK(Ellipsoid::from_semi_axes({2.0, 1.0}).polar_volume() ==
        doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(Polytope::box(Eigen::Vector2d(1, 1)).polar_volume() ==
        doctest::Approx(2.0).epsilon(1e-12));
  // dual of the cube is the cross-polytope, and the other way around
  CHECK(Polytope::box(Eigen::Vector3d(1, 1, 1)).polar_volume() ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  std::vector<Eigen::VectorXd> octa;
  for (int i = 0; i < 3; ++i) {
    for (double s : {-1.0, 1.0}) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
      v(i) = s;
      octa.push_back(v);
    }
  }
  const Polytope cross = Polytope::from_vertices(octa);
  CHECK(cross.volume() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(cross.polar_volume() == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("boundary integral reproduces cached volumes") {
  // (1/n) int h f_K dsigma against the exact branches
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const auto xn2 = [](const BoundaryPoint& bp) { return bp.support / 2.0; };
  CHECK(std::fabs(integrate_boundary(ellipse, xn2, circle_rule(2048)).value -
                  ellipse.volume()) <= 1e-8);
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  CHECK(integrate_boundary(wavy, xn2, circle_rule(2048)).value ==
        doctest::Approx(wavy.volume()).epsilon(1e-10));
  const RoundedPolygon rsq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.1);
  CHECK(integrate_boundary(rsq, xn2, circle_rule(64)).value ==
        doctest::Approx(rsq.volume()).epsilon(1e-12));
}

TEST_CASE("polar volume via the h^{-n} sphere integral") {
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  CHECK(generic_polar_volume(ellipse, circle_rule(4096)) ==
        doctest::Approx(ellipse.polar_volume()).epsilon(1e-10));
  const Ellipsoid e3 = Ellipsoid::from_semi_axes({1.0, 2.0, 3.0});
  CHECK(generic_polar_volume(e3, sphere3_rule(64)) ==
        doctest::Approx(e3.polar_volume()).epsilon(1e-8));
  // 2D polytope: integrate per vertex fan so no kink is crossed
  const Polytope square = Polytope::box(Eigen::Vector2d(1, 1));
  const Quadrature1D gl = gauss_legendre(64);
  double total = 0.0;
  for (const auto& v : square.vertices()) {
    const double mid = std::atan2(v(1), v(0));
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = mid + (kPi / 4) * gl.nodes[i];
      total += gl.weights[i] * (kPi / 4) *
               std::pow(square.support(dir2(t)), -2.0) / 2.0;
    }
  }
  CHECK(total == doctest::Approx(square.polar_volume()).epsilon(1e-6));
}

TEST_CASE("linear images") {
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  Eigen::Matrix2d rot;
  rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  const BodyPtr rotated = disk.linear_image(rot);
  for (double t : {0.0, 0.5, 2.0}) {
    CHECK(rotated->support(dir2(t)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  Eigen::Matrix2d stretch = Eigen::Vector2d(2, 1).asDiagonal();
  const BodyPtr stretched = disk.linear_image(stretch);
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  for (double t : {0.0, 0.4, 1.0, 2.2}) {
    CHECK(stretched->support(dir2(t)) ==
          doctest::Approx(ellipse.support(dir2(t))).epsilon(1e-13));
  }

  Eigen::Matrix2d shear;
  shear << 1, 1, 0, 1;
  const Polytope square = Polytope::box(Eigen::Vector2d(1, 1));
  CHECK(square.linear_image(shear)->volume() ==
        doctest::Approx(4.0).epsilon(1e-12));

  Eigen::Matrix2d singular;
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(square.linear_image(singular), std::invalid_argument);
}

TEST_CASE("support of a linear image is the homogeneous pullback") {
  testutil::Rng rng(42);
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const Polytope hexagon = Polytope::regular_polygon(6);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix2d T;
    T << rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
        rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5);
    if (std::fabs(T.determinant()) < 0.2) continue;
    const double theta = rng.uniform(0.0, 2 * kPi);
    const Eigen::VectorXd u = dir2(theta);
    for (const ConvexBody* K :
         std::vector<const ConvexBody*>{&wavy, &ellipse, &hexagon}) {
      const BodyPtr img = K->linear_image(T);
      const Eigen::VectorXd w = T.transpose() * u;
      const double expected = w.norm() * K->support(w.normalized());
      CHECK(img->support(u) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("linear image preserves volume scaling") {
  testutil::Rng rng(1234);
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0.02, 0, 0.1});
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix2d T;
    T << rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
        rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5);
    if (std::fabs(T.determinant()) < 0.3) continue;
    const BodyPtr img = wavy.linear_image(T);
    CHECK(img->volume() ==
          doctest::Approx(std::fabs(T.determinant()) * wavy.volume())
              .epsilon(1e-9));
  }
}

TEST_CASE("finite-difference support derivatives track the closed form") {
  const auto h = [](double t) { return 1.0 + 0.1 * std::cos(3 * t); };
  const SmoothBody2D fd(h);  // central differences, step 1e-5
  const SmoothBody2D exact = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  for (double t : {0.0, 0.3, 1.1, 2.9, 4.6}) {
    CHECK(fd.curvature_function_at(t) ==
          doctest::Approx(exact.curvature_function_at(t)).epsilon(1e-4));
  }
  CHECK(fd.volume() == doctest::Approx(exact.volume()).epsilon(1e-6));
}

TEST_CASE("rounded polygon pieces") {
  const RoundedPolygon rsq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.1);
  CHECK(rsq.arcs().size() == 4);
  CHECK(rsq.segments().size() == 4);
  double fan = 0.0;
  for (const auto& arc : rsq.arcs()) fan += arc.theta_hi - arc.theta_lo;
  CHECK(fan == doctest::Approx(2 * kPi).epsilon(1e-12));
  for (const auto& seg : rsq.segments()) {
    CHECK(seg.length == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(seg.support == doctest::Approx(1.1).epsilon(1e-12));
  }
  // similarity images stay rounded polygons; general maps are rejected
  Eigen::Matrix2d rotscale;
  rotscale << 0.6, -0.8, 0.8, 0.6;  // rotation
  rotscale *= 1.5;
  const BodyPtr img = rsq.linear_image(rotscale);
  CHECK(img->kind() == BodyKind::rounded_polygon);
  CHECK(img->volume() == doctest::Approx(2.25 * rsq.volume()).epsilon(1e-12));
  Eigen::Matrix2d stretch = Eigen::Vector2d(2, 1).asDiagonal();
  CHECK_THROWS_AS(rsq.linear_image(stretch), std::invalid_argument);
}

TEST_CASE("constructors reject invariant violations by name") {
  // not positive definite
  Eigen::Matrix2d bad;
  bad << 1, 0, 0, -1;
  CHECK_THROWS_WITH_AS((Ellipsoid(bad)),
                       doctest::Contains("positive definite"),
                       std::invalid_argument);
  // strict convexity violation: h + h'' dips negative
  CHECK_THROWS_WITH_AS((SmoothBody2D::from_trig({1.0, 0, 0.6})),
                       doctest::Contains("convexity"), std::invalid_argument);
  // origin outside
  std::vector<Eigen::VectorXd> far;
  for (auto [x, y] : {std::pair{3.0, 1.0}, {5.0, 1.0}, {5.0, 2.0}, {3.0, 2.0}}) {
    Eigen::VectorXd v(2);
    v << x, y;
    far.push_back(v);
  }
  CHECK_THROWS_WITH_AS(Polytope::from_vertices(far),
                       doctest::Contains("origin"), std::invalid_argument);
  // unbounded halfspace set
  std::vector<Halfspace> open;
  Eigen::VectorXd e0(2);
  e0 << 1, 0;
  open.push_back({e0, 1.0});
  CHECK_THROWS_AS(Polytope::from_halfspaces(open), std::invalid_argument);
  // rounded polygon with base not containing the origin
  CHECK_THROWS_WITH_AS(
      (RoundedPolygon({{3, 1}, {5, 1}, {5, 2}, {3, 2}}, 0.1)),
      doctest::Contains("origin"), std::invalid_argument);
  CHECK_THROWS_AS((RoundedPolygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("3d polytopes from either representation") {
  const Polytope cube = Polytope::box(Eigen::Vector3d(1, 1, 1));
  CHECK(cube.facets().size() == 6);
  std::vector<Eigen::VectorXd> corners(cube.vertices().begin(),
                                       cube.vertices().end());
  const Polytope rebuilt = Polytope::from_vertices(corners);
  CHECK(rebuilt.volume() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(rebuilt.facets().size() == 6);
  CHECK(rebuilt.polar_volume() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  std::vector<Halfspace> hs;
  for (const auto& f : cube.facets()) hs.push_back(f.plane);
  const Polytope from_h = Polytope::from_halfspaces(hs);
  CHECK(from_h.vertices().size() == 8);
  CHECK(from_h.volume() == doctest::Approx(8.0).epsilon(1e-12));
}
