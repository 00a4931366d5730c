#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conediv/verify.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conediv;

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}
}  // namespace

TEST_CASE("gl invariance on exact branches") {
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const Generator sq = generators::power(2.0);

  const InvarianceReport rot = check_gl_invariance(
      disk, sq, rotation(0.9), 1e-12, Normalization::normalized);
  CHECK(rot.pass);
  CHECK(rot.max_gap <= 1e-12);

  Eigen::Matrix2d squeeze = Eigen::Vector2d(2.0, 0.5).asDiagonal();
  const InvarianceReport sq_report = check_gl_invariance(
      disk, sq, squeeze, 1e-12, Normalization::normalized);
  CHECK(sq_report.pass);
  CHECK(sq_report.base_pq.value() == doctest::Approx(1.0));
  CHECK(sq_report.mapped_pq.value() == doctest::Approx(1.0));
}

TEST_CASE("sl invariance of the non-normalized divergence on a smooth body") {
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  Eigen::Matrix2d shear;
  shear << 1.0, 0.4, 0.0, 1.0;  // det 1
  const InvarianceReport rep = check_gl_invariance(
      wavy, generators::power(2.0), shear, 1e-6, Normalization::tilde);
  CHECK(rep.pass);
  CHECK(rep.max_gap <= 1e-6);

  // tilde mode refuses maps without |det| = 1
  Eigen::Matrix2d grow = Eigen::Vector2d(2.0, 1.0).asDiagonal();
  CHECK_THROWS_AS(check_gl_invariance(wavy, generators::power(2.0), grow, 1e-6,
                                      Normalization::tilde),
                  std::invalid_argument);
}

TEST_CASE("random gl maps preserve normalized divergences") {
  testutil::Rng rng(90210);
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  const Generator sq = generators::power(2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double s1 = rng.uniform(0.5, 2.0);
    const double cond = rng.uniform(1.0, 10.0);
    const Eigen::Matrix2d T = rotation(rng.uniform(0, 2 * kPi)) *
                              Eigen::Vector2d(s1, s1 / cond).asDiagonal() *
                              rotation(rng.uniform(0, 2 * kPi));
    const InvarianceReport rep =
        check_gl_invariance(wavy, sq, T, 1e-6, Normalization::normalized);
    INFO("trial ", trial, " gap ", rep.max_gap);
    CHECK(rep.pass);
  }
}

TEST_CASE("valuation additivity on sliced bodies") {
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const Eigen::Vector2d e1(1.0, 0.0);

  SUBCASE("slices that do not cut reproduce the identity") {
    const ValuationReport rep =
        check_valuation(disk, e1, -5.0, 5.0, generators::power(2.0));
    CHECK(rep.pass);
    CHECK(rep.defect_rel == doctest::Approx(0.0));
    CHECK(rep.whole.value() == doctest::Approx(rep.left.value()));
  }
  SUBCASE("disk slab") {
    const ValuationReport rep =
        check_valuation(disk, e1, -0.3, 0.3, generators::power(2.0));
    CHECK(rep.pass);
    CHECK(rep.defect_rel <= 1e-4);
  }
  SUBCASE("ellipse slab, cubic generator") {
    const ValuationReport rep =
        check_valuation(ellipse, e1, -0.5, 0.5, generators::power(3.0));
    CHECK(rep.pass);
    CHECK(rep.defect_rel <= 1e-4);
  }
  SUBCASE("face terms with f(0) != 0 still cancel") {
    const ValuationReport rep =
        check_valuation(disk, Eigen::Vector2d(0.6, 0.8), -0.4, 0.25,
                        generators::linear(-1.0, 2.0));
    CHECK(rep.pass);
    CHECK(rep.defect_rel <= 1e-6);
  }
  SUBCASE("infinite endpoint values stay balanced") {
    const ValuationReport rep =
        check_valuation(disk, e1, -0.3, 0.3, generators::power(-1.0));
    CHECK(rep.pass);
    CHECK(rep.left.is_infinite());       // K has a flat face and f(0) = inf
    CHECK(!rep.whole.is_infinite());     // M has no face
  }
  SUBCASE("origin must stay inside every slice") {
    CHECK_THROWS_AS(
        check_valuation(disk, e1, 0.1, 0.5, generators::power(2.0)),
        std::invalid_argument);
  }
}

TEST_CASE("valuation values match the plain tilde divergence on the whole body") {
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const Generator sq = generators::power(2.0);
  const ValuationReport rep =
      check_valuation(ellipse, Eigen::Vector2d(0.0, 1.0), -0.2, 0.2, sq);
  const double direct =
      f_divergence(sq, ellipse, Direction::PQ, Normalization::tilde)
          .value.value();
  CHECK(rep.whole.value() == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("bounds report on an ellipse: equality case") {
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const BoundsReport rep = check_bounds(ellipse, generators::power(2.0));
  CHECK(rep.pass);
  CHECK(rep.equality_expected);
  CHECK(rep.equality_gap <= 1e-12);
  CHECK(rep.f1_applicable);
  CHECK(rep.f1_slack == doctest::Approx(0.0));
  CHECK(rep.jensen_applicable);
}

TEST_CASE("bounds report on a smooth non-ellipsoid: strict slack") {
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  const BoundsReport rep = check_bounds(wavy, generators::power(2.0));
  CHECK(rep.pass);
  CHECK(rep.f1_applicable);
  CHECK(rep.f1_slack > 1e-3);
  CHECK(rep.jensen_pass);
  CHECK(!rep.upper_applicable);  // f*(0) = inf for t^2
}

TEST_CASE("bounds for a decreasing linear generator") {
  const Generator lin = generators::linear(-1.0, 2.0);  // f(1) = 1, f(0) = 2
  // rounded square: P({p>0}) = 1, so D = f(1) exactly (equality case)
  const RoundedPolygon rsq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.1);
  const BoundsReport rounded = check_bounds(rsq, lin);
  CHECK(rounded.pass);
  CHECK(rounded.f1_applicable);  // decreasing generator
  CHECK(rounded.divergence.value() == doctest::Approx(1.0));
  CHECK(rounded.f1_slack == doctest::Approx(0.0));
  // decreasing case of the upper bound: D <= f(0)
  CHECK(rounded.divergence.value() <= 2.0 + 1e-12);

  // a genuine polygon keeps no P-mass, so the bound is strict: D = f(0) > f(1)
  const Polytope pentagon = Polytope::regular_polygon(5);
  const BoundsReport sharp = check_bounds(pentagon, lin);
  CHECK(sharp.pass);
  CHECK(sharp.divergence.value() == doctest::Approx(2.0));
  CHECK(sharp.f1_slack == doctest::Approx(1.0));
  CHECK(sharp.divergence.value() <= 2.0 + 1e-12);
}

TEST_CASE("bounds with infinite divergence values") {
  // power(-1) on a polytope: D = f(0) = inf; every lower bound passes
  const Polytope square = Polytope::box(Eigen::Vector2d(1, 1));
  const BoundsReport rep = check_bounds(square, generators::power(-1.0));
  CHECK(rep.divergence.is_infinite());
  CHECK(rep.f1_applicable);  // decreasing
  CHECK(rep.f1_pass);
  CHECK(!rep.upper_applicable);  // f(0) = inf
  CHECK(rep.pass);
}

TEST_CASE("bounds on a cube with kl") {
  const Polytope cube = Polytope::box(Eigen::Vector3d(1, 1, 1));
  const BoundsReport rep = check_bounds(cube, generators::kl());
  CHECK(rep.divergence.value() == 0.0);
  CHECK(!rep.jensen_applicable);  // Q({p>0}) = 0
  CHECK(!rep.f1_applicable);      // not C^2_+, kl not decreasing
  CHECK(!rep.upper_applicable);   // f*(0) = inf
  CHECK(rep.pass);
}
