// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion carries its own tolerance and runtime
// budget, pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "conediv/divergence.hpp"
#include "conediv/surface_body.hpp"
#include "conediv/verify.hpp"

using namespace conediv;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::string&)> run;
  double budget_seconds;
};

double uniform(std::mt19937& gen, double lo, double hi) {
  return lo + (hi - lo) * (gen() / 4294967296.0);
}

Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

std::string detail(double worst) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst gap %.3g", worst);
  return buf;
}

// --- criterion 1: normalized divergences of ellipsoids equal f(1) ----------

bool ellipsoid_law(std::string& note) {
  const std::vector<Ellipsoid> bodies = {Ellipsoid::from_semi_axes({1.0, 1.0}),
                                         Ellipsoid::from_semi_axes({2.0, 1.0}),
                                         Ellipsoid::from_semi_axes({3.0, 0.5})};
  const std::vector<Generator> gens = {generators::power(2.0),
                                       generators::power(3.0), generators::kl(),
                                       generators::power(-1.0)};
  bool ok = true;
  double worst = 0.0;
  for (const auto& E : bodies) {
    for (const auto& f : gens) {
      for (Direction dir : {Direction::PQ, Direction::QP}) {
        const DivergenceResult exact =
            f_divergence(f, E, dir, Normalization::normalized);
        ok &= exact.branch == Branch::exact_ellipsoid;
        ok &= exact.error_estimate == 0.0;
        ok &= exact.value.value() == f(1.0);

        QuadratureConfig forced;
        forced.force_quadrature = true;
        const DivergenceResult quad =
            f_divergence(f, E, dir, Normalization::normalized, forced);
        const double gap = std::fabs(quad.value.value() - f(1.0)) /
                           (1.0 + std::fabs(f(1.0)));
        worst = std::max(worst, gap);
        ok &= gap <= 1e-6;
      }
    }
  }
  note = detail(worst);
  return ok;
}

// --- criterion 2: polytopes give the endpoint values exactly ---------------

bool polytope_law(std::string& note) {
  const Polytope square = Polytope::box(Eigen::Vector2d(1, 1));
  const Polytope hexagon = Polytope::regular_polygon(6);
  const Polytope cube = Polytope::box(Eigen::Vector3d(1, 1, 1));
  const std::vector<Generator> gens = {generators::power(2.0),
                                       generators::power(3.0), generators::kl(),
                                       generators::power(-1.0)};
  bool ok = true;
  for (const ConvexBody* K :
       std::vector<const ConvexBody*>{&square, &hexagon, &cube}) {
    for (const auto& f : gens) {
      const DivergenceResult pq =
          f_divergence(f, *K, Direction::PQ, Normalization::normalized);
      const DivergenceResult qp =
          f_divergence(f, *K, Direction::QP, Normalization::normalized);
      ok &= pq.branch == Branch::exact_polytope && pq.error_estimate == 0.0;
      ok &= pq.value == f.f_at_zero;
      ok &= qp.value == f.fstar_at_zero;
    }
    ok &= kl_divergence(*K, Direction::PQ).value.value() == 0.0;
    ok &= kl_divergence(*K, Direction::QP).value.is_infinite();
  }
  note = "exact branches, infinities included";
  return ok;
}

// --- criterion 3: L_p affine surface area closed forms ---------------------

bool lp_asa_closed_forms(std::string& note) {
  bool ok = true;
  double worst = 0.0;
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  for (double p : {-3.0, 1.0, 2.0}) {
    const double gap = std::fabs(lp_asa(p, disk).value.value() - 2 * kPi);
    worst = std::max(worst, gap);
    ok &= gap <= 1e-10;
  }
  // independent arc-length oracle for the affine length of the ellipse
  const auto kappa = [](double t) {
    const double w =
        4.0 * std::sin(t) * std::sin(t) + std::cos(t) * std::cos(t);
    return 2.0 / std::pow(w, 1.5);
  };
  const auto ds = [](double t) {
    return std::sqrt(4.0 * std::sin(t) * std::sin(t) +
                     std::cos(t) * std::cos(t));
  };
  const int n = 40000;
  double oracle = std::cbrt(kappa(0.0)) * ds(0.0) * 2.0;  // simpson endpoints
  for (int i = 1; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    oracle += std::cbrt(kappa(t)) * ds(t) * (i % 2 ? 4.0 : 2.0);
  }
  oracle *= (2 * kPi / n) / 3.0;
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const double got = lp_asa(1.0, ellipse).value.value();
  const double gap = std::fabs(got - oracle) / std::fabs(oracle);
  worst = std::max(worst, gap);
  ok &= gap <= 1e-6;
  note = detail(worst);
  return ok;
}

// --- criterion 4: surface-body volume deficits recover curvature integrals -

bool surface_body_limits(std::string& note) {
  LadderConfig ladder;  // s0 = 0.2, 6 halvings
  ladder.grid_m = 1024;
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const PlanarWeight one = [](const PlanarPoint&) { return 1.0; };
  const PlanarWeight two = [](const PlanarPoint&) { return 2.0; };
  bool ok = true;
  double worst = 0.0;
  struct Row {
    const ConvexBody* body;
    const PlanarWeight* weight;
    double target, tol;
  };
  const std::vector<Row> rows = {{&disk, &one, 2 * kPi, 0.01},
                                 {&disk, &two, kPi / 2, 0.01},
                                 {&ellipse, &one, 2 * kPi, 0.015}};
  for (const Row& row : rows) {
    const LimitEstimate est = limit_estimate(*row.body, *row.weight, ladder);
    const double gap = std::fabs(est.value - row.target) / row.target;
    worst = std::max(worst, gap);
    ok &= gap <= row.tol;
    ok &= est.converged;
  }
  note = detail(worst);
  return ok;
}

// --- criterion 5: the weighted limit reproduces the divergence -------------

bool divergence_via_limit_consistency(std::string& note) {
  LadderConfig ladder;
  ladder.grid_m = 1024;
  const Generator sq = generators::power(2.0);
  bool ok = true;
  double worst = 0.0;
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  for (const ConvexBody* K : std::vector<const ConvexBody*>{&disk, &ellipse}) {
    const double direct =
        f_divergence(sq, *K, Direction::PQ, Normalization::normalized)
            .value.value();
    const LimitEstimate est = divergence_via_limit(*K, sq, Direction::PQ, ladder);
    const double gap = std::fabs(est.value - direct) / std::fabs(direct);
    worst = std::max(worst, gap);
    ok &= gap <= 0.02;
  }
  note = detail(worst);
  return ok;
}

// --- criterion 6: invariance under random linear maps ----------------------

bool invariance_suite(std::string& note) {
  std::mt19937 gen(611953);
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const SmoothBody2D wavy = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  const Generator sq = generators::power(2.0);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double cond = uniform(gen, 1.0, 10.0);
    const double s1 = uniform(gen, 0.5, 2.0);
    const Eigen::Matrix2d T = rotation(uniform(gen, 0, 2 * kPi)) *
                              Eigen::Vector2d(s1, s1 / cond).asDiagonal() *
                              rotation(uniform(gen, 0, 2 * kPi));
    for (const ConvexBody* K : std::vector<const ConvexBody*>{&disk, &wavy}) {
      const InvarianceReport rep =
          check_gl_invariance(*K, sq, T, 1e-6, Normalization::normalized);
      worst = std::max(worst, rep.max_gap);
      ok &= rep.pass;
    }
    // unit-determinant rescale for the non-normalized (tilde) mode
    const Eigen::Matrix2d S = T / std::sqrt(std::fabs(T.determinant()));
    for (const ConvexBody* K : std::vector<const ConvexBody*>{&disk, &wavy}) {
      const InvarianceReport rep =
          check_gl_invariance(*K, sq, S, 1e-6, Normalization::tilde);
      worst = std::max(worst, rep.max_gap);
      ok &= rep.pass;
    }
  }
  note = detail(worst);
  return ok;
}

// --- criterion 7: valuation additivity on random slabs ---------------------

bool valuation_suite(std::string& note) {
  std::mt19937 gen(77001);
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  bool ok = true;
  double worst = 0.0;
  for (const Generator& f : {generators::power(2.0), generators::power(3.0)}) {
    for (const ConvexBody* K :
         std::vector<const ConvexBody*>{&disk, &ellipse}) {
      for (int i = 0; i < 10; ++i) {
        const double angle = uniform(gen, 0.0, 2 * kPi);
        const Eigen::Vector2d e(std::cos(angle), std::sin(angle));
        Eigen::VectorXd eplus(2), eminus(2);
        eplus << e.x(), e.y();
        eminus << -e.x(), -e.y();
        const double hi = uniform(gen, 0.05, 0.6) * K->support(eplus);
        const double lo = -uniform(gen, 0.05, 0.6) * K->support(eminus);
        const ValuationReport rep = check_valuation(*K, e, lo, hi, f, 1e-4);
        worst = std::max(worst, rep.defect_rel);
        ok &= rep.pass;
      }
    }
  }
  note = detail(worst);
  return ok;
}

// --- criterion 8: lower bound with equality only at the ball ---------------

bool bound_property(std::string& note) {
  std::mt19937 gen(88311);
  const Generator sq = generators::power(2.0);
  bool ok = true;
  double min_excess = 1e300;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> c(6, 0.0), s(6, 0.0);
    if (trial > 0) {
      double mass = 0.0;
      for (int k = 1; k <= 5; ++k) {
        c[k] = uniform(gen, -1.0, 1.0);
        s[k] = uniform(gen, -1.0, 1.0);
        mass += k * k * (std::fabs(c[k]) + std::fabs(s[k]));
      }
      const double rho = uniform(gen, 0.1, 0.5);
      for (int k = 1; k <= 5; ++k) {
        c[k] *= rho / mass;
        s[k] *= rho / mass;
      }
    }
    c[0] = 1.0;
    const SmoothBody2D body = SmoothBody2D::from_trig(c, s);
    const double d =
        f_divergence(sq, body, Direction::PQ, Normalization::normalized)
            .value.value();
    ok &= d >= 1.0 - 1e-9;
    if (trial == 0) {
      ok &= std::fabs(d - 1.0) <= 1e-12;  // the ball itself: equality
    } else {
      ok &= d > 1.0 + 1e-9;  // genuine perturbations: strict inequality
      min_excess = std::min(min_excess, d - 1.0);
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "min excess %.3g", min_excess);
  note = buf;
  return ok;
}

// --- criterion 9: polygons approximating the disk keep divergence 0 --------

bool discontinuity_witness(std::string& note) {
  const Generator sq = generators::power(2.0);
  bool ok = true;
  for (int k : {8, 64, 512}) {
    const Polytope gon = Polytope::regular_polygon(k);
    ok &= f_divergence(sq, gon, Direction::PQ, Normalization::normalized)
              .value.value() == 0.0;
  }
  ok &= f_divergence(sq, Ellipsoid::unit_ball(2), Direction::PQ,
                     Normalization::normalized)
            .value.value() == 1.0;
  note = "polygon values 0, disk value 1";
  return ok;
}

// --- criterion 10: mixed divergences reduce to the plain one ---------------

bool mixed_consistency(std::string& note) {
  const Generator sq = generators::power(2.0);
  const std::vector<Generator> pair_gens = {sq, sq};
  bool ok = true;
  double worst = 0.0;
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  for (const ConvexBody* K : std::vector<const ConvexBody*>{&disk, &ellipse}) {
    const ConvexBody* pair[] = {K, K};
    const double mixed = mixed_divergence(pair, pair_gens, Direction::PQ).value();
    const double direct =
        f_divergence(sq, *K, Direction::PQ, Normalization::normalized)
            .value.value();
    const double gap = std::fabs(mixed - direct);
    worst = std::max(worst, gap);
    ok &= gap <= 1e-8;
  }
  note = detail(worst);
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ellipsoid law (exact and forced quadrature)", ellipsoid_law, 5.0},
      {2, "polytope law (endpoint values, infinities)", polytope_law, 1.0},
      {3, "L_p affine surface area closed forms", lp_asa_closed_forms, 5.0},
      {4, "surface-body limit at m=1024", surface_body_limits, 60.0},
      {5, "divergence via the surface-body limit", divergence_via_limit_consistency, 60.0},
      {6, "invariance under 20 random maps per mode", invariance_suite, 120.0},
      {7, "valuation additivity on 10 random slabs", valuation_suite, 120.0},
      {8, "lower bound over 50 random smooth bodies", bound_property, 120.0},
      {9, "discontinuity witness on polygon sequences", discontinuity_witness, 5.0},
      {10, "mixed-divergence identical-input reduction", mixed_consistency, 30.0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > c.budget_seconds) {
      ok = false;
      note += " [over budget]";
    }
    std::printf("[%s] criterion %d: %s (%s, %.2fs)\n", ok ? "PASS" : "FAIL",
                c.id, c.title.c_str(), note.c_str(), elapsed);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
