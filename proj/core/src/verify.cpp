#include "conediv/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "conediv/measure.hpp"

namespace conediv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double gap_against(ExtReal base, ExtReal mapped) {
  if (base.is_infinite() && mapped.is_infinite()) return 0.0;
  if (base.is_infinite() != mapped.is_infinite()) return kInf;
  return std::fabs(base.value() - mapped.value()) /
         (1.0 + std::fabs(base.value()));
}

Eigen::VectorXd unit2(double theta) {
  Eigen::VectorXd u(2);
  u << std::cos(theta), std::sin(theta);
  return u;
}

double height(const ConvexBody& M, double theta, const Eigen::Vector2d& e) {
  const BoundaryPoint bp = M.boundary_point_from_normal(unit2(theta));
  return bp.x.dot(e);
}

// Root of height = t on [lo, hi]; height changes sign exactly once there.
double crossing(const ConvexBody& M, const Eigen::Vector2d& e, double t,
                double lo, double hi) {
  double flo = height(M, lo, e) - t;
  for (int iter = 0; iter < 56; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = height(M, mid, e) - t;
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Non-normalized f-divergence (PQ) of the slab body M n {lo <= <x,e> <= hi}.
// The curved boundary keeps M's curvature data; each flat face contributes
// f(0) times its <x,N>-mass.
ExtReal sliced_tilde_pq(const ConvexBody& M, const Eigen::Vector2d& e,
                        double lo, double hi, const Generator& f) {
  const double phi = std::atan2(e.y(), e.x());
  const double top = height(M, phi, e);          // max of <x,e>
  const double bottom = height(M, phi + kPi, e);  // min of <x,e>
  const bool cut_hi = hi < top;
  const bool cut_lo = lo > bottom;

  const Quadrature1D gl = gauss_legendre(128);
  auto arc_integral = [&M, &f, &gl](double a, double b) {
    if (b <= a) return 0.0;
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    std::vector<double> terms(gl.nodes.size());
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const BoundaryPoint bp =
          M.boundary_point_from_normal(unit2(mid + rad * gl.nodes[i]));
      const double ratio = bp.curvature / std::pow(bp.support, M.dim() + 1);
      terms[i] =
          gl.weights[i] * rad * f.eval(ratio) * bp.support * bp.curvature_function;
    }
    return pairwise_sum(terms);
  };
  auto chord_point = [&M](double theta) {
    return M.boundary_point_from_normal(unit2(theta)).x;
  };

  ExtReal total(0.0);
  if (!cut_hi && !cut_lo) {
    return arc_integral(phi, phi + 2.0 * kPi);
  }
  if (cut_hi && !cut_lo) {
    const double b1 = crossing(M, e, hi, phi, phi + kPi);
    const double b2 = crossing(M, e, hi, phi + 2.0 * kPi, phi + kPi);
    total += arc_integral(b1, b2);
    const double len = (chord_point(b1) - chord_point(b2)).norm();
    total += f.f_at_zero.scaled_by_mass(hi * len);
    return total;
  }
  if (!cut_hi && cut_lo) {
    const double c1 = crossing(M, e, lo, phi, phi + kPi);
    const double c2 = crossing(M, e, lo, phi + 2.0 * kPi, phi + kPi);
    total += arc_integral(c2, c1 + 2.0 * kPi);
    const double len = (chord_point(c1) - chord_point(c2)).norm();
    total += f.f_at_zero.scaled_by_mass(-lo * len);
    return total;
  }
  const double b1 = crossing(M, e, hi, phi, phi + kPi);
  const double b2 = crossing(M, e, hi, phi + 2.0 * kPi, phi + kPi);
  const double c1 = crossing(M, e, lo, phi, phi + kPi);
  const double c2 = crossing(M, e, lo, phi + 2.0 * kPi, phi + kPi);
  total += arc_integral(b1, c1);
  total += arc_integral(c2, b2);
  const double len_hi = (chord_point(b1) - chord_point(b2)).norm();
  const double len_lo = (chord_point(c1) - chord_point(c2)).norm();
  total += f.f_at_zero.scaled_by_mass(hi * len_hi);
  total += f.f_at_zero.scaled_by_mass(-lo * len_lo);
  return total;
}

}  // namespace

InvarianceReport check_gl_invariance(const ConvexBody& K, const Generator& f,
                                     const Eigen::MatrixXd& T, double tol,
                                     Normalization mode,
                                     const QuadratureConfig& cfg) {
  if (mode == Normalization::tilde &&
      std::fabs(std::fabs(T.determinant()) - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "check_gl_invariance: tilde divergences are SL(n) invariant only; "
        "|det T| must be 1 in tilde mode");
  }
  const BodyPtr image = K.linear_image(T);
  InvarianceReport r;
  r.mode = mode;
  r.tol = tol;
  r.base_pq = f_divergence(f, K, Direction::PQ, mode, cfg).value;
  r.mapped_pq = f_divergence(f, *image, Direction::PQ, mode, cfg).value;
  r.base_qp = f_divergence(f, K, Direction::QP, mode, cfg).value;
  r.mapped_qp = f_divergence(f, *image, Direction::QP, mode, cfg).value;
  r.max_gap = std::max(gap_against(r.base_pq, r.mapped_pq),
                       gap_against(r.base_qp, r.mapped_qp));
  r.pass = r.max_gap <= tol;
  return r;
}

ValuationReport check_valuation(const ConvexBody& M, const Eigen::Vector2d& axis,
                                double t_lo, double t_hi, const Generator& f,
                                double tol) {
  if (M.dim() != 2 ||
      (M.kind() != BodyKind::ellipsoid && M.kind() != BodyKind::smooth2d)) {
    throw std::invalid_argument(
        "check_valuation: the sliced body needs a smooth planar M");
  }
  const Eigen::Vector2d e = axis.normalized();
  if (!(t_lo < 0.0 && 0.0 < t_hi)) {
    throw std::invalid_argument(
        "check_valuation: origin outside a slice (need t_lo < 0 < t_hi)");
  }
  ValuationReport r;
  r.tol = tol;
  r.whole = sliced_tilde_pq(M, e, -kInf, kInf, f);
  r.intersection = sliced_tilde_pq(M, e, t_lo, t_hi, f);
  r.left = sliced_tilde_pq(M, e, -kInf, t_hi, f);   // K
  r.right = sliced_tilde_pq(M, e, t_lo, kInf, f);   // L
  const ExtReal lhs = r.whole + r.intersection;
  const ExtReal rhs = r.left + r.right;
  if (lhs.is_infinite() || rhs.is_infinite()) {
    r.defect_rel = lhs.is_infinite() == rhs.is_infinite() ? 0.0 : kInf;
  } else {
    r.defect_rel = std::fabs(lhs.value() - rhs.value()) /
                   std::max(1.0, std::fabs(rhs.value()));
  }
  r.pass = r.defect_rel <= tol;
  return r;
}

BoundsReport check_bounds(const ConvexBody& K, const Generator& f,
                          const QuadratureConfig& cfg, double slack_tol) {
  BoundsReport r;
  r.divergence =
      f_divergence(f, K, Direction::PQ, Normalization::normalized, cfg).value;
  r.q_mass_p_pos = mass_over_predicate(
      K, WhichMeasure::Q, [](double p, double) { return p > 0.0; }, cfg);
  r.p_mass_p_pos = mass_over_predicate(
      K, WhichMeasure::P, [](double p, double) { return p > 0.0; }, cfg);
  r.q_mass_p_zero = mass_over_predicate(
      K, WhichMeasure::Q, [](double p, double) { return p <= 0.0; }, cfg);

  auto lower_slack = [&](ExtReal bound) {
    if (r.divergence.is_infinite()) return kInf;
    if (bound.is_infinite()) return -kInf;  // finite value under an inf bound
    return r.divergence.value() - bound.value();
  };

  r.jensen_applicable = r.q_mass_p_pos > 0.0;
  if (r.jensen_applicable) {
    const double ratio = r.p_mass_p_pos / r.q_mass_p_pos;
    r.jensen_rhs = ExtReal(f.eval(ratio)).scaled_by_mass(r.q_mass_p_pos) +
                   f.f_at_zero.scaled_by_mass(r.q_mass_p_zero);
    r.jensen_slack = lower_slack(r.jensen_rhs);
    r.jensen_pass = r.jensen_slack >= -slack_tol;
  }

  r.f1_applicable = K.is_c2_plus() || f.is_decreasing;
  if (r.f1_applicable) {
    r.f1_slack = lower_slack(ExtReal(f.eval(1.0)));
    r.f1_pass = r.f1_slack >= -slack_tol;
  }

  r.upper_applicable = f.f_at_zero.is_finite() && f.fstar_at_zero.is_finite();
  if (r.upper_applicable) {
    if (f.is_decreasing) {
      // decreasing generators reduce the upper bound to D <= f(0)
      r.upper_rhs = f.f_at_zero.value();
    } else {
      const double q_small = mass_over_predicate(
          K, WhichMeasure::Q,
          [](double p, double q) { return p > 0.0 && p <= q; }, cfg);
      const double p_small = mass_over_predicate(
          K, WhichMeasure::P, [](double p, double q) { return q <= p; }, cfg);
      r.upper_rhs = f.f_at_zero.value() + f.fstar_at_zero.value() +
                    f.eval(1.0) * (q_small + p_small);
    }
    r.upper_slack =
        r.divergence.is_infinite() ? -kInf : r.upper_rhs - r.divergence.value();
    r.upper_pass = r.upper_slack >= -slack_tol;
  }

  r.equality_expected = K.kind() == BodyKind::ellipsoid;
  if (r.equality_expected) {
    r.equality_gap = r.divergence.is_infinite()
                         ? kInf
                         : std::fabs(r.divergence.value() - f.eval(1.0));
  }
  r.pass = r.jensen_pass && r.f1_pass && r.upper_pass &&
           (!r.equality_expected || r.equality_gap <= slack_tol);
  return r;
}

}  // namespace conediv
