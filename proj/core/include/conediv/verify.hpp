#pragma once

#include <Eigen/Dense>

#include "conediv/body.hpp"
#include "conediv/divergence.hpp"
#include "conediv/extended_real.hpp"
#include "conediv/generator.hpp"
#include "conediv/quadrature.hpp"

namespace conediv {

/// Machine-readable outcomes: every check reports the numbers it compared and
/// a pass flag; nothing throws on a failed inequality.

struct InvarianceReport {
  Normalization mode = Normalization::normalized;
  ExtReal base_pq, mapped_pq, base_qp, mapped_qp;
  double tol = 0.0;
  double max_gap = 0.0;  // max over directions of |base - mapped|/(1 + |base|)
  bool pass = false;
};

/// Compares D_f of K and of T(K) in both directions. Normalized divergences
/// are GL(n) invariant; tilde mode is SL(n) only, so |det T| must be 1 there.
InvarianceReport check_gl_invariance(const ConvexBody& K, const Generator& f,
                                     const Eigen::MatrixXd& T, double tol,
                                     Normalization mode,
                                     const QuadratureConfig& cfg = {});

struct ValuationReport {
  ExtReal whole;         // M = K u L
  ExtReal intersection;  // K n L
  ExtReal left, right;   // K, L
  double defect_rel = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Valuation additivity of the non-normalized divergence on a sliced body:
/// K = M n {<x,e> <= t_hi}, L = M n {<x,e> >= t_lo} with t_lo < 0 < t_hi, so
/// K u L = M is convex by construction. Flat cut faces carry curvature 0 and
/// contribute f(0) times their <x,N>-mass.
ValuationReport check_valuation(const ConvexBody& M, const Eigen::Vector2d& axis,
                                double t_lo, double t_hi, const Generator& f,
                                double tol = 1e-4);

struct BoundsReport {
  ExtReal divergence;  // normalized, PQ
  double q_mass_p_pos = 0.0;
  double p_mass_p_pos = 0.0;
  double q_mass_p_zero = 0.0;

  bool jensen_applicable = false;  // needs Q({p>0}) > 0
  ExtReal jensen_rhs;
  double jensen_slack = 0.0;
  bool jensen_pass = true;

  bool f1_applicable = false;  // needs C^2_+ body or decreasing f
  double f1_slack = 0.0;
  bool f1_pass = true;

  bool upper_applicable = false;  // needs f(0), f*(0) finite
  double upper_rhs = 0.0;
  double upper_slack = 0.0;
  bool upper_pass = true;

  bool equality_expected = false;  // ellipsoids meet the f(1) bound exactly
  double equality_gap = 0.0;
  bool pass = false;
};

/// Lower bounds (Jensen with the {p>0} masses; f(1) for C^2_+ bodies or
/// decreasing f, with equality on ellipsoids) and the finite-endpoint upper
/// bound f(0) + f*(0) + f(1) [Q({0<p<=q}) + P({0<q<=p})], which reduces to
/// D <= f(0) for decreasing generators.
BoundsReport check_bounds(const ConvexBody& K, const Generator& f,
                          const QuadratureConfig& cfg = {},
                          double slack_tol = 1e-9);

}  // namespace conediv
