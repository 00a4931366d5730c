#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace conediv {

class ConvexBody;
struct BoundaryPoint;

/// Resolution knobs shared by every integration-backed operation. All rules
/// are deterministic; identical inputs give bit-identical results.
struct QuadratureConfig {
  int circle_nodes = 4096;
  int sphere3_level = 96;
  bool force_quadrature = false;  // bypass exact ellipsoid/polytope branches
};

/// Quadrature rule on S^{n-1}: unit nodes with positive weights summing to
/// the sphere's surface measure (2*pi for n=2, 4*pi for n=3).
struct SphereRule {
  int dim = 2;
  std::vector<Eigen::VectorXd> nodes;
  std::vector<double> weights;
  std::string order_tag;
};

/// Equispaced trapezoidal rule on the circle; spectrally accurate for smooth
/// periodic integrands. Requires m >= 8.
SphereRule circle_rule(int m);

/// Gauss-Legendre (polar) x trapezoid (azimuth) product rule on S^2 with
/// ~2*level^2 nodes.
SphereRule sphere3_rule(int level);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature1D gauss_legendre(int count);

/// Deterministic pairwise summation; the reduction tree depends only on the
/// length, never on any partitioning of the work.
double pairwise_sum(std::span<const double> values);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Integral of phi over the boundary of K against the surface measure,
/// computed on the sphere through the curvature-function change of variables
///   int_{dK} phi dmu = int_{S^{n-1}} phi(x(u)) f_K(u) dsigma(u).
/// Rounded polygons take the piecewise path (arcs and segments separately).
/// Polytopes are rejected. The error estimate comes from node doubling.
IntegralResult integrate_boundary(
    const ConvexBody& K, const std::function<double(const BoundaryPoint&)>& phi,
    const SphereRule& rule);

/// Least-squares fit of samples (s_i, v_i) to v = L + C s^kappa, optionally
/// with a D s^{2 kappa} term. Requires >= 3 samples with s strictly
/// decreasing. uncertainty is the standard error of L from the fit residual.
struct LimitFit {
  double limit = 0.0;
  double uncertainty = 0.0;
  double residual_rms = 0.0;
};
LimitFit extrapolate_limit(std::span<const std::pair<double, double>> samples,
                           double kappa, bool quadratic_term = false);

}  // namespace conediv
