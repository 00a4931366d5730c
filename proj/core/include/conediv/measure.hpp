#pragma once

#include <Eigen/Dense>
#include <functional>

#include "conediv/body.hpp"
#include "conediv/quadrature.hpp"

namespace conediv {

/// Normalized cone-measure densities on the boundary:
///   p_K(x) = kappa(x) / (<x,N(x)>^n n |K polar|),
///   q_K(x) = <x,N(x)> / (n |K|).
/// Q_K = q_K mu_K is always a probability measure; P_K = p_K mu_K is one for
/// C^2_+ bodies and vanishes on polytopes.
double density_p(const ConvexBody& K, const BoundaryPoint& b);
double density_q(const ConvexBody& K, const BoundaryPoint& b);

/// Boundary region encodings, matched to the supported body kinds:
/// normal-angle intervals for planar bodies, spherical caps of normal
/// directions for 3D ellipsoids, facet ids for polytopes.
struct BoundaryRegion {
  enum class Kind { full, normal_angle_interval, spherical_cap, facet };

  static BoundaryRegion full();
  static BoundaryRegion angle_interval(double theta_lo, double theta_hi);
  static BoundaryRegion cap(Eigen::VectorXd axis, double opening_angle);
  static BoundaryRegion facet(int id);

  Kind kind = Kind::full;
  double theta_lo = 0.0, theta_hi = 0.0;
  Eigen::VectorXd cap_axis;
  double cap_angle = 0.0;
  int facet_id = -1;
};

/// Q_K-mass of the region; equals the volume of the cone over the region
/// divided by |K|. Throws on a region encoding the body kind cannot express.
double cone_measure(const ConvexBody& K, const BoundaryRegion& region,
                    const QuadratureConfig& cfg = {});

enum class WhichMeasure { P, Q };

/// Mass of {x : predicate(p(x), q(x))} under the chosen density. Piecewise
/// bodies are handled piece by piece; polytope facets are exact.
double mass_over_predicate(const ConvexBody& K, WhichMeasure which,
                           const std::function<bool(double, double)>& predicate,
                           const QuadratureConfig& cfg = {});

}  // namespace conediv
