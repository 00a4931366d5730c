#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "conediv/body.hpp"
#include "conediv/divergence.hpp"
#include "conediv/generator.hpp"

namespace conediv {

/// Stack-friendly boundary point for the planar (n = 2) surface-body
/// machinery; same data as BoundaryPoint without dynamic vectors.
struct PlanarPoint {
  Eigen::Vector2d x;
  Eigen::Vector2d normal;
  double support = 0.0;
  double curvature = 0.0;
  double curvature_function = 0.0;
};

/// Strictly positive weight on the boundary.
using PlanarWeight = std::function<double(const PlanarPoint&)>;

/// Grid polygon approximating the surface body K_{g,s}: the intersection of
/// the halfspaces that cut off weighted boundary mass at most s, one per
/// direction of an equispaced normal grid.
struct SurfaceBodyPolygon {
  std::vector<double> thetas;            // direction grid
  std::vector<double> offsets;           // per-direction support cut t_j
  std::vector<Eigen::Vector2d> vertices;  // convex, ccw; empty if flagged
  bool empty_flagged = false;

  double area() const;
};

struct LadderConfig {
  double s0 = 0.2;
  int halvings = 6;
  int grid_m = 1024;
};

/// Per direction u_j the offset t_j solves
///   int_{boundary cap <x,u_j> >= t} g dmu = s
/// by bisection to 1e-12 on the mass; s = 0 returns the circumscribed grid
/// polygon. s at or above the total weighted boundary mass flags an empty
/// body. K must be planar and smooth (smooth2d or a 2D ellipsoid).
SurfaceBodyPolygon surface_body(const ConvexBody& K, const PlanarWeight& g,
                                double s, int grid_m);

/// Volume deficit |K| - |K_{g,s}| measured against the same direction grid
/// (the s = 0 polygon), so the grid discretization bias cancels and the
/// deficit vanishes exactly at s = 0.
double volume_deficit(const ConvexBody& K, const PlanarWeight& g, double s,
                      int grid_m);

struct LimitEstimate {
  double value = 0.0;        // c_2 * extrapolated limit of deficit / s^2
  double uncertainty = 0.0;  // scaled fit standard error
  double residual_rms = 0.0;
  bool converged = false;
  std::vector<std::pair<double, double>> ladder;  // (s, deficit)
};

/// Evaluates the deficit on the ladder s_k = s0 2^{-k}, fits
/// deficit/s^2 = L + C s + D s^2 and returns c_2 L with c_2 = 8. The target
/// identity is int kappa / g^2 dmu.
LimitEstimate limit_estimate(const ConvexBody& K, const PlanarWeight& g,
                             const LadderConfig& ladder = {});

/// The weight whose surface-body limit recovers D_f:
///   g_f = [n |K°| n^n |K|^n p q / f(p/q)^{n-1}]^{1/2}
/// for the PQ direction; the QP direction uses the adjoint (h_f = g_{f*}).
/// Rejects generators with f(p/q) <= 0 anywhere on the boundary.
PlanarWeight weight_for_divergence(const ConvexBody& K, const Generator& f,
                                   Direction direction);

/// limit_estimate with the divergence weight; agrees with
/// f_divergence(f, K, direction, normalized) up to extrapolation error.
LimitEstimate divergence_via_limit(const ConvexBody& K, const Generator& f,
                                   Direction direction,
                                   const LadderConfig& ladder = {});

}  // namespace conediv
