#pragma once

#include <span>
#include <string>

#include "conediv/body.hpp"
#include "conediv/extended_real.hpp"
#include "conediv/generator.hpp"
#include "conediv/quadrature.hpp"

namespace conediv {

enum class Direction { PQ, QP };
enum class Normalization { normalized, tilde };
enum class Branch { exact_polytope, exact_ellipsoid, quadrature, piecewise };

std::string to_string(Direction d);
std::string to_string(Normalization n);
std::string to_string(Branch b);

struct DivergenceResult {
  ExtReal value;
  Direction direction = Direction::PQ;
  Normalization normalization = Normalization::normalized;
  Branch branch = Branch::quadrature;
  double error_estimate = 0.0;  // 0 on exact branches, node doubling otherwise
  bool concave_family = false;  // lp_asa with p > 0
};

/// The f-divergence of K with respect to its cone measures,
///   D_f(P_K, Q_K) = int f(p/q) q dmu,  p/q = |K| kappa / (|K°| <x,N>^{n+1}),
/// in tilde mode without the |K|, |K°| normalizations. The QP direction is
/// evaluated through the adjoint identity D_f(Q,P) = D_{f*}(P,Q) on the same
/// code path. Polytopes and ellipsoids dispatch to exact branches before any
/// integrator runs; +inf is a valid value there, not an error.
DivergenceResult f_divergence(const Generator& f, const ConvexBody& K,
                              Direction direction, Normalization normalization,
                              const QuadratureConfig& cfg = {});

/// L_psi affine surface area for psi in Conv(0,inf):
///   int psi(kappa / <x,N>^{n+1}) <x,N> dmu.
/// Exactly the non-normalized f-divergence with f = psi.
DivergenceResult lpsi_asa(const Generator& psi, const ConvexBody& K,
                          const QuadratureConfig& cfg = {});

/// L_p affine surface area int kappa^{p/(n+p)} <x,N>^{-n(p-1)/(n+p)} dmu for
/// any p != -n. Values p > 0 belong to the concave family and are flagged,
/// not rejected.
DivergenceResult lp_asa(double p, const ConvexBody& K,
                        const QuadratureConfig& cfg = {});

/// Relative entropy between the cone measures (f(t) = t ln t, normalized).
DivergenceResult kl_divergence(const ConvexBody& K, Direction direction,
                               const QuadratureConfig& cfg = {});

/// Hellinger integral H_alpha = int p^alpha q^{1-alpha} dmu.
double hellinger(const ConvexBody& K, double alpha,
                 const QuadratureConfig& cfg = {});

/// Renyi divergence ln(H_alpha)/(alpha - 1); alpha = 1 routes to the
/// relative entropy. Degenerate H (0 or +inf) yields +inf, flagged by value.
ExtReal renyi(const ConvexBody& K, double alpha,
              const QuadratureConfig& cfg = {});

/// Mixed f-divergence of n bodies in R^n over sphere densities
///   p_i(u) = 1/(n |K_i°| h_i(u)^n),  q_i(u) = f_{K_i}(u) h_i(u)/(n |K_i|):
///   int prod_i [f_i(p_i/q_i) q_i]^{1/n} dsigma.
/// Requires pointwise curvature (ellipsoids, smooth planar bodies) and
/// nonnegative factors under the root. Reduces to f_divergence when all
/// bodies and generators coincide.
ExtReal mixed_divergence(std::span<const ConvexBody* const> bodies,
                         std::span<const Generator> generators,
                         Direction direction, const QuadratureConfig& cfg = {});

}  // namespace conediv
