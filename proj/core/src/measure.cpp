#include "conediv/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace conediv {

namespace {
constexpr double kPi = std::numbers::pi;
}

double density_p(const ConvexBody& K, const BoundaryPoint& b) {
  if (b.curvature == 0.0) return 0.0;
  return b.curvature /
         (std::pow(b.support, K.dim()) * K.dim() * K.polar_volume());
}

double density_q(const ConvexBody& K, const BoundaryPoint& b) {
  return b.support / (K.dim() * K.volume());
}

BoundaryRegion BoundaryRegion::full() { return {}; }

BoundaryRegion BoundaryRegion::angle_interval(double lo, double hi) {
  BoundaryRegion r;
  r.kind = Kind::normal_angle_interval;
  r.theta_lo = lo;
  r.theta_hi = hi;
  return r;
}

BoundaryRegion BoundaryRegion::cap(Eigen::VectorXd axis, double opening_angle) {
  BoundaryRegion r;
  r.kind = Kind::spherical_cap;
  r.cap_axis = std::move(axis);
  r.cap_angle = opening_angle;
  return r;
}

BoundaryRegion BoundaryRegion::facet(int id) {
  BoundaryRegion r;
  r.kind = Kind::facet;
  r.facet_id = id;
  return r;
}

namespace {

// q * f_K integrated over a normal-angle interval of a planar smooth body.
double smooth2d_interval_q_mass(const ConvexBody& K, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const Quadrature1D gl = gauss_legendre(96);
  const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
  std::vector<double> terms(gl.nodes.size());
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = mid + rad * gl.nodes[i];
    Eigen::VectorXd u(2);
    u << std::cos(t), std::sin(t);
    const BoundaryPoint bp = K.boundary_point_from_normal(u);
    terms[i] = gl.weights[i] * rad * density_q(K, bp) * bp.curvature_function;
  }
  return pairwise_sum(terms);
}

double rounded_interval_q_mass(const RoundedPolygon& K, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (hi - lo >= 2.0 * kPi) {
    lo = 0.0;
    hi = 2.0 * kPi;
  }
  const Quadrature1D gl = gauss_legendre(64);
  std::vector<double> terms;
  auto add_arc_part = [&](const RoundedPolygon::Arc& arc, double a, double b) {
    if (b <= a) return;
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = mid + rad * gl.nodes[i];
      const BoundaryPoint bp = K.arc_point(arc, t);
      terms.push_back(gl.weights[i] * rad * K.radius() * density_q(K, bp));
    }
  };
  // Arc fans live on angles [theta_lo, theta_hi) with theta_hi - theta_lo in
  // (0, pi); compare against the query interval modulo 2 pi.
  for (const auto& arc : K.arcs()) {
    for (int shift = -2; shift <= 2; ++shift) {
      const double a = arc.theta_lo + 2.0 * kPi * shift;
      const double b = arc.theta_hi + 2.0 * kPi * shift;
      add_arc_part(arc, std::max(a, lo) - 2.0 * kPi * shift,
                   std::min(b, hi) - 2.0 * kPi * shift);
    }
  }
  // A segment's whole mass is an atom at its normal angle; intervals are
  // treated half-open [lo, hi) so partitions count each atom exactly once.
  for (const auto& seg : K.segments()) {
    const double sa = std::atan2(seg.normal.y(), seg.normal.x());
    for (int shift = -2; shift <= 2; ++shift) {
      const double t = sa + 2.0 * kPi * shift;
      if (t >= lo && t < hi) {
        terms.push_back(seg.support * seg.length / (K.dim() * K.volume()));
        break;
      }
    }
  }
  return pairwise_sum(terms);
}

// Integral of q * f_K over a cap of normal directions of a 3D ellipsoid,
// with a Gauss-Legendre rule in the polar offset around the cap axis.
double ellipsoid3_cap_q_mass(const Ellipsoid& K, const Eigen::VectorXd& axis,
                             double opening, const QuadratureConfig& cfg) {
  Eigen::Vector3d a(axis(0), axis(1), axis(2));
  a.normalize();
  const Eigen::Vector3d e1 = a.unitOrthogonal();
  const Eigen::Vector3d e2 = a.cross(e1);
  const int level = std::max(16, cfg.sphere3_level / 2);
  const Quadrature1D gl = gauss_legendre(level);
  const int azimuth = 2 * level;
  const double c_lo = std::cos(std::min(opening, kPi));
  std::vector<double> terms;
  terms.reserve(gl.nodes.size() * azimuth);
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    const double c = 0.5 * (1.0 + gl.nodes[i]) * (1.0 - c_lo) + c_lo;
    const double jac = 0.5 * (1.0 - c_lo);
    const double r = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < azimuth; ++j) {
      const double lambda = 2.0 * kPi * j / azimuth;
      const Eigen::Vector3d u3 =
          c * a + r * (std::cos(lambda) * e1 + std::sin(lambda) * e2);
      Eigen::VectorXd u(3);
      u << u3(0), u3(1), u3(2);
      const BoundaryPoint bp = K.boundary_point_from_normal(u);
      terms.push_back(gl.weights[i] * jac * (2.0 * kPi / azimuth) *
                      density_q(K, bp) * bp.curvature_function);
    }
  }
  return pairwise_sum(terms);
}

}  // namespace

double cone_measure(const ConvexBody& K, const BoundaryRegion& region,
                    const QuadratureConfig& cfg) {
  switch (region.kind) {
    case BoundaryRegion::Kind::full: {
      if (K.kind() == BodyKind::polytope) {
        const auto& P = static_cast<const Polytope&>(K);
        double total = 0.0;
        for (const auto& f : P.facets()) {
          total += f.plane.offset * f.area / (K.dim() * K.volume());
        }
        return total;
      }
      if (K.kind() == BodyKind::rounded_polygon) {
        return rounded_interval_q_mass(static_cast<const RoundedPolygon&>(K),
                                       0.0, 2.0 * kPi);
      }
      if (K.dim() == 2) {
        return smooth2d_interval_q_mass(K, 0.0, 2.0 * kPi);
      }
      return ellipsoid3_cap_q_mass(static_cast<const Ellipsoid&>(K),
                                   Eigen::Vector3d::UnitZ(), kPi, cfg);
    }
    case BoundaryRegion::Kind::normal_angle_interval: {
      if (K.dim() != 2) {
        throw std::invalid_argument(
            "cone_measure: normal-angle intervals are a planar encoding");
      }
      if (K.kind() == BodyKind::polytope) {
        throw std::invalid_argument(
            "cone_measure: unsupported region encoding for polytopes (use "
            "facet ids)");
      }
      if (K.kind() == BodyKind::rounded_polygon) {
        return rounded_interval_q_mass(static_cast<const RoundedPolygon&>(K),
                                       region.theta_lo, region.theta_hi);
      }
      return smooth2d_interval_q_mass(K, region.theta_lo, region.theta_hi);
    }
    case BoundaryRegion::Kind::spherical_cap: {
      if (K.kind() != BodyKind::ellipsoid || K.dim() != 3) {
        throw std::invalid_argument(
            "cone_measure: spherical caps are supported for 3D ellipsoids");
      }
      return ellipsoid3_cap_q_mass(static_cast<const Ellipsoid&>(K),
                                   region.cap_axis, region.cap_angle, cfg);
    }
    case BoundaryRegion::Kind::facet: {
      if (K.kind() != BodyKind::polytope) {
        throw std::invalid_argument(
            "cone_measure: facet regions require a polytope");
      }
      const auto& P = static_cast<const Polytope&>(K);
      if (region.facet_id < 0 || region.facet_id >= int(P.facets().size())) {
        throw std::invalid_argument("cone_measure: facet id out of range");
      }
      const auto& f = P.facets()[region.facet_id];
      return f.plane.offset * f.area / (K.dim() * K.volume());
    }
  }
  throw std::invalid_argument("cone_measure: unsupported region encoding");
}

double mass_over_predicate(const ConvexBody& K, WhichMeasure which,
                           const std::function<bool(double, double)>& predicate,
                           const QuadratureConfig& cfg) {
  auto chosen = [which](double p, double q) {
    return which == WhichMeasure::P ? p : q;
  };
  switch (K.kind()) {
    case BodyKind::polytope: {
      // kappa = 0 a.e.: p vanishes, q is constant on every facet.
      const auto& P = static_cast<const Polytope&>(K);
      double total = 0.0;
      for (const auto& f : P.facets()) {
        const double q = f.plane.offset / (K.dim() * K.volume());
        if (predicate(0.0, q)) total += chosen(0.0, q) * f.area;
      }
      return total;
    }
    case BodyKind::rounded_polygon: {
      const auto& R = static_cast<const RoundedPolygon&>(K);
      const Quadrature1D gl = gauss_legendre(64);
      std::vector<double> terms;
      for (const auto& arc : R.arcs()) {
        const double mid = 0.5 * (arc.theta_lo + arc.theta_hi);
        const double rad = 0.5 * (arc.theta_hi - arc.theta_lo);
        for (size_t i = 0; i < gl.nodes.size(); ++i) {
          const BoundaryPoint bp = R.arc_point(arc, mid + rad * gl.nodes[i]);
          const double p = density_p(K, bp), q = density_q(K, bp);
          if (predicate(p, q)) {
            terms.push_back(gl.weights[i] * rad * R.radius() * chosen(p, q));
          }
        }
      }
      for (const auto& seg : R.segments()) {
        const double q = seg.support / (K.dim() * K.volume());
        if (predicate(0.0, q)) terms.push_back(chosen(0.0, q) * seg.length);
      }
      return pairwise_sum(terms);
    }
    default: {
      const SphereRule rule = K.dim() == 2 ? circle_rule(cfg.circle_nodes)
                                           : sphere3_rule(cfg.sphere3_level);
      std::vector<double> terms(rule.nodes.size(), 0.0);
      for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const BoundaryPoint bp = K.boundary_point_from_normal(rule.nodes[j]);
        const double p = density_p(K, bp), q = density_q(K, bp);
        if (predicate(p, q)) {
          terms[j] = rule.weights[j] * chosen(p, q) * bp.curvature_function;
        }
      }
      return pairwise_sum(terms);
    }
  }
}

}  // namespace conediv
