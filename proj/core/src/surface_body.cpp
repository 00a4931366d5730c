#include "conediv/surface_body.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conediv/quadrature.hpp"

namespace conediv {

namespace {

constexpr double kPi = std::numbers::pi;

// Planar adapter: closed-form boundary data by normal angle for the two
// supported kinds, no dynamic allocation on the hot path.
class Planar {
 public:
  explicit Planar(const ConvexBody& K) : body_(&K) {
    if (K.dim() != 2) {
      throw std::invalid_argument("surface bodies are planar (n = 2) only");
    }
    switch (K.kind()) {
      case BodyKind::ellipsoid: {
        const auto& E = static_cast<const Ellipsoid&>(K);
        M_ = E.shape_matrix();
        det_ = E.shape_determinant();
        smooth_ = nullptr;
        break;
      }
      case BodyKind::smooth2d:
        smooth_ = &static_cast<const SmoothBody2D&>(K);
        break;
      default:
        throw std::invalid_argument(
            "surface bodies require a smooth planar body (smooth2d or 2D "
            "ellipsoid)");
    }
  }

  const ConvexBody& body() const { return *body_; }

  double support_at(double theta) const {
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    if (smooth_) return smooth_->h(theta);
    return std::sqrt(u.dot(M_ * u));
  }

  PlanarPoint at(double theta) const {
    PlanarPoint p;
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    p.normal = u;
    if (smooth_) {
      const double h = smooth_->h(theta), dh = smooth_->dh(theta);
      p.x = Eigen::Vector2d(h * u.x() - dh * u.y(), h * u.y() + dh * u.x());
      p.support = h;
      p.curvature_function = h + smooth_->ddh(theta);
    } else {
      const Eigen::Vector2d mu = M_ * u;
      const double h = std::sqrt(u.dot(mu));
      p.x = mu / h;
      p.support = h;
      p.curvature_function = det_ / (h * h * h);
    }
    p.curvature = 1.0 / p.curvature_function;
    return p;
  }

  // <x(theta), dir> without assembling the full boundary point.
  double height(double theta, const Eigen::Vector2d& dir) const {
    if (smooth_) {
      const double h = smooth_->h(theta), dh = smooth_->dh(theta);
      const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
      const Eigen::Vector2d up(-u.y(), u.x());
      return (h * u + dh * up).dot(dir);
    }
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    const Eigen::Vector2d mu = M_ * u;
    return mu.dot(dir) / std::sqrt(u.dot(mu));
  }

 private:
  const ConvexBody* body_;
  const SmoothBody2D* smooth_ = nullptr;
  Eigen::Matrix2d M_;
  double det_ = 0.0;
};

// Root of height(theta) = t on [lo, hi] where the height changes sign once.
double chord_angle(const Planar& P, const Eigen::Vector2d& dir, double t,
                   double lo, double hi) {
  double flo = P.height(lo, dir) - t;
  for (int iter = 0; iter < 56; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = P.height(mid, dir) - t;
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Weighted boundary mass of the cap {<x, u_j> >= t}.
double cap_mass(const Planar& P, const PlanarWeight& g, double theta_j,
                const Eigen::Vector2d& dir, double t, const Quadrature1D& gl) {
  const double theta_a = chord_angle(P, dir, t, theta_j - kPi, theta_j);
  const double theta_b = chord_angle(P, dir, t, theta_j + kPi, theta_j);
  const double lo = theta_a, hi = theta_b < theta_a ? theta_b + 2 * kPi : theta_b;
  const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
  double mass = 0.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    const double theta = mid + rad * gl.nodes[i];
    const PlanarPoint bp = P.at(theta);
    mass += gl.weights[i] * rad * g(bp) * bp.curvature_function;
  }
  return mass;
}

double total_mass(const Planar& P, const PlanarWeight& g) {
  const int m = 4096;
  std::vector<double> terms(m);
  for (int i = 0; i < m; ++i) {
    const PlanarPoint bp = P.at(2.0 * kPi * i / m);
    terms[i] = g(bp) * bp.curvature_function;
  }
  return (2.0 * kPi / m) * pairwise_sum(terms);
}

std::vector<Eigen::Vector2d> clip_halfplane(std::vector<Eigen::Vector2d> poly,
                                            const Eigen::Vector2d& normal,
                                            double offset) {
  std::vector<Eigen::Vector2d> out;
  const size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % n];
    const double da = a.dot(normal) - offset;
    const double db = b.dot(normal) - offset;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      out.push_back(a + (da / (da - db)) * (b - a));
    }
  }
  return out;
}

}  // namespace

double SurfaceBodyPolygon::area() const {
  if (vertices.size() < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Eigen::Vector2d& a = vertices[i];
    const Eigen::Vector2d& b = vertices[(i + 1) % vertices.size()];
    twice += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * twice;
}

SurfaceBodyPolygon surface_body(const ConvexBody& K, const PlanarWeight& g,
                                double s, int grid_m) {
  if (s < 0.0) throw std::invalid_argument("surface_body: s must be >= 0");
  if (grid_m < 256) throw std::invalid_argument("surface_body: grid m < 256");
  const Planar P(K);

  SurfaceBodyPolygon result;
  result.thetas.resize(grid_m);
  result.offsets.resize(grid_m);

  if (s > 0.0 && s >= total_mass(P, g)) {
    // Every halfspace qualifies once s reaches the total boundary mass.
    result.empty_flagged = true;
    for (int j = 0; j < grid_m; ++j) {
      result.thetas[j] = 2.0 * kPi * j / grid_m;
    }
    return result;
  }

  const Quadrature1D gl = gauss_legendre(48);
  double hmax = 0.0;
  for (int j = 0; j < grid_m; ++j) {
    const double theta_j = 2.0 * kPi * j / grid_m;
    result.thetas[j] = theta_j;
    const Eigen::Vector2d dir(std::cos(theta_j), std::sin(theta_j));
    const double hi0 = P.support_at(theta_j);
    hmax = std::max(hmax, hi0);
    if (s == 0.0) {
      result.offsets[j] = hi0;
      continue;
    }
    double lo = -P.support_at(theta_j + kPi), hi = hi0;
    double t = hi;
    for (int iter = 0; iter < 64; ++iter) {
      t = 0.5 * (lo + hi);
      const double mass = cap_mass(P, g, theta_j, dir, t, gl);
      if (std::fabs(mass - s) <= 1e-12) break;
      if (mass > s) {
        lo = t;  // cutting too much; raise the plane
      } else {
        hi = t;
      }
    }
    result.offsets[j] = t;
  }

  std::vector<Eigen::Vector2d> poly = {{-2 * hmax, -2 * hmax},
                                       {2 * hmax, -2 * hmax},
                                       {2 * hmax, 2 * hmax},
                                       {-2 * hmax, 2 * hmax}};
  for (int j = 0; j < grid_m && !poly.empty(); ++j) {
    const Eigen::Vector2d dir(std::cos(result.thetas[j]),
                              std::sin(result.thetas[j]));
    poly = clip_halfplane(std::move(poly), dir, result.offsets[j]);
  }
  if (poly.size() < 3) {
    result.empty_flagged = true;
    return result;
  }
  result.vertices = std::move(poly);
  return result;
}

double volume_deficit(const ConvexBody& K, const PlanarWeight& g, double s,
                      int grid_m) {
  const double reference = surface_body(K, g, 0.0, grid_m).area();
  return reference - surface_body(K, g, s, grid_m).area();
}

LimitEstimate limit_estimate(const ConvexBody& K, const PlanarWeight& g,
                             const LadderConfig& ladder) {
  const double c2 = 2.0 * std::pow(unit_ball_volume(1), 2.0);  // = 8
  const double reference = surface_body(K, g, 0.0, ladder.grid_m).area();

  LimitEstimate est;
  std::vector<std::pair<double, double>> ratios;
  for (int k = 0; k <= ladder.halvings; ++k) {
    const double s = ladder.s0 * std::pow(2.0, -k);
    const SurfaceBodyPolygon body = surface_body(K, g, s, ladder.grid_m);
    if (body.empty_flagged) {
      throw std::invalid_argument(
          "limit_estimate: ladder start exceeds the weighted boundary mass");
    }
    const double deficit = reference - body.area();
    est.ladder.emplace_back(s, deficit);
    ratios.emplace_back(s, deficit / (s * s));
  }
  const LimitFit fit = extrapolate_limit(ratios, 1.0, /*quadratic_term=*/true);
  est.value = c2 * fit.limit;
  est.uncertainty = c2 * fit.uncertainty;
  est.residual_rms = fit.residual_rms;
  est.converged = est.uncertainty <= 0.05 * std::fabs(est.value);
  return est;
}

PlanarWeight weight_for_divergence(const ConvexBody& K, const Generator& f,
                                   Direction direction) {
  const Planar probe(K);  // validates the body kind
  const Generator gen = direction == Direction::PQ ? f : adjoint(f);
  const int n = K.dim();
  const double vol = K.volume(), pvol = K.polar_volume();
  const double front = n * pvol * std::pow(double(n), n) * std::pow(vol, n);

  auto weight = [gen, n, vol, pvol, front](const PlanarPoint& bp) {
    const double p =
        bp.curvature / (std::pow(bp.support, n) * n * pvol);
    const double q = bp.support / (n * vol);
    const double fv = gen.eval(p / q);
    return std::sqrt(front * p * q / std::pow(fv, n - 1));
  };

  for (int i = 0; i < 512; ++i) {
    const PlanarPoint bp = probe.at(2.0 * kPi * i / 512);
    const double p = bp.curvature / (std::pow(bp.support, n) * n * pvol);
    const double q = bp.support / (n * vol);
    if (!(gen.eval(p / q) > 0.0)) {
      throw std::domain_error(
          "weight_for_divergence: f(p/q) must be strictly positive on the "
          "boundary (the weight takes a square root of it)");
    }
  }
  return weight;
}

LimitEstimate divergence_via_limit(const ConvexBody& K, const Generator& f,
                                   Direction direction,
                                   const LadderConfig& ladder) {
  return limit_estimate(K, weight_for_divergence(K, f, direction), ladder);
}

}  // namespace conediv
