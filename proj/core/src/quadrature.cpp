#include "conediv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conediv/body.hpp"

namespace conediv {

namespace {
constexpr double kPi = std::numbers::pi;
}

SphereRule circle_rule(int m) {
  if (m < 8) throw std::invalid_argument("circle_rule: need at least 8 nodes");
  SphereRule rule;
  rule.dim = 2;
  rule.nodes.reserve(m);
  rule.weights.assign(m, 2.0 * kPi / m);
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * kPi * j / m;
    Eigen::VectorXd u(2);
    u << std::cos(theta), std::sin(theta);
    rule.nodes.push_back(std::move(u));
  }
  rule.order_tag = "trapezoid:" + std::to_string(m);
  return rule;
}

Quadrature1D gauss_legendre(int count) {
  if (count < 1) throw std::invalid_argument("gauss_legendre: count < 1");
  Quadrature1D q;
  q.nodes.resize(count);
  q.weights.resize(count);
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < count; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = count * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[count - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[i] = w;
    q.weights[count - 1 - i] = w;
  }
  return q;
}

SphereRule sphere3_rule(int level) {
  if (level < 4) throw std::invalid_argument("sphere3_rule: level < 4");
  const Quadrature1D polar = gauss_legendre(level);
  const int azimuth = 2 * level;
  SphereRule rule;
  rule.dim = 3;
  rule.nodes.reserve(level * azimuth);
  rule.weights.reserve(level * azimuth);
  for (int i = 0; i < level; ++i) {
    const double c = polar.nodes[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double w = polar.weights[i] * (2.0 * kPi / azimuth);
    for (int j = 0; j < azimuth; ++j) {
      const double lambda = 2.0 * kPi * j / azimuth;
      Eigen::VectorXd u(3);
      u << r * std::cos(lambda), r * std::sin(lambda), c;
      rule.nodes.push_back(std::move(u));
      rule.weights.push_back(w);
    }
  }
  rule.order_tag = "gauss_trapezoid:" + std::to_string(level);
  return rule;
}

double pairwise_sum(std::span<const double> values) {
  const size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) +
         pairwise_sum(values.subspan(half));
}

namespace {

double apply_sphere_rule(const ConvexBody& K, const SphereRule& rule,
                         const std::function<double(const BoundaryPoint&)>& phi) {
  std::vector<double> terms(rule.nodes.size());
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const BoundaryPoint bp = K.boundary_point_from_normal(rule.nodes[j]);
    terms[j] = rule.weights[j] * phi(bp) * bp.curvature_function;
  }
  return pairwise_sum(terms);
}

SphereRule halved(const SphereRule& rule, int dim) {
  if (dim == 2) {
    const int m = int(rule.nodes.size());
    return circle_rule(std::max(8, m / 2));
  }
  int level = int(std::lround(std::sqrt(rule.nodes.size() / 2.0)));
  return sphere3_rule(std::max(4, level / 2));
}

// Piecewise path for rounded polygons: Gauss-Legendre per arc (never across a
// curvature discontinuity) plus exact segment terms.
IntegralResult integrate_rounded(
    const RoundedPolygon& K,
    const std::function<double(const BoundaryPoint&)>& phi) {
  auto run = [&K, &phi](int order) {
    const Quadrature1D gl = gauss_legendre(order);
    std::vector<double> terms;
    for (const auto& arc : K.arcs()) {
      const double mid = 0.5 * (arc.theta_lo + arc.theta_hi);
      const double rad = 0.5 * (arc.theta_hi - arc.theta_lo);
      for (size_t i = 0; i < gl.nodes.size(); ++i) {
        const double theta = mid + rad * gl.nodes[i];
        const BoundaryPoint bp = K.arc_point(arc, theta);
        // dmu = radius * dtheta along an arc
        terms.push_back(gl.weights[i] * rad * K.radius() * phi(bp));
      }
    }
    for (const auto& seg : K.segments()) {
      const Quadrature1D sgl = gauss_legendre(order);
      for (size_t i = 0; i < sgl.nodes.size(); ++i) {
        const double t = 0.5 * (1.0 + sgl.nodes[i]);
        BoundaryPoint bp;
        bp.x = seg.a + t * (seg.b - seg.a);
        bp.normal = seg.normal;
        bp.support = seg.support;
        bp.curvature = 0.0;
        bp.curvature_function = std::numeric_limits<double>::infinity();
        terms.push_back(sgl.weights[i] * 0.5 * seg.length * phi(bp));
      }
    }
    return pairwise_sum(terms);
  };
  const double coarse = run(32);
  const double fine = run(64);
  IntegralResult r;
  r.value = fine;
  r.error_estimate = std::fabs(fine - coarse) + 4e-16 * std::fabs(fine);
  return r;
}

}  // namespace

IntegralResult integrate_boundary(
    const ConvexBody& K, const std::function<double(const BoundaryPoint&)>& phi,
    const SphereRule& rule) {
  if (K.kind() == BodyKind::polytope) {
    throw std::invalid_argument(
        "integrate_boundary: polytopes have no pointwise curvature function; "
        "use the exact facet branches");
  }
  if (K.kind() == BodyKind::rounded_polygon) {
    return integrate_rounded(static_cast<const RoundedPolygon&>(K), phi);
  }
  if (rule.dim != K.dim()) {
    throw std::invalid_argument("integrate_boundary: rule dimension mismatch");
  }
  const double fine = apply_sphere_rule(K, rule, phi);
  const double coarse = apply_sphere_rule(K, halved(rule, K.dim()), phi);
  IntegralResult r;
  r.value = fine;
  r.error_estimate = std::fabs(fine - coarse) + 4e-16 * std::fabs(fine);
  return r;
}

LimitFit extrapolate_limit(std::span<const std::pair<double, double>> samples,
                           double kappa, bool quadratic_term) {
  const int n = int(samples.size());
  if (n < 3) throw std::invalid_argument("extrapolate_limit: need >= 3 samples");
  for (int i = 0; i + 1 < n; ++i) {
    if (!(samples[i + 1].first < samples[i].first)) {
      throw std::invalid_argument(
          "extrapolate_limit: s must be strictly decreasing");
    }
  }
  const int cols = quadratic_term ? 3 : 2;
  if (n < cols) throw std::invalid_argument("extrapolate_limit: underdetermined");
  Eigen::MatrixXd A(n, cols);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double s = samples[i].first;
    A(i, 0) = 1.0;
    A(i, 1) = std::pow(s, kappa);
    if (cols == 3) A(i, 2) = std::pow(s, 2.0 * kappa);
    b(i) = samples[i].second;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < cols) {
    throw std::invalid_argument("extrapolate_limit: degenerate sample geometry");
  }
  const Eigen::VectorXd coef = qr.solve(b);
  const Eigen::VectorXd resid = b - A * coef;
  const int dof = std::max(1, n - cols);
  const double rms = std::sqrt(resid.squaredNorm() / dof);
  const Eigen::MatrixXd cov = (A.transpose() * A).inverse();
  LimitFit fit;
  fit.limit = coef(0);
  fit.uncertainty = rms * std::sqrt(std::max(0.0, cov(0, 0)));
  fit.residual_rms = rms;
  return fit;
}

}  // namespace conediv
