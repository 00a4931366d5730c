#include "conediv/divergence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace conediv {

std::string to_string(Direction d) { return d == Direction::PQ ? "pq" : "qp"; }

std::string to_string(Normalization n) {
  return n == Normalization::normalized ? "normalized" : "tilde";
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::exact_polytope: return "exact_polytope";
    case Branch::exact_ellipsoid: return "exact_ellipsoid";
    case Branch::quadrature: return "quadrature";
    case Branch::piecewise: return "piecewise";
  }
  return "?";
}

namespace {

// Integrand pieces shared by the quadrature branches. In PQ orientation the
// divergence is int g(ratio) * weight dmu with
//   normalized: ratio = |K| kappa / (|K°| <x,N>^{n+1}), weight = <x,N>/(n|K|)
//   tilde:      ratio = kappa / <x,N>^{n+1},            weight = <x,N>.
struct Integrand {
  double volume_ratio;  // |K|/|K°| in normalized mode, 1 in tilde mode
  double weight_scale;  // 1/(n|K|) in normalized mode, 1 in tilde mode

  double ratio(const BoundaryPoint& bp, int n) const {
    return volume_ratio * bp.curvature / std::pow(bp.support, n + 1);
  }
  double weight(const BoundaryPoint& bp) const {
    return weight_scale * bp.support;
  }
};

Integrand make_integrand(const ConvexBody& K, Normalization normalization) {
  if (normalization == Normalization::normalized) {
    return {K.volume() / K.polar_volume(), 1.0 / (K.dim() * K.volume())};
  }
  return {1.0, 1.0};
}

DivergenceResult exact_polytope(const Generator& f, const ConvexBody& K,
                                Normalization normalization) {
  DivergenceResult r;
  r.branch = Branch::exact_polytope;
  if (normalization == Normalization::normalized) {
    r.value = f.f_at_zero;
  } else {
    // int <x,N> dmu = n|K| by the divergence theorem
    r.value = f.f_at_zero.scaled_by_mass(K.dim() * K.volume());
  }
  return r;
}

DivergenceResult exact_ellipsoid(const Generator& f, const Ellipsoid& E,
                                 Normalization normalization) {
  DivergenceResult r;
  r.branch = Branch::exact_ellipsoid;
  if (normalization == Normalization::normalized) {
    r.value = f.eval(1.0);  // p/q is identically 1 on ellipsoids
  } else {
    // kappa/<x,N>^{n+1} is identically 1/det(M)
    r.value = ExtReal(f.eval(1.0 / E.shape_determinant()))
                  .scaled_by_mass(E.dim() * E.volume());
  }
  return r;
}

DivergenceResult quadrature_branch(const Generator& f, const ConvexBody& K,
                                   Normalization normalization,
                                   const QuadratureConfig& cfg) {
  const Integrand in = make_integrand(K, normalization);
  const int n = K.dim();
  auto phi = [&](const BoundaryPoint& bp) {
    return f.eval(in.ratio(bp, n)) * in.weight(bp);
  };
  const SphereRule rule =
      n == 2 ? circle_rule(cfg.circle_nodes) : sphere3_rule(cfg.sphere3_level);
  const IntegralResult integral = integrate_boundary(K, phi, rule);
  DivergenceResult r;
  r.branch = Branch::quadrature;
  r.value = integral.value;
  r.error_estimate = integral.error_estimate;
  return r;
}

DivergenceResult piecewise_rounded(const Generator& f, const RoundedPolygon& K,
                                   Normalization normalization) {
  const Integrand in = make_integrand(K, normalization);
  const int n = K.dim();
  auto run = [&](int order) {
    const Quadrature1D gl = gauss_legendre(order);
    std::vector<double> terms;
    for (const auto& arc : K.arcs()) {
      const double mid = 0.5 * (arc.theta_lo + arc.theta_hi);
      const double rad = 0.5 * (arc.theta_hi - arc.theta_lo);
      for (size_t i = 0; i < gl.nodes.size(); ++i) {
        const BoundaryPoint bp = K.arc_point(arc, mid + rad * gl.nodes[i]);
        terms.push_back(gl.weights[i] * rad * K.radius() *
                        f.eval(in.ratio(bp, n)) * in.weight(bp));
      }
    }
    return pairwise_sum(terms);
  };
  const double arcs_coarse = run(32);
  const double arcs_fine = run(64);
  // Segments have kappa = 0: they contribute the stored endpoint limit f(0)
  // times their weight mass, never an evaluation of f at tiny arguments.
  double segment_mass = 0.0;
  for (const auto& seg : K.segments()) {
    segment_mass += in.weight_scale * seg.support * seg.length;
  }
  DivergenceResult r;
  r.branch = Branch::piecewise;
  r.value = ExtReal(arcs_fine) + f.f_at_zero.scaled_by_mass(segment_mass);
  r.error_estimate = std::fabs(arcs_fine - arcs_coarse);
  return r;
}

}  // namespace

DivergenceResult f_divergence(const Generator& f, const ConvexBody& K,
                              Direction direction, Normalization normalization,
                              const QuadratureConfig& cfg) {
  if (direction == Direction::QP) {
    // D_f(Q,P) = D_{f*}(P,Q); one code path serves both directions.
    DivergenceResult r =
        f_divergence(adjoint(f), K, Direction::PQ, normalization, cfg);
    r.direction = Direction::QP;
    return r;
  }
  DivergenceResult r;
  switch (K.kind()) {
    case BodyKind::polytope:
      r = exact_polytope(f, K, normalization);
      break;
    case BodyKind::ellipsoid:
      if (cfg.force_quadrature) {
        r = quadrature_branch(f, K, normalization, cfg);
      } else {
        r = exact_ellipsoid(f, static_cast<const Ellipsoid&>(K), normalization);
      }
      break;
    case BodyKind::rounded_polygon:
      r = piecewise_rounded(f, static_cast<const RoundedPolygon&>(K),
                            normalization);
      break;
    case BodyKind::smooth2d:
      r = quadrature_branch(f, K, normalization, cfg);
      break;
    default:
      throw std::invalid_argument("f_divergence: unsupported body kind " +
                                  to_string(K.kind()));
  }
  r.direction = Direction::PQ;
  r.normalization = normalization;
  return r;
}

DivergenceResult lpsi_asa(const Generator& psi, const ConvexBody& K,
                          const QuadratureConfig& cfg) {
  return f_divergence(psi, K, Direction::PQ, Normalization::tilde, cfg);
}

DivergenceResult lp_asa(double p, const ConvexBody& K,
                        const QuadratureConfig& cfg) {
  const int n = K.dim();
  if (p == -double(n)) {
    throw std::invalid_argument("lp_asa: p = -n is excluded");
  }
  const double alpha = p / (n + p);
  // The generator t^alpha is convex for p <= 0 and concave for p > 0; the
  // integral is the same expression either way, so build it directly.
  Generator g;
  {
    std::ostringstream os;
    os << "power:" << alpha;
    g.label = os.str();
  }
  g.eval = [alpha](double t) { return std::pow(t, alpha); };
  g.f_at_zero = alpha > 0.0   ? ExtReal(0.0)
                : alpha < 0.0 ? ExtReal::infinity()
                              : ExtReal(1.0);
  const double beta = 1.0 - alpha;
  g.fstar_at_zero = beta > 0.0   ? ExtReal(0.0)
                    : beta < 0.0 ? ExtReal::infinity()
                                 : ExtReal(1.0);
  g.is_decreasing = alpha <= 0.0;
  DivergenceResult r =
      f_divergence(g, K, Direction::PQ, Normalization::tilde, cfg);
  r.concave_family = p > 0.0;
  return r;
}

DivergenceResult kl_divergence(const ConvexBody& K, Direction direction,
                               const QuadratureConfig& cfg) {
  return f_divergence(generators::kl(), K, direction,
                      Normalization::normalized, cfg);
}

double hellinger(const ConvexBody& K, double alpha,
                 const QuadratureConfig& cfg) {
  // H_alpha = int p^alpha q^{1-alpha} dmu = D_f(P,Q) for f(t) = t^alpha.
  // alpha in (0,1) gives a concave f; the integral needs no convexity.
  Generator g;
  {
    std::ostringstream os;
    os << "hellinger:" << alpha;
    g.label = os.str();
  }
  g.eval = [alpha](double t) { return std::pow(t, alpha); };
  g.f_at_zero = alpha > 0.0   ? ExtReal(0.0)
                : alpha < 0.0 ? ExtReal::infinity()
                              : ExtReal(1.0);
  const double beta = 1.0 - alpha;
  g.fstar_at_zero = beta > 0.0   ? ExtReal(0.0)
                    : beta < 0.0 ? ExtReal::infinity()
                                 : ExtReal(1.0);
  g.is_decreasing = alpha <= 0.0;
  return f_divergence(g, K, Direction::PQ, Normalization::normalized, cfg)
      .value.value();
}

ExtReal renyi(const ConvexBody& K, double alpha, const QuadratureConfig& cfg) {
  if (alpha == 1.0) {
    return kl_divergence(K, Direction::PQ, cfg).value;
  }
  const double h = hellinger(K, alpha, cfg);
  if (h == 0.0 || std::isinf(h)) {
    // Degenerate mass (mutually singular measures): flag as +inf.
    return ExtReal::infinity();
  }
  return std::log(h) / (alpha - 1.0);
}

ExtReal mixed_divergence(std::span<const ConvexBody* const> bodies,
                         std::span<const Generator> generators,
                         Direction direction, const QuadratureConfig& cfg) {
  if (bodies.empty()) {
    throw std::invalid_argument("mixed_divergence: no bodies");
  }
  const int n = bodies.front()->dim();
  if (int(bodies.size()) != n || int(generators.size()) != n) {
    throw std::invalid_argument(
        "mixed_divergence: needs exactly n bodies and n generators in R^n");
  }
  for (const ConvexBody* K : bodies) {
    if (K->dim() != n) {
      throw std::invalid_argument("mixed_divergence: mixed dimensions");
    }
    if (K->kind() != BodyKind::ellipsoid && K->kind() != BodyKind::smooth2d) {
      throw std::invalid_argument(
          "mixed_divergence: bodies must carry a pointwise curvature function "
          "(ellipsoid or smooth planar)");
    }
  }
  const SphereRule rule =
      n == 2 ? circle_rule(cfg.circle_nodes) : sphere3_rule(cfg.sphere3_level);
  std::vector<double> terms(rule.nodes.size());
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const Eigen::VectorXd& u = rule.nodes[j];
    double product = 1.0;
    for (int i = 0; i < n; ++i) {
      const ConvexBody& K = *bodies[i];
      const double h = K.support(u);
      const double fk = K.curvature_function(u);
      const double p = 1.0 / (n * K.polar_volume() * std::pow(h, n));
      const double q = fk * h / (n * K.volume());
      const double factor = direction == Direction::PQ
                                ? generators[i].eval(p / q) * q
                                : generators[i].eval(q / p) * p;
      if (factor < 0.0) {
        throw std::domain_error(
            "mixed_divergence: negative factor under the 1/n-th root "
            "(generators must be nonnegative on the evaluated range)");
      }
      product *= factor;
    }
    terms[j] = rule.weights[j] * std::pow(product, 1.0 / n);
  }
  return pairwise_sum(terms);
}

}  // namespace conediv
