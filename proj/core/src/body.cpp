#include "conediv/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "conediv/quadrature.hpp"

namespace conediv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGeomTol = 1e-9;

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Monotone-chain convex hull, counterclockwise, no collinear interior points.
std::vector<Eigen::Vector2d> convex_hull_2d(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return (a - b).norm() < kGeomTol;
                        }),
            pts.end());
  const int n = int(pts.size());
  if (n < 3) return pts;
  std::vector<Eigen::Vector2d> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 &&
           cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= kGeomTol)
      --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower &&
           cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= kGeomTol)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(const std::vector<Eigen::Vector2d>& poly) {
  double twice = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    twice += cross2(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * twice;
}

Eigen::Vector2d to2(const Eigen::VectorXd& v) {
  return Eigen::Vector2d(v(0), v(1));
}

[[noreturn]] void invariant_error(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

std::string to_string(BodyKind k) {
  switch (k) {
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::polytope: return "polytope";
    case BodyKind::smooth2d: return "smooth2d";
    case BodyKind::smooth3d: return "smooth3d";
    case BodyKind::rounded_polygon: return "rounded_polygon";
  }
  return "?";
}

double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

void ConvexBody::check_direction(const Eigen::VectorXd& u) const {
  if (u.size() != dim_) {
    invariant_error("direction has wrong dimension");
  }
  if (std::fabs(u.norm() - 1.0) > kGeomTol) {
    invariant_error("direction must be a unit vector (tolerance 1e-9)");
  }
}

double ConvexBody::support(const Eigen::VectorXd& u) const {
  check_direction(u);
  return support_impl(u);
}

BoundaryPoint ConvexBody::boundary_point_from_normal(
    const Eigen::VectorXd& u) const {
  check_direction(u);
  return boundary_point_impl(u);
}

double ConvexBody::curvature_function(const Eigen::VectorXd& u) const {
  check_direction(u);
  return curvature_function_impl(u);
}

std::shared_ptr<const ConvexBody> ConvexBody::linear_image(
    const Eigen::MatrixXd& T) const {
  if (T.rows() != dim_ || T.cols() != dim_) {
    invariant_error("linear_image: matrix has wrong dimension");
  }
  if (std::fabs(T.determinant()) < 1e-12) {
    invariant_error("linear_image: singular map");
  }
  return linear_image_impl(T);
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(Eigen::MatrixXd shape)
    : ConvexBody(int(shape.rows()), BodyKind::ellipsoid),
      shape_(std::move(shape)) {
  if (shape_.rows() != shape_.cols() || shape_.rows() < 2) {
    invariant_error("ellipsoid shape matrix must be square, n >= 2");
  }
  if ((shape_ - shape_.transpose()).norm() > 1e-12 * (1.0 + shape_.norm())) {
    invariant_error("ellipsoid shape matrix must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape_);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    invariant_error("ellipsoid shape matrix must be positive definite");
  }
  det_ = es.eigenvalues().prod();
  volume_ = unit_ball_volume(dim_) * std::sqrt(det_);
  polar_volume_ = unit_ball_volume(dim_) / std::sqrt(det_);
}

Ellipsoid Ellipsoid::unit_ball(int n) {
  return Ellipsoid(Eigen::MatrixXd::Identity(n, n));
}

Ellipsoid Ellipsoid::from_semi_axes(const std::vector<double>& semi_axes) {
  const int n = int(semi_axes.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = semi_axes[i] * semi_axes[i];
  return Ellipsoid(std::move(m));
}

double Ellipsoid::support_impl(const Eigen::VectorXd& u) const {
  return std::sqrt(u.dot(shape_ * u));
}

BoundaryPoint Ellipsoid::boundary_point_impl(const Eigen::VectorXd& u) const {
  BoundaryPoint bp;
  const Eigen::VectorXd mu = shape_ * u;
  const double h = std::sqrt(u.dot(mu));
  bp.x = mu / h;
  bp.normal = u;
  bp.support = h;
  bp.curvature_function = det_ / std::pow(h, dim_ + 1);
  bp.curvature = 1.0 / bp.curvature_function;
  return bp;
}

double Ellipsoid::curvature_function_impl(const Eigen::VectorXd& u) const {
  return det_ / std::pow(support_impl(u), dim_ + 1);
}

std::shared_ptr<const ConvexBody> Ellipsoid::linear_image_impl(
    const Eigen::MatrixXd& T) const {
  return std::make_shared<Ellipsoid>(T * shape_ * T.transpose());
}

// ---------------------------------------------------------------------------
// Polytope

namespace {

std::vector<Halfspace> normalized_halfspaces(std::vector<Halfspace> hs) {
  for (auto& h : hs) {
    const double norm = h.normal.norm();
    if (norm < kGeomTol) invariant_error("halfspace normal is zero");
    h.normal /= norm;
    h.offset /= norm;
  }
  return hs;
}

void dedupe_points(std::vector<Eigen::VectorXd>& pts) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& q : out) {
      if ((p - q).norm() < 10 * kGeomTol) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  pts = std::move(out);
}

bool feasible(const Eigen::VectorXd& x, const std::vector<Halfspace>& hs) {
  for (const auto& h : hs) {
    if (x.dot(h.normal) > h.offset + kGeomTol) return false;
  }
  return true;
}

std::vector<Eigen::VectorXd> enumerate_vertices(
    const std::vector<Halfspace>& hs, int n) {
  std::vector<Eigen::VectorXd> verts;
  const int m = int(hs.size());
  if (n == 2) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        Eigen::Matrix2d A;
        A.row(0) = hs[i].normal.transpose();
        A.row(1) = hs[j].normal.transpose();
        if (std::fabs(A.determinant()) < 1e-12) continue;
        const Eigen::Vector2d x =
            A.inverse() * Eigen::Vector2d(hs[i].offset, hs[j].offset);
        Eigen::VectorXd v(2);
        v << x(0), x(1);
        if (feasible(v, hs)) verts.push_back(v);
      }
    }
  } else if (n == 3) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
          Eigen::Matrix3d A;
          A.row(0) = hs[i].normal.transpose();
          A.row(1) = hs[j].normal.transpose();
          A.row(2) = hs[k].normal.transpose();
          if (std::fabs(A.determinant()) < 1e-10) continue;
          const Eigen::Vector3d x =
              A.inverse() *
              Eigen::Vector3d(hs[i].offset, hs[j].offset, hs[k].offset);
          Eigen::VectorXd v(3);
          v << x(0), x(1), x(2);
          if (feasible(v, hs)) verts.push_back(v);
        }
      }
    }
  } else {
    invariant_error("vertex enumeration supports dimensions 2 and 3 only");
  }
  dedupe_points(verts);
  return verts;
}

std::vector<Halfspace> enumerate_halfspaces(
    const std::vector<Eigen::VectorXd>& verts, int n) {
  std::vector<Halfspace> hs;
  auto push_unique = [&hs](const Eigen::VectorXd& normal, double offset) {
    for (const auto& h : hs) {
      if ((h.normal - normal).norm() < 10 * kGeomTol &&
          std::fabs(h.offset - offset) < 10 * kGeomTol)
        return;
    }
    hs.push_back({normal, offset});
  };
  const int m = int(verts.size());
  if (n == 2) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(m);
    for (const auto& v : verts) pts.push_back(to2(v));
    const auto hull = convex_hull_2d(pts);
    if (int(hull.size()) != m) {
      invariant_error(
          "polytope vertex list contains a non-extreme or duplicate point");
    }
    for (size_t i = 0; i < hull.size(); ++i) {
      const Eigen::Vector2d a = hull[i], b = hull[(i + 1) % hull.size()];
      const Eigen::Vector2d dir = (b - a).normalized();
      Eigen::VectorXd normal(2);
      normal << dir.y(), -dir.x();
      push_unique(normal, normal.dot(a));
    }
  } else if (n == 3) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
          Eigen::Vector3d a(verts[i](0), verts[i](1), verts[i](2));
          Eigen::Vector3d b(verts[j](0), verts[j](1), verts[j](2));
          Eigen::Vector3d c(verts[k](0), verts[k](1), verts[k](2));
          Eigen::Vector3d nn = (b - a).cross(c - a);
          if (nn.norm() < 1e-10) continue;
          nn.normalize();
          double d = nn.dot(a);
          bool above = false, below = false;
          for (const auto& v : verts) {
            const double s = nn.dot(Eigen::Vector3d(v(0), v(1), v(2))) - d;
            if (s > kGeomTol) above = true;
            if (s < -kGeomTol) below = true;
          }
          if (above && below) continue;  // not a supporting plane
          if (above) {
            nn = -nn;
            d = -d;
          }
          Eigen::VectorXd normal(3);
          normal << nn(0), nn(1), nn(2);
          push_unique(normal, d);
        }
      }
    }
  } else {
    invariant_error("halfspace enumeration supports dimensions 2 and 3 only");
  }
  return hs;
}

}  // namespace

Polytope::Polytope(std::vector<Halfspace> halfspaces,
                   std::vector<Eigen::VectorXd> vertices)
    : ConvexBody(vertices.empty() ? (halfspaces.empty()
                                         ? 0
                                         : int(halfspaces[0].normal.size()))
                                  : int(vertices[0].size()),
                 BodyKind::polytope),
      halfspaces_(normalized_halfspaces(std::move(halfspaces))),
      vertices_(std::move(vertices)) {
  finalize();
}

Polytope Polytope::from_vertices(std::vector<Eigen::VectorXd> vertices) {
  if (vertices.empty()) invariant_error("polytope needs vertices");
  const int n = int(vertices[0].size());
  dedupe_points(vertices);
  auto hs = enumerate_halfspaces(vertices, n);
  return Polytope(std::move(hs), std::move(vertices));
}

Polytope Polytope::from_halfspaces(std::vector<Halfspace> halfspaces) {
  if (halfspaces.empty()) invariant_error("polytope needs halfspaces");
  auto hs = normalized_halfspaces(std::move(halfspaces));
  const int n = int(hs[0].normal.size());
  auto verts = enumerate_vertices(hs, n);
  if (verts.empty()) {
    invariant_error(
        "polytope is unbounded or degenerate: no vertices found from the "
        "halfspace intersection");
  }
  return Polytope(std::move(hs), std::move(verts));
}

Polytope Polytope::regular_polygon(int k, double circumradius) {
  if (k < 3) invariant_error("regular polygon needs k >= 3");
  std::vector<Eigen::VectorXd> verts;
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * kPi * i / k;
    Eigen::VectorXd v(2);
    v << circumradius * std::cos(t), circumradius * std::sin(t);
    verts.push_back(std::move(v));
  }
  return from_vertices(std::move(verts));
}

Polytope Polytope::box(const Eigen::VectorXd& half_widths) {
  const int n = int(half_widths.size());
  std::vector<Halfspace> hs;
  std::vector<Eigen::VectorXd> verts;
  for (int i = 0; i < n; ++i) {
    if (half_widths(i) <= 0.0) invariant_error("box half widths must be > 0");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1.0;
    hs.push_back({e, half_widths(i)});
    hs.push_back({-e, half_widths(i)});
  }
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
      v(i) = (mask >> i) & 1 ? half_widths(i) : -half_widths(i);
    }
    verts.push_back(std::move(v));
  }
  return Polytope(std::move(hs), std::move(verts));
}

void Polytope::finalize() {
  if (dim_ < 2) invariant_error("polytope dimension must be >= 2");
  if (halfspaces_.empty() || vertices_.empty()) {
    invariant_error("polytope needs both representations (n > 3 requires "
                    "simultaneous H and V input)");
  }
  for (const auto& h : halfspaces_) {
    if (h.offset <= 0.0) {
      invariant_error(
          "polytope invariant violated: origin strictly interior requires "
          "every halfspace offset > 0");
    }
  }
  for (const auto& v : vertices_) {
    for (const auto& h : halfspaces_) {
      if (v.dot(h.normal) > h.offset + kGeomTol) {
        invariant_error(
            "polytope invariant violated: a vertex violates a halfspace "
            "beyond 1e-9");
      }
    }
  }
  // Facet assembly. Every halfspace must define a genuine facet.
  facets_.clear();
  for (const auto& h : halfspaces_) {
    Facet f;
    f.plane = h;
    for (int vi = 0; vi < int(vertices_.size()); ++vi) {
      if (std::fabs(vertices_[vi].dot(h.normal) - h.offset) < 10 * kGeomTol) {
        f.vertex_ids.push_back(vi);
      }
    }
    if (int(f.vertex_ids.size()) < dim_) {
      invariant_error(
          "polytope invariant violated: a halfspace supports fewer than n "
          "vertices (redundant or degenerate input)");
    }
    if (dim_ == 2) {
      double best = 0.0;
      for (int i : f.vertex_ids) {
        for (int j : f.vertex_ids) {
          best = std::max(best, (vertices_[i] - vertices_[j]).norm());
        }
      }
      f.area = best;
    } else if (dim_ == 3) {
      // order incident vertices around the facet centroid
      Eigen::Vector3d nn(h.normal(0), h.normal(1), h.normal(2));
      Eigen::Vector3d e1 = nn.unitOrthogonal();
      Eigen::Vector3d e2 = nn.cross(e1);
      Eigen::Vector2d centroid(0, 0);
      std::vector<Eigen::Vector2d> flat;
      for (int id : f.vertex_ids) {
        Eigen::Vector3d v(vertices_[id](0), vertices_[id](1), vertices_[id](2));
        flat.emplace_back(e1.dot(v), e2.dot(v));
        centroid += flat.back();
      }
      centroid /= double(flat.size());
      std::vector<int> order(flat.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
      std::sort(order.begin(), order.end(), [&](int a2, int b2) {
        const Eigen::Vector2d da = flat[a2] - centroid, db = flat[b2] - centroid;
        return std::atan2(da.y(), da.x()) < std::atan2(db.y(), db.x());
      });
      std::vector<int> sorted_ids;
      std::vector<Eigen::Vector2d> ring;
      for (int idx : order) {
        sorted_ids.push_back(f.vertex_ids[idx]);
        ring.push_back(flat[idx]);
      }
      f.vertex_ids = sorted_ids;
      f.area = std::fabs(polygon_area(ring));
    } else {
      invariant_error("polytope facet assembly supports n in {2,3}");
    }
    facets_.push_back(std::move(f));
  }
  // Volume as the sum of cones from the origin over the facets.
  double vol = 0.0;
  for (const auto& f : facets_) vol += f.plane.offset * f.area / dim_;
  volume_ = vol;
  if (!(volume_ > 0.0)) {
    invariant_error("polytope invariant violated: volume must be positive");
  }
  // Polar volume from the dual polytope (vertices become halfspaces).
  std::vector<Halfspace> dual_hs;
  for (const auto& v : vertices_) {
    const double norm = v.norm();
    dual_hs.push_back({v / norm, 1.0 / norm});
  }
  const auto dual_verts = enumerate_vertices(dual_hs, dim_);
  double pvol = 0.0;
  for (const auto& h : dual_hs) {
    std::vector<int> incident;
    for (int vi = 0; vi < int(dual_verts.size()); ++vi) {
      if (std::fabs(dual_verts[vi].dot(h.normal) - h.offset) < 10 * kGeomTol) {
        incident.push_back(vi);
      }
    }
    if (int(incident.size()) < dim_) continue;  // dual-redundant vertex
    double area = 0.0;
    if (dim_ == 2) {
      for (int i : incident) {
        for (int j : incident) {
          area = std::max(area, (dual_verts[i] - dual_verts[j]).norm());
        }
      }
    } else {
      Eigen::Vector3d nn(h.normal(0), h.normal(1), h.normal(2));
      Eigen::Vector3d e1 = nn.unitOrthogonal();
      Eigen::Vector3d e2 = nn.cross(e1);
      std::vector<Eigen::Vector2d> flat;
      Eigen::Vector2d centroid(0, 0);
      for (int id : incident) {
        Eigen::Vector3d v(dual_verts[id](0), dual_verts[id](1),
                          dual_verts[id](2));
        flat.emplace_back(e1.dot(v), e2.dot(v));
        centroid += flat.back();
      }
      centroid /= double(flat.size());
      std::sort(flat.begin(), flat.end(),
                [&centroid](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                  const Eigen::Vector2d da = a - centroid, db = b - centroid;
                  return std::atan2(da.y(), da.x()) < std::atan2(db.y(), db.x());
                });
      area = std::fabs(polygon_area(flat));
    }
    pvol += h.offset * area / dim_;
  }
  polar_volume_ = pvol;
  if (!(polar_volume_ > 0.0)) {
    invariant_error("polytope invariant violated: polar volume must be positive");
  }
}

double Polytope::support_impl(const Eigen::VectorXd& u) const {
  double best = -kInf;
  for (const auto& v : vertices_) best = std::max(best, v.dot(u));
  return best;
}

BoundaryPoint Polytope::boundary_point_impl(const Eigen::VectorXd&) const {
  throw std::invalid_argument(
      "boundary_point_from_normal: the normal map of a polytope is not "
      "invertible");
}

double Polytope::curvature_function_impl(const Eigen::VectorXd& u) const {
  for (const auto& h : halfspaces_) {
    if ((h.normal - u).norm() < kGeomTol) return kInf;
  }
  return 0.0;
}

std::shared_ptr<const ConvexBody> Polytope::linear_image_impl(
    const Eigen::MatrixXd& T) const {
  const Eigen::MatrixXd Tinv_t = T.inverse().transpose();
  std::vector<Halfspace> hs;
  hs.reserve(halfspaces_.size());
  for (const auto& h : halfspaces_) {
    const Eigen::VectorXd a = Tinv_t * h.normal;
    const double norm = a.norm();
    hs.push_back({a / norm, h.offset / norm});
  }
  std::vector<Eigen::VectorXd> verts;
  verts.reserve(vertices_.size());
  for (const auto& v : vertices_) verts.push_back(T * v);
  return std::make_shared<Polytope>(std::move(hs), std::move(verts));
}

// ---------------------------------------------------------------------------
// SmoothBody2D

SmoothBody2D SmoothBody2D::from_trig(std::vector<double> cos_coeffs,
                                     std::vector<double> sin_coeffs,
                                     int volume_nodes) {
  sin_coeffs.resize(std::max(cos_coeffs.size(), sin_coeffs.size()), 0.0);
  cos_coeffs.resize(sin_coeffs.size(), 0.0);
  auto h = [cos_coeffs, sin_coeffs](double t) {
    double s = 0.0;
    for (size_t k = 0; k < cos_coeffs.size(); ++k) {
      s += cos_coeffs[k] * std::cos(k * t) + sin_coeffs[k] * std::sin(k * t);
    }
    return s;
  };
  auto dh = [cos_coeffs, sin_coeffs](double t) {
    double s = 0.0;
    for (size_t k = 1; k < cos_coeffs.size(); ++k) {
      s += k * (-cos_coeffs[k] * std::sin(k * t) + sin_coeffs[k] * std::cos(k * t));
    }
    return s;
  };
  auto ddh = [cos_coeffs, sin_coeffs](double t) {
    double s = 0.0;
    for (size_t k = 1; k < cos_coeffs.size(); ++k) {
      s -= double(k * k) *
           (cos_coeffs[k] * std::cos(k * t) + sin_coeffs[k] * std::sin(k * t));
    }
    return s;
  };
  return SmoothBody2D(h, dh, ddh, volume_nodes);
}

SmoothBody2D::SmoothBody2D(AngleFn h, AngleFn dh, AngleFn ddh, int volume_nodes)
    : ConvexBody(2, BodyKind::smooth2d),
      h_(std::move(h)),
      dh_(std::move(dh)),
      ddh_(std::move(ddh)) {
  validate_and_cache(volume_nodes);
}

SmoothBody2D::SmoothBody2D(AngleFn h, double fd_step, int volume_nodes)
    : ConvexBody(2, BodyKind::smooth2d), h_(std::move(h)) {
  const AngleFn base = h_;
  const double d = fd_step;
  dh_ = [base, d](double t) { return (base(t + d) - base(t - d)) / (2.0 * d); };
  ddh_ = [base, d](double t) {
    return (base(t + d) - 2.0 * base(t) + base(t - d)) / (d * d);
  };
  validate_and_cache(volume_nodes);
}

void SmoothBody2D::validate_and_cache(int volume_nodes) {
  const int samples = 2048;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    if (!(h_(t) > 0.0)) {
      invariant_error(
          "smooth2d invariant violated: support must be positive (origin "
          "strictly interior)");
    }
    if (!(h_(t) + ddh_(t) > 0.0)) {
      invariant_error(
          "smooth2d invariant violated: h + h'' must be positive (strict "
          "convexity)");
    }
  }
  const int m = std::max(volume_nodes, 256);
  std::vector<double> vol_terms(m), polar_terms(m);
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * kPi * i / m;
    const double h = h_(t), f = h + ddh_(t);
    vol_terms[i] = h * f;
    polar_terms[i] = 1.0 / (h * h);
  }
  const double w = 2.0 * kPi / m;
  volume_ = 0.5 * w * pairwise_sum(vol_terms);
  polar_volume_ = 0.5 * w * pairwise_sum(polar_terms);
}

BoundaryPoint SmoothBody2D::boundary_point_at(double theta) const {
  const double h = h_(theta), dh = dh_(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  BoundaryPoint bp;
  bp.x = Eigen::Vector2d(h * c - dh * s, h * s + dh * c);
  bp.normal = Eigen::Vector2d(c, s);
  bp.support = h;
  bp.curvature_function = h + ddh_(theta);
  bp.curvature = 1.0 / bp.curvature_function;
  return bp;
}

double SmoothBody2D::support_impl(const Eigen::VectorXd& u) const {
  return h_(std::atan2(u(1), u(0)));
}

BoundaryPoint SmoothBody2D::boundary_point_impl(const Eigen::VectorXd& u) const {
  return boundary_point_at(std::atan2(u(1), u(0)));
}

double SmoothBody2D::curvature_function_impl(const Eigen::VectorXd& u) const {
  return curvature_function_at(std::atan2(u(1), u(0)));
}

std::shared_ptr<const ConvexBody> SmoothBody2D::linear_image_impl(
    const Eigen::MatrixXd& T) const {
  // h_{T(K)}(u) = |T^t u| h(T^t u / |T^t u|): the degree-1 homogeneous
  // extension of h evaluated at T^t u, with closed-form chain rule so the
  // image keeps spectral-grade smoothness.
  const Eigen::Matrix2d Tt = T.transpose();
  const AngleFn H = h_, dH = dh_, ddH = ddh_;
  struct Frame {
    double R, dR, ddR, alpha, dalpha, ddalpha;
  };
  auto frame = [Tt](double t) {
    const Eigen::Vector2d u(std::cos(t), std::sin(t));
    const Eigen::Vector2d up(-std::sin(t), std::cos(t));
    const Eigen::Vector2d v = Tt * u;
    const Eigen::Vector2d vp = Tt * up;  // v'' = -v
    const double R = v.norm();
    const double vv = v.dot(vp);
    const double crossv = v.x() * vp.y() - v.y() * vp.x();
    Frame f;
    f.R = R;
    f.dR = vv / R;
    f.ddR = (vp.squaredNorm() - R * R) / R - vv * vv / (R * R * R);
    f.alpha = std::atan2(v.y(), v.x());
    f.dalpha = crossv / (R * R);
    f.ddalpha = -2.0 * vv * crossv / (R * R * R * R);
    return f;
  };
  auto h = [frame, H](double t) {
    const Frame f = frame(t);
    return f.R * H(f.alpha);
  };
  auto dh = [frame, H, dH](double t) {
    const Frame f = frame(t);
    return f.dR * H(f.alpha) + f.R * dH(f.alpha) * f.dalpha;
  };
  auto ddh = [frame, H, dH, ddH](double t) {
    const Frame f = frame(t);
    return f.ddR * H(f.alpha) + 2.0 * f.dR * dH(f.alpha) * f.dalpha +
           f.R * (ddH(f.alpha) * f.dalpha * f.dalpha + dH(f.alpha) * f.ddalpha);
  };
  return std::make_shared<SmoothBody2D>(h, dh, ddh);
}

// ---------------------------------------------------------------------------
// RoundedPolygon

RoundedPolygon::RoundedPolygon(std::vector<Eigen::Vector2d> base_polygon,
                               double radius)
    : ConvexBody(2, BodyKind::rounded_polygon), radius_(radius) {
  if (radius_ <= 0.0) {
    invariant_error("rounded polygon invariant violated: radius must be > 0");
  }
  base_ = convex_hull_2d(std::move(base_polygon));
  if (base_.size() < 3) {
    invariant_error("rounded polygon needs a non-degenerate base polygon");
  }
  const int m = int(base_.size());
  std::vector<double> edge_angle(m);
  double perimeter = 0.0;
  for (int i = 0; i < m; ++i) {
    const Eigen::Vector2d a = base_[i], b = base_[(i + 1) % m];
    const Eigen::Vector2d dir = (b - a).normalized();
    const Eigen::Vector2d normal(dir.y(), -dir.x());
    const double offset = normal.dot(a);
    if (offset <= 0.0) {
      invariant_error(
          "rounded polygon invariant violated: origin must be interior to "
          "the base polygon");
    }
    Segment seg;
    seg.a = a + radius_ * normal;
    seg.b = b + radius_ * normal;
    seg.normal = normal;
    seg.support = offset + radius_;
    seg.length = (b - a).norm();
    segments_.push_back(seg);
    edge_angle[i] = std::atan2(normal.y(), normal.x());
    perimeter += seg.length;
  }
  // Arc at vertex i spans from the previous edge normal to the next one.
  for (int i = 0; i < m; ++i) {
    const int prev = (i + m - 1) % m;
    double lo = edge_angle[prev];
    double hi = edge_angle[i];
    while (hi <= lo) hi += 2.0 * kPi;
    Arc arc;
    arc.center = base_[i];
    arc.theta_lo = lo;
    arc.theta_hi = hi;
    arcs_.push_back(arc);
  }
  volume_ =
      polygon_area(base_) + radius_ * perimeter + kPi * radius_ * radius_;
  // Polar volume: (1/2) int h^{-2} dtheta, piecewise over the vertex normal
  // fans where h(u) = <v, u> + radius is smooth.
  const Quadrature1D gl = gauss_legendre(64);
  std::vector<double> terms;
  for (const auto& arc : arcs_) {
    const double mid = 0.5 * (arc.theta_lo + arc.theta_hi);
    const double rad = 0.5 * (arc.theta_hi - arc.theta_lo);
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = mid + rad * gl.nodes[i];
      const Eigen::Vector2d u(std::cos(t), std::sin(t));
      const double h = arc.center.dot(u) + radius_;
      terms.push_back(0.5 * gl.weights[i] * rad / (h * h));
    }
  }
  polar_volume_ = pairwise_sum(terms);
}

BoundaryPoint RoundedPolygon::arc_point(const Arc& arc, double theta) const {
  BoundaryPoint bp;
  const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
  bp.x = arc.center + radius_ * u;
  bp.normal = u;
  bp.support = bp.x.dot(u);
  bp.curvature = 1.0 / radius_;
  bp.curvature_function = radius_;
  return bp;
}

double RoundedPolygon::support_impl(const Eigen::VectorXd& u) const {
  double best = -kInf;
  for (const auto& v : base_) best = std::max(best, v.dot(to2(u).eval()));
  return best + radius_;
}

BoundaryPoint RoundedPolygon::boundary_point_impl(
    const Eigen::VectorXd& u) const {
  const double theta = std::atan2(u(1), u(0));
  // A direction matching a segment normal has a set-valued inverse Gauss map;
  // resolve it to the segment midpoint with curvature 0.
  for (const auto& seg : segments_) {
    const double sa = std::atan2(seg.normal.y(), seg.normal.x());
    double d = std::fabs(theta - sa);
    d = std::min(d, 2.0 * kPi - d);
    if (d < kGeomTol) {
      BoundaryPoint bp;
      bp.x = 0.5 * (seg.a + seg.b);
      bp.normal = seg.normal;
      bp.support = seg.support;
      bp.curvature = 0.0;
      bp.curvature_function = kInf;
      return bp;
    }
  }
  for (const auto& arc : arcs_) {
    double t = theta;
    while (t < arc.theta_lo) t += 2.0 * kPi;
    if (t <= arc.theta_hi) return arc_point(arc, t);
  }
  // Fall back to the nearest arc boundary (numerical fringe).
  return arc_point(arcs_.front(), arcs_.front().theta_lo);
}

double RoundedPolygon::curvature_function_impl(const Eigen::VectorXd& u) const {
  const double theta = std::atan2(u(1), u(0));
  for (const auto& seg : segments_) {
    const double sa = std::atan2(seg.normal.y(), seg.normal.x());
    double d = std::fabs(theta - sa);
    d = std::min(d, 2.0 * kPi - d);
    if (d < kGeomTol) return kInf;
  }
  return radius_;
}

std::shared_ptr<const ConvexBody> RoundedPolygon::linear_image_impl(
    const Eigen::MatrixXd& T) const {
  // T(P + eps B) is a rounded polygon only when T maps disks to disks.
  const Eigen::MatrixXd TtT = T.transpose() * T;
  const double scale2 = TtT.trace() / 2.0;
  if ((TtT - scale2 * Eigen::Matrix2d::Identity()).norm() >
      1e-9 * std::fabs(scale2)) {
    throw std::invalid_argument(
        "linear_image of a rounded polygon is only defined for similarity "
        "maps (general images are not segment-and-arc bodies)");
  }
  std::vector<Eigen::Vector2d> base;
  base.reserve(base_.size());
  for (const auto& v : base_) base.push_back(T * v);
  return std::make_shared<RoundedPolygon>(std::move(base),
                                          std::sqrt(scale2) * radius_);
}

}  // namespace conediv
