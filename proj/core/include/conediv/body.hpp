#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace conediv {

enum class BodyKind { ellipsoid, polytope, smooth2d, smooth3d, rounded_polygon };
// smooth3d is reserved: beyond ellipsoids, no 3D body carries closed-form
// curvature data here.

std::string to_string(BodyKind k);

/// Point on the boundary with its differential-geometric data.
/// curvature_function is 1/curvature, +inf on flat pieces.
struct BoundaryPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd normal;  // outer unit normal
  double support = 0.0;    // <x, normal>, positive for origin-interior bodies
  double curvature = 0.0;
  double curvature_function = 0.0;
};

/// Volume of the n-dimensional Euclidean unit ball.
double unit_ball_volume(int n);

/// Convex body containing the origin in its interior. Immutable after
/// construction; all queries are const and safe to call concurrently.
class ConvexBody {
 public:
  virtual ~ConvexBody() = default;

  int dim() const { return dim_; }
  BodyKind kind() const { return kind_; }
  double volume() const { return volume_; }
  double polar_volume() const { return polar_volume_; }
  virtual bool is_c2_plus() const = 0;

  /// Support function h(u) = max_{x in K} <x,u>. u must be unit (1e-9).
  double support(const Eigen::VectorXd& u) const;

  /// Inverse Gauss map: the boundary point with outer normal u.
  /// Throws for polytopes (the normal map is not invertible).
  BoundaryPoint boundary_point_from_normal(const Eigen::VectorXd& u) const;

  /// Curvature function f_K(u), the reciprocal Gauss curvature at the
  /// boundary point with normal u. Diagnostics only for polytopes: +inf at
  /// facet normals, 0 elsewhere.
  double curvature_function(const Eigen::VectorXd& u) const;

  /// The body T(K) for an invertible linear map T.
  std::shared_ptr<const ConvexBody> linear_image(const Eigen::MatrixXd& T) const;

 protected:
  ConvexBody(int dim, BodyKind kind) : dim_(dim), kind_(kind) {}

  virtual double support_impl(const Eigen::VectorXd& u) const = 0;
  virtual BoundaryPoint boundary_point_impl(const Eigen::VectorXd& u) const = 0;
  virtual double curvature_function_impl(const Eigen::VectorXd& u) const = 0;
  virtual std::shared_ptr<const ConvexBody> linear_image_impl(
      const Eigen::MatrixXd& T) const = 0;

  void check_direction(const Eigen::VectorXd& u) const;

  int dim_;
  BodyKind kind_;
  double volume_ = 0.0;
  double polar_volume_ = 0.0;
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

/// {x : x^T M^{-1} x <= 1} for a symmetric positive-definite shape matrix M.
/// h(u) = sqrt(u^T M u), curvature function det(M)/h(u)^{n+1}.
class Ellipsoid final : public ConvexBody {
 public:
  explicit Ellipsoid(Eigen::MatrixXd shape);
  static Ellipsoid unit_ball(int n);
  static Ellipsoid from_semi_axes(const std::vector<double>& semi_axes);

  const Eigen::MatrixXd& shape_matrix() const { return shape_; }
  double shape_determinant() const { return det_; }
  bool is_c2_plus() const override { return true; }

 protected:
  double support_impl(const Eigen::VectorXd& u) const override;
  BoundaryPoint boundary_point_impl(const Eigen::VectorXd& u) const override;
  double curvature_function_impl(const Eigen::VectorXd& u) const override;
  std::shared_ptr<const ConvexBody> linear_image_impl(
      const Eigen::MatrixXd& T) const override;

 private:
  Eigen::MatrixXd shape_;
  double det_ = 0.0;
};

struct Halfspace {
  Eigen::VectorXd normal;  // unit outward
  double offset = 0.0;     // <x, normal> <= offset, offset > 0
};

struct Facet {
  Halfspace plane;
  std::vector<int> vertex_ids;
  double area = 0.0;  // (n-1)-dimensional measure
};

/// Bounded polytope with synchronized halfspace and vertex representations.
/// Either representation alone is accepted in dimensions 2 and 3 (the other
/// is enumerated); higher dimensions require both.
class Polytope final : public ConvexBody {
 public:
  static Polytope from_vertices(std::vector<Eigen::VectorXd> vertices);
  static Polytope from_halfspaces(std::vector<Halfspace> halfspaces);
  Polytope(std::vector<Halfspace> halfspaces,
           std::vector<Eigen::VectorXd> vertices);

  static Polytope regular_polygon(int k, double circumradius = 1.0);
  static Polytope box(const Eigen::VectorXd& half_widths);

  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  bool is_c2_plus() const override { return false; }

 protected:
  double support_impl(const Eigen::VectorXd& u) const override;
  BoundaryPoint boundary_point_impl(const Eigen::VectorXd& u) const override;
  double curvature_function_impl(const Eigen::VectorXd& u) const override;
  std::shared_ptr<const ConvexBody> linear_image_impl(
      const Eigen::MatrixXd& T) const override;

 private:
  void finalize();

  std::vector<Halfspace> halfspaces_;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<Facet> facets_;
};

/// Planar body given by a strictly convex support function h(theta) with
/// first and second derivatives. Boundary parametrized by the normal angle:
///   x(t) = h(t) (cos t, sin t) + h'(t) (-sin t, cos t),
/// curvature function f_K(t) = h(t) + h''(t) > 0.
class SmoothBody2D final : public ConvexBody {
 public:
  using AngleFn = std::function<double(double)>;

  /// h(t) = cos_coeffs[k] cos(k t) + sin_coeffs[k] sin(k t), closed-form
  /// derivatives. sin_coeffs[0] is ignored.
  static SmoothBody2D from_trig(std::vector<double> cos_coeffs,
                                std::vector<double> sin_coeffs = {},
                                int volume_nodes = 4096);

  /// Closed-form h with closed-form derivatives.
  SmoothBody2D(AngleFn h, AngleFn dh, AngleFn ddh, int volume_nodes = 4096);

  /// h only; derivatives by central differences with the given step.
  explicit SmoothBody2D(AngleFn h, double fd_step = 1e-5,
                        int volume_nodes = 4096);

  double h(double theta) const { return h_(theta); }
  double dh(double theta) const { return dh_(theta); }
  double ddh(double theta) const { return ddh_(theta); }
  double curvature_function_at(double theta) const {
    return h_(theta) + ddh_(theta);
  }
  BoundaryPoint boundary_point_at(double theta) const;
  bool is_c2_plus() const override { return true; }

 protected:
  double support_impl(const Eigen::VectorXd& u) const override;
  BoundaryPoint boundary_point_impl(const Eigen::VectorXd& u) const override;
  double curvature_function_impl(const Eigen::VectorXd& u) const override;
  std::shared_ptr<const ConvexBody> linear_image_impl(
      const Eigen::MatrixXd& T) const override;

 private:
  void validate_and_cache(int volume_nodes);

  AngleFn h_, dh_, ddh_;
};

/// Minkowski sum of a convex polygon and a disk of radius eps: boundary
/// alternates offset segments (curvature 0) and vertex arcs (curvature
/// 1/eps). Integration over the boundary is done piece by piece; no
/// quadrature ever crosses a curvature discontinuity.
class RoundedPolygon final : public ConvexBody {
 public:
  struct Arc {
    Eigen::Vector2d center;  // base-polygon vertex
    double theta_lo = 0.0;   // normal angles spanned, theta_hi > theta_lo
    double theta_hi = 0.0;
  };
  struct Segment {
    Eigen::Vector2d a, b;    // endpoints on the boundary, ccw order
    Eigen::Vector2d normal;  // outward unit normal (constant on the piece)
    double support = 0.0;    // <x, normal> along the piece
    double length = 0.0;
  };

  RoundedPolygon(std::vector<Eigen::Vector2d> base_polygon, double radius);

  double radius() const { return radius_; }
  const std::vector<Eigen::Vector2d>& base_polygon() const { return base_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<Segment>& segments() const { return segments_; }
  BoundaryPoint arc_point(const Arc& arc, double theta) const;
  bool is_c2_plus() const override { return false; }

 protected:
  double support_impl(const Eigen::VectorXd& u) const override;
  BoundaryPoint boundary_point_impl(const Eigen::VectorXd& u) const override;
  double curvature_function_impl(const Eigen::VectorXd& u) const override;
  std::shared_ptr<const ConvexBody> linear_image_impl(
      const Eigen::MatrixXd& T) const override;

 private:
  std::vector<Eigen::Vector2d> base_;
  double radius_ = 0.0;
  std::vector<Arc> arcs_;
  std::vector<Segment> segments_;
};

}  // namespace conediv
