#pragma once
// Bounded convex domains in R^n and their boundary-intersection oracles.
//
// Four representations are supported: counterclockwise convex polygons,
// ellipsoids (axis lengths plus a rotation in 2-D), Euclidean balls and
// bounded halfspace intersections. A ConvexBody is only obtainable through
// validate_body() and is immutable afterwards, so every query below is a
// pure function that may be called concurrently.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hilbert/geometry.hpp"

namespace hilbert {

// ----------------------------------------------------------------------------
// Raw descriptions, as read from a domain file or built in code.

struct PolygonSpec {
  std::vector<Point> vertices;
};

struct EllipsoidSpec {
  Point center;
  std::vector<double> semi_axes;
  double rotation_rad = 0.0;  // 2-D only
};

struct DiskSpec {
  Point center;
  double radius = 0.0;
};

/// The constraint normal . x <= offset.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

struct PolytopeSpec {
  std::vector<Halfspace> halfspaces;
};

using BodySpec = std::variant<PolygonSpec, EllipsoidSpec, DiskSpec, PolytopeSpec>;

enum class BodyKind { Polygon, Ellipsoid, Disk, Polytope };
enum class Location { Interior, Boundary, Exterior };

constexpr std::string_view to_string(BodyKind k) {
  switch (k) {
    case BodyKind::Polygon: return "polygon";
    case BodyKind::Ellipsoid: return "ellipse";
    case BodyKind::Disk: return "disk";
    case BodyKind::Polytope: return "polytope";
  }
  return "unknown";
}

constexpr std::string_view to_string(Location l) {
  switch (l) {
    case Location::Interior: return "Interior";
    case Location::Boundary: return "Boundary";
    case Location::Exterior: return "Exterior";
  }
  return "unknown";
}

/// Ordered boundary pair (x', y') of the line through two interior points x, y,
/// arranged x', x, y, y' along the line.
struct Chord {
  Point tail;  // x'
  Point head;  // y'
  Chord reversed() const { return {head, tail}; }
};

class ConvexBody;
ConvexBody validate_body(const BodySpec& spec);

class ConvexBody {
 public:
  BodyKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  double diameter() const noexcept { return diameter_; }
  /// A canonical interior point: the center for ellipsoids, the vertex
  /// centroid for polygons and polytopes.
  const Point& center() const noexcept { return center_; }
  const Point& bbox_lo() const noexcept { return bbox_lo_; }
  const Point& bbox_hi() const noexcept { return bbox_hi_; }
  /// Vertices in counterclockwise order (polygons and 2-D polytopes).
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Absolute boundary tolerance, kBoundaryTol scaled by the diameter.
  double boundary_tol() const noexcept { return kBoundaryTol * diameter_; }

  /// Signed Euclidean gap to the boundary, negative inside. Exact inside
  /// polygons, polytopes and balls; first-order accurate near an ellipsoid.
  double signed_gap(const Point& p) const {
    switch (kind_) {
      case BodyKind::Disk: return dist(p, center_) - radius_;
      case BodyKind::Ellipsoid: return ellipsoid_gap(p);
      case BodyKind::Polygon:
      case BodyKind::Polytope: {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < normals_.size(); ++i) worst = std::max(worst, dot(normals_[i], p) - offsets_[i]);
        return worst;
      }
    }
    return 0.0;
  }

  /// Exact open-set membership predicate (no tolerance).
  bool contains_open(const Point& p) const {
    switch (kind_) {
      case BodyKind::Disk: {
        const Point w = p - center_;
        return dot(w, w) < radius_ * radius_;
      }
      case BodyKind::Ellipsoid: {
        const Point w = shape_apply(p - center_);
        return dot(w, w) < 1.0;
      }
      case BodyKind::Polygon:
      case BodyKind::Polytope:
        for (std::size_t i = 0; i < normals_.size(); ++i)
          if (!(dot(normals_[i], p) < offsets_[i])) return false;
        return true;
    }
    return false;
  }

  /// Distance s > 0 with p + s*u on the boundary. No precondition checks:
  /// callers guarantee p is interior and |u| = 1. Closed form for polygons,
  /// disks and ellipsoids; bisection on membership for polytopes.
  double exit_distance(const Point& p, const Point& u) const {
    switch (kind_) {
      case BodyKind::Disk: return quadratic_exit(p - center_, u, 1.0 / radius_);
      case BodyKind::Ellipsoid: return quadratic_exit(shape_apply(p - center_), shape_apply(u), 1.0);
      case BodyKind::Polygon: {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < normals_.size(); ++i) {
          const double nu = dot(normals_[i], u);
          if (nu <= 0.0) continue;
          best = std::min(best, (offsets_[i] - dot(normals_[i], p)) / nu);
        }
        return best;
      }
      case BodyKind::Polytope: return bisect_exit_distance(p, u);
    }
    return 0.0;
  }

  /// Generic boundary search that uses only contains_open(). Brackets the
  /// exit by doubling from an initial step, then bisects until the bracket is
  /// narrower than the boundary tolerance. Returns +inf when no exit is found
  /// within `cap`.
  double bisect_exit_distance(const Point& p, const Point& u, double cap = 1e6) const {
    double lo = 0.0;
    double hi = diameter_ > 0.0 ? diameter_ * (1.0 + 1e-9) : 1.0;
    while (contains_open(p + u * hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > cap) {
        if (contains_open(p + u * cap)) return std::numeric_limits<double>::infinity();
        hi = cap;
        break;
      }
    }
    const double width = diameter_ > 0.0 ? boundary_tol() : kBoundaryTol;
    while (hi - lo >= width) {
      const double mid = 0.5 * (lo + hi);
      if (contains_open(p + u * mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

 private:
  friend ConvexBody validate_body(const BodySpec& spec);
  ConvexBody() = default;

  // Smallest positive root of |w + s v|^2 = k^-2 after scaling by k.
  static double quadratic_exit(Point w, Point v, double k) {
    w *= k;
    v *= k;
    const double a = dot(v, v);
    const double b = dot(w, v);
    const double c = dot(w, w) - 1.0;
    const double root = std::sqrt(std::max(0.0, b * b - a * c));
    if (b > 0.0) return -c / (b + root);
    return (root - b) / a;
  }

  Point shape_apply(const Point& v) const {
    Point out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) s += shape_[r * dim_ + c] * v[c];
      out[r] = s;
    }
    return out;
  }

  double ellipsoid_gap(const Point& p) const {
    const Point w = shape_apply(p - center_);
    const double g = norm(w);
    if (g < 0.5) return -(1.0 - g) * min_axis_;
    // grad g = S^T S (p - c) / g
    Point grad(dim_);
    for (std::size_t c = 0; c < dim_; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < dim_; ++r) s += shape_[r * dim_ + c] * w[r];
      grad[c] = s / g;
    }
    return (g - 1.0) / norm(grad);
  }

  BodyKind kind_ = BodyKind::Disk;
  std::size_t dim_ = 0;
  double diameter_ = 0.0;
  Point center_;
  Point bbox_lo_;
  Point bbox_hi_;
  std::vector<Point> vertices_;
  std::vector<std::string> warnings_;
  // polygon / polytope facets, unit outward normals
  std::vector<Point> normals_;
  std::vector<double> offsets_;
  // disk
  double radius_ = 0.0;
  // ellipsoid: S = diag(1/a) R^T, row-major dim x dim
  std::array<double, kMaxDim * kMaxDim> shape_{};
  double min_axis_ = 0.0;
};

namespace detail {

inline double max_abs_coord(const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& p : pts)
    for (double v : p.coords()) m = std::max(m, std::abs(v));
  return m;
}

/// Solves the square system A x = b (row-major) by partial pivoting.
inline std::optional<Point> solve_linear(std::vector<double> a, Point b) {
  const std::size_t n = b.dim();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-12) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  Point x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return x;
}

/// Feasible vertices of {x : n_i . x <= c_i}, by brute-force enumeration of
/// every n-subset of active constraints.
inline std::vector<Point> enumerate_vertices(const std::vector<Point>& normals, const std::vector<double>& offsets,
                                             std::size_t dim, double feas_tol) {
  std::vector<Point> out;
  const std::size_t m = normals.size();
  if (m < dim) return out;
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  while (true) {
    std::vector<double> a(dim * dim);
    Point b(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) a[r * dim + c] = normals[idx[r]][c];
      b[r] = offsets[idx[r]];
    }
    if (auto x = solve_linear(a, b)) {
      bool feasible = x->finite();
      for (std::size_t i = 0; feasible && i < m; ++i) feasible = dot(normals[i], *x) - offsets[i] <= feas_tol;
      if (feasible) {
        const bool dup = std::any_of(out.begin(), out.end(),
                                     [&](const Point& q) { return dist(q, *x) <= feas_tol; });
        if (!dup) out.push_back(*x);
      }
    }
    // next combination
    std::size_t k = dim;
    while (k > 0 && idx[k - 1] == m - dim + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline void set_bbox(const std::vector<Point>& pts, Point& lo, Point& hi) {
  lo = pts.front();
  hi = pts.front();
  for (const auto& p : pts)
    for (std::size_t i = 0; i < p.dim(); ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
}

inline double max_pairwise(const std::vector<Point>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dist(pts[i], pts[j]));
  return d;
}

}  // namespace detail

/// Checks every representation invariant and returns the immutable body.
/// Clockwise polygons are reversed and a warning is recorded.
inline ConvexBody validate_body(const BodySpec& spec) {
  ConvexBody body;

  if (const auto* poly = std::get_if<PolygonSpec>(&spec)) {
    std::vector<Point> v = poly->vertices;
    for (const auto& p : v) {
      if (p.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "polygon vertices must be 2-D");
      if (!p.finite()) throw Error(ErrorCode::InvalidArgument, "non-finite vertex");
    }
    if (v.size() >= 2 && v.front() == v.back()) {
      v.pop_back();
      body.warnings_.push_back("dropped repeated closing vertex");
    }
    if (v.size() < 3) throw Error(ErrorCode::NonConvex, "polygon needs at least 3 vertices");
    const std::size_t m = v.size();
    const double scale = std::max(1.0, detail::max_abs_coord(v));
    const double tol = 1e-12 * scale * scale;
    std::size_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double c = cross(v[(i + 1) % m] - v[i], v[(i + 2) % m] - v[(i + 1) % m]);
      if (c > tol) ++pos;
      if (c < -tol) ++neg;
    }
    if (neg == m) {
      std::reverse(v.begin(), v.end());
      body.warnings_.push_back("polygon given clockwise; reversed to counterclockwise");
    } else if (pos != m) {
      throw Error(ErrorCode::NonConvex, "vertex sequence is not strictly convex");
    }
    double turning = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point e0 = v[(i + 1) % m] - v[i];
      const Point e1 = v[(i + 2) % m] - v[(i + 1) % m];
      turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
      throw Error(ErrorCode::NonConvex, "vertex sequence winds more than once");

    body.kind_ = BodyKind::Polygon;
    body.dim_ = 2;
    for (std::size_t i = 0; i < m; ++i) {
      const Point e = v[(i + 1) % m] - v[i];
      const Point n = Point{e[1], -e[0]} * (1.0 / norm(e));
      body.normals_.push_back(n);
      body.offsets_.push_back(dot(n, v[i]));
    }
    Point c(2);
    for (const auto& p : v) c += p;
    body.center_ = c * (1.0 / static_cast<double>(m));
    body.diameter_ = detail::max_pairwise(v);
    detail::set_bbox(v, body.bbox_lo_, body.bbox_hi_);
    body.vertices_ = std::move(v);
    return body;
  }

  if (const auto* disk = std::get_if<DiskSpec>(&spec)) {
    if (disk->center.dim() < 2) throw Error(ErrorCode::DimensionUnsupported, "disk dimension must be >= 2");
    if (!disk->center.finite()) throw Error(ErrorCode::InvalidArgument, "non-finite center");
    if (!(disk->radius > 0.0) || !std::isfinite(disk->radius))
      throw Error(ErrorCode::EmptyInterior, "radius must be positive");
    body.kind_ = BodyKind::Disk;
    body.dim_ = disk->center.dim();
    body.center_ = disk->center;
    body.radius_ = disk->radius;
    body.diameter_ = 2.0 * disk->radius;
    body.bbox_lo_ = disk->center;
    body.bbox_hi_ = disk->center;
    for (std::size_t i = 0; i < body.dim_; ++i) {
      body.bbox_lo_[i] -= disk->radius;
      body.bbox_hi_[i] += disk->radius;
    }
    return body;
  }

  if (const auto* ell = std::get_if<EllipsoidSpec>(&spec)) {
    const std::size_t n = ell->center.dim();
    if (n < 2) throw Error(ErrorCode::DimensionUnsupported, "ellipsoid dimension must be >= 2");
    if (ell->semi_axes.size() != n) throw Error(ErrorCode::InvalidArgument, "semi_axes length must match center");
    if (!ell->center.finite() || !std::isfinite(ell->rotation_rad))
      throw Error(ErrorCode::InvalidArgument, "non-finite ellipsoid parameter");
    for (double a : ell->semi_axes)
      if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::EmptyInterior, "semi-axes must be positive");
    if (n != 2 && ell->rotation_rad != 0.0)
      throw Error(ErrorCode::DimensionUnsupported, "rotation_rad is only defined in 2-D");

    // rotation R has the body axes as columns; S = diag(1/a) R^T
    std::vector<double> rot(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) rot[i * n + i] = 1.0;
    if (n == 2) {
      const double c = std::cos(ell->rotation_rad), s = std::sin(ell->rotation_rad);
      rot = {c, -s, s, c};
    }
    body.kind_ = BodyKind::Ellipsoid;
    body.dim_ = n;
    body.center_ = ell->center;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) body.shape_[r * n + c] = rot[c * n + r] / ell->semi_axes[r];
    body.min_axis_ = *std::min_element(ell->semi_axes.begin(), ell->semi_axes.end());
    body.diameter_ = 2.0 * *std::max_element(ell->semi_axes.begin(), ell->semi_axes.end());
    body.bbox_lo_ = ell->center;
    body.bbox_hi_ = ell->center;
    for (std::size_t i = 0; i < n; ++i) {
      double h = 0.0;
      for (std::size_t k = 0; k < n; ++k) h += std::pow(rot[i * n + k] * ell->semi_axes[k], 2);
      h = std::sqrt(h);
      body.bbox_lo_[i] -= h;
      body.bbox_hi_[i] += h;
    }
    return body;
  }

  const auto& poly = std::get<PolytopeSpec>(spec);
  if (poly.halfspaces.empty()) throw Error(ErrorCode::Unbounded, "no halfspaces");
  const std::size_t n = poly.halfspaces.front().normal.dim();
  if (n < 2) throw Error(ErrorCode::DimensionUnsupported, "polytope dimension must be >= 2");
  std::vector<Point> normals;
  std::vector<double> offsets;
  for (const auto& h : poly.halfspaces) {
    if (h.normal.dim() != n) throw Error(ErrorCode::InvalidArgument, "halfspace normals differ in dimension");
    const double len = norm(h.normal);
    if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(h.offset))
      throw Error(ErrorCode::InvalidArgument, "degenerate halfspace normal");
    normals.push_back(h.normal * (1.0 / len));
    offsets.push_back(h.offset / len);
  }

  constexpr double kProbeRadius = 1e6;
  std::vector<Point> boxed_normals = normals;
  std::vector<double> boxed_offsets = offsets;
  for (std::size_t i = 0; i < n; ++i) {
    Point e(n);
    e[i] = 1.0;
    boxed_normals.push_back(e);
    boxed_offsets.push_back(kProbeRadius);
    boxed_normals.push_back(-e);
    boxed_offsets.push_back(kProbeRadius);
  }
  const auto boxed = detail::enumerate_vertices(boxed_normals, boxed_offsets, n, 1e-9);
  if (boxed.empty()) throw Error(ErrorCode::EmptyInterior, "halfspaces have no common point");
  Point seed(n);
  for (const auto& p : boxed) seed += p;
  seed *= 1.0 / static_cast<double>(boxed.size());

  body.kind_ = BodyKind::Polytope;
  body.dim_ = n;
  body.normals_ = normals;
  body.offsets_ = offsets;
  body.center_ = seed;

  double slack = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals.size(); ++i) slack = std::max(slack, dot(normals[i], seed) - offsets[i]);
  if (!(slack < -1e-9 * std::max(1.0, norm(seed)))) throw Error(ErrorCode::EmptyInterior, "intersection is flat");

  for (std::size_t i = 0; i < n; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Point e(n);
      e[i] = sgn;
      if (!std::isfinite(body.bisect_exit_distance(seed, e, kProbeRadius)))
        throw Error(ErrorCode::Unbounded, "boundary not reached within radius 1e6 along an axis probe");
    }
  }
  for (const auto& p : boxed)
    for (double v : p.coords())
      if (std::abs(v) >= kProbeRadius * (1.0 - 1e-9))
        throw Error(ErrorCode::Unbounded, "intersection reaches the 1e6 probe box");

  body.diameter_ = detail::max_pairwise(boxed);
  detail::set_bbox(boxed, body.bbox_lo_, body.bbox_hi_);
  Point centroid(n);
  for (const auto& p : boxed) centroid += p;
  centroid *= 1.0 / static_cast<double>(boxed.size());
  body.center_ = centroid;
  if (n == 2) {
    std::vector<Point> outline = boxed;
    std::sort(outline.begin(), outline.end(), [&](const Point& a, const Point& b) {
      return std::atan2(a[1] - centroid[1], a[0] - centroid[0]) < std::atan2(b[1] - centroid[1], b[0] - centroid[0]);
    });
    body.vertices_ = std::move(outline);
  }
  return body;
}

/// Interior / Boundary / Exterior, with Boundary meaning the signed gap is
/// within the body's boundary tolerance.
inline Location classify(const ConvexBody& body, const Point& p) {
  if (p.dim() != body.dim()) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  const double gap = body.signed_gap(p);
  const double tol = body.boundary_tol();
  if (gap < -tol) return Location::Interior;
  if (gap <= tol) return Location::Boundary;
  return Location::Exterior;
}

inline bool is_interior(const ConvexBody& body, const Point& p) { return classify(body, p) == Location::Interior; }

/// Distance from an interior point to the boundary along u.
inline double boundary_distance(const ConvexBody& body, const Point& p, const Direction& u) {
  if (!is_interior(body, p)) throw Error(ErrorCode::ExteriorBase, "ray base is not interior");
  if (u.dim() != body.dim()) throw Error(ErrorCode::InvalidArgument, "direction dimension mismatch");
  return body.exit_distance(p, u.vec());
}

/// The unique boundary point p + s*u with s > 0.
inline Point boundary_hit(const ConvexBody& body, const Point& p, const Direction& u) {
  return p + u.vec() * boundary_distance(body, p, u);
}

/// Chord of the line through interior points x != y, oriented x', x, y, y'.
inline Chord chord_through(const ConvexBody& body, const Point& x, const Point& y) {
  if (!is_interior(body, x) || !is_interior(body, y)) throw Error(ErrorCode::ExteriorBase, "chord endpoints must be interior");
  if (dist(x, y) <= kPointTol) throw Error(ErrorCode::CoincidentPoints, "x and y coincide");
  const Direction u(y - x);
  return {boundary_hit(body, x, -u), boundary_hit(body, y, u)};
}

/// True iff the boundary contains no non-trivial segment. Finite halfspace
/// lists and polygons always have flat facets.
inline bool is_strictly_convex(const ConvexBody& body) noexcept {
  switch (body.kind()) {
    case BodyKind::Disk:
    case BodyKind::Ellipsoid: return true;
    case BodyKind::Polygon:
    case BodyKind::Polytope: return false;
  }
  return false;
}

/// Intersection of two planar lines; std::nullopt when parallel.
inline std::optional<Point> line_intersection(const Point& p1, const Direction& u1, const Point& p2,
                                              const Direction& u2) {
  if (p1.dim() != 2 || p2.dim() != 2 || u1.dim() != 2 || u2.dim() != 2)
    throw Error(ErrorCode::DimensionUnsupported, "line_intersection is planar");
  const double c = cross(u1.vec(), u2.vec());
  if (std::abs(c) < kParallelTol) return std::nullopt;
  const double t = cross(p2 - p1, u2.vec()) / c;
  return p1 + u1.vec() * t;
}

/// Closed polyline approximating the boundary of a planar body.
inline std::vector<Point> outline(const ConvexBody& body, std::size_t samples = 256) {
  if (body.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "outline is planar");
  if (!body.vertices().empty()) return body.vertices();
  std::vector<Point> out;
  out.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    out.push_back(boundary_hit(body, body.center(), Direction::from_angle(th)));
  }
  return out;
}

}  // namespace hilbert
