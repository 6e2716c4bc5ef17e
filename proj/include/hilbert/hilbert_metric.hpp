#pragma once
// The Hilbert metric of a bounded convex domain: cross-ratios, distances,
// arclength-parametrized rays, spheres and balls.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "hilbert/convex_domain.hpp"
#include "hilbert/geometry.hpp"

namespace hilbert {

/// |x y'| |y x'| / (|x x'| |y y'|) for x' = chord.tail, y' = chord.head and
/// the points ordered x', x, y, y' along the chord.
inline double cross_ratio(const Point& x, const Point& y, const Chord& chord) {
  const Point w = chord.head - chord.tail;
  const double len = norm(w);
  if (!(len > kPointTol)) throw Error(ErrorCode::OffChord, "degenerate chord");
  const Point unit = w * (1.0 / len);
  const double tol = kPointTol * std::max(1.0, len);
  auto along = [&](const Point& p) {
    const Point v = p - chord.tail;
    const double s = dot(v, unit);
    if (norm(v - unit * s) > tol) throw Error(ErrorCode::OffChord, "point is off the chord line");
    return s;
  };
  const double sx = along(x);
  const double sy = along(y);
  if (!(sx > 0.0) || !(sy < len) || sy < sx - tol) throw Error(ErrorCode::BadOrder, "expected tail, x, y, head");
  if (x == y) return 1.0;
  return (dist(x, chord.head) * dist(y, chord.tail)) / (dist(x, chord.tail) * dist(y, chord.head));
}

/// Hilbert distance between interior points.
inline double distance(const ConvexBody& body, const Point& x, const Point& y) {
  if (!is_interior(body, x) || !is_interior(body, y))
    throw Error(ErrorCode::ExteriorPoint, "distance needs interior points");
  const double len = dist(x, y);
  if (len <= kPointTol) return 0.0;
  // With a = |x x'| and b = |y y'| the cross-ratio is (1 + len/a)(1 + len/b).
  const Point u = (y - x) * (1.0 / len);
  const double a = body.exit_distance(x, -u);
  const double b = body.exit_distance(y, u);
  return std::log1p(len / a) + std::log1p(len / b);
}

/// A ray from an interior base point with cached boundary distances
/// a (behind the base) and b (ahead of it).
class RaySpec {
 public:
  RaySpec(const ConvexBody& body, const Point& base, const Direction& dir)
      : base_(base), dir_(dir), back_(boundary_distance(body, base, -dir)), ahead_(body.exit_distance(base, dir.vec())) {}

  const Point& base() const noexcept { return base_; }
  const Direction& dir() const noexcept { return dir_; }
  double back() const noexcept { return back_; }
  double ahead() const noexcept { return ahead_; }

  /// Euclidean offset of the point at Hilbert arclength t >= 0, i.e.
  /// s = a b (e^t - 1) / (b + a e^t), evaluated without overflow.
  double euclidean_offset(double t) const {
    if (t < 0.0 || std::isnan(t)) throw Error(ErrorCode::NegativeParameter, "ray parameter must be >= 0");
    const double s = back_ * ahead_ * -std::expm1(-t) / (back_ + ahead_ * std::exp(-t));
    return std::min(s, std::nextafter(ahead_, 0.0));
  }

  Point at(double t) const { return base_ + dir_.vec() * euclidean_offset(t); }

 private:
  Point base_;
  Direction dir_;
  double back_;
  double ahead_;
};

inline Point ray_point(const ConvexBody& /*body*/, const RaySpec& ray, double t) { return ray.at(t); }

/// Point at Hilbert distance t from o in the planar direction theta.
inline Point sphere_point(const ConvexBody& body, const Point& o, double theta, double t) {
  if (body.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "spheres are sampled in the plane");
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "sphere radius must be positive");
  return RaySpec(body, o, Direction::from_angle(theta)).at(t);
}

struct BallBoundary {
  Point center;
  double radius = 0.0;
  std::vector<Point> samples;  // counterclockwise
};

/// N samples of the Hilbert sphere of radius t, uniform in direction angle.
inline BallBoundary ball_boundary(const ConvexBody& body, const Point& center, double t, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "ball_boundary needs at least 3 samples");
  BallBoundary out{center, t, {}};
  out.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    out.samples.push_back(sphere_point(body, center, th, t));
  }
  return out;
}

/// Smallest turn cross product of a closed counterclockwise polyline, with
/// each edge normalized; negative values mean a reflex corner.
inline double min_turn(const std::vector<Point>& poly) {
  double worst = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point e0 = poly[(i + 1) % n] - poly[i];
    const Point e1 = poly[(i + 2) % n] - poly[(i + 1) % n];
    worst = std::min(worst, cross(e0, e1) / (norm(e0) * norm(e1)));
  }
  return worst;
}

/// |d(x,z) + d(z,y) - d(x,y)| for z = (1 - lambda) x + lambda y.
inline double geodesic_defect(const ConvexBody& body, const Point& x, const Point& y, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0,1)");
  if (dist(x, y) <= kPointTol) throw Error(ErrorCode::CoincidentPoints, "x and y coincide");
  const Point z = lerp(x, y, lambda);
  return std::abs(distance(body, x, z) + distance(body, z, y) - distance(body, x, y));
}

enum class LineFamily { Concurrent, Parallel };

struct ConcurrencyReport {
  double defect = 0.0;
  LineFamily mode = LineFamily::Parallel;
  std::optional<Point> meeting_point;  // set when Concurrent
};

/// For equidistant a2, b2 around o, builds the chords [a1,a3] through o, a2
/// and [b1,b3] through o, b2 and measures how far the lines a_i b_i are from
/// passing through one point (or from being parallel).
///
/// Concurrent defect is the largest distance between the three pairwise
/// intersections divided by max(1, |p - o|), p being the intersection of the
/// outer lines, so that it stays meaningful when p is far away. Parallel
/// defect is the largest |sin| of the angle between two of the lines.
inline ConcurrencyReport concurrency_defect(const ConvexBody& body, const Point& o, const Point& a2, const Point& b2) {
  if (body.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "concurrency check is planar");
  for (const Point* p : {&o, &a2, &b2})
    if (!is_interior(body, *p)) throw Error(ErrorCode::ExteriorPoint, "points must be interior");
  const Point va = a2 - o, vb = b2 - o;
  if (std::abs(cross(va, vb)) <= 1e-12 * norm(va) * norm(vb) || norm(va) <= kPointTol || norm(vb) <= kPointTol)
    throw Error(ErrorCode::CollinearInput, "o, a2, b2 are collinear");
  if (std::abs(distance(body, o, a2) - distance(body, o, b2)) > 1e-9)
    throw Error(ErrorCode::DistanceMismatch, "d(o,a2) and d(o,b2) differ");

  const Chord ca = chord_through(body, o, a2);
  const Chord cb = chord_through(body, o, b2);
  const Point as[3] = {ca.tail, a2, ca.head};
  const Point bs[3] = {cb.tail, b2, cb.head};
  const Direction d[3] = {Direction(bs[0] - as[0]), Direction(bs[1] - as[1]), Direction(bs[2] - as[2])};

  ConcurrencyReport rep;
  double max_sin = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) max_sin = std::max(max_sin, std::abs(cross(d[i].vec(), d[j].vec())));

  if (std::abs(cross(d[0].vec(), d[2].vec())) <= 1e-10) {
    rep.mode = LineFamily::Parallel;
    rep.defect = max_sin;
    return rep;
  }
  rep.mode = LineFamily::Concurrent;
  const auto p13 = line_intersection(as[0], d[0], as[2], d[2]);
  const auto p12 = line_intersection(as[0], d[0], as[1], d[1]);
  const auto p23 = line_intersection(as[1], d[1], as[2], d[2]);
  rep.meeting_point = p13;
  if (!p12 || !p23) {
    rep.defect = std::numeric_limits<double>::infinity();
    return rep;
  }
  const double scatter = std::max({dist(*p12, *p13), dist(*p12, *p23), dist(*p13, *p23)});
  rep.defect = scatter / std::max(1.0, dist(*p13, o));
  return rep;
}

}  // namespace hilbert
