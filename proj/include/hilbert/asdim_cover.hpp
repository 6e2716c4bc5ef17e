#pragma once
// Uniformly bounded covers of a planar Hilbert geometry with r-multiplicity
// at most 3.
//
// Around a base point o the spheres S_i = {d(o,.) = iR} are cut into arcs by
// alternating X/Y markers. Every arc contains a point at distance >= R from
// its start and has diameter <= 4R. Markers of level i are
// lifted radially to level i+1 with their kinds swapped, and each lifted arc
// is re-cut into an odd number of such arcs. The cover consists of
// the ball B(o,R) and, for each level i, the polar rectangles between
// consecutive X-markers of S_i and the sphere S_{i+1}.
//
// Arcs are angle intervals about o; radial projection between spheres is the
// identity on angles, so lifted markers match exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "hilbert/convex_domain.hpp"
#include "hilbert/hilbert_metric.hpp"

namespace hilbert {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CoverParams {
  double big_r = 1.0;           // R
  std::size_t n_arc = 512;      // grid size for marker scans and arc audits
  double tol_arc_rel = 1e-6;    // tol_arc = tol_arc_rel * R
  double angle_tol = 1e-10;     // bisection stop for marker angles

  double tol_arc() const noexcept { return tol_arc_rel * big_r; }
};

/// The Hilbert sphere S_i of radius i*R about o, parametrized by angle.
struct SphereLevel {
  int index = 0;
  double radius = 0.0;
  const ConvexBody* body = nullptr;
  Point base;

  SphereLevel(const ConvexBody& b, const Point& o, int i, double big_r)
      : index(i), radius(i * big_r), body(&b), base(o) {
    if (b.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "sphere levels are planar");
    if (i < 1 || !(big_r > 0.0)) throw Error(ErrorCode::InvalidArgument, "level index >= 1 and R > 0 required");
  }
  Point at(double theta) const { return sphere_point(*body, base, theta, radius); }
};

enum class MarkerKind { X, Y };

struct Marker {
  double angle = 0.0;  // [0, 2pi)
  MarkerKind kind = MarkerKind::X;
  int level = 0;
  int ordinal = 0;  // j in x^i_j / y^i_j
};

/// Sampled reach and diameter of one arc.
struct ArcAudit {
  double start = 0.0;         // unwrapped, end > start
  double end = 0.0;
  double reach = 0.0;         // max sampled d(start, .) (must be >= R)
  double diameter = 0.0;      // sampled diameter (must be <= 4R)
  double grid_step = 0.0;     // largest Hilbert gap between consecutive samples
};

struct ArcDecomposition {
  SphereLevel level;
  std::vector<Marker> markers;  // ordinal order x_0, y_0, x_1, y_1, ...; CCW
  std::vector<ArcAudit> arcs;   // arcs[k] runs from markers[k] to markers[k+1]
};

/// Point of the ray from o through x at Hilbert distance t_target.
inline Point project_between_levels(const ConvexBody& body, const Point& o, const Point& x, double t_target) {
  if (dist(x, o) <= kPointTol) throw Error(ErrorCode::DegenerateRay, "x coincides with the base point");
  if (!(t_target > 0.0)) throw Error(ErrorCode::InvalidArgument, "target radius must be positive");
  return RaySpec(body, o, Direction(x - o)).at(t_target);
}

/// First angle theta in (start, end] (counterclockwise, end unwrapped) where
/// d(point(start), point(theta)) reaches R: scanned on an n_arc grid, then
/// refined by bisection. std::nullopt when no grid point reaches R.
inline std::optional<double> first_marker(const SphereLevel& level, double start, double end, double big_r,
                                          std::size_t n_arc = 512, double angle_tol = 1e-10) {
  const ConvexBody& body = *level.body;
  const Point a = level.at(start);
  double prev = start;
  for (std::size_t k = 1; k <= n_arc; ++k) {
    const double th = start + (end - start) * static_cast<double>(k) / static_cast<double>(n_arc);
    if (distance(body, a, level.at(th)) >= big_r) {
      double lo = prev, hi = th;
      while (hi - lo > angle_tol) {
        const double mid = 0.5 * (lo + hi);
        if (distance(body, a, level.at(mid)) >= big_r) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return hi;
    }
    prev = th;
  }
  return std::nullopt;
}

/// Cuts the arc [start, end] into an odd number of sub-arcs, each containing a
/// point at distance >= R from its start and of diameter <= 4R. Returns the
/// interior cut angles in increasing order.
///
/// Markers are placed by marching: from the current marker a, the next one is
/// the first point at distance R from a. A trailing arc that never reaches R
/// is merged into its predecessor, and an even count is made odd by merging
/// the first two arcs.
inline std::vector<double> decompose_arc(const SphereLevel& level, double start, double end, double big_r,
                                         std::size_t n_arc = 512, double angle_tol = 1e-10) {
  std::vector<double> marks{start};
  double cur = start;
  while (true) {
    const auto next = first_marker(level, cur, end, big_r, n_arc, angle_tol);
    if (!next) {
      if (marks.size() == 1) throw Error(ErrorCode::Star1Violation, "arc never reaches distance R from its start");
      marks.back() = end;  // tail merge
      break;
    }
    if (end - *next <= angle_tol) {
      marks.push_back(end);
      break;
    }
    marks.push_back(*next);
    cur = *next;
  }
  if ((marks.size() - 1) % 2 == 0) marks.erase(marks.begin() + 1);  // parity fix
  return {marks.begin() + 1, marks.end() - 1};
}

/// Samples one arc and measures its reach from the start and its diameter.
inline ArcAudit audit_arc(const SphereLevel& level, double start, double end, std::size_t n) {
  std::vector<Point> pts;
  pts.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    pts.push_back(level.at(start + (end - start) * static_cast<double>(k) / static_cast<double>(n)));
  const ConvexBody& body = *level.body;
  ArcAudit au{start, end, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = distance(body, pts[i], pts[j]);
      au.diameter = std::max(au.diameter, d);
      if (i == 0) au.reach = std::max(au.reach, d);
      if (j == i + 1) au.grid_step = std::max(au.grid_step, d);
    }
  }
  return au;
}

namespace detail {

/// Unwrapped angles of the markers in ordinal order, strictly increasing.
inline std::vector<double> unwrapped_angles(const std::vector<Marker>& markers) {
  std::vector<double> out;
  out.reserve(markers.size());
  for (const auto& m : markers) {
    double a = m.angle;
    while (!out.empty() && a <= out.back()) a += kTwoPi;
    out.push_back(a);
  }
  return out;
}

/// `exact` holds the wrapped angle of inherited markers (NaN for new cuts) so
/// that lifted markers keep bit-identical angles.
inline std::vector<Marker> label_markers(const std::vector<double>& angles, int level,
                                         const std::vector<double>& exact = {}) {
  std::vector<Marker> out;
  out.reserve(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const bool inherited = k < exact.size() && !std::isnan(exact[k]);
    out.push_back({inherited ? exact[k] : wrap_angle(angles[k]), k % 2 == 0 ? MarkerKind::X : MarkerKind::Y, level,
                   static_cast<int>(k / 2)});
  }
  return out;
}

inline void audit_all(ArcDecomposition& dec, std::size_t n) {
  const auto ang = unwrapped_angles(dec.markers);
  dec.arcs.clear();
  for (std::size_t k = 0; k < ang.size(); ++k) {
    const double end = k + 1 < ang.size() ? ang[k + 1] : ang.front() + kTwoPi;
    dec.arcs.push_back(audit_arc(dec.level, ang[k], end, n));
  }
}

}  // namespace detail

/// Level-1 markers: S_1 is split at angles 0 and pi, each half is decomposed,
/// and markers are labelled X, Y, X, ... starting with X at angle 0.
inline ArcDecomposition initial_decomposition(const ConvexBody& body, const Point& o, const CoverParams& p) {
  const SphereLevel level(body, o, 1, p.big_r);
  std::vector<double> angles{0.0};
  for (double half_start : {0.0, std::numbers::pi}) {
    const auto cuts = decompose_arc(level, half_start, half_start + std::numbers::pi, p.big_r, p.n_arc, p.angle_tol);
    angles.insert(angles.end(), cuts.begin(), cuts.end());
    if (half_start == 0.0) angles.push_back(std::numbers::pi);
  }
  ArcDecomposition dec{level, detail::label_markers(angles, 1), {}};
  detail::audit_all(dec, p.n_arc);
  return dec;
}

/// Lifts the level-i markers to S_{i+1}, decomposes each lifted arc, and
/// relabels counterclockwise starting with X at the lift of y^i_0.
inline ArcDecomposition refine_level(const ConvexBody& body, const Point& o, const ArcDecomposition& dec,
                                     const CoverParams& p) {
  const SphereLevel next(body, o, dec.level.index + 1, p.big_r);
  const auto ang = detail::unwrapped_angles(dec.markers);
  const std::size_t m = ang.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> angles, exact;
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t k = (1 + step) % m;  // start at y_0
    double a = ang[k];
    double b = k + 1 < m ? ang[k + 1] : ang.front() + kTwoPi;
    if (step > 0 && a < angles.back()) {
      a += kTwoPi;
      b += kTwoPi;
    }
    angles.push_back(a);
    exact.push_back(dec.markers[k].angle);
    const auto cuts = decompose_arc(next, a, b, p.big_r, p.n_arc, p.angle_tol);
    angles.insert(angles.end(), cuts.begin(), cuts.end());
    exact.insert(exact.end(), cuts.size(), nan);
  }
  ArcDecomposition out{next, detail::label_markers(angles, next.index, exact), {}};
  detail::audit_all(out, p.n_arc);
  return out;
}

/// Every marker of `lower` reappears on `upper` at the same angle with the
/// opposite kind.
inline bool is_admissible(const ArcDecomposition& lower, const ArcDecomposition& upper) {
  return std::all_of(lower.markers.begin(), lower.markers.end(), [&](const Marker& m) {
    return std::any_of(upper.markers.begin(), upper.markers.end(),
                       [&](const Marker& u) { return u.angle == m.angle && u.kind != m.kind; });
  });
}

/// Marker order and alternation: even count, kinds alternate, angles strictly
/// increase counterclockwise once around the circle.
inline bool markers_well_formed(const ArcDecomposition& dec) {
  const auto& ms = dec.markers;
  if (ms.size() < 2 || ms.size() % 2 != 0) return false;
  for (std::size_t k = 0; k < ms.size(); ++k)
    if (ms[k].kind != (k % 2 == 0 ? MarkerKind::X : MarkerKind::Y)) return false;
  const auto ang = detail::unwrapped_angles(ms);
  return ang.back() < ang.front() + kTwoPi;
}

/// U_{0,0} = B(o,R) when level == 0; otherwise the closed polar rectangle
/// theta in [theta_start, theta_end], d(o,.) in [t_inner, t_outer].
struct CoverPiece {
  int level = 0;
  int ordinal = 0;
  double theta_start = 0.0;
  double theta_end = kTwoPi;  // unwrapped, > theta_start
  double t_inner = 0.0;
  double t_outer = 0.0;

  bool is_base_ball() const noexcept { return level == 0; }
};

struct Cover {
  const ConvexBody* body = nullptr;
  Point base;
  CoverParams params;
  int levels = 0;
  std::vector<ArcDecomposition> decompositions;  // levels 1..levels
  std::vector<CoverPiece> pieces;
};

/// Decomposes S_1..S_levels and assembles U_{0,0} plus the level pieces.
inline Cover build_cover(const ConvexBody& body, const Point& o, const CoverParams& p, int levels) {
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "levels must be >= 1");
  if (!(p.big_r > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  if (!is_interior(body, o)) throw Error(ErrorCode::ExteriorBase, "base point must be interior");
  Cover cover{&body, o, p, levels, {}, {}};
  cover.decompositions.push_back(initial_decomposition(body, o, p));
  for (int i = 2; i <= levels; ++i) cover.decompositions.push_back(refine_level(body, o, cover.decompositions.back(), p));

  cover.pieces.push_back({0, 0, 0.0, kTwoPi, 0.0, p.big_r});
  for (const auto& dec : cover.decompositions) {
    const auto ang = detail::unwrapped_angles(dec.markers);
    std::vector<double> xs;
    for (std::size_t k = 0; k < ang.size(); k += 2) xs.push_back(ang[k]);
    const double t0 = dec.level.radius;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double end = j + 1 < xs.size() ? xs[j + 1] : xs.front() + kTwoPi;
      cover.pieces.push_back({dec.level.index, static_cast<int>(j), xs[j], end, t0, t0 + p.big_r});
    }
  }
  return cover;
}

/// Point at polar coordinates (theta, t) about o.
inline Point polar_point(const ConvexBody& body, const Point& o, double theta, double t) {
  if (t <= 0.0) return o;
  return RaySpec(body, o, Direction::from_angle(theta)).at(t);
}

/// Polar coordinates (theta in [0,2pi), Hilbert radius) of x about o.
struct Polar {
  double theta = 0.0;
  double t = 0.0;
};

inline Polar polar_coords(const ConvexBody& body, const Point& o, const Point& x) {
  const Point v = x - o;
  return {wrap_angle(std::atan2(v[1], v[0])), distance(body, o, x)};
}

/// Membership of a point with polar coordinates q in a closed piece.
inline bool piece_contains(const CoverPiece& piece, const Polar& q, double tol = 1e-12) {
  if (q.t < piece.t_inner - tol || q.t > piece.t_outer + tol) return false;
  if (piece.is_base_ball()) return true;
  double th = q.theta;
  while (th < piece.theta_start - tol) th += kTwoPi;
  while (th > piece.theta_start + kTwoPi) th -= kTwoPi;
  return th <= piece.theta_end + tol;
}

/// Closed boundary curve of a piece, parametrized by s in [0, 6): inner arc
/// (weight 2), side at theta_end, outer arc backwards (weight 2), side at
/// theta_start. The base ball is its bounding sphere parametrized by angle.
inline Point piece_boundary_point(const ConvexBody& body, const Point& o, const CoverPiece& piece, double s) {
  if (piece.is_base_ball()) return polar_point(body, o, kTwoPi * s / 6.0, piece.t_outer);
  const double span = piece.theta_end - piece.theta_start;
  const double dt = piece.t_outer - piece.t_inner;
  if (s < 2.0) return polar_point(body, o, piece.theta_start + span * s / 2.0, piece.t_inner);
  if (s < 3.0) return polar_point(body, o, piece.theta_end, piece.t_inner + dt * (s - 2.0));
  if (s < 5.0) return polar_point(body, o, piece.theta_end - span * (s - 3.0) / 2.0, piece.t_outer);
  return polar_point(body, o, piece.theta_start, piece.t_outer - dt * (s - 5.0));
}

/// n samples of the piece boundary at s = 6k/n; doubling n gives a superset.
inline std::vector<Point> piece_boundary_samples(const ConvexBody& body, const Point& o, const CoverPiece& piece,
                                                 std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(piece_boundary_point(body, o, piece, 6.0 * static_cast<double>(k) / static_cast<double>(n)));
  return out;
}

/// Maximum pairwise Hilbert distance over n boundary samples of the piece.
inline double piece_diameter(const ConvexBody& body, const Point& o, const CoverPiece& piece, std::size_t n) {
  if (n < 64) throw Error(ErrorCode::InvalidArgument, "piece_diameter needs at least 64 samples");
  const auto pts = piece_boundary_samples(body, o, piece, n);
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(body, pts[i], pts[j]));
  return d;
}

struct MultiplicityReport {
  std::size_t max_count = 0;
  std::vector<std::size_t> histogram;  // histogram[c] = trials meeting exactly c pieces
  std::size_t trials = 0;
  Point worst_center;
};

namespace detail {

struct PieceShape {
  std::vector<Point> samples;
  Point lo, hi;  // Euclidean bounding box of the samples
};

inline bool boxes_overlap(const Point& alo, const Point& ahi, const Point& blo, const Point& bhi) {
  return alo[0] <= bhi[0] && blo[0] <= ahi[0] && alo[1] <= bhi[1] && blo[1] <= ahi[1];
}

/// Distance from x to the sampled boundary, with a local golden-section
/// refinement around the closest sample.
inline double distance_to_piece(const ConvexBody& body, const Point& o, const CoverPiece& piece,
                                const PieceShape& shape, const Point& x) {
  const std::size_t n = shape.samples.size();
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double d = distance(body, x, shape.samples[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  const double h = 6.0 / static_cast<double>(n);
  auto at = [&](double s) {
    s = std::fmod(s + 6.0, 6.0);
    return distance(body, x, piece_boundary_point(body, o, piece, s));
  };
  double lo = static_cast<double>(best) * h - h, hi = static_cast<double>(best) * h + h;
  constexpr double g = 0.6180339887498949;
  double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
  double f1 = at(m1), f2 = at(m2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - g * (hi - lo);
      f1 = at(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + g * (hi - lo);
      f2 = at(m2);
    }
  }
  return std::min({best_d, f1, f2});
}

}  // namespace detail

/// Sampled piece boundaries with Euclidean bounding boxes, for counting the
/// pieces an r-ball meets.
class CoverIndex {
 public:
  explicit CoverIndex(const Cover& cover, std::size_t boundary_samples = 1024) : cover_(&cover) {
    shapes_.reserve(cover.pieces.size());
    for (const auto& piece : cover.pieces) {
      detail::PieceShape sh{piece_boundary_samples(*cover.body, cover.base, piece, boundary_samples), {}, {}};
      sh.lo = sh.hi = sh.samples.front();
      for (const auto& q : sh.samples)
        for (std::size_t i = 0; i < 2; ++i) {
          sh.lo[i] = std::min(sh.lo[i], q[i]);
          sh.hi[i] = std::max(sh.hi[i], q[i]);
        }
      shapes_.push_back(std::move(sh));
    }
  }

  /// Number of pieces P with x in P or with the Hilbert distance from x to
  /// the sampled boundary of P at most r.
  std::size_t count_meeting(const Point& x, double r) const {
    const ConvexBody& body = *cover_->body;
    const Point& o = cover_->base;
    const Polar q = polar_coords(body, o, x);

    const auto ball = ball_boundary(body, x, r, 32);
    Point blo = ball.samples.front(), bhi = ball.samples.front();
    for (const auto& b : ball.samples)
      for (std::size_t i = 0; i < 2; ++i) {
        blo[i] = std::min(blo[i], b[i]);
        bhi[i] = std::max(bhi[i], b[i]);
      }
    for (std::size_t i = 0; i < 2; ++i) {  // pad: the polygon of samples sits inside the ball
      const double pad = 0.1 * (bhi[i] - blo[i]);
      blo[i] -= pad;
      bhi[i] += pad;
    }

    std::size_t count = 0;
    for (std::size_t pi = 0; pi < cover_->pieces.size(); ++pi) {
      const auto& piece = cover_->pieces[pi];
      if (piece.t_outer < q.t - r - 1e-9 || piece.t_inner > q.t + r + 1e-9) continue;
      if (piece_contains(piece, q)) {
        ++count;
        continue;
      }
      if (!detail::boxes_overlap(blo, bhi, shapes_[pi].lo, shapes_[pi].hi)) continue;
      if (detail::distance_to_piece(body, o, piece, shapes_[pi], x) <= r) ++count;
    }
    return count;
  }

 private:
  const Cover* cover_;
  std::vector<detail::PieceShape> shapes_;
};

/// Counts the pieces met by r-balls around random centers. Half the trials
/// are uniform in (angle, radius) up to levels*R; the other half are placed
/// near a random marker of a random level, where three pieces can meet.
inline MultiplicityReport multiplicity_probe(const Cover& cover, double r, std::size_t trials, std::uint64_t seed,
                                             std::size_t boundary_samples = 1024) {
  const double big_r = cover.params.big_r;
  if (!(r > 0.0) || !(big_r > 4.0 * r)) throw Error(ErrorCode::BadRadii, "need R > 4r > 0");
  const CoverIndex index(cover, boundary_samples);

  MultiplicityReport rep;
  rep.trials = trials;
  rep.histogram.assign(cover.pieces.size() + 1, 0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t_max = cover.levels * big_r;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    double theta = 0.0, t = 0.0;
    if (trial % 2 == 0) {
      theta = kTwoPi * unit(rng);
      t = t_max * unit(rng);
    } else {
      const auto& dec = cover.decompositions[static_cast<std::size_t>(unit(rng) * cover.decompositions.size()) %
                                             cover.decompositions.size()];
      const auto ang = detail::unwrapped_angles(dec.markers);
      const std::size_t k = static_cast<std::size_t>(unit(rng) * ang.size()) % ang.size();
      const double gap_next = (k + 1 < ang.size() ? ang[k + 1] : ang.front() + kTwoPi) - ang[k];
      const double gap_prev = ang[k] - (k > 0 ? ang[k - 1] : ang.back() - kTwoPi);
      theta = ang[k] + 0.25 * std::min(gap_next, gap_prev) * (2.0 * unit(rng) - 1.0);
      t = std::max(0.0, dec.level.radius + 2.0 * r * (2.0 * unit(rng) - 1.0));
    }
    const Point x = polar_point(*cover.body, cover.base, theta, t);
    const std::size_t count = index.count_meeting(x, r);
    ++rep.histogram[count];
    if (count > rep.max_count) {
      rep.max_count = count;
      rep.worst_center = x;
    }
  }
  while (rep.histogram.size() > 1 && rep.histogram.back() == 0) rep.histogram.pop_back();
  return rep;
}

/// Audit of a built cover against the 10R diameter bound, the multiplicity
/// bound 3, and the arc conditions of every decomposition.
struct CoverAudit {
  std::vector<double> piece_diameters;
  double max_piece_diameter = 0.0;
  double diameter_bound = 0.0;  // 10R
  MultiplicityReport multiplicity;
  bool all_odd = true;          // every lifted/half arc was cut into an odd count
  bool all_admissible = true;
  bool all_well_formed = true;
  double min_arc_reach = std::numeric_limits<double>::infinity();
  double max_arc_diameter = 0.0;
  double max_grid_step = 0.0;
  double tol_arc = 0.0;

  bool arcs_ok(double big_r) const {
    return min_arc_reach >= big_r - tol_arc && max_arc_diameter <= 4.0 * big_r + tol_arc;
  }
  bool passes(double big_r) const {
    return arcs_ok(big_r) && all_odd && all_admissible && all_well_formed &&
           max_piece_diameter <= diameter_bound + tol_arc && multiplicity.max_count <= 3;
  }
};

namespace detail {

/// Number of level-i arcs between consecutive inherited markers must be odd.
inline bool lifted_counts_odd(const ArcDecomposition& lower, const ArcDecomposition& upper) {
  std::vector<bool> inherited(upper.markers.size(), false);
  for (std::size_t k = 0; k < upper.markers.size(); ++k)
    for (const auto& m : lower.markers)
      if (m.angle == upper.markers[k].angle) inherited[k] = true;
  std::size_t since = 0;
  std::size_t first = upper.markers.size();
  for (std::size_t k = 0; k < upper.markers.size(); ++k)
    if (inherited[k]) {
      first = k;
      break;
    }
  if (first == upper.markers.size()) return false;
  for (std::size_t step = 1; step <= upper.markers.size(); ++step) {
    const std::size_t k = (first + step) % upper.markers.size();
    ++since;
    if (inherited[k]) {
      if (since % 2 == 0) return false;
      since = 0;
    }
  }
  return true;
}

inline bool half_counts_odd(const ArcDecomposition& dec) {
  // level 1: markers at 0 and pi each bound an odd number of arcs
  std::size_t at_pi = dec.markers.size();
  for (std::size_t k = 0; k < dec.markers.size(); ++k)
    if (dec.markers[k].angle == std::numbers::pi) at_pi = k;
  return at_pi < dec.markers.size() && at_pi % 2 == 1 && (dec.markers.size() - at_pi) % 2 == 1;
}

}  // namespace detail

inline CoverAudit audit_cover(const Cover& cover, double r, std::size_t trials, std::uint64_t seed,
                              std::size_t diameter_samples = 512) {
  const double big_r = cover.params.big_r;
  CoverAudit au;
  au.diameter_bound = 10.0 * big_r;
  au.tol_arc = cover.params.tol_arc();
  for (std::size_t i = 0; i < cover.decompositions.size(); ++i) {
    const auto& dec = cover.decompositions[i];
    au.all_well_formed = au.all_well_formed && markers_well_formed(dec);
    if (i == 0) {
      au.all_odd = au.all_odd && detail::half_counts_odd(dec);
    } else {
      au.all_admissible = au.all_admissible && is_admissible(cover.decompositions[i - 1], dec);
      au.all_odd = au.all_odd && detail::lifted_counts_odd(cover.decompositions[i - 1], dec);
    }
    for (const auto& arc : dec.arcs) {
      au.min_arc_reach = std::min(au.min_arc_reach, arc.reach);
      au.max_arc_diameter = std::max(au.max_arc_diameter, arc.diameter);
      au.max_grid_step = std::max(au.max_grid_step, arc.grid_step);
    }
  }
  for (const auto& piece : cover.pieces) {
    const double d = piece_diameter(*cover.body, cover.base, piece, diameter_samples);
    au.piece_diameters.push_back(d);
    au.max_piece_diameter = std::max(au.max_piece_diameter, d);
  }
  au.multiplicity = multiplicity_probe(cover, r, trials, seed);
  return au;
}

}  // namespace hilbert
