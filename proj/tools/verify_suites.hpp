#pragma once
// Property suites behind `hilbert verify`. Each suite returns one row per
// invariant with the worst observed defect and the number of samples.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hilbert/asdim_cover.hpp"
#include "hilbert/coarse_props.hpp"
#include "hilbert/convex_domain.hpp"
#include "hilbert/hilbert_metric.hpp"

namespace hilbert::cli {

struct Row {
  std::string suite;
  std::string invariant;
  bool pass = true;
  double worst = 0.0;  // largest observed defect (or the measured value)
  double bound = 0.0;  // the threshold `worst` is compared against
  std::size_t samples = 0;
  std::string note;
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  double tol = 1e-9;
  double big_r = 1.0;
  double small_r = 0.2;
  int levels = 4;
  Point origin;
};

/// Uniform points of the body shrunk by `shrink` toward its center.
class InteriorSampler {
 public:
  InteriorSampler(const ConvexBody& body, double shrink = 0.9) : body_(body), shrink_(shrink) {}

  template <class Rng>
  Point operator()(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Point& lo = body_.bbox_lo();
    const Point& hi = body_.bbox_hi();
    while (true) {
      Point q(body_.dim());
      for (std::size_t i = 0; i < q.dim(); ++i) q[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
      if (!is_interior(body_, q)) continue;
      const Point p = body_.center() + (q - body_.center()) * shrink_;
      if (is_interior(body_, p)) return p;
    }
  }

 private:
  const ConvexBody& body_;
  double shrink_;
};

template <class Rng>
Direction random_direction(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    Point v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = g(rng);
    if (norm(v) > 1e-6) return Direction(v);
  }
}

namespace detail {

inline Row make_row(const std::string& suite, const std::string& name, double worst, double bound, std::size_t n,
                    std::string note = {}) {
  return {suite, name, worst <= bound, worst, bound, n, std::move(note)};
}

/// Four ordered points on the x-axis and their image on a second line under
/// a central (or parallel) projection; returns the log cross-ratios.
template <class Rng>
bool projected_cross_ratios(Rng& rng, bool central, double& lhs, double& rhs) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double xs[4];
  for (double& v : xs) v = -2.0 + 4.0 * unit(rng);
  std::sort(xs, xs + 4);
  if (xs[1] - xs[0] < 1e-3 || xs[2] - xs[1] < 1e-3 || xs[3] - xs[2] < 1e-3) return false;
  const Point a[4] = {Point{xs[0], 0.0}, Point{xs[1], 0.0}, Point{xs[2], 0.0}, Point{xs[3], 0.0}};
  const Point p{-1.0 + 2.0 * unit(rng), 3.0 + 3.0 * unit(rng)};
  const Direction par = Direction::from_angle(0.3 + 2.5 * unit(rng));
  const Point q0{-1.0 + 2.0 * unit(rng), 0.5 + 1.5 * unit(rng)};
  const Direction l2 = Direction::from_angle(-0.6 + 1.2 * unit(rng));
  Point b[4];
  for (int i = 0; i < 4; ++i) {
    const Direction ray = central ? Direction(a[i] - p) : par;
    const auto hit = line_intersection(a[i], ray, q0, l2);
    if (!hit) return false;
    b[i] = *hit;
  }
  for (int i = 0; i < 3; ++i)
    if (dot(b[i + 1] - b[i], b[3] - b[0]) <= 1e-6) return false;  // order flips through infinity
  lhs = std::log(cross_ratio(a[1], a[2], Chord{a[0], a[3]}));
  rhs = std::log(cross_ratio(b[1], b[2], Chord{b[0], b[3]}));
  return true;
}

}  // namespace detail

inline std::vector<Row> metric_suite(const ConvexBody& body, const SuiteConfig& cfg) {
  const std::string s = "metric";
  std::vector<Row> rows;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const InteriorSampler sample(body);
  const std::size_t n = cfg.samples;

  double sym = 0.0, tri = 0.0, geo = 0.0, conv = 0.0, iso = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point x = sample(rng), y = sample(rng), z = sample(rng);
    sym = std::max(sym, std::abs(distance(body, x, y) - distance(body, y, x)));
    tri = std::max(tri, distance(body, x, z) - distance(body, x, y) - distance(body, y, z));
    if (dist(x, y) > 1e-9) geo = std::max(geo, geodesic_defect(body, x, y, 0.02 + 0.96 * unit(rng)));
    const Point w = lerp(x, y, unit(rng));
    conv = std::max(conv, distance(body, z, w) - std::max(distance(body, z, x), distance(body, z, y)));
    const RaySpec ray(body, x, random_direction(body.dim(), rng));
    double t0 = 6.0 * unit(rng), t1 = 6.0 * unit(rng);
    if (t0 > t1) std::swap(t0, t1);
    iso = std::max(iso, std::abs(distance(body, ray.at(t0), ray.at(t1)) - (t1 - t0)));
  }
  rows.push_back(detail::make_row(s, "symmetry", sym, 1e-12, n));
  rows.push_back(detail::make_row(s, "triangle_inequality", std::max(tri, 0.0), cfg.tol, n));
  rows.push_back(detail::make_row(s, "segment_geodesic_defect", geo, cfg.tol, n));
  rows.push_back(detail::make_row(s, "ball_convexity", std::max(conv, 0.0), cfg.tol, n));
  rows.push_back(detail::make_row(s, "ray_isometry", iso, cfg.tol, n));

  if (body.dim() == 2) {
    const std::size_t balls = std::max<std::size_t>(1, n / 50);
    double worst_turn = 0.0;
    for (std::size_t k = 0; k < balls; ++k) {
      const auto bb = ball_boundary(body, sample(rng), 0.5 + 3.5 * unit(rng), 64);
      worst_turn = std::max(worst_turn, -min_turn(bb.samples));
    }
    rows.push_back(detail::make_row(s, "ball_boundary_euclidean_convex", std::max(worst_turn, 0.0), cfg.tol, balls,
                                    "worst = most negative normalized turn"));

    double conc = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < n && used < n; ++k) {
      const Point o = sample(rng), a2 = sample(rng);
      if (dist(o, a2) < 1e-3) continue;
      const double t = distance(body, o, a2);
      const Point b2 = RaySpec(body, o, random_direction(2, rng)).at(t);
      const Point va = a2 - o, vb = b2 - o;
      if (std::abs(cross(va, vb)) < 1e-3 * norm(va) * norm(vb)) continue;
      if (std::abs(distance(body, o, b2) - t) > 1e-9) continue;
      conc = std::max(conc, concurrency_defect(body, o, a2, b2).defect);
      ++used;
    }
    rows.push_back(detail::make_row(s, "concurrency_defect", conc, 1e-7, used));
  }

  double proj = 0.0;
  std::size_t done = 0;
  for (std::size_t k = 0; done < n && k < 20 * n; ++k) {
    double lhs = 0.0, rhs = 0.0;
    if (!detail::projected_cross_ratios(rng, k % 2 == 0, lhs, rhs)) continue;
    proj = std::max(proj, std::abs(lhs - rhs));
    ++done;
  }
  rows.push_back(detail::make_row(s, "cross_ratio_projective_invariance", proj, cfg.tol, done,
                                  "log cross-ratio; central and parallel projections alternate"));

  if (body.kind() == BodyKind::Disk) {
    const Point c = body.center();
    const double rad = 0.5 * body.diameter();
    double worst = 0.0;
    for (int k = 1; k <= 9; ++k) {
      const double tau = 0.1 * k;
      const Point q = c + Point{tau * rad, 0.0};
      worst = std::max(worst, std::abs(distance(body, c, q) - std::log((1.0 + tau) / (1.0 - tau))));
    }
    rows.push_back(detail::make_row(s, "klein_model_identity", worst, 1e-12, 9));
  }
  return rows;
}

inline std::vector<Row> coarse_suite(const ConvexBody& body, const SuiteConfig& cfg) {
  const std::string s = "coarse";
  std::vector<Row> rows;
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Point c = cfg.origin;

  const double pairs[3][2] = {{2.0, 1.0}, {3.0, 0.5}, {1.0, 1.0}};
  for (const auto& pr : pairs) {
    const double big_r = pr[0], r = pr[1];
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2; ++k) {
      const double off = (big_r - r) * unit(rng);
      const Point x = off > 0.0 ? RaySpec(body, c, random_direction(body.dim(), rng)).at(off) : c;
      worst = std::max(worst, verify_contraction(body, c, big_r, x, r, cfg.samples, rng()).max_violation);
    }
    char name[64];
    std::snprintf(name, sizeof name, "contraction_R%g_r%g", big_r, r);
    rows.push_back(detail::make_row(s, name, worst, cfg.tol, 2 * cfg.samples));
  }

  const double packs[2][2] = {{2.0, 0.25}, {3.0, 0.5}};
  for (const auto& pk : packs) {
    const auto rep = greedy_packing(body, c, pk[0], pk[1], cfg.samples, rng());
    char name[64];
    std::snprintf(name, sizeof name, "packing_R%g_eps%g", pk[0], pk[1]);
    rows.push_back(detail::make_row(s, name, static_cast<double>(rep.count), rep.bound, cfg.samples,
                                    "worst = greedy count, bound = 1/D^n"));
  }

  // Sets with Euclidean clearance eps from the boundary have finite diameter.
  const double eps = 0.05 * body.diameter();
  std::vector<Point> cleared;
  const InteriorSampler sample(body, 1.0);
  const std::size_t want = std::min<std::size_t>(cfg.samples, 200);
  for (std::size_t k = 0; cleared.size() < want && k < 100 * want; ++k) {
    const Point p = sample(rng);
    if (body.signed_gap(p) <= -eps) cleared.push_back(p);
  }
  double diam = 0.0;
  for (std::size_t i = 0; i < cleared.size(); ++i)
    for (std::size_t j = i + 1; j < cleared.size(); ++j) diam = std::max(diam, distance(body, cleared[i], cleared[j]));
  const double ratio = body.diameter() / eps;
  rows.push_back(detail::make_row(s, "cleared_set_finite_diameter", diam, 2.0 * std::log(ratio * (1.0 + ratio)),
                                  cleared.size()));
  return rows;
}

namespace detail {

/// Longest boundary edge of a planar body with flat facets.
inline bool longest_edge(const ConvexBody& body, Point& alpha, Point& beta) {
  const auto& v = body.vertices();
  if (body.dim() != 2 || v.size() < 3) return false;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % v.size()];
    if (dist(p, q) > best) {
      best = dist(p, q);
      alpha = p;
      beta = q;
    }
  }
  return true;
}

}  // namespace detail

inline std::vector<Row> corona_suite(const ConvexBody& body, const SuiteConfig& cfg) {
  const std::string s = "corona";
  std::vector<Row> rows;
  const bool strict = is_strictly_convex(body);
  rows.push_back({s, "strictly_convex", true, strict ? 1.0 : 0.0, 0.0, 0, strict ? "true" : "false"});
  if (body.dim() != 2) {
    rows.push_back({s, "planar_probes", true, 0.0, 0.0, 0, "skipped: probes are planar"});
    return rows;
  }
  const Point o = cfg.origin;
  const std::vector<double> radii{2, 4, 6, 8, 10, 12, 14, 16};
  const double delta = 0.1;

  if (strict) {
    const auto rep = corona_probe(body, o, delta, 1.0, radii, cfg.samples, cfg.seed + 2);
    rows.push_back(detail::make_row(s, "bounded_pairs_gap_at_radius_16", rep.sup_euclidean_gap.back(), delta,
                                    cfg.samples * radii.size(), "strict bound: gap < delta"));
    rows.back().pass = rep.below_delta_at_largest_radius();
    const auto f = radial_boundary_field(body, o, 0);
    const double h = higson_defect(body, o, f, 1.0, radii.back(), cfg.samples, cfg.seed + 3);
    rows.push_back(detail::make_row(s, "higson_defect_at_radius_16", h, delta, cfg.samples));
    return rows;
  }

  Point alpha, beta;
  if (!detail::longest_edge(body, alpha, beta)) {
    rows.push_back({s, "flat_edge", true, 0.0, 0.0, 0, "skipped: no planar facet list"});
    return rows;
  }
  const Point xi = lerp(alpha, beta, 0.25), eta = lerp(alpha, beta, 0.75);
  const double bound = flat_boundary_ray_bound(body, alpha, beta, xi, eta);
  std::mt19937_64 rng(cfg.seed + 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const RaySpec to_xi(body, o, Direction(xi - o));
  const Point edge = (beta - alpha) * (1.0 / dist(alpha, beta));
  auto f = [&](const Point& x) {
    const Direction u(x - o);
    return dot(o + u.vec() * body.exit_distance(o, u.vec()), edge);
  };
  const double sep = std::abs(dot(xi, edge) - dot(eta, edge));
  double worst = -std::numeric_limits<double>::infinity();
  double min_osc = std::numeric_limits<double>::infinity();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const double t = 20.0 * (k + unit(rng)) / static_cast<double>(cfg.samples);
    const Point x = to_xi.at(std::max(t, 1e-6));
    const double lam = dist(x, o) / dist(xi, o);
    const Point y = o + (eta - o) * lam;
    worst = std::max(worst, distance(body, x, y) - bound);
    min_osc = std::min(min_osc, std::abs(f(x) - f(y)));
    if (t >= 2.0) min_gap = std::min(min_gap, dist(x, y));
  }
  rows.push_back(detail::make_row(s, "flat_edge_parallel_pairs_within_ray_bound", worst, cfg.tol, cfg.samples,
                                  "worst = max d(x,y) - log bound; radii up to 20"));
  rows.push_back({s, "flat_edge_field_separates_pairs", min_osc >= 0.5 * sep, min_osc, 0.5 * sep, cfg.samples,
                  "worst = min |f(x)-f(y)|, must stay >= bound"});

  rows.push_back({s, "flat_edge_gap_stays_positive", min_gap >= delta, min_gap, delta, cfg.samples,
                  "worst = min |xy| over the pairs with d(o,x) >= 2, must stay >= bound"});
  return rows;
}

inline std::vector<Row> asdim_suite(const ConvexBody& body, const SuiteConfig& cfg) {
  const std::string s = "asdim";
  std::vector<Row> rows;
  if (body.dim() != 2) {
    rows.push_back({s, "cover", true, 0.0, 0.0, 0, "skipped: the cover construction is planar"});
    return rows;
  }
  const Point o = cfg.origin;
  const double big_r = cfg.big_r, r = cfg.small_r;
  CoverParams params;
  params.big_r = big_r;
  const Cover cover = build_cover(body, o, params, cfg.levels);
  const CoverAudit au = audit_cover(cover, r, cfg.samples, cfg.seed + 6);
  const double tol = params.tol_arc();
  char note[128];
  std::snprintf(note, sizeof note, "grid resolution %.6g", au.max_grid_step);
  rows.push_back({s, "arcs_reach_R", au.min_arc_reach >= big_r - tol, au.min_arc_reach, big_r - tol, params.n_arc,
                  std::string("worst = min sampled reach, must stay >= bound; ") + note});
  rows.push_back(detail::make_row(s, "arcs_diameter_4R", au.max_arc_diameter, 4.0 * big_r + tol, params.n_arc, note));
  rows.push_back({s, "odd_arc_counts", au.all_odd, au.all_odd ? 0.0 : 1.0, 0.0, cover.decompositions.size(), {}});
  rows.push_back({s, "admissible", au.all_admissible, au.all_admissible ? 0.0 : 1.0, 0.0, cover.decompositions.size(), {}});
  rows.push_back({s, "markers_alternate", au.all_well_formed, au.all_well_formed ? 0.0 : 1.0, 0.0,
                  cover.decompositions.size(), {}});
  rows.push_back(detail::make_row(s, "piece_diameter_10R", au.max_piece_diameter, 10.0 * big_r + tol,
                                  cover.pieces.size()));
  rows.push_back(detail::make_row(s, "r_multiplicity", static_cast<double>(au.multiplicity.max_count), 3.0,
                                  au.multiplicity.trials));

  std::mt19937_64 rng(cfg.seed + 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = cfg.samples;

  // Distances between equal-parameter points of two rays grow with the parameter.
  double mono = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const RaySpec l1(body, o, random_direction(2, rng)), l2(body, o, random_direction(2, rng));
    double a = 6.0 * unit(rng), b = 6.0 * unit(rng);
    if (a > b) std::swap(a, b);
    if (a <= 0.0) continue;
    mono = std::max(mono, distance(body, l1.at(a), l2.at(a)) - distance(body, l1.at(b), l2.at(b)));
  }
  rows.push_back(detail::make_row(s, "ray_distance_monotone", std::max(mono, 0.0), cfg.tol, n));

  // Rays through r-close points stay 2r-close below the farther point.
  double two_r = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const Point x = RaySpec(body, o, random_direction(2, rng)).at(0.2 + 5.0 * unit(rng));
    Point y = RaySpec(body, x, random_direction(2, rng)).at(r * unit(rng));
    Point xx = x;
    if (distance(body, o, xx) > distance(body, o, y)) std::swap(xx, y);
    if (dist(xx, o) < 1e-9) continue;
    const RaySpec lx(body, o, Direction(xx - o)), ly(body, o, Direction(y - o));
    const double ty = distance(body, o, y);
    for (int j = 1; j <= 20; ++j) {
      const double t = ty * j / 20.0;
      two_r = std::max(two_r, distance(body, lx.at(t), ly.at(t)) - 2.0 * r);
    }
  }
  rows.push_back(detail::make_row(s, "radial_pairs_within_2r", std::max(two_r, 0.0), cfg.tol, n));

  // Angular footprint of an r-ball on the sphere just below its outer edge.
  double foot = 0.0;
  std::size_t balls = 0;
  for (std::size_t k = 0; k < std::max<std::size_t>(1, n / 10); ++k) {
    const double tx = big_r + (cfg.levels - 1) * big_r * unit(rng);
    const Point x = RaySpec(body, o, random_direction(2, rng)).at(tx);
    const int i = static_cast<int>(std::floor((tx + r) / big_r));
    if (i < 1 || tx - r <= 0.0) continue;
    const double ax = std::atan2(x[1] - o[1], x[0] - o[0]);
    double lo = 0.0, hi = 0.0;
    for (const auto& q : ball_boundary(body, x, r, 128).samples) {
      double a = std::atan2(q[1] - o[1], q[0] - o[0]) - ax;
      a = std::remainder(a, 2.0 * std::numbers::pi);
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    std::vector<Point> arc;
    for (int j = 0; j <= 64; ++j) arc.push_back(sphere_point(body, o, ax + lo + (hi - lo) * j / 64.0, i * big_r));
    double d = 0.0;
    for (std::size_t p = 0; p < arc.size(); ++p)
      for (std::size_t q = p + 1; q < arc.size(); ++q) d = std::max(d, distance(body, arc[p], arc[q]));
    foot = std::max(foot, d);
    ++balls;
  }
  rows.push_back(detail::make_row(s, "ball_footprint_4r", foot, 4.0 * r + tol, balls));
  return rows;
}

}  // namespace hilbert::cli
