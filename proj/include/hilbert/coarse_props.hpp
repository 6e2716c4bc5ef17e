#pragma once
// Numerical checks of bounded coarse geometry (the contraction bound and the
// packing count it implies) and of the corona dichotomy for the natural
// boundary: Euclidean gaps of bounded-distance pairs, the flat-edge ray
// bound, and Higson-type oscillation of boundary-continuous fields.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "hilbert/convex_domain.hpp"
#include "hilbert/hilbert_metric.hpp"

namespace hilbert {

/// D = (e^r - 1) / (e^{2R} - 1), the factor by which homothety about the
/// center of B(x,r) squeezes any ball B_R containing it into B(x,r).
inline double contraction_constant(double r, double big_r) {
  if (!(r > 0.0) || !(big_r > 0.0) || !(r < 2.0 * big_r))
    throw Error(ErrorCode::BadRadii, "need 0 < r < 2R");
  return std::expm1(r) / std::expm1(2.0 * big_r);
}

/// y -> x + D (y - x)
inline Point contract(const Point& x, double factor, const Point& y) { return x + (y - x) * factor; }

/// Uniform rejection sampler for a closed Hilbert ball. In the plane the
/// proposal box is the bounding box of the ball's boundary samples (padded);
/// otherwise the body's bounding box is used.
class BallSampler {
 public:
  BallSampler(const ConvexBody& body, Point center, double radius) : body_(body), center_(std::move(center)), radius_(radius) {
    if (!is_interior(body, center_)) throw Error(ErrorCode::ExteriorPoint, "ball center must be interior");
    if (body.dim() == 2) {
      const auto ball = ball_boundary(body, center_, radius_, 128);
      lo_ = hi_ = ball.samples.front();
      for (const auto& p : ball.samples)
        for (std::size_t i = 0; i < 2; ++i) {
          lo_[i] = std::min(lo_[i], p[i]);
          hi_[i] = std::max(hi_[i], p[i]);
        }
      for (std::size_t i = 0; i < 2; ++i) {
        const double pad = 0.02 * (hi_[i] - lo_[i]);
        lo_[i] = std::max(lo_[i] - pad, body.bbox_lo()[i]);
        hi_[i] = std::min(hi_[i] + pad, body.bbox_hi()[i]);
      }
    } else {
      lo_ = body.bbox_lo();
      hi_ = body.bbox_hi();
    }
  }

  template <class Rng>
  Point operator()(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t attempt = 0; attempt < 1'000'000; ++attempt) {
      Point p(body_.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) p[i] = lo_[i] + (hi_[i] - lo_[i]) * unit(rng);
      if (is_interior(body_, p) && distance(body_, center_, p) <= radius_) return p;
    }
    throw Error(ErrorCode::InvalidArgument, "ball rejection sampler did not accept a point");
  }

 private:
  const ConvexBody& body_;
  Point center_;
  double radius_;
  Point lo_, hi_;
};

struct ContractionReport {
  double max_violation = 0.0;
  double factor = 0.0;  // D
  std::size_t samples = 0;
};

/// max over sampled y in B(ball_center, R) of d(x, x + D (y - x)) - r.
inline ContractionReport verify_contraction(const ConvexBody& body, const Point& ball_center, double big_r,
                                            const Point& x, double r, std::size_t samples, std::uint64_t seed = 0) {
  if (distance(body, ball_center, x) + r > big_r + 1e-9)
    throw Error(ErrorCode::BallNotContained, "B(x,r) is not inside B(center,R)");
  ContractionReport rep;
  rep.factor = contraction_constant(r, big_r);
  rep.max_violation = -r;  // y = x
  rep.samples = samples;
  if (samples == 0) return rep;
  const BallSampler sampler(body, ball_center, big_r);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Point y = sampler(rng);
    rep.max_violation = std::max(rep.max_violation, distance(body, x, contract(x, rep.factor, y)) - r);
  }
  return rep;
}

struct PackingReport {
  Point center;
  double radius = 0.0;
  double epsilon = 0.0;
  std::size_t count = 0;
  double bound = 0.0;  // 1 / D^n
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Greedy 2-epsilon-separated subset of `trials` uniform samples of B(center,R),
/// compared against 1/D^n with D = contraction_constant(epsilon, R + epsilon).
inline PackingReport greedy_packing(const ConvexBody& body, const Point& center, double big_r, double epsilon,
                                    std::size_t trials, std::uint64_t seed) {
  if (!(big_r > 0.0) || !(epsilon > 0.0)) throw Error(ErrorCode::BadRadii, "R and epsilon must be positive");
  PackingReport rep{center, big_r, epsilon, 0, 0.0, trials, seed};
  rep.bound = std::pow(contraction_constant(epsilon, big_r + epsilon), -static_cast<double>(body.dim()));
  const BallSampler sampler(body, center, big_r);
  std::mt19937_64 rng(seed);
  std::vector<Point> kept{center};
  for (std::size_t k = 0; k < trials; ++k) {
    const Point y = sampler(rng);
    const bool separated = std::all_of(kept.begin(), kept.end(),
                                       [&](const Point& q) { return distance(body, q, y) > 2.0 * epsilon; });
    if (separated) kept.push_back(y);
  }
  rep.count = kept.size();
  return rep;
}

struct CoronaProbeReport {
  double delta = 0.0;
  double c = 0.0;
  std::vector<double> probe_radii;
  std::vector<double> sup_euclidean_gap;

  /// The eventual-smallness check uses the largest probe radius only.
  bool below_delta_at_largest_radius() const {
    return !sup_euclidean_gap.empty() && sup_euclidean_gap.back() < delta;
  }
};

/// Angular window for sampling base points, counterclockwise from lo to hi.
struct AngleWindow {
  double lo = 0.0;
  double hi = 2.0 * std::numbers::pi;
};

/// For each probe radius rho, samples x with d(o,x) in [rho, rho+1] and
/// y = x moved by a random Hilbert step <= C in a random direction, and
/// records the supremum of the Euclidean gap |x y|.
inline CoronaProbeReport corona_probe(const ConvexBody& body, const Point& o, double delta, double c,
                                      const std::vector<double>& radii, std::size_t samples, std::uint64_t seed,
                                      AngleWindow window = {}) {
  if (body.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "corona probe samples planar directions");
  if (c < 0.0) throw Error(ErrorCode::InvalidArgument, "C must be >= 0");
  CoronaProbeReport rep{delta, c, radii, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double rho : radii) {
    double sup = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      const double theta = window.lo + (window.hi - window.lo) * unit(rng);
      const double t = rho + unit(rng);
      const Point x = RaySpec(body, o, Direction::from_angle(theta)).at(t);
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      const double step = c * unit(rng);
      const Point y = RaySpec(body, x, Direction::from_angle(phi)).at(step);
      sup = std::max(sup, dist(x, y));
    }
    rep.sup_euclidean_gap.push_back(sup);
  }
  return rep;
}

/// log(|xi beta| |eta alpha| / (|xi alpha| |eta beta|)) for a boundary
/// segment [alpha, beta] and points xi, eta strictly inside it with
/// |alpha xi| < |alpha eta|. Bounds d(x,y) for x on [o,xi), y on [o,eta)
/// with xy parallel to alpha beta.
inline double flat_boundary_ray_bound(const ConvexBody& body, const Point& alpha, const Point& beta, const Point& xi,
                                      const Point& eta) {
  constexpr int kChecks = 33;
  for (int k = 0; k < kChecks; ++k) {
    const Point p = lerp(alpha, beta, static_cast<double>(k) / (kChecks - 1));
    if (classify(body, p) != Location::Boundary) throw Error(ErrorCode::NotOnBoundary, "[alpha,beta] leaves the boundary");
  }
  const Point w = beta - alpha;
  const double len = norm(w);
  if (!(len > kPointTol)) throw Error(ErrorCode::NotOnBoundary, "alpha and beta coincide");
  auto along = [&](const Point& p) {
    const double s = dot(p - alpha, w) / len;
    if (dist(p, alpha + w * (s / len)) > body.boundary_tol() + kPointTol)
      throw Error(ErrorCode::NotOnBoundary, "point is off the boundary segment");
    return s;
  };
  const double sxi = along(xi), seta = along(eta);
  if (!(sxi > 0.0 && sxi < seta && seta < len)) throw Error(ErrorCode::BadOrder, "need alpha, xi, eta, beta in order");
  return std::log((dist(xi, beta) * dist(eta, alpha)) / (dist(xi, alpha) * dist(eta, beta)));
}

using ScalarField = std::function<double(const Point&)>;

/// f(x) = coordinate `axis` of the boundary point hit by the ray from o
/// through x. Continuous on the closure away from o.
inline ScalarField radial_boundary_field(const ConvexBody& body, const Point& o, std::size_t axis) {
  return [&body, o, axis](const Point& x) {
    if (dist(x, o) <= kPointTol) return 0.0;
    const Direction u(x - o);
    return (o + u.vec() * body.exit_distance(o, u.vec()))[axis];
  };
}

/// sup of |f(x) - f(y)| over sampled pairs with d(o,x) in [rho, rho+shell]
/// and d(x,y) <= C.
inline double higson_defect(const ConvexBody& body, const Point& o, const ScalarField& f, double c, double rho,
                            std::size_t samples, std::uint64_t seed, double shell = 1.0) {
  if (body.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "higson probe samples planar directions");
  if (rho < 0.0 || c < 0.0) throw Error(ErrorCode::InvalidArgument, "rho and C must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double sup = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const double t = rho + shell * unit(rng);
    const Point x = t > 0.0 ? RaySpec(body, o, Direction::from_angle(theta)).at(t) : o;
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const Point y = RaySpec(body, x, Direction::from_angle(phi)).at(c * unit(rng));
    sup = std::max(sup, std::abs(f(x) - f(y)));
  }
  return sup;
}

}  // namespace hilbert
