#pragma once
// Small fixed-capacity Euclidean vectors, directions and the library error type.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

inline constexpr std::size_t kMaxDim = 8;

/// Relative boundary tolerance (multiplied by the body's Euclidean diameter).
inline constexpr double kBoundaryTol = 1e-10;
/// Absolute point-coincidence tolerance.
inline constexpr double kPointTol = 1e-12;
/// Cross-product threshold below which two 2-D directions count as parallel.
inline constexpr double kParallelTol = 1e-12;

enum class ErrorCode {
  InvalidArgument,
  NonConvex,
  Unbounded,
  EmptyInterior,
  ExteriorBase,
  ExteriorPoint,
  CoincidentPoints,
  DimensionUnsupported,
  OffChord,
  BadOrder,
  NegativeParameter,
  CollinearInput,
  DistanceMismatch,
  BadRadii,
  BallNotContained,
  NotOnBoundary,
  DegenerateRay,
  Star1Violation,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::ExteriorBase: return "ExteriorBase";
    case ErrorCode::ExteriorPoint: return "ExteriorPoint";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::OffChord: return "OffChord";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::NegativeParameter: return "NegativeParameter";
    case ErrorCode::CollinearInput: return "CollinearInput";
    case ErrorCode::DistanceMismatch: return "DistanceMismatch";
    case ErrorCode::BadRadii: return "BadRadii";
    case ErrorCode::BallNotContained: return "BallNotContained";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::DegenerateRay: return "DegenerateRay";
    case ErrorCode::Star1Violation: return "Star1Violation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point (or displacement) in R^n with n <= kMaxDim, stored inline.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim) : dim_(dim) {
    if (dim > kMaxDim) throw Error(ErrorCode::DimensionUnsupported, "dimension exceeds kMaxDim");
  }
  Point(std::initializer_list<double> xs) : Point(xs.size()) {
    std::copy(xs.begin(), xs.end(), c_.begin());
  }
  static Point from(std::span<const double> xs) {
    Point p(xs.size());
    std::copy(xs.begin(), xs.end(), p.c_.begin());
    return p;
  }

  std::size_t dim() const noexcept { return dim_; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

  double x() const noexcept { return c_[0]; }
  double y() const noexcept { return c_[1]; }

  bool finite() const noexcept {
    return std::all_of(c_.begin(), c_.begin() + dim_, [](double v) { return std::isfinite(v); });
  }

  Point& operator+=(const Point& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
  friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
  friend Point operator*(Point a, double s) noexcept { return a *= s; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }
  friend Point operator-(Point a) noexcept { return a *= -1.0; }

  friend bool operator==(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    return std::equal(a.c_.begin(), a.c_.begin() + a.dim_, b.c_.begin());
  }

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

inline double dot(const Point& a, const Point& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a) noexcept {
  if (a.dim() == 2) return std::hypot(a[0], a[1]);
  return std::sqrt(dot(a, a));
}

inline double dist(const Point& a, const Point& b) noexcept { return norm(a - b); }

/// z-component of the 2-D cross product.
inline double cross(const Point& a, const Point& b) noexcept { return a[0] * b[1] - a[1] * b[0]; }

inline Point lerp(const Point& a, const Point& b, double t) noexcept { return a + (b - a) * t; }

/// Unit vector. Construction normalizes; the stored norm is within 1e-12 of 1.
class Direction {
 public:
  explicit Direction(const Point& v) : v_(v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::InvalidArgument, "zero or non-finite direction");
    v_ *= 1.0 / n;
  }
  static Direction from_angle(double theta) { return Direction(Point{std::cos(theta), std::sin(theta)}); }

  const Point& vec() const noexcept { return v_; }
  std::size_t dim() const noexcept { return v_.dim(); }
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  Direction operator-() const noexcept {
    Direction d = *this;
    d.v_ *= -1.0;
    return d;
  }

 private:
  Point v_;
};

inline Point operator*(double s, const Direction& d) noexcept { return d.vec() * s; }

inline double wrap_angle(double theta) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace hilbert
