#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hilbert/coarse_props.hpp"

using namespace hilbert;

namespace {

ConvexBody unit_disk() { return validate_body(DiskSpec{Point{0, 0}, 1.0}); }
ConvexBody square() { return validate_body(PolygonSpec{{Point{-1, -1}, Point{1, -1}, Point{1, 1}, Point{-1, 1}}}); }
ConvexBody ellipse21() { return validate_body(EllipsoidSpec{Point{0, 0}, {2.0, 1.0}, 0.0}); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ContractionConstant, ClosedForms) {
  EXPECT_NEAR(contraction_constant(std::log(2.0), std::log(2.0)), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(contraction_constant(1.0, 1.0), 1.0 / (std::exp(1.0) + 1.0), 1e-15);
  EXPECT_LT(contraction_constant(1e-12, 1.0), 1e-12);
  EXPECT_GT(contraction_constant(1e-12, 1.0), 0.0);
}

TEST(ContractionConstant, MonotoneAndBelowOne) {
  for (double big_r : {0.5, 1.0, 3.0}) {
    double prev = 0.0;
    for (double r = 0.05; r < 2 * big_r; r += 0.05) {
      const double d = contraction_constant(r, big_r);
      EXPECT_GT(d, prev);
      EXPECT_LT(d, 1.0);
      EXPECT_GT(contraction_constant(r, big_r), contraction_constant(r, big_r + 0.1));
      prev = d;
    }
  }
}

TEST(ContractionConstant, BadRadii) {
  EXPECT_EQ(code_of([] { contraction_constant(2.0, 1.0); }), ErrorCode::BadRadii);
  EXPECT_EQ(code_of([] { contraction_constant(0.0, 1.0); }), ErrorCode::BadRadii);
  EXPECT_EQ(code_of([] { contraction_constant(0.5, -1.0); }), ErrorCode::BadRadii);
}

TEST(Contract, AffineExamples) {
  EXPECT_LT(dist(contract(Point{0, 0}, 1.0 / 3.0, Point{3, 0}), Point{1, 0}), 1e-15);
  EXPECT_EQ(contract(Point{0.2, 0.7}, 0.4, Point{0.2, 0.7}), (Point{0.2, 0.7}));
  EXPECT_EQ(contract(Point{1, 1}, 0.5, Point{3, 3}), (Point{2, 2}));
}

TEST(VerifyContraction, SpecExamples) {
  const auto disk = unit_disk();
  EXPECT_LE(verify_contraction(disk, Point{0, 0}, 2.0, Point{0, 0}, 1.0, 1000, 1).max_violation, 1e-9);
  EXPECT_DOUBLE_EQ(verify_contraction(disk, Point{0, 0}, 2.0, Point{0, 0}, 1.0, 0).max_violation, -1.0);
  const auto sq = square();
  const Point x = RaySpec(sq, Point{0, 0}, Direction::from_angle(0.8)).at(1.7);
  EXPECT_LE(verify_contraction(sq, Point{0, 0}, 3.0, x, 0.5, 1000, 2).max_violation, 1e-9);
}

TEST(VerifyContraction, BallNotContained) {
  const auto disk = unit_disk();
  const Point x = RaySpec(disk, Point{0, 0}, Direction::from_angle(0.0)).at(1.5);
  EXPECT_EQ(code_of([&] { verify_contraction(disk, Point{0, 0}, 2.0, x, 1.0, 10); }), ErrorCode::BallNotContained);
}

TEST(BallSampler, DrawsInsideTheBall) {
  const auto body = ellipse21();
  const Point c{0.5, 0.3};
  const BallSampler sampler(body, c, 1.5);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) EXPECT_LE(distance(body, c, sampler(rng)), 1.5);
}

TEST(GreedyPacking, SeparationAboveRadiusKeepsOnlyCenter) {
  const auto rep = greedy_packing(unit_disk(), Point{0, 0}, 1.0, 1.0, 2000, 4);
  EXPECT_EQ(rep.count, 1u);
}

TEST(GreedyPacking, WithinBoundAndDeterministic) {
  const auto disk = unit_disk();
  const auto a = greedy_packing(disk, Point{0, 0}, 2.0, 0.25, 5000, 9);
  const auto b = greedy_packing(disk, Point{0, 0}, 2.0, 0.25, 5000, 9);
  EXPECT_NEAR(a.bound, std::pow(contraction_constant(0.25, 2.25), -2.0), 1e-9);
  EXPECT_GE(a.count, 1u);
  EXPECT_LE(static_cast<double>(a.count), a.bound);
  EXPECT_EQ(a.count, b.count);
}

TEST(CoronaProbe, DiskGapShrinksBelowDelta) {
  const std::vector<double> radii{2, 4, 6, 8, 10, 12, 14, 16};
  const auto rep = corona_probe(unit_disk(), Point{0, 0}, 0.1, 1.0, radii, 2000, 8);
  ASSERT_EQ(rep.sup_euclidean_gap.size(), radii.size());
  for (std::size_t k = 1; k < radii.size(); ++k) EXPECT_LT(rep.sup_euclidean_gap[k], rep.sup_euclidean_gap[k - 1]);
  EXPECT_TRUE(rep.below_delta_at_largest_radius());
}

TEST(CoronaProbe, ZeroStepGivesZeroGap) {
  const auto rep = corona_probe(square(), Point{0, 0}, 0.1, 0.0, {2, 8}, 200, 1);
  for (double g : rep.sup_euclidean_gap) EXPECT_EQ(g, 0.0);
}

TEST(CoronaProbe, SquareParallelPairsKeepGapAtBoundedDistance) {
  const auto sq = square();
  const Point o{0, 0}, xi{-0.5, 1}, eta{0.5, 1};
  for (int k = 10; k <= 80; k += 10) {
    const double s = 1.0 - std::pow(0.8, k);
    const Point x = xi * s, y = eta * s;
    EXPECT_GT(distance(sq, o, x), 2.0);
    EXPECT_LE(distance(sq, x, y), std::log(9.0) + 1e-9);
    EXPECT_GT(dist(x, y), 0.1);
  }
}

TEST(FlatBoundaryRayBound, TopEdgeOfSquare) {
  const auto sq = square();
  const double b = flat_boundary_ray_bound(sq, Point{-1, 1}, Point{1, 1}, Point{-0.5, 1}, Point{0.5, 1});
  EXPECT_NEAR(b, std::log(9.0), 1e-14);
  EXPECT_EQ(code_of([&] { flat_boundary_ray_bound(sq, Point{-1, 1}, Point{1, 1}, Point{0, 1}, Point{0, 1}); }),
            ErrorCode::BadOrder);
  EXPECT_EQ(code_of([&] { flat_boundary_ray_bound(sq, Point{-1, 1}, Point{1, -1}, Point{0, 0}, Point{0.5, -0.5}); }),
            ErrorCode::NotOnBoundary);
}

TEST(FlatBoundaryRayBound, BoundsParallelPairs) {
  const auto sq = square();
  const Point o{0, 0}, xi{-0.5, 1}, eta{0.5, 1};
  const double bound = flat_boundary_ray_bound(sq, Point{-1, 1}, Point{1, 1}, xi, eta);
  for (int k = 1; k <= 80; ++k) {
    const double s = 1.0 - std::pow(0.8, k);
    EXPECT_LE(distance(sq, o + xi * s, o + eta * s), bound + 1e-9);
  }
}

TEST(HigsonDefect, ConstantFieldHasNoDefect) {
  const ScalarField f = [](const Point&) { return 2.5; };
  EXPECT_EQ(higson_defect(unit_disk(), Point{0, 0}, f, 1.0, 5.0, 300, 1), 0.0);
}

TEST(HigsonDefect, DiskDefectVanishesWithRadius) {
  const auto disk = unit_disk();
  const auto f = radial_boundary_field(disk, Point{0, 0}, 0);
  const double near = higson_defect(disk, Point{0, 0}, f, 1.0, 2.0, 2000, 3);
  const double far = higson_defect(disk, Point{0, 0}, f, 1.0, 16.0, 2000, 3);
  EXPECT_LT(far, near);
  EXPECT_LT(far, 0.01);
}

TEST(HigsonDefect, SquareFieldKeepsOscillating) {
  const auto sq = square();
  const auto f = radial_boundary_field(sq, Point{0, 0}, 0);
  const Point xi{-0.5, 1}, eta{0.5, 1};
  const double sep = std::abs(f(xi) - f(eta));
  EXPECT_NEAR(sep, 1.0, 1e-12);
  for (int k = 10; k <= 80; k += 10) {
    const double s = 1.0 - std::pow(0.8, k);
    const Point x = xi * s, y = eta * s;
    ASSERT_LE(distance(sq, x, y), std::log(9.0) + 1e-9);
    EXPECT_NEAR(std::abs(f(x) - f(y)), sep, 1e-9);
  }
}
