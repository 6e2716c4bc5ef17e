#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hilbert/convex_domain.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

ConvexBody unit_disk() { return validate_body(DiskSpec{Point{0, 0}, 1.0}); }
ConvexBody square() { return validate_body(PolygonSpec{{Point{-1, -1}, Point{1, -1}, Point{1, 1}, Point{-1, 1}}}); }
ConvexBody ellipse21(double rot = 0.0) { return validate_body(EllipsoidSpec{Point{0, 0}, {2.0, 1.0}, rot}); }

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

TEST(ValidateBody, CanonicalSquare) {
  const auto sq = square();
  EXPECT_EQ(sq.kind(), BodyKind::Polygon);
  EXPECT_EQ(sq.dim(), 2u);
  EXPECT_NEAR(sq.diameter(), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(sq.warnings().empty());
}

TEST(ValidateBody, CollinearVerticesAreNonConvex) {
  EXPECT_EQ(code_of([] { validate_body(PolygonSpec{{Point{0, 0}, Point{2, 0}, Point{1, 0.0}}}); }), ErrorCode::NonConvex);
}

TEST(ValidateBody, ReflexPolygonIsNonConvex) {
  EXPECT_EQ(code_of([] {
              validate_body(PolygonSpec{{Point{0, 0}, Point{2, 0}, Point{1, 0.5}, Point{2, 2}, Point{0, 2}}});
            }),
            ErrorCode::NonConvex);
}

TEST(ValidateBody, QuadrantIsUnbounded) {
  EXPECT_EQ(code_of([] {
              validate_body(PolytopeSpec{{Halfspace{Point{-1, 0}, 0.0}, Halfspace{Point{0, -1}, 0.0}}});
            }),
            ErrorCode::Unbounded);
}

TEST(ValidateBody, DegenerateSlabHasEmptyInterior) {
  EXPECT_EQ(code_of([] {
              validate_body(PolytopeSpec{{Halfspace{Point{1, 0}, 0.0}, Halfspace{Point{-1, 0}, 0.0},
                                          Halfspace{Point{0, 1}, 1.0}, Halfspace{Point{0, -1}, 1.0}}});
            }),
            ErrorCode::EmptyInterior);
}

TEST(ValidateBody, ClockwiseInputIsReversedWithWarning) {
  const auto b = validate_body(PolygonSpec{{Point{-1, 1}, Point{1, 1}, Point{1, -1}, Point{-1, -1}}});
  ASSERT_FALSE(b.warnings().empty());
  const auto& v = b.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    EXPECT_GT(cross(v[(i + 1) % v.size()] - v[i], v[(i + 2) % v.size()] - v[(i + 1) % v.size()]), 0.0);
}

TEST(ValidateBody, NonPositiveAxesRejected) {
  EXPECT_THROW(validate_body(DiskSpec{Point{0, 0}, 0.0}), Error);
  EXPECT_THROW(validate_body(EllipsoidSpec{Point{0, 0}, {1.0, -1.0}, 0.0}), Error);
}

TEST(ValidateBody, CubePolytopeIn3D) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < 3; ++i) {
    Point n(3);
    n[i] = 1.0;
    hs.push_back({n, 1.0});
    hs.push_back({n * -1.0, 1.0});
  }
  const auto cube = validate_body(PolytopeSpec{hs});
  EXPECT_EQ(cube.dim(), 3u);
  EXPECT_EQ(classify(cube, Point{0, 0, 0}), Location::Interior);
  EXPECT_EQ(classify(cube, Point{1, 0, 0}), Location::Boundary);
  EXPECT_NEAR(cube.exit_distance(Point{0, 0, 0}, Point{1, 0, 0}), 1.0, 1e-9);
  EXPECT_FALSE(is_strictly_convex(cube));
}

TEST(Classify, UnitDisk) {
  const auto d = unit_disk();
  EXPECT_EQ(classify(d, Point{0, 0}), Location::Interior);
  EXPECT_EQ(classify(d, Point{1, 0}), Location::Boundary);
  EXPECT_EQ(classify(d, Point{2, 0}), Location::Exterior);
}

TEST(BoundaryHit, SpecExamples) {
  const auto d = unit_disk();
  EXPECT_LT(dist(boundary_hit(d, Point{0, 0}, Direction(Point{1, 0})), Point{1, 0}), 1e-15);
  const auto sq = square();
  EXPECT_LT(dist(boundary_hit(sq, Point{0, 0}, Direction(Point{1, 1})), Point{1, 1}), 1e-14);
  const auto e = ellipse21();
  EXPECT_LT(dist(boundary_hit(e, Point{0, 0}, Direction(Point{1, 0})), Point{2, 0}), 1e-15);
}

TEST(BoundaryHit, ExteriorBaseRejected) {
  const auto d = unit_disk();
  EXPECT_EQ(code_of([&] { boundary_hit(d, Point{1.5, 0}, Direction(Point{1, 0})); }), ErrorCode::ExteriorBase);
  EXPECT_EQ(code_of([&] { boundary_hit(d, Point{1, 0}, Direction(Point{1, 0})); }), ErrorCode::ExteriorBase);
}

TEST(BoundaryHit, PolytopeBisectionMatchesPolygon) {
  const auto sq = square();
  const auto poly = validate_body(PolytopeSpec{{Halfspace{Point{1, 0}, 1.0}, Halfspace{Point{-1, 0}, 1.0},
                                                Halfspace{Point{0, 1}, 1.0}, Halfspace{Point{0, -1}, 1.0}}});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.9, 0.9), ang(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < 200; ++k) {
    const Point p{u(rng), u(rng)};
    const auto dir = Direction::from_angle(ang(rng));
    EXPECT_LT(dist(boundary_hit(sq, p, dir), boundary_hit(poly, p, dir)), 1e-9);
  }
}

TEST(ChordThrough, SpecExamples) {
  const auto sq = square();
  const auto c = chord_through(sq, Point{-0.5, 0}, Point{0.5, 0});
  EXPECT_LT(dist(c.tail, Point{-1, 0}), 1e-15);
  EXPECT_LT(dist(c.head, Point{1, 0}), 1e-15);
  const auto d = unit_disk();
  const auto c2 = chord_through(d, Point{0, 0}, Point{0, 0.5});
  EXPECT_LT(dist(c2.tail, Point{0, -1}), 1e-15);
  EXPECT_LT(dist(c2.head, Point{0, 1}), 1e-15);
  EXPECT_EQ(code_of([&] { chord_through(d, Point{0.1, 0.1}, Point{0.1, 0.1}); }), ErrorCode::CoincidentPoints);
}

TEST(IsStrictlyConvex, ByKind) {
  EXPECT_TRUE(is_strictly_convex(unit_disk()));
  EXPECT_FALSE(is_strictly_convex(square()));
  EXPECT_TRUE(is_strictly_convex(ellipse21()));
}

TEST(LineIntersection, SpecExamples) {
  const auto axes = line_intersection(Point{0, 0}, Direction(Point{1, 0}), Point{0, 0}, Direction(Point{0, 1}));
  ASSERT_TRUE(axes);
  EXPECT_LT(norm(*axes), 1e-15);
  EXPECT_FALSE(line_intersection(Point{0, 0}, Direction(Point{1, 0}), Point{0, 1}, Direction(Point{1, 0})));
  const auto p = line_intersection(Point{0, 0}, Direction(Point{1, 1}), Point{1, 0}, Direction(Point{0, 1}));
  ASSERT_TRUE(p);
  EXPECT_LT(dist(*p, Point{1, 1}), 1e-15);
  EXPECT_EQ(code_of([] {
              line_intersection(Point{0, 0, 0}, Direction(Point{1, 0, 0}), Point{0, 1, 0}, Direction(Point{0, 1, 0}));
            }),
            ErrorCode::DimensionUnsupported);
}

TEST(ExitDistance, AgreesWithIndependentOracles) {
  const std::vector<std::pair<ConvexBody, oracle::Shape>> cases = {
      {unit_disk(), oracle::disk(0, 0, 1)},
      {square(), oracle::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}})},
      {ellipse21(0.4), oracle::ellipse(0, 0, 2, 1, 0.4)},
  };
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  for (const auto& [body, shape] : cases) {
    for (int k = 0; k < 500; ++k) {
      const Point p = oracle::interior_point(shape, body.center(), body.bbox_lo()[0], body.bbox_hi()[0],
                                             body.bbox_lo()[1], body.bbox_hi()[1], rng);
      const auto u = Direction::from_angle(ang(rng));
      const double got = body.exit_distance(p, u.vec());
      EXPECT_NEAR(got, static_cast<double>(oracle::exact_exit(shape, oracle::v2(p), oracle::v2(u.vec()))), 1e-12);
      EXPECT_NEAR(got, static_cast<double>(oracle::bisect_exit(shape, oracle::v2(p), oracle::v2(u.vec()))), 1e-12);
    }
  }
}

TEST(Outline, PolygonUsesVerticesAndDiskIsSampled) {
  EXPECT_EQ(outline(square()).size(), 4u);
  const auto ring = outline(unit_disk(), 32);
  ASSERT_EQ(ring.size(), 32u);
  for (const auto& p : ring) EXPECT_NEAR(norm(p), 1.0, 1e-14);
}
