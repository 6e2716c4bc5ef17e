#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hilbert/asdim_cover.hpp"

using namespace hilbert;

namespace {

ConvexBody unit_disk() { return validate_body(DiskSpec{Point{0, 0}, 1.0}); }
ConvexBody square() { return validate_body(PolygonSpec{{Point{-1, -1}, Point{1, -1}, Point{1, 1}, Point{-1, 1}}}); }
ConvexBody ellipse21() { return validate_body(EllipsoidSpec{Point{0, 0}, {2.0, 1.0}, 0.0}); }
ConvexBody heptagon() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  std::vector<double> a(7);
  for (double& v : a) v = u(rng);
  std::sort(a.begin(), a.end());
  PolygonSpec spec;
  for (double v : a) spec.vertices.push_back(Point{std::cos(v), std::sin(v)});
  return validate_body(spec);
}

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

CoverParams params(double big_r) {
  CoverParams p;
  p.big_r = big_r;
  return p;
}

}  // namespace

TEST(ProjectBetweenLevels, DiskExamples) {
  const auto disk = unit_disk();
  const Point o{0, 0}, x{0.5, 0};
  EXPECT_LT(dist(project_between_levels(disk, o, x, std::log(3.0)), x), 1e-15);
  EXPECT_LT(dist(project_between_levels(disk, o, x, 2 * std::log(3.0)), Point{0.8, 0}), 1e-15);
  const Point y{-0.3, 0.4};
  const Point up = project_between_levels(disk, o, y, 3.0);
  EXPECT_NEAR(std::atan2(up[1], up[0]), std::atan2(y[1], y[0]), 1e-12);
  EXPECT_EQ(code_of([&] { project_between_levels(disk, o, o, 1.0); }), ErrorCode::DegenerateRay);
}

TEST(FirstMarker, DiskStepIsRotationInvariant) {
  const auto disk = unit_disk();
  const SphereLevel level(disk, Point{0, 0}, 2, 1.0);
  const auto ref = first_marker(level, 0.0, 3.0, 1.0);
  ASSERT_TRUE(ref);
  for (double start : {0.7, 2.0, 4.4}) {
    const auto got = first_marker(level, start, start + 3.0, 1.0);
    ASSERT_TRUE(got);
    EXPECT_NEAR(*got - start, *ref, 1e-9);
  }
}

TEST(FirstMarker, RootAndNotReached) {
  for (const auto& body : {square(), ellipse21(), heptagon()}) {
    const SphereLevel level(body, body.center(), 2, 1.0);
    const auto th = first_marker(level, 0.3, 0.3 + std::numbers::pi, 1.0);
    ASSERT_TRUE(th);
    EXPECT_NEAR(distance(body, level.at(0.3), level.at(*th)), 1.0, 1e-8);
    EXPECT_FALSE(first_marker(level, 0.3, 0.3 + std::numbers::pi, 50.0));
  }
}

TEST(DecomposeArc, SingleArcWhenCrossingIsAtTheEnd) {
  const auto disk = unit_disk();
  const SphereLevel level(disk, Point{0, 0}, 2, 1.0);
  // end angle at which d(start, end) = R, by bisection
  double lo = 0.0, hi = std::numbers::pi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (distance(disk, level.at(0.0), level.at(mid)) < 1.0 ? lo : hi) = mid;
  }
  EXPECT_TRUE(decompose_arc(level, 0.0, hi + 1e-12, 1.0).empty());
}

TEST(DecomposeArc, Star1ViolationWhenArcIsTooShort) {
  const auto disk = unit_disk();
  const SphereLevel level(disk, Point{0, 0}, 1, 1.0);
  EXPECT_EQ(code_of([&] { decompose_arc(level, 0.0, 0.1, 1.0); }), ErrorCode::Star1Violation);
}

TEST(DecomposeArc, OddCountAndArcConditionsOnRandomArcs) {
  const std::vector<ConvexBody> bodies{unit_disk(), square(), ellipse21(), heptagon()};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const auto& body = bodies[k % bodies.size()];
    const double big_r = 0.5 + unit(rng);
    const SphereLevel level(body, body.center(), 1 + static_cast<int>(4 * unit(rng)), big_r);
    const double start = 2 * std::numbers::pi * unit(rng);
    const double end = start + 0.2 + (2 * std::numbers::pi - 0.2) * unit(rng);
    std::vector<double> cuts;
    try {
      cuts = decompose_arc(level, start, end, big_r, 128);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::Star1Violation);
      continue;
    }
    ++checked;
    EXPECT_EQ((cuts.size() + 1) % 2, 1u);
    std::vector<double> ends{start};
    ends.insert(ends.end(), cuts.begin(), cuts.end());
    ends.push_back(end);
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      ASSERT_LT(ends[i], ends[i + 1]);
      const auto au = audit_arc(level, ends[i], ends[i + 1], 128);
      EXPECT_GE(au.reach, big_r - 1e-6 * big_r);
      EXPECT_LE(au.diameter, 4 * big_r + 1e-6 * big_r);
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(InitialDecomposition, DiskHalvesAreRotations) {
  const auto disk = unit_disk();
  const auto dec = initial_decomposition(disk, Point{0, 0}, params(1.0));
  EXPECT_TRUE(markers_well_formed(dec));
  const auto& m = dec.markers;
  std::size_t at_pi = 0;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k].angle == std::numbers::pi) at_pi = k;
  ASSERT_EQ(m.size(), 2 * at_pi);
  for (std::size_t k = 0; k < at_pi; ++k) EXPECT_NEAR(m[k + at_pi].angle, m[k].angle + std::numbers::pi, 1e-9);
  // interior arcs are whole multiples of the marching step
  const double step = *first_marker(dec.level, 0.0, std::numbers::pi, 1.0);
  for (std::size_t k = 0; k + 1 < at_pi; ++k) {
    const double w = (m[k + 1].angle - m[k].angle) / step;
    EXPECT_NEAR(w, std::round(w), 1e-6);
  }
}

TEST(InitialDecomposition, EvenCountAndArcBounds) {
  for (const auto& body : {unit_disk(), square(), ellipse21(), heptagon()}) {
    const auto dec = initial_decomposition(body, body.center(), params(1.0));
    EXPECT_EQ(dec.markers.size() % 2, 0u);
    EXPECT_EQ(dec.markers.front().angle, 0.0);
    EXPECT_EQ(dec.markers.front().kind, MarkerKind::X);
    ASSERT_EQ(dec.arcs.size(), dec.markers.size());
    for (const auto& arc : dec.arcs) {
      EXPECT_LE(arc.diameter, 4.0 + 1e-6);
      EXPECT_GE(arc.reach, 1.0 - 1e-6);
    }
  }
}

TEST(DecomposeArc, ShortArcFailsLoudly) {
  const auto disk = unit_disk();
  const SphereLevel level(disk, Point{0, 0}, 1, 5.0);
  EXPECT_EQ(code_of([&] { decompose_arc(level, 0.0, 1e-3, 5.0); }), ErrorCode::Star1Violation);
}

TEST(RefineLevel, LiftsMarkersExactlyWithSwappedKinds) {
  for (const auto& body : {unit_disk(), square(), ellipse21()}) {
    const auto p = params(1.0);
    auto dec = initial_decomposition(body, body.center(), p);
    for (int i = 2; i <= 4; ++i) {
      const auto next = refine_level(body, body.center(), dec, p);
      EXPECT_EQ(next.level.index, i);
      EXPECT_TRUE(markers_well_formed(next));
      EXPECT_TRUE(is_admissible(dec, next));
      EXPECT_GE(next.markers.size(), dec.markers.size());
      // x^{i}_0 is the lift of y^{i-1}_0
      EXPECT_EQ(next.markers.front().angle, dec.markers[1].angle);
      for (const auto& arc : next.arcs) {
        EXPECT_LE(arc.diameter, 4.0 + 1e-6);
        EXPECT_GE(arc.reach, 1.0 - 1e-6);
      }
      dec = next;
    }
  }
}

TEST(RefineLevel, NewCutsAreNotAlwaysInherited) {
  // Lifted arcs that get re-cut create X-markers at fresh angles.
  const auto disk = unit_disk();
  const auto p = params(1.0);
  const auto d1 = initial_decomposition(disk, Point{0, 0}, p);
  const auto d2 = refine_level(disk, Point{0, 0}, d1, p);
  const auto d3 = refine_level(disk, Point{0, 0}, d2, p);
  EXPECT_GT(d3.markers.size(), d2.markers.size());
}

TEST(BuildCover, CoversTheBallOfRadiusLevelsTimesR) {
  const auto body = ellipse21();
  const Point o = body.center();
  const auto cover = build_cover(body, o, params(1.0), 3);
  EXPECT_TRUE(cover.pieces.front().is_base_ball());
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const double theta = 2 * std::numbers::pi * unit(rng), t = 3.0 * unit(rng);
    const Point x = polar_point(body, o, theta, t);
    const Polar q = polar_coords(body, o, x);
    int hits = 0, same_level = 0;
    for (const auto& piece : cover.pieces) {
      if (!piece_contains(piece, q)) continue;
      ++hits;
      if (piece.level == static_cast<int>(std::floor(t)) && piece.t_inner < t && t < piece.t_outer) {
        if (piece_contains(piece, q, -1e-9)) ++same_level;
      }
    }
    EXPECT_GE(hits, 1);
    EXPECT_LE(same_level, 1);
  }
}

TEST(BuildCover, PreconditionsAndDiameters) {
  const auto sq = square();
  EXPECT_EQ(code_of([&] { build_cover(sq, Point{0, 0}, params(1.0), 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { build_cover(sq, Point{3, 0}, params(1.0), 2); }), ErrorCode::ExteriorBase);
  const auto cover = build_cover(sq, Point{0, 0}, params(1.0), 3);
  for (const auto& piece : cover.pieces) EXPECT_LE(piece_diameter(sq, Point{0, 0}, piece, 128), 10.0 + 1e-6);
}

TEST(PieceDiameter, BaseBallAndMonotoneSampling) {
  const auto disk = unit_disk();
  const auto cover = build_cover(disk, Point{0, 0}, params(1.0), 2);
  const double d0 = piece_diameter(disk, Point{0, 0}, cover.pieces.front(), 64);
  EXPECT_GE(d0, 2.0 - 0.1);
  EXPECT_LE(d0, 2.0 + 1e-12);
  for (const auto& piece : cover.pieces) {
    const double a = piece_diameter(disk, Point{0, 0}, piece, 64);
    const double b = piece_diameter(disk, Point{0, 0}, piece, 128);
    EXPECT_GE(b, a);
  }
  EXPECT_EQ(code_of([&] { piece_diameter(disk, Point{0, 0}, cover.pieces.front(), 32); }), ErrorCode::InvalidArgument);
}

TEST(MultiplicityProbe, BadRadii) {
  const auto disk = unit_disk();
  const auto cover = build_cover(disk, Point{0, 0}, params(1.0), 1);
  EXPECT_EQ(code_of([&] { multiplicity_probe(cover, 0.25, 10, 0); }), ErrorCode::BadRadii);
  EXPECT_EQ(code_of([&] { multiplicity_probe(cover, 0.0, 10, 0); }), ErrorCode::BadRadii);
}

TEST(MultiplicityProbe, AtMostThreeOnDisk) {
  const auto disk = unit_disk();
  const auto cover = build_cover(disk, Point{0, 0}, params(1.0), 3);
  const auto rep = multiplicity_probe(cover, 0.2, 1000, 17);
  EXPECT_LE(rep.max_count, 3u);
  EXPECT_GE(rep.max_count, 2u);
  std::size_t total = 0;
  for (auto h : rep.histogram) total += h;
  EXPECT_EQ(total, 1000u);
}

TEST(MultiplicityProbe, TinyBallsSeeAtMostTwoPieces) {
  const auto sq = square();
  const auto cover = build_cover(sq, Point{0, 0}, params(1.0), 3);
  EXPECT_LE(multiplicity_probe(cover, 1e-6, 1000, 5).max_count, 2u);
}

TEST(CoverIndex, BallBetweenSpheresMeetsAtMostTwo) {
  const auto body = ellipse21();
  const Point o = body.center();
  const auto cover = build_cover(body, o, params(1.0), 4);
  const CoverIndex index(cover);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int i = 1 + static_cast<int>(3 * unit(rng));
    const Point x = polar_point(body, o, 2 * std::numbers::pi * unit(rng), i + 0.5);
    EXPECT_LE(index.count_meeting(x, 0.2), 2u);
  }
}

TEST(CoverAudit, PassesOnSquare) {
  const auto sq = square();
  const auto cover = build_cover(sq, Point{0, 0}, params(1.0), 3);
  const auto au = audit_cover(cover, 0.2, 500, 3, 128);
  EXPECT_TRUE(au.passes(1.0));
  EXPECT_TRUE(au.all_odd);
  EXPECT_TRUE(au.all_admissible);
  EXPECT_GT(au.max_grid_step, 0.0);
}
