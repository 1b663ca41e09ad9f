#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "horopack/cell.hpp"
#include "horopack/horoball.hpp"

using namespace horopack;

namespace {

const SchlafliSymbol kTilings[] = {{3, 3, 6}, {3, 4, 4}, {4, 3, 6}, {5, 3, 6}};

// Upper half-space picture with `apex` sent to infinity: the isometry moves
// apex to (1,0,0,1), then X -> (x1, x2) / (x0 - x3) on the boundary and
// z = 1/(x0 - x3) for hyperboloid points.  A horoball kappa*(1,0,0,1) is
// the region z >= kappa.
struct HalfSpace {
  Mat4 iso;
  explicit HalfSpace(const ProjectivePoint& apex)
      : iso(rotation_isometry(rotation_taking(apex.klein(), Vec3::UnitZ()))) {}

  Eigen::Vector2d boundary(const Vec4& ideal) const {
    const Vec4 y = iso * ideal;
    return Eigen::Vector2d(y[1], y[2]) / (y[0] - y[3]);
  }
  Eigen::Vector3d point(const Vec4& x) const {
    Vec4 y = iso * x;
    y /= std::sqrt(-bilinear_form(y, y));
    if (y[0] < 0) y = -y;
    const double w = y[0] - y[3];
    return Eigen::Vector3d(y[1] / w, y[2] / w, 1.0 / w);
  }
};

// sector over the cusp polygon: Euclidean shoelace area / (2 kappa^2)
double sector_oracle(const Cell& cell, int v, const Horoball& h) {
  const HalfSpace hs(cell.vertices[v]);
  const auto nb = cell.neighbors(v);
  double area = 0.0;
  for (size_t k = 0; k < nb.size(); ++k) {
    const auto p = hs.boundary(cell.vertex(nb[k]));
    const auto q = hs.boundary(cell.vertex(nb[(k + 1) % nb.size()]));
    area += p.x() * q.y() - p.y() * q.x();
  }
  const double height = h.kappa();  // unchanged by a rotation fixing x0
  return 0.5 * std::abs(area) / (2.0 * height * height);
}

}  // namespace

TEST(TypeParameter, RoundTrip) {
  for (double s : {-0.9, -1.0 / 3, 0.0, 0.2, 0.5, 0.99}) EXPECT_NEAR(s_from_kappa(kappa_from_s(s)), s, 1e-14);
  EXPECT_DOUBLE_EQ(kappa_from_s(0.0), 1.0);
  EXPECT_NEAR(kappa_from_s(0.5), std::sqrt(3.0), 1e-15);
  EXPECT_THROW(kappa_from_s(1.0), InvalidInput);
  EXPECT_THROW(kappa_from_s(-1.0), InvalidInput);
}

TEST(HoroballTest, ConstructorRejectsBadInput) {
  EXPECT_THROW(Horoball(ProjectivePoint(1, 0, 0, 0.5), 1.0), InvalidInput);
  EXPECT_THROW(Horoball(ProjectivePoint(1, 0, 0, 1), 0.0), InvalidInput);
  EXPECT_THROW(horoball_at(ProjectivePoint(1, 0, 0, 1), 1.0), InvalidInput);
}

TEST(HoroballTest, FormCoefficients) {
  for (double s : {-0.5, 0.0, 0.3, 0.8}) {
    const Horoball h = horoball_at(ProjectivePoint(1, 0, 0, 1), s);
    const Mat4 f = h.form();
    EXPECT_NEAR(f(0, 0), -2 * s, 1e-14);
    EXPECT_NEAR(f(3, 3), -2.0, 1e-14);
    EXPECT_NEAR(f(0, 3) + f(3, 0), 2 * (s + 1), 1e-14);
    EXPECT_NEAR(f(1, 1), s - 1, 1e-14);
    EXPECT_NEAR(f(2, 2), s - 1, 1e-14);
    EXPECT_NEAR(f(0, 1), 0.0, 1e-15);
    EXPECT_NEAR(f(1, 2), 0.0, 1e-15);
    EXPECT_NEAR(h.chart_s(), s, 1e-14);
  }
}

TEST(HoroballTest, SouthPointOnSurface) {
  for (double s : {-0.9, -0.2, 0.0, 0.5, 0.95}) {
    const Horoball h = horoball_at(ProjectivePoint(1, 0, 0, 1), s);
    EXPECT_NEAR(h.residual(Vec4(1, 0, 0, s)), 0.0, 1e-14);
    EXPECT_NEAR(h.level(Vec4(1, 0, 0, s)), 0.0, 1e-14);
    EXPECT_TRUE(h.contains(Vec4(1, 0, 0, (1 + s) / 2)));
    EXPECT_FALSE(h.contains(Vec4(1, 0, 0, s - 0.01)));
    EXPECT_TRUE(polar_point(h, std::numbers::pi, 0.0).projectively_equal(ProjectivePoint(1, 0, 0, s), 1e-14));
  }
}

TEST(HoroballTest, PolarPointsOnSurface) {
  const Cell c = build_cell({5, 3, 6});
  for (int v : {0, 7, 13}) {
    for (double s : {-0.3, 0.2, 0.6}) {
      const Horoball h = horoball_at(c, v, s);
      const CartesianForm cf = cartesian_form(h);
      for (int i = 0; i <= 12; ++i) {
        for (int k = 0; k < 12; ++k) {
          const double th = std::numbers::pi * i / 12.0, ph = 2 * std::numbers::pi * k / 12.0;
          const auto p = polar_point(h, th, ph);
          EXPECT_NEAR(h.residual(p.coords()), 0.0, 1e-12);
          EXPECT_NEAR(h.level(p.coords()), 0.0, 1e-12);
          if (i > 0) EXPECT_NEAR(cf.evaluate(p.klein()), 0.0, 1e-12);
        }
      }
    }
  }
}

TEST(HoroballTest, CartesianAxes) {
  const Horoball h = horoball_at(ProjectivePoint(1, 0, 0, 1), 0.2);
  const auto cf = cartesian_form(h);
  EXPECT_NEAR(cf.axial_semi_axis(), 0.4, 1e-15);
  EXPECT_NEAR(cf.radial_semi_axis(), std::sqrt(0.4), 1e-15);
  EXPECT_NEAR(cf.z_center(), 0.6, 1e-15);
  EXPECT_NEAR(cf.evaluate(Vec3(0, 0, 0.2)), 0.0, 1e-14);
  EXPECT_NEAR(cf.evaluate(Vec3(std::sqrt(0.4), 0, 0.6)), 0.0, 1e-14);
}

TEST(HoroballTest, TransportedTypesMatch) {
  for (const auto& t : kTilings) {
    const Cell c = build_cell(t);
    for (int v = 0; v < c.size(); ++v) {
      const Horoball h = horoball_at(c, v, 0.3);
      EXPECT_NEAR(canonical_s(c, v, h), 0.3, 1e-12);
      // same distance from the center as the reference ball
      const Horoball r = horoball_at(c, c.reference, 0.3);
      EXPECT_NEAR(bilinear_form(c.center, h.vector()), bilinear_form(c.center, r.vector()), 1e-12);
    }
  }
}

TEST(EdgeIntersection, AxisHitsSouthPoint) {
  const Horoball h = horoball_at(ProjectivePoint(1, 0, 0, 1), 0.4);
  const auto x = edge_intersection(h, ProjectivePoint(1, 0, 0, 0), ProjectivePoint(1, 0, 0, 1));
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(x->projectively_equal(ProjectivePoint(1, 0, 0, 0.4), 1e-14));
  const auto miss = edge_intersection(h, ProjectivePoint(1, 0, 0, -0.5), ProjectivePoint(1, 0.5, 0, -0.5));
  EXPECT_FALSE(miss.has_value());
  EXPECT_THROW(edge_intersection(h, ProjectivePoint(1, 0, 0, 0), ProjectivePoint(2, 0, 0, 0)), InvalidInput);
}

TEST(EdgeIntersection, CellEdgesMeetCuspCorners) {
  // the edge from the vertex to a neighbour crosses the horosphere at the
  // cusp polygon corner
  for (const auto& t : kTilings) {
    const Cell c = build_cell(t);
    const int v = c.reference;
    const Horoball h = horoball_at(c, v, 0.4);
    const auto poly = cusp_polygon(h, c, v);
    const auto nb = c.neighbors(v);
    for (size_t k = 0; k < nb.size(); ++k) {
      const auto x = edge_intersection(h, c.vertices[v], c.vertices[nb[k]]);
      ASSERT_TRUE(x.has_value());
      EXPECT_TRUE(x->projectively_equal(poly[k], 1e-12)) << t.str();
      EXPECT_NEAR(h.residual(poly[k].coords()), 0.0, 1e-12);
    }
  }
}

TEST(Heron, Examples) {
  EXPECT_NEAR(heron_area({1, 1, 1}), std::sqrt(3.0) / 4, 1e-15);
  EXPECT_NEAR(heron_area({3, 4, 5}), 6.0, 1e-14);
  EXPECT_NEAR(heron_area({5, 3, 4}), 6.0, 1e-14);
  EXPECT_DOUBLE_EQ(heron_area({1, 1, 2}), 0.0);
  EXPECT_THROW(heron_area({1, 1, 3}), InvalidInput);
  EXPECT_THROW(heron_area({-1, 1, 1}), InvalidInput);
}

TEST(Heron, NeedleAccurate) {
  // a = b = 1, c tiny: area = c/4 * sqrt(4 - c^2)
  const double c = 1e-9;
  EXPECT_NEAR(heron_area({1, 1, c}) / (c / 4 * std::sqrt(4 - c * c)), 1.0, 1e-12);
}

TEST(SectorVolume, HalfTheArea) {
  EXPECT_DOUBLE_EQ(sector_volume(2.0), 1.0);
  EXPECT_DOUBLE_EQ(sector_volume(0.0), 0.0);
  EXPECT_THROW(sector_volume(-1e-3), DomainError);
}

TEST(Bolyai, Sinh) {
  EXPECT_DOUBLE_EQ(bolyai_arc_length(0.0), 0.0);
  EXPECT_NEAR(bolyai_arc_length(1.0), std::sinh(1.0), 1e-15);
  EXPECT_THROW(bolyai_arc_length(-0.1), InvalidInput);
}

TEST(ChordLength, MatchesHalfSpaceDistance) {
  // on the horosphere z = h the intrinsic distance is |dp| / h
  const Cell c = build_cell({4, 3, 6});
  const int v = 5;
  for (double s : {-0.2, 0.3}) {
    const Horoball h = horoball_at(c, v, s);
    const HalfSpace hs(c.vertices[v]);
    for (int i = 1; i < 6; ++i) {
      const auto p = polar_point(h, 0.3 * i, 0.7 * i), q = polar_point(h, 2.5 - 0.2 * i, 1.0 + i);
      const auto up = hs.point(p.coords()), uq = hs.point(q.coords());
      EXPECT_NEAR(up.z(), h.kappa(), 1e-10);
      const double expect = (up.head<2>() - uq.head<2>()).norm() / h.kappa();
      EXPECT_NEAR(horospheric_chord_length(h, p, q), expect, 1e-10 * (1 + expect));
    }
  }
  // type-0 horospheres pass through the cell center, type 0.3 ones do not
  const Horoball h = horoball_at(c, v, 0.3);
  EXPECT_THROW(horospheric_chord_length(h, ProjectivePoint(c.center), polar_point(h, 1, 1)), InvalidInput);
}

TEST(SectorVolume, MatchesHalfSpaceShoelace) {
  for (const auto& t : kTilings) {
    const Cell c = build_cell(t);
    for (int v = 0; v < c.size(); ++v) {
      for (double s : {0.0, 0.3, 0.5}) {
        const Horoball h = horoball_at(c, v, s);
        const double got = vertex_sector_volume(h, c, v);
        EXPECT_NEAR(got / sector_oracle(c, v, h), 1.0, 1e-6) << t.str() << " v" << v << " s" << s;
      }
    }
  }
}

TEST(SectorVolume, TetrahedronCusp) {
  // sectors scale with 1/kappa^2 and kappa(0.5)^2 = 3
  const Cell c = build_cell({3, 3, 6});
  const double v0 = vertex_sector_volume(horoball_at(c, 3, 0.0), c, 3);
  const double v5 = vertex_sector_volume(horoball_at(c, 3, 0.5), c, 3);
  EXPECT_NEAR(v5 / v0, 1.0 / 3.0, 1e-12);
}

TEST(SectorVolume, ScalingLaw) {
  const Cell c = build_cell({5, 3, 6});
  const Horoball h = horoball_at(c, 11, 0.4);
  const double base = vertex_sector_volume(h, c, 11);
  for (double x : {0.1, 0.5, 1.5}) {
    EXPECT_NEAR(vertex_sector_volume(h.shifted(x), c, 11), base * std::exp(-2 * x), 1e-12 * base);
  }
}

TEST(SectorVolume, OverflowReported) {
  const Cell c = build_cell({3, 3, 6});
  try {
    vertex_sector_volume(horoball_at(c, 3, -0.9), c, 3);
    FAIL() << "expected HoroballOverflow";
  } catch (const HoroballOverflow& e) {
    EXPECT_GE(e.face(), 0);
    EXPECT_FALSE(c.on_face(e.face(), 3));
  }
  EXPECT_THROW(cusp_polygon(horoball_at(c, 0, 0.0), c, 3), InvalidInput);
}

TEST(Tangency, GapAndContact) {
  const Cell c = build_cell({3, 3, 6});
  const Horoball a = horoball_at(c, 0, 0.5), b = horoball_at(c, 3, 0.5);
  EXPECT_TRUE(tangent(a, b));
  EXPECT_NEAR(horoball_gap(a, b), 0.0, 1e-14);
  const auto p = contact_point(a, b);
  EXPECT_NEAR(a.level(p.coords()), 0.0, 1e-14);
  EXPECT_NEAR(b.level(p.coords()), 0.0, 1e-14);
  // pushing one ball back by t opens a gap of t
  EXPECT_NEAR(horoball_gap(a.shifted(0.25), b), 0.25, 1e-14);
  EXPECT_NEAR(horoball_gap(a.shifted(-0.25), b), -0.25, 1e-14);
  EXPECT_FALSE(tangent(a.shifted(1e-6), b));
}

TEST(Tangency, GapMatchesHalfSpace) {
  // with one center at infinity the other ball is a Euclidean sphere tangent
  // to the boundary; the gap is log(kappa / diameter)
  const Cell c = build_cell({3, 4, 4});
  const Horoball a = horoball_at(c, 3, 0.1), b = horoball_at(c, 0, -0.2);
  const HalfSpace hs(c.vertices[3]);
  double diameter = 0.0;
  for (int i = 1; i <= 400; ++i) {
    for (int k = 0; k < 8; ++k) {
      const auto p = polar_point(b, std::numbers::pi * i / 400.0, 2 * std::numbers::pi * k / 8.0);
      diameter = std::max(diameter, hs.point(p.coords()).z());
    }
  }
  EXPECT_NEAR(horoball_gap(a, b), std::log(a.kappa() / diameter), 1e-5);
}
