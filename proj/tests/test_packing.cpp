#include <gtest/gtest.h>

#include <cmath>

#include "horopack/packing.hpp"
#include "horopack/volume.hpp"

using namespace horopack;

namespace {

const SchlafliSymbol T336{3, 3, 6}, T344{3, 4, 4}, T436{4, 3, 6}, T536{5, 3, 6};

Mat4 boost_x(double eta) {
  Mat4 m = Mat4::Identity();
  m(0, 0) = m(1, 1) = std::cosh(eta);
  m(0, 1) = m(1, 0) = std::sinh(eta);
  return m;
}

double catalog_density(const SchlafliSymbol& t, const std::string& label) {
  return density(catalog_configuration(t, label)).density;
}

}  // namespace

TEST(Catalog, Sizes) {
  EXPECT_EQ(catalog(T336).size(), 2u);
  EXPECT_EQ(catalog(T344).size(), 3u);
  EXPECT_EQ(catalog(T436).size(), 4u);
  EXPECT_EQ(catalog(T536).size(), 5u);
  EXPECT_THROW(catalog({3, 5, 3}), UnsupportedSymbol);
  EXPECT_THROW(catalog_configuration(T336, "B9"), InvalidInput);
}

TEST(Catalog, AllValid) {
  for (const auto& t : {T336, T344, T436, T536}) {
    for (const auto& cfg : catalog(t)) {
      const auto v = validate_packing(cfg);
      EXPECT_TRUE(v.valid()) << t.str() << ' ' << cfg.label << ": "
                             << (v.valid() ? "" : v.violations.front().describe());
      EXPECT_FALSE(cfg.tangencies.empty());
    }
  }
}

TEST(Catalog, Densities) {
  const double bf = bf_constant();
  EXPECT_NEAR(catalog_density(T336, "B1"), bf, 1e-12);
  EXPECT_NEAR(catalog_density(T336, "B2"), bf, 1e-12);
  for (const char* l : {"B1", "B2", "B3"}) EXPECT_NEAR(catalog_density(T344, l), 0.8188080, 1e-6) << l;
  EXPECT_NEAR(catalog_density(T436, "B1"), 0.6826209, 1e-6);
  EXPECT_NEAR(catalog_density(T436, "B2"), 0.6826209, 1e-6);
  EXPECT_NEAR(catalog_density(T436, "B3"), bf, 1e-12);
  EXPECT_NEAR(catalog_density(T436, "B4"), bf, 1e-12);
  EXPECT_NEAR(catalog_density(T536, "B1"), 0.5508411, 1e-6);
  EXPECT_NEAR(catalog_density(T536, "B2"), 0.7030898, 1e-6);
  EXPECT_NEAR(catalog_density(T536, "B3"), 0.7421006, 1e-6);
  EXPECT_NEAR(catalog_density(T536, "B4"), 0.7841811, 1e-6);
  EXPECT_NEAR(catalog_density(T536, "B5"), 0.7124588, 1e-6);
}

TEST(Catalog, OctahedronSectors) {
  // at the reference vertex the sector is 1/kappa^2 = (1 - s)/(1 + s)
  const auto b1 = density(catalog_configuration(T344, "B1"));
  for (double v : b1.sector_volumes) EXPECT_NEAR(v, 0.5, 1e-12);
  const auto b2 = density(catalog_configuration(T344, "B2"));
  EXPECT_NEAR(b2.sector_volumes[3], 1.0, 1e-12);
  EXPECT_NEAR(b2.sector_volumes[5], 1.0, 1e-12);
  for (int v : {0, 1, 2, 4}) EXPECT_NEAR(b2.sector_volumes[v], 0.25, 1e-12);
  const auto b3 = density(catalog_configuration(T344, "B3"));
  EXPECT_NEAR(b3.sector_volumes[3], 2.0, 1e-12);
  EXPECT_NEAR(b3.sector_volumes[5], 0.5, 1e-12);
  for (int v : {0, 1, 2, 4}) EXPECT_NEAR(b3.sector_volumes[v], 0.125, 1e-12);
  // density = total / cell volume, and the cell is 8 Lambda(pi/4)
  EXPECT_NEAR(b1.density, 3.0 / (8 * lobachevsky(std::numbers::pi / 4)), 1e-12);
}

TEST(Catalog, TypesOfEqualBallConfigurations) {
  for (double s : catalog_configuration(T336, "B1").types()) EXPECT_NEAR(s, 0.5, 1e-12);
  for (double s : catalog_configuration(T344, "B1").types()) EXPECT_NEAR(s, 1.0 / 3.0, 1e-12);
  for (double s : catalog_configuration(T436, "B1").types()) EXPECT_NEAR(s, 0.5, 1e-12);
  const auto d = catalog_configuration(T536, "B1");
  const auto t = d.types();
  for (double s : t) EXPECT_NEAR(s, t.front(), 1e-12);
  // all edges tangent
  EXPECT_EQ(d.tangencies.size(), 30u);
}

TEST(Validate, DetectsOverlapsAndFaceCrossings) {
  const auto big = configuration_from_types(T336, {0.0, 0.0, 0.0, 0.0});
  const auto v = validate_packing(big);
  EXPECT_FALSE(v.valid());
  int overlaps = 0;
  for (const auto& x : v.violations) {
    if (x.kind == Violation::Overlap) {
      ++overlaps;
      EXPECT_TRUE(x.edge);
      EXPECT_GT(x.depth, 0.0);
    }
  }
  EXPECT_EQ(overlaps, 6);
  EXPECT_THROW(density(big), InvalidConfiguration);
  EXPECT_NO_THROW(density(big, false));

  const auto cross = configuration_from_types(T336, {0.9, 0.9, 0.9, -0.2});
  const auto w = validate_packing(cross);
  ASSERT_FALSE(w.valid());
  bool face = false;
  for (const auto& x : w.violations) face |= x.kind == Violation::Face && x.i == 3;
  EXPECT_TRUE(face);
  EXPECT_NE(w.violations.front().describe().find("horoball"), std::string::npos);
}

TEST(Validate, DiagonalOverlapCaught) {
  // two opposite cube vertices: not an edge, yet large balls there meet
  const Cell& c = standard_cell(T436);
  std::vector<double> s(8, 0.9);
  s[3] = -0.2;
  s[7] = -0.2;
  const auto cfg = configuration_from_types(T436, s);
  bool diagonal = false;
  for (const auto& x : validate_packing(cfg).violations) {
    if (x.kind == Violation::Overlap && !x.edge) diagonal = true;
  }
  EXPECT_FALSE(c.adjacent(3, 7));
  EXPECT_TRUE(diagonal);
}

TEST(Configuration, RejectsWrongInputs) {
  EXPECT_THROW(configuration_from_types(T336, {0.5, 0.5}), InvalidInput);
  const Cell& c = standard_cell(T336);
  std::vector<Horoball> balls;
  for (int v = 0; v < 4; ++v) balls.push_back(horoball_at(c, (v + 1) % 4, 0.5));
  EXPECT_THROW(make_configuration(c, balls), InvalidConfiguration);
  balls.pop_back();
  EXPECT_THROW(make_configuration(c, balls), InvalidConfiguration);
}

TEST(Tangencies, ContactAtCenterFoot) {
  const auto b1 = catalog_configuration(T336, "B1");
  EXPECT_EQ(b1.tangencies.size(), 6u);
  for (const auto& t : b1.tangencies) {
    const auto foot = foot_on_line(ProjectivePoint(b1.cell.center), b1.cell.vertices[t.i], b1.cell.vertices[t.j]);
    EXPECT_TRUE(foot.projectively_equal(ProjectivePoint(t.contact), 1e-12));
  }
}

TEST(FaceBound, ReferenceVertex) {
  // the type-0 ball at E3 of the tetrahedron touches the opposite face
  EXPECT_NEAR(face_bound(standard_cell(T336), 3), kappa_from_s(0.0), 1e-12);
  EXPECT_NEAR(face_bound(standard_cell(T344), 3), kappa_from_s(-1.0 / 3.0), 1e-12);
  EXPECT_NEAR(face_bound(standard_cell(T436), 3), kappa_from_s(-1.0 / 3.0), 1e-12);
  // the ball at the bound sits exactly on its far face
  const Cell& c = standard_cell(T436);
  const Horoball h(c.vertices[3], face_bound(c, 3));
  EXPECT_NO_THROW(vertex_sector_volume(h, c, 3));
  EXPECT_THROW(vertex_sector_volume(h.shifted(-1e-6), c, 3), HoroballOverflow);
}

TEST(Completion, EveryPlacedBallMaximal) {
  // shrinking any completed ball is allowed, growing any makes the packing
  // invalid: each one is tangent to something or sits on a far face
  for (const auto& t : {T344, T436, T536}) {
    for (const auto& cfg : catalog(t)) {
      for (int v = 0; v < cfg.cell.size(); ++v) {
        auto grown = cfg.balls;
        grown[v] = cfg.balls[v].shifted(-1e-6);
        const auto g = make_configuration(cfg.cell, grown);
        EXPECT_FALSE(validate_packing(g).valid()) << t.str() << ' ' << cfg.label << " v" << v;
      }
    }
  }
}

TEST(VolumeFunction, CoshLaw) {
  const auto cfg = catalog_configuration(T344, "B2");
  const int i = 3, j = 0;
  ASSERT_TRUE(tangent(cfg.balls[i], cfg.balls[j]));
  const double vi = vertex_sector_volume(cfg.balls[i], cfg.cell, i);
  const double vj = vertex_sector_volume(cfg.balls[j], cfg.cell, j);
  const auto [lo, hi] = admissible_interval(cfg, i, j);
  for (int k = 0; k <= 10; ++k) {
    const double x = lo + (hi - lo) * k / 10.0;
    EXPECT_NEAR(volume_function(cfg, i, j, x), 2.0 * std::sqrt(vi * vj) * std::cosh(2.0 * x), 1e-12);
  }
  EXPECT_THROW(volume_function(cfg, i, j, hi + 0.1), DomainError);
  EXPECT_FALSE(tangent(cfg.balls[0], cfg.balls[2]));
  EXPECT_THROW(admissible_interval(cfg, 0, 2), InvalidInput);
}

TEST(VolumeFunction, TetrahedronInterval) {
  // equal balls at s = 1/2: either one can grow until it reaches type 0,
  // a distance log(sqrt 3) = artanh(1/2)
  const auto cfg = catalog_configuration(T336, "B1");
  const auto [lo, hi] = admissible_interval(cfg, 3, 0);
  EXPECT_NEAR(lo, -std::atanh(0.5), 1e-12);
  EXPECT_NEAR(hi, std::atanh(0.5), 1e-12);
  EXPECT_GT(volume_function(cfg, 3, 0, hi), volume_function(cfg, 3, 0, 0.0));
}

TEST(VolumeFunction, OctahedronInterval) {
  // s = 1/3 down to s = -1/3 is a factor 2 in kappa
  const auto cfg = catalog_configuration(T344, "B1");
  const auto [lo, hi] = admissible_interval(cfg, 3, 0);
  EXPECT_NEAR(lo, -std::log(2.0), 1e-12);
  EXPECT_NEAR(hi, std::log(2.0), 1e-12);
}

TEST(Family, XCoordinate) {
  const auto f = family(T336, "E3");
  EXPECT_DOUBLE_EQ(f.x_of(0.5), 0.0);
  EXPECT_NEAR(f.x_of(0.0), std::atanh(0.5), 1e-15);
  EXPECT_THROW(f.at(0.6), InvalidInput);
  EXPECT_THROW(family(T336, "cube"), InvalidInput);
  EXPECT_EQ(family(T436, "E3").segments().size(), 2u);
  EXPECT_EQ(family(T344, "E3").segments().size(), 2u);
}

TEST(Sweep, TetrahedronEndpoints) {
  const auto rows = sweep(T336, "E3", {0.0, 0.25, 0.5});
  ASSERT_EQ(rows.size(), 3u);
  const double bf = bf_constant();
  EXPECT_NEAR(rows[0].report.density, bf, 1e-12);
  EXPECT_NEAR(rows[2].report.density, bf, 1e-12);
  EXPECT_LT(rows[1].report.density, bf - 1e-3);
  for (const auto& r : rows) EXPECT_TRUE(r.valid);
  // inside the family the total is a cosh in x
  const double x1 = rows[1].x, xm = rows[0].x / 2;
  const double top = bf, bottom = top / std::cosh(2 * xm);
  EXPECT_NEAR(rows[1].report.density, bottom * std::cosh(2 * (x1 - xm)), 1e-12);
}

TEST(Sweep, Linspace) {
  const auto g = linspace(0.0, 1.0, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g[1], 0.25);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_EQ(linspace(0.3, 0.7, 1).size(), 1u);
  EXPECT_THROW(linspace(0.0, 1.0, 0), InvalidInput);
}

TEST(Sweep, EndpointMaximaPerSegment) {
  // along every segment the density is a sum of exponentials in x, so the
  // maximum sits at an end
  for (const auto& t : {T336, T344, T436, T536}) {
    for (const auto& f : families(t)) {
      for (const auto& [a, b] : f.segments()) {
        const auto rows = sweep(t, f, linspace(a, b, 21));
        const double ends = std::max(rows.front().report.density, rows.back().report.density);
        for (const auto& r : rows) EXPECT_LE(r.report.density, ends + 1e-12) << t.str() << ' ' << f.name << ' ' << r.s;
      }
    }
  }
}

TEST(Certify, Optima) {
  const auto c336 = certify_optimum(T336, 1e-2);
  EXPECT_EQ(c336.optima.size(), 2u);
  EXPECT_NEAR(c336.optima.front().density, bf_constant(), 1e-12);
  const auto c344 = certify_optimum(T344, 1e-2);
  EXPECT_EQ(c344.optima.size(), 3u);
  const auto c436 = certify_optimum(T436, 1e-2);
  std::vector<std::string> labels;
  for (const auto& r : c436.optima) labels.push_back(r.config.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"B3", "B4"}));
  for (const auto& c : {c336, c344, c436}) EXPECT_LE(c.family_max, c.optima.front().density + 1e-9);
}

TEST(Certify, DodecahedronFamiliesDoNotBeatCatalog) {
  const auto c = certify_optimum(T536, 1e-2);
  ASSERT_EQ(c.optima.size(), 1u);
  EXPECT_EQ(c.optima.front().config.label, "B4");
  EXPECT_LE(c.family_max, c.optima.front().density + 1e-9) << c.family_argmax;
}

TEST(Transform, DensityInvariant) {
  const Mat4 m = boost_x(0.4) * rotation_isometry(rotation_taking(Vec3(0, 0, 1), Vec3(1, 2, 3))) * boost_x(-0.1);
  for (const auto& t : {T336, T344, T436, T536}) {
    const auto cfg = catalog(t).front();
    const auto moved = transform(cfg, m);
    const auto a = density(cfg), b = density(moved);
    EXPECT_NEAR(a.density, b.density, 1e-9) << t.str();
    EXPECT_EQ(cfg.tangencies.size(), moved.tangencies.size());
    EXPECT_TRUE(validate_packing(moved).valid());
  }
}
