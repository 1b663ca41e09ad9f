#pragma once

// Horoballs in the Klein chart.  A horoball with ideal center E (x0 = 1) is
// stored as the light-like vector c = kappa * E; its points are
//   { x : <x,c>^2 + <x,x> <= 0 }.
// Scaling c by e^t pushes the horosphere a hyperbolic distance t towards the
// center.  Two horoballs are tangent iff -<c1,c2> = 2.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "horopack/cell.hpp"
#include "horopack/errors.hpp"
#include "horopack/lorentz.hpp"

namespace horopack {

/// Residual tolerance for "on the horosphere" (x0 = 1 coordinates).
inline constexpr double kSurfaceTolerance = 1e-9;

inline double kappa_from_s(double s) {
  if (!(s > -1.0 && s < 1.0)) throw InvalidInput("horoball type s must lie in (-1, 1)");
  return std::sqrt((1.0 + s) / (1.0 - s));
}

inline double s_from_kappa(double kappa) {
  const double k2 = kappa * kappa;
  return (k2 - 1.0) / (k2 + 1.0);
}

class Horoball {
 public:
  Horoball(const ProjectivePoint& center, double kappa) : center_(center), kappa_(kappa) {
    if (classify(center_) != PointClass::Absolute) {
      throw InvalidInput("Horoball: center is not on the absolute");
    }
    if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) throw InvalidInput("Horoball: kappa must be > 0");
  }

  const ProjectivePoint& center() const { return center_; }
  double kappa() const { return kappa_; }
  Vec4 vector() const { return kappa_ * center_.coords(); }

  /// Type parameter in the rotated chart where the center is (1,0,0,1).
  double chart_s() const { return s_from_kappa(kappa_); }

  /// Symmetric matrix F with x^T F x = 0 on the horosphere.  For the center
  /// (1,0,0,1) this is
  ///   -2s x0x0 - 2x3x3 + 2(s+1) x0x3 + (s-1)(x1x1 + x2x2).
  Mat4 form() const {
    const double s = chart_s();
    const Vec4 e = lorentz_metric() * center_.coords();
    return -(1.0 + s) * e * e.transpose() + (s - 1.0) * lorentz_metric();
  }

  /// <x,c>^2 + <x,x>; negative strictly inside.
  double level(const Vec4& x) const {
    const double xc = bilinear_form(x, vector());
    return xc * xc + bilinear_form(x, x);
  }

  /// Form residual at the x0 = 1 representative of x.
  double residual(const Vec4& x) const {
    const Vec4 y = x / x[0];
    return y.dot(form() * y);
  }

  bool contains(const Vec4& x, double tol = 1e-12) const {
    return level(x / x[0]) <= tol;
  }

  /// Same ball pushed a hyperbolic distance t towards its center (t < 0
  /// enlarges it).
  Horoball shifted(double t) const { return Horoball(center_, kappa_ * std::exp(t)); }

  /// Rotation of the chart taking (0,0,1) to the center direction.
  Mat3 chart_rotation() const { return rotation_taking(Vec3::UnitZ(), center_.klein()); }

 private:
  ProjectivePoint center_;
  double kappa_;
};

/// Horoball of type s at `center`: the image of the ball through
/// S(1,0,0,s) under an isometry fixing `pivot` that moves (1,0,0,1) to
/// `center`.
inline Horoball horoball_at(const ProjectivePoint& center, double s,
                            const Vec4& pivot = Vec4(1, 0, 0, 0)) {
  if (classify(center) != PointClass::Absolute) {
    throw InvalidInput("horoball_at: center is not on the absolute");
  }
  if (s >= 1.0) throw InvalidInput("horoball_at: s must be < 1");
  const Vec4 ref(1, 0, 0, 1);
  const double scale = bilinear_form(pivot, ref) / bilinear_form(pivot, center.coords());
  return Horoball(center, kappa_from_s(s) * scale);
}

/// Type-s horoball at vertex v of a cell, transported from the reference
/// vertex by the cell symmetry.
inline Horoball horoball_at(const Cell& cell, int v, double s) {
  return horoball_at(cell.vertices.at(v), s, cell.center);
}

/// Canonical type of a horoball sitting at vertex v of a cell.
inline double canonical_s(const Cell& cell, int v, const Horoball& h) {
  return s_from_kappa(h.kappa() / cell.type_scale(v));
}

/// 2(x^2+y^2)/(1-s) + 4(z-(s+1)/2)^2/(1-s)^2 = 1 in the chart rotated so the
/// center is (0,0,1).
struct CartesianForm {
  double s;
  Mat3 rotation;  // chart frame -> model

  double axial_semi_axis() const { return (1.0 - s) / 2.0; }
  double radial_semi_axis() const { return std::sqrt((1.0 - s) / 2.0); }
  double z_center() const { return (1.0 + s) / 2.0; }

  /// Left side minus one at a model point.
  double evaluate(const Vec3& p) const {
    const Vec3 q = rotation.transpose() * p;
    const double dz = q.z() - z_center();
    return 2.0 * (q.x() * q.x() + q.y() * q.y()) / (1.0 - s) + 4.0 * dz * dz / ((1.0 - s) * (1.0 - s)) - 1.0;
  }
};

inline CartesianForm cartesian_form(const Horoball& h) {
  const double s = h.chart_s();
  if (s >= 1.0) throw InvalidInput("cartesian_form: s must be < 1");
  return {s, h.chart_rotation()};
}

/// Point of the horosphere at polar angles (theta, phi) around the ellipsoid
/// axis; theta = 0 is the center itself, theta = pi the point S.
inline ProjectivePoint polar_point(const Horoball& h, double theta, double phi) {
  const double s = h.chart_s();
  const double rad = std::sqrt((1.0 - s) / 2.0);
  const Vec3 q(rad * std::sin(theta) * std::cos(phi), rad * std::sin(theta) * std::sin(phi),
               (1.0 + s) / 2.0 + (1.0 - s) / 2.0 * std::cos(theta));
  return ProjectivePoint::from_klein(h.chart_rotation() * q);
}

/// Where the Klein segment a-b crosses the horosphere, taking the crossing
/// closest to the center.  The ideal center itself never counts.
inline std::optional<ProjectivePoint> edge_intersection(const Horoball& h, const ProjectivePoint& a,
                                                        const ProjectivePoint& b) {
  if (a.projectively_equal(b)) throw InvalidInput("edge_intersection: a and b coincide");
  const Vec4 p = a.coords() / a[0];
  const Vec4 d = b.coords() / b[0] - p;
  const Vec4 c = h.vector();
  const double al = bilinear_form(p, c), be = bilinear_form(d, c);
  const double qa = be * be + bilinear_form(d, d);
  const double qb = 2.0 * (al * be + bilinear_form(p, d));
  const double qc = al * al + bilinear_form(p, p);
  std::vector<double> roots;
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
  if (std::abs(qa) <= 1e-14 * scale) {
    if (std::abs(qb) > 1e-14 * scale) roots.push_back(-qc / qb);
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-12 * qb * qb) return std::nullopt;
    disc = std::max(0.0, disc);
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    if (q != 0.0) {
      roots.push_back(q / qa);
      roots.push_back(qc / q);
    } else {
      roots.push_back(-qb / (2.0 * qa));
    }
  }
  const Vec3 apex = h.center().klein();
  std::optional<ProjectivePoint> best;
  double best_dist = 0.0;
  for (double t : roots) {
    if (t < -1e-12 || t > 1.0 + 1e-12) continue;
    const Vec4 x = p + std::clamp(t, 0.0, 1.0) * d;
    const double dist = (x.tail<3>() - apex).norm();
    if (dist < 1e-9) continue;  // the center
    if (!best || dist < best_dist) {
      best = ProjectivePoint(x);
      best_dist = dist;
    }
  }
  return best;
}

/// Intrinsic horospherical distance 2 sinh(d/2) between two surface points.
inline double horospheric_chord_length(const Horoball& h, const ProjectivePoint& p,
                                       const ProjectivePoint& q) {
  for (const auto* x : {&p, &q}) {
    if (std::abs(h.residual(x->coords())) > kSurfaceTolerance) {
      throw InvalidInput("horospheric_chord_length: point is not on the horosphere");
    }
  }
  // with <u,u> = <v,v> = -1 and both future pointing, 2 sinh(d/2) = |u - v|
  auto unit = [](const Vec4& x) {
    const Vec4 y = x / x[0];
    return Vec4(y / std::sqrt(-bilinear_form(y, y)));
  };
  const Vec4 diff = unit(p.coords()) - unit(q.coords());
  return std::sqrt(std::max(0.0, bilinear_form(diff, diff)));
}

/// Arc length of a horocycle spanning a chord at distance x (k = 1).
inline double bolyai_arc_length(double x) {
  if (x < 0.0) throw InvalidInput("bolyai_arc_length: negative argument");
  return std::sinh(x);
}

struct HorosphericTriangle {
  double a, b, c;
};

inline double heron_area(const HorosphericTriangle& t) {
  double x[3] = {t.a, t.b, t.c};
  std::sort(x, x + 3, std::greater<>());
  const double a = x[0], b = x[1], c = x[2];
  if (c < 0.0) throw InvalidInput("heron_area: negative side");
  const double excess = a - (b + c);
  if (excess > 1e-12 * std::max(1.0, a)) throw InvalidInput("heron_area: triangle inequality fails");
  // Kahan's ordering keeps slivers accurate
  const double v = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(std::max(0.0, v));
}

/// Volume between a horospherical domain of the given area and its center
/// (k = 1).
inline double sector_volume(double area) {
  if (area < 0.0) throw DomainError("sector_volume: negative area");
  return 0.5 * area;
}

/// Corners of the horospherical polygon cut from h by the edges at vertex v,
/// in cyclic order.
inline std::vector<ProjectivePoint> cusp_polygon(const Horoball& h, const Cell& cell, int v) {
  if (!h.center().projectively_equal(cell.vertices.at(v))) {
    throw InvalidInput("cusp_polygon: horoball is not centered at the vertex");
  }
  const Vec4 c = h.vector();
  std::vector<ProjectivePoint> out;
  for (int w : cell.neighbors(v)) {
    const Vec4& e = cell.vertex(w);
    out.emplace_back(0.5 * c - e / bilinear_form(c, e));
  }
  return out;
}

/// Volume of the part of h inside the cell, h centered at vertex v.
inline double vertex_sector_volume(const Horoball& h, const Cell& cell, int v) {
  const Vec4 c = h.vector();
  for (int f : cell.far_faces(v)) {
    if (std::abs(cell.faces[f].plane.evaluate(c)) < 1.0 - 1e-12) {
      throw HoroballOverflow(f, "vertex_sector_volume: horoball at vertex " + std::to_string(v) +
                                    " crosses face " + std::to_string(f));
    }
  }
  const auto poly = cusp_polygon(h, cell, v);
  double area = 0.0;
  for (size_t k = 1; k + 1 < poly.size(); ++k) {
    area += heron_area({horospheric_chord_length(h, poly[0], poly[k]),
                        horospheric_chord_length(h, poly[k], poly[k + 1]),
                        horospheric_chord_length(h, poly[k + 1], poly[0])});
  }
  return sector_volume(area);
}

/// Signed hyperbolic distance between two horospheres; negative when the
/// balls overlap.
inline double horoball_gap(const Horoball& a, const Horoball& b) {
  return std::log(-bilinear_form(a.vector(), b.vector()) / 2.0);
}

inline bool tangent(const Horoball& a, const Horoball& b, double tol = 1e-10) {
  return std::abs(-bilinear_form(a.vector(), b.vector()) / 2.0 - 1.0) <= tol;
}

/// Point where two tangent horoballs touch.
inline ProjectivePoint contact_point(const Horoball& a, const Horoball& b) {
  return ProjectivePoint(0.5 * (a.vector() + b.vector()));
}

}  // namespace horopack
