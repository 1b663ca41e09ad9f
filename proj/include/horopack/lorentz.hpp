#pragma once

// Projective (Cayley-Klein) model of hyperbolic 3-space inside the Lorentz
// space of signature (1,3).  Points are homogeneous 4-vectors; the absolute
// is the quadric <x,x> = 0.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "horopack/errors.hpp"

namespace horopack {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Sectional curvature is K = -k^2 with k = 1 throughout.
inline constexpr double kCurvatureRadius = 1.0;

/// Relative tolerance on <x,x>/|x|^2 for membership in the absolute.
inline constexpr double kAbsoluteTolerance = 1e-10;

/// diag(-1, 1, 1, 1)
inline Mat4 lorentz_metric() {
  return Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
}

/// <x,y> = -x0 y0 + x1 y1 + x2 y2 + x3 y3
inline double bilinear_form(const Vec4& x, const Vec4& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

enum class PointClass { Interior, Absolute, Outer };

inline const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Interior: return "interior";
    case PointClass::Absolute: return "absolute";
    case PointClass::Outer: return "outer";
  }
  return "?";
}

inline PointClass classify(const Vec4& x, double tol = kAbsoluteTolerance) {
  const double norm2 = x.squaredNorm();
  if (norm2 == 0.0) throw InvalidInput("classify: zero vector");
  const double q = bilinear_form(x, x);
  if (q < -tol * norm2) return PointClass::Interior;
  if (std::abs(q) <= tol * norm2) return PointClass::Absolute;
  return PointClass::Outer;
}

/// A point of projective 3-space.  Stored in the affine (Klein) chart
/// x0 = 1 whenever x0 != 0, so two representatives of the same point compare
/// equal coordinate-wise.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const Vec4& coords) : coords_(coords) {
    if (coords_.squaredNorm() == 0.0) {
      throw InvalidInput("ProjectivePoint: zero vector");
    }
    if (std::abs(coords_[0]) > 1e-15 * coords_.norm()) coords_ /= coords_[0];
  }
  ProjectivePoint(double x0, double x1, double x2, double x3)
      : ProjectivePoint(Vec4(x0, x1, x2, x3)) {}

  /// Point with Klein-chart coordinates (x, y, z).
  static ProjectivePoint from_klein(const Vec3& p) {
    return ProjectivePoint(Vec4(1.0, p.x(), p.y(), p.z()));
  }

  const Vec4& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

  bool is_affine() const { return coords_[0] != 0.0 && std::abs(coords_[0] - 1.0) < 1e-15; }

  /// Euclidean coordinates in the Klein ball (requires x0 != 0).
  Vec3 klein() const {
    if (!is_affine()) throw DomainError("ProjectivePoint::klein: point at infinity of the chart");
    return coords_.tail<3>();
  }

  PointClass classification(double tol = kAbsoluteTolerance) const {
    return classify(coords_, tol);
  }

  bool projectively_equal(const ProjectivePoint& other, double tol = 1e-12) const {
    // rank-1 test: x and y are parallel iff all 2x2 minors vanish
    const Vec4& x = coords_;
    const Vec4& y = other.coords_;
    const double scale = x.norm() * y.norm();
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (std::abs(x[i] * y[j] - x[j] * y[i]) > tol * scale) return false;
      }
    }
    return true;
  }

 private:
  Vec4 coords_;
};

inline double bilinear_form(const ProjectivePoint& x, const ProjectivePoint& y) {
  return bilinear_form(x.coords(), y.coords());
}

inline PointClass classify(const ProjectivePoint& x, double tol = kAbsoluteTolerance) {
  return classify(x.coords(), tol);
}

/// Plane {x : <x, b> = 0}.  The normal b is scaled to <b,b> = +-1 when it is
/// not isotropic; spacelike normals give planes that meet the model.
class Hyperplane {
 public:
  explicit Hyperplane(const Vec4& normal) : normal_(normal) {
    if (normal_.squaredNorm() == 0.0) throw InvalidInput("Hyperplane: zero normal");
    const double q = bilinear_form(normal_, normal_);
    if (std::abs(q) > 1e-14 * normal_.squaredNorm()) normal_ /= std::sqrt(std::abs(q));
  }

  /// Plane through three points.  If `inside` is given the normal is
  /// oriented so that <inside, b> > 0.
  static Hyperplane through(const Vec4& p, const Vec4& q, const Vec4& r) {
    // covector n with n.p = n.q = n.r = 0 (generalized cross product)
    Vec4 n;
    for (int i = 0; i < 4; ++i) {
      Mat3 minor;
      for (int row = 0, c = 0; c < 4; ++c) {
        if (c == i) continue;
        minor(0, row) = p[c];
        minor(1, row) = q[c];
        minor(2, row) = r[c];
        ++row;
      }
      n[i] = ((i % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
    }
    if (n.norm() < 1e-14 * p.norm() * q.norm() * r.norm()) {
      throw InvalidInput("Hyperplane::through: collinear points");
    }
    // raise the index: <b, x> = n.x  for b = J n
    return Hyperplane(Vec4(-n[0], n[1], n[2], n[3]));
  }
  static Hyperplane through(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& inside) {
    Hyperplane h = through(p, q, r);
    if (h.evaluate(inside) < 0.0) h.normal_ = -h.normal_;
    return h;
  }

  const Vec4& normal() const { return normal_; }

  /// Covector a with a.x = <b, x>.
  Vec4 covector() const { return Vec4(-normal_[0], normal_[1], normal_[2], normal_[3]); }

  double evaluate(const Vec4& x) const { return bilinear_form(normal_, x); }
  double evaluate(const ProjectivePoint& x) const { return evaluate(x.coords()); }

  bool is_spacelike() const { return bilinear_form(normal_, normal_) > 0.5; }

  bool incident(const Vec4& x, double tol = 1e-12) const {
    return std::abs(evaluate(x)) <= tol * x.norm() * normal_.norm();
  }

 private:
  Vec4 normal_;
};

/// Polar plane of x: all points conjugate to x.
inline Hyperplane polar(const ProjectivePoint& x) { return Hyperplane(x.coords()); }

/// Hyperbolic distance between two proper points (k = 1).
inline double distance(const Vec4& x, const Vec4& y) {
  const double xx = bilinear_form(x, x);
  const double yy = bilinear_form(y, y);
  if (classify(x) != PointClass::Interior || classify(y) != PointClass::Interior) {
    throw DomainError("distance: both points must be interior");
  }
  const double c = -bilinear_form(x, y) / std::sqrt(xx * yy);
  return kCurvatureRadius * std::acosh(std::max(1.0, std::abs(c)));
}

inline double distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  return distance(x.coords(), y.coords());
}

/// Point on the line through a and b closest to p (Lorentz-orthogonal
/// projection of p onto span(a, b)).
inline ProjectivePoint foot_on_line(const ProjectivePoint& p, const ProjectivePoint& a,
                                    const ProjectivePoint& b) {
  const Vec4& u = a.coords();
  const Vec4& v = b.coords();
  const double g11 = bilinear_form(u, u);
  const double g12 = bilinear_form(u, v);
  const double g22 = bilinear_form(v, v);
  const double det = g11 * g22 - g12 * g12;
  if (std::abs(det) <= 1e-14 * u.squaredNorm() * v.squaredNorm()) {
    throw InvalidInput("foot_on_line: degenerate line");
  }
  const double r1 = bilinear_form(p.coords(), u);
  const double r2 = bilinear_form(p.coords(), v);
  const double alpha = (g22 * r1 - g12 * r2) / det;
  const double beta = (g11 * r2 - g12 * r1) / det;
  return ProjectivePoint(alpha * u + beta * v);
}

/// Reflection matrix in a plane with spacelike normal: x -> x - 2<x,b>b.
inline Mat4 reflection_matrix(const Hyperplane& h) {
  const Vec4& b = h.normal();
  if (!h.is_spacelike()) throw InvalidInput("reflect: normal is not spacelike");
  return Mat4::Identity() - 2.0 * b * h.covector().transpose();
}

/// Reflection of a raw vector; keeps the representative's scale, which
/// matters for light-like horoball vectors.
inline Vec4 reflect(const Hyperplane& h, const Vec4& x) {
  if (!h.is_spacelike()) throw InvalidInput("reflect: normal is not spacelike");
  return x - 2.0 * h.evaluate(x) * h.normal();
}

inline ProjectivePoint reflect(const Hyperplane& h, const ProjectivePoint& x) {
  return ProjectivePoint(reflect(h, x.coords()));
}

/// Lorentz isometry fixing the chart origin and acting as `rot` on the
/// Klein ball.
inline Mat4 rotation_isometry(const Mat3& rot) {
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(1, 1) = rot;
  return m;
}

/// Rotation of R^3 taking unit direction `from` to unit direction `to`.
inline Mat3 rotation_taking(const Vec3& from, const Vec3& to) {
  const Vec3 a = from.normalized();
  const Vec3 b = to.normalized();
  const double c = a.dot(b);
  if (c > 1.0 - 1e-15) return Mat3::Identity();
  if (c < -1.0 + 1e-15) {
    // half-turn about any axis orthogonal to a
    Vec3 axis = a.unitOrthogonal();
    return 2.0 * axis * axis.transpose() - Mat3::Identity();
  }
  return Eigen::Quaterniond::FromTwoVectors(a, b).toRotationMatrix();
}

}  // namespace horopack
